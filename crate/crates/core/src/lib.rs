//! Torsion pairs, Giraud localizations and tilted hearts over path algebras
//! of acyclic quivers, computed exactly over prime fields.
//!
//! The layers build on each other:
//!
//! * [`linalg`]: dense matrices and subspaces over F_p.
//! * [`modcat`]: path algebras, representations, Hom and Ext, corner
//!   algebras and the exhaustive module enumerators.
//! * [`torsion`]: torsion radicals, validation of torsion pairs and
//!   preimages of classes along functors.
//! * [`giraud`]: the localization `l = e(-)` with its sections and the
//!   transport of torsion pairs in both directions.
//! * [`complexes`]: bounded complexes, cones, resolutions and morphisms in
//!   the bounded derived category.
//! * [`heart`]: the t-structure induced by a torsion pair, its heart and
//!   the tilted pair.
//! * [`tiltbridge`]: the induced localization between hearts and the
//!   reconstruction roundtrip.
//! * [`scenario`]: the JSON scenario runner behind the `tiltcheck` binary.

pub mod complexes;
pub mod error;
pub mod giraud;
pub mod heart;
pub mod linalg;
pub mod modcat;
pub mod scenario;
pub mod tiltbridge;
pub mod torsion;

pub use error::{Error, Result};
