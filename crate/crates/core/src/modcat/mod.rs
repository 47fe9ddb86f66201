//! Path algebras of acyclic quivers, their finite-dimensional modules, and
//! the exhaustive enumerators used as oracles.

mod algebra;
pub mod corner;
pub mod decompose;
mod descriptor;
pub mod enumerate;
pub mod fixtures;
pub mod hom;
mod module;

pub use algebra::{same_algebra, Algebra, Arrow, Path, Quiver};
pub use corner::Corner;
pub use descriptor::ModuleDescriptor;
pub use decompose::{decompose, find_iso, is_indecomposable, is_iso, Decomposition};
pub use enumerate::{enumerate_modules, enumerate_submodules, DimBound, Universe};
pub use hom::{ext1_basis, ext1_dim, extension_realize, hom_basis, hom_dim, projective_cover, HomSpace};
pub use module::{
    block_map, cokernel, direct_sum, fiber_product, image, image_submodule, kernel, kernel_submodule, pushout,
    DirectSum, Module, ModuleMap, ShortExactSeq, Submodule,
};
