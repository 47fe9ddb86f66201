//! The two small algebras every example and test is built on.
//!
//! `A2` is `1 → 2` and `A3` is `1 → 2 → 3`, both over F₂.

use std::sync::Arc;

use super::{Algebra, Corner, Module, Quiver};
use crate::linalg::Field;

pub fn a2() -> Arc<Algebra> {
    Algebra::path_algebra(Quiver::linear(2), Field::f2()).expect("A2 is acyclic")
}

pub fn a3() -> Arc<Algebra> {
    Algebra::path_algebra(Quiver::linear(3), Field::f2()).expect("A3 is acyclic")
}

pub fn s1(alg: &Arc<Algebra>) -> Module {
    Module::simple(alg, 0)
}

pub fn s2(alg: &Arc<Algebra>) -> Module {
    Module::simple(alg, 1)
}

pub fn p1(alg: &Arc<Algebra>) -> Module {
    Module::projective(alg, 0)
}

/// The corner at vertex 2 of `A2`.
pub fn a2_corner() -> Corner {
    Corner::new(&a2(), &[1]).expect("vertex 2 exists")
}

/// The corner at vertices 1 and 3 of `A3`.
pub fn a3_corner() -> Corner {
    Corner::new(&a3(), &[0, 2]).expect("vertices exist")
}
