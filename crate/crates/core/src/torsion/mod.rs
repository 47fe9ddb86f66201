//! Torsion pairs on module categories.
//!
//! A class is stored by indecomposable generators. Membership of an
//! arbitrary module is decided by a radical: the iterated trace of the
//! generators for a torsion class, the iterated reject for a torsion-free
//! class. Both compute the smallest class of the given polarity containing
//! the generators, so they agree with the literal additive closure exactly
//! when the generator set is already closed.

mod functor;
mod validate;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::modcat::decompose::{decompose, find_iso_indecomposable, is_indecomposable};
use crate::modcat::hom::{hom_dim, reject, trace};
use crate::modcat::{Algebra, Module, ModuleMap, ShortExactSeq, Submodule};

pub use functor::{preimage_torsion, preimage_torsionfree, AdditiveFunctor, FunctorKind};
pub use validate::{enumerate_torsion_pairs, is_torsion_pair, PairReport, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Torsion,
    TorsionFree,
}

#[derive(Clone, Debug)]
pub struct ClassSpec {
    algebra: Arc<Algebra>,
    generators: Vec<Module>,
    polarity: Polarity,
}

impl ClassSpec {
    /// Generators must be indecomposable; isomorphic duplicates are dropped.
    pub fn new(alg: &Arc<Algebra>, generators: Vec<Module>, polarity: Polarity) -> Result<Self> {
        let mut gens: Vec<Module> = Vec::new();
        for g in generators {
            if !crate::modcat::same_algebra(g.algebra(), alg) {
                return Err(Error::AlgebraMismatch);
            }
            if !is_indecomposable(&g)? {
                return Err(Error::InvalidModule(format!("generator {g:?} is not indecomposable")));
            }
            if !gens.iter().any(|h| find_iso_indecomposable(h, &g).is_some()) {
                gens.push(g);
            }
        }
        Ok(ClassSpec { algebra: alg.clone(), generators: gens, polarity })
    }

    pub fn empty(alg: &Arc<Algebra>, polarity: Polarity) -> Self {
        ClassSpec { algebra: alg.clone(), generators: Vec::new(), polarity }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }
    pub fn generators(&self) -> &[Module] {
        &self.generators
    }
    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    /// Membership via the radical of the class.
    pub fn contains(&self, m: &Module) -> bool {
        match self.polarity {
            Polarity::Torsion => torsion_radical(&self.generators, m).is_full(),
            Polarity::TorsionFree => free_radical(&self.generators, m).is_zero(),
        }
    }

    /// Literal membership in the additive closure of the generators.
    pub fn in_add(&self, m: &Module) -> Result<bool> {
        if m.is_zero() {
            return Ok(true);
        }
        let d = decompose(m)?;
        Ok(d.summands.iter().all(|s| self.contains_indecomposable(s)))
    }

    /// Whether an indecomposable is isomorphic to a generator.
    pub fn contains_indecomposable(&self, m: &Module) -> bool {
        self.generators.iter().any(|g| find_iso_indecomposable(g, m).is_some())
    }

    /// Equality of generator sets up to isomorphism.
    pub fn same_members(&self, other: &ClassSpec) -> bool {
        self.generators.len() == other.generators.len()
            && self.generators.iter().all(|g| other.contains_indecomposable(g))
    }
}

/// `t(M)` for the torsion class generated by `gens`: the trace of the
/// generators, iterated on successive quotients until it stops growing.
pub fn torsion_radical(gens: &[Module], m: &Module) -> Submodule {
    let mut sub = Submodule::zero(m);
    loop {
        let (q, proj) = sub.quotient();
        let tr = trace(gens, &q);
        if tr.is_zero() {
            return sub;
        }
        sub = tr.preimage_under(&proj);
    }
}

/// The largest submodule admitting no nonzero map to the generators: the
/// reject, iterated on itself. `M` lies in the torsion-free class
/// cogenerated by `gens` iff this is zero.
pub fn free_radical(gens: &[Module], m: &Module) -> Submodule {
    let mut cur = Submodule::full(m);
    loop {
        let (u, incl) = cur.module();
        let r = reject(gens, &u);
        if r.dim() == cur.dim() {
            return cur;
        }
        cur = r.image_under(&incl);
    }
}

/// A candidate torsion pair `(T, F)`.
#[derive(Clone, Debug)]
pub struct TorsionPair {
    pub torsion: ClassSpec,
    pub free: ClassSpec,
}

impl TorsionPair {
    pub fn new(torsion: ClassSpec, free: ClassSpec) -> Result<Self> {
        if torsion.polarity != Polarity::Torsion || free.polarity != Polarity::TorsionFree {
            return Err(Error::InvalidPair("classes have the wrong polarity".into()));
        }
        if !crate::modcat::same_algebra(&torsion.algebra, &free.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(TorsionPair { torsion, free })
    }

    /// Builds a pair from generator lists.
    pub fn from_generators(alg: &Arc<Algebra>, torsion: Vec<Module>, free: Vec<Module>) -> Result<Self> {
        TorsionPair::new(ClassSpec::new(alg, torsion, Polarity::Torsion)?, ClassSpec::new(alg, free, Polarity::TorsionFree)?)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.torsion.algebra
    }

    /// `t(M)` with its inclusion.
    pub fn radical(&self, m: &Module) -> (Submodule, ModuleMap) {
        let sub = torsion_radical(&self.torsion.generators, m);
        let (_, incl) = sub.module();
        (sub, incl)
    }

    /// `0 → t(M) → M → M/t(M) → 0`.
    pub fn decompose(&self, m: &Module) -> ShortExactSeq {
        ShortExactSeq::from_submodule(&torsion_radical(&self.torsion.generators, m))
    }

    pub fn in_torsion(&self, m: &Module) -> bool {
        self.torsion.contains(m)
    }

    pub fn in_free(&self, m: &Module) -> bool {
        self.free.contains(m)
    }

    /// Whether the generators are pairwise Hom-orthogonal.
    pub fn generators_orthogonal(&self) -> Option<(Module, Module)> {
        for t in &self.torsion.generators {
            for f in &self.free.generators {
                if hom_dim(t, f) != 0 {
                    return Some((t.clone(), f.clone()));
                }
            }
        }
        None
    }

    /// Equality of both classes up to isomorphism of generators.
    pub fn same_as(&self, other: &TorsionPair) -> bool {
        self.torsion.same_members(&other.torsion) && self.free.same_members(&other.free)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::fixtures;

    fn tp_std() -> (Arc<Algebra>, TorsionPair) {
        let a2 = fixtures::a2();
        let p = TorsionPair::from_generators(&a2, vec![fixtures::s1(&a2)], vec![fixtures::s2(&a2), fixtures::p1(&a2)])
            .unwrap();
        (a2, p)
    }

    #[test]
    fn radical_examples() {
        let (a2, std) = tp_std();
        assert!(std.radical(&fixtures::p1(&a2)).0.is_zero());
        let s2_pair = TorsionPair::from_generators(&a2, vec![fixtures::s2(&a2)], vec![fixtures::s1(&a2)]).unwrap();
        assert_eq!(s2_pair.radical(&fixtures::p1(&a2)).0.dims(), vec![0, 1]);
        let s1 = fixtures::s1(&a2);
        assert!(std.radical(&s1).0.is_full());
    }

    #[test]
    fn decompose_examples() {
        let (a2, std) = tp_std();
        let p1 = fixtures::p1(&a2);
        let seq = std.decompose(&p1);
        assert!(seq.left().is_zero() && seq.right().dims() == p1.dims());
        let s2_pair = TorsionPair::from_generators(&a2, vec![fixtures::s2(&a2)], vec![fixtures::s1(&a2)]).unwrap();
        let seq = s2_pair.decompose(&p1);
        assert_eq!((seq.left().dims(), seq.right().dims()), (&[0, 1][..], &[1, 0][..]));
        assert!(seq.is_exact());
        assert!(std.decompose(&Module::zero(&a2)).middle().is_zero());
    }

    #[test]
    fn membership_by_radical_and_by_decomposition_agree() {
        let (a2, std) = tp_std();
        let u = crate::modcat::Universe::new(&a2, crate::modcat::DimBound::per_vertex(2)).unwrap();
        for m in u.modules() {
            assert_eq!(std.torsion.contains(m), std.torsion.in_add(m).unwrap());
            assert_eq!(std.free.contains(m), std.free.in_add(m).unwrap());
        }
    }
}
