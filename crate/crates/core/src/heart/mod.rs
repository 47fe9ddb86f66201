//! The t-structure induced by a torsion pair, its truncations and
//! t-cohomology, and the heart as an abelian category of two-term
//! complexes.

mod abelian;
mod kv;
mod les;
mod object;
mod tilted;

use crate::complexes::{Complex, GradedMap};
use crate::error::{Error, Result};
use crate::modcat::{Module, ModuleMap};
use crate::torsion::TorsionPair;

pub use abelian::{verify_abelian, AbelianReport};
pub use kv::{kv_extract, KvOutcome};
pub use les::{les_check, LesReport};
pub use object::{cokernel_is_universal, heart_cokernel, heart_hom, heart_kernel, kernel_is_universal, CoimImage, HeartHom, HeartMap, HeartObject};
pub use tilted::{split_complex, tilted_pair, HeartUniverse, TiltedDecomposition, TiltedReport};

/// A t-structure given by membership predicates for its aisle `T^{≤0}` and
/// co-aisle `T^{≥0}`.
pub trait TStructure {
    fn in_le0(&self, c: &Complex) -> bool;
    fn in_ge0(&self, c: &Complex) -> bool;

    /// `c ∈ T^{≤n}`, i.e. `c[n] ∈ T^{≤0}`.
    fn in_le(&self, c: &Complex, n: i32) -> bool {
        self.in_le0(&c.shift(n))
    }

    /// `c ∈ T^{≥n}`, i.e. `c[n] ∈ T^{≥0}`.
    fn in_ge(&self, c: &Complex, n: i32) -> bool {
        self.in_ge0(&c.shift(n))
    }
}

/// The standard t-structure shifted by `shift`: `D^{≤0}[shift]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NaturalT {
    pub shift: i32,
}

impl TStructure for NaturalT {
    fn in_le0(&self, c: &Complex) -> bool {
        c.degrees().filter(|&j| j > -self.shift).all(|j| c.cohomology(j).module.is_zero())
    }

    fn in_ge0(&self, c: &Complex) -> bool {
        c.degrees().filter(|&j| j < -self.shift).all(|j| c.cohomology(j).module.is_zero())
    }
}

/// The t-structure induced by a torsion pair `(T, F)`:
/// `D^{≤0} = {H⁰ ∈ T, H^i = 0 for i > 0}` and
/// `D^{≥0} = {H⁻¹ ∈ F, H^i = 0 for i < -1}`.
#[derive(Clone, Debug)]
pub struct InducedT {
    pub pair: TorsionPair,
}

impl TStructure for InducedT {
    fn in_le0(&self, c: &Complex) -> bool {
        c.degrees().filter(|&i| i > 0).all(|i| c.cohomology(i).module.is_zero())
            && self.pair.in_torsion(&c.cohomology(0).module)
    }

    fn in_ge0(&self, c: &Complex) -> bool {
        c.degrees().filter(|&i| i < -1).all(|i| c.cohomology(i).module.is_zero())
            && self.pair.in_free(&c.cohomology(-1).module)
    }
}

/// A truncation `0 → τ^{≤n} c → c → τ^{≥n+1} c → 0`, exact in each degree.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub le: Complex,
    pub ge: Complex,
    pub incl: GradedMap,
    pub proj: GradedMap,
}

impl Truncation {
    pub fn is_exact(&self) -> bool {
        crate::complexes::is_componentwise_exact(&self.incl, &self.proj)
    }

    /// The maps induced on both truncations by a chain map `g` from the
    /// complex truncated by `self` to the one truncated by `other`.
    pub fn induced(&self, other: &Truncation, g: &GradedMap) -> Result<(GradedMap, GradedMap)> {
        let le = g
            .compose(&self.incl)
            .factor_through_mono(&other.incl)
            .ok_or_else(|| Error::NoSolution("chain map does not preserve the truncation".into()))?;
        let ge = other
            .proj
            .compose(g)
            .factor_through_epi(&self.proj)
            .ok_or_else(|| Error::NoSolution("chain map does not descend to the quotient truncation".into()))?;
        Ok((le, ge))
    }
}

impl InducedT {
    pub fn new(pair: TorsionPair) -> Self {
        InducedT { pair }
    }

    /// `(in D^{≤0}, in D^{≥0})`.
    pub fn membership(&self, c: &Complex) -> (bool, bool) {
        (self.in_le0(c), self.in_ge0(c))
    }

    /// Truncation at `n`: with `X ⊆ Ker d^n` the cycles whose class lies in
    /// the torsion part of `H^n`, `τ^{≤n} = [⋯ → c^{n-1} → X]` and
    /// `τ^{≥n+1} = [c^n/X → c^{n+1} → ⋯]`.
    pub fn truncate_at(&self, c: &Complex, n: i32) -> Result<Truncation> {
        let alg = c.algebra();
        let h = c.cohomology(n);
        let (t_h, _) = self.pair.radical(&h.module);
        let x = t_h.preimage_under(&h.proj).image_under(&h.cycles);
        let (xmod, xincl) = x.module();
        let (qmod, qproj) = x.quotient();
        let nv = alg.num_vertices();

        let lo = c.lo().min(n);
        let mut le_comps: Vec<Module> = (lo..n).map(|k| c.component(k).clone()).collect();
        le_comps.push(xmod.clone());
        let mut le_diffs: Vec<ModuleMap> = (lo..n - 1).map(|k| c.diff(k)).collect();
        if n > lo {
            let d = c.diff(n - 1);
            let blocks = (0..nv)
                .map(|v| {
                    let linv = xincl.block(v).left_inverse().expect("inclusion is injective");
                    linv.mul(d.block(v))
                })
                .collect();
            le_diffs.push(ModuleMap::new(c.component(n - 1), &xmod, blocks)?);
        }
        let le = Complex::new(alg, lo, le_comps, le_diffs)?;

        let hi = c.hi().max(n);
        let mut ge_comps = vec![qmod.clone()];
        ge_comps.extend((n + 1..=hi).map(|k| c.component(k).clone()));
        let mut ge_diffs = Vec::new();
        if hi > n {
            let d = c.diff(n);
            let blocks = (0..nv).map(|v| d.block(v).mul(&x.space(v).quotient_maps().1)).collect();
            ge_diffs.push(ModuleMap::new(&qmod, c.component(n + 1), blocks)?);
        }
        ge_diffs.extend((n + 1..hi).map(|k| c.diff(k)));
        let ge = Complex::new(alg, n, ge_comps, ge_diffs)?;

        let incl = GradedMap::from_fn(&le, c, 0, |k| if k == n { xincl.clone() } else { ModuleMap::identity(c.component(k)) });
        let proj = GradedMap::from_fn(c, &ge, 0, |k| {
            if k == n {
                qproj.clone()
            } else if k > n {
                ModuleMap::identity(c.component(k))
            } else {
                ModuleMap::zero(c.component(k), ge.component(k))
            }
        });
        Ok(Truncation { le, ge, incl, proj })
    }

    /// `τ^{≤0}` and `τ^{≥1}`.
    pub fn truncate(&self, c: &Complex) -> Result<Truncation> {
        self.truncate_at(c, 0)
    }

    /// `H⁰_t(c) = τ^{≥0} τ^{≤0} c = [c⁻¹/X₋₁ → X₀]`, with the two
    /// truncations that produced it.
    pub fn h0_steps(&self, c: &Complex) -> Result<(Truncation, Truncation)> {
        let upper = self.truncate_at(c, 0)?;
        let lower = self.truncate_at(&upper.le, -1)?;
        Ok((upper, lower))
    }

    /// `H⁰_t(g)` for a chain map `g: c → c'`, as a chain map between the
    /// complexes of `t_cohomology(c, 0)` and `t_cohomology(c', 0)`.
    pub fn h0_map(&self, g: &GradedMap) -> Result<GradedMap> {
        let (upper, lower) = self.h0_steps(g.source())?;
        let (upper2, lower2) = self.h0_steps(g.target())?;
        let (le, _) = upper.induced(&upper2, g)?;
        Ok(lower.induced(&lower2, &le)?.1)
    }

    /// `H^i_t(c) = H⁰_t(c[i])` as a heart object.
    pub fn t_cohomology(&self, c: &Complex, i: i32) -> Result<HeartObject> {
        let (_, lower) = self.h0_steps(&c.shift(i))?;
        HeartObject::new(self, &lower.ge)
    }
}
