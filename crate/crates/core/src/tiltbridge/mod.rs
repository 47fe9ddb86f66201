//! The localization between hearts induced by a corner.
//!
//! A torsion pair `(X, Y)` on `D` with `il(Y) ⊆ Y` pushes to the pair
//! `(l(X), l(Y))` on `C`. Since `l` is exact it carries the heart `H_D` into
//! `H_C` degreewise, and its right adjoint on hearts is `i_H = H⁰_t ∘ Ri`.
//! The co-Giraud side mirrors this with `r_H` degreewise and
//! `j_H = H⁰_t ∘ Lj`.

mod commute;
mod reconstruct;
mod verify;

use std::sync::Arc;

use crate::complexes::{
    apply_exact, apply_exact_map, apply_left_derived, apply_right_derived, injective_coresolution, left_derived_map,
    lift_through, right_derived_map, Complex, Coresolved, DerivedMap, GradedMap, DEFAULT_DEPTH,
};
use crate::error::{Error, Result};
use crate::giraud::{CoGiraudContext, GiraudContext};
use crate::heart::{HeartMap, HeartObject, InducedT};
use crate::modcat::{Corner, Universe};
use crate::torsion::{AdditiveFunctor, TorsionPair};

pub use commute::{dl_commutes, verify_dl_comm, verify_s_on_h, DlCommOutcome, DlCommReport, SonHReport};
pub use reconstruct::{reconstruct_serre, ReconstructionReport};
pub use verify::{verify_heart_cogiraud, verify_heart_giraud, HeartAdjunctionReport};

/// Degreewise application of the restriction `e(-)`, shared by both sides.
fn restrict_heart(functor: &AdditiveFunctor, ts: &InducedT, x: &HeartObject) -> Result<HeartObject> {
    HeartObject::new(ts, &apply_exact(functor, x.complex()))
}

/// The restriction of a heart map, as the roof `l(P_x) → l(x')` over the
/// quasi-isomorphism `l(P_x) → l(x)`.
fn restrict_heart_map(functor: &AdditiveFunctor, f: &HeartMap, lx: &HeartObject, ly: &HeartObject) -> Result<HeartMap> {
    let lp = apply_exact(functor, &f.map.src.proj);
    let s = apply_exact_map(functor, &f.map.src.aug, &lp, lx.complex());
    let g = apply_exact_map(functor, &f.map.rep, &lp, ly.complex());
    let map = DerivedMap::roof(lx.resolution(), &s, &g)?;
    Ok(HeartMap { source: lx.clone(), target: ly.clone(), map })
}

/// `i_H(y)` with the intermediate data needed to act on maps.
#[derive(Clone, Debug)]
pub struct RightImage {
    pub source: HeartObject,
    pub object: HeartObject,
    /// `Ri(y)` computed on `co.inj`
    pub derived: Complex,
    co: Coresolved,
}

/// `j_H(y)` with the intermediate data needed to act on maps.
#[derive(Clone, Debug)]
pub struct LeftImage {
    pub source: HeartObject,
    pub object: HeartObject,
    /// `Lj(y)` computed on the resolution held by `source`
    pub derived: Complex,
}

/// The heart-level Giraud context `(H_D, H_C, l_H, i_H)`.
#[derive(Clone, Debug)]
pub struct HeartGiraudContext {
    ctx: GiraudContext,
    d_t: InducedT,
    c_t: InducedT,
}

impl HeartGiraudContext {
    /// Requires `il(Y) ⊆ Y` and that `(l(X), l(Y))` is a torsion pair on
    /// the `C` universe.
    pub fn new(ctx: GiraudContext, pair: TorsionPair, c_universe: &Universe) -> Result<Self> {
        let pushed = ctx.push_pair(&pair, c_universe)?;
        if !pushed.validation.valid {
            return Err(Error::InvalidPair(format!("pushed pair fails: {:?}", pushed.validation.violations.first())));
        }
        Ok(HeartGiraudContext { ctx, d_t: InducedT::new(pair), c_t: InducedT::new(pushed.pair) })
    }

    pub fn context(&self) -> &GiraudContext {
        &self.ctx
    }
    pub fn corner(&self) -> &Arc<Corner> {
        self.ctx.corner()
    }
    /// The t-structure on `D` induced by `(X, Y)`.
    pub fn d_structure(&self) -> &InducedT {
        &self.d_t
    }
    /// The t-structure on `C` induced by `(l(X), l(Y))`.
    pub fn c_structure(&self) -> &InducedT {
        &self.c_t
    }

    pub fn l_heart(&self, x: &HeartObject) -> Result<HeartObject> {
        restrict_heart(&self.ctx.l_functor(), &self.c_t, x)
    }

    /// `l_H(f)` between the given images `lx = l_H(f.source)` and
    /// `ly = l_H(f.target)`.
    pub fn l_heart_map(&self, f: &HeartMap, lx: &HeartObject, ly: &HeartObject) -> Result<HeartMap> {
        restrict_heart_map(&self.ctx.l_functor(), f, lx, ly)
    }

    /// `i_H(y) = H⁰_t(Ri(y))`.
    pub fn i_heart(&self, y: &HeartObject) -> Result<RightImage> {
        let co = injective_coresolution(y.complex(), DEFAULT_DEPTH)?;
        let derived = apply_right_derived(&self.ctx.i_functor(), &co);
        let object = self.d_t.t_cohomology(&derived, 0)?;
        Ok(RightImage { source: y.clone(), object, derived, co })
    }

    /// `i_H(g)` between two computed images.
    pub fn i_heart_map(&self, g: &HeartMap, a: &RightImage, b: &RightImage) -> Result<HeartMap> {
        let rg = right_derived_map(&self.ctx.i_functor(), &g.map, &a.co, &b.co, &a.derived, &b.derived)?;
        let h = self.d_t.h0_map(&rg)?;
        Ok(HeartMap::from_chain_map(&a.object, &b.object, &h))
    }

    /// The counit `l_H i_H(y) → y`: restrict `τ^{≤0} Ri(y) → Ri(y)`, apply the
    /// counit `li → id` degreewise and invert the restricted projection onto
    /// `H⁰_t` and the coaugmentation `y → I_y`.
    pub fn counit(&self, a: &RightImage) -> Result<HeartMap> {
        let l = self.ctx.l_functor();
        let (upper, lower) = self.d_t.h0_steps(&a.derived)?;
        let lobj = self.l_heart(&a.object)?;
        let w = apply_exact(&l, &upper.le);
        let s = apply_exact_map(&l, &lower.proj, &w, lobj.complex());
        let lri = apply_exact(&l, &a.derived);
        let into = apply_exact_map(&l, &upper.incl, &w, &lri);
        let inj = &a.co.inj;
        let eps = GradedMap::from_fn(&lri, inj, 0, |n| {
            self.ctx.counit(inj.component(n)).retarget(lri.component(n), inj.component(n))
        });
        let map = DerivedMap::roof(lobj.resolution(), &s, &eps.compose(&into))?.divide(&a.co.coaug)?;
        Ok(HeartMap { source: lobj, target: a.source.clone(), map })
    }

    /// `x ∈ S_H = Ker l_H`: `l(Ker x) = 0` and `l(Coker x) = 0`.
    pub fn s_heart_membership(&self, x: &HeartObject) -> bool {
        self.ctx.in_s(&x.kernel_module()) && self.ctx.in_s(&x.cokernel_module())
    }
}

/// The heart-level co-Giraud context `(H_D, H_C, r_H, j_H)`.
#[derive(Clone, Debug)]
pub struct HeartCoGiraudContext {
    ctx: CoGiraudContext,
    d_t: InducedT,
    c_t: InducedT,
}

impl HeartCoGiraudContext {
    /// Requires `jr(X) ⊆ X` and that `(r(X), r(Y))` is a torsion pair on
    /// the `C` universe.
    pub fn new(ctx: CoGiraudContext, pair: TorsionPair, c_universe: &Universe) -> Result<Self> {
        let pushed = ctx.co_push_pair(&pair, c_universe)?;
        if !pushed.validation.valid {
            return Err(Error::InvalidPair(format!("pushed pair fails: {:?}", pushed.validation.violations.first())));
        }
        Ok(HeartCoGiraudContext { ctx, d_t: InducedT::new(pair), c_t: InducedT::new(pushed.pair) })
    }

    pub fn context(&self) -> &CoGiraudContext {
        &self.ctx
    }
    pub fn d_structure(&self) -> &InducedT {
        &self.d_t
    }
    pub fn c_structure(&self) -> &InducedT {
        &self.c_t
    }

    pub fn r_heart(&self, x: &HeartObject) -> Result<HeartObject> {
        restrict_heart(&self.ctx.r_functor(), &self.c_t, x)
    }

    pub fn r_heart_map(&self, f: &HeartMap, rx: &HeartObject, ry: &HeartObject) -> Result<HeartMap> {
        restrict_heart_map(&self.ctx.r_functor(), f, rx, ry)
    }

    /// `j_H(y) = H⁰_t(Lj(y))`.
    pub fn j_heart(&self, y: &HeartObject) -> Result<LeftImage> {
        let derived = apply_left_derived(&self.ctx.j_functor(), y.resolution());
        let object = self.d_t.t_cohomology(&derived, 0)?;
        Ok(LeftImage { source: y.clone(), object, derived })
    }

    pub fn j_heart_map(&self, g: &HeartMap, a: &LeftImage, b: &LeftImage) -> Result<HeartMap> {
        let lg = left_derived_map(&self.ctx.j_functor(), &g.map, b.source.resolution(), &a.derived, &b.derived)?;
        let h = self.d_t.h0_map(&lg)?;
        Ok(HeartMap::from_chain_map(&a.object, &b.object, &h))
    }

    /// The unit `y → r_H j_H(y)`: the unit `id → rj` on `P_y`, lifted
    /// through the restricted inclusion `τ^{≤0} Lj(y) → Lj(y)` and pushed to
    /// `H⁰_t`.
    pub fn unit(&self, a: &LeftImage) -> Result<HeartMap> {
        let r = self.ctx.r_functor();
        let (upper, lower) = self.d_t.h0_steps(&a.derived)?;
        let robj = self.r_heart(&a.object)?;
        let w = apply_exact(&r, &upper.le);
        let rlj = apply_exact(&r, &a.derived);
        let s = apply_exact_map(&r, &upper.incl, &w, &rlj);
        let res = a.source.resolution();
        let p = &res.proj;
        let eta = GradedMap::from_fn(p, &rlj, 0, |n| {
            self.ctx.corner().co_unit(p.component(n)).retarget(p.component(n), rlj.component(n))
        });
        let lifted = lift_through(&s, &eta)?;
        let rep = apply_exact_map(&r, &lower.proj, &w, robj.complex()).compose(&lifted);
        let map = DerivedMap { src: res.clone(), tgt: robj.complex().clone(), rep };
        Ok(HeartMap { source: a.source.clone(), target: robj, map })
    }

    /// `x ∈ Ker r_H`.
    pub fn s_heart_membership(&self, x: &HeartObject) -> bool {
        self.ctx.in_s(&x.kernel_module()) && self.ctx.in_s(&x.cokernel_module())
    }
}
