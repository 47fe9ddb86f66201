use super::derived::{extend_through, lift_through, DerivedMap};
use super::resolve::{Coresolved, Resolved};
use super::{Complex, GradedMap};
use crate::error::Result;
use crate::torsion::AdditiveFunctor;

/// An exact functor applied degreewise.
pub fn apply_exact(functor: &AdditiveFunctor, c: &Complex) -> Complex {
    let alg = functor.target();
    let comps = c.degrees().map(|n| functor.apply(c.component(n))).collect();
    let diffs = c.degrees().take(c.comps.len().saturating_sub(1)).map(|n| functor.apply_map(&c.diff(n))).collect();
    Complex::trimmed(alg, c.lo(), comps, diffs)
}

/// A chain map pushed through a functor applied degreewise, between the
/// given images of its ends.
pub fn apply_exact_map(functor: &AdditiveFunctor, g: &GradedMap, src: &Complex, tgt: &Complex) -> GradedMap {
    GradedMap::from_fn(src, tgt, g.degree(), |n| {
        functor.apply_map(&g.at(n)).retarget(src.component(n), tgt.component(n + g.degree()))
    })
}

/// The right derived functor on a complex, computed on an injective
/// coresolution.
pub fn apply_right_derived(functor: &AdditiveFunctor, co: &Coresolved) -> Complex {
    apply_exact(functor, &co.inj)
}

/// The left derived functor on a complex, computed on a projective
/// resolution.
pub fn apply_left_derived(functor: &AdditiveFunctor, res: &Resolved) -> Complex {
    apply_exact(functor, &res.proj)
}

/// `RF(f)` for a derived morphism, as a chain map between the functor
/// applied to the two coresolutions.
pub fn right_derived_map(
    functor: &AdditiveFunctor,
    f: &DerivedMap,
    cx: &Coresolved,
    cy: &Coresolved,
    fx: &Complex,
    fy: &Complex,
) -> Result<GradedMap> {
    // P_X → X → I_X is a quasi-isomorphism out of projectives
    let s = cx.coaug.compose(&f.src.aug);
    let m = cy.coaug.compose(&f.rep);
    let g = extend_through(&s, &m)?;
    Ok(apply_exact_map(functor, &g, fx, fy))
}

/// `LF(f)` as a chain map between the functor applied to the two
/// projective resolutions (the source one is `f.src`).
pub fn left_derived_map(functor: &AdditiveFunctor, f: &DerivedMap, ry: &Resolved, fx: &Complex, fy: &Complex) -> Result<GradedMap> {
    let g = lift_through(&ry.aug, &f.rep)?;
    Ok(apply_exact_map(functor, &g, fx, fy))
}
