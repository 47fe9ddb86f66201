use std::sync::Arc;

use super::{Complex, GradedMap};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::modcat::hom::{map_from_projective, projective_cover, ProjectiveCover};
use crate::modcat::{direct_sum, image_submodule, kernel_submodule, Module, ModuleMap};

/// How far below the lowest degree a resolution may reach.
pub const DEFAULT_DEPTH: usize = 8;

/// A projective resolution `aug: P → X`, a quasi-isomorphism from a
/// bounded complex of projectives.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub complex: Complex,
    pub proj: Complex,
    pub aug: GradedMap,
}

/// An injective coresolution `coaug: X → I`.
#[derive(Clone, Debug)]
pub struct Coresolved {
    pub complex: Complex,
    pub inj: Complex,
    pub coaug: GradedMap,
}

/// Lifts a projective cover `P → Q` along an epimorphism `W → Q`.
fn lift_cover(pc: &ProjectiveCover, epi: &ModuleMap) -> Result<ModuleMap> {
    let w = epi.source();
    let alg = w.algebra().clone();
    let parts: Vec<Module> = pc.summands.iter().map(|&v| Module::projective(&alg, v)).collect();
    let sum = direct_sum(&alg, &parts);
    let mut offs = vec![0usize; alg.num_vertices()];
    let mut total = ModuleMap::zero(&pc.projective, w);
    for (k, &v) in pc.summands.iter().enumerate() {
        // the trivial path comes first among the paths from v to v
        let gen = pc.cover.block(v).col_vec(offs[v]);
        for (u, off) in offs.iter_mut().enumerate() {
            *off += parts[k].dim_at(u);
        }
        let x = epi
            .block(v)
            .solve(&Mat::column(w.field(), &gen))?
            .ok_or_else(|| Error::NoSolution("generator does not lift along the epimorphism".into()))?;
        let piece = map_from_projective(&parts[k], v, w, &x.col_vec(0));
        total = total.add(&piece.compose(&sum.projections[k]));
    }
    Ok(total)
}

/// A projective resolution built from the top degree down: each new term
/// covers the cocycles of the partial mapping cone modulo those already
/// bounded by `X`, which makes the cone of the augmentation acyclic.
pub fn projective_resolution(c: &Complex, max_depth: usize) -> Result<Resolved> {
    let alg = c.algebra().clone();
    let minus = alg.field().neg(1);
    let zero = Module::zero(&alg);
    // built downwards; index 0 is degree `top`
    let top = c.hi();
    let mut terms: Vec<Module> = Vec::new();
    let mut diffs: Vec<ModuleMap> = Vec::new(); // d^n: P^n → P^{n+1}, same indexing
    let mut aug: Vec<ModuleMap> = Vec::new();
    let term = |terms: &Vec<Module>, n: i32| -> Module {
        let k = top - n;
        if k < 0 || k as usize >= terms.len() { zero.clone() } else { terms[k as usize].clone() }
    };
    let mut n = top;
    loop {
        if c.lo() - n > max_depth as i32 {
            return Err(Error::ResolutionDepth(max_depth));
        }
        let x = c.component(n);
        let p1 = term(&terms, n + 1);
        let p2 = term(&terms, n + 2);
        let s = direct_sum(&alg, &[x.clone(), p1.clone()]);
        let t = direct_sum(&alg, &[c.component(n + 1).clone(), p2.clone()]);
        let dp1 = if n < top { diffs[(top - n - 1) as usize].clone() } else { ModuleMap::zero(&p1, &p2) };
        let phi1 = if n < top { aug[(top - n - 1) as usize].clone() } else { ModuleMap::zero(&p1, c.component(n + 1)) };
        let delta = crate::modcat::block_map(&s, &t, &[vec![Some(c.diff(n)), Some(phi1)], vec![None, Some(dp1)]]);
        let (wmod, wincl) = kernel_submodule(&delta).module();
        let bounded = image_submodule(&s.injections[0].compose(&c.diff(n - 1))).preimage_under(&wincl);
        let (q, qproj) = bounded.quotient();
        if q.is_zero() && n < c.lo() {
            break;
        }
        let pc = projective_cover(&q);
        let lift = wincl.compose(&lift_cover(&pc, &qproj)?);
        aug.push(s.projections[0].compose(&lift));
        diffs.push(s.projections[1].compose(&lift).scale(minus));
        terms.push(pc.projective);
        n -= 1;
        let _ = wmod;
    }
    // reverse into ascending degree order
    let lo = n + 1;
    terms.reverse();
    diffs.reverse();
    aug.reverse();
    diffs.pop();
    let proj = Complex::trimmed(&alg, lo, terms, diffs);
    let aug = GradedMap::from_fn(&proj, c, 0, |m| aug[(m - lo) as usize].clone());
    Ok(Resolved { complex: c.clone(), proj, aug })
}

/// The dual construction: resolve `DX` over the opposite algebra and
/// dualize back.
pub fn injective_coresolution(c: &Complex, max_depth: usize) -> Result<Coresolved> {
    let alg: &Arc<_> = c.algebra();
    let op = alg.opposite();
    let r = projective_resolution(&c.dual_over(&op), max_depth)?;
    let inj = r.proj.dual_over(alg);
    let coaug = r.aug.dual_over(alg);
    // D(DX) has the same data as X
    let coaug = GradedMap::from_fn(c, &inj, 0, |n| coaug.at(n).retarget(c.component(n), inj.component(n)));
    Ok(Coresolved { complex: c.clone(), inj, coaug })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::{fixtures, hom_basis, Module};

    fn check(c: &Complex) {
        let r = projective_resolution(c, DEFAULT_DEPTH).unwrap();
        assert!(r.proj.is_projective());
        assert!(r.aug.is_chain_map());
        assert!(r.aug.is_quasi_iso());
        let i = injective_coresolution(c, DEFAULT_DEPTH).unwrap();
        assert!(i.coaug.is_chain_map());
        assert!(i.coaug.is_quasi_iso());
        for n in i.inj.degrees() {
            let m = i.inj.component(n);
            assert!(m.dual().is_projective(), "{m:?}");
        }
    }

    #[test]
    fn resolves_stalks() {
        let a2 = fixtures::a2();
        for m in [fixtures::s1(&a2), fixtures::s2(&a2), fixtures::p1(&a2)] {
            check(&Complex::stalk(&m, 0));
            check(&Complex::stalk(&m, 3));
        }
        let r = projective_resolution(&Complex::stalk(&fixtures::s1(&a2), 0), DEFAULT_DEPTH).unwrap();
        // 0 → P2 → P1 → S1 → 0
        assert_eq!((r.proj.lo(), r.proj.hi()), (-1, 0));
        let r = projective_resolution(&Complex::zero(&a2), DEFAULT_DEPTH).unwrap();
        assert!(r.proj.is_zero());
    }

    #[test]
    fn resolves_two_term_and_a3_complexes() {
        let a2 = fixtures::a2();
        let d = hom_basis(&fixtures::s2(&a2), &fixtures::p1(&a2)).unwrap().remove(0);
        check(&Complex::two_term(&d));
        check(&Complex::two_term(&ModuleMap::zero(&fixtures::p1(&a2), &fixtures::s1(&a2))));
        let a3 = fixtures::a3();
        let s2 = Module::simple(&a3, 1);
        let i1 = Module::injective(&a3, 1);
        for d in hom_basis(&s2, &i1).unwrap() {
            check(&Complex::two_term(&d));
        }
    }
}
