use std::collections::BTreeSet;

use super::Complex;
use crate::error::{Error, Result};
use crate::modcat::{HomSpace, Module, ModuleMap};

/// Stalk complexes `M[-n]` for every module and degree.
pub fn stalks(modules: &[Module], degrees: std::ops::RangeInclusive<i32>) -> Vec<Complex> {
    degrees.flat_map(|n| modules.iter().map(move |m| Complex::stalk(m, n))).collect()
}

type Key = (i32, Vec<(usize, Vec<usize>, Vec<u32>)>, Vec<Vec<u32>>);

fn key(c: &Complex) -> Key {
    (
        c.lo(),
        c.comps.iter().map(Module::sort_key).collect(),
        c.diffs.iter().map(ModuleMap::flatten).collect(),
    )
}

/// Every complex concentrated in `[lo, hi]` whose components are drawn
/// from `modules` (which should contain the zero module), with every
/// choice of differentials. Complexes equal after trimming are listed once.
pub fn enumerate_complexes(modules: &[Module], lo: i32, hi: i32, limit: usize) -> Result<Vec<Complex>> {
    let alg = match modules.first() {
        Some(m) => m.algebra().clone(),
        None => return Ok(vec![]),
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let len = (hi - lo + 1).max(0) as usize;
    let mut stack: Vec<(Vec<Module>, Vec<ModuleMap>)> = vec![(vec![], vec![])];
    while let Some((comps, diffs)) = stack.pop() {
        if comps.len() == len {
            let c = Complex::trimmed(&alg, lo, comps, diffs);
            if seen.insert(key(&c)) {
                out.push(c);
                if out.len() > limit {
                    return Err(Error::BoundExceeded(format!("more than {limit} complexes")));
                }
            }
            continue;
        }
        for m in modules {
            match comps.last() {
                None => stack.push((vec![m.clone()], vec![])),
                Some(prev) => {
                    let hom = HomSpace::new(prev, m);
                    for d in hom.elements() {
                        if let Some(last) = diffs.last() {
                            if !d.compose(last).is_zero() {
                                continue;
                            }
                        }
                        let mut c2 = comps.clone();
                        c2.push(m.clone());
                        let mut d2 = diffs.clone();
                        d2.push(d);
                        stack.push((c2, d2));
                    }
                }
            }
        }
    }
    out.sort_by_key(|c| (c.total_dim(), key(c)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::fixtures;

    #[test]
    fn two_term_complexes_over_a2() {
        let a2 = fixtures::a2();
        let mods = vec![Module::zero(&a2), fixtures::s1(&a2), fixtures::s2(&a2), fixtures::p1(&a2)];
        let cs = enumerate_complexes(&mods, -1, 0, 1000).unwrap();
        // 1 zero + 3·2 stalks + the pairs with their maps: Hom(S2,P1) and
        // Hom(P1,S1) are one-dimensional, Hom(X,X) for each X
        let pairs: usize = mods[1..]
            .iter()
            .flat_map(|a| mods[1..].iter().map(move |b| HomSpace::new(a, b).elements().count()))
            .sum();
        assert_eq!(cs.len(), 1 + 6 + pairs);
        assert!(cs[0].is_zero());
    }
}
