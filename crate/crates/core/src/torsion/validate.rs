use serde::Serialize;

use super::{torsion_radical, ClassSpec, Polarity, TorsionPair};
use crate::error::Result;
use crate::modcat::enumerate::{enumerate_submodules, Member};
use crate::modcat::hom::{all_extensions, hom_dim};
use crate::modcat::{ModuleDescriptor, Module, ShortExactSeq, Universe};

/// One failed axiom with the modules exhibiting it.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub axiom: &'static str,
    pub witnesses: Vec<ModuleDescriptor>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub valid: bool,
    pub universe_size: usize,
    pub violations: Vec<Violation>,
}

fn violation(axiom: &'static str, mods: &[&Module]) -> Violation {
    Violation { axiom, witnesses: mods.iter().map(|m| ModuleDescriptor::from(*m)).collect() }
}

fn member_in(class: &ClassSpec, universe: &Universe, member: &Member) -> bool {
    member.multiplicities.iter().zip(&universe.indecomposables).all(|(&k, x)| k == 0 || class.contains_indecomposable(x))
}

/// Checks the torsion-pair axioms on every module of the universe, with the
/// classes read literally as additive closures of their generators:
///
/// * `Hom(t, f) = 0` for generators;
/// * each class is the Hom-orthogonal of the other among indecomposables;
/// * `T` is closed under quotients of its indecomposables and `F` under
///   submodules of its indecomposables;
/// * both classes are closed under extensions of members whose sum fits;
/// * every module has its decomposition sequence `0 → t(M) → M → M/t(M) → 0`.
///
/// The report lists the first witness found for each failing axiom.
pub fn is_torsion_pair(pair: &TorsionPair, universe: &Universe) -> Result<PairReport> {
    let mut violations = Vec::new();
    if let Some((t, f)) = pair.generators_orthogonal() {
        violations.push(violation("hom-orthogonality", &[&t, &f]));
    }
    let (tc, fc) = (&pair.torsion, &pair.free);
    for x in &universe.indecomposables {
        let left_perp = fc.generators().iter().all(|f| hom_dim(x, f) == 0);
        if left_perp != tc.contains_indecomposable(x) {
            violations.push(violation("torsion class is the left orthogonal of F", &[x]));
            break;
        }
    }
    for x in &universe.indecomposables {
        let right_perp = tc.generators().iter().all(|t| hom_dim(t, x) == 0);
        if right_perp != fc.contains_indecomposable(x) {
            violations.push(violation("torsion-free class is the right orthogonal of T", &[x]));
            break;
        }
    }
    'quot: for x in universe.indecomposables.iter().filter(|x| tc.contains_indecomposable(x)) {
        for sub in enumerate_submodules(x)? {
            let (q, _) = sub.quotient();
            if !tc.in_add(&q)? {
                violations.push(violation("torsion class closed under quotients", &[x, &q]));
                break 'quot;
            }
        }
    }
    'sub: for x in universe.indecomposables.iter().filter(|x| fc.contains_indecomposable(x)) {
        for sub in enumerate_submodules(x)? {
            let (s, _) = sub.module();
            if !fc.in_add(&s)? {
                violations.push(violation("torsion-free class closed under submodules", &[x, &s]));
                break 'sub;
            }
        }
    }
    for (class, axiom) in [(tc, "torsion class closed under extensions"), (fc, "torsion-free class closed under extensions")] {
        if let Some(w) = extension_witness(class, universe)? {
            violations.push(violation(axiom, &[w.left(), w.middle(), w.right()]));
        }
    }
    for m in universe.modules() {
        let seq = ShortExactSeq::from_submodule(&torsion_radical(tc.generators(), m));
        if !tc.in_add(seq.left())? || !fc.in_add(seq.right())? {
            violations.push(violation("decomposition sequence", &[m, seq.left(), seq.right()]));
            break;
        }
    }
    Ok(PairReport { valid: violations.is_empty(), universe_size: universe.len(), violations })
}

/// An extension `0 → B → E → A → 0` with `A, B` in the class, `E` in the
/// universe bound, and `E` outside the class.
fn extension_witness(class: &ClassSpec, universe: &Universe) -> Result<Option<ShortExactSeq>> {
    let members: Vec<&Member> =
        universe.members.iter().filter(|m| !m.module.is_zero() && member_in(class, universe, m)).collect();
    for a in &members {
        for b in &members {
            let dims: Vec<usize> = a.module.dims().iter().zip(b.module.dims()).map(|(x, y)| x + y).collect();
            if !universe.bound.admits(&dims) {
                continue;
            }
            for seq in all_extensions(&a.module, &b.module)? {
                if !class.in_add(seq.middle())? {
                    return Ok(Some(seq));
                }
            }
        }
    }
    Ok(None)
}

/// Every torsion pair whose classes are additive closures of universe
/// indecomposables. Candidates are the subsets `T₀` with `T₀ = ⊥(T₀^⊥)`
/// among indecomposables; each is then validated by [`is_torsion_pair`].
pub fn enumerate_torsion_pairs(universe: &Universe) -> Result<Vec<TorsionPair>> {
    let ind = &universe.indecomposables;
    let n = ind.len();
    if n > 16 {
        return Err(crate::Error::BoundExceeded(format!("{n} indecomposables give too many candidate classes")));
    }
    let homs: Vec<Vec<bool>> = ind.iter().map(|x| ind.iter().map(|y| hom_dim(x, y) != 0).collect()).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let t: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let f: Vec<usize> = (0..n).filter(|&j| t.iter().all(|&i| !homs[i][j])).collect();
        let closed = (0..n).all(|i| t.contains(&i) == f.iter().all(|&j| !homs[i][j]));
        if !closed {
            continue;
        }
        let alg = &universe.algebra;
        let pair = TorsionPair::new(
            ClassSpec::new(alg, t.iter().map(|&i| ind[i].clone()).collect(), Polarity::Torsion)?,
            ClassSpec::new(alg, f.iter().map(|&j| ind[j].clone()).collect(), Polarity::TorsionFree)?,
        )?;
        if is_torsion_pair(&pair, universe)?.valid {
            out.push(pair);
        }
    }
    // smaller torsion classes first
    out.sort_by_key(|p| p.torsion.generators().len());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::{fixtures, DimBound};

    #[test]
    fn a2_pairs() {
        let a2 = fixtures::a2();
        let u = Universe::new(&a2, DimBound::per_vertex(2)).unwrap();
        let (s1, s2, p1) = (fixtures::s1(&a2), fixtures::s2(&a2), fixtures::p1(&a2));
        let std = TorsionPair::from_generators(&a2, vec![s1.clone()], vec![s2.clone(), p1.clone()]).unwrap();
        assert!(is_torsion_pair(&std, &u).unwrap().valid);
        let other = TorsionPair::from_generators(&a2, vec![s2.clone()], vec![s1.clone()]).unwrap();
        assert!(is_torsion_pair(&other, &u).unwrap().valid);
        let bad = TorsionPair::from_generators(&a2, vec![s2.clone(), p1.clone()], vec![s1.clone()]).unwrap();
        let report = is_torsion_pair(&bad, &u).unwrap();
        assert!(!report.valid);
        assert_eq!(report.violations[0].axiom, "hom-orthogonality");
        assert_eq!(report.violations[0].witnesses[0], ModuleDescriptor::from(&p1));
        // the five torsion classes of A2: 0, add S2, add S1, add{S1, P1}, all
        assert_eq!(enumerate_torsion_pairs(&u).unwrap().len(), 5);
    }

    #[test]
    fn single_vertex_has_two_pairs() {
        let q = crate::modcat::Quiver::new(&["x"], &[]).unwrap();
        let alg = crate::modcat::Algebra::path_algebra(q, crate::linalg::Field::f2()).unwrap();
        let u = Universe::new(&alg, DimBound::per_vertex(2)).unwrap();
        assert_eq!(enumerate_torsion_pairs(&u).unwrap().len(), 2);
    }

    #[test]
    fn a3_has_fourteen_pairs() {
        // the Catalan number C_4 counts torsion classes of linearly oriented A3
        let a3 = fixtures::a3();
        let u = Universe::new(&a3, DimBound::per_vertex(1)).unwrap();
        assert_eq!(enumerate_torsion_pairs(&u).unwrap().len(), 14);
    }
}
