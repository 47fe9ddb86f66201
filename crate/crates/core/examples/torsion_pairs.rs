// Torsion pairs on the modules of `1 → 2`: enumeration, validation with
// witnesses, and the canonical sequence `0 → t(M) → M → M/t(M) → 0`.

use tilted_giraud::modcat::{fixtures, DimBound, Universe};
use tilted_giraud::torsion::{enumerate_torsion_pairs, is_torsion_pair, TorsionPair};

fn main() -> tilted_giraud::Result<()> {
    let a2 = fixtures::a2();
    let universe = Universe::new(&a2, DimBound::per_vertex(2))?;
    let pairs = enumerate_torsion_pairs(&universe)?;
    println!("{} modules up to dim 2 per vertex carry {} torsion pairs", universe.len(), pairs.len());
    for p in &pairs {
        println!("  T = {:?} | F = {:?}", p.torsion.generators(), p.free.generators());
    }

    let (s1, s2, p1) = (fixtures::s1(&a2), fixtures::s2(&a2), fixtures::p1(&a2));
    let standard = TorsionPair::from_generators(&a2, vec![s1.clone()], vec![s2.clone(), p1.clone()])?;
    assert!(is_torsion_pair(&standard, &universe)?.valid);
    let ses = standard.decompose(&p1);
    println!("P1 under (add S1, add {{S2, P1}}): t = {:?}, quotient = {:?}", ses.left(), ses.right());

    // swapping the classes breaks Hom-orthogonality: P1 → S1 is nonzero
    let reversed = TorsionPair::from_generators(&a2, vec![s2, p1], vec![s1])?;
    let report = is_torsion_pair(&reversed, &universe)?;
    assert!(!report.valid);
    for v in &report.violations {
        println!("violated: {} at {:?}", v.axiom, v.witnesses);
    }
    Ok(())
}
