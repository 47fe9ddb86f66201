// The t-structure induced by the torsion pair `(add S1, add{S2, P1})` on
// `1 → 2`, its truncations, the heart and the tilted torsion pair.

use tilted_giraud::complexes::Complex;
use tilted_giraud::heart::{
    heart_cokernel, heart_hom, heart_kernel, tilted_pair, verify_abelian, CoimImage, HeartObject, HeartUniverse,
    InducedT,
};
use tilted_giraud::modcat::{fixtures, DimBound, Universe};
use tilted_giraud::torsion::TorsionPair;

fn main() -> tilted_giraud::Result<()> {
    let a2 = fixtures::a2();
    let (s1, s2, p1) = (fixtures::s1(&a2), fixtures::s2(&a2), fixtures::p1(&a2));
    let ts = InducedT::new(TorsionPair::from_generators(&a2, vec![s1.clone()], vec![s2.clone(), p1.clone()])?);

    // P1[0] has H⁰ = P1 with no torsion, so it lies in D^{≥1}
    let t = ts.truncate(&Complex::stalk(&p1, 0))?;
    println!("τ≤0 P1 = {:?}, τ≥1 P1 = {:?}, exact: {}", t.le, t.ge, t.is_exact());
    println!("H⁰_t(P1[1]) = {:?}", ts.t_cohomology(&Complex::stalk(&p1, -1), 0)?.complex());

    // 0 → S2 → P1 → S1 → 0 rotates to the triangle S1 → S2[1] → P1[1], all
    // of whose terms lie in the heart: S2[1] → P1[1] is an epimorphism there
    // with kernel S1[0]
    let x = HeartObject::shifted_module(&ts, &s2, 1)?;
    let y = HeartObject::shifted_module(&ts, &p1, 1)?;
    let hom = heart_hom(&x, &y);
    let f = hom.basis().remove(0);
    let k = heart_kernel(&ts, &f)?;
    let c = heart_cokernel(&ts, &f)?;
    println!("dim Hom_H = {}, kernel {:?}, cokernel {:?}", hom.dim(), k.source.complex(), c.target.complex());
    assert!(CoimImage::new(&ts, &f)?.canonical.is_iso());

    let s1_heart = HeartObject::shifted_module(&ts, &s1, 0)?;
    assert!(s1_heart.is_iso_to(&k.source)? && c.target.is_zero());

    let universe = Universe::new(&a2, DimBound::per_vertex(2))?;
    let hu = HeartUniverse::new(&ts, &universe, 2)?;
    println!("{} heart objects of total dim ≤ 2", hu.len());
    println!("abelian: {:?}", verify_abelian(&ts, &hu)?);
    println!("tilted pair: {:?}", tilted_pair(&ts, &hu)?);
    Ok(())
}
