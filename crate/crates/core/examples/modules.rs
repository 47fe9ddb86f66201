// Representations of the path algebra of `1 → 2`: simples, projectives,
// Hom and Ext, extensions, decomposition and the exhaustive enumerator.

use tilted_giraud::modcat::{
    decompose, enumerate_modules, ext1_basis, extension_realize, fixtures, hom_basis, DimBound, Module,
};

fn main() -> tilted_giraud::Result<()> {
    let a2 = fixtures::a2();
    let (s1, s2, p1) = (fixtures::s1(&a2), fixtures::s2(&a2), fixtures::p1(&a2));
    println!("S1 = {s1:?}, S2 = {s2:?}, P1 = {p1:?}");

    let homs = hom_basis(&s2, &p1)?;
    println!("dim Hom(S2, P1) = {}, dim Hom(P1, S2) = {}", homs.len(), hom_basis(&p1, &s2)?.len());

    let ext = ext1_basis(&s1, &s2)?;
    println!("dim Ext¹(S1, S2) = {}", ext.dim());
    // the nonsplit extension 0 → S2 → E → S1 → 0 realizes P1
    let ses = extension_realize(&ext, &ext.cocycles[0])?;
    assert!(ses.is_exact());
    println!("its middle term is {:?}", ses.middle());

    let sum = tilted_giraud::modcat::direct_sum(&a2, &[s1.clone(), p1.clone(), s2.clone()]).module;
    let parts = decompose(&sum)?;
    println!("{sum:?} splits into {:?}", parts.summands);

    for m in enumerate_modules(&a2, DimBound::per_vertex(2))? {
        println!("  indecomposable {m:?}");
    }
    assert_eq!(Module::injective(&a2, 0), s1);
    Ok(())
}
