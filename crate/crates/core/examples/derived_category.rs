// Bounded complexes over `1 → 2 → 3`: cohomology, cones, projective
// resolutions and morphisms in the derived category.
//
// Over a hereditary algebra `Hom_D(M, N[1]) = Ext¹(M, N)`, which the last
// part checks on the simple modules. `N[1]` is `N` placed in degree -1.

use tilted_giraud::complexes::{cone, derived_hom0, projective_resolution, Complex, GradedMap, DEFAULT_DEPTH};
use tilted_giraud::modcat::{cokernel, ext1_dim, fixtures, hom_basis, Module, ModuleMap};

fn main() -> tilted_giraud::Result<()> {
    let a3 = fixtures::a3();
    let s = |v| Module::simple(&a3, v);
    let (p2, p1) = (Module::projective(&a3, 1), Module::projective(&a3, 0));

    // P2 ↪ P1 as a two-term complex in degrees -1, 0: its only cohomology is S1
    let incl = hom_basis(&p2, &p1)?.remove(0);
    let c = Complex::two_term(&incl);
    for n in c.degrees() {
        println!("H^{n} = {:?}", c.cohomology(n).module);
    }

    // the cokernel map P1 → S1 makes c → S1[0] a quasi-isomorphism, so its
    // cone is acyclic
    let target = Complex::stalk(&s(0), 0);
    let (_, q) = cokernel(&incl);
    let f = GradedMap::chain(&c, &target, vec![ModuleMap::zero(&p2, target.component(-1)), q])?;
    let tri = cone(&f);
    println!("cone of c → S1[0] is {:?}, acyclic: {}", tri.cone, tri.cone.is_acyclic());
    assert!(f.is_quasi_iso());

    let res = projective_resolution(&Complex::stalk(&s(0), 0), DEFAULT_DEPTH)?;
    println!("projective resolution of S1: {:?}, quasi-iso {}", res.proj, res.aug.is_quasi_iso());

    for i in 0..3 {
        for j in 0..3 {
            let d = derived_hom0(&Complex::stalk(&s(i), 0), &Complex::stalk(&s(j), -1))?.dim();
            assert_eq!(d, ext1_dim(&s(i), &s(j)));
            if d > 0 {
                println!("Hom_D(S{}, S{}[1]) = F₂^{d}", i + 1, j + 1);
            }
        }
    }
    Ok(())
}
