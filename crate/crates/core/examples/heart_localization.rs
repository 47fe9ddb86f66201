// The localization between hearts induced by the corner at vertex 2 of
// `1 → 2`: `l_H`, its right adjoint `i_H`, the counit, and the Serre
// subcategory recovered from the heart-level data.

use std::sync::Arc;

use tilted_giraud::giraud::{CoGiraudContext, GiraudContext};
use tilted_giraud::heart::{HeartObject, HeartUniverse};
use tilted_giraud::modcat::{fixtures, DimBound, Module, Universe};
use tilted_giraud::tiltbridge::{
    reconstruct_serre, verify_heart_cogiraud, verify_heart_giraud, verify_s_on_h, HeartCoGiraudContext,
    HeartGiraudContext,
};
use tilted_giraud::torsion::TorsionPair;

fn main() -> tilted_giraud::Result<()> {
    let corner = Arc::new(fixtures::a2_corner());
    let ctx = GiraudContext::from_corner(corner.clone());
    let d = ctx.d().clone();
    let ud = Universe::new(&d, DimBound::per_vertex(2))?;
    let uc = Universe::new(ctx.c(), DimBound::per_vertex(2))?;
    let pair = TorsionPair::from_generators(&d, vec![fixtures::s1(&d)], vec![fixtures::s2(&d), fixtures::p1(&d)])?;
    let h = HeartGiraudContext::new(ctx, pair.clone(), &uc)?;

    let s2 = HeartObject::shifted_module(h.d_structure(), &fixtures::s2(&d), 1)?;
    let image = h.l_heart(&s2)?;
    println!("l_H(S2[1]) = {:?}", image.complex());
    let back = h.i_heart(&image)?;
    println!("i_H l_H(S2[1]) = {:?}, counit invertible: {}", back.object.complex(), h.counit(&back)?.is_iso());

    let s1 = HeartObject::shifted_module(h.d_structure(), &fixtures::s1(&d), 0)?;
    println!("S1[0] in the kernel of l_H: {}", h.s_heart_membership(&s1));

    let d_hu = HeartUniverse::new(h.d_structure(), &ud, 2)?;
    let c_hu = HeartUniverse::new(h.c_structure(), &uc, 2)?;
    let adj = verify_heart_giraud(&h, &d_hu, &c_hu, &ud)?;
    println!("adjunction on {} pairs of objects: {}", adj.adjunction_pairs, adj.passed);
    let son = verify_s_on_h(&h, &d_hu, &c_hu)?;
    println!("l_H exact on {} sequences: {}", son.sequences, son.passed);

    let r = reconstruct_serre(&h, &ud, &uc, &d_hu, &c_hu)?;
    println!("recovered S = {:?}, same context: {:?}", r.recovered_s, r.item4_context);

    let co = HeartCoGiraudContext::new(CoGiraudContext::from_corner(corner), pair, &uc)?;
    let k = HeartObject::shifted_module(co.c_structure(), &Module::simple(co.context().c(), 0), 1)?;
    println!("j_H(k[1]) = {:?}", co.j_heart(&k)?.object.complex());
    println!("co-Giraud adjunction: {}", verify_heart_cogiraud(&co, &d_hu, &c_hu, &ud)?.passed);
    Ok(())
}
