// The corner localization `l = e(-)` of `1 → 2 → 3` at vertices 1 and 3,
// and the transport of torsion pairs along it in both directions.

use std::sync::Arc;

use tilted_giraud::giraud::{CoGiraudContext, GiraudContext, PairSummary};
use tilted_giraud::modcat::{fixtures, DimBound, Universe};
use tilted_giraud::torsion::enumerate_torsion_pairs;

fn main() -> tilted_giraud::Result<()> {
    let corner = Arc::new(fixtures::a3_corner());
    let ctx = GiraudContext::from_corner(corner.clone());
    let ud = Universe::new(ctx.d(), DimBound::per_vertex(2))?;
    let uc = Universe::new(ctx.c(), DimBound::per_vertex(2))?;
    println!("D has {} indecomposables, the corner C has {}", ud.indecomposables.len(), uc.indecomposables.len());
    println!("context checks: {:?}", ctx.validate(&ud, &uc)?);

    // every pair on C lifts to D, and pushing the lift gives it back
    for q in enumerate_torsion_pairs(&uc)? {
        let hat = ctx.hat_pair(&q, &ud, &uc)?;
        let back = ctx.push_pair(&hat.pair, &uc)?;
        assert!(hat.passed() && back.pair.same_as(&q));
        println!("{:?}\n  lifts to {:?}", PairSummary::from(&q), PairSummary::from(&hat.pair));
    }

    // a pair on D pushes down only when il(Y) ⊆ Y
    for p in enumerate_torsion_pairs(&ud)? {
        match ctx.push_pair(&p, &uc) {
            Ok(o) if o.outside_perp.is_none() => println!("compatible: {:?}", PairSummary::from(&o.pair)),
            Ok(_) => println!("pushes, but Y leaves the perpendicular of S"),
            Err(e) => println!("not compatible: {e}"),
        }
    }

    let report = ctx.verify_bijection(&ud, &uc)?;
    let co = CoGiraudContext::from_corner(corner).verify_co_bijection(&ud, &uc)?;
    println!("bijection: {} compatible of {} ({}); mirror: {}", report.compatible, report.d_pairs, report.passed, co.passed);
    Ok(())
}
