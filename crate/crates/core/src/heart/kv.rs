use super::{NaturalT, TStructure};
use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::modcat::Universe;
use crate::torsion::{is_torsion_pair, PairReport, TorsionPair};

/// The torsion pair extracted from a t-structure, with its validation.
#[derive(Clone, Debug)]
pub struct KvOutcome {
    pub pair: TorsionPair,
    pub report: PairReport,
}

/// Recovers `T = {M : M[0] ∈ T^{≤0}}` and `F = {M : M[0] ∈ T^{≥1}}` from a
/// t-structure squeezed between `D^{≤-1}` and `D^{≤0}`. The squeeze is
/// checked on `complexes`; the first violation is returned as a witness.
pub fn kv_extract(ts: &dyn TStructure, complexes: &[Complex], universe: &Universe) -> Result<KvOutcome> {
    let natural = NaturalT { shift: 0 };
    for c in complexes {
        let lower = natural.in_le(c, -1) && !ts.in_le0(c);
        let upper = ts.in_le0(c) && !natural.in_le0(c);
        if lower || upper {
            return Err(Error::SandwichViolated { witness: Box::new(c.clone()) });
        }
    }
    let mut torsion = Vec::new();
    let mut free = Vec::new();
    for m in &universe.indecomposables {
        let stalk = Complex::stalk(m, 0);
        if ts.in_le0(&stalk) {
            torsion.push(m.clone());
        }
        if ts.in_ge(&stalk, 1) {
            free.push(m.clone());
        }
    }
    let pair = TorsionPair::from_generators(&universe.algebra, torsion, free)?;
    let report = is_torsion_pair(&pair, universe)?;
    Ok(KvOutcome { pair, report })
}

#[cfg(test)]
mod tests {
    use super::super::InducedT;
    use super::*;
    use crate::complexes::stalks;
    use crate::modcat::{fixtures, DimBound};
    use crate::torsion::enumerate_torsion_pairs;

    #[test]
    fn roundtrip_and_natural_structures() {
        let a2 = fixtures::a2();
        let u = Universe::new(&a2, DimBound::per_vertex(1)).unwrap();
        let cs = stalks(&u.indecomposables, -2..=2);
        for pair in enumerate_torsion_pairs(&u).unwrap() {
            let back = kv_extract(&InducedT::new(pair.clone()), &cs, &u).unwrap();
            assert!(back.report.valid && back.pair.same_as(&pair));
        }
        let nat = kv_extract(&NaturalT { shift: 0 }, &cs, &u).unwrap();
        assert_eq!(nat.pair.torsion.generators().len(), 3);
        assert!(nat.pair.free.generators().is_empty());
        match kv_extract(&NaturalT { shift: -1 }, &cs, &u) {
            Err(Error::SandwichViolated { witness }) => assert_eq!(witness.lo(), 1),
            other => panic!("expected a sandwich violation, got {other:?}"),
        }
    }
}
