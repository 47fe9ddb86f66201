use serde::Serialize;

use super::object::{heart_cokernel, heart_hom, heart_kernel, HeartMap, HeartObject};
use super::InducedT;
use crate::complexes::{Complex, GradedMap};
use crate::error::Result;
use crate::modcat::{cokernel, hom_basis, kernel, Module, Universe};

/// Heart objects `F[1] ⊕ T[0]` built from the members of a module universe,
/// up to a total dimension.
#[derive(Clone, Debug)]
pub struct HeartUniverse {
    pub objects: Vec<HeartObject>,
    pub indecomposables: Vec<HeartObject>,
    pub free_members: Vec<Module>,
    pub torsion_members: Vec<Module>,
    pub max_total: usize,
}

impl HeartUniverse {
    pub fn new(ts: &InducedT, universe: &Universe, max_total: usize) -> Result<Self> {
        let free_members: Vec<Module> = universe.modules().filter(|m| ts.pair.in_free(m)).cloned().collect();
        let torsion_members: Vec<Module> = universe.modules().filter(|m| ts.pair.in_torsion(m)).cloned().collect();
        let mut objects = Vec::new();
        for f in &free_members {
            for t in &torsion_members {
                if f.dim() + t.dim() <= max_total {
                    objects.push(HeartObject::split(ts, f, t)?);
                }
            }
        }
        objects.sort_by_key(HeartObject::total_dim);
        let mut indecomposables = Vec::new();
        for m in &universe.indecomposables {
            if m.dim() > max_total {
                continue;
            }
            if ts.pair.in_free(m) {
                indecomposables.push(HeartObject::shifted_module(ts, m, 1)?);
            }
            if ts.pair.in_torsion(m) {
                indecomposables.push(HeartObject::shifted_module(ts, m, 0)?);
            }
        }
        Ok(HeartUniverse { objects, indecomposables, free_members, torsion_members, max_total })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }
}

/// `0 → (Ker x)[1] → X → (Coker x)[0] → 0` for a heart object.
#[derive(Clone, Debug)]
pub struct TiltedDecomposition {
    pub torsion_part: HeartMap,
    pub free_part: HeartMap,
}

impl TiltedDecomposition {
    pub fn new(ts: &InducedT, x: &HeartObject) -> Result<Self> {
        let c = x.complex();
        let d = c.diff(-1);
        let (k, incl) = kernel(&d);
        let (q, proj) = cokernel(&d);
        let tx = HeartObject::shifted_module(ts, &k, 1)?;
        let fx = HeartObject::shifted_module(ts, &q, 0)?;
        let iota = GradedMap::from_fn(tx.complex(), c, 0, |_| incl.clone());
        let pi = GradedMap::from_fn(c, fx.complex(), 0, |n| {
            if n == 0 {
                proj.clone()
            } else {
                crate::modcat::ModuleMap::zero(c.component(n), fx.complex().component(n))
            }
        });
        Ok(TiltedDecomposition {
            torsion_part: HeartMap::from_chain_map(&tx, x, &iota),
            free_part: HeartMap::from_chain_map(x, &fx, &pi),
        })
    }

    /// Exactness inside the heart: the composite vanishes, the first map is
    /// a monomorphism, the second an epimorphism, and the first map is a
    /// kernel of the second up to isomorphism.
    pub fn is_exact(&self, ts: &InducedT) -> Result<bool> {
        if !self.free_part.after(&self.torsion_part)?.is_zero() {
            return Ok(false);
        }
        if !heart_kernel(ts, &self.torsion_part)?.source.is_zero() {
            return Ok(false);
        }
        if !heart_cokernel(ts, &self.free_part)?.target.is_zero() {
            return Ok(false);
        }
        let k = heart_kernel(ts, &self.free_part)?;
        let phi = heart_hom(&self.torsion_part.source, &k.source).solve_post(&k, &self.torsion_part)?;
        Ok(phi.is_some_and(|p| p.is_iso()))
    }
}

/// Verification of the tilted pair `(F[1], T[0])` on a heart universe.
#[derive(Clone, Debug, Serialize)]
pub struct TiltedReport {
    pub objects: usize,
    pub torsion_indecomposables: usize,
    pub free_indecomposables: usize,
    pub orthogonal: bool,
    pub classes_are_perpendicular: bool,
    pub decompositions_exact: bool,
    pub shift_equivalences: bool,
    pub passed: bool,
}

fn in_tilted_torsion(x: &HeartObject) -> bool {
    x.cokernel_module().is_zero()
}

fn in_tilted_free(x: &HeartObject) -> bool {
    x.kernel_module().is_zero()
}

/// Checks that the shift `g ↦ g[k]` is a bijection `Hom(a, b) → Hom(a[k], b[k])`.
fn shift_is_bijective(ts: &InducedT, a: &Module, b: &Module, shift: i32) -> Result<bool> {
    let ha = HeartObject::shifted_module(ts, a, shift)?;
    let hb = HeartObject::shifted_module(ts, b, shift)?;
    let space = heart_hom(&ha, &hb);
    let basis = hom_basis(a, b)?;
    if basis.len() != space.dim() {
        return Ok(false);
    }
    let f = a.field();
    let mut m = crate::linalg::Mat::zeros(f, space.dim(), basis.len());
    for (j, g) in basis.iter().enumerate() {
        let chain = GradedMap::from_fn(ha.complex(), hb.complex(), 0, |_| g.clone());
        for (i, x) in space.class_of(&HeartMap::from_chain_map(&ha, &hb, &chain)).into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    Ok(m.rank() == basis.len())
}

/// The tilted torsion pair on the heart: torsion objects have `Coker = 0`
/// (so lie in `F[1]`) and torsion-free objects have `Ker = 0` (`T[0]`).
pub fn tilted_pair(ts: &InducedT, hu: &HeartUniverse) -> Result<TiltedReport> {
    let tors: Vec<&HeartObject> = hu.indecomposables.iter().filter(|x| in_tilted_torsion(x)).collect();
    let free: Vec<&HeartObject> = hu.indecomposables.iter().filter(|x| in_tilted_free(x)).collect();
    let mut orthogonal = true;
    for t in &tors {
        for f in &free {
            orthogonal &= heart_hom(t, f).dim() == 0;
        }
    }
    let mut perpendicular = true;
    for x in &hu.indecomposables {
        let left = free.iter().all(|f| heart_hom(x, f).dim() == 0);
        let right = tors.iter().all(|t| heart_hom(t, x).dim() == 0);
        perpendicular &= left == in_tilted_torsion(x) && right == in_tilted_free(x);
    }
    let mut decompositions_exact = true;
    for x in &hu.objects {
        let d = TiltedDecomposition::new(ts, x)?;
        decompositions_exact &= in_tilted_torsion(&d.torsion_part.source)
            && in_tilted_free(&d.free_part.target)
            && d.is_exact(ts)?;
    }
    let mut shift_equivalences = true;
    for a in &hu.free_members {
        for b in &hu.free_members {
            shift_equivalences &= shift_is_bijective(ts, a, b, 1)?;
        }
    }
    for a in &hu.torsion_members {
        for b in &hu.torsion_members {
            shift_equivalences &= shift_is_bijective(ts, a, b, 0)?;
        }
    }
    let passed = orthogonal && perpendicular && decompositions_exact && shift_equivalences;
    Ok(TiltedReport {
        objects: hu.len(),
        torsion_indecomposables: tors.len(),
        free_indecomposables: free.len(),
        orthogonal,
        classes_are_perpendicular: perpendicular,
        decompositions_exact,
        shift_equivalences,
        passed,
    })
}

/// A two-term complex `[F → T]` with zero differential, for callers that
/// want the raw complex.
pub fn split_complex(free: &Module, torsion: &Module) -> Complex {
    Complex::two_term(&crate::modcat::ModuleMap::zero(free, torsion))
}

#[cfg(test)]
mod tests {
    use super::super::tests::tp_std;
    use super::*;
    use crate::modcat::{fixtures, DimBound};

    #[test]
    fn tilted_pair_on_a2() {
        let ts = tp_std();
        let u = Universe::new(&fixtures::a2(), DimBound::per_vertex(1)).unwrap();
        let hu = HeartUniverse::new(&ts, &u, 3).unwrap();
        let r = tilted_pair(&ts, &hu).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!((r.torsion_indecomposables, r.free_indecomposables), (2, 1));
    }

    #[test]
    fn mixed_object_decomposes() {
        let ts = tp_std();
        let a2 = fixtures::a2();
        let x = HeartObject::split(&ts, &fixtures::s2(&a2), &fixtures::s1(&a2)).unwrap();
        let d = TiltedDecomposition::new(&ts, &x).unwrap();
        assert_eq!(d.torsion_part.source.complex(), &Complex::stalk(&fixtures::s2(&a2), -1));
        assert_eq!(d.free_part.target.complex(), &Complex::stalk(&fixtures::s1(&a2), 0));
        assert!(d.is_exact(&ts).unwrap());
    }
}
