use serde::Serialize;

use super::{HeartCoGiraudContext, HeartGiraudContext};
use crate::error::Result;
use crate::heart::{heart_hom, HeartMap, HeartObject, HeartUniverse};
use crate::linalg::{Field, Mat};
use crate::modcat::Universe;

/// Outcome of the heart-level adjunction checks, for either side.
///
/// `roundtrip` is `l_H i_H ≅ id` through the counit on the Giraud side and
/// `r_H j_H ≅ id` through the unit on the co-Giraud side; `containment` is
/// `i_H l_H(X[0]) ⊆ X[0]`, resp. `j_H r_H(Y[1]) ⊆ Y[1]`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct HeartAdjunctionReport {
    pub d_objects: usize,
    pub c_objects: usize,
    pub adjunction_pairs: usize,
    pub adjunction_failures: usize,
    pub roundtrip_failures: usize,
    pub fully_faithful_pairs: usize,
    pub fully_faithful_failures: usize,
    pub containment_checked: usize,
    pub containment_failures: usize,
    pub witnesses: Vec<String>,
    pub passed: bool,
}

impl HeartAdjunctionReport {
    fn fail(&mut self, what: &str, objects: &[&HeartObject]) {
        if self.witnesses.len() < 8 {
            let parts: Vec<String> = objects.iter().map(|o| format!("{:?}", o.complex())).collect();
            self.witnesses.push(format!("{what}: {}", parts.join(", ")));
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.adjunction_failures == 0
            && self.roundtrip_failures == 0
            && self.fully_faithful_failures == 0
            && self.containment_failures == 0;
        self
    }
}

/// The columns form an invertible `dim × dim` matrix.
fn bijective(field: Field, cols: &[Vec<u32>], dim: usize) -> bool {
    if cols.len() != dim {
        return false;
    }
    let mut m = Mat::zeros(field, dim, dim);
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    dim == 0 || m.is_invertible()
}

/// The heart-level Giraud checks: `g ↦ ε ∘ l_H(g)` is a bijection
/// `Hom(x, i_H y) → Hom(l_H x, y)`, the counit is invertible, `i_H` is
/// bijective on Hom spaces, and `i_H l_H(m[0]) ≅ m'[0]` with `m' ∈ X` for
/// every `m ∈ X` of the module universe.
pub fn verify_heart_giraud(
    h: &HeartGiraudContext,
    d_hu: &HeartUniverse,
    c_hu: &HeartUniverse,
    d_universe: &Universe,
) -> Result<HeartAdjunctionReport> {
    let field = h.context().d().field();
    let mut r = HeartAdjunctionReport { d_objects: d_hu.len(), c_objects: c_hu.len(), ..Default::default() };
    let images = c_hu.objects.iter().map(|y| h.i_heart(y)).collect::<Result<Vec<_>>>()?;
    let counits = images.iter().map(|a| h.counit(a)).collect::<Result<Vec<_>>>()?;
    for (a, eps) in images.iter().zip(&counits) {
        if !eps.is_iso() {
            r.roundtrip_failures += 1;
            r.fail("counit is not invertible", &[&a.source]);
        }
    }
    for x in &d_hu.objects {
        let lx = h.l_heart(x)?;
        for (a, eps) in images.iter().zip(&counits) {
            r.adjunction_pairs += 1;
            let from = heart_hom(x, &a.object);
            let to = heart_hom(&lx, &a.source);
            let cols = from
                .basis()
                .iter()
                .map(|g| Ok(to.class_of(&eps.after(&h.l_heart_map(g, &lx, &eps.source)?)?)))
                .collect::<Result<Vec<_>>>()?;
            if !bijective(field, &cols, to.dim()) {
                r.adjunction_failures += 1;
                r.fail("adjunction map is not bijective", &[x, &a.source]);
            }
        }
    }
    for a in &images {
        for b in &images {
            r.fully_faithful_pairs += 1;
            let src = heart_hom(&a.source, &b.source);
            let tgt = heart_hom(&a.object, &b.object);
            let cols =
                src.basis().iter().map(|g| Ok(tgt.class_of(&h.i_heart_map(g, a, b)?))).collect::<Result<Vec<_>>>()?;
            if !bijective(field, &cols, tgt.dim()) {
                r.fully_faithful_failures += 1;
                r.fail("i_H is not bijective on Hom", &[&a.source, &b.source]);
            }
        }
    }
    let ts = h.d_structure();
    for m in d_universe.modules().filter(|m| !m.is_zero() && ts.pair.in_torsion(m)) {
        r.containment_checked += 1;
        let x = HeartObject::shifted_module(ts, m, 0)?;
        let back = h.i_heart(&h.l_heart(&x)?)?.object;
        if !(back.kernel_module().is_zero() && ts.pair.in_torsion(&back.cokernel_module())) {
            r.containment_failures += 1;
            r.fail("i_H l_H(m[0]) leaves X[0]", &[&x, &back]);
        }
    }
    Ok(r.finish())
}

/// The co-Giraud mirror: `g ↦ r_H(g) ∘ η` is a bijection
/// `Hom(j_H y, x) → Hom(y, r_H x)`, the unit is invertible, `j_H` is
/// bijective on Hom spaces, and `j_H r_H(m[1]) ≅ m'[1]` with `m' ∈ Y` for
/// every `m ∈ Y` of the module universe.
pub fn verify_heart_cogiraud(
    h: &HeartCoGiraudContext,
    d_hu: &HeartUniverse,
    c_hu: &HeartUniverse,
    d_universe: &Universe,
) -> Result<HeartAdjunctionReport> {
    let field = h.context().d().field();
    let mut r = HeartAdjunctionReport { d_objects: d_hu.len(), c_objects: c_hu.len(), ..Default::default() };
    let images = c_hu.objects.iter().map(|y| h.j_heart(y)).collect::<Result<Vec<_>>>()?;
    let units = images.iter().map(|a| h.unit(a)).collect::<Result<Vec<HeartMap>>>()?;
    for (a, eta) in images.iter().zip(&units) {
        if !eta.is_iso() {
            r.roundtrip_failures += 1;
            r.fail("unit is not invertible", &[&a.source]);
        }
    }
    for x in &d_hu.objects {
        let rx = h.r_heart(x)?;
        for (a, eta) in images.iter().zip(&units) {
            r.adjunction_pairs += 1;
            let from = heart_hom(&a.object, x);
            let to = heart_hom(&a.source, &rx);
            let cols = from
                .basis()
                .iter()
                .map(|g| Ok(to.class_of(&h.r_heart_map(g, &eta.target, &rx)?.after(eta)?)))
                .collect::<Result<Vec<_>>>()?;
            if !bijective(field, &cols, to.dim()) {
                r.adjunction_failures += 1;
                r.fail("adjunction map is not bijective", &[&a.source, x]);
            }
        }
    }
    for a in &images {
        for b in &images {
            r.fully_faithful_pairs += 1;
            let src = heart_hom(&a.source, &b.source);
            let tgt = heart_hom(&a.object, &b.object);
            let cols =
                src.basis().iter().map(|g| Ok(tgt.class_of(&h.j_heart_map(g, a, b)?))).collect::<Result<Vec<_>>>()?;
            if !bijective(field, &cols, tgt.dim()) {
                r.fully_faithful_failures += 1;
                r.fail("j_H is not bijective on Hom", &[&a.source, &b.source]);
            }
        }
    }
    let ts = h.d_structure();
    for m in d_universe.modules().filter(|m| !m.is_zero() && ts.pair.in_free(m)) {
        r.containment_checked += 1;
        let x = HeartObject::shifted_module(ts, m, 1)?;
        let back = h.j_heart(&h.r_heart(&x)?)?.object;
        if !(back.cokernel_module().is_zero() && ts.pair.in_free(&back.kernel_module())) {
            r.containment_failures += 1;
            r.fail("j_H r_H(m[1]) leaves Y[1]", &[&x, &back]);
        }
    }
    Ok(r.finish())
}
