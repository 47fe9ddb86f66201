use serde::Serialize;

use super::object::{cokernel_against, heart_cokernel, heart_hom, heart_kernel, kernel_against, CoimImage, HeartHom};
use super::tilted::HeartUniverse;
use super::InducedT;
use crate::error::Result;
use crate::linalg::{Field, Mat};

/// Kernel and cokernel universality and `coim → im` invertibility over
/// every morphism between objects of a heart universe.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AbelianReport {
    pub objects: usize,
    pub maps: usize,
    pub kernel_failures: usize,
    pub cokernel_failures: usize,
    pub coim_image_failures: usize,
    pub passed: bool,
}

pub fn verify_abelian(ts: &InducedT, hu: &HeartUniverse) -> Result<AbelianReport> {
    let mut r = AbelianReport { objects: hu.len(), ..Default::default() };
    let tests = &hu.indecomposables;
    let field = ts.pair.algebra().field();
    // Hom(t, o) and Hom(o, t) for every test object t and universe object o
    let into: Vec<Vec<HeartHom>> = hu.objects.iter().map(|o| tests.iter().map(|t| heart_hom(t, o)).collect()).collect();
    let out_of: Vec<Vec<HeartHom>> = hu.objects.iter().map(|o| tests.iter().map(|t| heart_hom(o, t)).collect()).collect();
    for (xi, x) in hu.objects.iter().enumerate() {
        for (yi, y) in hu.objects.iter().enumerate() {
            let space = heart_hom(x, y);
            let basis = space.basis();
            // the matrices of f ∘ - and - ∘ f are linear in f
            let mut post = Vec::with_capacity(tests.len());
            let mut pre = Vec::with_capacity(tests.len());
            for ti in 0..tests.len() {
                let (tx, ty) = (&into[xi][ti], &into[yi][ti]);
                let (xt, yt) = (&out_of[xi][ti], &out_of[yi][ti]);
                post.push(basis.iter().map(|b| tx.post_matrix(b, ty)).collect::<Result<Vec<_>>>()?);
                pre.push(basis.iter().map(|b| yt.pre_matrix(b, xt)).collect::<Result<Vec<_>>>()?);
            }
            for coords in space.coordinates() {
                let f = space.element(&coords);
                r.maps += 1;
                let k = heart_kernel(ts, &f)?;
                let c = heart_cokernel(ts, &f)?;
                let mut k_ok = true;
                let mut c_ok = true;
                for (ti, t) in tests.iter().enumerate() {
                    let along = combine(&post[ti], &coords, into[xi][ti].dim(), into[yi][ti].dim(), field);
                    k_ok &= kernel_against(&f, &k, t, &into[xi][ti], &along)?;
                    let along = combine(&pre[ti], &coords, out_of[yi][ti].dim(), out_of[xi][ti].dim(), field);
                    c_ok &= cokernel_against(&f, &c, t, &out_of[yi][ti], &along)?;
                }
                r.kernel_failures += usize::from(!k_ok);
                r.cokernel_failures += usize::from(!c_ok);
                let ci = CoimImage::from_parts(ts, &f, k, c)?;
                r.coim_image_failures += usize::from(!ci.canonical.is_iso());
            }
        }
    }
    r.passed = r.kernel_failures == 0 && r.cokernel_failures == 0 && r.coim_image_failures == 0;
    Ok(r)
}

/// `Σ coords[i] · mats[i]`, a `rows × cols` matrix.
fn combine(mats: &[Mat], coords: &[u32], cols: usize, rows: usize, field: Field) -> Mat {
    let mut acc = Mat::zeros(field, rows, cols);
    for (m, &c) in mats.iter().zip(coords) {
        if c != 0 {
            acc = acc.add(&m.scale(c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::super::tests::tp_std;
    use super::*;
    use crate::modcat::{fixtures, DimBound, Universe};

    #[test]
    fn a2_heart_is_abelian_in_small_dimension() {
        let ts = tp_std();
        let u = Universe::new(&fixtures::a2(), DimBound::per_vertex(2)).unwrap();
        let hu = HeartUniverse::new(&ts, &u, 2).unwrap();
        let r = verify_abelian(&ts, &hu).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
