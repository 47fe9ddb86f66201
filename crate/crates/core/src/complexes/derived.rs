use std::sync::Arc;

use super::resolve::{projective_resolution, Resolved, DEFAULT_DEPTH};
use super::{cone, Complex, GradedMap};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};
use crate::modcat::HomSpace;

/// The graded space of module maps `X^n → Y^{n+degree}`, with a basis made
/// of the basis maps of each component Hom space.
#[derive(Clone, Debug)]
pub struct GradedHom {
    src: Complex,
    tgt: Complex,
    degree: i32,
    parts: Vec<(i32, HomSpace)>,
}

impl GradedHom {
    pub fn new(src: &Complex, tgt: &Complex, degree: i32) -> Self {
        let parts = src
            .degrees()
            .filter(|&n| !tgt.component(n + degree).is_zero())
            .map(|n| (n, HomSpace::new(src.component(n), tgt.component(n + degree))))
            .filter(|(_, h)| h.dim() > 0)
            .collect();
        GradedHom { src: src.clone(), tgt: tgt.clone(), degree, parts }
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(|(_, h)| h.dim()).sum()
    }

    pub fn element(&self, coords: &[u32]) -> GradedMap {
        let mut off = 0;
        let mut out = GradedMap::zero(&self.src, &self.tgt, self.degree);
        for (n, h) in &self.parts {
            let m = h.element(&coords[off..off + h.dim()]);
            off += h.dim();
            out.maps[(n - self.src.lo()) as usize] = m;
        }
        out
    }

    pub fn basis(&self) -> Vec<GradedMap> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                let mut c = vec![0; d];
                c[i] = 1;
                self.element(&c)
            })
            .collect()
    }

    pub fn coords(&self, g: &GradedMap) -> Vec<u32> {
        self.parts.iter().flat_map(|(n, h)| h.coords(&g.at(*n))).collect()
    }
}

fn columns(field: crate::linalg::Field, rows: usize, cols: &[Vec<u32>]) -> Mat {
    let mut m = Mat::zeros(field, rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

/// `Hom_D(X, Y) = H⁰ Hom(P_X, Y)`: chain maps out of a projective
/// resolution of `X` modulo null-homotopic ones.
#[derive(Clone, Debug)]
pub struct DerivedHom {
    res: Arc<Resolved>,
    tgt: Complex,
    h0: GradedHom,
    cycles: Mat,
    cycles_linv: Mat,
    quot: Mat,
    sect: Mat,
}

impl DerivedHom {
    pub fn new(res: &Arc<Resolved>, tgt: &Complex) -> Self {
        let p = &res.proj;
        let f = tgt.algebra().field();
        let h0 = GradedHom::new(p, tgt, 0);
        let hm1 = GradedHom::new(p, tgt, -1);
        let d0 = h0.dim();
        let basis0 = h0.basis();
        let raw: Vec<Vec<u32>> = basis0.iter().map(|b| b.differential().raw()).collect();
        let rows = raw.first().map_or(0, Vec::len);
        let z = columns(f, rows, &raw).kernel_basis().basis_cols();
        let z = if z.rows() == d0 { z } else { Mat::zeros(f, d0, 0) };
        let b_cols: Vec<Vec<u32>> = hm1.basis().iter().map(|h| h0.coords(&h.differential())).collect();
        let b = columns(f, d0, &b_cols);
        let z_linv = z.left_inverse().unwrap_or_else(|| Mat::zeros(f, z.cols(), d0));
        let b_in_z = Subspace::from_cols(&z_linv.mul(&b));
        let b_in_z = if b_in_z.ambient_dim() == z.cols() { b_in_z } else { Subspace::zero(f, z.cols()) };
        let (quot, sect) = b_in_z.quotient_maps();
        DerivedHom { res: res.clone(), tgt: tgt.clone(), h0, cycles: z, cycles_linv: z_linv, quot, sect }
    }

    pub fn between(src: &Complex, tgt: &Complex) -> Result<Self> {
        let res = Arc::new(projective_resolution(src, DEFAULT_DEPTH)?);
        Ok(DerivedHom::new(&res, tgt))
    }

    pub fn dim(&self) -> usize {
        self.quot.rows()
    }

    pub fn resolution(&self) -> &Arc<Resolved> {
        &self.res
    }

    /// Coordinates of the class of a chain map `P_X → Y`.
    pub fn class_of_rep(&self, rep: &GradedMap) -> Vec<u32> {
        let c = Mat::column(self.cycles.field(), &self.h0.coords(rep));
        self.quot.mul(&self.cycles_linv.mul(&c)).col_vec(0)
    }

    pub fn class_of(&self, m: &DerivedMap) -> Vec<u32> {
        self.class_of_rep(&m.rep)
    }

    pub fn element(&self, coords: &[u32]) -> DerivedMap {
        let c = Mat::column(self.cycles.field(), coords);
        let v = self.cycles.mul(&self.sect.mul(&c)).col_vec(0);
        DerivedMap { src: self.res.clone(), tgt: self.tgt.clone(), rep: self.h0.element(&v) }
    }

    pub fn basis(&self) -> Vec<DerivedMap> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                let mut c = vec![0; d];
                c[i] = 1;
                self.element(&c)
            })
            .collect()
    }

    /// Every morphism, one per coordinate vector.
    pub fn elements(&self) -> impl Iterator<Item = DerivedMap> + '_ {
        crate::linalg::all_vectors(self.cycles.field(), self.dim()).map(move |c| self.element(&c))
    }
}

pub fn derived_hom0(x: &Complex, y: &Complex) -> Result<DerivedHom> {
    DerivedHom::between(x, y)
}

/// A morphism `X → Y` of the derived category, represented by a chain
/// map `P_X → Y` out of a fixed projective resolution.
#[derive(Clone, Debug)]
pub struct DerivedMap {
    pub src: Arc<Resolved>,
    pub tgt: Complex,
    pub rep: GradedMap,
}

impl DerivedMap {
    /// The class of an honest chain map `X → Y`.
    pub fn from_chain_map(res: &Arc<Resolved>, f: &GradedMap) -> Self {
        DerivedMap { src: res.clone(), tgt: f.target().clone(), rep: f.compose(&res.aug) }
    }

    pub fn identity(res: &Arc<Resolved>) -> Self {
        DerivedMap { src: res.clone(), tgt: res.complex.clone(), rep: res.aug.clone() }
    }

    pub fn zero(res: &Arc<Resolved>, tgt: &Complex) -> Self {
        DerivedMap { src: res.clone(), tgt: tgt.clone(), rep: GradedMap::zero(&res.proj, tgt, 0) }
    }

    pub fn source(&self) -> &Complex {
        &self.src.complex
    }

    pub fn target(&self) -> &Complex {
        &self.tgt
    }

    pub fn add(&self, other: &DerivedMap) -> DerivedMap {
        DerivedMap { src: self.src.clone(), tgt: self.tgt.clone(), rep: self.rep.add(&other.rep) }
    }

    pub fn sub(&self, other: &DerivedMap) -> DerivedMap {
        DerivedMap { src: self.src.clone(), tgt: self.tgt.clone(), rep: self.rep.sub(&other.rep) }
    }

    pub fn is_zero(&self) -> bool {
        is_null_homotopic(&self.rep)
    }

    /// Isomorphism in the derived category: the representative is a
    /// quasi-isomorphism.
    pub fn is_iso(&self) -> bool {
        cone(&self.rep).cone.is_acyclic()
    }

    /// `self ∘ first`, where `first` ends at the source of `self`.
    pub fn after(&self, first: &DerivedMap) -> Result<DerivedMap> {
        let lifted = lift_through(&self.src.aug, &first.rep)?;
        Ok(DerivedMap { src: first.src.clone(), tgt: self.tgt.clone(), rep: self.rep.compose(&lifted) })
    }

    /// Postcomposition with a chain map `Y → Z`.
    pub fn then_chain(&self, g: &GradedMap) -> DerivedMap {
        DerivedMap { src: self.src.clone(), tgt: g.target().clone(), rep: g.compose(&self.rep) }
    }

    /// `f ∘ s⁻¹` for a quasi-isomorphism `s: W → X` and a chain map
    /// `f: W → Z`, as a morphism out of `X` (resolved by `res`).
    pub fn roof(res: &Arc<Resolved>, s: &GradedMap, f: &GradedMap) -> Result<DerivedMap> {
        let u = lift_through(s, &res.aug)?;
        Ok(DerivedMap { src: res.clone(), tgt: f.target().clone(), rep: f.compose(&u) })
    }

    /// `s⁻¹ ∘ self` for a quasi-isomorphism `s: W → Y`.
    pub fn divide(&self, s: &GradedMap) -> Result<DerivedMap> {
        let u = lift_through(s, &self.rep)?;
        Ok(DerivedMap { src: self.src.clone(), tgt: s.source().clone(), rep: u })
    }
}

/// Whether a chain map is null-homotopic.
pub fn is_null_homotopic(g: &GradedMap) -> bool {
    let f = g.source().algebra().field();
    let hm1 = GradedHom::new(g.source(), g.target(), g.degree() - 1);
    let target = g.raw();
    let cols: Vec<Vec<u32>> = hm1.basis().iter().map(|h| h.differential().raw()).collect();
    if cols.is_empty() {
        return target.iter().all(|&x| x == 0);
    }
    let m = columns(f, target.len(), &cols);
    matches!(m.solve(&Mat::column(f, &target)), Ok(Some(_)))
}

/// Solves `s ∘ G ≃ f` for a chain map `G: P → B'`, where `s: B' → B` is a
/// quasi-isomorphism and `P` is a bounded complex of projectives.
pub fn lift_through(s: &GradedMap, f: &GradedMap) -> Result<GradedMap> {
    let mut out = lift_through_all(s, std::slice::from_ref(f))?;
    Ok(out.remove(0))
}

/// [`lift_through`] for several maps sharing source and target, solving
/// one linear system with many right-hand sides.
pub fn lift_through_all(s: &GradedMap, fs: &[GradedMap]) -> Result<Vec<GradedMap>> {
    let Some(first) = fs.first() else { return Ok(vec![]) };
    let p = first.source();
    let field = p.algebra().field();
    let g_space = GradedHom::new(p, s.source(), 0);
    let h_space = GradedHom::new(p, first.target(), -1);
    let gb = g_space.basis();
    let hb = h_space.basis();
    let top = GradedMap::zero(p, s.source(), 1).raw().len();
    let mut cols = Vec::with_capacity(gb.len() + hb.len());
    for g in &gb {
        let mut c = g.differential().raw();
        c.extend(s.compose(g).raw());
        cols.push(c);
    }
    for h in &hb {
        let mut c = vec![0; top];
        c.extend(h.differential().neg().raw());
        cols.push(c);
    }
    let rhs: Vec<Vec<u32>> = fs
        .iter()
        .map(|f| {
            let mut r = vec![0; top];
            r.extend(f.raw());
            r
        })
        .collect();
    let sols = solve_many(field, &rhs, &cols, gb.len())?;
    Ok(sols.iter().map(|x| g_space.element(x)).collect())
}

/// Solves `G ∘ s ≃ m` for a chain map `G: A'' → I`, where `s: A → A''` is
/// a quasi-isomorphism and `I` is a bounded complex of injectives.
pub fn extend_through(s: &GradedMap, m: &GradedMap) -> Result<GradedMap> {
    let field = m.source().algebra().field();
    let i = m.target();
    let g_space = GradedHom::new(s.target(), i, 0);
    let h_space = GradedHom::new(m.source(), i, -1);
    let gb = g_space.basis();
    let hb = h_space.basis();
    let rhs_top = GradedMap::zero(s.target(), i, 1).raw();
    let mut cols = Vec::with_capacity(gb.len() + hb.len());
    for g in &gb {
        let mut c = g.differential().raw();
        c.extend(g.compose(s).raw());
        cols.push(c);
    }
    for h in &hb {
        let mut c = vec![0; rhs_top.len()];
        c.extend(h.differential().neg().raw());
        cols.push(c);
    }
    let mut rhs = rhs_top;
    rhs.extend(m.raw());
    solve_for(field, &rhs, &cols, gb.len()).map(|x| g_space.element(&x))
}

fn solve_for(field: crate::linalg::Field, rhs: &[u32], cols: &[Vec<u32>], keep: usize) -> Result<Vec<u32>> {
    Ok(solve_many(field, &[rhs.to_vec()], cols, keep)?.remove(0))
}

fn solve_many(field: crate::linalg::Field, rhs: &[Vec<u32>], cols: &[Vec<u32>], keep: usize) -> Result<Vec<Vec<u32>>> {
    if cols.is_empty() {
        return if rhs.iter().flatten().all(|&x| x == 0) {
            Ok(vec![vec![]; rhs.len()])
        } else {
            Err(Error::NoSolution("inconsistent homotopy system".into()))
        };
    }
    let rows = cols[0].len();
    let m = columns(field, rows, cols);
    let b = columns(field, rows, rhs);
    let x = m.solve(&b)?.ok_or_else(|| Error::NoSolution("no chain map up to homotopy".into()))?;
    Ok((0..rhs.len()).map(|j| x.col_vec(j)[..keep].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::{ext1_dim, fixtures, hom_basis, hom_dim, Module, ModuleMap};

    /// Over a hereditary algebra every complex splits into its shifted
    /// cohomology, so derived Hom is a sum of Hom and Ext¹ terms.
    fn splitting_formula(x: &Complex, y: &Complex) -> usize {
        let lo = x.lo().min(y.lo()) - 1;
        let hi = x.hi().max(y.hi()) + 1;
        let mut total = 0;
        for i in lo..=hi {
            let hx = x.cohomology(i).module;
            total += hom_dim(&hx, &y.cohomology(i).module);
            total += ext1_dim(&hx, &y.cohomology(i - 1).module);
        }
        total
    }

    #[test]
    fn derived_hom_of_stalks() {
        let a2 = fixtures::a2();
        let (s1, s2) = (fixtures::s1(&a2), fixtures::s2(&a2));
        let h = derived_hom0(&Complex::stalk(&s1, 0), &Complex::stalk(&s2, -1)).unwrap();
        assert_eq!(h.dim(), 1);
        let h = derived_hom0(&Complex::stalk(&s2, -1), &Complex::stalk(&s1, 0)).unwrap();
        assert_eq!(h.dim(), 0);
    }

    #[test]
    fn matches_splitting_formula_on_two_term_complexes() {
        let a2 = fixtures::a2();
        let mods = [Module::zero(&a2), fixtures::s1(&a2), fixtures::s2(&a2), fixtures::p1(&a2)];
        let mut cxs = Vec::new();
        for a in &mods {
            for b in &mods {
                cxs.push(Complex::two_term(&ModuleMap::zero(a, b)));
                for d in hom_basis(a, b).unwrap() {
                    cxs.push(Complex::two_term(&d));
                }
            }
        }
        for x in &cxs {
            for y in &cxs {
                assert_eq!(derived_hom0(x, y).unwrap().dim(), splitting_formula(x, y), "{x:?} {y:?}");
            }
        }
    }

    #[test]
    fn composition_and_identity() {
        let a2 = fixtures::a2();
        let d = hom_basis(&fixtures::s2(&a2), &fixtures::p1(&a2)).unwrap().remove(0);
        let x = Complex::two_term(&d);
        let s1 = Complex::stalk(&fixtures::s1(&a2), 0);
        let hx = derived_hom0(&x, &s1).unwrap();
        assert_eq!(hx.dim(), 1);
        let rx = hx.resolution().clone();
        let id = DerivedMap::identity(&rx);
        let f = hx.basis().remove(0);
        assert!(f.is_iso());
        let comp = f.after(&id).unwrap();
        assert_eq!(hx.class_of(&comp), hx.class_of(&f));
        assert!(!f.is_zero());
        assert!(DerivedMap::zero(&rx, &s1).is_zero());
    }
}
