use std::sync::Arc;

use super::{InducedT, TStructure};
use crate::complexes::{cone, lift_through, lift_through_all, projective_resolution, Complex, DerivedHom, DerivedMap, GradedMap, Resolved, DEFAULT_DEPTH};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::modcat::{is_iso, Module, ModuleDescriptor, ModuleMap};

/// A heart object `[X⁻¹ → X⁰]` in degrees -1 and 0 with `Ker ∈ F` and
/// `Coker ∈ T`, carrying a projective resolution for Hom computations.
#[derive(Clone, Debug)]
pub struct HeartObject {
    complex: Complex,
    res: Arc<Resolved>,
}

impl PartialEq for HeartObject {
    fn eq(&self, other: &Self) -> bool {
        self.complex == other.complex
    }
}

impl HeartObject {
    pub fn new(ts: &InducedT, c: &Complex) -> Result<Self> {
        if !c.is_zero() && (c.lo() < -1 || c.hi() > 0) {
            return Err(Error::NotInHeart(format!("{c:?} is not a two-term complex in degrees -1, 0")));
        }
        if !(ts.in_le0(c) && ts.in_ge0(c)) {
            return Err(Error::NotInHeart(format!("{c:?} has Ker ∉ F or Coker ∉ T")));
        }
        Ok(HeartObject::unchecked(c))
    }

    pub(crate) fn unchecked(c: &Complex) -> Self {
        let res = projective_resolution(c, DEFAULT_DEPTH).expect("hereditary resolutions are short");
        HeartObject { complex: c.clone(), res: Arc::new(res) }
    }

    /// `[F → T]` with zero differential: `F[1] ⊕ T[0]`.
    pub fn split(ts: &InducedT, free: &Module, torsion: &Module) -> Result<Self> {
        HeartObject::new(ts, &Complex::two_term(&ModuleMap::zero(free, torsion)))
    }

    /// A module placed in the heart as `M[shift]` (`shift` 0 or 1).
    pub fn shifted_module(ts: &InducedT, m: &Module, shift: i32) -> Result<Self> {
        HeartObject::new(ts, &Complex::stalk(m, -shift))
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn resolution(&self) -> &Arc<Resolved> {
        &self.res
    }

    /// Zero in the heart: the complex is acyclic (it need not be
    /// componentwise zero when it comes out of a truncation).
    pub fn is_zero(&self) -> bool {
        self.complex.is_acyclic()
    }

    pub fn total_dim(&self) -> usize {
        self.complex.total_dim()
    }

    /// `Ker x = H⁻¹`.
    pub fn kernel_module(&self) -> Module {
        self.complex.cohomology(-1).module
    }

    /// `Coker x = H⁰`.
    pub fn cokernel_module(&self) -> Module {
        self.complex.cohomology(0).module
    }

    /// Isomorphism in the heart. Over a hereditary algebra a complex is
    /// determined up to isomorphism by its cohomology.
    pub fn is_iso_to(&self, other: &HeartObject) -> Result<bool> {
        Ok(is_iso(&self.kernel_module(), &other.kernel_module())? && is_iso(&self.cokernel_module(), &other.cokernel_module())?)
    }

    pub fn identity(&self) -> HeartMap {
        HeartMap { source: self.clone(), target: self.clone(), map: DerivedMap::identity(&self.res) }
    }

    pub fn zero_to(&self, target: &HeartObject) -> HeartMap {
        HeartMap { source: self.clone(), target: target.clone(), map: DerivedMap::zero(&self.res, &target.complex) }
    }

    /// Descriptor pair `(X⁻¹, X⁰)` plus the differential.
    pub fn descriptor(&self) -> (ModuleDescriptor, ModuleDescriptor, Vec<Vec<Vec<i64>>>) {
        let d = self.complex.diff(-1);
        let blocks = d
            .blocks()
            .iter()
            .map(|b| (0..b.rows()).map(|r| b.row(r).iter().map(|&x| x as i64).collect()).collect())
            .collect();
        (ModuleDescriptor::from(self.complex.component(-1)), ModuleDescriptor::from(self.complex.component(0)), blocks)
    }
}

/// A morphism of the heart: a derived morphism between heart objects.
#[derive(Clone, Debug)]
pub struct HeartMap {
    pub source: HeartObject,
    pub target: HeartObject,
    pub map: DerivedMap,
}

impl HeartMap {
    /// A chain map between the underlying complexes, viewed in the heart.
    pub fn from_chain_map(source: &HeartObject, target: &HeartObject, f: &GradedMap) -> Self {
        HeartMap { source: source.clone(), target: target.clone(), map: DerivedMap::from_chain_map(&source.res, f) }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &HeartMap) -> Result<HeartMap> {
        Ok(HeartMap { source: first.source.clone(), target: self.target.clone(), map: self.map.after(&first.map)? })
    }

    pub fn add(&self, other: &HeartMap) -> HeartMap {
        HeartMap { source: self.source.clone(), target: self.target.clone(), map: self.map.add(&other.map) }
    }

    pub fn sub(&self, other: &HeartMap) -> HeartMap {
        HeartMap { source: self.source.clone(), target: self.target.clone(), map: self.map.sub(&other.map) }
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.map.is_iso()
    }
}

/// `Hom_H(x, y)` with a basis of explicit representatives.
#[derive(Clone, Debug)]
pub struct HeartHom {
    pub source: HeartObject,
    pub target: HeartObject,
    space: DerivedHom,
}

impl HeartHom {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<HeartMap> {
        self.space.basis().into_iter().map(|m| self.wrap(m)).collect()
    }

    pub fn element(&self, coords: &[u32]) -> HeartMap {
        self.wrap(self.space.element(coords))
    }

    pub fn elements(&self) -> impl Iterator<Item = HeartMap> + '_ {
        self.space.elements().map(|m| self.wrap(m))
    }

    /// Coordinate vectors of every element, in the order of [`HeartHom::elements`].
    pub fn coordinates(&self) -> Vec<Vec<u32>> {
        crate::linalg::all_vectors(self.source.complex.algebra().field(), self.dim()).collect()
    }

    pub fn class_of(&self, f: &HeartMap) -> Vec<u32> {
        self.space.class_of(&f.map)
    }

    fn wrap(&self, map: DerivedMap) -> HeartMap {
        HeartMap { source: self.source.clone(), target: self.target.clone(), map }
    }

    /// Matrix of `g ↦ post ∘ g` from this space to `Hom(x, post.target)`.
    pub fn post_matrix(&self, post: &HeartMap, into: &HeartHom) -> Result<Mat> {
        let reps: Vec<GradedMap> = self.space.basis().into_iter().map(|g| g.rep).collect();
        let lifted = lift_through_all(&post.map.src.aug, &reps)?;
        let cols: Vec<Vec<u32>> = lifted.iter().map(|u| into.space.class_of_rep(&post.map.rep.compose(u))).collect();
        Ok(columns(self.source.complex.algebra().field(), into.dim(), &cols))
    }

    /// Matrix of `g ↦ g ∘ pre` from this space to `Hom(pre.source, y)`.
    pub fn pre_matrix(&self, pre: &HeartMap, into: &HeartHom) -> Result<Mat> {
        let basis = self.space.basis();
        let cols = match basis.first() {
            None => vec![],
            Some(g) => {
                let lifted = lift_through(&g.src.aug, &pre.map.rep)?;
                basis.iter().map(|g| into.space.class_of_rep(&g.rep.compose(&lifted))).collect()
            }
        };
        Ok(columns(self.source.complex.algebra().field(), into.dim(), &cols))
    }

    /// Some `g` in this space with `post ∘ g = f`.
    pub fn solve_post(&self, post: &HeartMap, f: &HeartMap) -> Result<Option<HeartMap>> {
        let into = heart_hom(&f.source, &f.target);
        let m = self.post_matrix(post, &into)?;
        self.solve_with(&m, &into.class_of(f))
    }

    /// Some `g` in this space with `g ∘ pre = f`.
    pub fn solve_pre(&self, pre: &HeartMap, f: &HeartMap) -> Result<Option<HeartMap>> {
        let into = heart_hom(&f.source, &f.target);
        let m = self.pre_matrix(pre, &into)?;
        self.solve_with(&m, &into.class_of(f))
    }

    fn solve_with(&self, m: &Mat, rhs: &[u32]) -> Result<Option<HeartMap>> {
        let f = self.source.complex.algebra().field();
        if self.dim() == 0 {
            return Ok(rhs.iter().all(|&x| x == 0).then(|| self.element(&[])));
        }
        Ok(m.solve(&Mat::column(f, rhs))?.map(|x| self.element(&x.col_vec(0))))
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

pub fn heart_hom(x: &HeartObject, y: &HeartObject) -> HeartHom {
    HeartHom { source: x.clone(), target: y.clone(), space: DerivedHom::new(&x.res, &y.complex) }
}

/// `Coker f = H⁰_t(cone f)` with the map `Y → Coker f`.
pub fn heart_cokernel(ts: &InducedT, f: &HeartMap) -> Result<HeartMap> {
    let tri = cone(&f.map.rep);
    let (upper, lower) = ts.h0_steps(&tri.cone)?;
    let q = HeartObject::new(ts, &lower.ge)?;
    let y = &f.target;
    // Y → cone, brought into τ^{≤0} cone (a quasi-isomorphic subcomplex)
    let into = tri.into_cone.compose(&y.res.aug);
    let lifted = lift_through(&upper.incl, &into)?;
    let rep = lower.proj.compose(&lifted);
    Ok(HeartMap { source: y.clone(), target: q.clone(), map: DerivedMap { src: y.res.clone(), tgt: q.complex.clone(), rep } })
}

/// `Ker f = H⁰_t(cone(f)[-1])` with the map `Ker f → X`.
pub fn heart_kernel(ts: &InducedT, f: &HeartMap) -> Result<HeartMap> {
    let tri = cone(&f.map.rep);
    let shifted = tri.cone.shift(-1);
    let (upper, lower) = ts.h0_steps(&shifted)?;
    let k = HeartObject::new(ts, &lower.ge)?;
    let x = &f.source;
    // τ^{≤0}(C[-1]) → C[-1] → P_X → X, divided by the quasi-isomorphism
    // τ^{≤0}(C[-1]) → K
    let out = tri.out_of_cone.shift(-1);
    let to_x = x.res.aug.compose(&out).compose(&upper.incl);
    let map = DerivedMap::roof(&k.res, &lower.proj, &to_x)?;
    Ok(HeartMap { source: k, target: x.clone(), map })
}

/// The canonical factorization `X → coim f → im f → Y`.
#[derive(Clone, Debug)]
pub struct CoimImage {
    pub kernel: HeartMap,
    pub cokernel: HeartMap,
    /// `X → coim f`
    pub coim: HeartMap,
    /// `im f → Y`
    pub image: HeartMap,
    /// `coim f → im f`
    pub canonical: HeartMap,
}

impl CoimImage {
    pub fn new(ts: &InducedT, f: &HeartMap) -> Result<Self> {
        Self::from_parts(ts, f, heart_kernel(ts, f)?, heart_cokernel(ts, f)?)
    }

    /// Same as [`CoimImage::new`] with the kernel and cokernel of `f` given.
    pub fn from_parts(ts: &InducedT, f: &HeartMap, kernel: HeartMap, cokernel: HeartMap) -> Result<Self> {
        let coim = heart_cokernel(ts, &kernel)?;
        let image = heart_kernel(ts, &cokernel)?;
        // f = image ∘ f1, then f1 = canonical ∘ coim
        let f1 = heart_hom(&f.source, &image.source)
            .solve_post(&image, f)?
            .ok_or_else(|| Error::NoSolution("f does not factor through its image".into()))?;
        let canonical = heart_hom(&coim.target, &image.source)
            .solve_pre(&coim, &f1)?
            .ok_or_else(|| Error::NoSolution("f does not factor through its coimage".into()))?;
        Ok(CoimImage { kernel, cokernel, coim, image, canonical })
    }
}

/// Universal property of `k: K → X` as a kernel of `f`, tested against
/// `t`: `k ∘ -` is injective on `Hom(t, K)` with image `Ker(f ∘ -)`.
pub fn kernel_is_universal(f: &HeartMap, k: &HeartMap, t: &HeartObject) -> Result<bool> {
    let tx = heart_hom(t, &f.source);
    let along_f = tx.post_matrix(f, &heart_hom(t, &f.target))?;
    kernel_against(f, k, t, &tx, &along_f)
}

/// Kernel test with `Hom(t, X)` and the matrix of `f ∘ -` on it supplied.
pub(crate) fn kernel_against(f: &HeartMap, k: &HeartMap, t: &HeartObject, tx: &HeartHom, along_f: &Mat) -> Result<bool> {
    if !f.after(k)?.is_zero() {
        return Ok(false);
    }
    let tk = heart_hom(t, &k.source);
    let along_k = tk.post_matrix(k, tx)?;
    let ker_f = tx.dim() - along_f.rank();
    Ok(along_k.rank() == tk.dim() && tk.dim() == ker_f)
}

/// Universal property of `c: Y → Q` as a cokernel of `f`, tested against
/// `t`: `- ∘ c` is injective on `Hom(Q, t)` with image `Ker(- ∘ f)`.
pub fn cokernel_is_universal(f: &HeartMap, c: &HeartMap, t: &HeartObject) -> Result<bool> {
    let yt = heart_hom(&f.target, t);
    let along_f = yt.pre_matrix(f, &heart_hom(&f.source, t))?;
    cokernel_against(f, c, t, &yt, &along_f)
}

/// Cokernel test with `Hom(Y, t)` and the matrix of `- ∘ f` on it supplied.
pub(crate) fn cokernel_against(f: &HeartMap, c: &HeartMap, t: &HeartObject, yt: &HeartHom, along_f: &Mat) -> Result<bool> {
    if !c.after(f)?.is_zero() {
        return Ok(false);
    }
    let qt = heart_hom(&c.target, t);
    let along_c = qt.pre_matrix(c, yt)?;
    let ker_f = yt.dim() - along_f.rank();
    Ok(along_c.rank() == qt.dim() && qt.dim() == ker_f)
}

#[cfg(test)]
mod tests {
    use super::super::tests::tp_std;
    use super::*;
    use crate::modcat::fixtures;

    #[test]
    fn hom_examples() {
        let ts = tp_std();
        let a2 = fixtures::a2();
        let s1 = HeartObject::shifted_module(&ts, &fixtures::s1(&a2), 0).unwrap();
        let s2 = HeartObject::shifted_module(&ts, &fixtures::s2(&a2), 1).unwrap();
        assert_eq!(heart_hom(&s1, &s2).dim(), 1);
        assert_eq!(heart_hom(&s2, &s1).dim(), 0);
        let end = heart_hom(&s2, &s2);
        assert_eq!(end.class_of(&s2.identity()), vec![1]);
        assert!(HeartObject::shifted_module(&ts, &fixtures::s1(&a2), 1).is_err());
    }

    #[test]
    fn kernel_and_cokernel_examples() {
        let ts = tp_std();
        let a2 = fixtures::a2();
        let s1 = HeartObject::shifted_module(&ts, &fixtures::s1(&a2), 0).unwrap();
        let s2 = HeartObject::shifted_module(&ts, &fixtures::s2(&a2), 1).unwrap();
        let f = heart_hom(&s1, &s2).basis().remove(0);
        let k = heart_kernel(&ts, &f).unwrap();
        assert!(k.source.is_zero());
        let c = heart_cokernel(&ts, &f).unwrap();
        let p1 = HeartObject::shifted_module(&ts, &fixtures::p1(&a2), 1).unwrap();
        assert!(c.target.is_iso_to(&p1).unwrap());
        for t in [&s1, &s2, &p1] {
            assert!(kernel_is_universal(&f, &k, t).unwrap());
            assert!(cokernel_is_universal(&f, &c, t).unwrap());
        }
        let ci = CoimImage::new(&ts, &f).unwrap();
        assert!(ci.canonical.is_iso());
        let id = s2.identity();
        assert!(heart_kernel(&ts, &id).unwrap().source.is_zero());
        assert!(heart_cokernel(&ts, &id).unwrap().target.is_zero());
    }
}
