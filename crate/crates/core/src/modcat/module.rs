use std::fmt;
use std::sync::Arc;

use super::algebra::{same_algebra, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat, Subspace};

/// A finite-dimensional left module over a path algebra, stored as a
/// quiver representation: one vector space per vertex and one matrix
/// (`dims[tgt] × dims[src]`) per arrow.
///
/// The total basis is vertex-adapted, so the action of `e_v` is the
/// projection onto the `v` block. [`Module::action`] produces the full
/// action matrix of any basis element.
#[derive(Clone)]
pub struct Module {
    alg: Arc<Algebra>,
    dims: Arc<[usize]>,
    arrows: Arc<[Mat]>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?}", self.dims)?;
        if self.arrows.iter().any(|m| m.rows() * m.cols() > 0) {
            write!(f, "{:?}", self.arrows)?;
        }
        Ok(())
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg)
            && self.dims == other.dims
            && (Arc::ptr_eq(&self.arrows, &other.arrows) || self.arrows == other.arrows)
    }
}

impl Eq for Module {}

impl Module {
    pub fn new(alg: &Arc<Algebra>, dims: Vec<usize>, arrows: Vec<Mat>) -> Result<Self> {
        if dims.len() != alg.num_vertices() {
            return Err(Error::InvalidModule(format!("expected {} vertex dims, got {}", alg.num_vertices(), dims.len())));
        }
        if arrows.len() != alg.num_arrows() {
            return Err(Error::InvalidModule(format!("expected {} arrow matrices, got {}", alg.num_arrows(), arrows.len())));
        }
        for (k, m) in arrows.iter().enumerate() {
            let a = alg.arrow(k);
            if m.rows() != dims[a.tgt] || m.cols() != dims[a.src] {
                return Err(Error::InvalidModule(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.label,
                    dims[a.tgt],
                    dims[a.src],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != alg.field() {
                return Err(Error::InvalidModule("matrix over the wrong field".into()));
            }
        }
        Ok(Module { alg: alg.clone(), dims: dims.into(), arrows: arrows.into() })
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        let f = alg.field();
        let arrows = (0..alg.num_arrows()).map(|_| Mat::zeros(f, 0, 0)).collect();
        Module { alg: alg.clone(), dims: vec![0; alg.num_vertices()].into(), arrows }
    }

    pub fn simple(alg: &Arc<Algebra>, v: usize) -> Self {
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        let f = alg.field();
        let arrows = (0..alg.num_arrows())
            .map(|k| {
                let a = alg.arrow(k);
                Mat::zeros(f, dims[a.tgt], dims[a.src])
            })
            .collect();
        Module { alg: alg.clone(), dims: dims.into(), arrows }
    }

    /// The indecomposable projective `P_v = A e_v`, with basis the paths
    /// starting at `v`.
    pub fn projective(alg: &Arc<Algebra>, v: usize) -> Self {
        let n = alg.num_vertices();
        let basis: Vec<Vec<usize>> = (0..n).map(|w| alg.paths_between(v, w)).collect();
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let f = alg.field();
        let arrows = (0..alg.num_arrows())
            .map(|k| {
                let a = alg.arrow(k);
                let mut m = Mat::zeros(f, dims[a.tgt], dims[a.src]);
                for (j, &p) in basis[a.src].iter().enumerate() {
                    let q = alg.extend(p, k).expect("path extends along arrow");
                    let i = basis[a.tgt].iter().position(|&x| x == q).expect("extended path listed");
                    m.set(i, j, 1);
                }
                m
            })
            .collect();
        Module { alg: alg.clone(), dims: dims.into(), arrows }
    }

    /// The indecomposable injective `I_v = D(e_v A)`.
    pub fn injective(alg: &Arc<Algebra>, v: usize) -> Self {
        Module::projective(&alg.opposite(), v).dual_over(alg)
    }

    /// Builds a module from per-vertex dims and row-major integer matrices.
    pub fn from_rep(alg: &Arc<Algebra>, dims: &[usize], arrows: &[Vec<Vec<i64>>]) -> Result<Self> {
        let f = alg.field();
        if arrows.len() != alg.num_arrows() || dims.len() != alg.num_vertices() {
            return Err(Error::InvalidModule(format!(
                "expected {} vertex dims and {} arrow matrices",
                alg.num_vertices(),
                alg.num_arrows()
            )));
        }
        let mats = arrows
            .iter()
            .enumerate()
            .map(|(k, rows)| {
                let a = alg.arrow(k);
                if rows.is_empty() {
                    let (r, c) = (dims[a.tgt], dims[a.src]);
                    if r * c != 0 {
                        return Err(Error::InvalidModule(format!("arrow {} needs a {r}x{c} matrix", a.label)));
                    }
                    Ok(Mat::zeros(f, r, c))
                } else if rows[0].is_empty() {
                    // a `r × 0` matrix written as r empty rows
                    Ok(Mat::zeros(f, rows.len(), 0))
                } else {
                    Mat::from_rows(f, rows)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Module::new(alg, dims.to_vec(), mats)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }
    pub fn field(&self) -> Field {
        self.alg.field()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn arrow_map(&self, k: usize) -> &Mat {
        &self.arrows[k]
    }
    pub fn arrow_maps(&self) -> &[Mat] {
        &self.arrows
    }

    /// Offset of the `v` block in the total basis.
    pub fn offset(&self, v: usize) -> usize {
        self.dims[..v].iter().sum()
    }

    /// Linear map `M_src(p) → M_tgt(p)` of a path.
    pub fn path_map(&self, p: usize) -> Mat {
        let path = self.alg.path(p);
        let f = self.field();
        let mut m = Mat::identity(f, self.dims[path.src]);
        for &k in &path.arrows {
            m = self.arrows[k].mul(&m);
        }
        m
    }

    /// Full `dim × dim` action matrix of the basis element `b`.
    pub fn action(&self, b: usize) -> Mat {
        let path = self.alg.path(b);
        let mut out = Mat::zeros(self.field(), self.dim(), self.dim());
        out.paste(self.offset(path.tgt), self.offset(path.src), &self.path_map(b));
        out
    }

    /// Checks `ρ(a)ρ(b) = ρ(ab)` on all basis pairs and `ρ(1) = id`.
    pub fn check_action(&self) -> bool {
        let d = self.alg.dim();
        let acts: Vec<Mat> = (0..d).map(|b| self.action(b)).collect();
        for i in 0..d {
            for j in 0..d {
                let prod = acts[i].mul(&acts[j]);
                let expect = match self.alg.mul(i, j) {
                    Some(k) => acts[k].clone(),
                    None => Mat::zeros(self.field(), self.dim(), self.dim()),
                };
                if prod != expect {
                    return false;
                }
            }
        }
        let mut unit = Mat::zeros(self.field(), self.dim(), self.dim());
        for v in 0..self.alg.num_vertices() {
            unit = unit.add(&acts[self.alg.idempotent(v)]);
        }
        unit == Mat::identity(self.field(), self.dim())
    }

    /// The dual `Hom_k(M, k)` as a module over `target`, which must be the
    /// opposite algebra of this module's algebra.
    pub fn dual_over(&self, target: &Arc<Algebra>) -> Module {
        let arrows = self.arrows.iter().map(Mat::transpose).collect();
        Module { alg: target.clone(), dims: self.dims.clone(), arrows }
    }

    pub fn dual(&self) -> Module {
        self.dual_over(&self.alg.opposite())
    }

    /// Restriction to a subset of vertices and a family of paths, used by
    /// corner functors. `paths[k]` is the path of the ambient algebra that
    /// plays the role of arrow `k` of `target`.
    pub(crate) fn restrict(&self, target: &Arc<Algebra>, vertices: &[usize], paths: &[usize]) -> Module {
        let dims: Vec<usize> = vertices.iter().map(|&v| self.dims[v]).collect();
        let arrows = paths.iter().map(|&p| self.path_map(p)).collect();
        Module { alg: target.clone(), dims: dims.into(), arrows }
    }

    /// Encoding used to order enumerated modules.
    pub fn sort_key(&self) -> (usize, Vec<usize>, Vec<u32>) {
        let enc = self.arrows.iter().flat_map(|m| m.data().iter().copied()).collect();
        (self.dim(), self.dims.to_vec(), enc)
    }

    pub fn is_projective(&self) -> bool {
        let top = super::hom::top_dims(self);
        let cover: usize = top
            .iter()
            .enumerate()
            .map(|(v, &t)| t * Module::projective(&self.alg, v).dim())
            .sum();
        cover == self.dim()
    }
}

/// A module homomorphism, stored as one block per vertex.
#[derive(Clone)]
pub struct ModuleMap {
    src: Module,
    tgt: Module,
    blocks: Vec<Mat>,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({:?} -> {:?}: {:?})", self.src.dims, self.tgt.dims, self.blocks)
    }
}

impl PartialEq for ModuleMap {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src && self.tgt == other.tgt && self.blocks == other.blocks
    }
}

impl ModuleMap {
    /// Builds a map and checks that it intertwines the arrow actions.
    pub fn new(src: &Module, tgt: &Module, blocks: Vec<Mat>) -> Result<Self> {
        let f = ModuleMap::new_unchecked(src, tgt, blocks)?;
        if !f.is_homomorphism() {
            return Err(Error::InvalidMap("does not commute with the arrows".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(src: &Module, tgt: &Module, blocks: Vec<Mat>) -> Result<Self> {
        if !same_algebra(&src.alg, &tgt.alg) {
            return Err(Error::AlgebraMismatch);
        }
        if blocks.len() != src.dims.len() {
            return Err(Error::InvalidMap("one block per vertex required".into()));
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.rows() != tgt.dims[v] || b.cols() != src.dims[v] {
                return Err(Error::InvalidMap(format!(
                    "block {v} should be {}x{}, got {}x{}",
                    tgt.dims[v],
                    src.dims[v],
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(ModuleMap { src: src.clone(), tgt: tgt.clone(), blocks })
    }

    pub fn zero(src: &Module, tgt: &Module) -> Self {
        let f = src.field();
        let blocks = (0..src.dims.len()).map(|v| Mat::zeros(f, tgt.dims[v], src.dims[v])).collect();
        ModuleMap { src: src.clone(), tgt: tgt.clone(), blocks }
    }

    pub fn identity(m: &Module) -> Self {
        let f = m.field();
        let blocks = m.dims.iter().map(|&d| Mat::identity(f, d)).collect();
        ModuleMap { src: m.clone(), tgt: m.clone(), blocks }
    }

    pub fn source(&self) -> &Module {
        &self.src
    }
    pub fn target(&self) -> &Module {
        &self.tgt
    }
    pub fn block(&self, v: usize) -> &Mat {
        &self.blocks[v]
    }
    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }

    /// Full matrix in the vertex-adapted bases.
    pub fn matrix(&self) -> Mat {
        let mut out = Mat::zeros(self.src.field(), self.tgt.dim(), self.src.dim());
        for (v, b) in self.blocks.iter().enumerate() {
            out.paste(self.tgt.offset(v), self.src.offset(v), b);
        }
        out
    }

    pub fn is_homomorphism(&self) -> bool {
        let alg = &self.src.alg;
        (0..alg.num_arrows()).all(|k| {
            let a = alg.arrow(k);
            self.blocks[a.tgt].mul(&self.src.arrows[k]) == self.tgt.arrows[k].mul(&self.blocks[a.src])
        })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.is_square() && b.rank() == b.rows())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Mat::rank).sum()
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        debug_assert_eq!(other.tgt.dims, self.src.dims, "compose: dims mismatch");
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect();
        ModuleMap { src: other.src.clone(), tgt: self.tgt.clone(), blocks }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        ModuleMap { src: self.src.clone(), tgt: self.tgt.clone(), blocks }
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect();
        ModuleMap { src: self.src.clone(), tgt: self.tgt.clone(), blocks }
    }

    pub fn neg(&self) -> ModuleMap {
        self.scale(self.src.field().neg(1))
    }

    pub fn scale(&self, c: u32) -> ModuleMap {
        let blocks = self.blocks.iter().map(|b| b.scale(c)).collect();
        ModuleMap { src: self.src.clone(), tgt: self.tgt.clone(), blocks }
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        let blocks = self.blocks.iter().map(Mat::inverse).collect::<Option<Vec<_>>>()?;
        Some(ModuleMap { src: self.tgt.clone(), tgt: self.src.clone(), blocks })
    }

    /// Row-major concatenation of all blocks.
    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    /// Inverse of [`ModuleMap::flatten`].
    pub fn unflatten(src: &Module, tgt: &Module, data: &[u32]) -> ModuleMap {
        let f = src.field();
        let mut off = 0;
        let blocks = (0..src.dims.len())
            .map(|v| {
                let (r, c) = (tgt.dims[v], src.dims[v]);
                let m = Mat::from_vec(f, r, c, data[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect();
        ModuleMap { src: src.clone(), tgt: tgt.clone(), blocks }
    }

    /// The dual map `D(N) → D(M)` over the opposite algebra.
    pub fn dual(&self) -> ModuleMap {
        let src = self.tgt.dual();
        let tgt = self.src.dual();
        let blocks = self.blocks.iter().map(Mat::transpose).collect();
        ModuleMap { src, tgt, blocks }
    }

    /// Replaces source and target by equal-shaped modules (e.g. after a
    /// functor rebuilt them). The caller guarantees compatibility.
    pub(crate) fn retarget(&self, src: &Module, tgt: &Module) -> ModuleMap {
        ModuleMap { src: src.clone(), tgt: tgt.clone(), blocks: self.blocks.clone() }
    }
}

/// A submodule given by one subspace per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Submodule {
    ambient: Module,
    spaces: Vec<Subspace>,
}

impl Submodule {
    pub fn new(ambient: &Module, spaces: Vec<Subspace>) -> Result<Self> {
        let s = Submodule { ambient: ambient.clone(), spaces };
        if !s.is_stable() {
            return Err(Error::InvalidModule("subspaces are not stable under the arrows".into()));
        }
        Ok(s)
    }

    pub(crate) fn new_unchecked(ambient: &Module, spaces: Vec<Subspace>) -> Self {
        Submodule { ambient: ambient.clone(), spaces }
    }

    pub fn zero(ambient: &Module) -> Self {
        let f = ambient.field();
        let spaces = ambient.dims.iter().map(|&d| Subspace::zero(f, d)).collect();
        Submodule { ambient: ambient.clone(), spaces }
    }

    pub fn full(ambient: &Module) -> Self {
        let f = ambient.field();
        let spaces = ambient.dims.iter().map(|&d| Subspace::full(f, d)).collect();
        Submodule { ambient: ambient.clone(), spaces }
    }

    pub fn ambient(&self) -> &Module {
        &self.ambient
    }
    pub fn space(&self, v: usize) -> &Subspace {
        &self.spaces[v]
    }
    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }
    pub fn dim(&self) -> usize {
        self.spaces.iter().map(Subspace::dim).sum()
    }
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient.dim()
    }

    pub fn is_stable(&self) -> bool {
        let alg = &self.ambient.alg;
        (0..alg.num_arrows()).all(|k| {
            let a = alg.arrow(k);
            let img = self.ambient.arrows[k].mul(&self.spaces[a.src].basis_cols());
            self.spaces[a.tgt].contains(&Subspace::from_cols(&img))
        })
    }

    pub fn contains(&self, other: &Submodule) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.contains(b))
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        let spaces = self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.sum(b)).collect();
        Submodule { ambient: self.ambient.clone(), spaces }
    }

    pub fn intersect(&self, other: &Submodule) -> Submodule {
        let spaces = self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.intersect(b)).collect();
        Submodule { ambient: self.ambient.clone(), spaces }
    }

    /// The submodule as a module, with its inclusion.
    pub fn module(&self) -> (Module, ModuleMap) {
        let m = &self.ambient;
        let f = m.field();
        let bases: Vec<Mat> = self.spaces.iter().map(Subspace::basis_cols).collect();
        let arrows = (0..m.alg.num_arrows())
            .map(|k| {
                let a = m.alg.arrow(k);
                let img = m.arrows[k].mul(&bases[a.src]);
                let linv = bases[a.tgt].left_inverse().unwrap_or_else(|| Mat::zeros(f, 0, bases[a.tgt].rows()));
                linv.mul(&img)
            })
            .collect();
        let sub = Module { alg: m.alg.clone(), dims: self.dims().into(), arrows };
        let incl = ModuleMap { src: sub.clone(), tgt: m.clone(), blocks: bases };
        (sub, incl)
    }

    /// The quotient module with the projection.
    pub fn quotient(&self) -> (Module, ModuleMap) {
        let m = &self.ambient;
        let qs: Vec<(Mat, Mat)> = self.spaces.iter().map(Subspace::quotient_maps).collect();
        let arrows = (0..m.alg.num_arrows())
            .map(|k| {
                let a = m.alg.arrow(k);
                qs[a.tgt].0.mul(&m.arrows[k]).mul(&qs[a.src].1)
            })
            .collect();
        let dims = qs.iter().map(|(q, _)| q.rows()).collect();
        let quo = Module { alg: m.alg.clone(), dims: Vec::into(dims), arrows };
        let proj = ModuleMap { src: m.clone(), tgt: quo.clone(), blocks: qs.into_iter().map(|(q, _)| q).collect() };
        (quo, proj)
    }

    /// Image of the submodule under `f`.
    pub fn image_under(&self, f: &ModuleMap) -> Submodule {
        let spaces = self
            .spaces
            .iter()
            .zip(&f.blocks)
            .map(|(s, b)| Subspace::from_cols(&b.mul(&s.basis_cols())))
            .collect();
        Submodule { ambient: f.tgt.clone(), spaces }
    }

    /// Preimage of the submodule under `f`.
    pub fn preimage_under(&self, f: &ModuleMap) -> Submodule {
        let spaces = self
            .spaces
            .iter()
            .zip(&f.blocks)
            .map(|(s, b)| {
                // v with b v ∈ s  ⇔  q b v = 0
                let (q, _) = s.quotient_maps();
                q.mul(b).kernel_basis()
            })
            .collect();
        Submodule { ambient: f.src.clone(), spaces }
    }
}

pub fn kernel(f: &ModuleMap) -> (Module, ModuleMap) {
    kernel_submodule(f).module()
}

pub fn kernel_submodule(f: &ModuleMap) -> Submodule {
    let spaces = f.blocks.iter().map(Mat::kernel_basis).collect();
    Submodule { ambient: f.src.clone(), spaces }
}

pub fn image_submodule(f: &ModuleMap) -> Submodule {
    let spaces = f.blocks.iter().map(Mat::image_basis).collect();
    Submodule { ambient: f.tgt.clone(), spaces }
}

pub fn cokernel(f: &ModuleMap) -> (Module, ModuleMap) {
    image_submodule(f).quotient()
}

/// Image factorisation `M → Im f → N`.
pub fn image(f: &ModuleMap) -> (Module, ModuleMap, ModuleMap) {
    let (im, incl) = image_submodule(f).module();
    let blocks = f
        .blocks
        .iter()
        .zip(&incl.blocks)
        .map(|(b, i)| {
            let linv = i.left_inverse().unwrap_or_else(|| Mat::zeros(b.field(), 0, i.rows()));
            linv.mul(b)
        })
        .collect();
    let epi = ModuleMap { src: f.src.clone(), tgt: im.clone(), blocks };
    (im, epi, incl)
}

/// A direct sum with its canonical injections and projections.
pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn direct_sum(alg: &Arc<Algebra>, parts: &[Module]) -> DirectSum {
    let f = alg.field();
    let n = alg.num_vertices();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let arrows = (0..alg.num_arrows())
        .map(|k| {
            let a = alg.arrow(k);
            let mut m = Mat::zeros(f, dims[a.tgt], dims[a.src]);
            let (mut r, mut c) = (0, 0);
            for p in parts {
                m.paste(r, c, &p.arrows[k]);
                r += p.dims[a.tgt];
                c += p.dims[a.src];
            }
            m
        })
        .collect();
    let module = Module { alg: alg.clone(), dims: dims.clone().into(), arrows };
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    let mut offs = vec![0usize; n];
    for p in parts {
        let mut inj = Vec::with_capacity(n);
        let mut proj = Vec::with_capacity(n);
        for v in 0..n {
            let mut i = Mat::zeros(f, dims[v], p.dims[v]);
            i.paste(offs[v], 0, &Mat::identity(f, p.dims[v]));
            proj.push(i.transpose());
            inj.push(i);
            offs[v] += p.dims[v];
        }
        injections.push(ModuleMap { src: p.clone(), tgt: module.clone(), blocks: inj });
        projections.push(ModuleMap { src: module.clone(), tgt: p.clone(), blocks: proj });
    }
    DirectSum { module, injections, projections }
}

/// Map `⊕ src[j] → ⊕ tgt[i]` from a matrix of component maps
/// (`None` is zero).
pub fn block_map(src: &DirectSum, tgt: &DirectSum, entries: &[Vec<Option<ModuleMap>>]) -> ModuleMap {
    let mut total = ModuleMap::zero(&src.module, &tgt.module);
    for (i, row) in entries.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if let Some(m) = e {
                let piece = tgt.injections[i].compose(m).compose(&src.projections[j]);
                total = total.add(&piece);
            }
        }
    }
    total
}

/// Fiber product of `f: A → C` and `g: B → C` with its projections.
pub fn fiber_product(f: &ModuleMap, g: &ModuleMap) -> Result<(Module, ModuleMap, ModuleMap)> {
    if f.tgt != g.tgt {
        return Err(Error::Shape("fiber product needs a common codomain".into()));
    }
    let alg = f.src.alg.clone();
    let sum = direct_sum(&alg, &[f.src.clone(), g.src.clone()]);
    // X = ker([f, -g]: A ⊕ B → C)
    let diff = f.compose(&sum.projections[0]).sub(&g.compose(&sum.projections[1]));
    let (x, incl) = kernel(&diff);
    let p1 = sum.projections[0].compose(&incl);
    let p2 = sum.projections[1].compose(&incl);
    Ok((x, p1, p2))
}

/// Pushout of `f: A → B` and `g: A → C` with its structure maps.
pub fn pushout(f: &ModuleMap, g: &ModuleMap) -> Result<(Module, ModuleMap, ModuleMap)> {
    if f.src != g.src {
        return Err(Error::Shape("pushout needs a common domain".into()));
    }
    let alg = f.src.alg.clone();
    let sum = direct_sum(&alg, &[f.tgt.clone(), g.tgt.clone()]);
    let diff = sum.injections[0].compose(f).sub(&sum.injections[1].compose(g));
    let (q, proj) = cokernel(&diff);
    let i1 = proj.compose(&sum.injections[0]);
    let i2 = proj.compose(&sum.injections[1]);
    Ok((q, i1, i2))
}

/// A short exact sequence `0 → A → B → C → 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    pub mono: ModuleMap,
    pub epi: ModuleMap,
}

impl ShortExactSeq {
    pub fn new(mono: ModuleMap, epi: ModuleMap) -> Result<Self> {
        let s = ShortExactSeq { mono, epi };
        if !s.is_exact() {
            return Err(Error::InvalidMap("sequence is not short exact".into()));
        }
        Ok(s)
    }

    /// `0 → U → M → M/U → 0` for a submodule `U`.
    pub fn from_submodule(sub: &Submodule) -> Self {
        let (_, incl) = sub.module();
        let (_, proj) = sub.quotient();
        ShortExactSeq { mono: incl, epi: proj }
    }

    pub fn is_exact(&self) -> bool {
        self.mono.tgt == self.epi.src
            && self.mono.is_injective()
            && self.epi.is_surjective()
            && image_submodule(&self.mono) == kernel_submodule(&self.epi)
    }

    pub fn left(&self) -> &Module {
        &self.mono.src
    }
    pub fn middle(&self) -> &Module {
        &self.mono.tgt
    }
    pub fn right(&self) -> &Module {
        &self.epi.tgt
    }
}
