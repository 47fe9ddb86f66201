use std::sync::Arc;

use super::module::{direct_sum, kernel, pushout, Module, ModuleMap, ShortExactSeq, Submodule};
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, Mat, Subspace};

/// Basis of `Hom_A(m, n)`: the solution space of the intertwining equations
/// `f_t · M_a = N_a · f_s` for every arrow `a: s → t`.
pub fn hom_basis(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    if !super::same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(hom_basis_unchecked(m, n))
}

pub(crate) fn hom_basis_unchecked(m: &Module, n: &Module) -> Vec<ModuleMap> {
    let alg = m.algebra();
    let f = m.field();
    let nv = alg.num_vertices();
    let mut offs = Vec::with_capacity(nv);
    let mut unknowns = 0;
    for v in 0..nv {
        offs.push(unknowns);
        unknowns += n.dim_at(v) * m.dim_at(v);
    }
    if unknowns == 0 {
        return Vec::new();
    }
    let eq_rows: usize = (0..alg.num_arrows())
        .map(|k| {
            let a = alg.arrow(k);
            n.dim_at(a.tgt) * m.dim_at(a.src)
        })
        .sum();
    let mut sys = Mat::zeros(f, eq_rows, unknowns);
    let mut row0 = 0;
    for k in 0..alg.num_arrows() {
        let a = alg.arrow(k);
        let (ms, mt, ns, nt) = (m.dim_at(a.src), m.dim_at(a.tgt), n.dim_at(a.src), n.dim_at(a.tgt));
        let ma = m.arrow_map(k);
        let na = n.arrow_map(k);
        // (f_t M_a)[i][c] - (N_a f_s)[i][c] = 0 for i < nt, c < ms
        for i in 0..nt {
            for c in 0..ms {
                let row = row0 + i * ms + c;
                for j in 0..mt {
                    let v = ma.get(j, c);
                    if v != 0 {
                        let col = offs[a.tgt] + i * mt + j;
                        sys.set(row, col, f.add(sys.get(row, col), v));
                    }
                }
                for l in 0..ns {
                    let v = na.get(i, l);
                    if v != 0 {
                        let col = offs[a.src] + l * ms + c;
                        sys.set(row, col, f.sub(sys.get(row, col), v));
                    }
                }
            }
        }
        row0 += nt * ms;
    }
    let ker = sys.kernel_basis();
    (0..ker.dim()).map(|r| ModuleMap::unflatten(m, n, ker.basis().row(r))).collect()
}

pub fn hom_dim(m: &Module, n: &Module) -> usize {
    hom_basis_unchecked(m, n).len()
}

/// A Hom space with coordinates.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    pub basis: Vec<ModuleMap>,
    flat_linv: Mat,
}

impl HomSpace {
    pub fn new(m: &Module, n: &Module) -> Self {
        let basis = hom_basis_unchecked(m, n);
        HomSpace::from_basis(m, n, basis)
    }

    pub fn from_basis(m: &Module, n: &Module, basis: Vec<ModuleMap>) -> Self {
        let f = m.field();
        let len: usize = (0..m.dims().len()).map(|v| m.dim_at(v) * n.dim_at(v)).sum();
        let mut flat = Mat::zeros(f, len, basis.len());
        for (j, b) in basis.iter().enumerate() {
            for (i, x) in b.flatten().into_iter().enumerate() {
                flat.set(i, j, x);
            }
        }
        let flat_linv = flat.left_inverse().expect("hom basis is independent");
        HomSpace { source: m.clone(), target: n.clone(), basis, flat_linv }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a homomorphism in this basis.
    pub fn coords(&self, g: &ModuleMap) -> Vec<u32> {
        self.coords_of_flat(&g.flatten())
    }

    pub fn coords_of_flat(&self, flat: &[u32]) -> Vec<u32> {
        let f = self.source.field();
        self.flat_linv.mul(&Mat::column(f, flat)).col_vec(0)
    }

    pub fn element(&self, coords: &[u32]) -> ModuleMap {
        let mut out = ModuleMap::zero(&self.source, &self.target);
        for (b, &c) in self.basis.iter().zip(coords) {
            if c != 0 {
                out = out.add(&b.scale(c));
            }
        }
        out
    }

    /// Every element of the space. Requires `p^dim` to be small.
    pub fn elements(&self) -> impl Iterator<Item = ModuleMap> + '_ {
        all_vectors(self.source.field(), self.dim()).map(move |c| self.element(&c))
    }
}

/// Dimension of the top `M / rad M` at each vertex.
pub fn top_dims(m: &Module) -> Vec<usize> {
    let rad = radical_submodule(m);
    (0..m.dims().len()).map(|v| m.dim_at(v) - rad.space(v).dim()).collect()
}

/// `rad M`: the sum of the images of all arrows.
pub fn radical_submodule(m: &Module) -> Submodule {
    let alg = m.algebra();
    let f = m.field();
    let spaces = (0..alg.num_vertices())
        .map(|v| {
            let mut s = Subspace::zero(f, m.dim_at(v));
            for k in 0..alg.num_arrows() {
                if alg.arrow(k).tgt == v {
                    s = s.sum(&Subspace::from_cols(m.arrow_map(k)));
                }
            }
            s
        })
        .collect();
    Submodule::new_unchecked(m, spaces)
}

/// `soc M`: the common kernel of all arrows leaving each vertex.
pub fn socle_submodule(m: &Module) -> Submodule {
    let alg = m.algebra();
    let f = m.field();
    let spaces = (0..alg.num_vertices())
        .map(|v| {
            let outgoing: Vec<Mat> =
                (0..alg.num_arrows()).filter(|&k| alg.arrow(k).src == v).map(|k| m.arrow_map(k).clone()).collect();
            let stacked = Mat::vstack_all(f, m.dim_at(v), &outgoing);
            stacked.kernel_basis()
        })
        .collect();
    Submodule::new_unchecked(m, spaces)
}

/// Projective cover `π: P → M` built from the top. `P` is a direct sum of
/// indecomposable projectives `P_v`; `summands` lists their vertices.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub projective: Module,
    pub cover: ModuleMap,
    pub summands: Vec<usize>,
}

pub fn projective_cover(m: &Module) -> ProjectiveCover {
    let alg = m.algebra().clone();
    let rad = radical_submodule(m);
    let mut summands = Vec::new();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for v in 0..alg.num_vertices() {
        let (_, s) = rad.space(v).quotient_maps();
        for j in 0..s.cols() {
            summands.push(v);
            gens.push(s.col_vec(j));
        }
    }
    let parts: Vec<Module> = summands.iter().map(|&v| Module::projective(&alg, v)).collect();
    let sum = direct_sum(&alg, &parts);
    let mut cover = ModuleMap::zero(&sum.module, m);
    for (k, (&v, g)) in summands.iter().zip(&gens).enumerate() {
        let piece = map_from_projective(&parts[k], v, m, g);
        cover = cover.add(&piece.compose(&sum.projections[k]));
    }
    ProjectiveCover { projective: sum.module, cover, summands }
}

/// The map `P_v → M` sending `e_v` to `x ∈ M_v`.
pub fn map_from_projective(pv: &Module, v: usize, m: &Module, x: &[u32]) -> ModuleMap {
    let alg = m.algebra();
    let f = m.field();
    let xv = Mat::column(f, x);
    let blocks = (0..alg.num_vertices())
        .map(|w| {
            let paths = alg.paths_between(v, w);
            let cols: Vec<Mat> = paths.iter().map(|&p| m.path_map(p).mul(&xv)).collect();
            Mat::hstack_all(f, m.dim_at(w), &cols)
        })
        .collect();
    ModuleMap::new_unchecked(pv, m, blocks).expect("shapes agree")
}

/// Injective envelope `ι: M → I`, dual to the projective cover over the
/// opposite algebra.
pub fn injective_envelope(m: &Module) -> (Module, ModuleMap) {
    let cov = projective_cover(&m.dual());
    let iota = cov.cover.dual_to(m.algebra());
    (iota.target().clone(), iota)
}

impl ModuleMap {
    /// Dual of a map over the opposite algebra, landing over `alg`.
    pub(crate) fn dual_to(&self, alg: &Arc<super::Algebra>) -> ModuleMap {
        let src = self.target().dual_over(alg);
        let tgt = self.source().dual_over(alg);
        let blocks = self.blocks().iter().map(Mat::transpose).collect();
        ModuleMap::new_unchecked(&src, &tgt, blocks).expect("dual shapes")
    }
}

/// `Ext¹(m, n)` from a projective presentation `0 → Ω → P → m → 0`.
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub omega_incl: ModuleMap,
    pub cover: ModuleMap,
    pub hom_omega: HomSpace,
    /// quotient map from `Hom(Ω, n)` coordinates onto Ext¹
    quotient: Mat,
    /// one cocycle `Ω → n` per Ext¹ basis vector
    pub cocycles: Vec<ModuleMap>,
}

impl Ext1 {
    pub fn dim(&self) -> usize {
        self.cocycles.len()
    }

    /// Coordinates of the class of a cocycle `Ω → n`.
    pub fn class_of(&self, cocycle: &ModuleMap) -> Vec<u32> {
        let f = cocycle.source().field();
        self.quotient.mul(&Mat::column(f, &self.hom_omega.coords(cocycle))).col_vec(0)
    }

    pub fn cocycle(&self, class: &[u32]) -> ModuleMap {
        combine_maps(&self.cocycles, class, self.omega_incl.source(), &self.hom_omega.target)
    }
}

pub fn ext1_basis(m: &Module, n: &Module) -> Result<Ext1> {
    if !super::same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let cov = projective_cover(m);
    let (_, omega_incl) = kernel(&cov.cover);
    let hom_omega = HomSpace::new(omega_incl.source(), n);
    let hom_p = hom_basis_unchecked(&cov.projective, n);
    // restriction Hom(P, n) → Hom(Ω, n)
    let mut restr = Mat::zeros(f, hom_omega.dim(), hom_p.len());
    for (j, phi) in hom_p.iter().enumerate() {
        let c = hom_omega.coords(&phi.compose(&omega_incl));
        for (i, x) in c.into_iter().enumerate() {
            restr.set(i, j, x);
        }
    }
    let (quotient, section) = restr.image_basis().quotient_maps();
    let cocycles = (0..section.cols()).map(|j| hom_omega.element(&section.col_vec(j))).collect();
    Ok(Ext1 { omega_incl, cover: cov.cover, hom_omega, quotient, cocycles })
}

pub fn ext1_dim(m: &Module, n: &Module) -> usize {
    ext1_basis(m, n).map(|e| e.dim()).unwrap_or(0)
}

/// The extension `0 → n → E → m → 0` classified by a cocycle `Ω → n`,
/// built as the pushout of `Ω → P` along the cocycle.
pub fn extension_realize(ext: &Ext1, cocycle: &ModuleMap) -> Result<ShortExactSeq> {
    let (e, into_e, p_to_e) = pushout(cocycle, &ext.omega_incl)?;
    // E → m is induced by (0, π) on n ⊕ P
    let n = cocycle.target();
    let m = ext.cover.target();
    let alg = n.algebra().clone();
    let sum = direct_sum(&alg, &[n.clone(), ext.cover.source().clone()]);
    let to_m = ext.cover.compose(&sum.projections[1]);
    let qmap = into_e.compose(&sum.projections[0]).add(&p_to_e.compose(&sum.projections[1]));
    // qmap: n ⊕ P → E is surjective; solve epi ∘ qmap = to_m blockwise
    let blocks = (0..alg.num_vertices())
        .map(|v| {
            let q = qmap.block(v);
            let sol = q.transpose().solve(&to_m.block(v).transpose())?;
            sol.map(|s| s.transpose()).ok_or_else(|| Error::NoSolution("extension epi".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let epi = ModuleMap::new(&e, m, blocks)?;
    ShortExactSeq::new(into_e, epi)
}

/// Every element of Ext¹ realised as an extension; requires `p^dim` small.
pub fn all_extensions(m: &Module, n: &Module) -> Result<Vec<ShortExactSeq>> {
    let ext = ext1_basis(m, n)?;
    all_vectors(m.field(), ext.dim())
        .map(|c| {
            let coc = combine_maps(&ext.cocycles, &c, ext.omega_incl.source(), n);
            extension_realize(&ext, &coc)
        })
        .collect()
}

pub(crate) fn combine_maps(basis: &[ModuleMap], coeffs: &[u32], src: &Module, tgt: &Module) -> ModuleMap {
    let mut out = ModuleMap::zero(src, tgt);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            out = out.add(&b.scale(c));
        }
    }
    out
}

/// Trace of a family of modules in `m`: the sum of the images of all maps
/// from the family.
pub fn trace(gens: &[Module], m: &Module) -> Submodule {
    let mut acc = Submodule::zero(m);
    for g in gens {
        for phi in hom_basis_unchecked(g, m) {
            acc = acc.sum(&super::module::image_submodule(&phi));
        }
    }
    acc
}

/// Reject of a family in `m`: the common kernel of all maps into it.
pub fn reject(gens: &[Module], m: &Module) -> Submodule {
    let mut acc = Submodule::full(m);
    for g in gens {
        for phi in hom_basis_unchecked(m, g) {
            acc = acc.intersect(&super::module::kernel_submodule(&phi));
        }
    }
    acc
}

