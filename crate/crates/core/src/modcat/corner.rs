//! The corner algebra `eAe` of an idempotent `e = Σ_{v ∈ V'} e_v` and the
//! functors relating `A`-modules to `eAe`-modules.
//!
//! For a path algebra, `eAe` is again a path algebra: its quiver has the
//! vertices `V'` and one arrow for every path of `A` whose endpoints lie in
//! `V'` and which meets `V'` nowhere else. Every path of `A` that starts at
//! `v` and ends in `V'` factors uniquely as a corner path after a path that
//! meets `V'` only at its end (a *first exit* of `v`). Dually every path
//! that starts in `V'` and ends at `v` is a *last entry* of `v` after a
//! corner path. These factorizations give explicit bases:
//!
//! * `l(M) = eM` keeps the vertices in `V'`;
//! * `i(N)_v = Hom_{eAe}(eAe_v, N) ≅ ⊕_{x first exit of v} N_{tgt x}`;
//! * `j(N)_v = e_vAe ⊗_{eAe} N ≅ ⊕_{p last entry of v} N_{src p}`.

use std::collections::HashMap;
use std::sync::Arc;

use super::algebra::{Arrow, Quiver};
use super::hom::HomSpace;
use super::module::{Module, ModuleMap};
use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Mat;

#[derive(Clone, Debug)]
pub struct Corner {
    ambient: Arc<Algebra>,
    vertices: Vec<usize>,
    corner: Arc<Algebra>,
    /// ambient path realizing each corner arrow
    arrow_paths: Vec<usize>,
    /// ambient path of every corner basis element
    ambient_path: Vec<usize>,
    corner_index: HashMap<usize, usize>,
    first_exits: Vec<Vec<usize>>,
    last_entries: Vec<Vec<usize>>,
}

impl Corner {
    pub fn new(alg: &Arc<Algebra>, vertices: &[usize]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyCorner);
        }
        let n = alg.num_vertices();
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if let Some(&bad) = vs.iter().find(|&&v| v >= n) {
            return Err(Error::UnknownVertex(bad.to_string()));
        }
        let in_corner = |v: usize| vs.binary_search(&v).is_ok();
        let local = |v: usize| vs.binary_search(&v).expect("corner vertex");
        // a path is "clean" when no vertex strictly between its ends is in V'
        let interior_clean = |p: usize| {
            let path = alg.path(p);
            path.arrows[..path.arrows.len().saturating_sub(1)].iter().all(|&k| !in_corner(alg.arrow(k).tgt))
        };
        let mut arrows = Vec::new();
        let mut arrow_paths = Vec::new();
        for (p, path) in alg.paths().iter().enumerate() {
            if !path.is_trivial() && in_corner(path.src) && in_corner(path.tgt) && interior_clean(p) {
                arrows.push(Arrow { src: local(path.src), tgt: local(path.tgt), label: alg.path_label(p) });
                arrow_paths.push(p);
            }
        }
        let quiver = Quiver { vertices: vs.iter().map(|&v| alg.quiver().vertices[v].clone()).collect(), arrows };
        let corner = Algebra::path_algebra(quiver, alg.field())?;
        let ambient_path: Vec<usize> = corner
            .paths()
            .iter()
            .map(|cp| {
                let mut arrows = Vec::new();
                for &k in &cp.arrows {
                    arrows.extend_from_slice(&alg.path(arrow_paths[k]).arrows);
                }
                alg.path_index(vs[cp.src], &arrows).expect("corner path is an ambient path")
            })
            .collect();
        let corner_index = ambient_path.iter().enumerate().map(|(c, &p)| (p, c)).collect();
        let first_exits = (0..n)
            .map(|v| {
                if in_corner(v) {
                    return vec![alg.idempotent(v)];
                }
                (0..alg.dim())
                    .filter(|&p| {
                        let path = alg.path(p);
                        path.src == v && in_corner(path.tgt) && interior_clean(p)
                    })
                    .collect()
            })
            .collect();
        let last_entries = (0..n)
            .map(|v| {
                if in_corner(v) {
                    return vec![alg.idempotent(v)];
                }
                (0..alg.dim())
                    .filter(|&p| {
                        let path = alg.path(p);
                        path.tgt == v && in_corner(path.src) && interior_clean(p)
                    })
                    .collect()
            })
            .collect();
        Ok(Corner {
            ambient: alg.clone(),
            vertices: vs,
            corner,
            arrow_paths,
            ambient_path,
            corner_index,
            first_exits,
            last_entries,
        })
    }

    pub fn ambient(&self) -> &Arc<Algebra> {
        &self.ambient
    }

    /// The corner algebra `eAe`.
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.corner
    }

    /// The vertices of `V'`, ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Ambient path of each corner basis element; the basis of `eAe` inside `A`.
    pub fn basis_in_ambient(&self) -> &[usize] {
        &self.ambient_path
    }

    /// Ambient paths spanning `eA`: the paths starting in `V'`.
    pub fn left_bimodule_basis(&self) -> Vec<usize> {
        let a = &self.ambient;
        (0..a.dim()).filter(|&p| self.vertices.contains(&a.path(p).tgt)).collect()
    }

    /// Ambient paths spanning `Ae`: the paths ending in `V'`.
    pub fn right_bimodule_basis(&self) -> Vec<usize> {
        let a = &self.ambient;
        (0..a.dim()).filter(|&p| self.vertices.contains(&a.path(p).src)).collect()
    }

    fn local(&self, v: usize) -> usize {
        self.vertices.binary_search(&v).expect("corner vertex")
    }

    fn tail(&self, src: usize, arrows: &[usize]) -> usize {
        let p = self.ambient.path_index(src, arrows).expect("sub-path exists");
        self.corner_index[&p]
    }

    /// Splits an ambient path ending in `V'` as (first exit, corner path).
    fn split_first(&self, p: usize) -> (usize, usize) {
        let a = &self.ambient;
        let path = a.path(p);
        let cut = if self.vertices.contains(&path.src) {
            0
        } else {
            1 + path.arrows.iter().position(|&k| self.vertices.contains(&a.arrow(k).tgt)).expect("path meets V'")
        };
        let head = a.path_index(path.src, &path.arrows[..cut]).expect("prefix exists");
        let mid = if cut == 0 { path.src } else { a.arrow(path.arrows[cut - 1]).tgt };
        (head, self.tail(mid, &path.arrows[cut..]))
    }

    /// Splits an ambient path starting in `V'` as (corner path, last entry).
    fn split_last(&self, p: usize) -> (usize, usize) {
        let a = &self.ambient;
        let path = a.path(p);
        let cut = if self.vertices.contains(&path.tgt) {
            path.arrows.len()
        } else {
            path.arrows.iter().rposition(|&k| self.vertices.contains(&a.arrow(k).src)).expect("path meets V'")
        };
        let corner = self.tail(path.src, &path.arrows[..cut]);
        let mid = if cut == path.arrows.len() { path.tgt } else { a.arrow(path.arrows[cut]).src };
        let entry = a.path_index(mid, &path.arrows[cut..]).expect("suffix exists");
        (corner, entry)
    }

    /// `l(M) = eM`.
    pub fn restrict(&self, m: &Module) -> Module {
        m.restrict(&self.corner, &self.vertices, &self.arrow_paths)
    }

    pub fn restrict_map(&self, f: &ModuleMap) -> ModuleMap {
        let blocks = self.vertices.iter().map(|&v| f.block(v).clone()).collect();
        ModuleMap::new_unchecked(&self.restrict(f.source()), &self.restrict(f.target()), blocks)
            .expect("restricted shapes agree")
    }

    /// `i(N) = Hom_{eAe}(eA, N)`.
    pub fn hom_section(&self, n: &Module) -> Module {
        let a = &self.ambient;
        let f = a.field();
        let dims: Vec<usize> =
            self.first_exits.iter().map(|xs| xs.iter().map(|&x| n.dim_at(self.local(a.path(x).tgt))).sum()).collect();
        let arrows = (0..a.num_arrows())
            .map(|k| {
                let arr = a.arrow(k);
                let mut m = Mat::zeros(f, dims[arr.tgt], dims[arr.src]);
                let mut row = 0;
                for &y in &self.first_exits[arr.tgt] {
                    let ny = n.dim_at(self.local(a.path(y).tgt));
                    // (a·φ)(y) = φ(y·a); y·a = c·x for a first exit x of src(a)
                    let ya = self.prepend(k, y);
                    let (x, c) = self.split_first(ya);
                    let col = self.first_exit_offset(n, arr.src, x);
                    m.paste(row, col, &n.path_map(c));
                    row += ny;
                }
                m
            })
            .collect();
        Module::new(a, dims, arrows).expect("section is a representation")
    }

    pub fn hom_section_map(&self, g: &ModuleMap) -> ModuleMap {
        let a = &self.ambient;
        let f = a.field();
        let (src, tgt) = (self.hom_section(g.source()), self.hom_section(g.target()));
        let blocks = (0..a.num_vertices())
            .map(|v| {
                let parts: Vec<Mat> =
                    self.first_exits[v].iter().map(|&x| g.block(self.local(a.path(x).tgt)).clone()).collect();
                block_diagonal(f, &parts)
            })
            .collect();
        ModuleMap::new_unchecked(&src, &tgt, blocks).expect("section map shapes")
    }

    /// `j(N) = Ae ⊗_{eAe} N`.
    pub fn tensor_section(&self, n: &Module) -> Module {
        let a = &self.ambient;
        let f = a.field();
        let dims: Vec<usize> = self
            .last_entries
            .iter()
            .map(|ps| ps.iter().map(|&p| n.dim_at(self.local(a.path(p).src))).sum())
            .collect();
        let arrows = (0..a.num_arrows())
            .map(|k| {
                let arr = a.arrow(k);
                let mut m = Mat::zeros(f, dims[arr.tgt], dims[arr.src]);
                let mut col = 0;
                for &p in &self.last_entries[arr.src] {
                    let np = n.dim_at(self.local(a.path(p).src));
                    // a·(p ⊗ n) = (a p) ⊗ n = p' ⊗ N_c n
                    let ap = a.extend(p, k).expect("entry extends along arrow");
                    let (c, p2) = self.split_last(ap);
                    let row = self.last_entry_offset(n, arr.tgt, p2);
                    m.paste(row, col, &n.path_map(c));
                    col += np;
                }
                m
            })
            .collect();
        Module::new(a, dims, arrows).expect("tensor is a representation")
    }

    pub fn tensor_section_map(&self, g: &ModuleMap) -> ModuleMap {
        let a = &self.ambient;
        let f = a.field();
        let (src, tgt) = (self.tensor_section(g.source()), self.tensor_section(g.target()));
        let blocks = (0..a.num_vertices())
            .map(|v| {
                let parts: Vec<Mat> =
                    self.last_entries[v].iter().map(|&p| g.block(self.local(a.path(p).src)).clone()).collect();
                block_diagonal(f, &parts)
            })
            .collect();
        ModuleMap::new_unchecked(&src, &tgt, blocks).expect("tensor map shapes")
    }

    /// Unit `η_M: M → il(M)`, `m ↦ (x ↦ M_x m)`.
    pub fn unit(&self, m: &Module) -> ModuleMap {
        let a = &self.ambient;
        let f = a.field();
        let target = self.hom_section(&self.restrict(m));
        let blocks = (0..a.num_vertices())
            .map(|v| {
                let parts: Vec<Mat> = self.first_exits[v].iter().map(|&x| m.path_map(x)).collect();
                Mat::vstack_all(f, m.dim_at(v), &parts)
            })
            .collect();
        ModuleMap::new_unchecked(m, &target, blocks).expect("unit shapes")
    }

    /// Counit `ε_N: li(N) → N`, evaluation at the trivial path.
    pub fn counit(&self, n: &Module) -> ModuleMap {
        let li = self.restrict(&self.hom_section(n));
        let f = n.field();
        let blocks = (0..self.vertices.len()).map(|w| Mat::identity(f, n.dim_at(w))).collect();
        ModuleMap::new_unchecked(&li, n, blocks).expect("counit shapes")
    }

    /// Unit of the co-context `η_N: N → rj(N)`, `n ↦ e_v ⊗ n`.
    pub fn co_unit(&self, n: &Module) -> ModuleMap {
        let rj = self.restrict(&self.tensor_section(n));
        let f = n.field();
        let blocks = (0..self.vertices.len()).map(|w| Mat::identity(f, n.dim_at(w))).collect();
        ModuleMap::new_unchecked(n, &rj, blocks).expect("co-unit shapes")
    }

    /// Counit of the co-context `ε_M: jr(M) → M`, `p ⊗ m ↦ M_p m`.
    pub fn co_counit(&self, m: &Module) -> ModuleMap {
        let a = &self.ambient;
        let f = a.field();
        let source = self.tensor_section(&self.restrict(m));
        let blocks = (0..a.num_vertices())
            .map(|v| {
                let parts: Vec<Mat> = self.last_entries[v].iter().map(|&p| m.path_map(p)).collect();
                Mat::hstack_all(f, m.dim_at(v), &parts)
            })
            .collect();
        ModuleMap::new_unchecked(&source, m, blocks).expect("co-counit shapes")
    }

    /// The `eAe`-module `eAe_v`: basis the ambient paths from `v` into `V'`.
    pub fn left_projective_piece(&self, v: usize) -> Module {
        let a = &self.ambient;
        let f = a.field();
        let basis: Vec<Vec<usize>> =
            self.vertices.iter().map(|&w| a.paths_between(v, w)).collect();
        let dims = basis.iter().map(Vec::len).collect::<Vec<_>>();
        let arrows = (0..self.corner.num_arrows())
            .map(|k| {
                let arr = self.corner.arrow(k);
                let q = &a.path(self.arrow_paths[k]).arrows;
                let mut m = Mat::zeros(f, dims[arr.tgt], dims[arr.src]);
                for (j, &x) in basis[arr.src].iter().enumerate() {
                    let mut arrows = a.path(x).arrows.clone();
                    arrows.extend_from_slice(q);
                    let y = a.path_index(v, &arrows).expect("composite path");
                    let i = basis[arr.tgt].iter().position(|&z| z == y).expect("listed");
                    m.set(i, j, 1);
                }
                m
            })
            .collect();
        Module::new(&self.corner, dims, arrows).expect("piece is a representation")
    }

    /// `e_vAe` as a module over the opposite of `eAe`: basis the ambient
    /// paths from `V'` to `v`, a corner arrow acting by precomposition.
    pub fn right_projective_piece(&self, v: usize) -> Module {
        let a = &self.ambient;
        let f = a.field();
        let op = self.corner.opposite();
        let basis: Vec<Vec<usize>> =
            self.vertices.iter().map(|&w| a.paths_between(w, v)).collect();
        let dims = basis.iter().map(Vec::len).collect::<Vec<_>>();
        let arrows = (0..op.num_arrows())
            .map(|k| {
                // opposite arrow k runs from tgt to src of the corner arrow k
                let arr = self.corner.arrow(k);
                let q = &a.path(self.arrow_paths[k]).arrows;
                let mut m = Mat::zeros(f, dims[arr.src], dims[arr.tgt]);
                for (j, &x) in basis[arr.tgt].iter().enumerate() {
                    let mut arrows = q.clone();
                    arrows.extend_from_slice(&a.path(x).arrows);
                    let y = a.path_index(self.vertices[arr.src], &arrows).expect("composite path");
                    let i = basis[arr.src].iter().position(|&z| z == y).expect("listed");
                    m.set(i, j, 1);
                }
                m
            })
            .collect();
        Module::new(&op, dims, arrows).expect("piece is a representation")
    }

    /// `i` is exact iff `eA` is projective over `eAe`, i.e. every `eAe_v` is.
    pub fn section_is_exact(&self) -> bool {
        (0..self.ambient.num_vertices()).all(|v| self.left_projective_piece(v).is_projective())
    }

    /// `j` is exact iff `Ae` is flat (here: projective) over `eAe`.
    pub fn tensor_is_exact(&self) -> bool {
        (0..self.ambient.num_vertices()).all(|v| self.right_projective_piece(v).is_projective())
    }

    /// `i(N)` computed directly as `Hom_{eAe}(eAe_v, N)` at each vertex,
    /// without the first-exit factorization. Used to cross-check
    /// [`Corner::hom_section`].
    pub fn hom_section_by_definition(&self, n: &Module) -> Module {
        let a = &self.ambient;
        let f = a.field();
        let pieces: Vec<Module> = (0..a.num_vertices()).map(|v| self.left_projective_piece(v)).collect();
        let spaces: Vec<HomSpace> = pieces.iter().map(|p| HomSpace::new(p, n)).collect();
        let dims = spaces.iter().map(HomSpace::dim).collect::<Vec<_>>();
        let arrows = (0..a.num_arrows())
            .map(|k| {
                let arr = a.arrow(k);
                let rho = self.precompose_arrow(&pieces[arr.tgt], &pieces[arr.src], arr.src, k);
                let mut m = Mat::zeros(f, dims[arr.tgt], dims[arr.src]);
                for (j, phi) in spaces[arr.src].basis.iter().enumerate() {
                    let c = spaces[arr.tgt].coords(&phi.compose(&rho));
                    for (i, x) in c.into_iter().enumerate() {
                        m.set(i, j, x);
                    }
                }
                m
            })
            .collect();
        Module::new(a, dims, arrows).expect("Hom module is a representation")
    }

    /// The `eAe`-map `eAe_u → eAe_v`, `x ↦ x·a`, for an arrow `a: v → u`.
    fn precompose_arrow(&self, from: &Module, to: &Module, v: usize, k: usize) -> ModuleMap {
        let a = &self.ambient;
        let f = a.field();
        let u = a.arrow(k).tgt;
        let blocks = self
            .vertices
            .iter()
            .map(|&w| {
                let src_basis = a.paths_between(u, w);
                let tgt_basis = a.paths_between(v, w);
                let mut m = Mat::zeros(f, tgt_basis.len(), src_basis.len());
                for (j, &x) in src_basis.iter().enumerate() {
                    let y = self.prepend(k, x);
                    let i = tgt_basis.iter().position(|&z| z == y).expect("listed");
                    m.set(i, j, 1);
                }
                m
            })
            .collect();
        ModuleMap::new_unchecked(from, to, blocks).expect("precomposition shapes")
    }

    /// The path "first arrow `k`, then `p`".
    fn prepend(&self, k: usize, p: usize) -> usize {
        let a = &self.ambient;
        let mut arrows = vec![k];
        arrows.extend_from_slice(&a.path(p).arrows);
        a.path_index(a.arrow(k).src, &arrows).expect("composable")
    }

    fn first_exit_offset(&self, n: &Module, v: usize, x: usize) -> usize {
        let a = &self.ambient;
        self.first_exits[v]
            .iter()
            .take_while(|&&y| y != x)
            .map(|&y| n.dim_at(self.local(a.path(y).tgt)))
            .sum()
    }

    fn last_entry_offset(&self, n: &Module, v: usize, p: usize) -> usize {
        let a = &self.ambient;
        self.last_entries[v]
            .iter()
            .take_while(|&&q| q != p)
            .map(|&q| n.dim_at(self.local(a.path(q).src)))
            .sum()
    }
}

fn block_diagonal(f: crate::linalg::Field, parts: &[Mat]) -> Mat {
    let rows = parts.iter().map(Mat::rows).sum();
    let cols = parts.iter().map(Mat::cols).sum();
    let mut m = Mat::zeros(f, rows, cols);
    let (mut r, mut c) = (0, 0);
    for p in parts {
        m.paste(r, c, p);
        r += p.rows();
        c += p.cols();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::decompose::is_iso;
    use crate::modcat::enumerate::{DimBound, Universe};
    use crate::modcat::fixtures;

    #[test]
    fn a2_corner_is_the_field() {
        let c = fixtures::a2_corner();
        assert_eq!(c.algebra().dim(), 1);
        assert_eq!(c.basis_in_ambient(), &[1]);
        // eA is spanned by e2 and a
        assert_eq!(c.left_bimodule_basis(), vec![1, 2]);
    }

    #[test]
    fn full_corner_is_the_algebra() {
        let a3 = fixtures::a3();
        let c = Corner::new(&a3, &[0, 1, 2]).unwrap();
        assert_eq!(c.algebra().dim(), a3.dim());
        let m = fixtures::p1(&a3);
        assert_eq!(c.hom_section(&c.restrict(&m)).dims(), m.dims());
        assert!(c.unit(&m).is_iso());
    }

    #[test]
    fn a3_corner_has_a_composite_arrow() {
        let c = fixtures::a3_corner();
        assert_eq!(c.algebra().dim(), 3);
        assert_eq!(c.algebra().arrow(0).label, "b·a");
        assert!(Corner::new(&fixtures::a3(), &[]).is_err());
    }

    #[test]
    fn sections_on_a2() {
        let c = fixtures::a2_corner();
        let a2 = c.ambient().clone();
        let k = Module::simple(c.algebra(), 0);
        assert!(is_iso(&c.hom_section(&k), &fixtures::p1(&a2)).unwrap());
        assert!(is_iso(&c.tensor_section(&k), &fixtures::s2(&a2)).unwrap());
        assert!(c.section_is_exact() && c.tensor_is_exact());
    }

    #[test]
    fn factorized_section_matches_the_definition() {
        for c in [fixtures::a2_corner(), fixtures::a3_corner()] {
            let u = Universe::new(c.algebra(), DimBound::per_vertex(2)).unwrap();
            for n in u.modules() {
                let fast = c.hom_section(n);
                assert!(fast.check_action());
                assert!(is_iso(&fast, &c.hom_section_by_definition(n)).unwrap());
            }
        }
    }

    #[test]
    fn units_are_natural_and_counits_iso() {
        let c = fixtures::a3_corner();
        let u = Universe::new(c.ambient(), DimBound::per_vertex(1)).unwrap();
        for m in u.modules() {
            assert!(c.unit(m).is_homomorphism());
            assert!(c.co_counit(m).is_homomorphism());
        }
        let uc = Universe::new(c.algebra(), DimBound::per_vertex(1)).unwrap();
        for n in uc.modules() {
            assert!(c.counit(n).is_iso() && c.counit(n).is_homomorphism());
            assert!(c.co_unit(n).is_iso() && c.co_unit(n).is_homomorphism());
        }
    }
}
