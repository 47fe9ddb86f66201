use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::decompose::{find_iso_indecomposable, is_indecomposable};
use super::module::{direct_sum, Module, Submodule};
use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, Field, Mat, Subspace};

/// Most candidate representations scanned for a single dimension vector.
const CANDIDATE_LIMIT: u64 = 1 << 20;
/// Most vectors in a module whose submodules are scanned.
const SUBMODULE_LIMIT: u64 = 1 << 16;

/// Bound on the modules an enumeration may produce: a cap on each vertex
/// dimension and an optional cap on the total dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimBound {
    pub per_vertex: usize,
    pub total: Option<usize>,
}

impl DimBound {
    pub fn per_vertex(d: usize) -> Self {
        DimBound { per_vertex: d, total: None }
    }

    pub fn total(n: usize) -> Self {
        DimBound { per_vertex: n, total: Some(n) }
    }

    pub fn admits(&self, dims: &[usize]) -> bool {
        dims.iter().all(|&d| d <= self.per_vertex) && self.total.is_none_or(|t| dims.iter().sum::<usize>() <= t)
    }

    /// Dimension vectors within the bound, ordered by total dimension and
    /// then lexicographically.
    pub fn dim_vectors(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; n];
        loop {
            if self.admits(&cur) {
                out.push(cur.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    out.sort_by_key(|d| (d.iter().sum::<usize>(), d.clone()));
                    return out;
                }
                i -= 1;
                if cur[i] < self.per_vertex {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
            }
        }
    }
}

/// Every representation with the given dimension vector.
fn representations(alg: &Arc<Algebra>, dims: &[usize]) -> Result<Vec<Module>> {
    let f = alg.field();
    let shapes: Vec<(usize, usize)> = (0..alg.num_arrows())
        .map(|k| {
            let a = alg.arrow(k);
            (dims[a.tgt], dims[a.src])
        })
        .collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let p = f.p() as u64;
    if p.checked_pow(entries as u32).is_none_or(|n| n > CANDIDATE_LIMIT) {
        return Err(Error::BoundExceeded(format!("{entries} free matrix entries for dims {dims:?}")));
    }
    let mut out = Vec::new();
    for v in all_vectors(f, entries) {
        let mut off = 0;
        let mats = shapes
            .iter()
            .map(|&(r, c)| {
                let m = Mat::from_vec(f, r, c, v[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect();
        out.push(Module::new(alg, dims.to_vec(), mats)?);
    }
    Ok(out)
}

/// Representatives of the isomorphism classes of indecomposable modules
/// within the bound. Each class is represented by its member with the
/// smallest `(dimension, dims, matrix encoding)` key.
pub fn enumerate_modules(alg: &Arc<Algebra>, bound: DimBound) -> Result<Vec<Module>> {
    let mut found: Vec<Module> = Vec::new();
    for dims in bound.dim_vectors(alg.num_vertices()) {
        if dims.iter().all(|&d| d == 0) {
            continue;
        }
        let mut reps = representations(alg, &dims)?;
        reps.sort_by_key(Module::sort_key);
        let start = found.len();
        for m in reps {
            if found[start..].iter().any(|r| find_iso_indecomposable(r, &m).is_some()) {
                continue;
            }
            if is_indecomposable(&m)? {
                found.push(m);
            }
        }
    }
    Ok(found)
}

/// Every subspace of `F_p^n`, each given by its RREF basis.
pub fn all_subspaces(field: Field, n: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // free slots: entries right of each pivot that are not pivot columns
            let slots: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            for vals in all_vectors(field, slots.len()) {
                let mut m = Mat::zeros(field, k, n);
                for (r, &c) in pivots.iter().enumerate() {
                    m.set(r, c, 1);
                }
                for (&(r, c), &x) in slots.iter().zip(&vals) {
                    m.set(r, c, x);
                }
                out.push(Subspace::from_rows(m));
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out.sort();
    out
}

/// Every submodule of `m`.
pub fn enumerate_submodules(m: &Module) -> Result<Vec<Submodule>> {
    let f = m.field();
    let p = f.p() as u64;
    if p.checked_pow(m.dim() as u32).is_none_or(|n| n > SUBMODULE_LIMIT) {
        return Err(Error::BoundExceeded(format!("submodules of a module of dimension {}", m.dim())));
    }
    let per_vertex: Vec<Vec<Subspace>> = m.dims().iter().map(|&d| all_subspaces(f, d)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_vertex.len()];
    loop {
        let spaces = idx.iter().zip(&per_vertex).map(|(&i, s)| s[i].clone()).collect();
        let sub = Submodule::new_unchecked(m, spaces);
        if sub.is_stable() {
            out.push(sub);
        }
        let mut v = idx.len();
        loop {
            if v == 0 {
                return Ok(out);
            }
            v -= 1;
            idx[v] += 1;
            if idx[v] < per_vertex[v].len() {
                break;
            }
            idx[v] = 0;
        }
    }
}

/// A member of a [`Universe`]: a direct sum of indecomposables, recorded by
/// multiplicities.
#[derive(Clone, Debug)]
pub struct Member {
    pub module: Module,
    pub multiplicities: Vec<usize>,
}

/// All modules within a bound, up to isomorphism: the indecomposables and
/// every direct sum of them that still fits.
#[derive(Clone, Debug)]
pub struct Universe {
    pub algebra: Arc<Algebra>,
    pub bound: DimBound,
    pub indecomposables: Vec<Module>,
    pub members: Vec<Member>,
}

impl Universe {
    pub fn new(alg: &Arc<Algebra>, bound: DimBound) -> Result<Self> {
        let indecomposables = enumerate_modules(alg, bound)?;
        Ok(Universe::from_indecomposables(alg, bound, indecomposables))
    }

    pub fn from_indecomposables(alg: &Arc<Algebra>, bound: DimBound, indecomposables: Vec<Module>) -> Self {
        let n = alg.num_vertices();
        let dims_of = |mult: &[usize]| -> Vec<usize> {
            (0..n).map(|v| mult.iter().zip(&indecomposables).map(|(&k, m)| k * m.dim_at(v)).sum()).collect()
        };
        // grow multiplicity vectors one slot at a time, pruned by the bound
        let mut mults: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..indecomposables.len() {
            let mut next = Vec::new();
            for prefix in mults {
                let mut k = 0;
                loop {
                    let mut cand = prefix.clone();
                    cand.push(k);
                    let mut padded = cand.clone();
                    padded.resize(indecomposables.len(), 0);
                    if !bound.admits(&dims_of(&padded)) {
                        break;
                    }
                    next.push(cand);
                    k += 1;
                }
            }
            mults = next;
        }
        let mut members: Vec<Member> = mults
            .into_iter()
            .map(|mult| {
                let parts: Vec<Module> = mult
                    .iter()
                    .zip(&indecomposables)
                    .flat_map(|(&k, m)| std::iter::repeat_n(m.clone(), k))
                    .collect();
                Member { module: direct_sum(alg, &parts).module, multiplicities: mult }
            })
            .collect();
        members.sort_by_key(|m| (m.module.dim(), m.multiplicities.iter().rev().cloned().collect::<Vec<_>>()));
        Universe { algebra: alg.clone(), bound, indecomposables, members }
    }

    pub fn modules(&self) -> impl Iterator<Item = &Module> {
        self.members.iter().map(|m| &m.module)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Index of the indecomposable isomorphic to `m`, if any.
    pub fn index_of(&self, m: &Module) -> Option<usize> {
        self.indecomposables.iter().position(|r| find_iso_indecomposable(r, m).is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::fixtures;
    use crate::modcat::hom::hom_dim;

    #[test]
    fn a2_indecomposables() {
        let a2 = fixtures::a2();
        let ind = enumerate_modules(&a2, DimBound::per_vertex(1)).unwrap();
        assert_eq!(ind, vec![fixtures::s2(&a2), fixtures::s1(&a2), fixtures::p1(&a2)]);
        // nothing new with a larger bound
        assert_eq!(enumerate_modules(&a2, DimBound::per_vertex(2)).unwrap().len(), 3);
    }

    #[test]
    fn single_vertex_has_one_indecomposable() {
        let q = crate::modcat::Quiver::new(&["x"], &[]).unwrap();
        let alg = Algebra::path_algebra(q, Field::new(3).unwrap()).unwrap();
        assert_eq!(enumerate_modules(&alg, DimBound::total(1)).unwrap().len(), 1);
    }

    #[test]
    fn a3_intervals() {
        let a3 = fixtures::a3();
        let ind = enumerate_modules(&a3, DimBound::total(3)).unwrap();
        assert_eq!(ind.len(), 6);
        // each interval module has dimension ≤ 1 at every vertex
        assert!(ind.iter().all(|m| m.dims().iter().all(|&d| d <= 1)));
        for (i, m) in ind.iter().enumerate() {
            for (j, n) in ind.iter().enumerate() {
                if i != j {
                    assert!(hom_dim(m, n) == 0 || hom_dim(n, m) == 0 || m.dims() != n.dims());
                }
            }
        }
    }

    #[test]
    fn subspace_counts() {
        // Gaussian binomials over F₂: 1, 3, 1 for n = 2 and 1, 7, 7, 1 for n = 3
        assert_eq!(all_subspaces(Field::f2(), 2).len(), 5);
        assert_eq!(all_subspaces(Field::f2(), 3).len(), 16);
        assert_eq!(all_subspaces(Field::new(3).unwrap(), 2).len(), 6);
    }

    #[test]
    fn submodules_of_small_modules() {
        let a2 = fixtures::a2();
        assert_eq!(enumerate_submodules(&fixtures::s1(&a2)).unwrap().len(), 2);
        let subs = enumerate_submodules(&fixtures::p1(&a2)).unwrap();
        let dims: Vec<_> = subs.iter().map(|s| s.dims()).collect();
        assert_eq!(dims, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(enumerate_submodules(&Module::zero(&a2)).unwrap().len(), 1);
    }

    #[test]
    fn universe_members_fit_the_bound() {
        let a2 = fixtures::a2();
        let u = Universe::new(&a2, DimBound::per_vertex(2)).unwrap();
        assert!(u.modules().all(|m| u.bound.admits(m.dims())));
        // multisets of {S2, S1, P1} with dims ≤ (2, 2)
        assert_eq!(u.len(), 14);
        assert!(u.members[0].module.is_zero());
    }
}
