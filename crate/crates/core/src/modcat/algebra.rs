use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
    pub label: String,
}

/// A finite quiver. Multiple arrows between two vertices are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from labelled vertices and `(src, tgt)` pairs given by label.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let find = |name: &str| {
            vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let mut out = Vec::with_capacity(arrows.len());
        for (s, t) in arrows {
            let (src, tgt) = (find(s.as_ref())?, find(t.as_ref())?);
            out.push(Arrow { src, tgt, label: String::new() });
        }
        let mut q = Quiver { vertices, arrows: out };
        q.assign_default_labels();
        Ok(q)
    }

    /// Linearly oriented `A_n`: `1 → 2 → … → n`.
    pub fn linear(n: usize) -> Self {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (0..n.saturating_sub(1)).map(|i| Arrow { src: i, tgt: i + 1, label: String::new() }).collect();
        let mut q = Quiver { vertices, arrows };
        q.assign_default_labels();
        q
    }

    fn assign_default_labels(&mut self) {
        let single = self.arrows.len() <= 3;
        let names = ["a", "b", "c"];
        for (k, arrow) in self.arrows.iter_mut().enumerate() {
            if arrow.label.is_empty() {
                arrow.label = if single { names[k].to_string() } else { format!("a{k}") };
            }
        }
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| {
                    let label = match a.label.strip_suffix('*') {
                        Some(base) => base.to_string(),
                        None => format!("{}*", a.label),
                    };
                    Arrow { src: a.tgt, tgt: a.src, label }
                })
                .collect(),
        }
    }

    /// Topological order of the vertices, or the vertex on a cycle.
    fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.tgt] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.src == v) {
                indeg[a.tgt] -= 1;
                if indeg[a.tgt] == 0 {
                    ready.push(a.tgt);
                }
            }
        }
        if order.len() < n {
            let v = (0..n).find(|&v| indeg[v] > 0).unwrap_or(0);
            return Err(Error::CyclicQuiver(self.vertices[v].clone()));
        }
        Ok(order)
    }
}

/// A path in a quiver, listed by the arrows it traverses in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

const MAX_PATHS: usize = 4096;

/// The path algebra of an acyclic quiver over F_p.
///
/// Basis elements are paths; the product `p · q` is "first `q`, then `p`",
/// so the arrow `a: 1 → 2` satisfies `a = e₂ · a · e₁` and representations
/// are left modules.
pub struct Algebra {
    field: Field,
    quiver: Quiver,
    paths: Vec<Path>,
    index: HashMap<(usize, Vec<usize>), usize>,
    trivial: Vec<usize>,
    mult: Vec<Vec<Option<usize>>>,
    extend: Vec<Vec<Option<usize>>>,
    opposite: OnceLock<Arc<Algebra>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(F_{}, {} vertices, dim {})", self.field.p(), self.quiver.vertices.len(), self.paths.len())
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.quiver == other.quiver
    }
}

impl Eq for Algebra {}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Algebra {
    pub fn path_algebra(quiver: Quiver, field: Field) -> Result<Arc<Self>> {
        quiver.topological_order()?;
        let n = quiver.vertices.len();
        // paths grouped by source, grown along the topological order
        let mut paths: Vec<Path> = (0..n).map(|v| Path { src: v, tgt: v, arrows: vec![] }).collect();
        let mut frontier: Vec<Path> = paths.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for (k, a) in quiver.arrows.iter().enumerate() {
                    if a.src == p.tgt {
                        let mut arrows = p.arrows.clone();
                        arrows.push(k);
                        next.push(Path { src: p.src, tgt: a.tgt, arrows });
                    }
                }
            }
            paths.extend(next.iter().cloned());
            if paths.len() > MAX_PATHS {
                return Err(Error::BoundExceeded(format!("more than {MAX_PATHS} paths")));
            }
            frontier = next;
        }
        let index: HashMap<(usize, Vec<usize>), usize> =
            paths.iter().enumerate().map(|(i, p)| ((p.src, p.arrows.clone()), i)).collect();
        let trivial: Vec<usize> = (0..n).collect();
        let dim = paths.len();
        let mut mult = vec![vec![None; dim]; dim];
        for (i, p) in paths.iter().enumerate() {
            for (j, q) in paths.iter().enumerate() {
                if q.tgt == p.src {
                    let mut arrows = q.arrows.clone();
                    arrows.extend_from_slice(&p.arrows);
                    mult[i][j] = index.get(&(q.src, arrows)).copied();
                }
            }
        }
        let mut extend = vec![vec![None; quiver.arrows.len()]; dim];
        for (i, p) in paths.iter().enumerate() {
            for (k, a) in quiver.arrows.iter().enumerate() {
                if a.src == p.tgt {
                    let mut arrows = p.arrows.clone();
                    arrows.push(k);
                    extend[i][k] = index.get(&(p.src, arrows)).copied();
                }
            }
        }
        Ok(Arc::new(Algebra { field, quiver, paths, index, trivial, mult, extend, opposite: OnceLock::new() }))
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn num_vertices(&self) -> usize {
        self.quiver.vertices.len()
    }
    pub fn num_arrows(&self) -> usize {
        self.quiver.arrows.len()
    }
    pub fn arrow(&self, k: usize) -> &Arrow {
        &self.quiver.arrows[k]
    }
    /// Dimension of the algebra, i.e. the number of paths.
    pub fn dim(&self) -> usize {
        self.paths.len()
    }
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }
    pub fn path(&self, i: usize) -> &Path {
        &self.paths[i]
    }
    /// Basis index of the trivial path `e_v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.trivial[v]
    }
    pub fn path_index(&self, src: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(&(src, arrows.to_vec())).copied()
    }
    /// Basis index of the single-arrow path for arrow `k`.
    pub fn arrow_path(&self, k: usize) -> usize {
        self.path_index(self.quiver.arrows[k].src, &[k]).expect("arrow path exists")
    }

    /// Structure constant: `b_i · b_j` is either a basis element or zero.
    pub fn mul(&self, i: usize, j: usize) -> Option<usize> {
        self.mult[i][j]
    }

    /// The path "first `p`, then arrow `k`", if composable.
    pub fn extend(&self, p: usize, k: usize) -> Option<usize> {
        self.extend[p][k]
    }

    /// Paths from `v` to `w`, in basis order.
    pub fn paths_between(&self, v: usize, w: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.paths[i].src == v && self.paths[i].tgt == w).collect()
    }

    pub fn path_label(&self, i: usize) -> String {
        let p = &self.paths[i];
        if p.is_trivial() {
            return format!("e{}", self.quiver.vertices[p.src]);
        }
        p.arrows.iter().rev().map(|&k| self.quiver.arrows[k].label.as_str()).collect::<Vec<_>>().join("·")
    }

    /// Coordinates of the unit `Σ e_v`.
    pub fn unit(&self) -> Vec<u32> {
        let mut u = vec![0; self.dim()];
        for &t in &self.trivial {
            u[t] = 1;
        }
        u
    }

    /// Checks associativity and the unit laws on all basis triples.
    pub fn check_axioms(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let left = self.mult[i][j].and_then(|ij| self.mult[ij][k]);
                    let right = self.mult[j][k].and_then(|jk| self.mult[i][jk]);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        (0..d).all(|i| {
            let l = self.trivial.iter().filter_map(|&e| self.mult[e][i]).collect::<Vec<_>>();
            let r = self.trivial.iter().filter_map(|&e| self.mult[i][e]).collect::<Vec<_>>();
            l == vec![i] && r == vec![i]
        })
    }

    /// The opposite algebra, realised as the path algebra of the opposite quiver.
    /// Arrow `k` of the opposite quiver is the reverse of arrow `k`.
    pub fn opposite(&self) -> Arc<Algebra> {
        self.opposite
            .get_or_init(|| {
                Algebra::path_algebra(self.quiver.opposite(), self.field).expect("opposite of an acyclic quiver")
            })
            .clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_has_three_paths() {
        let a = Algebra::path_algebra(Quiver::linear(2), Field::f2()).unwrap();
        assert_eq!(a.dim(), 3);
        let labels: Vec<_> = (0..3).map(|i| a.path_label(i)).collect();
        assert_eq!(labels, vec!["e1", "e2", "a"]);
        // a = e2 · a · e1
        let arrow = a.arrow_path(0);
        assert_eq!(a.mul(1, arrow), Some(arrow));
        assert_eq!(a.mul(arrow, 0), Some(arrow));
        assert_eq!(a.mul(0, arrow), None);
        assert!(a.check_axioms());
    }

    #[test]
    fn single_vertex_is_the_field() {
        let q = Quiver::new(&["x"], &[]).unwrap();
        let a = Algebra::path_algebra(q, Field::new(3).unwrap()).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.unit(), vec![1]);
    }

    #[test]
    fn a3_path_count() {
        let a = Algebra::path_algebra(Quiver::linear(3), Field::f2()).unwrap();
        // hand count: three trivial paths, two arrows, one composite
        assert_eq!(a.dim(), 6);
        assert_eq!(a.paths_between(0, 2).len(), 1);
        assert!(a.check_axioms());
        assert_eq!(a.path_label(5), "b·a");
    }

    #[test]
    fn cyclic_quivers_are_rejected() {
        let q = Quiver::new(&["1", "2"], &[("1", "2"), ("2", "1")]).unwrap();
        assert!(matches!(Algebra::path_algebra(q, Field::f2()), Err(Error::CyclicQuiver(_))));
    }

    #[test]
    fn opposite_reverses_arrows() {
        let a = Algebra::path_algebra(Quiver::linear(3), Field::f2()).unwrap();
        let op = a.opposite();
        assert_eq!(op.arrow(0).src, 1);
        assert_eq!(op.arrow(0).tgt, 0);
        assert_eq!(*op.opposite(), *a);
    }
}
