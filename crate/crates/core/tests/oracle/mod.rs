// Independent checkers shared by the acceptance suite and the property tests.
// They use only module-level primitives (submodules, extensions, Hom
// dimensions, decomposition), never the verifiers they are compared with.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use tilted_giraud::complexes::Complex;
use tilted_giraud::modcat::hom::all_extensions;
use tilted_giraud::modcat::{decompose, enumerate_submodules, ext1_dim, hom_dim, Module, Universe};
use tilted_giraud::torsion::TorsionPair;

/// A set of universe indecomposables, one bit per index.
pub type Mask = u64;

pub fn bit(i: usize) -> Mask {
    1 << i
}

pub fn subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Indices of the indecomposable summands of `m`, with multiplicity, sorted.
pub fn summands(u: &Universe, m: &Module) -> Vec<usize> {
    let mut out: Vec<usize> = decompose(m)
        .expect("modules of the fixtures decompose")
        .summands
        .iter()
        .map(|s| u.index_of(s).unwrap_or_else(|| panic!("summand {s:?} outside the universe")))
        .collect();
    out.sort_unstable();
    out
}

pub fn summand_mask(u: &Universe, m: &Module) -> Mask {
    summands(u, m).into_iter().fold(0, |acc, i| acc | bit(i))
}

/// Membership in the additive closure of a set of indecomposables.
pub fn in_class(u: &Universe, class: Mask, m: &Module) -> bool {
    subset(summand_mask(u, m), class)
}

/// Closure data of a bounded universe: the summands of every quotient of
/// each indecomposable, every submodule of each indecomposable, and of every
/// extension between two members whose sum still fits the bound.
pub struct ClosureTable {
    quotients: Vec<Mask>,
    submodules: Vec<Mask>,
    /// `(summands of A, summands of B, summands of all middle terms)`
    extensions: Vec<(Mask, Mask, Mask)>,
}

impl ClosureTable {
    pub fn new(u: &Universe) -> Self {
        let mut quotients = Vec::new();
        let mut submodules = Vec::new();
        for m in &u.indecomposables {
            let (mut q, mut s) = (0, 0);
            for sub in enumerate_submodules(m).unwrap() {
                q |= summand_mask(u, &sub.quotient().0);
                s |= summand_mask(u, &sub.module().0);
            }
            quotients.push(q);
            submodules.push(s);
        }
        let members: Vec<&Module> = u.modules().filter(|m| !m.is_zero()).collect();
        let mut extensions = Vec::new();
        for a in &members {
            for b in &members {
                let dims: Vec<usize> = a.dims().iter().zip(b.dims()).map(|(x, y)| x + y).collect();
                if !u.bound.admits(&dims) {
                    continue;
                }
                let middles = all_extensions(a, b)
                    .unwrap()
                    .iter()
                    .fold(0, |acc, e| acc | summand_mask(u, e.middle()));
                extensions.push((summand_mask(u, a), summand_mask(u, b), middles));
            }
        }
        ClosureTable { quotients, submodules, extensions }
    }

    fn closed_under_extensions(&self, class: Mask) -> bool {
        self.extensions
            .iter()
            .all(|&(a, b, mid)| !(subset(a, class) && subset(b, class)) || subset(mid, class))
    }

    pub fn is_torsion_class(&self, class: Mask) -> bool {
        (0..self.quotients.len()).all(|i| class & bit(i) == 0 || subset(self.quotients[i], class))
            && self.closed_under_extensions(class)
    }

    pub fn is_torsionfree_class(&self, class: Mask) -> bool {
        (0..self.submodules.len()).all(|i| class & bit(i) == 0 || subset(self.submodules[i], class))
            && self.closed_under_extensions(class)
    }
}

/// Indecomposables receiving no nonzero map from the class.
pub fn right_perp(u: &Universe, class: Mask) -> Mask {
    let ind = &u.indecomposables;
    (0..ind.len())
        .filter(|&j| (0..ind.len()).all(|i| class & bit(i) == 0 || hom_dim(&ind[i], &ind[j]) == 0))
        .fold(0, |acc, j| acc | bit(j))
}

/// Every torsion pair of the universe as `(T, F)` masks, found by testing
/// each set of indecomposables for closure under quotients and extensions.
pub fn torsion_pairs(u: &Universe) -> BTreeSet<(Mask, Mask)> {
    let table = ClosureTable::new(u);
    (0..bit(u.indecomposables.len()))
        .filter(|&t| table.is_torsion_class(t))
        .map(|t| (t, right_perp(u, t)))
        .collect()
}

/// The `(T, F)` masks of a library pair, read off its membership predicates.
pub fn pair_masks(u: &Universe, p: &TorsionPair) -> (Mask, Mask) {
    let mut masks = (0, 0);
    for (i, x) in u.indecomposables.iter().enumerate() {
        if p.torsion.contains_indecomposable(x) {
            masks.0 |= bit(i);
        }
        if p.free.contains_indecomposable(x) {
            masks.1 |= bit(i);
        }
    }
    masks
}

pub fn catalan(n: usize) -> usize {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// `Hom(S_v, m) = 0` for every simple `S_v` outside the corner.
pub fn in_s_perp(simples_off_corner: &[Module], m: &Module) -> bool {
    simples_off_corner.iter().all(|s| hom_dim(s, m) == 0)
}

/// `Hom(m, S_v) = 0` for every simple `S_v` outside the corner.
pub fn in_perp_s(simples_off_corner: &[Module], m: &Module) -> bool {
    simples_off_corner.iter().all(|s| hom_dim(m, s) == 0)
}

/// Cohomology of a complex by degree, as sorted summand indices; over a
/// hereditary algebra this is the isomorphism type of the complex.
pub fn cohomology_type(u: &Universe, c: &Complex) -> BTreeMap<i32, Vec<usize>> {
    c.degrees()
        .map(|n| (n, summands(u, &c.cohomology(n).module)))
        .filter(|(_, s)| !s.is_empty())
        .collect()
}

/// `dim Hom_D(x, y)` by the hereditary splitting
/// `⊕_n Hom(H^n x, H^n y) ⊕ Ext¹(H^n x, H^{n-1} y)`.
pub fn splitting_hom_dim(x: &Complex, y: &Complex) -> usize {
    let mut total = 0;
    for n in x.degrees() {
        let hx = x.cohomology(n).module;
        if hx.is_zero() {
            continue;
        }
        if y.degrees().contains(&n) {
            total += hom_dim(&hx, &y.cohomology(n).module);
        }
        if y.degrees().contains(&(n - 1)) {
            total += ext1_dim(&hx, &y.cohomology(n - 1).module);
        }
    }
    total
}

/// Number of representation morphisms `m → n`, by running over every tuple
/// of per-vertex matrices and testing each arrow square with plain modular
/// arithmetic.
pub fn count_intertwiners(m: &Module, n: &Module) -> usize {
    let alg = m.algebra();
    let p = m.field().p() as usize;
    let shapes: Vec<(usize, usize)> = (0..alg.num_vertices()).map(|v| (n.dim_at(v), m.dim_at(v))).collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let total = p.pow(entries as u32);
    let get = |data: &[usize], v: usize, i: usize, j: usize| {
        let off: usize = shapes[..v].iter().map(|(r, c)| r * c).sum();
        data[off + i * shapes[v].1 + j]
    };
    let mut count = 0;
    let mut data = vec![0usize; entries];
    for code in 0..total {
        let mut c = code;
        for x in data.iter_mut() {
            *x = c % p;
            c /= p;
        }
        let commutes = (0..alg.num_arrows()).all(|k| {
            let arrow = alg.arrow(k);
            let (s, t) = (arrow.src, arrow.tgt);
            let (ma, na) = (m.arrow_map(k), n.arrow_map(k));
            // f_t · M_a = N_a · f_s, entry by entry
            (0..n.dim_at(t)).all(|i| {
                (0..m.dim_at(s)).all(|j| {
                    let lhs: usize = (0..m.dim_at(t)).map(|l| get(&data, t, i, l) * ma.get(l, j) as usize).sum();
                    let rhs: usize = (0..n.dim_at(s)).map(|l| na.get(i, l) as usize * get(&data, s, l, j)).sum();
                    lhs % p == rhs % p
                })
            })
        });
        count += usize::from(commutes);
    }
    count
}
