use super::hom::{hom_basis_unchecked, HomSpace};
use super::module::{kernel_submodule, image_submodule, Module, ModuleMap, Submodule};
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, Mat};

/// Largest endomorphism ring (as `p^dim`) searched exhaustively.
const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

fn is_nilpotent(f: &ModuleMap) -> bool {
    let n = f.source().dim().max(1);
    f.blocks().iter().all(|b| b.pow(n).is_zero())
}

/// An endomorphism that is neither nilpotent nor invertible, if one exists.
/// Its existence is exactly the failure of `End(M)` to be local.
pub fn splitting_endomorphism(m: &Module) -> Result<Option<ModuleMap>> {
    if m.is_zero() {
        return Ok(None);
    }
    let end = HomSpace::new(m, m);
    let k = end.dim();
    if k <= 1 {
        return Ok(None);
    }
    let splits = |g: &ModuleMap| !g.is_iso() && !is_nilpotent(g);
    for b in &end.basis {
        if splits(b) {
            return Ok(Some(b.clone()));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let s = end.basis[i].add(&end.basis[j]);
            if splits(&s) {
                return Ok(Some(s));
            }
        }
    }
    let p = m.field().p() as u64;
    if p.checked_pow(k as u32).is_none_or(|t| t > EXHAUSTIVE_LIMIT) {
        return Err(Error::BoundExceeded(format!("endomorphism ring of dimension {k} too large to scan")));
    }
    for c in all_vectors(m.field(), k) {
        let g = end.element(&c);
        if splits(&g) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

pub fn is_indecomposable(m: &Module) -> Result<bool> {
    Ok(!m.is_zero() && splitting_endomorphism(m)?.is_none())
}

/// A Krull–Schmidt decomposition: indecomposable summands together with
/// inclusions into and projections from `m`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Module>,
    pub inclusions: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn decompose(m: &Module) -> Result<Decomposition> {
    let mut pieces: Vec<Submodule> = Vec::new();
    let mut stack = vec![Submodule::full(m)];
    while let Some(sub) = stack.pop() {
        if sub.is_zero() {
            continue;
        }
        let (inner, incl) = sub.module();
        match splitting_endomorphism(&inner)? {
            None => pieces.push(sub),
            Some(g) => {
                // Fitting: inner = im g^n ⊕ ker g^n
                let n = inner.dim();
                let blocks = g.blocks().iter().map(|b| b.pow(n)).collect();
                let gn = ModuleMap::new_unchecked(&inner, &inner, blocks)?;
                let im = image_submodule(&gn).image_under(&incl);
                let ker = kernel_submodule(&gn).image_under(&incl);
                stack.push(ker);
                stack.push(im);
            }
        }
    }
    // stable order: by dimension, then by dimension vector
    pieces.sort_by_key(|s| (s.dim(), s.dims()));
    let f = m.field();
    let mut summands = Vec::new();
    let mut inclusions = Vec::new();
    for p in &pieces {
        let (s, i) = p.module();
        summands.push(s);
        inclusions.push(i);
    }
    // projections from the inverse of the block basis change
    let nv = m.dims().len();
    let mut inv_blocks = Vec::with_capacity(nv);
    for v in 0..nv {
        let cols: Vec<Mat> = inclusions.iter().map(|i| i.block(v).clone()).collect();
        let basis = Mat::hstack_all(f, m.dim_at(v), &cols);
        inv_blocks.push(basis.inverse().ok_or_else(|| Error::InvalidModule("summands do not span".into()))?);
    }
    let mut projections = Vec::new();
    let mut offs = vec![0usize; nv];
    for s in &summands {
        let blocks = (0..nv)
            .map(|v| {
                let b = inv_blocks[v].block(offs[v], 0, s.dim_at(v), m.dim_at(v));
                offs[v] += s.dim_at(v);
                b
            })
            .collect();
        projections.push(ModuleMap::new_unchecked(m, s, blocks)?);
    }
    Ok(Decomposition { summands, inclusions, projections })
}

/// Isomorphism between indecomposables: some composite `g ∘ f` of basis
/// maps is invertible. In a local endomorphism ring the non-units form an
/// ideal, so checking basis pairs suffices.
pub fn find_iso_indecomposable(a: &Module, b: &Module) -> Option<ModuleMap> {
    if a.dims() != b.dims() {
        return None;
    }
    if a == b {
        return Some(ModuleMap::identity(a));
    }
    let fs = hom_basis_unchecked(a, b);
    if fs.is_empty() {
        return None;
    }
    let gs = hom_basis_unchecked(b, a);
    for f in &fs {
        for g in &gs {
            if g.compose(f).is_iso() {
                return Some(f.clone());
            }
        }
    }
    None
}

pub fn find_iso(a: &Module, b: &Module) -> Result<Option<ModuleMap>> {
    if a.dims() != b.dims() {
        return Ok(None);
    }
    if a == b {
        return Ok(Some(ModuleMap::identity(a)));
    }
    let da = decompose(a)?;
    let db = decompose(b)?;
    if da.summands.len() != db.summands.len() {
        return Ok(None);
    }
    let mut used = vec![false; db.summands.len()];
    let mut total = ModuleMap::zero(a, b);
    for (i, s) in da.summands.iter().enumerate() {
        let mut found = false;
        for (j, t) in db.summands.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(iso) = find_iso_indecomposable(s, t) {
                used[j] = true;
                total = total.add(&db.inclusions[j].compose(&iso).compose(&da.projections[i]));
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    Ok(Some(total))
}

pub fn is_iso(a: &Module, b: &Module) -> Result<bool> {
    Ok(find_iso(a, b)?.is_some())
}
