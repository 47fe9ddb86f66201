//! Dense matrices over prime fields F_p.
//!
//! Vectors are columns; a matrix with `rows × cols` entries represents a
//! linear map `F_p^cols → F_p^rows`. Subspaces are kept in reduced row
//! echelon form so equality is structural.

use std::fmt;

use crate::error::{Error, Result};

/// A prime field F_p with p ≤ 251.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
}

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=251).contains(&p) || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::InvalidField(p));
        }
        Ok(Field { p })
    }

    pub fn f2() -> Self {
        Field { p: 2 }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        // Fermat: a^(p-2)
        let mut result = 1u32;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Reduces a signed integer into `0..p`.
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors; entries are reduced mod p.
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&v| field.reduce(v)).collect();
        Ok(Mat { field, rows: r, cols: c, data })
    }

    /// Builds a `rows × cols` matrix from row-major data already reduced mod p.
    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        debug_assert!(data.iter().all(|&v| v < field.p()));
        Mat { field, rows, cols, data }
    }

    /// Single column vector.
    pub fn column(field: Field, v: &[u32]) -> Self {
        Mat::from_vec(field, v.len(), 1, v.to_vec())
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p();
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn col_vec(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul shape {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let p = self.field.p() as u64;
        let mut out = vec![0u32; self.rows * other.cols];
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (acc_c, &b) in acc.iter_mut().zip(orow) {
                    *acc_c += a * b as u64;
                }
            }
            for (c, a) in acc.iter().enumerate() {
                out[r * other.cols + c] = (a % p) as u32;
            }
        }
        Mat { field: self.field, rows: self.rows, cols: other.cols, data: out }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        let f = self.field;
        Mat { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn scale(&self, s: u32) -> Mat {
        let f = self.field;
        Mat { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, s)).collect() }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack rows");
        let mut out = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.data[r * out.cols..r * out.cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * out.cols + self.cols..(r + 1) * out.cols].copy_from_slice(other.row(r));
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack_all(field: Field, rows: usize, mats: &[Mat]) -> Mat {
        mats.iter().fold(Mat::zeros(field, rows, 0), |acc, m| acc.hstack(m))
    }

    pub fn vstack_all(field: Field, cols: usize, mats: &[Mat]) -> Mat {
        mats.iter().fold(Mat::zeros(field, 0, cols), |acc, m| acc.vstack(m))
    }

    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        out
    }

    /// Copies `m` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, m: &Mat) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols, "paste out of range");
        for r in 0..m.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + m.cols].copy_from_slice(m.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Mat { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    /// Row-major flattening as a column vector.
    pub fn flatten(&self) -> Vec<u32> {
        self.data.clone()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            if inv != 1 {
                for k in c..cols {
                    self.data[r * cols + k] = f.mul(self.data[r * cols + k], inv);
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for k in c..cols {
                    let v = self.data[r * cols + k];
                    if v != 0 {
                        let cur = self.data[i * cols + k];
                        self.data[i * cols + k] = f.add(cur, f.mul(nf, v));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self · v = 0}` as a subspace of `F_p^cols`.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let f = self.field;
        let mut basis = Mat::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            basis.data[k * self.cols + fc] = 1;
            for (pr, &pc) in pivots.iter().enumerate() {
                basis.data[k * self.cols + pc] = f.neg(r.get(pr, fc));
            }
        }
        Subspace::from_rows(basis)
    }

    /// Basis of the column space as a subspace of `F_p^rows`.
    pub fn image_basis(&self) -> Subspace {
        Subspace::from_rows(self.transpose())
    }

    /// Solves `self · x = b`; free variables are set to zero. `None` when
    /// the system is inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        if self.rows != b.rows {
            return Err(Error::Shape(format!("solve: {}x{} vs rhs {}x{}", self.rows, self.cols, b.rows, b.cols)));
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (pr, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[pc * b.cols + j] = r.get(pr, self.cols + j);
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let id = Mat::identity(self.field, self.rows);
        let x = self.solve(&id).ok()??;
        if self.mul(&x) == id {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// For a matrix with independent columns, a left inverse `L` with `L·self = I`.
    pub fn left_inverse(&self) -> Option<Mat> {
        let (_, piv_rows) = self.transpose().rref();
        if piv_rows.len() != self.cols {
            return None;
        }
        let square = self.select_rows(&piv_rows);
        let inv = square.inverse()?;
        let mut l = Mat::zeros(self.field, self.cols, self.rows);
        for (j, &r) in piv_rows.iter().enumerate() {
            for i in 0..self.cols {
                l.data[i * self.rows + r] = inv.get(i, j);
            }
        }
        Some(l)
    }

    /// Matrix power for square matrices.
    pub fn pow(&self, mut e: usize) -> Mat {
        assert!(self.is_square());
        let mut result = Mat::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }
}

/// A linear subspace of `F_p^n` stored by an RREF basis (rows).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Mat,
}

impl Subspace {
    /// Subspace spanned by the rows of `m`.
    pub fn from_rows(m: Mat) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        Subspace { basis }
    }

    /// Subspace spanned by the columns of `m`.
    pub fn from_cols(m: &Mat) -> Self {
        Subspace::from_rows(m.transpose())
    }

    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { basis: Mat::zeros(field, 0, ambient) }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace { basis: Mat::identity(field, ambient) }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    /// Basis vectors as columns (`ambient × dim`).
    pub fn basis_cols(&self) -> Mat {
        self.basis.transpose()
    }

    pub fn contains_vec(&self, v: &[u32]) -> bool {
        let m = Mat::from_vec(self.field(), 1, v.len(), v.to_vec());
        self.sum(&Subspace::from_rows(m)).dim() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_rows(self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // v = A^T x = B^T y  ⇔  [A^T | -B^T] (x,y) = 0
        let a = self.basis_cols();
        let b = other.basis_cols();
        let k = a.hstack(&b.neg()).kernel_basis();
        let xs = k.basis().block(0, 0, k.dim(), self.dim());
        Subspace::from_rows(xs.mul(&self.basis))
    }

    /// Quotient data for `F_p^n / self`: a surjection `q` and a section `s`
    /// with `q·s = I`, `ker q = self`.
    pub fn quotient_maps(&self) -> (Mat, Mat) {
        let n = self.ambient_dim();
        let f = self.field();
        let pivots: Vec<usize> = (0..self.dim())
            .map(|r| (0..n).find(|&c| self.basis.get(r, c) != 0).expect("rref row"))
            .collect();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        // Reduce v by the RREF rows and read off the free coordinates.
        let mut q = Mat::zeros(f, free.len(), n);
        for (j, &fc) in free.iter().enumerate() {
            q.set(j, fc, 1);
        }
        for (r, &pc) in pivots.iter().enumerate() {
            // e_pc ≡ e_pc - row_r  (mod self)
            for (j, &fc) in free.iter().enumerate() {
                q.set(j, pc, f.neg(self.basis.get(r, fc)));
            }
        }
        let mut s = Mat::zeros(f, n, free.len());
        for (j, &fc) in free.iter().enumerate() {
            s.set(fc, j, 1);
        }
        (q, s)
    }
}

/// Pullback of linear maps `f: U → W`, `g: V → W`, as the subspace
/// `{(u, v) : f u = g v}` of `U ⊕ V`.
pub fn pullback_linear(f: &Mat, g: &Mat) -> Result<Subspace> {
    if f.rows() != g.rows() {
        return Err(Error::Shape(format!("pullback codomains {} vs {}", f.rows(), g.rows())));
    }
    Ok(f.hstack(&g.neg()).kernel_basis())
}

/// All vectors of `F_p^n`, in lexicographic order. Test and oracle helper.
pub fn all_vectors(field: Field, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let p = field.p() as u64;
    let total = p.pow(n as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0u32; n];
        for slot in v.iter_mut().rev() {
            *slot = (k % p) as u32;
            k /= p;
        }
        v
    })
}

/// All linear combinations `Σ c_i b_i` of a list of matrices, coefficient
/// vectors enumerated lexicographically. Requires `p^len` to be small.
pub fn all_combinations<'a>(field: Field, basis: &'a [Mat]) -> impl Iterator<Item = (Vec<u32>, Mat)> + 'a {
    let shape = basis.first().map(|m| (m.rows(), m.cols()));
    all_vectors(field, basis.len()).map(move |coeffs| {
        let m = match shape {
            None => Mat::zeros(field, 0, 0),
            Some((r, c)) => combine(field, r, c, basis, &coeffs),
        };
        (coeffs, m)
    })
}

/// `Σ coeffs[i] · basis[i]`.
pub fn combine(field: Field, rows: usize, cols: usize, basis: &[Mat], coeffs: &[u32]) -> Mat {
    let mut out = Mat::zeros(field, rows, cols);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            out = out.add(&b.scale(c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> Field {
        Field::f2()
    }

    fn m(rows: &[Vec<i64>]) -> Mat {
        Mat::from_rows(f2(), rows).unwrap()
    }

    #[test]
    fn field_rejects_composites() {
        assert!(Field::new(4).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(257).is_err());
        assert_eq!(Field::new(251).unwrap().p(), 251);
        let f5 = Field::new(5).unwrap();
        assert_eq!(f5.mul(3, f5.inv(3)), 1);
    }

    #[test]
    fn rref_examples() {
        let id = Mat::identity(f2(), 2);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1]));
        let z = Mat::zeros(f2(), 3, 3);
        assert_eq!(z.rref(), (z.clone(), vec![]));
        let (r, p) = m(&[vec![1, 1], vec![1, 1]]).rref();
        assert_eq!(r, m(&[vec![1, 1], vec![0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Mat::identity(f2(), 3).kernel_basis().dim(), 0);
        assert_eq!(Mat::zeros(f2(), 2, 2).kernel_basis().dim(), 2);
        let k = m(&[vec![1, 1]]).kernel_basis();
        // exhaustive: only (0,0) and (1,1) are killed
        let killed: Vec<_> = all_vectors(f2(), 2)
            .filter(|v| (v[0] + v[1]) % 2 == 0 && v.iter().any(|&x| x != 0))
            .collect();
        assert_eq!(killed, vec![vec![1, 1]]);
        assert_eq!(k.basis().row(0), &[1, 1]);
    }

    #[test]
    fn image_examples() {
        assert_eq!(Mat::identity(f2(), 2).image_basis().dim(), 2);
        assert_eq!(Mat::zeros(f2(), 2, 2).image_basis().dim(), 0);
        let im = m(&[vec![1], vec![1]]).image_basis();
        assert_eq!(im.dim(), 1);
        assert_eq!(im.basis().row(0), &[1, 1]);
    }

    #[test]
    fn solve_examples() {
        let b = m(&[vec![1, 0], vec![1, 1]]);
        assert_eq!(Mat::identity(f2(), 2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Mat::zeros(f2(), 2, 2).solve(&b).unwrap(), None);
        let x = m(&[vec![1, 1]]).solve(&m(&[vec![1]])).unwrap().unwrap();
        assert_eq!(x, m(&[vec![1], vec![0]]));
        assert!(Mat::identity(f2(), 2).solve(&Mat::zeros(f2(), 3, 1)).is_err());
    }

    #[test]
    fn pullback_examples() {
        let id1 = Mat::identity(f2(), 1);
        let diag = pullback_linear(&id1, &id1).unwrap();
        assert_eq!(diag.dim(), 1);
        assert_eq!(diag.basis().row(0), &[1, 1]);
        let zero = Mat::zeros(f2(), 1, 1);
        let pb = pullback_linear(&zero, &id1).unwrap();
        assert_eq!(pb.dim(), 1);
        assert_eq!(pb.basis().row(0), &[1, 0]);
        // identity on F2 against the sum map F2^2 → F2: enumerate all 8 pairs
        let sum = m(&[vec![1, 1]]);
        let count = all_vectors(f2(), 3).filter(|v| v[0] == (v[1] + v[2]) % 2).count();
        assert_eq!(count, 4);
        assert_eq!(pullback_linear(&id1, &sum).unwrap().dim(), 2);
        assert!(pullback_linear(&id1, &Mat::identity(f2(), 2)).is_err());
    }

    #[test]
    fn quotient_maps_split() {
        let w = Subspace::from_rows(m(&[vec![1, 1, 0]]));
        let (q, s) = w.quotient_maps();
        assert_eq!(q.mul(&s), Mat::identity(f2(), 2));
        assert!(q.mul(&w.basis_cols()).is_zero());
    }

    #[test]
    fn left_inverse_and_intersection() {
        let b = m(&[vec![1, 0], vec![1, 1], vec![0, 1]]);
        let l = b.left_inverse().unwrap();
        assert_eq!(l.mul(&b), Mat::identity(f2(), 2));
        let u = Subspace::from_rows(m(&[vec![1, 0, 0], vec![0, 1, 0]]));
        let v = Subspace::from_rows(m(&[vec![0, 1, 0], vec![0, 0, 1]]));
        assert_eq!(u.intersect(&v), Subspace::from_rows(m(&[vec![0, 1, 0]])));
    }

    fn arb_mat(p: u32, max: usize) -> impl Strategy<Value = Mat> {
        (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..p, r * c)
                .prop_map(move |data| Mat::from_vec(Field::new(p).unwrap(), r, c, data))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(mat in arb_mat(3, 6)) {
            prop_assert_eq!(mat.rank() + mat.kernel_basis().dim(), mat.cols());
            let k = mat.kernel_basis();
            prop_assert!(mat.mul(&k.basis_cols()).is_zero());
        }

        #[test]
        fn rref_idempotent(mat in arb_mat(5, 5)) {
            let (r, p) = mat.rref();
            let (r2, p2) = r.rref();
            prop_assert_eq!(r, r2);
            prop_assert_eq!(p.clone(), p2);
            prop_assert!(p.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn solve_is_sound_and_complete(mat in arb_mat(2, 4), rhs in proptest::collection::vec(0u32..2, 4)) {
            let f = Field::f2();
            let b = Mat::column(f, &rhs[..mat.rows()]);
            match mat.solve(&b).unwrap() {
                Some(x) => prop_assert_eq!(mat.mul(&x), b),
                None => {
                    let any = all_vectors(f, mat.cols()).any(|v| mat.mul(&Mat::column(f, &v)) == b);
                    prop_assert!(!any);
                }
            }
        }

        #[test]
        fn pullback_matches_enumeration(f in arb_mat(2, 3), gcols in 1usize..=3, gdata in proptest::collection::vec(0u32..2, 9)) {
            let fld = Field::f2();
            let g = Mat::from_vec(fld, f.rows(), gcols, gdata[..f.rows() * gcols].to_vec());
            let pb = pullback_linear(&f, &g).unwrap();
            let n = f.cols() + g.cols();
            let count = all_vectors(fld, n)
                .filter(|v| {
                    let u = Mat::column(fld, &v[..f.cols()]);
                    let w = Mat::column(fld, &v[f.cols()..]);
                    f.mul(&u) == g.mul(&w)
                })
                .inspect(|v| assert!(pb.contains_vec(v)))
                .count();
            prop_assert_eq!(count, 1usize << pb.dim());
        }
    }
}
