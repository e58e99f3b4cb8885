//! Dense linear algebra over `F_p`.
//!
//! Pivot selection is always leftmost-first and free variables are set to
//! zero, so every routine here is deterministic.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Row-major dense matrix over a prime field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from signed integer rows; entries are reduced mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = field.reduce(v);
            }
        }
        m
    }

    /// Build from already-reduced columns, all of length `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v % field.characteristic();
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.characteristic();
    }

    /// Adds `v` to entry `(i, j)`.
    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: u32) {
        let idx = i * self.cols + j;
        self.data[idx] = self.field.add(self.data[idx], v);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, &b) in orow.iter().enumerate() {
                    if b != 0 {
                        out.data[base + j] = f.mul_add(out.data[base + j], a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| if a == 0 || b == 0 { acc } else { f.mul_add(acc, a, b) })
            })
            .collect())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * out.cols + j] = self.get(i, j);
            }
            for j in 0..other.cols {
                out.data[i * out.cols + self.cols + j] = other.get(i, j);
            }
        }
        out
    }

    /// Reduced row echelon form with leftmost pivots.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    m.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m.data[r * cols + c]);
            for j in c..cols {
                let idx = r * cols + j;
                m.data[idx] = f.mul(m.data[idx], inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = m.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for j in c..cols {
                    let pv = m.data[r * cols + j];
                    if pv != 0 {
                        let idx = i * cols + j;
                        m.data[idx] = f.mul_add(m.data[idx], neg, pv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Columns form a basis of `{v : Mv = 0}`, one per non-pivot column.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let rr = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rr.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (kc, &fc) in free.iter().enumerate() {
            k.data[fc * k.cols + kc] = 1;
            for (r, &pc) in rr.pivots.iter().enumerate() {
                let v = rr.matrix.get(r, fc);
                if v != 0 {
                    k.data[pc * k.cols + kc] = f.neg(v);
                }
            }
        }
        k
    }

    /// Some `v` with `Mv = b`, free coordinates zero; `None` when `b` is not
    /// in the column space.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let col = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        let rr = self.hstack(&col).rref();
        if rr.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut v = vec![0; self.cols];
        for (r, &pc) in rr.pivots.iter().enumerate() {
            v[pc] = rr.matrix.get(r, self.cols);
        }
        Ok(Some(v))
    }
}

/// Standard basis vectors of `F_p^ambient_dim` whose classes form a basis of
/// `F_p^ambient_dim / span(columns of sub)`: the non-pivot coordinates of
/// `rref(subᵀ)`.
pub fn coset_complement(sub: &Matrix, ambient_dim: usize) -> Matrix {
    let f = sub.field();
    let coords = complement_coordinates(sub, ambient_dim);
    let mut out = Matrix::zeros(f, ambient_dim, coords.len());
    for (j, &c) in coords.iter().enumerate() {
        out.set(c, j, 1);
    }
    out
}

/// Coordinate indices chosen by [`coset_complement`].
pub fn complement_coordinates(sub: &Matrix, ambient_dim: usize) -> Vec<usize> {
    assert!(sub.cols() == 0 || sub.rows() == ambient_dim);
    if sub.cols() == 0 {
        return (0..ambient_dim).collect();
    }
    let rr = sub.transpose().rref();
    let mut is_pivot = vec![false; ambient_dim];
    for &p in &rr.pivots {
        is_pivot[p] = true;
    }
    (0..ambient_dim).filter(|&c| !is_pivot[c]).collect()
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{} [", self.rows, self.cols, self.field.characteristic())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// A subspace of `F_p^dim` grown one vector at a time.
///
/// Row `k` is zero at the pivots of rows `0..k` and has a unit at its own
/// pivot, so reducing in insertion order is enough for membership tests.
#[derive(Clone, Debug)]
pub struct EchelonSpace {
    field: PrimeField,
    dim: usize,
    rows: Vec<(usize, Vec<u32>)>,
}

impl EchelonSpace {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Self {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Echelon rows in insertion order (not fully reduced).
    pub fn basis_rows(&self) -> impl Iterator<Item = &[u32]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    /// The residual of `v` after reduction against the current basis.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            let c = w[*p];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (j, &rv) in row.iter().enumerate().skip(*p) {
                if rv != 0 {
                    w[j] = f.mul_add(w[j], neg, rv);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns `true` when it was independent of the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let f = self.field;
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[p]);
        for x in w.iter_mut().skip(p) {
            *x = f.mul(*x, inv);
        }
        self.rows.push((p, w));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(f(5), 2);
        let rr = id.rref();
        assert_eq!(rr.matrix, id);
        assert_eq!(rr.pivots, vec![0, 1]);
        assert_eq!(rr.rank(), 2);

        let z = Matrix::zeros(f(5), 3, 4);
        let rr = z.rref();
        assert_eq!(rr.matrix, z);
        assert!(rr.pivots.is_empty());
    }

    #[test]
    fn rref_rank_one_over_f5() {
        let m = Matrix::from_rows(f(5), &[vec![1, 2], vec![2, 4]]);
        let rr = m.rref();
        assert_eq!(rr.matrix, Matrix::from_rows(f(5), &[vec![1, 2], vec![0, 0]]));
        assert_eq!(rr.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(f(3), 3).kernel_basis().cols(), 0);
        let k = Matrix::zeros(f(3), 2, 3).kernel_basis();
        assert_eq!(k, Matrix::identity(f(3), 3));
        let k = Matrix::from_rows(f(2), &[vec![1, 1]]).kernel_basis();
        assert_eq!(k.columns(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(f(7), 3);
        assert_eq!(id.solve(&[1, 2, 3]).unwrap(), Some(vec![1, 2, 3]));
        let z = Matrix::zeros(f(7), 2, 2);
        assert_eq!(z.solve(&[1, 0]).unwrap(), None);
        let two = Matrix::from_rows(f(5), &[vec![2]]);
        assert_eq!(two.solve(&[3]).unwrap(), Some(vec![4]));
        assert!(two.solve(&[1, 2]).is_err());
    }

    #[test]
    fn coset_complement_examples() {
        let full = Matrix::identity(f(2), 2);
        assert_eq!(coset_complement(&full, 2).cols(), 0);
        let zero = Matrix::zeros(f(2), 3, 0);
        assert_eq!(coset_complement(&zero, 3), Matrix::identity(f(2), 3));
        let diag = Matrix::from_columns(f(2), 2, &[vec![1, 1]]);
        assert_eq!(coset_complement(&diag, 2).columns(), vec![vec![0, 1]]);
    }

    #[test]
    fn echelon_space_membership() {
        let mut s = EchelonSpace::new(f(3), 3);
        assert!(s.insert(&[1, 2, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 0, 1])); // (1,2,0) + (0,1,1)
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[2, 1, 0]));
    }
}
