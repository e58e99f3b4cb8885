//! Sparse vectors and elimination, used where degree matrices get large.

use std::collections::{BTreeMap, HashMap};

use crate::field::PrimeField;
use crate::ring::SparseVec;

/// Sparse vector from `(index, value)` pairs, merging duplicates and dropping zeros.
pub fn collect(field: PrimeField, pairs: impl IntoIterator<Item = (u32, u32)>) -> SparseVec {
    let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
    for (i, v) in pairs {
        let e = acc.entry(i).or_insert(0);
        *e = field.add(*e, v);
    }
    acc.into_iter().filter(|&(_, v)| v != 0).collect()
}

pub fn to_dense(v: &SparseVec, dim: usize) -> Vec<u32> {
    let mut out = vec![0; dim];
    for &(i, x) in v {
        out[i as usize] = x;
    }
    out
}

pub fn from_dense(v: &[u32]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i as u32, x))
        .collect()
}

fn axpy(field: PrimeField, acc: &mut BTreeMap<u32, u32>, c: u32, v: &[(u32, u32)]) {
    for &(i, x) in v {
        let e = acc.entry(i).or_insert(0);
        *e = field.mul_add(*e, c, x);
        if *e == 0 {
            acc.remove(&i);
        }
    }
}

/// Row echelon form keyed by leading index; each stored row has leading
/// coefficient 1.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    field: PrimeField,
    pivots: HashMap<u32, usize>,
    rows: Vec<SparseVec>,
}

impl SparseEchelon {
    pub fn new(field: PrimeField) -> Self {
        Self {
            field,
            pivots: HashMap::new(),
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Remove every pivot coordinate from `v`.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let f = self.field;
        let mut acc: BTreeMap<u32, u32> = v.iter().copied().collect();
        let mut out = Vec::new();
        while let Some((i, x)) = acc.pop_first() {
            match self.pivots.get(&i) {
                Some(&r) => {
                    let row = &self.rows[r];
                    axpy(f, &mut acc, f.neg(x), &row[1..]);
                }
                None => out.push((i, x)),
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Insert `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        if self.pivots.is_empty() {
            return self.push(v.clone());
        }
        let r = self.reduce(v);
        self.push(r)
    }

    fn push(&mut self, v: SparseVec) -> bool {
        let Some(&(lead, c)) = v.first() else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(c);
        let row: SparseVec = v.into_iter().map(|(i, x)| (i, f.mul(x, inv))).collect();
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }
}

/// Kernel of the matrix with the given sparse columns, by column
/// elimination: column `j` carries the tag `e_j` and every column that
/// reduces to zero yields its tag as a kernel vector.
pub fn kernel(field: PrimeField, columns: &[SparseVec]) -> Vec<SparseVec> {
    let f = field;
    let mut pivots: HashMap<u32, usize> = HashMap::new();
    let mut stored: Vec<(SparseVec, SparseVec)> = Vec::new();
    let mut out = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut acc: BTreeMap<u32, u32> = col.iter().copied().collect();
        let mut tag: BTreeMap<u32, u32> = BTreeMap::new();
        tag.insert(j as u32, 1);
        loop {
            let Some((&lead, &x)) = acc.first_key_value() else {
                out.push(tag.into_iter().collect());
                break;
            };
            match pivots.get(&lead) {
                Some(&p) => {
                    let (pc, pt) = &stored[p];
                    let c = f.neg(x);
                    axpy(f, &mut acc, c, pc);
                    axpy(f, &mut tag, c, pt);
                }
                None => {
                    let inv = f.inv(x);
                    let pc: SparseVec = acc.into_iter().map(|(i, v)| (i, f.mul(v, inv))).collect();
                    let pt: SparseVec = tag.into_iter().map(|(i, v)| (i, f.mul(v, inv))).collect();
                    pivots.insert(lead, stored.len());
                    stored.push((pc, pt));
                    break;
                }
            }
        }
    }
    out
}

/// Rank of the matrix with the given sparse columns.
pub fn rank(field: PrimeField, columns: &[SparseVec]) -> usize {
    let mut e = SparseEchelon::new(field);
    columns.iter().filter(|c| e.insert(c)).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn kernel_matches_dense() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_rows(f, &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]]);
        let cols: Vec<SparseVec> = m.columns().iter().map(|c| from_dense(c)).collect();
        let k = kernel(f, &cols);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(&to_dense(v, 4)).unwrap().iter().all(|&x| x == 0));
        }
        assert_eq!(rank(f, &cols), m.rank());
    }

    #[test]
    fn echelon_membership() {
        let f = PrimeField::new(3).unwrap();
        let mut e = SparseEchelon::new(f);
        assert!(e.insert(&vec![(0, 1), (2, 1)]));
        assert!(e.insert(&vec![(1, 2), (2, 1)]));
        assert!(!e.insert(&vec![(0, 1), (1, 2), (2, 2)]));
        assert!(e.contains(&vec![(0, 2), (2, 2)]));
        assert!(!e.contains(&vec![(2, 1)]));
        assert_eq!(e.dim(), 2);
    }
}
