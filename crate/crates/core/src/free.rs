//! Graded free modules `⊕ R(-g_j)` and homogeneous maps between them.
//!
//! A free module is known in internal degree `d` when every component
//! `R_{d-g_j}` is within the ring's degree bound, i.e. `d <= D + min g_j`.

use std::sync::Arc;

use crate::field::PrimeField;
use crate::linalg::Matrix;
use crate::ring::{QuotientRing, RingElem, SparseVec};
use crate::sparse;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeModule {
    pub degrees: Vec<i32>,
}

/// Where each generator's component sits inside the dense vector for one
/// internal degree.
#[derive(Clone, Debug)]
pub struct Layout {
    pub degree: i64,
    /// per generator: `Some((offset, ring degree, length))` when `R_{d-g}` is nonzero
    pub blocks: Vec<Option<(usize, usize, usize)>>,
    pub dim: usize,
}

impl FreeModule {
    pub fn new(degrees: Vec<i32>) -> Self {
        Self { degrees }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().min()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().max()
    }

    /// Highest internal degree through which this module is exactly known.
    /// Over an artinian ring every degree is known.
    pub fn top(&self, ring: &QuotientRing) -> i64 {
        match self.min_degree() {
            Some(g) if !ring.is_artinian() => ring.degree_bound() as i64 + g as i64,
            _ => i64::MAX,
        }
    }

    /// Highest internal degree carrying anything, for artinian rings.
    pub fn support_top(&self, ring: &QuotientRing) -> Option<i64> {
        let t = ring.top_degree()? as i64;
        Some(self.max_degree().map_or(i64::MIN, |g| g as i64 + t))
    }

    pub fn shifted(&self, s: i32) -> FreeModule {
        FreeModule {
            degrees: self.degrees.iter().map(|g| g - s).collect(),
        }
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        FreeModule { degrees }
    }

    pub fn layout(&self, ring: &QuotientRing, d: i64) -> Layout {
        let bound = ring.degree_bound() as i64;
        let mut off = 0;
        let blocks = self
            .degrees
            .iter()
            .map(|&g| {
                let c = d - g as i64;
                if c < 0 || c > bound {
                    return None;
                }
                let len = ring.dim(c as usize);
                if len == 0 {
                    return None;
                }
                let b = (off, c as usize, len);
                off += len;
                Some(b)
            })
            .collect();
        Layout {
            degree: d,
            blocks,
            dim: off,
        }
    }

    pub fn dim(&self, ring: &QuotientRing, d: i64) -> usize {
        self.layout(ring, d).dim
    }
}

/// A homogeneous element: sparse `(generator, coefficient)` pairs where the
/// coefficient of generator `j` lies in `R_{deg - g_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeElem {
    pub deg: i64,
    pub entries: Vec<(usize, RingElem)>,
}

impl FreeElem {
    pub fn zero(deg: i64) -> Self {
        Self {
            deg,
            entries: Vec::new(),
        }
    }

    pub fn basis(module: &FreeModule, j: usize, ring: &QuotientRing) -> Self {
        Self {
            deg: module.degrees[j] as i64,
            entries: vec![(j, ring.one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|(_, e)| e.is_zero())
    }

    pub fn get(&self, j: usize) -> Option<&RingElem> {
        self.entries.iter().find(|(g, _)| *g == j).map(|(_, e)| e)
    }

    fn normalize(mut self) -> Self {
        self.entries.retain(|(_, e)| !e.is_zero());
        self.entries.sort_by_key(|(g, _)| *g);
        self
    }

    pub fn to_dense(&self, layout: &Layout) -> Vec<u32> {
        debug_assert_eq!(self.deg, layout.degree);
        let mut v = vec![0; layout.dim];
        for (j, e) in &self.entries {
            if let Some((off, _, _)) = layout.blocks[*j] {
                v[off..off + e.coords.len()].copy_from_slice(&e.coords);
            }
        }
        v
    }

    pub fn from_dense(v: &[u32], layout: &Layout) -> Self {
        let mut entries = Vec::new();
        for (j, b) in layout.blocks.iter().enumerate() {
            let Some((off, c, len)) = *b else { continue };
            let coords = v[off..off + len].to_vec();
            if coords.iter().any(|&x| x != 0) {
                entries.push((j, RingElem { deg: c, coords }));
            }
        }
        FreeElem {
            deg: layout.degree,
            entries,
        }
    }

    pub fn from_sparse(v: &SparseVec, layout: &Layout) -> Self {
        let mut dense_blocks: Vec<(usize, RingElem)> = Vec::new();
        let mut k = 0;
        for (j, b) in layout.blocks.iter().enumerate() {
            let Some((off, c, len)) = *b else { continue };
            let start = k;
            while k < v.len() && (v[k].0 as usize) < off + len {
                k += 1;
            }
            if start == k {
                continue;
            }
            let mut coords = vec![0; len];
            for &(pos, x) in &v[start..k] {
                coords[pos as usize - off] = x;
            }
            dense_blocks.push((j, RingElem { deg: c, coords }));
        }
        FreeElem {
            deg: layout.degree,
            entries: dense_blocks,
        }
    }

    pub fn to_sparse(&self, layout: &Layout) -> SparseVec {
        let mut out = Vec::new();
        for (j, e) in &self.entries {
            let Some((off, _, _)) = layout.blocks[*j] else { continue };
            for (i, &x) in e.coords.iter().enumerate() {
                if x != 0 {
                    out.push(((off + i) as u32, x));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn scale(&self, ring: &QuotientRing, c: u32) -> FreeElem {
        FreeElem {
            deg: self.deg,
            entries: self.entries.iter().map(|(j, e)| (*j, ring.scale(e, c))).collect(),
        }
        .normalize()
    }

    /// `r * self`
    pub fn mul(&self, ring: &QuotientRing, r: &RingElem) -> FreeElem {
        FreeElem {
            deg: self.deg + r.deg as i64,
            entries: self
                .entries
                .iter()
                .filter(|(_, e)| e.deg + r.deg <= ring.degree_bound())
                .map(|(j, e)| (*j, ring.mul(r, e)))
                .collect(),
        }
        .normalize()
    }

    pub fn add(&self, ring: &QuotientRing, other: &FreeElem) -> FreeElem {
        assert_eq!(self.deg, other.deg, "adding elements of different degrees");
        let mut entries = self.entries.clone();
        for (j, e) in &other.entries {
            match entries.iter_mut().find(|(g, _)| g == j) {
                Some((_, x)) => *x = ring.add(x, e),
                None => entries.push((*j, e.clone())),
            }
        }
        FreeElem { deg: self.deg, entries }.normalize()
    }

    /// Re-index generators (`map[j]` is the new index of generator `j`).
    pub fn reindex(&self, map: impl Fn(usize) -> usize) -> FreeElem {
        FreeElem {
            deg: self.deg,
            entries: self.entries.iter().map(|(j, e)| (map(*j), e.clone())).collect(),
        }
        .normalize()
    }

    pub fn display(&self, ring: &QuotientRing) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.entries
            .iter()
            .map(|(j, e)| format!("({})*e{}", ring.display_elem(e), j))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Multiply a dense degree-`d` vector by `r`, landing in the layout for
/// degree `d + deg r`.
pub fn mul_dense(ring: &QuotientRing, from: &Layout, to: &Layout, v: &[u32], r: &RingElem) -> Vec<u32> {
    let mut out = vec![0; to.dim];
    for (j, b) in from.blocks.iter().enumerate() {
        let (Some((off, c, len)), Some((toff, tc, tlen))) = (*b, to.blocks[j]) else {
            continue;
        };
        debug_assert_eq!(tc, c + r.deg);
        let coords = &v[off..off + len];
        if coords.iter().all(|&x| x == 0) {
            continue;
        }
        let e = RingElem {
            deg: c,
            coords: coords.to_vec(),
        };
        ring.mul_acc(r, &e, 1, &mut out[toff..toff + tlen]);
    }
    out
}

/// Sparse version of [`mul_dense`].
pub fn mul_sparse(ring: &QuotientRing, from: &Layout, to: &Layout, v: &SparseVec, r: &RingElem) -> SparseVec {
    let f = ring.field();
    let mut out = Vec::new();
    let mut k = 0;
    for (j, b) in from.blocks.iter().enumerate() {
        let Some((off, c, len)) = *b else { continue };
        let start = k;
        while k < v.len() && (v[k].0 as usize) < off + len {
            k += 1;
        }
        if start == k {
            continue;
        }
        let Some((toff, _, _)) = to.blocks[j] else { continue };
        for &(pos, x) in &v[start..k] {
            let i = pos as usize - off;
            for (l, &rc) in r.coords.iter().enumerate() {
                if rc == 0 {
                    continue;
                }
                let c2 = f.mul(x, rc);
                for &(q, y) in ring.mul_basis(c, i, r.deg, l) {
                    out.push(((toff + q as usize) as u32, f.mul(c2, y)));
                }
            }
        }
    }
    sparse::collect(f, out)
}

/// A degree-preserving homomorphism of free modules, stored by the images
/// of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeMap {
    pub source: FreeModule,
    pub target: FreeModule,
    pub columns: Vec<FreeElem>,
    /// internal degree drop: column `j` has degree `g_j - degree`
    pub degree: i32,
}

impl FreeMap {
    /// The internal degree is read off the columns (0 when there are none).
    pub fn new(source: FreeModule, target: FreeModule, columns: Vec<FreeElem>) -> Self {
        let degree = columns
            .iter()
            .zip(&source.degrees)
            .next()
            .map_or(0, |(c, &g)| (g as i64 - c.deg) as i32);
        Self::with_degree(source, target, columns, degree)
    }

    pub fn with_degree(source: FreeModule, target: FreeModule, columns: Vec<FreeElem>, degree: i32) -> Self {
        debug_assert_eq!(source.rank(), columns.len());
        debug_assert!(columns
            .iter()
            .zip(&source.degrees)
            .all(|(c, &g)| c.deg == g as i64 - degree as i64));
        Self {
            source,
            target,
            columns,
            degree,
        }
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> Self {
        Self::zero_with_degree(source, target, 0)
    }

    pub fn zero_with_degree(source: FreeModule, target: FreeModule, degree: i32) -> Self {
        let columns = source
            .degrees
            .iter()
            .map(|&g| FreeElem::zero(g as i64 - degree as i64))
            .collect();
        Self {
            source,
            target,
            columns,
            degree,
        }
    }

    pub fn identity(module: &FreeModule, ring: &QuotientRing) -> Self {
        let columns = (0..module.rank()).map(|j| FreeElem::basis(module, j, ring)).collect();
        Self::new(module.clone(), module.clone(), columns)
    }

    /// The entry `(row, col)`; zero entries are reported as `None`.
    pub fn entry(&self, row: usize, col: usize) -> Option<&RingElem> {
        self.columns[col].get(row)
    }

    /// Highest internal degree where both sides are fully known.
    pub fn top(&self, ring: &QuotientRing) -> i64 {
        self.source.top(ring).min(self.target.top(ring))
    }

    /// The `k`-linear map `source_d -> target_d`.
    pub fn degree_matrix(&self, ring: &QuotientRing, d: i64) -> Matrix {
        let sl = self.source.layout(ring, d);
        let tl = self.target.layout(ring, d - self.degree as i64);
        self.degree_matrix_with(ring, &sl, &tl)
    }

    pub fn degree_matrix_with(&self, ring: &QuotientRing, sl: &Layout, tl: &Layout) -> Matrix {
        let f = ring.field();
        let mut m = Matrix::zeros(f, tl.dim, sl.dim);
        for (j, b) in sl.blocks.iter().enumerate() {
            let Some((off, a, _)) = *b else { continue };
            for i in 0..ring.dim(a) {
                let col = off + i;
                for (r, e) in &self.columns[j].entries {
                    let Some((toff, tc, tlen)) = tl.blocks[*r] else { continue };
                    debug_assert_eq!(tc, a + e.deg);
                    let basis = ring.basis_elem(a, i);
                    let mut acc = vec![0; tlen];
                    ring.mul_acc(&basis, e, 1, &mut acc);
                    for (k, v) in acc.into_iter().enumerate() {
                        if v != 0 {
                            m.add_to(toff + k, col, v);
                        }
                    }
                }
            }
        }
        m
    }

    /// Columns of [`degree_matrix_with`](Self::degree_matrix_with) as sparse vectors.
    pub fn sparse_columns(&self, ring: &QuotientRing, sl: &Layout, tl: &Layout) -> Vec<SparseVec> {
        let f = ring.field();
        let mut cols = Vec::with_capacity(sl.dim);
        for (j, b) in sl.blocks.iter().enumerate() {
            let Some((_, a, len)) = *b else { continue };
            for i in 0..len {
                let mut out = Vec::new();
                for (r, e) in &self.columns[j].entries {
                    let Some((toff, _, _)) = tl.blocks[*r] else { continue };
                    for (l, &ec) in e.coords.iter().enumerate() {
                        if ec == 0 {
                            continue;
                        }
                        for &(q, y) in ring.mul_basis(a, i, e.deg, l) {
                            out.push(((toff + q as usize) as u32, f.mul(ec, y)));
                        }
                    }
                }
                cols.push(sparse::collect(f, out));
            }
        }
        cols
    }

    pub fn apply(&self, ring: &QuotientRing, x: &FreeElem) -> FreeElem {
        let deg = x.deg - self.degree as i64;
        let mut out = FreeElem::zero(deg);
        for (j, c) in &x.entries {
            let img = &self.columns[*j];
            if img.is_zero() {
                continue;
            }
            if c.deg + img.entries.iter().map(|(_, e)| e.deg).max().unwrap_or(0) > ring.degree_bound() {
                continue;
            }
            let mut t = img.mul(ring, c);
            t.deg = deg;
            out = out.add(ring, &t);
        }
        out
    }

    /// `self ∘ inner`
    pub fn compose(&self, ring: &QuotientRing, inner: &FreeMap) -> FreeMap {
        assert_eq!(inner.target, self.source, "composition of incompatible maps");
        let columns = inner.columns.iter().map(|c| self.apply(ring, c)).collect();
        FreeMap::with_degree(inner.source.clone(), self.target.clone(), columns, self.degree + inner.degree)
    }

    pub fn add(&self, ring: &QuotientRing, other: &FreeMap) -> FreeMap {
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.add(ring, b))
            .collect();
        FreeMap::with_degree(self.source.clone(), self.target.clone(), columns, self.degree)
    }

    pub fn scale(&self, ring: &QuotientRing, c: u32) -> FreeMap {
        let columns = self.columns.iter().map(|a| a.scale(ring, c)).collect();
        FreeMap::with_degree(self.source.clone(), self.target.clone(), columns, self.degree)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(FreeElem::is_zero)
    }

    /// Every nonzero entry has positive degree (image inside `m * target`).
    pub fn is_minimal(&self) -> bool {
        self.columns
            .iter()
            .all(|c| c.entries.iter().all(|(_, e)| e.deg > 0 || e.is_zero()))
    }

    /// Scalar matrix of the degree-0 entries, `target.rank() x source.rank()`.
    pub fn constant_part(&self, f: PrimeField) -> Matrix {
        let mut m = Matrix::zeros(f, self.target.rank(), self.source.rank());
        for (j, c) in self.columns.iter().enumerate() {
            for (r, e) in &c.entries {
                if e.deg == 0 {
                    m.set(*r, j, e.constant());
                }
            }
        }
        m
    }

    /// Transport every entry into another ring through `embed`.
    pub fn map_entries(&self, embed: impl Fn(&RingElem) -> RingElem) -> FreeMap {
        let columns = self
            .columns
            .iter()
            .map(|c| {
                FreeElem {
                    deg: c.deg,
                    entries: c.entries.iter().map(|(j, e)| (*j, embed(e))).collect(),
                }
                .normalize()
            })
            .collect();
        FreeMap::with_degree(self.source.clone(), self.target.clone(), columns, self.degree)
    }

    pub fn display(&self, ring: &QuotientRing) -> Vec<Vec<String>> {
        (0..self.target.rank())
            .map(|r| {
                (0..self.source.rank())
                    .map(|c| self.entry(r, c).map_or("0".into(), |e| ring.display_elem(e)))
                    .collect()
            })
            .collect()
    }
}

/// Shared handle used by modules, resolutions and complexes.
pub type RingRef = Arc<QuotientRing>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;

    fn ring() -> RingRef {
        let base = PolyRing::new(2, vec!["x".into(), "y".into()], 4).unwrap();
        QuotientRing::from_strings(base, &["x^2", "y^2"]).unwrap()
    }

    #[test]
    fn layouts_skip_vanishing_components() {
        let r = ring();
        let f = FreeModule::new(vec![0, 1]);
        assert_eq!(f.dim(&r, 0), 1);
        assert_eq!(f.dim(&r, 1), 3);
        assert_eq!(f.dim(&r, 2), 3);
        assert_eq!(f.dim(&r, 3), 1);
        assert_eq!(f.dim(&r, 4), 0);
        assert_eq!(f.top(&r), i64::MAX);
    }

    #[test]
    fn dense_round_trip_and_map() {
        let r = ring();
        let x = r.variable(0).unwrap();
        let y = r.variable(1).unwrap();
        let src = FreeModule::new(vec![1]);
        let tgt = FreeModule::new(vec![0, 0]);
        // e -> x*f0 + y*f1
        let col = FreeElem {
            deg: 1,
            entries: vec![(0, x.clone()), (1, y.clone())],
        };
        let phi = FreeMap::new(src.clone(), tgt.clone(), vec![col.clone()]);
        let l = tgt.layout(&r, 1);
        assert_eq!(FreeElem::from_dense(&col.to_dense(&l), &l), col);
        let m = phi.degree_matrix(&r, 2);
        // source_2 = R_1 (x, y); x -> (0, xy), y -> (xy, 0)
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 2);
        assert_eq!(m.rank(), 2);
        assert!(phi.is_minimal());
        let id = FreeMap::identity(&tgt, &r);
        assert_eq!(id.compose(&r, &phi), phi);

        let sl = src.layout(&r, 2);
        let tl = tgt.layout(&r, 2);
        let sparse_cols = phi.sparse_columns(&r, &sl, &tl);
        for (c, sc) in sparse_cols.iter().enumerate() {
            assert_eq!(sparse::to_dense(sc, tl.dim), m.column(c));
        }
        let v = col.to_dense(&l);
        let dense = mul_dense(&r, &l, &tl, &v, &x);
        assert_eq!(mul_sparse(&r, &l, &tl, &sparse::from_dense(&v), &x), sparse::from_dense(&dense));
    }
}
