//! `Tor_i(M, N)` as graded vector spaces, read off `F(M) ⊗ N`, and the
//! module structure of a single `Tor_i`.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::free::{FreeModule, Layout, RingRef};
use crate::linalg::{EchelonSpace, Matrix};
use crate::module::GradedModule;
use crate::periodicity::detect_resolution_periodicity;
use crate::resolution::{kernel_generators, minimal_free_resolution, FreeResolution};
use crate::ring::{RingElem, SparseVec};
use crate::sparse;

/// Why the vanishing of `Tor_i` beyond the window is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorRigor {
    /// `pd M` is finite, so `Tor_i = 0` for `i > pd`
    FinitePd(usize),
    /// a resolution period `p` from `start` with `p` consecutive zeros
    /// beginning at `vanishing_from`
    Periodic {
        start: usize,
        period: usize,
        vanishing_from: usize,
    },
    Unproven(String),
}

#[derive(Clone, Debug)]
pub struct TorProfile {
    pub window: usize,
    /// nonzero `(internal degree, dim)` per homological degree `0..=window`
    pub graded: Vec<Vec<(i64, usize)>>,
    pub totals: Vec<usize>,
    /// some internal degree of `Tor_i` lay beyond the computable range
    pub truncated: Vec<bool>,
    /// largest `i <= window` with `Tor_i != 0`
    pub last_nonzero: Option<usize>,
    pub rigor: TorRigor,
}

impl TorProfile {
    /// `sup{i : Tor_i != 0}`, when it is certified.
    pub fn q(&self) -> Option<usize> {
        match self.rigor {
            TorRigor::Unproven(_) => None,
            _ => self.last_nonzero,
        }
    }

    /// Some vanishing `Tor_i` above `q` was only seen through the degree bound.
    pub fn vanishing_seen_below_bound(&self) -> bool {
        let from = self.last_nonzero.map_or(0, |q| q + 1);
        self.truncated[from.min(self.truncated.len())..].iter().any(|&t| t)
    }

    pub fn is_rigorous(&self) -> bool {
        !matches!(self.rigor, TorRigor::Unproven(_))
    }
}

/// `F ⊗ N` for a resolution `F`, degreewise.
pub(crate) struct TensorWithModule<'a> {
    pub res: &'a FreeResolution,
    pub n: &'a GradedModule,
    actions: RefCell<HashMap<(RingElem, i64), Matrix>>,
}

impl<'a> TensorWithModule<'a> {
    pub fn new(res: &'a FreeResolution, n: &'a GradedModule) -> Self {
        Self {
            res,
            n,
            actions: RefCell::new(HashMap::new()),
        }
    }

    fn ndim(&self, e: i64) -> usize {
        if e < self.n.low_degree() {
            0
        } else {
            self.n.try_dim(e).unwrap_or(0)
        }
    }

    fn action(&self, r: &RingElem, e: i64) -> Matrix {
        let key = (r.clone(), e);
        if let Some(m) = self.actions.borrow().get(&key) {
            return m.clone();
        }
        let m = self.n.action_matrix(r, e);
        self.actions.borrow_mut().insert(key, m.clone());
        m
    }

    fn module(&self, i: usize) -> FreeModule {
        self.res.free(i)
    }

    /// Offsets of the blocks `N_{d - g}` of `(F_i ⊗ N)_d` and the total dimension.
    pub fn blocks(&self, i: usize, d: i64) -> (Vec<(usize, usize)>, usize) {
        let mut off = 0;
        let b = self
            .module(i)
            .degrees
            .iter()
            .map(|&g| {
                let len = self.ndim(d - g as i64);
                let out = (off, len);
                off += len;
                out
            })
            .collect();
        (b, off)
    }

    /// Every block of `F_{i-1}, F_i, F_{i+1}` in degree `d` is inside the known range of `N`.
    pub fn exact(&self, i: usize, d: i64) -> bool {
        let known = self.n.known_through();
        let lo = i.saturating_sub(1);
        (lo..=i + 1).all(|j| self.module(j).degrees.iter().all(|&g| d - g as i64 <= known))
    }

    /// `∂_i ⊗ 1` on `(F_i ⊗ N)_d`.
    pub fn differential(&self, i: usize, d: i64) -> Matrix {
        let f = self.n.ring().field();
        let (src, sdim) = self.blocks(i, d);
        if i == 0 {
            return Matrix::zeros(f, 0, sdim);
        }
        let (dst, ddim) = self.blocks(i - 1, d);
        let mut m = Matrix::zeros(f, ddim, sdim);
        let di = self.res.differential(i);
        let gens = &di.source.degrees;
        for (p, col) in di.columns.iter().enumerate() {
            let (co, clen) = src[p];
            if clen == 0 {
                continue;
            }
            for (r, a) in &col.entries {
                let (ro, rlen) = dst[*r];
                if rlen == 0 {
                    continue;
                }
                let act = self.action(a, d - gens[p] as i64);
                for x in 0..rlen {
                    for y in 0..clen {
                        let v = act.get(x, y);
                        if v != 0 {
                            m.add_to(ro + x, co + y, v);
                        }
                    }
                }
            }
        }
        m
    }

    /// `1 ⊗ r` from degree `d` to degree `d + deg r`.
    pub fn multiply(&self, i: usize, r: &RingElem, d: i64) -> Matrix {
        let f = self.n.ring().field();
        let e = d + r.deg as i64;
        let (src, sdim) = self.blocks(i, d);
        let (dst, ddim) = self.blocks(i, e);
        let mut m = Matrix::zeros(f, ddim, sdim);
        let gens = self.module(i).degrees;
        for (p, &g) in gens.iter().enumerate() {
            let ((so, sl), (to, tl)) = (src[p], dst[p]);
            if sl == 0 || tl == 0 {
                continue;
            }
            let act = self.action(r, d - g as i64);
            for x in 0..tl {
                for y in 0..sl {
                    m.set(to + x, so + y, act.get(x, y));
                }
            }
        }
        m
    }

    /// Internal degrees where `(F_i ⊗ N)_d` can be nonzero.
    pub fn degree_range(&self, i: usize) -> Option<(i64, i64)> {
        let m = self.module(i);
        let lo = m.min_degree()? as i64 + self.n.low_degree();
        let hi = m.max_degree()? as i64 + self.n.vanishes_above().unwrap_or(self.n.top());
        Some((lo, hi))
    }

    pub fn homology_dim(&self, i: usize, d: i64) -> usize {
        let (_, dim) = self.blocks(i, d);
        if dim == 0 {
            return 0;
        }
        dim - self.differential(i, d).rank() - self.differential(i + 1, d).rank()
    }
}

/// Graded dimensions of `Tor_i(M, N)` for `i <= window`, with the reason
/// higher `Tor` vanish when one is available.
pub fn tor(m: &GradedModule, n: &GradedModule, window: usize, seed: u64) -> Result<TorProfile> {
    if m.ring().describe() != n.ring().describe() {
        return Err(Error::Invariant("modules over different rings".into()));
    }
    let res = minimal_free_resolution(m, window + 1)?;
    let tw = TensorWithModule::new(&res, n);
    let mut graded = Vec::new();
    let mut truncated = Vec::new();
    for i in 0..=window {
        let mut row = Vec::new();
        let mut cut = false;
        if let Some((lo, hi)) = tw.degree_range(i) {
            for d in lo..=hi {
                if !tw.exact(i, d) {
                    cut = true;
                    break;
                }
                let h = tw.homology_dim(i, d);
                if h > 0 {
                    row.push((d, h));
                }
            }
        }
        graded.push(row);
        truncated.push(cut);
    }
    let totals: Vec<usize> = graded.iter().map(|r| r.iter().map(|x| x.1).sum()).collect();
    let last_nonzero = totals.iter().rposition(|&t| t > 0);
    let rigor = classify(&res, &totals, last_nonzero, window, seed);
    Ok(TorProfile {
        window,
        graded,
        totals,
        truncated,
        last_nonzero,
        rigor,
    })
}

fn classify(
    res: &FreeResolution,
    totals: &[usize],
    last: Option<usize>,
    window: usize,
    seed: u64,
) -> TorRigor {
    let after = last.map_or(0, |q| q + 1);
    if let Some(pd) = res.pd {
        if pd > window {
            return TorRigor::Unproven(format!("pd {pd} exceeds window {window}"));
        }
        return TorRigor::FinitePd(pd);
    }
    let report = detect_resolution_periodicity(res, seed);
    let Some(cert) = report.certificate else {
        return TorRigor::Unproven("no finite pd and no resolution period in the window".into());
    };
    let (start, period) = (cert.start, cert.period);
    let from = after.max(start + 1);
    if from + period > window + 1 {
        return TorRigor::Unproven(format!(
            "period {period} from {start} needs zeros through {} beyond window {window}",
            from + period - 1
        ));
    }
    if (from..=window).any(|i| totals[i] > 0) {
        return TorRigor::Unproven("tail zeros not established".into());
    }
    TorRigor::Periodic {
        start,
        period,
        vanishing_from: from,
    }
}

/// One homology degree of a complex `C` given by its degreewise pieces.
struct Homology {
    lo: i64,
    /// per degree: representatives of a basis of `H_d` and the solver `[B | reps]`
    levels: Vec<(Vec<Vec<u32>>, Matrix)>,
}

impl Homology {
    fn dim(&self, d: i64) -> usize {
        if d < self.lo {
            return 0;
        }
        self.levels.get((d - self.lo) as usize).map_or(0, |l| l.0.len())
    }

    /// Coordinates of a cycle in the chosen basis of `H_d`.
    fn coords(&self, d: i64, z: &[u32]) -> Vec<u32> {
        let (reps, solver) = &self.levels[(d - self.lo) as usize];
        let x = solver
            .solve(z)
            .expect("dimension")
            .expect("cycle lies in Z_d");
        x[x.len() - reps.len()..].to_vec()
    }
}

/// `Tor_i(M, N)` as a graded module: generators chosen degree by degree
/// modulo the image of lower degrees, relations found as kernel generators.
pub fn tor_as_module(m: &GradedModule, n: &GradedModule, i: usize) -> Result<GradedModule> {
    let ring: RingRef = m.ring().clone();
    let f = ring.field();
    let res = minimal_free_resolution(m, i + 1)?;
    let tw = TensorWithModule::new(&res, n);
    let Some((lo, hi_nominal)) = tw.degree_range(i) else {
        return Ok(GradedModule::free(ring, Vec::new()));
    };
    let mut hi = lo - 1;
    let mut complete = true;
    let cap = lo + ring.degree_bound() as i64;
    for d in lo..=hi_nominal {
        if !tw.exact(i, d + 1) || d > cap {
            complete = false;
            break;
        }
        hi = d;
    }
    let mut levels = Vec::new();
    for d in lo..=hi {
        let (_, dim) = tw.blocks(i, d);
        let z = tw.differential(i, d).kernel_basis();
        let b = tw.differential(i + 1, d);
        let mut span = EchelonSpace::new(f, dim);
        let bcols = b.columns();
        for c in &bcols {
            span.insert(c);
        }
        let reps: Vec<Vec<u32>> = z.columns().into_iter().filter(|c| span.insert(c)).collect();
        let mut all = bcols;
        all.extend(reps.iter().cloned());
        levels.push((reps, Matrix::from_columns(f, dim, &all)));
    }
    let h = Homology { lo, levels };
    let vars: Vec<RingElem> = (0..ring.nvars()).map(|v| ring.variable(v)).collect::<Result<_>>()?;
    // x_v : H_d -> H_{d+1}, as images of the basis
    let act = |d: i64, v: usize, x: &[u32]| -> Vec<u32> {
        let target = h.dim(d + 1);
        if target == 0 {
            return Vec::new();
        }
        let (reps, _) = &h.levels[(d - lo) as usize];
        let mut z = vec![0; tw.blocks(i, d).1];
        for (k, &c) in x.iter().enumerate() {
            if c != 0 {
                sparse_axpy(f, &mut z, c, &reps[k]);
            }
        }
        let w = tw.multiply(i, &vars[v], d).mul_vec(&z).expect("dimension");
        h.coords(d + 1, &w)
    };

    let mut gens: Vec<(i64, Vec<u32>)> = Vec::new();
    for d in lo..=hi {
        let dim = h.dim(d);
        if dim == 0 {
            continue;
        }
        let mut span = EchelonSpace::new(f, dim);
        if d > lo {
            for k in 0..h.dim(d - 1) {
                let mut e = vec![0; h.dim(d - 1)];
                e[k] = 1;
                for v in 0..vars.len() {
                    span.insert(&act(d - 1, v, &e));
                }
            }
        }
        for k in 0..dim {
            let mut e = vec![0; dim];
            e[k] = 1;
            if span.insert(&e) {
                gens.push((d, e));
            }
        }
    }
    if !complete && gens.iter().any(|g| g.0 >= hi) {
        return Err(Error::Unreliable(format!(
            "Tor_{i} has a generator at the edge of the computable range (degree {hi})"
        )));
    }
    let free = FreeModule::new(gens.iter().map(|g| g.0 as i32).collect());

    // image of a monomial times a generator, cached by exponent vector
    let images: RefCell<Vec<HashMap<Vec<u32>, Vec<u32>>>> =
        RefCell::new(gens.iter().map(|(_, v)| HashMap::from([(vec![0; vars.len()], v.clone())])).collect());
    fn image(
        images: &RefCell<Vec<HashMap<Vec<u32>, Vec<u32>>>>,
        j: usize,
        g: i64,
        exps: &[u32],
        act: &dyn Fn(i64, usize, &[u32]) -> Vec<u32>,
    ) -> Vec<u32> {
        if let Some(v) = images.borrow()[j].get(exps) {
            return v.clone();
        }
        let v = exps.iter().position(|&e| e > 0).expect("nonconstant");
        let mut smaller = exps.to_vec();
        smaller[v] -= 1;
        let deg: u32 = smaller.iter().sum();
        let below = image(images, j, g, &smaller, act);
        let out = if below.is_empty() {
            Vec::new()
        } else {
            act(g + deg as i64, v, &below)
        };
        images.borrow_mut()[j].insert(exps.to_vec(), out.clone());
        out
    }
    let columns_at = |d: i64, layout: &Layout| -> Vec<SparseVec> {
        let mut cols = Vec::with_capacity(layout.dim);
        for (j, b) in layout.blocks.iter().enumerate() {
            let Some((_, rdeg, _)) = b else { continue };
            for mono in ring.basis_monomials(*rdeg) {
                let v = if h.dim(d) == 0 {
                    Vec::new()
                } else {
                    image(&images, j, gens[j].0, mono.exponents(), &act)
                };
                cols.push(sparse::from_dense(&v));
            }
        }
        cols
    };
    let last = if complete { hi + 1 } else { hi };
    let rels = kernel_generators(&ring, &free, columns_at, last, None)?;
    if !complete && rels.iter().any(|r| r.deg >= hi) {
        return Err(Error::Unreliable(format!(
            "Tor_{i} has a relation at the edge of the computable range (degree {hi})"
        )));
    }
    GradedModule::new(ring.clone(), free.degrees, rels)
}

fn sparse_axpy(f: crate::field::PrimeField, acc: &mut [u32], c: u32, v: &[u32]) {
    for (a, &x) in acc.iter_mut().zip(v) {
        *a = f.mul_add(*a, c, x);
    }
}

/// Largest `i` with `Tor_i(M, N) != 0`, when it is certified.
pub fn max_nonvanishing_tor(m: &GradedModule, n: &GradedModule, window: usize, seed: u64) -> Result<Option<usize>> {
    Ok(tor(m, n, window, seed)?.q())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::QuotientRing;

    fn ring(p: u32, vars: &[&str], rels: &[&str], d: usize) -> RingRef {
        QuotientRing::parse(p, vars, rels, d).unwrap()
    }

    #[test]
    fn tor_of_residue_field_is_betti() {
        let r = ring(2, &["x", "y"], &["x^2", "y^2"], 6);
        let k = GradedModule::residue_field(r.clone(), 0);
        let t = tor(&k, &k, 4, 0).unwrap();
        assert_eq!(t.totals, vec![1, 2, 3, 4, 5]);
        assert_eq!(t.graded[2], vec![(2, 3)]);
        assert!(!t.is_rigorous());
    }

    #[test]
    fn finite_pd_pins_q() {
        let r = ring(3, &["x", "y"], &["x*y"], 12);
        let m = GradedModule::cyclic_from_strings(r.clone(), &["x+y"]).unwrap();
        let n = GradedModule::cyclic_from_strings(r.clone(), &["x^2"]).unwrap();
        let t = tor(&m, &n, 4, 0).unwrap();
        assert_eq!(t.rigor, TorRigor::FinitePd(1));
        assert_eq!(t.q(), Some(1));
        assert_eq!(t.totals[1], 1);
        let t1 = tor_as_module(&m, &n, 1).unwrap();
        assert_eq!(t1.hilbert(6).iter().map(|x| x.1).sum::<usize>(), 1);
    }

    #[test]
    fn periodic_vanishing() {
        let r = ring(3, &["x", "y"], &["x*y"], 12);
        let m = GradedModule::cyclic_from_strings(r.clone(), &["x"]).unwrap();
        let n = GradedModule::cyclic_from_strings(r.clone(), &["x+y"]).unwrap();
        let t = tor(&m, &n, 6, 0).unwrap();
        assert_eq!(t.q(), Some(0), "{:?} {:?}", t.rigor, t.totals);
        assert!(matches!(t.rigor, TorRigor::Periodic { period: 2, .. }));
        let t0 = tor_as_module(&m, &n, 0).unwrap();
        assert_eq!(t0.hilbert(5), m.tensor(&n).hilbert(5));
    }

    #[test]
    fn tor_module_of_residue_field() {
        let r = ring(2, &["x", "y"], &["x^2", "y^2"], 6);
        let k = GradedModule::residue_field(r.clone(), 0);
        let t2 = tor_as_module(&k, &k, 2).unwrap();
        assert_eq!(t2.generators().rank(), 3);
        assert_eq!(t2.hilbert(4), vec![(2, 3), (3, 0), (4, 0)]);
    }
}
