//! Periodicity of complexes: chain maps `F -> Σ^d F` that are isomorphisms
//! in degrees `>= d`, found by solving the commutation equations as a
//! linear system over `k`.

use std::collections::HashMap;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{ChainMap, FreeComplex};
use crate::field::PrimeField;
use crate::free::{FreeElem, FreeMap, FreeModule};
use crate::linalg::Matrix;
use crate::resolution::FreeResolution;
use crate::ring::{RingElem, SparseVec};
use crate::sparse;

/// Enumerate the constant parts of all solutions up to this many candidates.
const EXHAUST_LIMIT: u64 = 1 << 16;
const RANDOM_TRIALS: usize = 24;

/// Why no chain map of a given degree can be an isomorphism on the tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Infeasibility {
    /// `F_j` and `F_{j-d}` have different graded ranks for no single shift
    DegreeMismatch { degree: usize },
    /// every solution has constant part of rank `< needed` in degree `degree`
    RankDeficient { degree: usize, rank: usize, needed: usize },
    /// all `p^dimension` constant parts were tried
    Exhausted { dimension: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Attempt {
    Feasible,
    Infeasible(Infeasibility),
    /// no witness found, no certificate either
    Undetermined { solutions: usize },
}

#[derive(Clone, Debug)]
pub struct PeriodicityCertificate {
    pub period: usize,
    pub internal_shift: i32,
    /// tail start: the map is an isomorphism in degrees `>= start + period`
    pub start: usize,
    pub witness: ChainMap,
    /// outcome for every smaller candidate period
    pub below: Vec<(usize, Attempt)>,
    /// every smaller period carries an infeasibility certificate
    pub minimal_certified: bool,
    pub window: usize,
}

#[derive(Clone, Debug)]
pub struct PeriodicityReport {
    pub certificate: Option<PeriodicityCertificate>,
    pub attempts: Vec<(usize, Attempt)>,
    pub window: usize,
}

impl PeriodicityReport {
    pub fn period(&self) -> Option<usize> {
        self.certificate.as_ref().map(|c| c.period)
    }
}

fn sorted_degrees(m: &FreeModule) -> Vec<i32> {
    let mut d = m.degrees.clone();
    d.sort();
    d
}

/// The internal shift `s` with `F_j ≅ F_{j-d}(-s)` for all checked `j`.
fn matching_shift(c: &FreeComplex, d: usize, last: usize) -> Result<Option<i32>, usize> {
    let mut shift: Option<i32> = None;
    for j in d..=last {
        let hi = sorted_degrees(&c.module(j).unwrap_or_default());
        let lo = sorted_degrees(&c.module(j - d).unwrap_or_default());
        if hi.len() != lo.len() {
            return Err(j);
        }
        if hi.is_empty() {
            continue;
        }
        let s = hi[0] - lo[0];
        if hi.iter().zip(&lo).any(|(a, b)| a - b != s) || shift.is_some_and(|t| t != s) {
            return Err(j);
        }
        shift = Some(s);
    }
    Ok(shift)
}

/// One unknown block: entry `(row, col)` of `η_j`, a ring element of degree `deg`.
struct Block {
    j: usize,
    row: usize,
    col: usize,
    deg: usize,
    offset: usize,
}

struct System {
    blocks: Vec<Block>,
    index: HashMap<(usize, usize, usize), usize>,
    nunknowns: usize,
}

fn unknowns(c: &FreeComplex, d: usize, s: i32) -> System {
    let ring = &c.ring;
    let mut blocks = Vec::new();
    let mut index = HashMap::new();
    let mut off = 0;
    for j in d..=c.len() {
        let src = &c.modules[j];
        let tgt = &c.modules[j - d];
        for (col, &g) in src.degrees.iter().enumerate() {
            for (row, &h) in tgt.degrees.iter().enumerate() {
                let e = g as i64 - s as i64 - h as i64;
                if e < 0 || e as usize > ring.degree_bound() {
                    continue;
                }
                let dim = ring.dim(e as usize);
                if dim == 0 {
                    continue;
                }
                index.insert((j, row, col), blocks.len());
                blocks.push(Block {
                    j,
                    row,
                    col,
                    deg: e as usize,
                    offset: off,
                });
                off += dim;
            }
        }
    }
    System {
        blocks,
        index,
        nunknowns: off,
    }
}

/// Columns (one per unknown) of the homogeneous system
/// `(-1)^d ∂_{j-d} η_j - η_{j-1} ∂_j = 0` for `j = d+1 ..= len`.
fn equations(c: &FreeComplex, d: usize, sys: &System) -> Vec<SparseVec> {
    let ring = &c.ring;
    let f = ring.field();
    let sgn = if d % 2 == 1 { f.neg(1) } else { 1 };
    let len = c.len();
    let mut eq_index: HashMap<(usize, usize, usize, u32), u32> = HashMap::new();
    let mut cols: Vec<Vec<(u32, u32)>> = vec![Vec::new(); sys.nunknowns];
    let mut eq = |key: (usize, usize, usize, u32)| -> u32 {
        let n = eq_index.len() as u32;
        *eq_index.entry(key).or_insert(n)
    };
    for b in &sys.blocks {
        let dim = ring.dim(b.deg);
        for k in 0..dim {
            let u = b.offset + k;
            // (-1)^d ∂_{j-d}[t, row] η_j[row, col], equation (j, col, t)
            if b.j > d && b.j <= len {
                if let Some(dd) = c.differential(b.j - d) {
                    for (t, a) in &dd.columns[b.row].entries {
                        for (l, &ac) in a.coords.iter().enumerate() {
                            if ac == 0 {
                                continue;
                            }
                            for &(q, y) in ring.mul_basis(a.deg, l, b.deg, k) {
                                let key = (b.j, b.col, *t, q);
                                cols[u].push((eq(key), f.mul(sgn, f.mul(ac, y))));
                            }
                        }
                    }
                }
            }
            // -η_j[row, col] ∂_{j+1}[col, c'], equation (j+1, c', row)
            if b.j < len {
                let dn = c.differential(b.j + 1).expect("inside the window");
                for (cp, column) in dn.columns.iter().enumerate() {
                    let Some(a) = column.get(b.col) else { continue };
                    for (l, &ac) in a.coords.iter().enumerate() {
                        if ac == 0 {
                            continue;
                        }
                        for &(q, y) in ring.mul_basis(a.deg, l, b.deg, k) {
                            let key = (b.j + 1, cp, b.row, q);
                            cols[u].push((eq(key), f.neg(f.mul(ac, y))));
                        }
                    }
                }
            }
        }
    }
    cols.into_iter().map(|c| sparse::collect(f, c)).collect()
}

/// Constant-part matrix of `η_j` for a solution vector.
fn constant_part(c: &FreeComplex, d: usize, sys: &System, j: usize, v: &[u32]) -> Matrix {
    let f = c.ring.field();
    let rows = c.rank(j - d);
    let cols = c.rank(j);
    let mut m = Matrix::zeros(f, rows, cols);
    for r in 0..rows {
        for col in 0..cols {
            if let Some(&bi) = sys.index.get(&(j, r, col)) {
                let b = &sys.blocks[bi];
                if b.deg == 0 {
                    m.set(r, col, v[b.offset]);
                }
            }
        }
    }
    m
}

fn all_invertible(c: &FreeComplex, d: usize, sys: &System, v: &[u32]) -> bool {
    (d..=c.len()).all(|j| {
        let m = constant_part(c, d, sys, j, v);
        m.rows() == m.cols() && m.rank() == m.rows()
    })
}

fn combine(field: PrimeField, basis: &[Vec<u32>], coeffs: &[u32], n: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    for (b, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (x, &y) in v.iter_mut().zip(b) {
            *x = field.mul_add(*x, c, y);
        }
    }
    v
}

fn to_chain_map(c: &FreeComplex, d: usize, s: i32, sys: &System, v: &[u32]) -> ChainMap {
    let ring = &c.ring;
    let mut components = Vec::new();
    for j in d..=c.len() {
        let src = &c.modules[j];
        let columns = (0..src.rank())
            .map(|col| {
                let mut e = FreeElem::zero(src.degrees[col] as i64 - s as i64);
                for row in 0..c.rank(j - d) {
                    if let Some(&bi) = sys.index.get(&(j, row, col)) {
                        let b = &sys.blocks[bi];
                        let coords = v[b.offset..b.offset + ring.dim(b.deg)].to_vec();
                        if coords.iter().any(|&x| x != 0) {
                            e.entries.push((row, RingElem { deg: b.deg, coords }));
                        }
                    }
                }
                e
            })
            .collect();
        components.push(FreeMap::with_degree(src.clone(), c.modules[j - d].clone(), columns, s));
    }
    ChainMap { shift: d, components }
}

/// Try to find `η: F -> Σ^d F`, iso in degrees `>= d`, over the window.
pub fn attempt_period(c: &FreeComplex, d: usize, seed: u64) -> (Attempt, Option<ChainMap>) {
    let f = c.ring.field();
    let last = if c.bounded { c.len() + d } else { c.len() };
    let s = match matching_shift(c, d, last) {
        Err(j) => return (Attempt::Infeasible(Infeasibility::DegreeMismatch { degree: j }), None),
        Ok(s) => s.unwrap_or(0),
    };
    if d > c.len() {
        // nothing left to map: the zero map is an isomorphism of zero modules
        let witness = ChainMap::zero(c, c, d, s);
        return (Attempt::Feasible, Some(witness));
    }
    let sys = unknowns(c, d, s);
    let eqs = equations(c, d, &sys);
    let kernel: Vec<Vec<u32>> = sparse::kernel(f, &eqs)
        .iter()
        .map(|v| sparse::to_dense(v, sys.nunknowns))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (d as u64).wrapping_mul(0x9e37_79b9));
    let p = f.characteristic();
    for trial in 0..RANDOM_TRIALS {
        let coeffs: Vec<u32> = if trial == 0 {
            vec![1; kernel.len()]
        } else {
            (0..kernel.len()).map(|_| rng.random_range(0..p)).collect()
        };
        let v = combine(f, &kernel, &coeffs, sys.nunknowns);
        if all_invertible(c, d, &sys, &v) {
            let eta = to_chain_map(c, d, s, &sys, &v);
            if eta.verify(c, c).is_ok() {
                return (Attempt::Feasible, Some(eta));
            }
        }
    }

    // certificate 1: column spaces of the constant parts cannot fill the target
    for j in d..=c.len() {
        let needed = c.rank(j - d);
        if needed == 0 {
            continue;
        }
        let mut span = crate::linalg::EchelonSpace::new(f, needed);
        for b in &kernel {
            let m = constant_part(c, d, &sys, j, b);
            for col in m.columns() {
                span.insert(&col);
            }
        }
        if span.dim() < needed {
            return (
                Attempt::Infeasible(Infeasibility::RankDeficient {
                    degree: j,
                    rank: span.dim(),
                    needed,
                }),
                None,
            );
        }
    }

    // certificate 2: enumerate the image of the solution space in constant parts
    let const_coords: Vec<usize> = sys.blocks.iter().filter(|b| b.deg == 0).map(|b| b.offset).collect();
    let proj_cols: Vec<Vec<u32>> = kernel
        .iter()
        .map(|v| const_coords.iter().map(|&i| v[i]).collect())
        .collect();
    let mut image = crate::linalg::EchelonSpace::new(f, const_coords.len());
    let mut image_basis: Vec<Vec<u32>> = Vec::new();
    for (k, pc) in proj_cols.iter().enumerate() {
        if image.insert(pc) {
            image_basis.push(kernel[k].clone());
        }
    }
    let e = image_basis.len();
    let total = (p as u64).checked_pow(e as u32);
    if let Some(total) = total.filter(|&t| t <= EXHAUST_LIMIT) {
        let mut coeffs = vec![0u32; e];
        for _ in 0..total {
            let v = combine(f, &image_basis, &coeffs, sys.nunknowns);
            if all_invertible(c, d, &sys, &v) {
                // constant parts decide invertibility; lift with the full solution
                let eta = to_chain_map(c, d, s, &sys, &v);
                if eta.verify(c, c).is_ok() {
                    return (Attempt::Feasible, Some(eta));
                }
            }
            for x in coeffs.iter_mut() {
                *x += 1;
                if *x < p {
                    break;
                }
                *x = 0;
            }
        }
        return (Attempt::Infeasible(Infeasibility::Exhausted { dimension: e }), None);
    }
    (Attempt::Undetermined { solutions: kernel.len() }, None)
}

/// Least `d <= max_period` admitting a periodicity map, with the outcome
/// recorded for every smaller `d`.
pub fn detect_complex_periodicity(c: &FreeComplex, max_period: usize, seed: u64) -> PeriodicityReport {
    detect_with_start(c, 0, max_period, seed)
}

fn tail(c: &FreeComplex, start: usize) -> FreeComplex {
    if start == 0 {
        return c.clone();
    }
    FreeComplex {
        ring: c.ring.clone(),
        modules: c.modules[start..].to_vec(),
        differentials: c.differentials[start..].to_vec(),
        bounded: c.bounded,
        labels: c.labels[start..].to_vec(),
    }
}

fn detect_with_start(c: &FreeComplex, start: usize, max_period: usize, seed: u64) -> PeriodicityReport {
    let t = tail(c, start);
    let window = t.len();
    let limit = if t.bounded { max_period } else { max_period.min(window / 2) };
    let mut attempts = Vec::new();
    for d in 1..=limit {
        let (a, w) = attempt_period(&t, d, seed);
        if let Some(witness) = w {
            let minimal_certified = attempts.iter().all(|(_, a)| matches!(a, Attempt::Infeasible(_)));
            let cert = PeriodicityCertificate {
                period: d,
                internal_shift: witness.degree(),
                start,
                witness,
                below: attempts.clone(),
                minimal_certified,
                window,
            };
            attempts.push((d, a));
            return PeriodicityReport {
                certificate: Some(cert),
                attempts,
                window,
            };
        }
        attempts.push((d, a));
    }
    PeriodicityReport {
        certificate: None,
        attempts,
        window,
    }
}

/// Periodicity of a minimal resolution, allowing the periodic tail to
/// start at homological degree 0, 1 or 2. Terminating resolutions have no
/// period.
pub fn detect_resolution_periodicity(res: &FreeResolution, seed: u64) -> PeriodicityReport {
    let c = FreeComplex::from_resolution(res);
    if res.pd.is_some() {
        return PeriodicityReport {
            certificate: None,
            attempts: Vec::new(),
            window: c.len(),
        };
    }
    let mut best: Option<PeriodicityReport> = None;
    for start in 0..=2usize.min(c.len() / 3) {
        let rep = detect_with_start(&c, start, (c.len() - start) / 2, seed);
        let better = match (&best, rep.period()) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(b), Some(p)) => b.period().is_none_or(|q| p < q),
        };
        if better || best.is_none() {
            best = Some(rep);
        }
        if best.as_ref().and_then(|b| b.period()) == Some(1) {
            break;
        }
    }
    best.expect("at least one start")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::GradedModule;
    use crate::resolution::minimal_free_resolution;
    use crate::ring::{PolyRing, QuotientRing};

    fn ring(p: u32, vars: &[&str], rels: &[&str], d: usize) -> crate::free::RingRef {
        let base = PolyRing::new(p, vars.iter().map(|s| s.to_string()).collect(), d).unwrap();
        QuotientRing::from_strings(base, rels).unwrap()
    }

    #[test]
    fn period_one_for_dual_numbers() {
        let r = ring(2, &["x"], &["x^2"], 4);
        let k = GradedModule::residue_field(r, 0);
        let res = minimal_free_resolution(&k, 6).unwrap();
        let rep = detect_resolution_periodicity(&res, 1);
        let cert = rep.certificate.unwrap();
        assert_eq!((cert.period, cert.internal_shift), (1, 1));
        assert!(cert.minimal_certified);
    }

    #[test]
    fn period_two_for_hypersurface() {
        let r = ring(3, &["x", "y"], &["xy"], 4);
        let m = GradedModule::cyclic_from_strings(r, &["x"]).unwrap();
        let res = minimal_free_resolution(&m, 8).unwrap();
        let c = FreeComplex::from_resolution(&res);
        let rep = detect_complex_periodicity(&c, 4, 1);
        let cert = rep.certificate.unwrap();
        assert_eq!(cert.period, 2);
        assert!(matches!(cert.below[0].1, Attempt::Infeasible(_)));
        assert!(cert.minimal_certified);
    }

    #[test]
    fn growing_betti_numbers_have_no_period() {
        let r = ring(2, &["x", "y"], &["x^2", "y^2"], 3);
        let k = GradedModule::residue_field(r, 0);
        let res = minimal_free_resolution(&k, 6).unwrap();
        let rep = detect_resolution_periodicity(&res, 1);
        assert!(rep.certificate.is_none());
        assert!(rep
            .attempts
            .iter()
            .all(|(_, a)| matches!(a, Attempt::Infeasible(Infeasibility::DegreeMismatch { .. }))));
    }

    #[test]
    fn bounded_acyclic_complex_has_no_period() {
        let r = ring(3, &["x", "y"], &["xy"], 4);
        let free = GradedModule::free(r.clone(), vec![0]);
        let res = minimal_free_resolution(&free, 3).unwrap();
        assert!(detect_resolution_periodicity(&res, 1).certificate.is_none());
        // 0 -> R(-1) --x--> R -> 0 over k[x]: bounded, one module nonzero in two degrees
        let s = ring(3, &["x"], &[], 4);
        let m = GradedModule::cyclic_from_strings(s, &["x"]).unwrap();
        let c = FreeComplex::from_resolution(&minimal_free_resolution(&m, 3).unwrap());
        assert!(c.bounded);
        assert!(detect_complex_periodicity(&c, 3, 1).certificate.is_none());
    }
}
