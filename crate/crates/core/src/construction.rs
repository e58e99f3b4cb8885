//! Tensor products of periodic complexes, their iterated cones and the
//! truncations `E^(i)`, with every sequence and period checked.
//!
//! For factors `F^(1), ..., F^(c)` with periodicity maps `η^(i)` of degree
//! `n_i`, `E^(i) = F^(1)_{<n_1} ⊗ ... ⊗ F^(i)_{<n_i} ⊗ F^(i+1) ⊗ ... ⊗ F^(c)`
//! and `0 -> E^(i) -> E^(i-1) -> Σ^{n_i} E^(i-1) -> 0` is exact, the last map
//! being induced by `η^(i)` on factor `i`.

use crate::complex::{cone, cone_induced, induced_map, tensor_into, tensor_ring, ChainMap, FreeComplex};
use crate::complexity::{estimate_complexity, Complexity, ComplexityEstimate};
use crate::error::{Error, Result};
use crate::free::{FreeElem, FreeMap, FreeModule, RingRef};
use crate::module::GradedModule;
use crate::periodicity::{detect_complex_periodicity, Attempt, PeriodicityCertificate, PeriodicityReport};
use crate::reduction::{reduction_search, ReductionSequence, ReductionStrategy};
use crate::resolution::minimal_free_resolution;

/// A factor complex, optionally with its own periodicity map.
#[derive(Clone, Debug)]
pub struct Factor {
    pub complex: FreeComplex,
    pub eta: Option<ChainMap>,
}

#[derive(Clone, Debug)]
pub struct CertifiedFactor {
    pub complex: FreeComplex,
    pub eta: ChainMap,
    pub period: usize,
    pub certificate: PeriodicityCertificate,
    /// index of the factor's first variable in the tensor ring
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesReport {
    pub index: usize,
    pub shift: usize,
    /// `(homological, internal)` degrees checked
    pub checked: usize,
    pub failures: Vec<(usize, i64)>,
    /// `rank E^(i-1)_j = rank E^(i)_j + rank E^(i-1)_{j-n_i}` for every checked `j`
    pub rank_identity: bool,
    pub subcomplex: bool,
}

impl SesReport {
    pub fn exact(&self) -> bool {
        self.failures.is_empty() && self.rank_identity && self.subcomplex
    }
}

#[derive(Clone, Debug)]
pub struct ConeStage {
    pub complex: FreeComplex,
    pub minimal_ranks: Vec<usize>,
    pub complexity: ComplexityEstimate,
    /// the map coned off was surjective
    pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CiVerdict {
    /// `cx E^(c-1) = 1` with a certified minimal period `> 2`
    Witness { period: usize },
    NoWitness(String),
    /// the configuration does not have `n_i = 1` for `i < c` and `n_c > 2`
    Refused(String),
}

#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub ring: RingRef,
    pub factors: Vec<CertifiedFactor>,
    pub product: FreeComplex,
    pub product_complexity: ComplexityEstimate,
    pub induced: Vec<ChainMap>,
    pub cones: Vec<ConeStage>,
    /// `E^(0), ..., E^(c)`
    pub truncations: Vec<FreeComplex>,
    pub ses: Vec<SesReport>,
    pub penultimate_period: PeriodicityReport,
    pub penultimate_complexity: ComplexityEstimate,
    pub ci_verdict: CiVerdict,
}

impl ConstructionResult {
    pub fn periods(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.period).collect()
    }

    /// `cx F, cx C^(1), ..., cx C^(c)`.
    pub fn complexity_chain(&self) -> Vec<Complexity> {
        std::iter::once(self.product_complexity.value)
            .chain(self.cones.iter().map(|c| c.complexity.value))
            .collect()
    }

    /// The chain reads `c > c-1 > ... > 0`.
    pub fn complexity_chain_ok(&self) -> bool {
        let c = self.factors.len();
        self.complexity_chain() == (0..=c).rev().map(Complexity::Finite).collect::<Vec<_>>()
    }

    pub fn all_ses_exact(&self) -> bool {
        self.ses.iter().all(|s| s.exact())
    }
}

fn complexity_of(ranks: &[usize], periodic: bool) -> ComplexityEstimate {
    estimate_complexity(ranks, periodic).unwrap_or_else(|e| ComplexityEstimate {
        value: Complexity::Infinite,
        status: crate::complexity::ComplexityStatus::Estimated,
        window: ranks.len().saturating_sub(1),
        diagnostics: e.to_string(),
    })
}

fn certify(factor: &Factor, offset: usize, seed: u64) -> Result<CertifiedFactor> {
    let c = &factor.complex;
    if !c.is_complex() {
        return Err(Error::Invariant("factor is not a complex".into()));
    }
    let report = detect_complex_periodicity(c, c.len() / 2, seed);
    let cert = report
        .certificate
        .ok_or_else(|| Error::Invariant(format!("no period found for a factor within window {}", c.len())))?;
    let eta = match &factor.eta {
        Some(eta) => {
            eta.verify(c, c)?;
            let f = c.ring.field();
            if eta.shift != cert.period || !eta.is_surjective(f) || !eta.is_iso_from(f, eta.shift) {
                return Err(Error::Invariant(format!(
                    "supplied map of degree {} is not a minimal periodicity map (period {})",
                    eta.shift, cert.period
                )));
            }
            eta.clone()
        }
        None => cert.witness.clone(),
    };
    Ok(CertifiedFactor {
        complex: c.clone(),
        eta,
        period: cert.period,
        certificate: cert,
        offset,
    })
}

/// Inclusion of `sub` into `mid` by matching generator labels.
fn inclusion(sub: &FreeComplex, mid: &FreeComplex, j: usize) -> Option<FreeMap> {
    let (s, m) = (sub.module(j)?, mid.module(j)?);
    let cols = sub.labels[j]
        .iter()
        .map(|l| mid.labels[j].iter().position(|x| x == l).map(|i| FreeElem::basis(&m, i, &sub.ring)))
        .collect::<Option<Vec<_>>>()?;
    Some(FreeMap::new(s, m, cols))
}

fn internal_range(ring: &RingRef, m: &FreeModule) -> Option<(i64, i64)> {
    let top = ring.top_degree().unwrap_or(ring.degree_bound()) as i64;
    Some((m.min_degree()? as i64, m.max_degree()? as i64 + top))
}

/// Degreewise exactness of `0 -> sub -> mid -η̄-> Σ^n mid -> 0`.
pub fn check_ses(index: usize, sub: &FreeComplex, mid: &FreeComplex, eta_bar: &ChainMap) -> SesReport {
    let ring = &mid.ring;
    let f = ring.field();
    let n = eta_bar.shift;
    let s = eta_bar.degree() as i64;
    let top = sub.len().min(mid.len()).min(eta_bar.top());
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut rank_identity = true;
    let mut subcomplex = true;
    for j in 0..=top {
        let quot_rank = if j >= n { mid.rank(j - n) } else { 0 };
        if mid.rank(j) != sub.rank(j) + quot_rank {
            rank_identity = false;
        }
        let Some(inc) = inclusion(sub, mid, j) else {
            subcomplex = false;
            continue;
        };
        if j >= 1 {
            if let (Some(dm), Some(ds), Some(prev)) = (mid.differential(j), sub.differential(j), inclusion(sub, mid, j - 1)) {
                let lhs = dm.compose(ring, &inc);
                let rhs = prev.compose(ring, ds);
                if !lhs.add(ring, &rhs.scale(ring, f.neg(1))).is_zero() {
                    subcomplex = false;
                }
            }
        }
        let Some((lo, hi)) = internal_range(ring, &mid.modules[j]) else { continue };
        for d in lo..=hi {
            let dm = mid.modules[j].dim(ring, d);
            if dm == 0 {
                continue;
            }
            checked += 1;
            let ds = sub.modules[j].dim(ring, d);
            let inc_m = inc.degree_matrix(ring, d);
            let ok_inc = ds == 0 || inc_m.rank() == ds;
            let (dq, ok_eta, ok_comp) = match eta_bar.component(j) {
                Some(c) if j >= n => {
                    let dq = mid.modules[j - n].dim(ring, d - s);
                    let em = c.degree_matrix(ring, d);
                    let ok = dq == 0 || em.rank() == dq;
                    let comp = ds == 0 || dq == 0 || em.mul(&inc_m).map(|m| m.is_zero()).unwrap_or(false);
                    (dq, ok, comp)
                }
                _ => (0, true, true),
            };
            if !(ok_inc && ok_eta && ok_comp && dm == ds + dq) {
                failures.push((j, d));
            }
        }
    }
    SesReport {
        index,
        shift: n,
        checked,
        failures,
        rank_identity,
        subcomplex,
    }
}

fn e_complex(ring: &RingRef, factors: &[CertifiedFactor], i: usize) -> Result<FreeComplex> {
    let parts: Vec<FreeComplex> = factors
        .iter()
        .enumerate()
        .map(|(k, f)| if k < i { f.complex.truncate_below(f.period) } else { f.complex.clone() })
        .collect();
    let refs: Vec<&FreeComplex> = parts.iter().collect();
    tensor_into(ring.clone(), &refs)
}

/// Product, induced maps, iterated cones, truncations and verdicts.
pub fn run_construction(factors: &[Factor], seed: u64) -> Result<ConstructionResult> {
    if factors.is_empty() {
        return Err(Error::Invariant("no factors".into()));
    }
    let rings: Vec<&RingRef> = factors.iter().map(|f| &f.complex.ring).collect();
    let ring = tensor_ring(&rings)?;
    let mut certified = Vec::new();
    let mut offset = 0;
    for f in factors {
        certified.push(certify(f, offset, seed)?);
        offset += f.complex.ring.nvars();
    }
    let c = certified.len();
    let field = ring.field();

    let refs: Vec<&FreeComplex> = certified.iter().map(|f| &f.complex).collect();
    let product = tensor_into(ring.clone(), &refs)?;
    if !product.is_complex() {
        return Err(Error::Invariant("product differential does not square to zero".into()));
    }
    let product_complexity = complexity_of(&product.minimal_ranks(), false);

    let mut induced = Vec::new();
    for (i, f) in certified.iter().enumerate() {
        let m = induced_map(&product, i, &f.complex, f.offset, &f.eta);
        m.verify(&product, &product)?;
        if !m.is_surjective(field) {
            return Err(Error::Invariant(format!("induced map {} is not surjective", i + 1)));
        }
        induced.push(m);
    }
    for a in 0..c {
        for b in a + 1..c {
            if induced[a].commutation_sign(&ring, &induced[b]).is_none() {
                return Err(Error::Invariant(format!("induced maps {} and {} do not commute", a + 1, b + 1)));
            }
        }
    }

    let mut cones = Vec::new();
    let mut x = product.clone();
    let mut maps = induced.clone();
    for k in 0..c {
        let phi = maps[k].clone();
        let surjective = phi.is_surjective(field);
        let cx = cone(&x, &x, &phi)?;
        let mut next = maps.clone();
        for i in k + 1..c {
            next[i] = cone_induced(&x, &phi, &cx, &maps[i])?;
        }
        let minimal_ranks = cx.minimal_ranks();
        let complexity = complexity_of(&minimal_ranks, false);
        cones.push(ConeStage {
            complex: cx.clone(),
            minimal_ranks,
            complexity,
            surjective,
        });
        x = cx;
        maps = next;
    }

    let truncations = (0..=c).map(|i| e_complex(&ring, &certified, i)).collect::<Result<Vec<_>>>()?;
    let mut ses = Vec::new();
    for i in 1..=c {
        let f = &certified[i - 1];
        let mid = &truncations[i - 1];
        let eta_bar = induced_map(mid, i - 1, &f.complex, f.offset, &f.eta);
        ses.push(check_ses(i, &truncations[i], mid, &eta_bar));
    }

    let pen = &truncations[c - 1];
    let penultimate_period = detect_complex_periodicity(pen, pen.len() / 2, seed);
    let periodic = penultimate_period.period().is_some();
    let penultimate_complexity = complexity_of(&pen.minimal_ranks(), periodic);
    let periods: Vec<usize> = certified.iter().map(|f| f.period).collect();
    let ci_verdict = if periods[..c - 1].iter().any(|&n| n != 1) || periods[c - 1] <= 2 {
        CiVerdict::Refused(format!("periods {periods:?} need n_i = 1 for i < c and n_c > 2"))
    } else {
        match &penultimate_period.certificate {
            Some(cert)
                if cert.period > 2
                    && cert.minimal_certified
                    && penultimate_complexity.value == Complexity::Finite(1) =>
            {
                CiVerdict::Witness { period: cert.period }
            }
            Some(cert) => CiVerdict::NoWitness(format!(
                "E^(c-1) period {} (minimal certified: {}), complexity {}",
                cert.period, cert.minimal_certified, penultimate_complexity.value
            )),
            None => CiVerdict::NoWitness(format!(
                "no period for E^(c-1) within window {}; attempts: {}",
                penultimate_period.window,
                penultimate_period
                    .attempts
                    .iter()
                    .map(|(d, a)| format!("{d}:{}", attempt_name(a)))
                    .collect::<Vec<_>>()
                    .join(",")
            )),
        }
    };

    Ok(ConstructionResult {
        ring,
        factors: certified,
        product,
        product_complexity,
        induced,
        cones,
        truncations,
        ses,
        penultimate_period,
        penultimate_complexity,
        ci_verdict,
    })
}

pub fn attempt_name(a: &Attempt) -> &'static str {
    match a {
        Attempt::Feasible => "feasible",
        Attempt::Infeasible(_) => "infeasible",
        Attempt::Undetermined { .. } => "undetermined",
    }
}

#[derive(Clone, Debug)]
pub struct CorollaryModule {
    pub module: GradedModule,
    /// the product had to be minimized first
    pub minimized: bool,
    /// `H_j(F) = 0` for `1 <= j` within the window
    pub acyclic: bool,
    /// Betti numbers of the module agree with the ranks of the product
    pub betti_match: bool,
    pub betti: Vec<usize>,
    pub witness: Option<ReductionSequence>,
}

/// `coker(F_1 -> F_0)` of the product, with a reducing sequence searched
/// among classes of the factor periods' degrees.
pub fn corollary_module(result: &ConstructionResult, strategy: Option<ReductionStrategy>) -> Result<CorollaryModule> {
    let minimized = !result.product.is_minimal();
    let f = if minimized { result.product.minimize() } else { result.product.clone() };
    let module = f.cokernel_module()?;
    let top = f.len().saturating_sub(1);
    let acyclic = (1..top).all(|j| f.homology_total(j).is_none_or(|h| h == 0));
    let res = minimal_free_resolution(&module, top)?;
    let betti = res.betti().betti;
    let betti_match = (0..=top).all(|j| betti.get(j).copied().unwrap_or(0) == f.rank(j));
    let witness = match strategy {
        Some(s) => {
            let max_period = result.periods().into_iter().max().unwrap_or(1);
            let s = ReductionStrategy {
                max_degree: s.max_degree.max(max_period),
                ..s
            };
            reduction_search(&module, &s)?
        }
        None => None,
    };
    Ok(CorollaryModule {
        module,
        minimized,
        acyclic,
        betti_match,
        betti,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::QuotientRing;

    fn residue_resolution(p: u32, var: &str, rel: &str, window: usize) -> FreeComplex {
        let r = QuotientRing::parse(p, &[var], &[rel], 6).unwrap();
        let k = GradedModule::residue_field(r, 0);
        FreeComplex::from_resolution(&minimal_free_resolution(&k, window).unwrap())
    }

    #[test]
    fn two_period_one_factors() {
        let f1 = residue_resolution(2, "x", "x^2", 12);
        let f2 = residue_resolution(2, "y", "y^2", 12);
        let res = run_construction(
            &[
                Factor { complex: f1, eta: None },
                Factor { complex: f2, eta: None },
            ],
            0,
        )
        .unwrap();
        assert_eq!(res.product.ranks(), (1..=13).collect::<Vec<_>>());
        assert!(res.complexity_chain_ok(), "{:?}", res.complexity_chain());
        assert!(res.all_ses_exact(), "{:?}", res.ses);
        assert!(matches!(res.ci_verdict, CiVerdict::Refused(_)));
        let cor = corollary_module(&res, Some(ReductionStrategy::default())).unwrap();
        assert!(cor.betti_match && cor.acyclic);
        assert_eq!(cor.module.hilbert(3), vec![(0, 1), (1, 0), (2, 0), (3, 0)]);
        let w = cor.witness.unwrap();
        assert_eq!(w.complexity_chain(), vec![Complexity::Finite(2), Complexity::Finite(1), Complexity::Finite(0)]);
    }

    #[test]
    fn single_period_two_factor() {
        let r = QuotientRing::parse(3, &["x", "y"], &["x*y"], 12).unwrap();
        let m = GradedModule::cyclic_from_strings(r, &["x"]).unwrap();
        let f = FreeComplex::from_resolution(&minimal_free_resolution(&m, 10).unwrap());
        let res = run_construction(&[Factor { complex: f, eta: None }], 0).unwrap();
        assert_eq!(res.periods(), vec![2]);
        assert_eq!(res.complexity_chain(), vec![Complexity::Finite(1), Complexity::Finite(0)]);
        assert!(res.all_ses_exact());
        let cor = corollary_module(&res, None).unwrap();
        assert_eq!(cor.module.hilbert(4), m_hilbert());
    }

    fn m_hilbert() -> Vec<(i64, usize)> {
        let r = QuotientRing::parse(3, &["x", "y"], &["x*y"], 12).unwrap();
        GradedModule::cyclic_from_strings(r, &["x"]).unwrap().hilbert(4)
    }
}
