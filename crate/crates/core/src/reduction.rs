//! The pushout module `K_η` of a self-extension and the search for
//! sequences of such classes that lower complexity to finite pd.

use std::collections::HashSet;
use std::fmt;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexity::{module_complexity, Complexity, ComplexityEstimate};
use crate::error::{Error, Result};
use crate::ext::{combine, ext_basis, is_cocycle, ExtClass};
use crate::free::FreeElem;
use crate::module::{verify_short_exact, GradedModule, ModuleMap, SesCheck};
use crate::resolution::{depth, minimal_free_resolution, FreeResolution};

/// `0 -> M(e) -> K_η -> Ω^{t-1} M -> 0` with its degreewise check.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub module: GradedModule,
    /// `M(e)`, the copy of `M` inside `K_η`
    pub sub: GradedModule,
    /// `Ω^{t-1} M = coker(d_t)`
    pub quotient: GradedModule,
    pub ses: SesCheck,
}

/// `K_η = coker(Ω^t M -> M(e) ⊕ F_{t-1})` for `z ↦ (f_η(z), -z)`.
///
/// Generators: those of `M` shifted to `g - e`, then those of `F_{t-1}`.
/// Relations: the shifted relations of `M`, then one column per generator
/// of `F_t`.
pub fn pushout_k_eta(m: &GradedModule, res: &FreeResolution, eta: &ExtClass) -> Result<Pushout> {
    let t = eta.t;
    if t == 0 {
        return Err(Error::Invariant("pushout needs a class of degree t >= 1".into()));
    }
    if !is_cocycle(eta, res, m) {
        return Err(Error::NotACocycle(format!("class of degree {t}, internal degree {}", eta.internal_degree)));
    }
    let ring = m.ring().clone();
    let e = eta.internal_degree;
    let sub = m.shift(e as i32);
    let r0 = sub.generators().rank();
    let prev = res.free(t - 1);
    let dt = res.differential(t);

    let mut gens = sub.generators().degrees.clone();
    gens.extend(prev.degrees.iter().copied());
    let mut rels: Vec<FreeElem> = sub.relations().columns.clone();
    for (img, col) in eta.images(m, res).into_iter().zip(&dt.columns) {
        let mut entries = img.entries;
        entries.extend(col.entries.iter().map(|(j, a)| (r0 + j, ring.neg(a))));
        entries.retain(|(_, a)| !a.is_zero());
        rels.push(FreeElem { deg: col.deg, entries });
    }
    let module = GradedModule::new(ring.clone(), gens, rels)?;
    let quotient = GradedModule::new(ring.clone(), prev.degrees.clone(), dt.columns.clone())?;

    let kg = module.generators().clone();
    let iota: Vec<FreeElem> = (0..r0).map(|i| FreeElem::basis(&kg, i, &ring)).collect();
    let qg = quotient.generators().clone();
    let pi: Vec<FreeElem> = (0..kg.rank())
        .map(|i| {
            if i < r0 {
                FreeElem::zero(kg.degrees[i] as i64)
            } else {
                FreeElem::basis(&qg, i - r0, &ring)
            }
        })
        .collect();
    let f = ModuleMap::new(&sub, &module, iota);
    let g = ModuleMap::new(&module, &quotient, pi);
    if !f.is_well_defined() || !g.is_well_defined() {
        return Err(Error::Invariant("pushout maps are not well defined".into()));
    }
    let ses = verify_short_exact(&f, &g);
    Ok(Pushout {
        module: module.clone(),
        sub: sub.clone(),
        quotient: quotient.clone(),
        ses,
    })
}

/// Upper reducing degree: a witnessed lower bound, or `∞` for finite pd.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RedDeg {
    AtLeast(usize),
    Infinite,
}

impl fmt::Display for RedDeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RedDeg::AtLeast(n) => write!(f, ">= {n}"),
            RedDeg::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub eta: ExtClass,
    /// `K_i`
    pub module: GradedModule,
    /// `n_i` in `0 -> K_{i-1} -> K_i -> Ω^{n_i} K_{i-1} -> 0`
    pub omega_degree: usize,
    pub ses: SesCheck,
    pub complexity: ComplexityEstimate,
}

#[derive(Clone, Debug)]
pub struct ReductionSequence {
    pub start: GradedModule,
    pub start_complexity: ComplexityEstimate,
    pub steps: Vec<ReductionStep>,
}

impl ReductionSequence {
    pub fn reddeg_lower_bound(&self) -> RedDeg {
        match self.steps.iter().map(|s| s.eta.t).min() {
            Some(t) => RedDeg::AtLeast(t),
            None => RedDeg::Infinite,
        }
    }

    /// `cx K_0, cx K_1, ..., cx K_t`.
    pub fn complexity_chain(&self) -> Vec<Complexity> {
        std::iter::once(self.start_complexity.value)
            .chain(self.steps.iter().map(|s| s.complexity.value))
            .collect()
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.complexity_chain().windows(2).all(|w| w[1] < w[0])
    }

    pub fn all_exact(&self) -> bool {
        self.steps.iter().all(|s| s.ses.exact)
    }

    pub fn terminal(&self) -> &GradedModule {
        self.steps.last().map_or(&self.start, |s| &s.module)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ReductionStrategy {
    pub max_degree: usize,
    pub window: usize,
    pub seed: u64,
    /// random combinations tried per internal degree after the basis
    pub combinations: usize,
    pub max_steps: usize,
    /// total pushouts formed before giving up
    pub budget: usize,
}

impl Default for ReductionStrategy {
    fn default() -> Self {
        Self {
            max_degree: 2,
            window: 10,
            seed: 0,
            combinations: 64,
            max_steps: 4,
            budget: 2000,
        }
    }
}

/// Candidate classes of `Ext^t(M, M)`: the basis in order, then seeded
/// random combinations within each internal degree.
fn candidates(classes: &[ExtClass], m: &GradedModule, strategy: &ReductionStrategy, t: usize, level: usize) -> Vec<ExtClass> {
    let mut out: Vec<ExtClass> = classes.to_vec();
    let p = m.ring().characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(strategy.seed ^ ((t as u64) << 32) ^ ((level as u64) << 48));
    let mut start = 0;
    while start < classes.len() {
        let e = classes[start].internal_degree;
        let end = start + classes[start..].iter().take_while(|c| c.internal_degree == e).count();
        let group: Vec<&ExtClass> = classes[start..end].iter().collect();
        if group.len() > 1 {
            let mut seen: HashSet<Vec<u32>> = HashSet::new();
            for _ in 0..strategy.combinations {
                let coeffs: Vec<u32> = (0..group.len()).map(|_| rng.random_range(0..p)).collect();
                if coeffs.iter().filter(|&&c| c != 0).count() < 2 || !seen.insert(coeffs.clone()) {
                    continue;
                }
                out.push(combine(&group, &coeffs, m));
            }
        }
        start = end;
    }
    out
}

struct Search<'s> {
    strategy: &'s ReductionStrategy,
    spent: usize,
}

impl Search<'_> {
    fn run(&mut self, m: &GradedModule, cx: &ComplexityEstimate, level: usize) -> Option<Vec<ReductionStep>> {
        if cx.value == Complexity::Finite(0) {
            return Some(Vec::new());
        }
        if level >= self.strategy.max_steps || cx.value == Complexity::Infinite {
            return None;
        }
        let s = self.strategy;
        let res = minimal_free_resolution(m, s.max_degree + 1).ok()?;
        for t in 1..=s.max_degree {
            let Ok(basis) = ext_basis(&res, m, t) else { continue };
            for eta in candidates(&basis.classes, m, s, t, level) {
                if eta.is_zero() || self.spent >= s.budget {
                    continue;
                }
                self.spent += 1;
                let Ok(po) = pushout_k_eta(m, &res, &eta) else { continue };
                if !po.ses.exact {
                    continue;
                }
                let Ok(kc) = module_complexity(&po.module, s.window, s.seed) else { continue };
                if kc.estimate.value >= cx.value {
                    continue;
                }
                if let Some(rest) = self.run(&po.module, &kc.estimate, level + 1) {
                    let step = ReductionStep {
                        eta,
                        module: po.module,
                        omega_degree: t - 1,
                        ses: po.ses,
                        complexity: kc.estimate,
                    };
                    return Some(std::iter::once(step).chain(rest).collect());
                }
            }
        }
        None
    }
}

/// Depth-first search for a reducing sequence. `None` means no witness was
/// found within the strategy's budget, not that `M` is irreducible.
pub fn reduction_search(m: &GradedModule, strategy: &ReductionStrategy) -> Result<Option<ReductionSequence>> {
    let cx = module_complexity(m, strategy.window, strategy.seed)?.estimate;
    if cx.value == Complexity::Infinite {
        return Ok(None);
    }
    let mut search = Search { strategy, spent: 0 };
    Ok(search.run(m, &cx, 0).map(|steps| ReductionSequence {
        start: m.clone(),
        start_complexity: cx,
        steps,
    }))
}

/// Depth inequalities along `0 -> A -> B -> C -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthLemmaReport {
    pub depths: [usize; 3],
    /// `depth B >= min(depth A, depth C)`
    pub middle: bool,
    /// `depth A >= min(depth B, depth C + 1)`
    pub left: bool,
    /// `depth C >= min(depth A - 1, depth B)`
    pub right: bool,
}

impl DepthLemmaReport {
    pub fn holds(&self) -> bool {
        self.middle && self.left && self.right
    }
}

pub fn depth_lemma_check(a: &GradedModule, b: &GradedModule, c: &GradedModule, ses: &SesCheck) -> Result<DepthLemmaReport> {
    if !ses.exact {
        return Err(Error::Invariant(format!("sequence not exact in degrees {:?}", ses.failures)));
    }
    let [da, db, dc] = [a, b, c].map(|m| depth(m).map(|r| r.depth));
    let (da, db, dc) = (da?, db?, dc?);
    Ok(DepthLemmaReport {
        depths: [da, db, dc],
        middle: db >= da.min(dc),
        left: da >= db.min(dc + 1),
        right: dc + 1 >= da.min(db + 1),
    })
}

/// Depth lemma data for a pushout sequence.
pub fn pushout_depth_lemma(po: &Pushout) -> Result<DepthLemmaReport> {
    depth_lemma_check(&po.sub, &po.module, &po.quotient, &po.ses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::QuotientRing;

    #[test]
    fn dual_numbers_residue_field_reduces_to_free() {
        let r = QuotientRing::parse(2, &["x"], &["x^2"], 6).unwrap();
        let k = GradedModule::residue_field(r, 0);
        let seq = reduction_search(&k, &ReductionStrategy::default()).unwrap().unwrap();
        assert_eq!(seq.steps.len(), 1);
        let kmod = &seq.steps[0].module;
        assert_eq!(kmod.hilbert(3), vec![(0, 1), (1, 1), (2, 0), (3, 0)]);
        assert_eq!(minimal_free_resolution(kmod, 2).unwrap().pd, Some(0));
    }

    #[test]
    fn zero_class_splits() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x^2", "y^2"], 6).unwrap();
        let k = GradedModule::residue_field(r, 0);
        let res = minimal_free_resolution(&k, 3).unwrap();
        let mut eta = ext_basis(&res, &k, 2).unwrap().classes[0].clone();
        for v in &mut eta.values {
            v.iter_mut().for_each(|x| *x = 0);
        }
        let po = pushout_k_eta(&k, &res, &eta).unwrap();
        assert!(po.ses.exact);
        for d in -2..6 {
            assert_eq!(po.module.dim(d), po.sub.dim(d) + po.quotient.dim(d));
        }
        assert!(pushout_depth_lemma(&po).unwrap().holds());
    }

    #[test]
    fn finite_pd_gives_empty_sequence() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x^2", "y^2"], 6).unwrap();
        let free = GradedModule::free(r, vec![0, 1]);
        let seq = reduction_search(&free, &ReductionStrategy::default()).unwrap().unwrap();
        assert!(seq.steps.is_empty());
        assert_eq!(seq.reddeg_lower_bound(), RedDeg::Infinite);
    }

    #[test]
    fn malformed_class_rejected() {
        let r = QuotientRing::parse(3, &["x", "y"], &["x*y"], 8).unwrap();
        let m = GradedModule::cyclic_from_strings(r, &["x"]).unwrap();
        let res = minimal_free_resolution(&m, 3).unwrap();
        let bogus = ExtClass {
            t: 1,
            internal_degree: -1,
            values: vec![vec![1]],
        };
        assert!(matches!(pushout_k_eta(&m, &res, &bogus), Err(Error::NotACocycle(_))));
    }

    #[test]
    fn complete_intersection_residue_field_two_steps() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x^2", "y^2"], 6).unwrap();
        let k = GradedModule::residue_field(r, 0);
        let seq = reduction_search(&k, &ReductionStrategy::default()).unwrap().unwrap();
        assert_eq!(
            seq.complexity_chain(),
            vec![Complexity::Finite(2), Complexity::Finite(1), Complexity::Finite(0)]
        );
        assert!(seq.all_exact());
        assert_eq!(seq.reddeg_lower_bound(), RedDeg::AtLeast(1));
        for s in &seq.steps {
            assert_eq!(depth(&s.module).unwrap().depth, 0);
        }
    }
}
