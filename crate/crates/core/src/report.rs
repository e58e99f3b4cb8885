//! Line-oriented reports shared by the command-line tool and the tests.
//!
//! Machine form is a schema header followed by `key = value` records in a
//! fixed order; pretty form aligns the same records for reading.

use std::fmt::Write as _;

use crate::complex::FreeComplex;
use crate::complexity::module_complexity;
use crate::construction::{attempt_name, corollary_module, run_construction, CiVerdict, ConstructionResult, CorollaryModule, Factor};
use crate::depth_formula::{check_depth_formula, DepthFormulaOptions};
use crate::error::{Error, Result};
use crate::module::GradedModule;
use crate::periodicity::{detect_complex_periodicity, Attempt, Infeasibility, PeriodicityReport};
use crate::reduction::{reduction_search, ReductionStrategy};
use crate::resolution::{depth, DepthMethod};
use crate::ring::QuotientRing;
use crate::tor::{tor, TorRigor};

pub const SCHEMA: &str = "redcx-report/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub records: Vec<(String, String)>,
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn graded<D: ToString>(xs: &[(D, usize)]) -> String {
    if xs.is_empty() {
        return "-".into();
    }
    join(xs.iter().map(|(d, n)| format!("{}:{n}", d.to_string())))
}

impl Report {
    /// A report carrying the ring's characteristic and degree bound, the
    /// homological window and the seed.
    pub fn new(command: &str, ring: &QuotientRing, window: usize, seed: u64) -> Self {
        let mut r = Report {
            command: command.into(),
            records: Vec::new(),
        };
        r.push("characteristic", ring.characteristic());
        r.push("degree_bound", ring.degree_bound());
        r.push("ring", ring.describe());
        r.push("window", window);
        r.push("seed", seed);
        r
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.records.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.records.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn machine(&self) -> String {
        let mut out = format!("# schema = {SCHEMA}\ncommand = {}\n", self.command);
        for (k, v) in &self.records {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }

    pub fn pretty(&self) -> String {
        let w = self.records.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = format!("{}\n", self.command);
        for (k, v) in &self.records {
            let _ = writeln!(out, "  {k:<w$}  {v}");
        }
        out
    }
}

pub fn resolve_report(m: &GradedModule, window: usize, seed: u64) -> Result<Report> {
    let mc = module_complexity(m, window, seed)?;
    let mut r = Report::new("resolve", m.ring(), window, seed);
    r.push("betti", &mc.betti);
    for (i, g) in mc.betti.graded.iter().enumerate() {
        r.push(format!("betti.graded.{i}"), graded(g));
    }
    r.push("pd", mc.betti.terminates().map_or("unknown".into(), |p| p.to_string()));
    r.push("complexity", mc.estimate.value);
    r.push("rigor.complexity", mc.estimate.status);
    r.push("complexity.diagnostics", &mc.estimate.diagnostics);
    r.push("period", mc.period.map_or("none".into(), |p| p.to_string()));
    Ok(r)
}

pub fn depth_report(m: &GradedModule) -> Result<Report> {
    let d = depth(m)?;
    let mut r = Report::new("depth", m.ring(), d.window, 0);
    r.push("depth", d.depth);
    r.push(
        "method",
        match d.method {
            DepthMethod::AuslanderBuchsbaum => "auslander-buchsbaum",
            DepthMethod::FiniteLength => "finite-length",
        },
    );
    r.push("pd_ambient", d.pd_s.map_or("-".into(), |p| p.to_string()));
    r.push("ambient_vars", d.nvars);
    r.push("rigor.exact", true);
    Ok(r)
}

fn rigor_string(rigor: &TorRigor) -> String {
    match rigor {
        TorRigor::FinitePd(p) => format!("finite-pd {p}"),
        TorRigor::Periodic { start, period, vanishing_from } => {
            format!("periodic start {start} period {period} vanishing-from {vanishing_from}")
        }
        TorRigor::Unproven(why) => format!("unproven ({why})"),
    }
}

pub fn tor_report(m: &GradedModule, n: &GradedModule, window: usize, seed: u64) -> Result<Report> {
    let p = tor(m, n, window, seed)?;
    let mut r = Report::new("tor", m.ring(), window, seed);
    r.push("tor.totals", join(&p.totals));
    for (i, g) in p.graded.iter().enumerate() {
        r.push(format!("tor.graded.{i}"), graded(g));
    }
    r.push("q", p.q().map_or("uncertified".into(), |q| q.to_string()));
    r.push("rigor.tor", rigor_string(&p.rigor));
    r.push("rigor.truncated", join(p.truncated.iter().map(|&t| u8::from(t))));
    Ok(r)
}

/// Refusals become a report with `verdict = refused`.
pub fn depth_formula_report(m: &GradedModule, n: &GradedModule, opts: &DepthFormulaOptions) -> Result<Report> {
    let mut r = Report::new("depth-formula", m.ring(), opts.window, opts.seed);
    let rep = match check_depth_formula(m, n, opts) {
        Ok(rep) => rep,
        Err(Error::Refused(why)) => {
            r.push("verdict", "refused");
            r.push("refusal", why);
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    r.push("depth_m", rep.depth_m);
    r.push("depth_n", rep.depth_n);
    r.push("depth_a", rep.depth_a);
    r.push("q", rep.q);
    r.push("depth_tor_q", rep.depth_tor_q);
    r.push("lhs", rep.lhs);
    r.push("rhs", rep.rhs);
    r.push("verdict", rep.verdict);
    r.push("case", rep.case.name());
    r.push("rigor.tor", rigor_string(&rep.rigor));
    r.push("m_maximal_cm", rep.m_maximal_cm);
    r.push("n_maximal_cm", rep.n_maximal_cm);
    r.push("reddeg_m", rep.reddeg_m.map_or("unknown".into(), |d| d.to_string()));
    for (i, a) in rep.annotations.iter().enumerate() {
        r.push(format!("annotation.{i}"), a);
    }
    Ok(r)
}

pub fn reduce_report(m: &GradedModule, strategy: &ReductionStrategy) -> Result<Report> {
    let mut r = Report::new("reduce", m.ring(), strategy.window, strategy.seed);
    r.push("max_degree", strategy.max_degree);
    match reduction_search(m, strategy)? {
        None => r.push("witness", "none"),
        Some(seq) => {
            r.push("witness", "found");
            r.push("steps", seq.steps.len());
            r.push("complexity_chain", join(seq.complexity_chain()));
            r.push("reddeg", seq.reddeg_lower_bound());
            r.push("rigor.ses_exact", seq.all_exact());
            r.push("rigor.strictly_decreasing", seq.strictly_decreasing());
            for (i, s) in seq.steps.iter().enumerate() {
                let k = i + 1;
                r.push(format!("step.{k}.ext_degree"), s.eta.t);
                r.push(format!("step.{k}.internal_degree"), s.eta.internal_degree);
                r.push(format!("step.{k}.omega_degree"), s.omega_degree);
                r.push(format!("step.{k}.generators"), join(&s.module.generators().degrees));
                r.push(format!("step.{k}.complexity"), s.complexity.value);
                r.push(format!("step.{k}.ses_degrees_checked"), s.ses.degrees.len());
            }
        }
    }
    Ok(r)
}

fn attempt_detail(a: &Attempt) -> String {
    match a {
        Attempt::Infeasible(Infeasibility::DegreeMismatch { degree }) => format!("infeasible degree-mismatch at {degree}"),
        Attempt::Infeasible(Infeasibility::RankDeficient { degree, rank, needed }) => {
            format!("infeasible rank {rank} < {needed} at {degree}")
        }
        Attempt::Infeasible(Infeasibility::Exhausted { dimension }) => format!("infeasible exhausted dimension {dimension}"),
        Attempt::Undetermined { solutions } => format!("undetermined solutions {solutions}"),
        Attempt::Feasible => attempt_name(a).into(),
    }
}

fn push_period(r: &mut Report, prefix: &str, p: &PeriodicityReport) {
    match &p.certificate {
        Some(c) => {
            r.push(format!("{prefix}period"), c.period);
            r.push(format!("{prefix}internal_shift"), c.internal_shift);
            r.push(format!("{prefix}start"), c.start);
            r.push(format!("{prefix}rigor.minimal_certified"), c.minimal_certified);
        }
        None => r.push(format!("{prefix}period"), "none"),
    }
    for (d, a) in &p.attempts {
        r.push(format!("{prefix}attempt.{d}"), attempt_detail(a));
    }
}

pub fn period_report(c: &FreeComplex, max_period: usize, seed: u64) -> Report {
    let p = detect_complex_periodicity(c, max_period, seed);
    let mut r = Report::new("period", &c.ring, c.len(), seed);
    r.push("ranks", join(c.ranks()));
    r.push("max_period", max_period);
    push_period(&mut r, "", &p);
    r
}

/// The construction report and the corollary module.
pub fn construct_report(factors: &[Factor], seed: u64, strategy: Option<ReductionStrategy>) -> Result<(Report, ConstructionResult, CorollaryModule)> {
    let res = run_construction(factors, seed)?;
    let cor = corollary_module(&res, strategy)?;
    let mut r = Report::new("construct", &res.ring, res.product.len(), seed);
    r.push("factors", res.factors.len());
    r.push("periods", join(res.periods()));
    for (i, f) in res.factors.iter().enumerate() {
        r.push(format!("factor.{}.rigor.minimal_certified", i + 1), f.certificate.minimal_certified);
    }
    r.push("product.ranks", join(res.product.ranks()));
    for (i, c) in res.cones.iter().enumerate() {
        r.push(format!("cone.{}.minimal_ranks", i + 1), join(&c.minimal_ranks));
        r.push(format!("cone.{}.complexity", i + 1), c.complexity.value);
        r.push(format!("cone.{}.surjective", i + 1), c.surjective);
    }
    r.push("complexity_chain", join(res.complexity_chain()));
    r.push("rigor.complexity_chain", res.complexity_chain_ok());
    for s in &res.ses {
        r.push(format!("ses.{}.checked", s.index), s.checked);
        r.push(format!("ses.{}.exact", s.index), s.exact());
    }
    push_period(&mut r, "penultimate.", &res.penultimate_period);
    r.push("penultimate.complexity", res.penultimate_complexity.value);
    match &res.ci_verdict {
        CiVerdict::Witness { period } => r.push("ci_verdict", format!("witness period {period}")),
        CiVerdict::NoWitness(why) => r.push("ci_verdict", format!("no-witness ({why})")),
        CiVerdict::Refused(why) => r.push("ci_verdict", format!("refused ({why})")),
    }
    // transfer statements between objects, recorded rather than computed
    let mut notes = vec!["finite CI-dimension of the module implies it for the product complex".to_string()];
    for s in &res.ses {
        notes.push(format!("finite CI-dimension of E^({}) implies it for E^({})", s.index - 1, s.index));
    }
    if matches!(res.ci_verdict, CiVerdict::Witness { .. }) {
        notes.push(format!("the witness on E^({}) rules out finite CI-dimension for E^(0) and the module", res.factors.len() - 1));
    }
    for (i, n) in notes.iter().enumerate() {
        r.push(format!("implication.{i}"), n);
    }
    r.push("module.generators", join(&cor.module.generators().degrees));
    r.push("module.betti", join(&cor.betti));
    r.push("module.minimized", cor.minimized);
    r.push("rigor.acyclic", cor.acyclic);
    r.push("rigor.betti_match", cor.betti_match);
    match &cor.witness {
        Some(w) => {
            r.push("module.reducing_steps", w.steps.len());
            r.push("module.complexity_chain", join(w.complexity_chain()));
        }
        None => r.push("module.reducing_steps", "none"),
    }
    Ok((r, res, cor))
}
