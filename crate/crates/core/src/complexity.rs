//! Complexity (polynomial growth rate of Betti numbers) from a finite window.

use std::fmt;

use crate::error::{Error, Result};
use crate::module::GradedModule;
use crate::periodicity::detect_resolution_periodicity;
use crate::resolution::{minimal_free_resolution, BettiTable};

/// Fewest Betti numbers the estimator accepts.
pub const MIN_WINDOW: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Complexity {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Complexity::Finite(t) => write!(f, "{t}"),
            Complexity::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexityStatus {
    ExactFinitePd,
    ExactPeriodic,
    Estimated,
}

impl fmt::Display for ComplexityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexityStatus::ExactFinitePd => "exact-finite-pd",
            ComplexityStatus::ExactPeriodic => "exact-periodic",
            ComplexityStatus::Estimated => "estimated",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityEstimate {
    pub value: Complexity,
    pub status: ComplexityStatus,
    pub window: usize,
    /// how the value was obtained
    pub diagnostics: String,
}

/// `β_k <= a * k^{t-1}` on the tail, with `a` the largest ratio on the head.
fn fits(seq: &[u128], t: u32) -> bool {
    let h = seq.len() / 2;
    let pow = |k: usize| (k as u128).pow(t.saturating_sub(1));
    let (mut num, mut den) = (0u128, 1u128);
    for (p, &b) in seq[..h].iter().enumerate() {
        let w = pow(p + 1);
        if b * den > num * w {
            num = b;
            den = w;
        }
    }
    seq[h..].iter().enumerate().all(|(p, &b)| b * den <= num * pow(h + p + 1))
}

/// Estimate `cx` from Betti numbers `β_0..β_N`; `periodic` is whether a
/// periodicity certificate is known. Leading zeros (cones of complexes)
/// are skipped.
pub fn estimate_complexity(betti: &[usize], periodic: bool) -> Result<ComplexityEstimate> {
    let window = betti.len().saturating_sub(1);
    let Some(first) = betti.iter().position(|&b| b != 0) else {
        return Ok(ComplexityEstimate {
            value: Complexity::Finite(0),
            status: ComplexityStatus::ExactFinitePd,
            window,
            diagnostics: "all Betti numbers vanish".into(),
        });
    };
    let seq: Vec<u128> = betti[first..].iter().map(|&b| b as u128).collect();
    if let Some(z) = seq.iter().position(|&b| b == 0) {
        if seq[z..].iter().all(|&b| b == 0) {
            return Ok(ComplexityEstimate {
                value: Complexity::Finite(0),
                status: ComplexityStatus::ExactFinitePd,
                window,
                diagnostics: format!("β vanishes from index {}", first + z),
            });
        }
    }
    if periodic {
        return Ok(ComplexityEstimate {
            value: Complexity::Finite(1),
            status: ComplexityStatus::ExactPeriodic,
            window,
            diagnostics: "periodic resolution".into(),
        });
    }
    if seq.len() < MIN_WINDOW {
        return Err(Error::WindowExceeded {
            needed: MIN_WINDOW,
            available: seq.len(),
        });
    }
    let tail = &seq[seq.len() / 2..];
    if tail.windows(2).all(|w| w[0] > 0 && 2 * w[1] >= 3 * w[0]) {
        return Ok(ComplexityEstimate {
            value: Complexity::Infinite,
            status: ComplexityStatus::Estimated,
            window,
            diagnostics: "consecutive ratios >= 3/2 on the tail".into(),
        });
    }
    let max_t = (seq.len() / 2) as u32;
    for t in 1..=max_t {
        if fits(&seq, t) {
            return Ok(ComplexityEstimate {
                value: Complexity::Finite(t as usize),
                status: ComplexityStatus::Estimated,
                window,
                diagnostics: format!("β_i <= a·i^{} fits the window", t - 1),
            });
        }
    }
    Ok(ComplexityEstimate {
        value: Complexity::Infinite,
        status: ComplexityStatus::Estimated,
        window,
        diagnostics: format!("no polynomial fit of degree < {max_t}"),
    })
}

/// Complexity of a module from its resolution through `window`, with a
/// periodicity search when the resolution does not terminate.
#[derive(Clone, Debug)]
pub struct ModuleComplexity {
    pub estimate: ComplexityEstimate,
    pub betti: BettiTable,
    pub period: Option<usize>,
}

pub fn module_complexity(m: &GradedModule, window: usize, seed: u64) -> Result<ModuleComplexity> {
    let res = minimal_free_resolution(m, window)?;
    let period = if res.pd.is_some() {
        None
    } else {
        detect_resolution_periodicity(&res, seed).period()
    };
    let betti = res.betti();
    let estimate = match res.pd {
        Some(p) => ComplexityEstimate {
            value: Complexity::Finite(0),
            status: ComplexityStatus::ExactFinitePd,
            window,
            diagnostics: format!("pd = {p}"),
        },
        None => estimate_complexity(&betti.betti, period.is_some())?,
    };
    Ok(ModuleComplexity { estimate, betti, period })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let e = estimate_complexity(&[1, 0, 0, 0, 0, 0, 0], false).unwrap();
        assert_eq!((e.value, e.status), (Complexity::Finite(0), ComplexityStatus::ExactFinitePd));
        let e = estimate_complexity(&[1; 8], true).unwrap();
        assert_eq!((e.value, e.status), (Complexity::Finite(1), ComplexityStatus::ExactPeriodic));
        let lin: Vec<usize> = (1..=10).collect();
        let e = estimate_complexity(&lin, false).unwrap();
        assert_eq!((e.value, e.status), (Complexity::Finite(2), ComplexityStatus::Estimated));
    }

    #[test]
    fn other_growth_rates() {
        assert_eq!(estimate_complexity(&[1; 8], false).unwrap().value, Complexity::Finite(1));
        assert_eq!(estimate_complexity(&[1, 2, 1, 2, 1, 2, 1, 2], false).unwrap().value, Complexity::Finite(1));
        let quad: Vec<usize> = (0..10).map(|i| (i + 1) * (i + 2) / 2).collect();
        assert_eq!(estimate_complexity(&quad, false).unwrap().value, Complexity::Finite(3));
        let exp: Vec<usize> = (0..13).map(|i| 1 << i).collect();
        assert_eq!(estimate_complexity(&exp, false).unwrap().value, Complexity::Infinite);
        // cones start late
        assert_eq!(estimate_complexity(&[0, 0, 1, 0, 0, 0, 0], false).unwrap().value, Complexity::Finite(0));
    }

    #[test]
    fn short_windows_rejected() {
        assert!(estimate_complexity(&[1, 2, 3], false).is_err());
    }
}
