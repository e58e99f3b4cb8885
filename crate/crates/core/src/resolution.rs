//! Minimal graded free resolutions, Betti numbers, syzygies and depth.

use std::fmt;

use crate::error::{Error, Result};
use crate::free::{mul_sparse, FreeElem, FreeMap, FreeModule, Layout, RingRef};
use crate::module::GradedModule;
use crate::ring::{QuotientRing, SparseVec};
use crate::sparse::{self, SparseEchelon};

/// `F_0 <- F_1 <- ... <- F_N` resolving a module.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub ring: RingRef,
    pub module: GradedModule,
    /// `F_0, ..., F_k` with `k <= window`
    pub modules: Vec<FreeModule>,
    /// `d_i: F_i -> F_{i-1}` stored at index `i - 1`
    pub differentials: Vec<FreeMap>,
    /// `F_0 -> ` generators of the presented module
    pub augmentation: FreeMap,
    pub window: usize,
    /// projective dimension, when the resolution ended inside the window
    pub pd: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub betti: Vec<usize>,
    /// generator degrees with multiplicity, per homological degree
    pub graded: Vec<Vec<(i32, usize)>>,
    pub window: usize,
}

impl BettiTable {
    /// Nonzero once at `i` and zero from some later index on.
    pub fn terminates(&self) -> Option<usize> {
        let last = self.betti.iter().rposition(|&b| b != 0)?;
        (last + 1 < self.betti.len()).then_some(last)
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.betti.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

fn graded_counts(m: &FreeModule) -> Vec<(i32, usize)> {
    let mut degs = m.degrees.clone();
    degs.sort();
    let mut out: Vec<(i32, usize)> = Vec::new();
    for d in degs {
        match out.last_mut() {
            Some((e, c)) if *e == d => *c += 1,
            _ => out.push((d, 1)),
        }
    }
    out
}

/// Minimal generators of the kernel of a map out of `src`, degree by
/// degree: kernel vectors independent of `R_1 * K_{d-1}`, in echelon order.
/// With `guard = Some(need)`, a new generator in the last scanned degree
/// beyond `need` means the scan was cut short.
pub(crate) fn kernel_generators(
    ring: &QuotientRing,
    src: &FreeModule,
    columns_at: impl Fn(i64, &Layout) -> Vec<SparseVec>,
    last: i64,
    guard: Option<i64>,
) -> Result<Vec<FreeElem>> {
    let f = ring.field();
    let Some(lo) = src.min_degree() else {
        return Ok(Vec::new());
    };
    let vars: Vec<_> = (0..ring.nvars()).filter_map(|i| ring.variable(i).ok()).collect();
    let mut gens = Vec::new();
    let mut prev: Option<(Layout, Vec<SparseVec>)> = None;
    for d in lo as i64..=last {
        let layout = src.layout(ring, d);
        if layout.dim == 0 {
            prev = Some((layout, Vec::new()));
            continue;
        }
        let cols = columns_at(d, &layout);
        let kernel = sparse::kernel(f, &cols);
        if !kernel.is_empty() {
            let mut span = SparseEchelon::new(f);
            if let Some((pl, pk)) = &prev {
                'fill: for v in pk {
                    for x in &vars {
                        span.insert(&mul_sparse(ring, pl, &layout, v, x));
                        if span.dim() == kernel.len() {
                            break 'fill;
                        }
                    }
                }
            }
            if span.dim() < kernel.len() {
                for u in &kernel {
                    if span.insert(u) {
                        if guard.is_some_and(|need| d == last && d > need) {
                            return Err(Error::DegreeBoundExceeded {
                                degree: d,
                                bound: ring.degree_bound(),
                            });
                        }
                        gens.push(FreeElem::from_sparse(u, &layout));
                    }
                }
            }
        }
        prev = Some((layout, kernel));
    }
    Ok(gens)
}

/// Minimal free resolution of `m` through homological degree `window`.
pub fn minimal_free_resolution(m: &GradedModule, window: usize) -> Result<FreeResolution> {
    let ring = m.ring().clone();
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let artinian = ring.is_artinian();
    let gens = m.generators();

    let chosen = m.minimal_generators();
    let f0 = FreeModule::new(chosen.iter().map(|&j| gens.degrees[j]).collect());
    let aug_cols = chosen.iter().map(|&j| FreeElem::basis(gens, j, &ring)).collect();
    let augmentation = FreeMap::new(f0.clone(), gens.clone(), aug_cols);

    let mut modules = vec![f0];
    let mut differentials: Vec<FreeMap> = Vec::new();
    let mut pd = None;

    for i in 0..window {
        let src = modules[i].clone();
        let (last, guard) = if artinian {
            (src.support_top(&ring).expect("artinian"), None)
        } else {
            let last = if i == 0 {
                src.top(&ring).min(m.known_through())
            } else {
                src.top(&ring).min(modules[i - 1].top(&ring))
            };
            // the scan must at least reach the degrees of the obvious
            // (Koszul-type) syzygies among the current relations
            let need = if i == 0 {
                m.relations().columns.iter().map(|c| c.deg).max()
            } else {
                differentials[i - 1]
                    .columns
                    .iter()
                    .map(|c| c.deg + c.entries.iter().map(|(_, e)| e.deg as i64).max().unwrap_or(0))
                    .max()
            };
            let need = need.unwrap_or(i64::MIN);
            if need > last {
                return Err(Error::DegreeBoundExceeded {
                    degree: need,
                    bound: ring.degree_bound(),
                });
            }
            (last, Some(need))
        };
        let syz = if i == 0 {
            let aug = &augmentation;
            kernel_generators(
                &ring,
                &src,
                |d, sl| {
                    let gl = m.layout(d);
                    aug.sparse_columns(&ring, sl, &gl)
                        .iter()
                        .map(|c| sparse::from_dense(&m.project(d, &sparse::to_dense(c, gl.dim))))
                        .collect()
                },
                last,
                guard,
            )?
        } else {
            let dm = &differentials[i - 1];
            let tgt = &modules[i - 1];
            kernel_generators(
                &ring,
                &src,
                |d, sl| dm.sparse_columns(&ring, sl, &tgt.layout(&ring, d)),
                last,
                guard,
            )?
        };
        let next = FreeModule::new(syz.iter().map(|e| e.deg as i32).collect());
        differentials.push(FreeMap::new(next.clone(), src, syz));
        let done = next.is_zero();
        modules.push(next);
        if done {
            pd = Some(i);
            break;
        }
    }
    // trailing zero module is kept only as the termination witness
    if pd.is_some() {
        modules.pop();
        differentials.pop();
    }
    Ok(FreeResolution {
        ring,
        module: m.clone(),
        modules,
        differentials,
        augmentation,
        window,
        pd,
    })
}

impl FreeResolution {
    /// `F_i`, the zero module past termination.
    pub fn free(&self, i: usize) -> FreeModule {
        self.modules.get(i).cloned().unwrap_or_default()
    }

    /// `d_i: F_i -> F_{i-1}` for `i >= 1`.
    pub fn differential(&self, i: usize) -> FreeMap {
        assert!(i >= 1);
        match self.differentials.get(i - 1) {
            Some(d) => d.clone(),
            None => FreeMap::zero(self.free(i), self.free(i - 1)),
        }
    }

    /// Highest homological degree with known `F_i` (the window, or any
    /// degree once the resolution has ended).
    pub fn known_length(&self) -> usize {
        if self.pd.is_some() {
            usize::MAX
        } else {
            self.modules.len() - 1
        }
    }

    pub fn betti(&self) -> BettiTable {
        let n = self.window;
        let betti = (0..=n).map(|i| self.free(i).rank()).collect();
        let graded = (0..=n).map(|i| graded_counts(&self.free(i))).collect();
        BettiTable { betti, graded, window: n }
    }

    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().all(|d| d.is_minimal())
    }

    /// `d_i ∘ d_{i+1} = 0` for all computed `i`.
    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[0].compose(&self.ring, &w[1]).is_zero())
    }

    /// `Ω^t(M)`: generators of `F_t`, relations the columns of `d_{t+1}`.
    pub fn syzygy(&self, t: usize) -> Result<GradedModule> {
        if t == 0 {
            return Ok(self.module.clone());
        }
        if t + 1 > self.known_length() {
            return Err(Error::WindowExceeded {
                needed: t + 1,
                available: self.window,
            });
        }
        let ft = self.free(t);
        let rels = self.differential(t + 1).columns;
        GradedModule::new(self.ring.clone(), ft.degrees, rels)
    }
}

pub fn syzygy(m: &GradedModule, t: usize) -> Result<GradedModule> {
    minimal_free_resolution(m, t + 1)?.syzygy(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DepthMethod {
    /// `n - pd_S` from a terminating resolution over the ambient ring
    AuslanderBuchsbaum,
    /// a nonzero module of finite length has depth 0
    FiniteLength,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthReport {
    pub depth: usize,
    pub method: DepthMethod,
    pub pd_s: Option<usize>,
    pub nvars: usize,
    pub window: usize,
    /// `dim = depth` is taken on trust (ring depth reports only)
    pub cohen_macaulay_assumed: bool,
}

/// Depth of a nonzero module via Auslander–Buchsbaum over the ambient
/// polynomial ring; finite-length modules short-circuit to 0.
pub fn depth(m: &GradedModule) -> Result<DepthReport> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let n = m.ring().nvars();
    if m.ring().is_artinian() {
        return Ok(DepthReport {
            depth: 0,
            method: DepthMethod::FiniteLength,
            pd_s: None,
            nvars: n,
            window: 0,
            cohen_macaulay_assumed: false,
        });
    }
    depth_over_ambient(m)
}

/// Depth by Auslander–Buchsbaum regardless of the ring.
pub fn depth_over_ambient(m: &GradedModule) -> Result<DepthReport> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let n = m.ring().nvars();
    let lifted = m.lift_to_ambient()?;
    let res = minimal_free_resolution(&lifted, n + 1)?;
    let pd = res.pd.ok_or(Error::WindowExceeded {
        needed: n + 2,
        available: n + 1,
    })?;
    Ok(DepthReport {
        depth: n - pd,
        method: DepthMethod::AuslanderBuchsbaum,
        pd_s: Some(pd),
        nvars: n,
        window: n + 1,
        cohen_macaulay_assumed: false,
    })
}

/// Depth of the ring as a module over itself.
pub fn depth_of_ring(ring: &RingRef) -> Result<DepthReport> {
    let r = GradedModule::free(ring.clone(), vec![0]);
    let mut rep = depth(&r)?;
    rep.cohen_macaulay_assumed = true;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PolyRing, QuotientRing};

    fn ring(p: u32, vars: &[&str], rels: &[&str], d: usize) -> RingRef {
        let base = PolyRing::new(p, vars.iter().map(|s| s.to_string()).collect(), d).unwrap();
        QuotientRing::from_strings(base, rels).unwrap()
    }

    #[test]
    fn residue_field_of_dual_numbers() {
        let r = ring(2, &["x"], &["x^2"], 4);
        let k = GradedModule::residue_field(r.clone(), 0);
        let res = minimal_free_resolution(&k, 6).unwrap();
        assert_eq!(res.betti().betti, vec![1; 7]);
        for i in 1..=6 {
            let d = res.differential(i);
            assert_eq!(d.display(&r), vec![vec!["x".to_string()]]);
        }
        assert!(res.is_minimal() && res.is_complex());
    }

    #[test]
    fn free_module_terminates() {
        let r = ring(3, &["x", "y"], &["xy"], 4);
        let free = GradedModule::free(r, vec![0]);
        let res = minimal_free_resolution(&free, 5).unwrap();
        assert_eq!(res.betti().betti, vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(res.pd, Some(0));
        assert!(res.syzygy(1).unwrap().is_zero());
    }

    #[test]
    fn complete_intersection_betti() {
        let r = ring(2, &["x", "y"], &["x^2", "y^2"], 3);
        let k = GradedModule::residue_field(r, 0);
        let res = minimal_free_resolution(&k, 8).unwrap();
        assert_eq!(res.betti().betti, (1..=9).collect::<Vec<_>>());
        assert!(res.is_complex());
        let omega = res.syzygy(1).unwrap();
        assert_eq!(omega.minimal_generators().len(), 2);
        assert!(omega.generators().degrees.iter().all(|&g| g == 1));
    }

    #[test]
    fn hypersurface_alternates() {
        let r = ring(3, &["x", "y"], &["xy"], 4);
        let m = GradedModule::cyclic_from_strings(r.clone(), &["x"]).unwrap();
        let res = minimal_free_resolution(&m, 6).unwrap();
        assert_eq!(res.betti().betti, vec![1; 7]);
        let shown: Vec<String> = (1..=4).map(|i| res.differential(i).display(&r)[0][0].clone()).collect();
        assert_eq!(shown, ["x", "y", "x", "y"]);
    }

    #[test]
    fn depth_examples() {
        let s = ring(3, &["x", "y", "z"], &[], 6);
        assert_eq!(depth(&GradedModule::free(s.clone(), vec![0])).unwrap().depth, 3);
        assert_eq!(depth(&GradedModule::residue_field(s, 0)).unwrap().depth, 0);
        let a = ring(3, &["x", "y"], &["xy"], 6);
        let m = GradedModule::cyclic_from_strings(a.clone(), &["x"]).unwrap();
        let rep = depth(&m).unwrap();
        assert_eq!((rep.depth, rep.pd_s), (1, Some(1)));
        assert_eq!(depth_of_ring(&a).unwrap().depth, 1);
        let art = ring(2, &["x", "y"], &["x^2", "y^2"], 4);
        assert_eq!(depth_of_ring(&art).unwrap().depth, 0);
        assert_eq!(depth_over_ambient(&GradedModule::free(art, vec![0])).unwrap().depth, 0);
    }

    #[test]
    fn zero_module_rejected() {
        let r = ring(2, &["x"], &["x^2"], 4);
        let z = GradedModule::cyclic_from_strings(r, &["1"]).unwrap();
        assert!(matches!(minimal_free_resolution(&z, 3), Err(Error::ZeroModule)));
        assert!(matches!(depth(&z), Err(Error::ZeroModule)));
    }

    #[test]
    fn degree_bound_guard_fires() {
        // over k[x,y] the Koszul syzygy of (x^3, y^3) sits in degree 6
        let s = ring(2, &["x", "y"], &[], 4);
        let m = GradedModule::cyclic_from_strings(s, &["x^3", "y^3"]).unwrap();
        assert!(matches!(
            minimal_free_resolution(&m, 3),
            Err(Error::DegreeBoundExceeded { .. })
        ));
    }
}
