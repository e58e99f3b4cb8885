//! `Ext^t(M, N)` by cocycles `Hom(F_t, N)` modulo coboundaries.
//!
//! A homogeneous class of internal degree `e` sends the generator `e_j`
//! of `F_t` (degree `g_j`) to an element of `N_{g_j + e}`; it is a
//! degree-preserving map `F_t -> N(e)`.

use crate::error::{Error, Result};
use crate::free::FreeElem;
use crate::linalg::{EchelonSpace, Matrix};
use crate::module::GradedModule;
use crate::resolution::{minimal_free_resolution, FreeResolution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClass {
    pub t: usize,
    pub internal_degree: i64,
    /// per generator of `F_t`: coordinates in the basis of `N_{g_j + e}`
    pub values: Vec<Vec<u32>>,
}

impl ExtClass {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(|&x| x == 0))
    }

    /// Images `f(e_j)` as elements of the free module on the generators of `N`.
    pub fn images(&self, n: &GradedModule, res: &FreeResolution) -> Vec<FreeElem> {
        let ft = res.free(self.t);
        ft.degrees
            .iter()
            .zip(&self.values)
            .map(|(&g, v)| n.lift_elem(g as i64 + self.internal_degree, v))
            .collect()
    }
}

/// `Hom(F_i, N(e))` coordinates: blocks `N_{g_j + e}`.
fn hom_blocks(res: &FreeResolution, n: &GradedModule, i: usize, e: i64) -> (Vec<(usize, usize)>, usize) {
    let mut off = 0;
    let b = res
        .free(i)
        .degrees
        .iter()
        .map(|&g| {
            let d = g as i64 + e;
            let len = if d < n.low_degree() { 0 } else { n.try_dim(d).unwrap_or(0) };
            let out = (off, len);
            off += len;
            out
        })
        .collect();
    (b, off)
}

/// `f ↦ f ∘ d_{i+1}` from `Hom(F_i, N(e))` to `Hom(F_{i+1}, N(e))`.
fn coboundary(res: &FreeResolution, n: &GradedModule, i: usize, e: i64) -> Matrix {
    let f = n.ring().field();
    let (src, sdim) = hom_blocks(res, n, i, e);
    let (dst, ddim) = hom_blocks(res, n, i + 1, e);
    let mut m = Matrix::zeros(f, ddim, sdim);
    let d = res.differential(i + 1);
    let src_degs = &d.target.degrees;
    for (q, col) in d.columns.iter().enumerate() {
        let (qo, ql) = dst[q];
        if ql == 0 {
            continue;
        }
        for (j, a) in &col.entries {
            let (jo, jl) = src[*j];
            if jl == 0 {
                continue;
            }
            let act = n.action_matrix(a, src_degs[*j] as i64 + e);
            for x in 0..ql {
                for y in 0..jl {
                    let v = act.get(x, y);
                    if v != 0 {
                        m.add_to(qo + x, jo + y, v);
                    }
                }
            }
        }
    }
    m
}

fn known(n: &GradedModule, res: &FreeResolution, t: usize, e: i64) -> bool {
    let k = n.known_through();
    (t.saturating_sub(1)..=t + 1).all(|i| res.free(i).degrees.iter().all(|&g| g as i64 + e <= k))
}

/// Internal degrees where `Hom(F_t, N(e))` can be nonzero.
pub fn ext_degree_range(res: &FreeResolution, n: &GradedModule, t: usize) -> Option<(i64, i64)> {
    let ft = res.free(t);
    let top = n.vanishes_above().unwrap_or(n.top());
    Some((n.low_degree() - ft.max_degree()? as i64, top - ft.min_degree()? as i64))
}

/// A basis of `Ext^t(M, N)_e`: cocycles independent modulo coboundaries,
/// in echelon order.
pub fn ext_basis_in_degree(res: &FreeResolution, n: &GradedModule, t: usize, e: i64) -> Result<Vec<ExtClass>> {
    if t + 1 > res.known_length() && res.pd.is_none_or(|p| t <= p) {
        return Err(Error::WindowExceeded {
            needed: t + 1,
            available: res.known_length(),
        });
    }
    if !known(n, res, t, e) {
        return Err(Error::DegreeBoundExceeded {
            degree: e,
            bound: n.ring().degree_bound(),
        });
    }
    let f = n.ring().field();
    let (blocks, dim) = hom_blocks(res, n, t, e);
    if dim == 0 {
        return Ok(Vec::new());
    }
    let cocycles = coboundary(res, n, t, e).kernel_basis();
    let mut span = EchelonSpace::new(f, dim);
    if t > 0 {
        for c in coboundary(res, n, t - 1, e).columns() {
            span.insert(&c);
        }
    }
    Ok(cocycles
        .columns()
        .into_iter()
        .filter(|c| span.insert(c))
        .map(|c| ExtClass {
            t,
            internal_degree: e,
            values: blocks.iter().map(|&(o, l)| c[o..o + l].to_vec()).collect(),
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct ExtBasis {
    pub classes: Vec<ExtClass>,
    /// internal degrees scanned
    pub degrees: Option<(i64, i64)>,
    /// the scan reached every degree where `Hom(F_t, N(e))` can be nonzero
    pub complete: bool,
}

/// Basis classes of `Ext^t(M, N)`, ascending by internal degree, over the
/// degrees the degree bound can see.
pub fn ext_basis(res: &FreeResolution, n: &GradedModule, t: usize) -> Result<ExtBasis> {
    let Some((lo, hi)) = ext_degree_range(res, n, t) else {
        return Ok(ExtBasis {
            classes: Vec::new(),
            degrees: None,
            complete: true,
        });
    };
    let mut classes = Vec::new();
    let mut last = lo - 1;
    for e in lo..=hi {
        if !known(n, res, t, e) {
            break;
        }
        classes.extend(ext_basis_in_degree(res, n, t, e)?);
        last = e;
    }
    Ok(ExtBasis {
        classes,
        degrees: (last >= lo).then_some((lo, last)),
        complete: last == hi,
    })
}

/// `dim Ext^t(M, N)` per internal degree over the visible degrees.
pub fn ext_dims(m: &GradedModule, n: &GradedModule, t: usize) -> Result<Vec<(i64, usize)>> {
    let res = minimal_free_resolution(m, t + 1)?;
    let mut out: Vec<(i64, usize)> = Vec::new();
    for c in ext_basis(&res, n, t)?.classes {
        match out.last_mut() {
            Some((e, k)) if *e == c.internal_degree => *k += 1,
            _ => out.push((c.internal_degree, 1)),
        }
    }
    Ok(out)
}

/// `f ∘ d_{t+1} = 0` for the class, checked on the images in `N`.
pub fn is_cocycle(class: &ExtClass, res: &FreeResolution, n: &GradedModule) -> bool {
    let (blocks, dim) = hom_blocks(res, n, class.t, class.internal_degree);
    let mut v = vec![0; dim];
    for (&(o, l), x) in blocks.iter().zip(&class.values) {
        if x.len() != l {
            return false;
        }
        v[o..o + l].copy_from_slice(x);
    }
    coboundary(res, n, class.t, class.internal_degree)
        .mul_vec(&v)
        .is_ok_and(|w| w.iter().all(|&x| x == 0))
}

/// `sum c_k η_k` for classes of the same `t` and internal degree.
pub fn combine(classes: &[&ExtClass], coeffs: &[u32], n: &GradedModule) -> ExtClass {
    let f = n.ring().field();
    let first = classes[0];
    let mut values: Vec<Vec<u32>> = first.values.iter().map(|v| vec![0; v.len()]).collect();
    for (c, &k) in classes.iter().zip(coeffs) {
        for (acc, v) in values.iter_mut().zip(&c.values) {
            for (a, &x) in acc.iter_mut().zip(v) {
                *a = f.mul_add(*a, k, x);
            }
        }
    }
    ExtClass {
        t: first.t,
        internal_degree: first.internal_degree,
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::QuotientRing;

    #[test]
    fn ext_of_residue_field_matches_betti() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x^2", "y^2"], 6).unwrap();
        let k = GradedModule::residue_field(r, 0);
        for t in 0..4 {
            let dims = ext_dims(&k, &k, t).unwrap();
            assert_eq!(dims, vec![(-(t as i64), t + 1)]);
        }
    }

    #[test]
    fn ext_of_cyclic_module_over_node() {
        let r = QuotientRing::parse(3, &["x", "y"], &["x*y"], 8).unwrap();
        let m = GradedModule::cyclic_from_strings(r, &["x"]).unwrap();
        let res = minimal_free_resolution(&m, 3).unwrap();
        assert!(ext_basis(&res, &m, 1).unwrap().classes.is_empty());
        let two = ext_basis(&res, &m, 2).unwrap();
        assert!(!two.complete);
        assert_eq!(two.classes.len(), 1);
        assert!(is_cocycle(&two.classes[0], &res, &m));
    }
}
