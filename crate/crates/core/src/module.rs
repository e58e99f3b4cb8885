//! Finitely presented graded modules `M = coker(relations: R^r -> R^s)`,
//! with degreewise `k`-bases computed on demand.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::free::{FreeElem, FreeMap, FreeModule, Layout, RingRef};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::ring::RingElem;

struct Level {
    layout: Layout,
    /// rref rows spanning the relation submodule in this degree
    rows: Vec<(usize, Vec<u32>)>,
    /// coordinates (of the free module) whose classes form a basis of `M_d`
    basis: Vec<usize>,
}

pub struct GradedModule {
    ring: RingRef,
    gens: FreeModule,
    relations: FreeMap,
    lo: i64,
    top: i64,
    levels: Vec<OnceLock<Level>>,
    vanish: OnceLock<Option<i64>>,
}

impl Clone for GradedModule {
    fn clone(&self) -> Self {
        GradedModule::from_parts(self.ring.clone(), self.gens.clone(), self.relations.clone())
    }
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedModule")
            .field("ring", &self.ring.describe())
            .field("generators", &self.gens.degrees)
            .field("relations", &self.relations.display(&self.ring))
            .finish()
    }
}

impl GradedModule {
    /// Module with generators in the given degrees and relation columns
    /// (elements of the free module on those generators).
    pub fn new(ring: RingRef, generators: Vec<i32>, relations: Vec<FreeElem>) -> Result<Self> {
        let gens = FreeModule::new(generators);
        for r in &relations {
            for (j, e) in &r.entries {
                if *j >= gens.rank() {
                    return Err(Error::Parse(format!("relation refers to generator {j}")));
                }
                if e.deg as i64 + gens.degrees[*j] as i64 != r.deg {
                    return Err(Error::NotHomogeneous(format!("relation of degree {} has an entry of degree {}", r.deg, e.deg)));
                }
            }
        }
        let relations: Vec<FreeElem> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        let src = FreeModule::new(relations.iter().map(|r| r.deg as i32).collect());
        let map = FreeMap::new(src, gens.clone(), relations);
        Ok(Self::from_parts(ring, gens, map))
    }

    pub(crate) fn from_parts(ring: RingRef, gens: FreeModule, relations: FreeMap) -> Self {
        let (lo, top) = match gens.min_degree() {
            Some(g) => (g as i64, gens.support_top(&ring).unwrap_or_else(|| gens.top(&ring))),
            None => (0, -1),
        };
        let n = if top >= lo { (top - lo + 1) as usize } else { 0 };
        Self {
            ring,
            gens,
            relations,
            lo,
            top,
            levels: (0..n).map(|_| OnceLock::new()).collect(),
            vanish: OnceLock::new(),
        }
    }

    /// `module_from_presentation`: generator degrees and relation columns as
    /// polynomial strings, one entry per generator.
    pub fn from_presentation(ring: RingRef, generators: Vec<i32>, relations: &[Vec<String>]) -> Result<Self> {
        let mut cols = Vec::new();
        for col in relations {
            if col.len() != generators.len() {
                return Err(Error::Parse(format!(
                    "relation column has {} entries for {} generators",
                    col.len(),
                    generators.len()
                )));
            }
            let mut entries: Vec<(usize, Polynomial)> = Vec::new();
            let mut deg: Option<i64> = None;
            for (j, s) in col.iter().enumerate() {
                let p = ring.base().parse(s)?;
                if p.is_zero() {
                    continue;
                }
                let pd = p
                    .homogeneous_degree()
                    .ok_or_else(|| Error::NotHomogeneous(s.clone()))? as i64;
                let cd = pd + generators[j] as i64;
                match deg {
                    Some(d) if d != cd => {
                        return Err(Error::NotHomogeneous(format!("relation column {col:?} mixes degrees")));
                    }
                    _ => deg = Some(cd),
                }
                entries.push((j, p));
            }
            let Some(d) = deg else { continue };
            let mut elem = FreeElem::zero(d);
            for (j, p) in entries {
                let rd = (d - generators[j] as i64) as usize;
                if rd > ring.degree_bound() {
                    return Err(Error::DegreeBoundExceeded {
                        degree: rd as i64,
                        bound: ring.degree_bound(),
                    });
                }
                let e = ring.normal_form_in_degree(&p, rd)?;
                elem.entries.push((j, e));
            }
            cols.push(elem);
        }
        Self::new(ring, generators, cols)
    }

    /// The free module `R` (one generator in degree 0) or any free module.
    pub fn free(ring: RingRef, generators: Vec<i32>) -> Self {
        Self::new(ring, generators, Vec::new()).expect("free modules have no relations")
    }

    /// `k = R/m` in degree `deg`.
    pub fn residue_field(ring: RingRef, deg: i32) -> Self {
        let cols = (0..ring.nvars())
            .map(|i| FreeElem {
                deg: deg as i64 + 1,
                entries: vec![(0, ring.variable(i).expect("degree bound >= 1"))],
            })
            .collect();
        Self::new(ring, vec![deg], cols).expect("residue field presentation")
    }

    /// `R/(f_1, ..., f_r)` with generator in degree 0.
    pub fn cyclic(ring: RingRef, relations: &[RingElem]) -> Self {
        let cols = relations
            .iter()
            .map(|r| FreeElem {
                deg: r.deg as i64,
                entries: vec![(0, r.clone())],
            })
            .collect();
        Self::new(ring, vec![0], cols).expect("cyclic presentation")
    }

    /// `R/(f_1, ..., f_r)` from polynomial strings.
    pub fn cyclic_from_strings(ring: RingRef, relations: &[&str]) -> Result<Self> {
        let rels: Vec<Vec<String>> = relations.iter().map(|s| vec![s.to_string()]).collect();
        Self::from_presentation(ring, vec![0], &rels)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &FreeModule {
        &self.gens
    }

    pub fn relations(&self) -> &FreeMap {
        &self.relations
    }

    /// Lowest generator degree (0 for the zero presentation).
    pub fn low_degree(&self) -> i64 {
        self.lo
    }

    /// Highest internal degree in which `M_d` is computed: the last
    /// possibly nonzero degree over an artinian ring, otherwise the last
    /// degree visible inside the degree bound.
    pub fn top(&self) -> i64 {
        self.top
    }

    /// Highest degree through which `M` is exactly known.
    pub fn known_through(&self) -> i64 {
        if self.ring.is_artinian() || self.vanishes_above().is_some() {
            i64::MAX
        } else {
            self.top
        }
    }

    /// A degree beyond which `M` is zero, when one is certified: the
    /// support bound over an artinian ring, else the first zero degree at
    /// or past the top generator.
    pub fn vanishes_above(&self) -> Option<i64> {
        *self.vanish.get_or_init(|| {
            if self.ring.is_artinian() {
                return Some(self.top);
            }
            let start = self.gens.max_degree()? as i64;
            (start..=self.top)
                .find(|&d| self.level(d).map_or(0, |l| l.basis.len()) == 0)
                .map(|d| d - 1)
        })
    }

    /// Highest degree where `M` can be nonzero, when the ring is artinian.
    pub fn support_top(&self) -> Option<i64> {
        self.gens.support_top(&self.ring)
    }


    fn level(&self, d: i64) -> Option<&Level> {
        if d < self.lo || d > self.top {
            return None;
        }
        Some(self.levels[(d - self.lo) as usize].get_or_init(|| self.compute_level(d)))
    }

    fn compute_level(&self, d: i64) -> Level {
        let layout = self.gens.layout(&self.ring, d);
        let u = self.relations.degree_matrix_with(&self.ring, &self.relations.source.layout(&self.ring, d), &layout);
        let rr = u.transpose().rref();
        let rows: Vec<(usize, Vec<u32>)> = rr
            .pivots
            .iter()
            .enumerate()
            .map(|(k, &p)| (p, rr.matrix.row(k).to_vec()))
            .collect();
        let mut is_pivot = vec![false; layout.dim];
        for (p, _) in &rows {
            is_pivot[*p] = true;
        }
        let basis = (0..layout.dim).filter(|&c| !is_pivot[c]).collect();
        Level { layout, rows, basis }
    }

    /// `dim_k M_d`. Degrees above [`top`](Self::top) are unknown and panic.
    pub fn dim(&self, d: i64) -> usize {
        if d < self.lo || self.vanishes_above().is_some_and(|t| d > t) {
            return 0;
        }
        assert!(d <= self.top, "degree {d} beyond the known range (top {})", self.top);
        self.level(d).map_or(0, |l| l.basis.len())
    }

    pub fn try_dim(&self, d: i64) -> Option<usize> {
        (d <= self.known_through()).then(|| self.dim(d))
    }

    /// `(d, dim M_d)` for `lo <= d <= up_to`, within the known range.
    pub fn hilbert(&self, up_to: i64) -> Vec<(i64, usize)> {
        (self.lo..=self.known_through().min(up_to)).map(|d| (d, self.dim(d))).collect()
    }

    pub fn layout(&self, d: i64) -> Layout {
        match self.level(d) {
            Some(l) => l.layout.clone(),
            None => self.gens.layout(&self.ring, d),
        }
    }

    /// Coordinates in `M_d` of a dense vector of the free module in degree `d`.
    pub fn project(&self, d: i64, v: &[u32]) -> Vec<u32> {
        let Some(l) = self.level(d) else {
            return Vec::new();
        };
        let f = self.ring.field();
        let mut w = v.to_vec();
        for (p, row) in &l.rows {
            let c = w[*p];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (j, &rv) in row.iter().enumerate().skip(*p) {
                if rv != 0 {
                    w[j] = f.mul_add(w[j], neg, rv);
                }
            }
        }
        l.basis.iter().map(|&c| w[c]).collect()
    }

    /// The matrix `G_d -> M_d` of [`project`](Self::project).
    pub fn projection_matrix(&self, d: i64) -> Matrix {
        let f = self.ring.field();
        let Some(l) = self.level(d) else {
            return Matrix::zeros(f, 0, self.gens.dim(&self.ring, d));
        };
        let n = l.layout.dim;
        let cols: Vec<Vec<u32>> = (0..n)
            .map(|c| {
                let mut e = vec![0; n];
                e[c] = 1;
                self.project(d, &e)
            })
            .collect();
        Matrix::from_columns(f, l.basis.len(), &cols)
    }

    /// Dense free-module vector representing basis coordinates of `M_d`.
    pub fn lift(&self, d: i64, coords: &[u32]) -> Vec<u32> {
        let l = self.level(d).expect("degree in range");
        let mut v = vec![0; l.layout.dim];
        for (&c, &x) in l.basis.iter().zip(coords) {
            v[c] = x;
        }
        v
    }

    /// Zero outside the stored degree range, where `M_d` is zero or unknown.
    pub fn lift_elem(&self, d: i64, coords: &[u32]) -> FreeElem {
        let Some(l) = self.level(d) else {
            assert!(coords.iter().all(|&c| c == 0), "nonzero coordinates in degree {d} outside the stored range");
            return FreeElem::zero(d);
        };
        FreeElem::from_dense(&self.lift(d, coords), &l.layout)
    }

    /// Reduce a free-module element to its class.
    pub fn class_of(&self, x: &FreeElem) -> Vec<u32> {
        let layout = self.layout(x.deg);
        self.project(x.deg, &x.to_dense(&layout))
    }

    /// Multiplication by `r`: `M_d -> M_{d + deg r}`.
    pub fn action_matrix(&self, r: &RingElem, d: i64) -> Matrix {
        let f = self.ring.field();
        let e = d + r.deg as i64;
        let (src, dst) = (self.dim(d), self.dim(e));
        let mut m = Matrix::zeros(f, dst, src);
        if src == 0 || dst == 0 {
            return m;
        }
        let from = self.layout(d);
        let to = self.layout(e);
        for k in 0..src {
            let mut c = vec![0; src];
            c[k] = 1;
            let v = self.lift(d, &c);
            let w = crate::free::mul_dense(&self.ring, &from, &to, &v, r);
            for (i, x) in self.project(e, &w).into_iter().enumerate() {
                m.set(i, k, x);
            }
        }
        m
    }

    /// `M = 0` exactly when every generator dies in its own degree.
    pub fn is_zero(&self) -> bool {
        self.gens.degrees.iter().all(|&g| self.dim(g as i64) == 0)
    }

    /// Indices of a minimal generating set, ascending by degree: in each
    /// degree the generators that are independent modulo relations and
    /// `m * M`.
    pub fn minimal_generators(&self) -> Vec<usize> {
        let f = self.ring.field();
        let mut degs: Vec<i32> = self.gens.degrees.clone();
        degs.sort();
        degs.dedup();
        let mut chosen = Vec::new();
        for d in degs {
            let idx: Vec<usize> = (0..self.gens.rank()).filter(|&j| self.gens.degrees[j] == d).collect();
            let layout = self.gens.layout(&self.ring, d as i64);
            let u = self.relations.degree_matrix(&self.ring, d as i64);
            // restrict the relation span to the scalar coordinates of degree-d generators
            let mut sub = Matrix::zeros(f, idx.len(), u.cols());
            for (r, &j) in idx.iter().enumerate() {
                if let Some((off, _, _)) = layout.blocks[j] {
                    for c in 0..u.cols() {
                        sub.set(r, c, u.get(off, c));
                    }
                }
            }
            for c in crate::linalg::complement_coordinates(&sub, idx.len()) {
                chosen.push(idx[c]);
            }
        }
        chosen.sort_by_key(|&j| (self.gens.degrees[j], j));
        chosen
    }

    /// `M(e)`: the same module with degrees lowered by `e`.
    pub fn shift(&self, e: i32) -> GradedModule {
        let gens = self.gens.shifted(e);
        let rels = FreeMap::new(
            self.relations.source.shifted(e),
            gens.clone(),
            self.relations
                .columns
                .iter()
                .map(|c| FreeElem {
                    deg: c.deg - e as i64,
                    entries: c.entries.clone(),
                })
                .collect(),
        );
        GradedModule::from_parts(self.ring.clone(), gens, rels)
    }

    pub fn direct_sum(&self, other: &GradedModule) -> GradedModule {
        let gens = self.gens.direct_sum(&other.gens);
        let off = self.gens.rank();
        let mut cols = self.relations.columns.clone();
        cols.extend(other.relations.columns.iter().map(|c| c.reindex(|j| j + off)));
        GradedModule::new(self.ring.clone(), gens.degrees, cols).expect("direct sum of valid presentations")
    }

    /// Presentation of `M ⊗_R N`: generators are pairs, relations are
    /// `rel_M ⊗ gen_N` and `gen_M ⊗ rel_N`.
    pub fn tensor(&self, other: &GradedModule) -> GradedModule {
        let (s, t) = (self.gens.rank(), other.gens.rank());
        let mut degs = Vec::with_capacity(s * t);
        for i in 0..s {
            for j in 0..t {
                degs.push(self.gens.degrees[i] + other.gens.degrees[j]);
            }
        }
        let mut cols = Vec::new();
        for rel in &self.relations.columns {
            for j in 0..t {
                cols.push(FreeElem {
                    deg: rel.deg + other.gens.degrees[j] as i64,
                    entries: rel.entries.iter().map(|(i, e)| (i * t + j, e.clone())).collect(),
                });
            }
        }
        for rel in &other.relations.columns {
            for i in 0..s {
                cols.push(FreeElem {
                    deg: rel.deg + self.gens.degrees[i] as i64,
                    entries: rel.entries.iter().map(|(j, e)| (i * t + j, e.clone())).collect(),
                });
            }
        }
        GradedModule::new(self.ring.clone(), degs, cols).expect("tensor of valid presentations")
    }

    /// `lift_presentation_to_S`: the same generators over the ambient
    /// polynomial ring, with relations lifted plus `I * e_j`.
    pub fn lift_to_ambient(&self) -> Result<GradedModule> {
        let s = self.ring.ambient();
        let mut cols = Vec::new();
        for c in &self.relations.columns {
            let mut e = FreeElem::zero(c.deg);
            for (j, x) in &c.entries {
                let p = self.ring.to_polynomial(x);
                e.entries.push((*j, s.normal_form_in_degree(&p, x.deg)?));
            }
            cols.push(e);
        }
        for (j, &g) in self.gens.degrees.iter().enumerate() {
            for rel in self.ring.relations() {
                let rd = rel.homogeneous_degree().expect("relations are homogeneous");
                if rd > s.degree_bound() {
                    return Err(Error::DegreeBoundExceeded {
                        degree: rd as i64,
                        bound: s.degree_bound(),
                    });
                }
                cols.push(FreeElem {
                    deg: g as i64 + rd as i64,
                    entries: vec![(j, s.normal_form(rel)?)],
                });
            }
        }
        GradedModule::new(s, self.gens.degrees.clone(), cols)
    }

    /// `M ⊗_R R'` for a ring `R'` whose variables extend those of `R`,
    /// the old ones placed at `offset`.
    pub fn extend_scalars(&self, target: &RingRef, offset: usize) -> Result<GradedModule> {
        let total = target.nvars();
        let mut cols = Vec::new();
        for c in &self.relations.columns {
            let mut e = FreeElem::zero(c.deg);
            for (j, x) in &c.entries {
                let p = self.ring.to_polynomial(x).embed(offset, total);
                let y = target.normal_form_in_degree(&p, x.deg)?;
                if !y.is_zero() {
                    e.entries.push((*j, y));
                }
            }
            cols.push(e);
        }
        GradedModule::new(target.clone(), self.gens.degrees.clone(), cols)
    }

    /// Relation columns as polynomial strings (for the module file format).
    pub fn relation_strings(&self) -> Vec<Vec<String>> {
        self.relations
            .columns
            .iter()
            .map(|c| {
                (0..self.gens.rank())
                    .map(|j| c.get(j).map_or("0".to_string(), |e| self.ring.display_elem(e)))
                    .collect()
            })
            .collect()
    }
}

/// A homomorphism of graded modules given by images of the source
/// generators in the target's free module.
#[derive(Clone, Debug)]
pub struct ModuleMap<'a> {
    pub source: &'a GradedModule,
    pub target: &'a GradedModule,
    pub images: FreeMap,
}

impl<'a> ModuleMap<'a> {
    pub fn new(source: &'a GradedModule, target: &'a GradedModule, images: Vec<FreeElem>) -> Self {
        let images = FreeMap::new(source.gens.clone(), target.gens.clone(), images);
        Self { source, target, images }
    }

    /// `M_d -> N_d` in the chosen bases.
    pub fn degree_matrix(&self, d: i64) -> Matrix {
        let f = self.source.ring.field();
        let (src, dst) = (self.source.dim(d), self.target.dim(d));
        let mut m = Matrix::zeros(f, dst, src);
        if src == 0 || dst == 0 {
            return m;
        }
        let phi = self.images.degree_matrix(&self.source.ring, d);
        for k in 0..src {
            let mut c = vec![0; src];
            c[k] = 1;
            let v = self.source.lift(d, &c);
            let w = phi.mul_vec(&v).expect("layout sizes agree");
            for (i, x) in self.target.project(d, &w).into_iter().enumerate() {
                m.set(i, k, x);
            }
        }
        m
    }

    /// Relations of the source land in the relations of the target.
    pub fn is_well_defined(&self) -> bool {
        let ring = &self.source.ring;
        let top = self.target.known_through();
        self.source.relations.columns.iter().all(|rel| {
            if rel.deg > top {
                return true;
            }
            let img = self.images.apply(ring, rel);
            self.target.class_of(&img).iter().all(|&x| x == 0)
        })
    }
}

/// Degreewise exactness data for `0 -> A -f-> B -g-> C -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesCheck {
    pub degrees: Vec<i64>,
    pub exact: bool,
    pub failures: Vec<i64>,
}

pub fn verify_short_exact(f: &ModuleMap<'_>, g: &ModuleMap<'_>) -> SesCheck {
    let (a, b, c) = (f.source, f.target, g.target);
    let lo = a.low_degree().min(b.low_degree()).min(c.low_degree());
    let known = a.known_through().min(b.known_through()).min(c.known_through());
    let top = known.min(a.top().max(b.top()).max(c.top()));
    let mut degrees = Vec::new();
    let mut failures = Vec::new();
    for d in lo..=top {
        degrees.push(d);
        let fm = f.degree_matrix(d);
        let gm = g.degree_matrix(d);
        let (da, db, dc) = (a.dim(d), b.dim(d), c.dim(d));
        let rf = if da == 0 || db == 0 { 0 } else { fm.rank() };
        let rg = if db == 0 || dc == 0 { 0 } else { gm.rank() };
        let comp_zero = da == 0 || dc == 0 || gm.mul(&fm).map(|m| m.is_zero()).unwrap_or(false);
        let ok = rf == da && rg == dc && db == da + dc && comp_zero;
        if !ok {
            failures.push(d);
        }
    }
    SesCheck {
        degrees,
        exact: failures.is_empty(),
        failures,
    }
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
    fn presentation_examples() {
        let r = ring(2, &["x", "y"], &["x^2", "y^2"], 6);
        let k = GradedModule::cyclic_from_strings(r.clone(), &["x", "y"]).unwrap();
        assert_eq!(k.hilbert(4), vec![(0, 1), (1, 0), (2, 0), (3, 0), (4, 0)]);
        let free = GradedModule::free(r.clone(), vec![0]);
        assert_eq!(free.hilbert(3), vec![(0, 1), (1, 2), (2, 1), (3, 0)]);

        let a = ring(3, &["x", "y"], &["xy"], 6);
        let m = GradedModule::cyclic_from_strings(a, &["x"]).unwrap();
        assert!(m.hilbert(6).iter().all(|&(_, d)| d == 1));
    }

    #[test]
    fn inhomogeneous_relations_rejected() {
        let r = ring(3, &["x", "y"], &[], 4);
        let bad = vec![vec!["x".to_string(), "y^2".to_string()]];
        assert!(GradedModule::from_presentation(r.clone(), vec![0, 0], &bad).is_err());
        assert!(GradedModule::from_presentation(r, vec![0], &[vec!["x+y^2".into()]]).is_err());
    }

    #[test]
    fn minimal_generators_drop_redundant_ones() {
        let r = ring(2, &["x", "y"], &[], 4);
        // generators e0 (deg 0), e1 (deg 1) with relation e1 = x*e0
        let rel = vec![vec!["x".to_string(), "1".to_string()]];
        let m = GradedModule::from_presentation(r, vec![0, 1], &rel).unwrap();
        assert_eq!(m.minimal_generators(), vec![0]);
    }

    #[test]
    fn tensor_product_dims() {
        let a = ring(3, &["x", "y"], &["xy"], 6);
        let m = GradedModule::cyclic_from_strings(a.clone(), &["x"]).unwrap();
        let n = GradedModule::cyclic_from_strings(a, &["x+y"]).unwrap();
        let t = m.tensor(&n);
        assert_eq!(t.hilbert(3), vec![(0, 1), (1, 0), (2, 0), (3, 0)]);
    }

    #[test]
    fn lift_to_ambient_examples() {
        let a = ring(3, &["x", "y"], &["xy"], 6);
        let r = GradedModule::free(a.clone(), vec![0]);
        let l = r.lift_to_ambient().unwrap();
        assert_eq!(l.hilbert(6), r.hilbert(6));
        let m = GradedModule::cyclic_from_strings(a, &["x"]).unwrap();
        let lm = m.lift_to_ambient().unwrap();
        assert_eq!(lm.hilbert(6), m.hilbert(6));
        assert_eq!(lm.relations().columns.len(), 2);
    }

    #[test]
    fn split_sequence_is_exact() {
        let a = ring(3, &["x", "y"], &["xy"], 5);
        let m = GradedModule::cyclic_from_strings(a.clone(), &["x"]).unwrap();
        let p = GradedModule::free(a.clone(), vec![1]);
        let sum = m.direct_sum(&p);
        let inc = ModuleMap::new(&m, &sum, vec![FreeElem::basis(sum.generators(), 0, &a)]);
        let proj = ModuleMap::new(
            &sum,
            &p,
            vec![FreeElem::zero(0), FreeElem::basis(p.generators(), 0, &a)],
        );
        assert!(inc.is_well_defined() && proj.is_well_defined());
        assert!(verify_short_exact(&inc, &proj).exact);
    }
}
