//! Standard-graded polynomial rings and degree-truncated quotients `S/I`.
//!
//! Normal forms come from degreewise linear algebra: `I_d` is row reduced
//! inside `S_d`, the non-pivot monomials form the basis of `R_d`, and a
//! monomial reduces to minus the non-pivot part of its rref row.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{EchelonSpace, Matrix};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};

pub const DEFAULT_DEGREE_BOUND: usize = 12;

/// Sparse coordinate vector: `(index, nonzero coefficient)` pairs.
pub type SparseVec = Vec<(u32, u32)>;

/// `k[x_1..x_n]` with every variable in degree 1, truncated at degree `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: PrimeField,
    names: Vec<String>,
    degree_bound: usize,
}

impl PolyRing {
    pub fn new(characteristic: u32, names: Vec<String>, degree_bound: usize) -> Result<Self> {
        let field = PrimeField::new(characteristic)?;
        if degree_bound < 1 {
            return Err(Error::Parse("degree bound must be at least 1".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(Error::Parse(format!("bad variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::Parse(format!("duplicate variable {n}")));
            }
        }
        Ok(Self {
            field,
            names,
            degree_bound,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    /// Monomials of degree `d` in lexicographic order.
    pub fn monomial_basis(&self, d: usize) -> Result<Vec<Monomial>> {
        if d > self.degree_bound {
            return Err(Error::DegreeBoundExceeded {
                degree: d as i64,
                bound: self.degree_bound,
            });
        }
        Ok(monomials_of_degree(self.nvars(), d))
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        Polynomial::parse(self.field, &self.names, src)
    }
}

/// A homogeneous element of `R_deg`, as coordinates over the chosen
/// monomial basis of that degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    pub deg: usize,
    pub coords: Vec<u32>,
}

impl RingElem {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// The scalar value of a degree-0 element.
    pub fn constant(&self) -> u32 {
        if self.deg == 0 {
            self.coords.first().copied().unwrap_or(0)
        } else {
            0
        }
    }
}

struct DegreeData {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// positions (in `monomials`) of the basis of `R_d`
    basis: Vec<usize>,
    /// normal form of every monomial of `S_d`, sparse over the basis of `R_d`
    nf: Vec<SparseVec>,
    /// rref rows spanning `I_d`: (pivot, dense row over `S_d`)
    ideal_rows: Vec<(usize, Vec<u32>)>,
}

/// The graded ring `R = S/I` known in degrees `0..=D`.
pub struct QuotientRing {
    base: PolyRing,
    relations: Vec<Polynomial>,
    degrees: Vec<Option<DegreeData>>,
    hilbert: Vec<usize>,
    products: Vec<OnceLock<Vec<SparseVec>>>,
    ambient: OnceLock<Arc<QuotientRing>>,
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl QuotientRing {
    /// `build_quotient`: per-degree bases and normal forms of `S/I`.
    pub fn build(base: PolyRing, relations: Vec<Polynomial>) -> Result<Arc<Self>> {
        let f = base.field;
        let n = base.nvars();
        let dmax = base.degree_bound;
        let mut rels = Vec::new();
        for r in relations {
            if r.nvars() != n {
                return Err(Error::Parse("relation lives in a different polynomial ring".into()));
            }
            if r.is_zero() {
                continue;
            }
            match r.homogeneous_degree() {
                None => return Err(Error::NotHomogeneous(r.display(base.names()))),
                Some(0) => return Err(Error::ConstantGenerator),
                Some(_) => rels.push(r),
            }
        }

        let mut degrees: Vec<Option<DegreeData>> = Vec::with_capacity(dmax + 1);
        let mut hilbert = Vec::with_capacity(dmax + 1);
        let mut vanished = false;
        for d in 0..=dmax {
            if vanished {
                degrees.push(None);
                hilbert.push(0);
                continue;
            }
            let monomials = monomials_of_degree(n, d);
            let index: HashMap<Monomial, usize> =
                monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let dim = monomials.len();
            let mut space = EchelonSpace::new(f, dim);
            // x_i * I_{d-1}
            if let Some(Some(prev)) = degrees.last() {
                for (_, row) in &prev.ideal_rows {
                    for v in 0..n {
                        let mut w = vec![0u32; dim];
                        for (j, &c) in row.iter().enumerate() {
                            if c != 0 {
                                let m = prev.monomials[j].mul(&Monomial::variable(n, v));
                                w[index[&m]] = c;
                            }
                        }
                        space.insert(&w);
                    }
                }
            }
            for r in rels.iter().filter(|r| r.homogeneous_degree() == Some(d)) {
                let mut w = vec![0u32; dim];
                for (m, c) in r.terms() {
                    w[index[m]] = c;
                }
                space.insert(&w);
            }
            let ideal_rows = full_rref(f, &space);
            let mut pivot_row = vec![None; dim];
            for (k, (p, _)) in ideal_rows.iter().enumerate() {
                pivot_row[*p] = Some(k);
            }
            let basis: Vec<usize> = (0..dim).filter(|&c| pivot_row[c].is_none()).collect();
            let mut basis_pos = vec![usize::MAX; dim];
            for (k, &c) in basis.iter().enumerate() {
                basis_pos[c] = k;
            }
            let nf: Vec<SparseVec> = (0..dim)
                .map(|c| match pivot_row[c] {
                    None => vec![(basis_pos[c] as u32, 1)],
                    Some(k) => {
                        let row = &ideal_rows[k].1;
                        basis
                            .iter()
                            .enumerate()
                            .filter(|(_, &b)| row[b] != 0)
                            .map(|(pos, &b)| (pos as u32, f.neg(row[b])))
                            .collect()
                    }
                })
                .collect();
            hilbert.push(basis.len());
            if basis.is_empty() && d > 0 {
                vanished = true;
            }
            degrees.push(Some(DegreeData {
                monomials,
                index,
                basis,
                nf,
                ideal_rows,
            }));
        }
        let products = (0..(dmax + 1) * (dmax + 1)).map(|_| OnceLock::new()).collect();
        Ok(Arc::new(Self {
            base,
            relations: rels,
            degrees,
            hilbert,
            products,
            ambient: OnceLock::new(),
        }))
    }

    /// Parse relation strings against `base` and build the quotient.
    /// `F_p[vars]/(relations)` with degree bound `d`.
    pub fn parse(p: u32, vars: &[&str], relations: &[&str], d: usize) -> Result<Arc<Self>> {
        let base = PolyRing::new(p, vars.iter().map(|s| s.to_string()).collect(), d)?;
        Self::from_strings(base, relations)
    }

    pub fn from_strings(base: PolyRing, relations: &[&str]) -> Result<Arc<Self>> {
        let rels = relations.iter().map(|s| base.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::build(base, rels)
    }

    pub fn base(&self) -> &PolyRing {
        &self.base
    }

    pub fn field(&self) -> PrimeField {
        self.base.field
    }

    pub fn characteristic(&self) -> u32 {
        self.base.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    pub fn names(&self) -> &[String] {
        self.base.names()
    }

    pub fn degree_bound(&self) -> usize {
        self.base.degree_bound
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// `dim_k R_d`; zero above the degree bound is not implied, so callers
    /// must stay within `0..=D`.
    pub fn dim(&self, d: usize) -> usize {
        self.hilbert[d]
    }

    pub fn hilbert_function(&self) -> &[usize] {
        &self.hilbert
    }

    /// The largest degree with `R_d != 0`, when `R` visibly vanishes in
    /// some degree `<= D` (then `R` is artinian).
    pub fn top_degree(&self) -> Option<usize> {
        let z = self.hilbert.iter().position(|&h| h == 0)?;
        Some(z - 1)
    }

    pub fn is_artinian(&self) -> bool {
        self.top_degree().is_some()
    }

    /// Is `R_d` known to vanish (inside or beyond the bound)?
    pub fn vanishes_in(&self, d: usize) -> bool {
        match self.top_degree() {
            Some(t) => d > t,
            None => false,
        }
    }

    pub fn basis_monomials(&self, d: usize) -> Vec<Monomial> {
        match &self.degrees[d] {
            Some(dd) => dd.basis.iter().map(|&i| dd.monomials[i].clone()).collect(),
            None => Vec::new(),
        }
    }

    /// Columns spanning `I_d` inside `S_d` (monomial basis of `S_d`).
    pub fn ideal_component(&self, d: usize) -> Result<Matrix> {
        self.check_degree(d)?;
        let f = self.field();
        let sdim = monomials_of_degree(self.nvars(), d).len();
        Ok(match &self.degrees[d] {
            Some(dd) => Matrix::from_columns(f, sdim, &dd.ideal_rows.iter().map(|(_, r)| r.clone()).collect::<Vec<_>>()),
            None => Matrix::identity(f, sdim),
        })
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.degree_bound() {
            return Err(Error::DegreeBoundExceeded {
                degree: d as i64,
                bound: self.degree_bound(),
            });
        }
        Ok(())
    }

    pub fn zero(&self, deg: usize) -> RingElem {
        RingElem {
            deg,
            coords: vec![0; self.dim(deg)],
        }
    }

    pub fn one(&self) -> RingElem {
        self.scalar(1)
    }

    pub fn scalar(&self, c: u32) -> RingElem {
        RingElem {
            deg: 0,
            coords: vec![c % self.characteristic()],
        }
    }

    /// The basis element `b_i` of `R_d`.
    pub fn basis_elem(&self, d: usize, i: usize) -> RingElem {
        let mut e = self.zero(d);
        e.coords[i] = 1;
        e
    }

    pub fn variable(&self, i: usize) -> Result<RingElem> {
        self.normal_form(&Polynomial::monomial(self.nvars(), Monomial::variable(self.nvars(), i)))
    }

    /// Coordinates of `f` over the chosen basis of `R_deg(f)`.
    /// The zero polynomial maps to zero in degree 0.
    pub fn normal_form(&self, f: &Polynomial) -> Result<RingElem> {
        if f.nvars() != self.nvars() {
            return Err(Error::Parse("polynomial from a different ring".into()));
        }
        if f.is_zero() {
            return Ok(self.zero(0));
        }
        let d = f
            .homogeneous_degree()
            .ok_or_else(|| Error::NotHomogeneous(f.display(self.names())))?;
        self.normal_form_in_degree(f, d)
    }

    /// Like [`normal_form`](Self::normal_form) but with an explicit degree,
    /// so zero can be placed in any degree.
    pub fn normal_form_in_degree(&self, f: &Polynomial, d: usize) -> Result<RingElem> {
        self.check_degree(d)?;
        let fld = self.field();
        let mut out = self.zero(d);
        let Some(dd) = &self.degrees[d] else {
            return Ok(out);
        };
        for (m, c) in f.terms() {
            if m.degree() != d {
                return Err(Error::NotHomogeneous(f.display(self.names())));
            }
            for &(pos, v) in &dd.nf[dd.index[m]] {
                let p = pos as usize;
                out.coords[p] = fld.mul_add(out.coords[p], c, v);
            }
        }
        Ok(out)
    }

    pub fn to_polynomial(&self, e: &RingElem) -> Polynomial {
        let f = self.field();
        let basis = self.basis_monomials(e.deg);
        Polynomial::from_terms(
            f,
            self.nvars(),
            e.coords.iter().zip(basis).filter(|(&c, _)| c != 0).map(|(&c, m)| (c, m)),
        )
    }

    pub fn display_elem(&self, e: &RingElem) -> String {
        self.to_polynomial(e).display(self.names())
    }

    /// Normal forms of `b_i * b_j` for basis elements of `R_a` and `R_b`,
    /// indexed `i * dim(b) + j`.
    fn product_table(&self, a: usize, b: usize) -> &[SparseVec] {
        let dmax = self.degree_bound();
        self.products[a * (dmax + 1) + b].get_or_init(|| {
            let (ha, hb) = (self.dim(a), self.dim(b));
            if ha == 0 || hb == 0 || a + b > dmax || self.dim(a + b) == 0 {
                return vec![Vec::new(); ha * hb];
            }
            let (da, db) = (self.degrees[a].as_ref().unwrap(), self.degrees[b].as_ref().unwrap());
            let dab = self.degrees[a + b].as_ref().unwrap();
            let mut out = Vec::with_capacity(ha * hb);
            for &i in &da.basis {
                for &j in &db.basis {
                    let m = da.monomials[i].mul(&db.monomials[j]);
                    out.push(dab.nf[dab.index[&m]].clone());
                }
            }
            out
        })
    }

    /// `b_i * b_j` as a sparse vector over the basis of `R_{a+b}`.
    pub fn mul_basis(&self, a: usize, i: usize, b: usize, j: usize) -> &SparseVec {
        &self.product_table(a, b)[i * self.dim(b) + j]
    }

    /// Product of homogeneous elements; panics beyond the degree bound.
    pub fn mul(&self, x: &RingElem, y: &RingElem) -> RingElem {
        let d = x.deg + y.deg;
        assert!(d <= self.degree_bound(), "product degree {d} beyond bound");
        let mut out = self.zero(d);
        self.mul_acc(x, y, 1, &mut out.coords);
        out
    }

    /// `acc += scale * x * y`, coordinates over `R_{deg x + deg y}`.
    pub fn mul_acc(&self, x: &RingElem, y: &RingElem, scale: u32, acc: &mut [u32]) {
        let f = self.field();
        let d = x.deg + y.deg;
        if d > self.degree_bound() || self.dim(d) == 0 {
            return;
        }
        let table = self.product_table(x.deg, y.deg);
        let hb = self.dim(y.deg);
        for (i, &cx) in x.coords.iter().enumerate() {
            if cx == 0 {
                continue;
            }
            let cxs = f.mul(cx, scale);
            for (j, &cy) in y.coords.iter().enumerate() {
                if cy == 0 {
                    continue;
                }
                let c = f.mul(cxs, cy);
                for &(pos, v) in &table[i * hb + j] {
                    let p = pos as usize;
                    acc[p] = f.mul_add(acc[p], c, v);
                }
            }
        }
    }

    pub fn add(&self, x: &RingElem, y: &RingElem) -> RingElem {
        assert_eq!(x.deg, y.deg);
        let f = self.field();
        RingElem {
            deg: x.deg,
            coords: x.coords.iter().zip(&y.coords).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, x: &RingElem, c: u32) -> RingElem {
        let f = self.field();
        RingElem {
            deg: x.deg,
            coords: x.coords.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn neg(&self, x: &RingElem) -> RingElem {
        self.scale(x, self.field().neg(1))
    }

    /// The polynomial ring `S` over which `R` is a quotient, with the same bound.
    pub fn ambient(&self) -> Arc<QuotientRing> {
        self.ambient
            .get_or_init(|| QuotientRing::build(self.base.clone(), Vec::new()).expect("polynomial ring always builds"))
            .clone()
    }

    /// Same ring with a different degree bound.
    pub fn with_degree_bound(&self, bound: usize) -> Result<Arc<QuotientRing>> {
        let base = PolyRing::new(self.characteristic(), self.names().to_vec(), bound)?;
        QuotientRing::build(base, self.relations.clone())
    }

    /// Same ring with the degree bound raised to at least `bound`.
    pub fn at_least(self: &Arc<Self>, bound: usize) -> Result<Arc<QuotientRing>> {
        if self.degree_bound() >= bound {
            Ok(self.clone())
        } else {
            self.with_degree_bound(bound)
        }
    }

    /// Same presentation (variables, relations, bound).
    pub fn same_presentation(&self, other: &QuotientRing) -> bool {
        self.base == other.base && self.relations == other.relations
    }

    pub fn describe(&self) -> String {
        let rels: Vec<String> = self.relations.iter().map(|r| r.display(self.names())).collect();
        format!(
            "F_{}[{}]/({})",
            self.characteristic(),
            self.names().join(","),
            rels.join(", ")
        )
    }
}

/// Bring an echelon space to fully reduced form, sorted by pivot.
fn full_rref(f: PrimeField, space: &EchelonSpace) -> Vec<(usize, Vec<u32>)> {
    let dim = space.ambient_dim();
    if space.dim() == 0 {
        return Vec::new();
    }
    let rows: Vec<Vec<u32>> = space_rows(space);
    let m = Matrix::from_columns(f, dim, &rows).transpose();
    let rr = m.rref();
    rr.pivots
        .iter()
        .enumerate()
        .map(|(k, &p)| (p, rr.matrix.row(k).to_vec()))
        .collect()
}

fn space_rows(space: &EchelonSpace) -> Vec<Vec<u32>> {
    space.basis_rows().map(|r| r.to_vec()).collect()
}

/// Tensor product over `k` of two graded algebras: disjoint variables and
/// the union of both relation sets. Clashing names get a `_2` suffix.
pub fn algebra_tensor(r1: &QuotientRing, r2: &QuotientRing) -> Result<Arc<QuotientRing>> {
    if r1.characteristic() != r2.characteristic() {
        return Err(Error::CharacteristicMismatch(r1.characteristic(), r2.characteristic()));
    }
    let (n1, n2) = (r1.nvars(), r2.nvars());
    let mut names: Vec<String> = r1.names().to_vec();
    for n in r2.names() {
        let mut name = n.clone();
        while names.contains(&name) || r2.names().iter().filter(|m| **m == name).count() > 1 {
            name.push_str("_2");
        }
        names.push(name);
    }
    let bound = r1.degree_bound().min(r2.degree_bound());
    let base = PolyRing::new(r1.characteristic(), names, bound)?;
    let mut rels: Vec<Polynomial> = r1.relations().iter().map(|p| p.embed(0, n1 + n2)).collect();
    rels.extend(r2.relations().iter().map(|p| p.embed(n1, n1 + n2)));
    QuotientRing::build(base, rels)
}

/// `R[t_1..t_r]`: `r` new degree-one variables, no new relations.
pub fn polynomial_extension(r: &QuotientRing, count: usize) -> Result<Arc<QuotientRing>> {
    let mut names = r.names().to_vec();
    for i in 0..count {
        let mut name = if count == 1 { "t".to_string() } else { format!("t{}", i + 1) };
        while names.contains(&name) {
            name.push('_');
        }
        names.push(name);
    }
    let total = names.len();
    let base = PolyRing::new(r.characteristic(), names, r.degree_bound())?;
    let rels = r.relations().iter().map(|p| p.embed(0, total)).collect();
    QuotientRing::build(base, rels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, vars: &[&str], rels: &[&str], d: usize) -> Arc<QuotientRing> {
        let base = PolyRing::new(p, vars.iter().map(|s| s.to_string()).collect(), d).unwrap();
        QuotientRing::from_strings(base, rels).unwrap()
    }

    #[test]
    fn monomial_basis_counts() {
        let s = PolyRing::new(2, vec!["x".into(), "y".into()], 4).unwrap();
        assert_eq!(s.monomial_basis(0).unwrap().len(), 1);
        assert_eq!(s.monomial_basis(2).unwrap().len(), 3);
        assert!(s.monomial_basis(5).is_err());
        let s3 = PolyRing::new(2, vec!["x".into(), "y".into(), "z".into()], 4).unwrap();
        assert_eq!(s3.monomial_basis(2).unwrap().len(), 6);
    }

    #[test]
    fn ideal_components() {
        let r = ring(2, &["x", "y"], &["x^2", "y^2"], 5);
        assert_eq!(r.ideal_component(2).unwrap().rank(), 2);
        assert_eq!(r.ideal_component(0).unwrap().rank(), 0);
        let r = ring(2, &["x", "y"], &["xy"], 5);
        let i3 = r.ideal_component(3).unwrap();
        assert_eq!(i3.rank(), 2);
    }

    #[test]
    fn hilbert_functions() {
        let r = ring(2, &["x", "y"], &["x^2", "y^2"], 6);
        assert_eq!(r.hilbert_function(), &[1, 2, 1, 0, 0, 0, 0]);
        assert_eq!(r.top_degree(), Some(2));
        let r = ring(3, &["x", "y"], &["xy"], 6);
        assert_eq!(r.hilbert_function(), &[1, 2, 2, 2, 2, 2, 2]);
        assert!(!r.is_artinian());
        let s = ring(3, &["x", "y"], &[], 4);
        assert_eq!(s.hilbert_function(), &[1, 2, 3, 4, 5]);
    }

    #[test]
    fn rejects_bad_generators() {
        let base = PolyRing::new(2, vec!["x".into(), "y".into()], 4).unwrap();
        assert!(matches!(
            QuotientRing::from_strings(base.clone(), &["x^2 + y"]),
            Err(Error::NotHomogeneous(_))
        ));
        assert!(matches!(QuotientRing::from_strings(base, &["1"]), Err(Error::ConstantGenerator)));
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(2, &["x", "y"], &["x^2", "y^2"], 4);
        let nf = |s: &str| r.normal_form(&r.base().parse(s).unwrap()).unwrap();
        assert!(nf("x^2").is_zero());
        let xy = nf("x*y");
        assert_eq!(xy.coords, vec![1]);
        assert_eq!(nf("x^2 + x*y"), xy);
        assert!(r.normal_form(&r.base().parse("x^5").unwrap()).is_err());
    }

    #[test]
    fn non_monomial_ideal_normal_form() {
        // x^2 - y^2: basis of degree 2 is {xy, y^2}; x^2 reduces to y^2
        let r = ring(3, &["x", "y"], &["x^2 - y^2"], 4);
        let x2 = r.normal_form(&r.base().parse("x^2").unwrap()).unwrap();
        let y2 = r.normal_form(&r.base().parse("y^2").unwrap()).unwrap();
        assert_eq!(x2, y2);
        assert_eq!(r.hilbert_function(), &[1, 2, 2, 2, 2]);
    }

    #[test]
    fn tensor_and_extension_hilbert() {
        let a = ring(2, &["x"], &["x^2"], 6);
        let b = ring(2, &["y"], &["y^2"], 6);
        let c = ring(2, &["y"], &["y^3"], 6);
        assert_eq!(&algebra_tensor(&a, &b).unwrap().hilbert_function()[..4], &[1, 2, 1, 0]);
        assert_eq!(&algebra_tensor(&a, &c).unwrap().hilbert_function()[..5], &[1, 2, 2, 1, 0]);
        let k = ring(2, &[], &[], 6);
        assert_eq!(algebra_tensor(&a, &k).unwrap().hilbert_function(), a.hilbert_function());
        let e = polynomial_extension(&a, 1).unwrap();
        assert_eq!(e.names(), &["x".to_string(), "t".to_string()]);
        assert_eq!(&e.hilbert_function()[..4], &[1, 2, 2, 2]);
        let ab = algebra_tensor(&a, &b).unwrap();
        assert_eq!(&polynomial_extension(&ab, 1).unwrap().hilbert_function()[..4], &[1, 3, 4, 4]);
        let f3 = ring(3, &["y"], &[], 4);
        assert!(algebra_tensor(&a, &f3).is_err());
    }

    #[test]
    fn clashing_names_are_renamed() {
        let a = ring(2, &["x"], &["x^2"], 4);
        let t = algebra_tensor(&a, &a).unwrap();
        assert_eq!(t.names(), &["x".to_string(), "x_2".to_string()]);
        assert_eq!(&t.hilbert_function()[..4], &[1, 2, 1, 0]);
    }
}
