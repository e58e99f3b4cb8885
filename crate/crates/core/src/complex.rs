//! Bounded-below complexes of graded free modules and chain maps.
//!
//! Sign conventions, fixed throughout:
//! - a chain map `φ: F -> Σ^n G` has components `φ_j: F_j -> G_{j-n}` and
//!   satisfies `∂^G φ = (-1)^n φ ∂^F`;
//! - tensor differential `∂(u ⊗ v) = ∂u ⊗ v + (-1)^{|u|} u ⊗ ∂v`;
//! - the map induced by `η` on factor `i` of a tensor product carries the
//!   sign `(-1)^{n · Σ_{l<i} |u_l|}`;
//! - `cone(φ)_j = G_{j-n} ⊕ F_{j-1}` with differential
//!   `[[(-1)^n ∂^G, φ], [0, -∂^F]]`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::free::{FreeElem, FreeMap, FreeModule, RingRef};
use crate::linalg::Matrix;
use crate::resolution::FreeResolution;
use crate::ring::{algebra_tensor, QuotientRing, RingElem};
use crate::sparse;

/// Generator provenance in a tensor product: `(homological degree,
/// generator index)` per factor.
pub type Label = Vec<(usize, usize)>;

#[derive(Clone, Debug)]
pub struct FreeComplex {
    pub ring: RingRef,
    /// `F_0, ..., F_len`
    pub modules: Vec<FreeModule>,
    /// `∂_j: F_j -> F_{j-1}` at index `j - 1`
    pub differentials: Vec<FreeMap>,
    /// the complex is zero past `len`; otherwise `len` is a window
    pub bounded: bool,
    pub labels: Vec<Vec<Label>>,
}

fn plain_labels(modules: &[FreeModule]) -> Vec<Vec<Label>> {
    modules
        .iter()
        .enumerate()
        .map(|(j, m)| (0..m.rank()).map(|p| vec![(j, p)]).collect())
        .collect()
}

fn sign(field: PrimeField, odd: bool) -> u32 {
    if odd {
        field.neg(1)
    } else {
        1
    }
}

impl FreeComplex {
    pub fn new(ring: RingRef, modules: Vec<FreeModule>, differentials: Vec<FreeMap>, bounded: bool) -> Result<Self> {
        if modules.is_empty() || differentials.len() + 1 != modules.len() {
            return Err(Error::DimensionMismatch {
                expected: modules.len().saturating_sub(1),
                found: differentials.len(),
            });
        }
        for (j, d) in differentials.iter().enumerate() {
            if d.source != modules[j + 1] || d.target != modules[j] {
                return Err(Error::Invariant(format!("differential {} has the wrong shape", j + 1)));
            }
        }
        let labels = plain_labels(&modules);
        Ok(Self {
            ring,
            modules,
            differentials,
            bounded,
            labels,
        })
    }

    pub fn from_resolution(res: &FreeResolution) -> Self {
        let modules = res.modules.clone();
        let labels = plain_labels(&modules);
        Self {
            ring: res.ring.clone(),
            modules,
            differentials: res.differentials.clone(),
            bounded: res.pd.is_some(),
            labels,
        }
    }

    pub fn len(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.modules.iter().all(|m| m.is_zero())
    }

    /// `F_j` when known (zero past the end of a bounded complex).
    pub fn module(&self, j: usize) -> Option<FreeModule> {
        match self.modules.get(j) {
            Some(m) => Some(m.clone()),
            None if self.bounded => Some(FreeModule::default()),
            None => None,
        }
    }

    pub fn rank(&self, j: usize) -> usize {
        self.modules.get(j).map_or(0, |m| m.rank())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    pub fn differential(&self, j: usize) -> Option<&FreeMap> {
        if j == 0 {
            return None;
        }
        self.differentials.get(j - 1)
    }

    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[0].compose(&self.ring, &w[1]).is_zero())
    }

    /// Every differential entry lies in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().all(|d| d.is_minimal())
    }

    /// `F_{<n}`: degrees `0..n`, zero above.
    pub fn truncate_below(&self, n: usize) -> FreeComplex {
        assert!(n >= 1);
        let keep = n.min(self.modules.len());
        FreeComplex {
            ring: self.ring.clone(),
            modules: self.modules[..keep].to_vec(),
            differentials: self.differentials[..keep - 1].to_vec(),
            bounded: self.bounded || n <= self.modules.len(),
            labels: self.labels[..keep].to_vec(),
        }
    }

    /// The complex restricted to degrees `0..=len`, marked as a window.
    pub fn window(&self, len: usize) -> FreeComplex {
        let keep = (len + 1).min(self.modules.len());
        FreeComplex {
            ring: self.ring.clone(),
            modules: self.modules[..keep].to_vec(),
            differentials: self.differentials[..keep - 1].to_vec(),
            bounded: self.bounded && keep == self.modules.len(),
            labels: self.labels[..keep].to_vec(),
        }
    }

    /// Internal degrees in which degree-`j` homology is exactly computable.
    pub fn homology_range(&self, j: usize) -> Option<(i64, i64)> {
        let fj = self.modules.get(j)?;
        let lo = fj.min_degree()? as i64;
        let hi = match fj.support_top(&self.ring) {
            Some(t) => t,
            None => {
                let below = if j > 0 { self.modules[j - 1].top(&self.ring) } else { i64::MAX };
                fj.top(&self.ring).min(below)
            }
        };
        Some((lo, hi))
    }

    /// `dim H_j` in internal degree `d`; needs `∂_{j+1}` unless bounded.
    pub fn homology_dim(&self, j: usize, d: i64) -> Option<usize> {
        let ring = &self.ring;
        let f = ring.field();
        let fj = self.modules.get(j)?;
        let lj = fj.layout(ring, d);
        if lj.dim == 0 {
            return Some(0);
        }
        let kernel = match self.differential(j) {
            Some(dm) => {
                let lt = self.modules[j - 1].layout(ring, d);
                lj.dim - sparse::rank(f, &dm.sparse_columns(ring, &lj, &lt))
            }
            None => lj.dim,
        };
        let image = match self.differential(j + 1) {
            Some(dm) => {
                let ls = self.modules[j + 1].layout(ring, d);
                sparse::rank(f, &dm.sparse_columns(ring, &ls, &lj))
            }
            None if self.bounded => 0,
            None => return None,
        };
        Some(kernel - image)
    }

    /// Total `dim_k H_j` over the computable range.
    pub fn homology_total(&self, j: usize) -> Option<usize> {
        let Some((lo, hi)) = self.homology_range(j) else {
            return self.module(j).map(|_| 0);
        };
        let mut total = 0;
        for d in lo..=hi {
            total += self.homology_dim(j, d)?;
        }
        Some(total)
    }

    /// `sup{j : H_j ≠ 0}` over the degrees where homology is known.
    pub fn homology_sup(&self) -> Option<usize> {
        (0..=self.len()).rev().find(|&j| self.homology_total(j).is_some_and(|h| h > 0))
    }

    /// Homotopy-equivalent minimal complex obtained by cancelling unit
    /// entries of the differentials, lowest homological degree first.
    /// For a window the top module is dropped, since cancellations against
    /// the unknown next differential could still shrink it.
    pub fn minimize(&self) -> FreeComplex {
        let ring = &self.ring;
        let f = ring.field();
        let len = self.len();
        let mut alive: Vec<Vec<bool>> = self.modules.iter().map(|m| vec![true; m.rank()]).collect();
        let mut cols: Vec<Vec<BTreeMap<usize, RingElem>>> = self
            .differentials
            .iter()
            .map(|d| {
                d.columns
                    .iter()
                    .map(|c| c.entries.iter().filter(|(_, e)| !e.is_zero()).cloned().collect())
                    .collect()
            })
            .collect();
        for j in 1..=len {
            let degs_src = &self.modules[j].degrees;
            let degs_tgt = &self.modules[j - 1].degrees;
            loop {
                let mut unit = None;
                'find: for (c, col) in cols[j - 1].iter().enumerate() {
                    if !alive[j][c] {
                        continue;
                    }
                    for (&r, e) in col {
                        if alive[j - 1][r] && e.deg == 0 && e.constant() != 0 {
                            unit = Some((r, c, e.constant()));
                            break 'find;
                        }
                    }
                }
                let Some((r, c, u)) = unit else { break };
                let uinv = f.neg(f.inv(u));
                let gamma: Vec<(usize, RingElem)> = cols[j - 1][c]
                    .iter()
                    .filter(|(a, _)| **a != r && alive[j - 1][**a])
                    .map(|(a, e)| (*a, e.clone()))
                    .collect();
                for b in 0..cols[j - 1].len() {
                    if b == c || !alive[j][b] {
                        continue;
                    }
                    let Some(beta) = cols[j - 1][b].get(&r).cloned() else { continue };
                    for (a, g) in &gamma {
                        let deg = (degs_src[b] - degs_tgt[*a]) as i64;
                        debug_assert_eq!(deg, (g.deg + beta.deg) as i64);
                        if deg as usize > ring.degree_bound() {
                            continue;
                        }
                        let prod = ring.scale(&ring.mul(g, &beta), uinv);
                        let entry = cols[j - 1][b].entry(*a).or_insert_with(|| ring.zero(deg as usize));
                        *entry = ring.add(entry, &prod);
                        if entry.is_zero() {
                            cols[j - 1][b].remove(a);
                        }
                    }
                }
                alive[j][c] = false;
                alive[j - 1][r] = false;
            }
        }
        let keep_len = if self.bounded { len } else { len.saturating_sub(1) };
        let index: Vec<Vec<Option<usize>>> = alive
            .iter()
            .map(|a| {
                let mut k = 0;
                a.iter()
                    .map(|&x| {
                        x.then(|| {
                            k += 1;
                            k - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let modules: Vec<FreeModule> = (0..=keep_len)
            .map(|j| {
                FreeModule::new(
                    self.modules[j]
                        .degrees
                        .iter()
                        .zip(&alive[j])
                        .filter(|(_, &a)| a)
                        .map(|(&g, _)| g)
                        .collect(),
                )
            })
            .collect();
        let labels = (0..=keep_len)
            .map(|j| {
                self.labels[j]
                    .iter()
                    .zip(&alive[j])
                    .filter(|(_, &a)| a)
                    .map(|(l, _)| l.clone())
                    .collect()
            })
            .collect();
        let differentials = (1..=keep_len)
            .map(|j| {
                let columns = cols[j - 1]
                    .iter()
                    .enumerate()
                    .filter(|(c, _)| alive[j][*c])
                    .map(|(c, col)| FreeElem {
                        deg: self.modules[j].degrees[c] as i64,
                        entries: col
                            .iter()
                            .filter_map(|(r, e)| index[j - 1][*r].map(|k| (k, e.clone())))
                            .collect(),
                    })
                    .collect();
                FreeMap::new(modules[j].clone(), modules[j - 1].clone(), columns)
            })
            .collect();
        FreeComplex {
            ring: self.ring.clone(),
            modules,
            differentials,
            bounded: self.bounded,
            labels,
        }
    }

    /// Betti numbers of the minimal model.
    pub fn minimal_ranks(&self) -> Vec<usize> {
        if self.is_minimal() {
            self.ranks()
        } else {
            self.minimize().ranks()
        }
    }

    /// The cokernel of `∂_1` as a presented module.
    pub fn cokernel_module(&self) -> Result<crate::module::GradedModule> {
        let rels = self.differential(1).map(|d| d.columns.clone()).unwrap_or_default();
        crate::module::GradedModule::new(self.ring.clone(), self.modules[0].degrees.clone(), rels)
    }

    fn label_index(&self, j: usize) -> HashMap<&Label, usize> {
        self.labels[j].iter().enumerate().map(|(i, l)| (l, i)).collect()
    }
}

/// Components `φ_j: F_j -> G_{j - shift}` for `j = shift ..= top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub shift: usize,
    pub components: Vec<FreeMap>,
}

impl ChainMap {
    pub fn top(&self) -> usize {
        self.shift + self.components.len() - 1
    }

    /// Internal degree drop of every component.
    pub fn degree(&self) -> i32 {
        self.components.first().map_or(0, |c| c.degree)
    }

    pub fn component(&self, j: usize) -> Option<&FreeMap> {
        if j < self.shift {
            return None;
        }
        self.components.get(j - self.shift)
    }

    pub fn identity(c: &FreeComplex) -> ChainMap {
        ChainMap {
            shift: 0,
            components: c.modules.iter().map(|m| FreeMap::identity(m, &c.ring)).collect(),
        }
    }

    pub fn zero(source: &FreeComplex, target: &FreeComplex, shift: usize, degree: i32) -> ChainMap {
        let top = source.len().min(target.len() + shift);
        ChainMap {
            shift,
            components: (shift..=top.max(shift))
                .map(|j| {
                    FreeMap::zero_with_degree(
                        source.module(j).unwrap_or_default(),
                        target.module(j - shift).unwrap_or_default(),
                        degree,
                    )
                })
                .collect(),
        }
    }

    /// Checks `∂^G φ_j = (-1)^n φ_{j-1} ∂^F_j` wherever both sides are known.
    pub fn verify(&self, source: &FreeComplex, target: &FreeComplex) -> Result<()> {
        let ring = &source.ring;
        let n = self.shift;
        for (k, c) in self.components.iter().enumerate() {
            let j = n + k;
            if Some(&c.source) != source.modules.get(j) {
                return Err(Error::NotAChainMap(format!("component {j} has the wrong source")));
            }
        }
        for j in (n + 1)..=self.top().min(source.len()) {
            let phi_j = &self.components[j - n];
            let lhs = match target.differential(j - n) {
                Some(dg) => dg.compose(ring, phi_j),
                None if target.bounded => FreeMap::zero_with_degree(phi_j.source.clone(), FreeModule::default(), phi_j.degree),
                None => continue,
            };
            let Some(phi_prev) = self.component(j - 1) else {
                if lhs.is_zero() {
                    continue;
                }
                return Err(Error::NotAChainMap(format!("degree {j}: ∂φ ≠ 0 below the shift")));
            };
            let rhs = phi_prev.compose(ring, source.differential(j).expect("j ≤ len"));
            let rhs = if n % 2 == 1 { rhs.scale(ring, ring.field().neg(1)) } else { rhs };
            if lhs.columns.len() != rhs.columns.len()
                || lhs.columns.iter().zip(&rhs.columns).any(|(a, b)| !a.add(ring, &b.scale(ring, ring.field().neg(1))).is_zero())
            {
                return Err(Error::NotAChainMap(format!("commutation fails in degree {j}")));
            }
        }
        Ok(())
    }

    /// Degreewise surjectivity via Nakayama: the constant part of every
    /// component has full row rank.
    pub fn is_surjective(&self, field: PrimeField) -> bool {
        self.components.iter().all(|c| {
            let m = c.constant_part(field);
            m.rows() == 0 || m.rank() == m.rows()
        })
    }

    /// Components with index `j >= from` are isomorphisms.
    pub fn is_iso_from(&self, field: PrimeField, from: usize) -> bool {
        self.components.iter().enumerate().all(|(k, c)| {
            if self.shift + k < from {
                return true;
            }
            let m = c.constant_part(field);
            m.rows() == m.cols() && m.rank() == m.rows()
        })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, ring: &QuotientRing, inner: &ChainMap) -> ChainMap {
        let shift = self.shift + inner.shift;
        let mut components = Vec::new();
        for (k, c) in inner.components.iter().enumerate() {
            let j = inner.shift + k;
            if j < shift {
                continue;
            }
            let Some(outer) = self.component(j - inner.shift) else { break };
            components.push(outer.compose(ring, c));
        }
        ChainMap { shift, components }
    }

    pub fn scale(&self, ring: &QuotientRing, c: u32) -> ChainMap {
        ChainMap {
            shift: self.shift,
            components: self.components.iter().map(|m| m.scale(ring, c)).collect(),
        }
    }

    fn equal(&self, ring: &QuotientRing, other: &ChainMap) -> bool {
        let neg = ring.field().neg(1);
        self.shift == other.shift
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.add(ring, &b.scale(ring, neg)).is_zero())
    }

    /// The sign `ε` with `self ∘ other = ε · other ∘ self`, if any.
    pub fn commutation_sign(&self, ring: &QuotientRing, other: &ChainMap) -> Option<u32> {
        let ab = self.compose(ring, other);
        let ba = other.compose(ring, self);
        let n = ab.components.len().min(ba.components.len());
        let ab = ChainMap {
            shift: ab.shift,
            components: ab.components[..n].to_vec(),
        };
        let ba = ChainMap {
            shift: ba.shift,
            components: ba.components[..n].to_vec(),
        };
        let neg = ring.field().neg(1);
        if ab.equal(ring, &ba) {
            Some(1)
        } else if ab.equal(ring, &ba.scale(ring, neg)) {
            Some(neg)
        } else {
            None
        }
    }
}

/// Maps ring elements of a factor into a tensor-product ring.
struct Embedder<'a> {
    from: &'a QuotientRing,
    to: &'a QuotientRing,
    offset: usize,
    cache: HashMap<RingElem, RingElem>,
}

impl<'a> Embedder<'a> {
    fn new(from: &'a QuotientRing, to: &'a QuotientRing, offset: usize) -> Self {
        Self {
            from,
            to,
            offset,
            cache: HashMap::new(),
        }
    }

    fn embed(&mut self, e: &RingElem) -> RingElem {
        if let Some(x) = self.cache.get(e) {
            return x.clone();
        }
        let p = self.from.to_polynomial(e).embed(self.offset, self.to.nvars());
        let x = self
            .to
            .normal_form_in_degree(&p, e.deg)
            .expect("tensor ring covers the factor degrees");
        self.cache.insert(e.clone(), x.clone());
        x
    }
}

/// Compositions `(a_1, ..., a_c)` of `j` with `a_l <= caps[l]`, in lex order.
fn compositions(j: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    fn go(j: usize, caps: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if caps.len() == 1 {
            if j <= caps[0] {
                cur.push(j);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for a in 0..=j.min(caps[0]) {
            cur.push(a);
            go(j - a, &caps[1..], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(j, caps, &mut Vec::new(), &mut out);
    out
}

/// Tensor product over `k` of complexes over possibly different algebras;
/// the result lives over `ring`, which must be the iterated
/// [`algebra_tensor`] of the factor rings.
pub fn tensor_into(ring: RingRef, factors: &[&FreeComplex]) -> Result<FreeComplex> {
    let p = ring.characteristic();
    for fc in factors {
        if fc.ring.characteristic() != p {
            return Err(Error::CharacteristicMismatch(p, fc.ring.characteristic()));
        }
    }
    let nv: usize = factors.iter().map(|fc| fc.ring.nvars()).sum();
    if nv != ring.nvars() {
        return Err(Error::Invariant("tensor ring does not match the factors".into()));
    }
    let field = ring.field();
    let caps: Vec<usize> = factors.iter().map(|fc| fc.len()).collect();
    let unbounded: Vec<usize> = factors.iter().filter(|fc| !fc.bounded).map(|fc| fc.len()).collect();
    let bounded = unbounded.is_empty();
    let len = if bounded { caps.iter().sum() } else { *unbounded.iter().min().expect("nonempty") };

    let mut offsets = Vec::with_capacity(factors.len());
    let mut acc = 0;
    for fc in factors {
        offsets.push(acc);
        acc += fc.ring.nvars();
    }
    let mut embedders: Vec<Embedder> = factors
        .iter()
        .zip(&offsets)
        .map(|(fc, &o)| Embedder::new(&fc.ring, &ring, o))
        .collect();

    let mut modules = Vec::with_capacity(len + 1);
    let mut labels: Vec<Vec<Label>> = Vec::with_capacity(len + 1);
    for j in 0..=len {
        let mut degs = Vec::new();
        let mut labs = Vec::new();
        for comp in compositions(j, &caps) {
            let mut tuples: Vec<(i32, Label)> = vec![(0, Vec::new())];
            for (l, &a) in comp.iter().enumerate() {
                let m = &factors[l].modules[a];
                let mut next = Vec::with_capacity(tuples.len() * m.rank());
                for (g, lab) in &tuples {
                    for (q, &h) in m.degrees.iter().enumerate() {
                        let mut lab2 = lab.clone();
                        lab2.push((a, q));
                        next.push((g + h, lab2));
                    }
                }
                tuples = next;
            }
            for (g, lab) in tuples {
                degs.push(g);
                labs.push(lab);
            }
        }
        modules.push(FreeModule::new(degs));
        labels.push(labs);
    }

    let mut differentials = Vec::with_capacity(len);
    for j in 1..=len {
        let index: HashMap<&Label, usize> = labels[j - 1].iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut columns = Vec::with_capacity(labels[j].len());
        for (c, lab) in labels[j].iter().enumerate() {
            let mut out: BTreeMap<usize, RingElem> = BTreeMap::new();
            let mut before = 0;
            for (i, &(a, q)) in lab.iter().enumerate() {
                if a > 0 {
                    let s = sign(field, before % 2 == 1);
                    let col = &factors[i].differentials[a - 1].columns[q];
                    for (r, e) in &col.entries {
                        let mut tl = lab.clone();
                        tl[i] = (a - 1, *r);
                        let row = index[&tl];
                        let x = ring.scale(&embedders[i].embed(e), s);
                        let slot = out.entry(row).or_insert_with(|| ring.zero(x.deg));
                        *slot = ring.add(slot, &x);
                    }
                }
                before += a;
            }
            columns.push(FreeElem {
                deg: modules[j].degrees[c] as i64,
                entries: out.into_iter().filter(|(_, e)| !e.is_zero()).collect(),
            });
        }
        differentials.push(FreeMap::new(modules[j].clone(), modules[j - 1].clone(), columns));
    }
    Ok(FreeComplex {
        ring,
        modules,
        differentials,
        bounded,
        labels,
    })
}

/// The iterated algebra tensor product of the factor rings.
pub fn tensor_ring(rings: &[&RingRef]) -> Result<RingRef> {
    let mut acc = rings[0].clone();
    for r in &rings[1..] {
        acc = algebra_tensor(&acc, r)?;
    }
    Ok(acc)
}

pub fn tensor_many(factors: &[&FreeComplex]) -> Result<FreeComplex> {
    let rings: Vec<&RingRef> = factors.iter().map(|f| &f.ring).collect();
    tensor_into(tensor_ring(&rings)?, factors)
}

pub fn tensor_complexes(f: &FreeComplex, g: &FreeComplex) -> Result<FreeComplex> {
    tensor_many(&[f, g])
}

/// `id ⊗ … ⊗ η ⊗ … ⊗ id` on a tensor product built by [`tensor_into`],
/// where `η: F^{(i)} -> Σ^n F^{(i)}` acts on factor `factor`.
pub fn induced_map(
    product: &FreeComplex,
    factor: usize,
    factor_complex: &FreeComplex,
    var_offset: usize,
    eta: &ChainMap,
) -> ChainMap {
    let ring = &product.ring;
    let field = ring.field();
    let n = eta.shift;
    let t = eta.degree();
    let mut emb = Embedder::new(&factor_complex.ring, ring, var_offset);
    let mut components = Vec::new();
    for j in n..=product.len() {
        let index = product.label_index(j - n);
        let mut columns = Vec::with_capacity(product.labels[j].len());
        for (c, lab) in product.labels[j].iter().enumerate() {
            let deg = product.modules[j].degrees[c] as i64 - t as i64;
            let (a, q) = lab[factor];
            let mut elem = FreeElem::zero(deg);
            if let Some(comp) = eta.component(a) {
                let before: usize = lab[..factor].iter().map(|(b, _)| b).sum();
                let s = sign(field, (n * before) % 2 == 1);
                for (r, e) in &comp.columns[q].entries {
                    let mut tl = lab.clone();
                    tl[factor] = (a - n, *r);
                    if let Some(&row) = index.get(&tl) {
                        elem.entries.push((row, ring.scale(&emb.embed(e), s)));
                    }
                }
                elem.entries.sort_by_key(|(r, _)| *r);
            }
            columns.push(elem);
        }
        components.push(FreeMap::with_degree(
            product.modules[j].clone(),
            product.modules[j - n].clone(),
            columns,
            t,
        ));
    }
    ChainMap { shift: n, components }
}

/// Mapping cone of `φ: F -> Σ^n G`.
pub fn cone(source: &FreeComplex, target: &FreeComplex, phi: &ChainMap) -> Result<FreeComplex> {
    phi.verify(source, target)?;
    let ring = source.ring.clone();
    let field = ring.field();
    let n = phi.shift;
    let s = phi.degree();
    let bounded = source.bounded && target.bounded;
    let len = if bounded {
        (target.len() + n).max(source.len() + 1)
    } else {
        let mut l = usize::MAX;
        if !target.bounded {
            l = l.min(target.len() + n);
        }
        if !source.bounded {
            l = l.min(source.len());
        }
        l.min(phi.top() + 1)
    };
    let g_at = |j: usize| -> FreeModule {
        if j < n {
            FreeModule::default()
        } else {
            target.module(j - n).unwrap_or_default().shifted(-s)
        }
    };
    let f_at = |j: usize| -> FreeModule {
        if j == 0 {
            FreeModule::default()
        } else {
            source.module(j - 1).unwrap_or_default()
        }
    };
    let mut modules = Vec::with_capacity(len + 1);
    let mut labels = Vec::with_capacity(len + 1);
    for j in 0..=len {
        let (g, f) = (g_at(j), f_at(j));
        labels.push(
            (0..g.rank())
                .map(|q| vec![(0, q)])
                .chain((0..f.rank()).map(|p| vec![(1, p)]))
                .collect(),
        );
        modules.push(g.direct_sum(&f));
    }
    let sg = sign(field, n % 2 == 1);
    let neg = field.neg(1);
    let mut differentials = Vec::with_capacity(len);
    for j in 1..=len {
        let (g, f) = (g_at(j), f_at(j));
        let off = g_at(j - 1).rank();
        let mut columns = Vec::with_capacity(g.rank() + f.rank());
        for q in 0..g.rank() {
            let mut col = match target.differential(j - n) {
                Some(d) if j > n => d.columns[q].scale(&ring, sg),
                _ => FreeElem::zero(0),
            };
            col.deg = g.degrees[q] as i64;
            columns.push(col);
        }
        for p in 0..f.rank() {
            let deg = f.degrees[p] as i64;
            let mut col = match phi.component(j - 1) {
                Some(c) => c.columns[p].clone(),
                None => FreeElem::zero(deg),
            };
            col.deg = deg;
            if let Some(d) = source.differential(j - 1) {
                let dx = d.columns[p].scale(&ring, neg).reindex(|r| r + off);
                col = col.add(&ring, &FreeElem { deg, entries: dx.entries });
            }
            columns.push(col);
        }
        differentials.push(FreeMap::new(modules[j].clone(), modules[j - 1].clone(), columns));
    }
    Ok(FreeComplex {
        ring,
        modules,
        differentials,
        bounded,
        labels,
    })
}

/// The map induced on `cone(φ)` (for `φ: X -> Σ^n X`) by a chain map
/// `ψ: X -> Σ^m X` with `φψ = ε ψφ`: `(y, x) ↦ (ψ y, (-1)^m ε ψ x)`.
pub fn cone_induced(x: &FreeComplex, phi: &ChainMap, cone_cx: &FreeComplex, psi: &ChainMap) -> Result<ChainMap> {
    let ring = &x.ring;
    let field = ring.field();
    let eps = phi
        .commutation_sign(ring, psi)
        .ok_or_else(|| Error::Invariant("the chain maps do not commute up to sign".into()))?;
    let m = psi.shift;
    let t = psi.degree() as i64;
    let n = phi.shift;
    let b = field.mul(sign(field, m % 2 == 1), eps);
    let mut components = Vec::new();
    for j in m..=cone_cx.len().min(psi.top() + 1) {
        let g_rank = if j >= n { x.rank(j - n) } else { 0 };
        let off_target = if j - m >= n { x.rank(j - m - n) } else { 0 };
        let mut columns = Vec::with_capacity(cone_cx.modules[j].rank());
        for q in 0..g_rank {
            let deg = cone_cx.modules[j].degrees[q] as i64 - t;
            let col = psi
                .component(j - n)
                .map(|c| FreeElem {
                    deg,
                    entries: c.columns[q].entries.clone(),
                })
                .unwrap_or_else(|| FreeElem::zero(deg));
            columns.push(col);
        }
        let f_rank = if j >= 1 { x.rank(j - 1) } else { 0 };
        for p in 0..f_rank {
            let deg = cone_cx.modules[j].degrees[g_rank + p] as i64 - t;
            let col = match psi.component(j - 1) {
                Some(c) => FreeElem {
                    deg,
                    entries: c.columns[p].scale(ring, b).reindex(|r| r + off_target).entries,
                },
                None => FreeElem::zero(deg),
            };
            columns.push(col);
        }
        components.push(FreeMap::with_degree(
            cone_cx.modules[j].clone(),
            cone_cx.modules[j - m].clone(),
            columns,
            t as i32,
        ));
    }
    let out = ChainMap { shift: m, components };
    out.verify(cone_cx, cone_cx)?;
    Ok(out)
}

/// The constant part of each differential, for quick rank checks.
pub fn constant_parts(c: &FreeComplex) -> Vec<Matrix> {
    let f = c.ring.field();
    c.differentials.iter().map(|d| d.constant_part(f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::GradedModule;
    use crate::resolution::minimal_free_resolution;
    use crate::ring::PolyRing;

    fn ring(p: u32, vars: &[&str], rels: &[&str], d: usize) -> RingRef {
        let base = PolyRing::new(p, vars.iter().map(|s| s.to_string()).collect(), d).unwrap();
        QuotientRing::from_strings(base, rels).unwrap()
    }

    fn dual_numbers_k(var: &str, window: usize) -> FreeComplex {
        let r = ring(2, &[var], &[&format!("{var}^2")], 4);
        let k = GradedModule::residue_field(r, 0);
        FreeComplex::from_resolution(&minimal_free_resolution(&k, window).unwrap())
    }

    /// η_j = identity on the rank-one modules of the period-1 resolution
    fn period_one_eta(c: &FreeComplex) -> ChainMap {
        let ring = &c.ring;
        ChainMap {
            shift: 1,
            components: (1..=c.len())
                .map(|j| {
                    FreeMap::new(
                        c.modules[j].clone(),
                        c.modules[j - 1].clone(),
                        vec![FreeElem {
                            deg: j as i64 - 1,
                            entries: vec![(0, ring.one())],
                        }],
                    )
                })
                .collect(),
        }
    }

    #[test]
    fn tensor_rank_convolution() {
        let a = dual_numbers_k("x", 6);
        let b = dual_numbers_k("y", 6);
        let t = tensor_complexes(&a, &b).unwrap();
        assert_eq!(t.ranks(), vec![1, 2, 3, 4, 5, 6, 7]);
        assert!(t.is_complex() && t.is_minimal());

        let short_a = a.truncate_below(2);
        let short_b = b.truncate_below(2);
        let t2 = tensor_complexes(&short_a, &short_b).unwrap();
        assert_eq!(t2.ranks(), vec![1, 2, 1]);
        assert!(t2.bounded && t2.is_complex());
    }

    #[test]
    fn induced_maps_commute_in_char_two() {
        let a = dual_numbers_k("x", 6);
        let b = dual_numbers_k("y", 6);
        let t = tensor_complexes(&a, &b).unwrap();
        let e1 = induced_map(&t, 0, &a, 0, &period_one_eta(&a));
        let e2 = induced_map(&t, 1, &b, 1, &period_one_eta(&b));
        e1.verify(&t, &t).unwrap();
        e2.verify(&t, &t).unwrap();
        assert!(e1.is_surjective(t.ring.field()));
        assert_eq!(e1.commutation_sign(&t.ring, &e2), Some(1));
    }

    #[test]
    fn cones_have_expected_ranks() {
        let a = dual_numbers_k("x", 8);
        let b = dual_numbers_k("y", 8);
        let t = tensor_complexes(&a, &b).unwrap();
        let e1 = induced_map(&t, 0, &a, 0, &period_one_eta(&a));
        let c1 = cone(&t, &t, &e1).unwrap();
        assert!(c1.is_complex());
        let m1 = c1.minimize();
        assert!(m1.is_minimal() && m1.is_complex());
        // cone(F -> ΣF) starts in degree 1
        assert_eq!(m1.ranks()[0], 0);
        assert!(m1.ranks()[1..].iter().all(|&r| r == 1), "{:?}", m1.ranks());

        let e2 = induced_map(&t, 1, &b, 1, &period_one_eta(&b));
        let e2c = cone_induced(&t, &e1, &c1, &e2).unwrap();
        let c2 = cone(&c1, &c1, &e2c).unwrap();
        assert!(c2.is_complex());
        let m2 = c2.minimize();
        let r2 = m2.ranks();
        assert_eq!(&r2[..3], &[0, 0, 1], "{r2:?}");
        assert!(r2[3..].iter().all(|&r| r == 0), "{r2:?}");
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let a = dual_numbers_k("x", 5);
        let id = ChainMap::identity(&a);
        let c = cone(&a, &a, &id).unwrap();
        assert!(c.is_complex());
        for j in 0..c.len() {
            assert_eq!(c.homology_total(j), Some(0), "degree {j}");
        }
        assert!(c.minimize().ranks().iter().all(|&r| r == 0));
    }

    #[test]
    fn cone_of_zero_map_is_a_sum() {
        let a = dual_numbers_k("x", 4).truncate_below(3);
        let z = ChainMap::zero(&a, &a, 1, 0);
        let c = cone(&a, &a, &z).unwrap();
        // C_j = A_{j-1} ⊕ A_{j-1}
        assert_eq!(c.ranks(), vec![0, 2, 2, 2]);
        assert!(c.is_complex());
    }

    #[test]
    fn truncation_examples() {
        let a = dual_numbers_k("x", 4);
        let t = a.truncate_below(1);
        assert_eq!(t.ranks(), vec![1]);
        assert!(t.bounded);
        let r = ring(3, &["x", "y"], &["xy"], 4);
        let m = GradedModule::cyclic_from_strings(r.clone(), &["x"]).unwrap();
        let c = FreeComplex::from_resolution(&minimal_free_resolution(&m, 5).unwrap());
        let t2 = c.truncate_below(2);
        assert_eq!(t2.ranks(), vec![1, 1]);
        assert_eq!(t2.differentials[0].display(&r), vec![vec!["x".to_string()]]);
        let free = GradedModule::free(r, vec![0]);
        let fc = FreeComplex::from_resolution(&minimal_free_resolution(&free, 3).unwrap());
        assert_eq!(fc.truncate_below(5).ranks(), fc.ranks());
    }

    #[test]
    fn unit_complex_is_neutral() {
        let a = dual_numbers_k("x", 5);
        let unit_ring = ring(2, &["z"], &["z"], 4);
        let unit = FreeComplex::new(unit_ring, vec![FreeModule::new(vec![0])], vec![], true).unwrap();
        let t = tensor_complexes(&a, &unit).unwrap();
        assert_eq!(t.ranks(), a.ranks());
        assert!(t.is_complex());
    }
}
