//! Monomials and sparse polynomials over `F_p`, plus the text syntax
//! `c*x^a*y^b + ...` used by the file formats.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Exponent vector. Ordered so that `x^2 > x*y > y^2` (lexicographic,
/// larger exponents of earlier variables first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn one(nvars: usize) -> Self {
        Self {
            exponents: vec![0; nvars],
        }
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self { exponents: e }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Re-embed into a ring with `total` variables, starting at `offset`.
    pub fn embed(&self, offset: usize, total: usize) -> Monomial {
        let mut e = vec![0; total];
        e[offset..offset + self.nvars()].copy_from_slice(&self.exponents);
        Monomial { exponents: e }
    }

    pub fn display(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // descending lex: bigger exponent on an earlier variable sorts first
        other.exponents.cmp(&self.exponents)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `d` in `n` variables, in lexicographic order.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    rec(n, d as u32, &mut Vec::with_capacity(n), &mut out);
    out
}

/// A polynomial as a map monomial -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(field: PrimeField, nvars: usize, terms: impl IntoIterator<Item = (u32, Monomial)>) -> Self {
        let mut p = Self::zero(nvars);
        for (c, m) in terms {
            p.add_term(field, c, m);
        }
        p
    }

    pub fn monomial(nvars: usize, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, 1);
        Self { nvars, terms }
    }

    pub fn add_term(&mut self, field: PrimeField, c: u32, m: Monomial) {
        assert_eq!(m.nvars(), self.nvars);
        let c = c % field.characteristic();
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert(0);
        *entry = field.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// `Some(d)` when every term has degree `d`; zero is homogeneous of every
    /// degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn mul(&self, field: PrimeField, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(field, field.mul(*c1, *c2), m1.mul(m2));
            }
        }
        out
    }

    pub fn add(&self, field: PrimeField, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, *c, m.clone());
        }
        out
    }

    pub fn scale(&self, field: PrimeField, c: u32) -> Polynomial {
        Polynomial::from_terms(field, self.nvars, self.terms.iter().map(|(m, &v)| (field.mul(v, c), m.clone())))
    }

    pub fn embed(&self, offset: usize, total: usize) -> Polynomial {
        Polynomial {
            nvars: total,
            terms: self.terms.iter().map(|(m, &c)| (m.embed(offset, total), c)).collect(),
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let ms = m.display(names);
                match (c, ms.as_str()) {
                    (c, "1") => c.to_string(),
                    (1, _) => ms,
                    _ => format!("{c}*{ms}"),
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Parse the text syntax: a sum of terms `c*x^a*y^b`. Coefficients are
    /// integers reduced mod p; `*` may be omitted and `^1` is implicit.
    pub fn parse(field: PrimeField, names: &[String], src: &str) -> Result<Polynomial> {
        Parser::new(field, names, src).parse()
    }
}

struct Parser<'a> {
    field: PrimeField,
    names: &'a [String],
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(field: PrimeField, names: &'a [String], src: &'a str) -> Self {
        Self {
            field,
            names,
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Option<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<i64>().ok()
    }

    fn variable(&mut self) -> Option<usize> {
        // longest match among known names
        let rest: String = self.chars[self.pos..].iter().collect();
        let (idx, len) = self
            .names
            .iter()
            .enumerate()
            .filter(|(_, n)| rest.starts_with(n.as_str()))
            .map(|(i, n)| (i, n.chars().count()))
            .max_by_key(|&(_, l)| l)?;
        self.pos += len;
        Some(idx)
    }

    fn parse(mut self) -> Result<Polynomial> {
        let n = self.names.len();
        let mut poly = Polynomial::zero(n);
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let mut negative = false;
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    negative = true;
                    self.pos += 1
                }
                None => break,
                _ if first => {}
                _ => return Err(self.err("expected '+' or '-'")),
            }
            first = false;
            self.skip_ws();
            let mut coeff: i64 = 1;
            let mut exps = vec![0u32; n];
            let mut factors = 0;
            loop {
                self.skip_ws();
                if let Some(v) = self.number() {
                    coeff = coeff
                        .checked_mul(v % self.field.characteristic() as i64)
                        .ok_or_else(|| self.err("coefficient overflow"))?
                        % self.field.characteristic() as i64;
                    factors += 1;
                } else if let Some(var) = self.variable() {
                    self.skip_ws();
                    let mut e = 1;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        e = self.number().ok_or_else(|| self.err("expected exponent"))? as u32;
                    }
                    exps[var] += e;
                    factors += 1;
                } else {
                    break;
                }
                self.skip_ws();
                if self.peek() == Some('*') {
                    self.pos += 1;
                }
            }
            if factors == 0 {
                return Err(self.err("expected a term"));
            }
            let c = self.field.reduce(if negative { -coeff } else { coeff });
            poly.add_term(self.field, c, Monomial::new(exps));
        }
        Ok(poly)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn lex_order_of_degree_two() {
        let ms = monomials_of_degree(2, 2);
        let shown: Vec<String> = ms.iter().map(|m| m.display(&names(&["x", "y"]))).collect();
        assert_eq!(shown, vec!["x^2", "x*y", "y^2"]);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(2, 0).len(), 1);
        let mut sorted = ms.clone();
        sorted.sort();
        assert_eq!(sorted, ms);
    }

    #[test]
    fn parse_terms() {
        let f = PrimeField::new(3).unwrap();
        let n = names(&["x", "y"]);
        let p = Polynomial::parse(f, &n, "x^2 + 2*x*y - y^2").unwrap();
        assert_eq!(p.display(&n), "x^2 + 2*x*y + 2*y^2");
        let q = Polynomial::parse(f, &n, "xy").unwrap();
        assert_eq!(q.display(&n), "x*y");
        let r = Polynomial::parse(f, &n, "3x + y").unwrap();
        assert_eq!(r.display(&n), "y");
        assert!(Polynomial::parse(f, &n, "x + x + x").unwrap().is_zero());
        assert!(Polynomial::parse(f, &n, "x + z").is_err());
        assert!(Polynomial::parse(f, &n, "").is_err());
    }

    #[test]
    fn homogeneity() {
        let f = PrimeField::new(2).unwrap();
        let n = names(&["x", "y"]);
        assert_eq!(Polynomial::parse(f, &n, "x^2+xy").unwrap().homogeneous_degree(), Some(2));
        assert!(!Polynomial::parse(f, &n, "x^2+y").unwrap().is_homogeneous());
    }
}
