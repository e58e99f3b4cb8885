//! Text formats for rings, modules, complexes and construction configs.
//!
//! Every file is one named block of `key = value` entries:
//!
//! ```text
//! ring { char = 2; vars = [x, y]; relations = ["x^2", "y^2"]; degree_bound = 6 }
//! module { ring = "r.ring"; generators = [0]; relations = [["x"], ["y"]] }
//! complex { ring = "r.ring"; modules = [[0], [1]]; differentials = [d1 = [["x"]]];
//!           bounded = false; maps = { eta = { shift = 1, degree = 1, components = [[["1"]]] } } }
//! construction { factors = ["a.cx", "b.cx"] }
//! ```
//!
//! Matrices are lists of columns: column `q` of `d_j` lists the image of
//! generator `q` of `F_j`, one entry per generator of `F_{j-1}`. A `ring`
//! entry is either a path (relative to the including file) or an inline
//! `ring { ... }` block. `#` starts a comment.

use std::fs;
use std::path::{Path, PathBuf};

use crate::complex::{ChainMap, FreeComplex};
use crate::construction::Factor;
use crate::error::{Error, Result};
use crate::free::{FreeElem, FreeMap, FreeModule, RingRef};
use crate::module::GradedModule;
use crate::ring::{PolyRing, QuotientRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Str(String),
    Ident(String),
    List(Vec<Value>),
    /// `name = value` inside a list
    Pair(String, Box<Value>),
    Block(Option<String>, Vec<(String, Value)>),
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn skip(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_whitespace() {
                self.pos += 1;
            } else if c == '#' {
                while self.chars.get(self.pos).is_some_and(|&c| c != '\n') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            other => Err(perr(format!("expected '{c}' at offset {}, found {other:?}", self.pos))),
        }
    }

    fn eat_separator(&mut self) {
        if matches!(self.peek(), Some(',' | ';')) {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_alphanumeric() || *c == '_' || *c == '-' || *c == '.')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(perr(format!("expected a name at offset {start}")));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn string(&mut self) -> Result<String> {
        self.expect('"')?;
        let mut out = String::new();
        loop {
            match self.chars.get(self.pos) {
                Some('"') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some('\\') => {
                    out.extend(self.chars.get(self.pos + 1));
                    self.pos += 2;
                }
                Some(&c) => {
                    out.push(c);
                    self.pos += 1;
                }
                None => return Err(perr("unterminated string")),
            }
        }
    }

    fn block_body(&mut self, name: Option<String>) -> Result<Value> {
        self.expect('{')?;
        let mut entries = Vec::new();
        loop {
            if self.peek() == Some('}') {
                self.pos += 1;
                return Ok(Value::Block(name, entries));
            }
            let key = self.ident()?;
            self.expect('=')?;
            let v = self.value()?;
            entries.push((key, v));
            self.eat_separator();
        }
    }

    fn value(&mut self) -> Result<Value> {
        match self.peek() {
            Some('"') => Ok(Value::Str(self.string()?)),
            Some('[') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    if self.peek() == Some(']') {
                        self.pos += 1;
                        return Ok(Value::List(items));
                    }
                    let v = self.value()?;
                    let item = match v {
                        Value::Ident(name) if self.peek() == Some('=') => {
                            self.pos += 1;
                            Value::Pair(name, Box::new(self.value()?))
                        }
                        v => v,
                    };
                    items.push(item);
                    self.eat_separator();
                }
            }
            Some('{') => self.block_body(None),
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let start = self.pos;
                self.pos += 1;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                s.parse().map(Value::Int).map_err(|_| perr(format!("bad integer {s}")))
            }
            Some(_) => {
                let id = self.ident()?;
                match id.as_str() {
                    "true" => Ok(Value::Bool(true)),
                    "false" => Ok(Value::Bool(false)),
                    _ if self.peek() == Some('{') => self.block_body(Some(id)),
                    _ => Ok(Value::Ident(id)),
                }
            }
            None => Err(perr("unexpected end of input")),
        }
    }
}

/// Parse `name { ... }`, returning the block name and its entries.
pub fn parse_document(src: &str) -> Result<(String, Vec<(String, Value)>)> {
    let mut lx = Lexer::new(src);
    let name = lx.ident()?;
    let Value::Block(_, entries) = lx.block_body(Some(name.clone()))? else {
        unreachable!()
    };
    if lx.peek().is_some() {
        return Err(perr("trailing input after the block"));
    }
    Ok((name, entries))
}

struct Entries<'a> {
    kind: &'a str,
    entries: &'a [(String, Value)],
}

impl<'a> Entries<'a> {
    fn get(&self, key: &str) -> Option<&'a Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    fn req(&self, key: &str) -> Result<&'a Value> {
        self.get(key).ok_or_else(|| perr(format!("{} block lacks '{key}'", self.kind)))
    }
}

fn as_int(v: &Value) -> Result<i64> {
    match v {
        Value::Int(i) => Ok(*i),
        _ => Err(perr(format!("expected an integer, found {v:?}"))),
    }
}

fn as_list(v: &Value) -> Result<&[Value]> {
    match v {
        Value::List(l) => Ok(l),
        _ => Err(perr(format!("expected a list, found {v:?}"))),
    }
}

fn as_text(v: &Value) -> Result<String> {
    match v {
        Value::Str(s) | Value::Ident(s) => Ok(s.clone()),
        Value::Int(i) => Ok(i.to_string()),
        _ => Err(perr(format!("expected a string, found {v:?}"))),
    }
}

fn int_list(v: &Value) -> Result<Vec<i32>> {
    as_list(v)?
        .iter()
        .map(|x| as_int(x).and_then(|i| i32::try_from(i).map_err(|_| perr("degree out of range"))))
        .collect()
}

/// Columns of polynomial strings.
fn string_matrix(v: &Value) -> Result<Vec<Vec<String>>> {
    as_list(v)?
        .iter()
        .map(|c| as_list(c)?.iter().map(as_text).collect())
        .collect()
}

fn ring_from_entries(e: &Entries<'_>, bound: Option<usize>) -> Result<RingRef> {
    let p = as_int(e.req("char")?)?;
    let p = u32::try_from(p).map_err(|_| Error::InvalidCharacteristic(0))?;
    let vars: Vec<String> = as_list(e.req("vars")?)?.iter().map(as_text).collect::<Result<_>>()?;
    let rels: Vec<String> = match e.get("relations") {
        Some(v) => as_list(v)?.iter().map(as_text).collect::<Result<_>>()?,
        None => Vec::new(),
    };
    let d = match (bound, e.get("degree_bound")) {
        (Some(b), _) => b,
        (None, Some(v)) => usize::try_from(as_int(v)?).map_err(|_| perr("negative degree bound"))?,
        (None, None) => 12,
    };
    let base = PolyRing::new(p, vars, d)?;
    let refs: Vec<&str> = rels.iter().map(String::as_str).collect();
    QuotientRing::from_strings(base, &refs)
}

pub fn parse_ring(src: &str, bound: Option<usize>) -> Result<RingRef> {
    let (name, entries) = parse_document(src)?;
    if name != "ring" {
        return Err(perr(format!("expected a ring block, found '{name}'")));
    }
    ring_from_entries(&Entries { kind: "ring", entries: &entries }, bound)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| perr(format!("{}: {e}", path.display())))
}

pub fn load_ring(path: &Path, bound: Option<usize>) -> Result<RingRef> {
    parse_ring(&read(path)?, bound)
}

fn ring_entry(v: &Value, dir: &Path, bound: Option<usize>) -> Result<RingRef> {
    match v {
        Value::Str(p) => load_ring(&dir.join(p), bound),
        Value::Block(_, entries) => ring_from_entries(&Entries { kind: "ring", entries }, bound),
        _ => Err(perr("ring must be a path or a ring block")),
    }
}

/// A module file; `dir` resolves a relative ring path.
pub fn parse_module(src: &str, dir: &Path, bound: Option<usize>) -> Result<GradedModule> {
    let (name, entries) = parse_document(src)?;
    if name != "module" {
        return Err(perr(format!("expected a module block, found '{name}'")));
    }
    let e = Entries { kind: "module", entries: &entries };
    let ring = ring_entry(e.req("ring")?, dir, bound)?;
    let gens = int_list(e.req("generators")?)?;
    let rels = match e.get("relations") {
        Some(v) => string_matrix(v)?,
        None => Vec::new(),
    };
    GradedModule::from_presentation(ring, gens, &rels)
}

pub fn load_module(path: &Path, bound: Option<usize>) -> Result<GradedModule> {
    parse_module(&read(path)?, parent(path), bound)
}

fn parent(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

/// Columns of a homogeneous map `src -> tgt` of internal degree drop `shift`
/// (inferred from the first nonzero entry when `None`).
fn parse_map(ring: &RingRef, src: &FreeModule, tgt: &FreeModule, cols: &[Vec<String>], shift: Option<i32>) -> Result<FreeMap> {
    if cols.len() != src.rank() {
        return Err(perr(format!("{} columns for {} generators", cols.len(), src.rank())));
    }
    let mut parsed = Vec::new();
    let mut s = shift;
    for (q, col) in cols.iter().enumerate() {
        if col.len() != tgt.rank() {
            return Err(perr(format!("column {q} has {} entries for {} target generators", col.len(), tgt.rank())));
        }
        let mut entries = Vec::new();
        for (r, text) in col.iter().enumerate() {
            let p = ring.base().parse(text)?;
            if p.is_zero() {
                continue;
            }
            let pd = p.homogeneous_degree().ok_or_else(|| Error::NotHomogeneous(text.clone()))? as i32;
            let implied = src.degrees[q] - tgt.degrees[r] - pd;
            match s {
                Some(x) if x != implied => {
                    return Err(Error::NotHomogeneous(format!("entry {text} in column {q} has the wrong degree")));
                }
                _ => s = Some(implied),
            }
            entries.push((r, p, pd as usize));
        }
        parsed.push(entries);
    }
    let s = s.unwrap_or(0);
    let mut columns = Vec::new();
    for (q, entries) in parsed.into_iter().enumerate() {
        let mut e = FreeElem::zero(src.degrees[q] as i64 - s as i64);
        for (r, p, pd) in entries {
            if pd > ring.degree_bound() {
                return Err(Error::DegreeBoundExceeded {
                    degree: pd as i64,
                    bound: ring.degree_bound(),
                });
            }
            let x = ring.normal_form_in_degree(&p, pd)?;
            if !x.is_zero() {
                e.entries.push((r, x));
            }
        }
        columns.push(e);
    }
    Ok(FreeMap::with_degree(src.clone(), tgt.clone(), columns, s))
}

#[derive(Clone, Debug)]
pub struct ComplexFile {
    pub complex: FreeComplex,
    pub eta: Option<ChainMap>,
}

pub fn parse_complex(src: &str, dir: &Path, bound: Option<usize>) -> Result<ComplexFile> {
    let (name, entries) = parse_document(src)?;
    if name != "complex" {
        return Err(perr(format!("expected a complex block, found '{name}'")));
    }
    let e = Entries { kind: "complex", entries: &entries };
    let ring = ring_entry(e.req("ring")?, dir, bound)?;
    let modules: Vec<FreeModule> = as_list(e.req("modules")?)?
        .iter()
        .map(|v| int_list(v).map(FreeModule::new))
        .collect::<Result<_>>()?;
    if modules.is_empty() {
        return Err(perr("complex has no modules"));
    }
    let diffs = match e.get("differentials") {
        Some(v) => as_list(v)?.to_vec(),
        None => Vec::new(),
    };
    if diffs.len() + 1 != modules.len() {
        return Err(perr(format!("{} modules need {} differentials", modules.len(), modules.len() - 1)));
    }
    let mut differentials = Vec::new();
    for (k, d) in diffs.iter().enumerate() {
        let m = match d {
            Value::Pair(_, v) => v.as_ref(),
            v => v,
        };
        let cols = string_matrix(m)?;
        differentials.push(parse_map(&ring, &modules[k + 1], &modules[k], &cols, Some(0))?);
    }
    let bounded = matches!(e.get("bounded"), Some(Value::Bool(true)));
    let complex = FreeComplex::new(ring.clone(), modules, differentials, bounded)?;
    if !complex.is_complex() {
        return Err(Error::Invariant("differentials do not square to zero".into()));
    }
    let eta = match e.get("maps") {
        Some(Value::Block(_, maps)) => match maps.iter().find(|(k, _)| k == "eta") {
            Some((_, Value::Block(_, me))) => Some(parse_chain_map(&ring, &complex, &Entries { kind: "eta", entries: me })?),
            Some(_) => return Err(perr("eta must be a block")),
            None => None,
        },
        Some(_) => return Err(perr("maps must be a block")),
        None => None,
    };
    Ok(ComplexFile { complex, eta })
}

fn parse_chain_map(ring: &RingRef, c: &FreeComplex, e: &Entries<'_>) -> Result<ChainMap> {
    let shift = usize::try_from(as_int(e.req("shift")?)?).map_err(|_| perr("negative shift"))?;
    let mut degree = match e.get("degree") {
        Some(v) => Some(as_int(v)? as i32),
        None => None,
    };
    let comps = as_list(e.req("components")?)?;
    let mut components = Vec::new();
    for (k, v) in comps.iter().enumerate() {
        let j = shift + k;
        let (Some(src), Some(tgt)) = (c.module(j), c.module(j - shift)) else {
            return Err(perr(format!("component {j} lies outside the complex")));
        };
        let m = parse_map(ring, &src, &tgt, &string_matrix(v)?, degree)?;
        degree.get_or_insert(m.degree);
        components.push(m);
    }
    let degree = degree.unwrap_or(0);
    for m in &mut components {
        m.degree = degree;
    }
    let map = ChainMap { shift, components };
    map.verify(c, c)?;
    Ok(map)
}

pub fn load_complex(path: &Path, bound: Option<usize>) -> Result<ComplexFile> {
    parse_complex(&read(path)?, parent(path), bound)
}

/// Factor complexes listed in a construction config.
pub fn parse_construction(src: &str, dir: &Path, bound: Option<usize>) -> Result<Vec<Factor>> {
    let (name, entries) = parse_document(src)?;
    if name != "construction" {
        return Err(perr(format!("expected a construction block, found '{name}'")));
    }
    let e = Entries { kind: "construction", entries: &entries };
    as_list(e.req("factors")?)?
        .iter()
        .map(|v| {
            let cf = load_complex(&dir.join(as_text(v)?), bound)?;
            Ok(Factor {
                complex: cf.complex,
                eta: cf.eta,
            })
        })
        .collect()
}

pub fn load_construction(path: &Path, bound: Option<usize>) -> Result<Vec<Factor>> {
    parse_construction(&read(path)?, parent(path), bound)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn write_ring(ring: &QuotientRing) -> String {
    let rels: Vec<String> = ring.relations().iter().map(|r| quote(&r.display(ring.names()))).collect();
    format!(
        "ring {{ char = {}; vars = [{}]; relations = [{}]; degree_bound = {} }}\n",
        ring.characteristic(),
        ring.names().join(", "),
        rels.join(", "),
        ring.degree_bound()
    )
}

/// A module file referring to `ring_path`.
pub fn write_module(m: &GradedModule, ring_path: &str) -> String {
    let gens: Vec<String> = m.generators().degrees.iter().map(|g| g.to_string()).collect();
    let rels: Vec<String> = m
        .relation_strings()
        .into_iter()
        .map(|c| format!("[{}]", c.iter().map(|s| quote(s)).collect::<Vec<_>>().join(", ")))
        .collect();
    format!(
        "module {{ ring = {}; generators = [{}]; relations = [{}] }}\n",
        quote(ring_path),
        gens.join(", "),
        rels.join(", ")
    )
}

/// Resolve `p` against `dir` unless absolute.
pub fn resolve_path(dir: &Path, p: &str) -> PathBuf {
    dir.join(p)
}
