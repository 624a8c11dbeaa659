//! Expression grammar for polynomials and exterior-algebra elements.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := wedge (('*' | '·' | '/') wedge)*
//! wedge   := unary (('∧' | '^') unary)*        ('^' before an integer is a power)
//! unary   := '-' unary | power
//! power   := atom ('^' INTEGER)?
//! atom    := INTEGER | coordinate | basis-symbol | '(' sum ')'
//! ```
//!
//! Basis symbols are the printed frame labels (`dx`, `∂x`, `e1`, `e^1`);
//! tangent-like frames also accept `partial_x` for `∂x`. Division is only
//! by nonzero constants.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::kvector::sort_with_sign;
use super::{KVector, Naming, Poly, Rational, Variance};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Coord(usize),
    Basis(Variance, usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Wedge,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

/// What identifiers mean in an expression.
#[derive(Clone, Debug)]
pub struct Symbols {
    nvars: usize,
    rank: usize,
    table: Vec<(String, Tok)>,
}

impl Symbols {
    /// Coordinates only.
    pub fn coords(coords: &[String]) -> Self {
        let table = coords.iter().enumerate().map(|(i, c)| (c.clone(), Tok::Coord(i))).collect();
        Self::sorted(coords.len(), 0, table)
    }

    /// Coordinates plus the frame symbols of `naming`.
    pub fn naming(naming: &Naming) -> Self {
        let mut table: Vec<(String, Tok)> =
            naming.coords.iter().enumerate().map(|(i, c)| (c.clone(), Tok::Coord(i))).collect();
        for i in 0..naming.frame.len() {
            for v in [Variance::Multivector, Variance::Form] {
                table.push((naming.basis(i, v), Tok::Basis(v, i)));
            }
            if naming.tangent_like {
                let v = if naming.flipped { Variance::Form } else { Variance::Multivector };
                table.push((format!("partial_{}", naming.frame[i]), Tok::Basis(v, i)));
            }
        }
        Self::sorted(naming.coords.len(), naming.frame.len(), table)
    }

    fn sorted(nvars: usize, rank: usize, mut table: Vec<(String, Tok)>) -> Self {
        table.sort_by(|a, b| b.0.chars().count().cmp(&a.0.chars().count()).then(a.0.cmp(&b.0)));
        Symbols { nvars, rank, table }
    }
}

fn is_ident(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn lex(src: &str, sym: &Symbols) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let single = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' | '·' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '∧' => Some(Tok::Wedge),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line: l0, column: c0 });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            if i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_') {
                return Err(err(l0, c0 + (i - start), "expected an operator after a number"));
            }
            col += i - start;
            out.push(Token { tok: Tok::Int(text.parse().expect("digits")), line: l0, column: c0 });
            continue;
        }
        let rest: String = chars[i..].iter().collect();
        let hit = sym.table.iter().find(|(name, _)| {
            rest.starts_with(name.as_str()) && !rest[name.len()..].chars().next().is_some_and(is_ident)
        });
        match hit {
            Some((name, tok)) => {
                let n = name.chars().count();
                out.push(Token { tok: tok.clone(), line: l0, column: c0 });
                i += n;
                col += n;
            }
            None => {
                let start = i;
                while i < chars.len() && (is_ident(chars[i]) || (i == start && chars[i] == '∂')) {
                    i += 1;
                }
                let word: String = chars[start..i.max(start + 1)].iter().collect();
                return Err(err(l0, c0, format!("unknown symbol `{word}`")));
            }
        }
    }
    Ok(out)
}

/// Exterior-algebra value during parsing: `(variance, sorted frame
/// indices) → coefficient`; scalars use `None` and no indices.
#[derive(Clone, Debug)]
struct Ext {
    terms: BTreeMap<(Option<Variance>, Vec<usize>), Poly>,
}

impl Ext {
    fn scalar(p: Poly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert((None, vec![]), p);
        }
        Ext { terms }
    }

    fn as_scalar(&self, nvars: usize) -> Option<Poly> {
        if self.terms.keys().all(|(v, idx)| v.is_none() && idx.is_empty()) {
            Some(self.terms.values().next().cloned().unwrap_or_else(|| Poly::zero(nvars)))
        } else {
            None
        }
    }

    fn add(mut self, o: Ext) -> Ext {
        for (k, v) in o.terms {
            let e = self.terms.entry(k.clone()).or_insert_with(|| Poly::zero(v.nvars()));
            *e += &v;
            if e.is_zero() {
                self.terms.remove(&k);
            }
        }
        self
    }

    fn scale(&self, p: &Poly) -> Ext {
        let mut out = Ext { terms: BTreeMap::new() };
        for (k, v) in &self.terms {
            let c = v * p;
            if !c.is_zero() {
                out.terms.insert(k.clone(), c);
            }
        }
        out
    }

    fn wedge(&self, o: &Ext, at: &Token) -> Result<Ext> {
        let mut out = Ext { terms: BTreeMap::new() };
        for ((va, ia), fa) in &self.terms {
            for ((vb, ib), fb) in &o.terms {
                let v = match (va, vb) {
                    (Some(a), Some(b)) if a != b => {
                        return Err(err(at.line, at.column, "wedge of a form with a multivector"));
                    }
                    (Some(a), _) => Some(*a),
                    (None, b) => *b,
                };
                let mut idx: Vec<usize> = ia.iter().chain(ib).copied().collect();
                let Some(sign) = sort_with_sign(&mut idx) else { continue };
                let mut c = fa * fb;
                if sign < 0 {
                    c = -c;
                }
                let key = (v, idx);
                let e = out.terms.entry(key.clone()).or_insert_with(|| Poly::zero(c.nvars()));
                *e += &c;
                if e.is_zero() {
                    out.terms.remove(&key);
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    sym: &'a Symbols,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.line, t.column)).unwrap_or(self.end)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(err(l, c, message))
    }

    fn sum(&mut self) -> Result<Ext> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(self.product()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.product()?;
                    acc = acc.add(rhs.scale(&Poly::from_int(self.sym.nvars, -1)));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Ext> {
        let mut acc = self.wedge()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    let at = self.toks[self.pos].clone();
                    self.pos += 1;
                    let rhs = self.wedge()?;
                    acc = match (acc.as_scalar(self.sym.nvars), rhs.as_scalar(self.sym.nvars)) {
                        (Some(a), _) => rhs.scale(&a),
                        (_, Some(b)) => acc.scale(&b),
                        _ => return Err(err(at.line, at.column, "product of two non-scalars; use ∧")),
                    };
                }
                Some(Tok::Slash) => {
                    let at = self.toks[self.pos].clone();
                    self.pos += 1;
                    let rhs = self.wedge()?;
                    let c = rhs
                        .as_scalar(self.sym.nvars)
                        .and_then(|p| if p.is_zero() { Some(Rational::zero()) } else { p.as_constant() })
                        .ok_or_else(|| err(at.line, at.column, "division only by nonzero constants"))?;
                    if c.is_zero() {
                        return Err(err(at.line, at.column, "division by zero"));
                    }
                    acc = acc.scale(&Poly::constant(self.sym.nvars, c.recip()));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn wedge(&mut self) -> Result<Ext> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Wedge) => {}
                Some(Tok::Caret) if !matches!(self.toks.get(self.pos + 1).map(|t| &t.tok), Some(Tok::Int(_)) | Some(Tok::Minus)) => {}
                _ => return Ok(acc),
            }
            let at = self.toks[self.pos].clone();
            self.pos += 1;
            let rhs = self.unary()?;
            acc = acc.wedge(&rhs, &at)?;
        }
    }

    fn unary(&mut self) -> Result<Ext> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(v.scale(&Poly::from_int(self.sym.nvars, -1)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ext> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            match self.toks.get(self.pos + 1).map(|t| &t.tok) {
                Some(Tok::Int(k)) => {
                    let k: u32 = k.try_into().map_err(|_| {
                        let t = &self.toks[self.pos + 1];
                        err(t.line, t.column, "exponent too large")
                    })?;
                    let Some(p) = base.as_scalar(self.sym.nvars) else {
                        return self.fail("only scalars can be raised to a power");
                    };
                    self.pos += 2;
                    return Ok(Ext::scalar(p.pow(k)));
                }
                Some(Tok::Minus) => {
                    let t = &self.toks[self.pos + 1];
                    return Err(err(t.line, t.column, "exponent must be a non-negative integer"));
                }
                _ => {}
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ext> {
        let nv = self.sym.nvars;
        let Some(t) = self.toks.get(self.pos).cloned() else {
            return self.fail("unexpected end of expression");
        };
        self.pos += 1;
        match t.tok {
            Tok::Int(n) => Ok(Ext::scalar(Poly::constant(nv, Rational::from_integer(n)))),
            Tok::Coord(i) => Ok(Ext::scalar(Poly::var(nv, i))),
            Tok::Basis(v, i) => {
                let mut terms = BTreeMap::new();
                terms.insert((Some(v), vec![i]), Poly::one(nv));
                Ok(Ext { terms })
            }
            Tok::LParen => {
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.fail("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(err(t.line, t.column, "expected a number, coordinate, frame symbol or `(`")),
        }
    }
}

fn end_position(src: &str) -> (usize, usize) {
    let line = src.matches('\n').count() + 1;
    let col = src.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    (line, col)
}

fn parse_ext(src: &str, sym: &Symbols) -> Result<Ext> {
    let toks = lex(src, sym)?;
    let mut p = Parser { toks: &toks, pos: 0, sym, end: end_position(src) };
    let v = p.sum()?;
    if p.pos < toks.len() {
        return p.fail("unexpected token");
    }
    Ok(v)
}

/// Parses a polynomial in the given coordinates.
pub fn parse_poly(src: &str, coords: &[String]) -> Result<Poly> {
    let sym = Symbols::coords(coords);
    parse_ext(src, &sym)?.as_scalar(coords.len()).ok_or_else(|| err(1, 1, "expected a polynomial"))
}

/// Parses a homogeneous exterior element of the given degree and variance.
pub fn parse_kvector(src: &str, naming: &Naming, degree: usize, variance: Variance) -> Result<KVector> {
    let sym = Symbols::naming(naming);
    let v = parse_ext(src, &sym)?;
    let mut out = KVector::zero(sym.rank, sym.nvars, degree, variance);
    for ((var, idx), f) in v.terms {
        let ok = idx.len() == degree && (degree == 0 || var == Some(variance));
        if !ok {
            let found = match var {
                None => "a scalar".to_string(),
                Some(Variance::Form) => format!("a {}-form", idx.len()),
                Some(Variance::Multivector) => format!("a {}-vector", idx.len()),
            };
            let want = match variance {
                Variance::Form => format!("a {degree}-form"),
                Variance::Multivector => format!("a {degree}-vector"),
            };
            return Err(err(1, 1, format!("expected {want}, found a term of {found}")));
        }
        out.insert(&idx, f);
    }
    Ok(out)
}

/// Parses a rational number such as `-3/4`.
pub fn parse_rational(src: &str) -> Result<Rational> {
    let p = parse_poly(src, &[])?;
    p.as_constant().ok_or_else(|| err(1, 1, "expected a rational number"))
}

/// Parses a point `(a, b, ...)` or `a, b, ...` of rational coordinates.
pub fn parse_point(src: &str) -> Result<Vec<Rational>> {
    let t = src.trim();
    let inner = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_rational).collect()
}
