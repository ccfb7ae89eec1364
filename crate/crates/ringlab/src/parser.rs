//! A small textual DSL for rings, ideals, and elements.
//!
//! ```text
//! ring  := atom { "x" atom }
//! atom  := "Z" nat
//!        | "Z" nat "[x]/(" poly ")"
//!        | "bool(" nat ")"
//!        | "quot(" ring ";" ideal ")"
//!        | "idealize(" ring ";" ideal ")"
//!        | "amalg(" ring ";" ideal ")"        -- A = B, f = identity
//!        | "loc(" ring ";" elems ")"
//!        | "(" ring ")"
//! ideal := "zero" | "gen(" elem { "," elem } ")"
//! elem  := int | "(" elem { "," elem } ")" | poly
//! ```
//!
//! Whitespace-insensitive. `x` is both the product operator and the
//! polynomial indeterminate; the bracket context of `[x]/(...)`
//! disambiguates. Errors carry byte spans into the source text.

use crate::error::RingError;
use crate::ideal::{ideal_from_generators, Ideal};
use crate::ring::{
    make_amalgamation, make_idealization, make_localization, make_poly_quotient, make_product,
    make_quotient, make_zn, Construction, ElementId, FiniteRing, RingHom,
};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    fn merge(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

/// Parse failure with a position inside the source text.
#[derive(Debug, Clone)]
pub struct DslError {
    pub span: Span,
    pub message: String,
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}..{}: {}", self.span.start, self.span.end, self.message)
    }
}

impl std::error::Error for DslError {}

fn err<T>(span: Span, message: impl Into<String>) -> Result<T, DslError> {
    Err(DslError {
        span,
        message: message.into(),
    })
}

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum RingExpr {
    Zn { n: u64, span: Span },
    PolyQuotient { p: u64, poly: PolyExpr, span: Span },
    Bool { k: u64, span: Span },
    Product { factors: Vec<RingExpr>, span: Span },
    Quotient { ring: Box<RingExpr>, ideal: IdealExpr, span: Span },
    Idealize { ring: Box<RingExpr>, ideal: IdealExpr, span: Span },
    Amalg { ring: Box<RingExpr>, ideal: IdealExpr, span: Span },
    Loc { ring: Box<RingExpr>, elems: Vec<ElemExpr>, span: Span },
}

#[derive(Debug, Clone)]
pub enum IdealExpr {
    Zero(Span),
    Gen(Vec<ElemExpr>, Span),
}

#[derive(Debug, Clone)]
pub enum ElemExpr {
    /// A polynomial in `x`; a bare integer is the constant polynomial.
    Scalar(PolyExpr),
    Tuple(Vec<ElemExpr>, Span),
}

/// Term list `(coefficient, power)` in source order.
#[derive(Debug, Clone)]
pub struct PolyExpr {
    pub terms: Vec<(i64, u64)>,
    pub span: Span,
}

impl RingExpr {
    pub fn span(&self) -> Span {
        match self {
            RingExpr::Zn { span, .. }
            | RingExpr::PolyQuotient { span, .. }
            | RingExpr::Bool { span, .. }
            | RingExpr::Product { span, .. }
            | RingExpr::Quotient { span, .. }
            | RingExpr::Idealize { span, .. }
            | RingExpr::Amalg { span, .. }
            | RingExpr::Loc { span, .. } => *span,
        }
    }
}

impl ElemExpr {
    pub fn span(&self) -> Span {
        match self {
            ElemExpr::Scalar(p) => p.span,
            ElemExpr::Tuple(_, span) => *span,
        }
    }
}

// structural equality, ignoring spans
pub fn ring_expr_eq(a: &RingExpr, b: &RingExpr) -> bool {
    use RingExpr::*;
    match (a, b) {
        (Zn { n: x, .. }, Zn { n: y, .. }) => x == y,
        (Bool { k: x, .. }, Bool { k: y, .. }) => x == y,
        (
            PolyQuotient { p: p1, poly: f1, .. },
            PolyQuotient { p: p2, poly: f2, .. },
        ) => p1 == p2 && f1.terms == f2.terms,
        (Product { factors: f1, .. }, Product { factors: f2, .. }) => {
            f1.len() == f2.len() && f1.iter().zip(f2).all(|(x, y)| ring_expr_eq(x, y))
        }
        (Quotient { ring: r1, ideal: i1, .. }, Quotient { ring: r2, ideal: i2, .. })
        | (Idealize { ring: r1, ideal: i1, .. }, Idealize { ring: r2, ideal: i2, .. })
        | (Amalg { ring: r1, ideal: i1, .. }, Amalg { ring: r2, ideal: i2, .. }) => {
            ring_expr_eq(r1, r2) && ideal_expr_eq(i1, i2)
        }
        (Loc { ring: r1, elems: e1, .. }, Loc { ring: r2, elems: e2, .. }) => {
            ring_expr_eq(r1, r2)
                && e1.len() == e2.len()
                && e1.iter().zip(e2).all(|(x, y)| elem_expr_eq(x, y))
        }
        _ => false,
    }
}

pub fn ideal_expr_eq(a: &IdealExpr, b: &IdealExpr) -> bool {
    match (a, b) {
        (IdealExpr::Zero(_), IdealExpr::Zero(_)) => true,
        (IdealExpr::Gen(x, _), IdealExpr::Gen(y, _)) => {
            x.len() == y.len() && x.iter().zip(y).all(|(p, q)| elem_expr_eq(p, q))
        }
        _ => false,
    }
}

pub fn elem_expr_eq(a: &ElemExpr, b: &ElemExpr) -> bool {
    match (a, b) {
        (ElemExpr::Scalar(p), ElemExpr::Scalar(q)) => p.terms == q.terms,
        (ElemExpr::Tuple(x, _), ElemExpr::Tuple(y, _)) => {
            x.len() == y.len() && x.iter().zip(y).all(|(p, q)| elem_expr_eq(p, q))
        }
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Nat(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Slash,
    Semi,
    Comma,
    Plus,
    Minus,
    Caret,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "'{w}'"),
            Tok::Nat(n) => write!(f, "'{n}'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::LBracket => write!(f, "'['"),
            Tok::RBracket => write!(f, "']'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Semi => write!(f, "';'"),
            Tok::Comma => write!(f, "','"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Caret => write!(f, "'^'"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, DslError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, Span { start, end: i + 1 }));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, Span { start, end: i + 1 }));
                i += 1;
            }
            '[' => {
                out.push((Tok::LBracket, Span { start, end: i + 1 }));
                i += 1;
            }
            ']' => {
                out.push((Tok::RBracket, Span { start, end: i + 1 }));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, Span { start, end: i + 1 }));
                i += 1;
            }
            ';' => {
                out.push((Tok::Semi, Span { start, end: i + 1 }));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, Span { start, end: i + 1 }));
                i += 1;
            }
            '+' => {
                out.push((Tok::Plus, Span { start, end: i + 1 }));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, Span { start, end: i + 1 }));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, Span { start, end: i + 1 }));
                i += 1;
            }
            '0'..='9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let n: u64 = text[i..j].parse().map_err(|_| DslError {
                    span: Span { start, end: j },
                    message: "number too large".into(),
                })?;
                out.push((Tok::Nat(n), Span { start, end: j }));
                i = j;
            }
            'a'..='z' | 'A'..='Z' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j] as char).is_ascii_alphabetic() {
                    j += 1;
                }
                out.push((Tok::Word(text[i..j].to_string()), Span { start, end: j }));
                i = j;
            }
            other => {
                return err(
                    Span { start, end: i + 1 },
                    format!("unexpected character '{other}'"),
                )
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, DslError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            len: text.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_span(&self) -> Span {
        self.toks
            .get(self.pos)
            .map(|&(_, s)| s)
            .unwrap_or(Span {
                start: self.len.saturating_sub(1),
                end: self.len,
            })
    }

    fn next(&mut self) -> Option<(Tok, Span)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Span, DslError> {
        match self.next() {
            Some((t, s)) if t == want => Ok(s),
            Some((t, s)) => err(s, format!("expected {want}, found {t}")),
            None => err(self.peek_span(), format!("expected {want}, found end of input")),
        }
    }

    fn expect_nat(&mut self) -> Result<(u64, Span), DslError> {
        match self.next() {
            Some((Tok::Nat(n), s)) => Ok((n, s)),
            Some((t, s)) => err(s, format!("expected a number, found {t}")),
            None => err(self.peek_span(), "expected a number, found end of input"),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn finish(&self) -> Result<(), DslError> {
        if self.at_end() {
            Ok(())
        } else {
            let (t, s) = &self.toks[self.pos];
            err(*s, format!("unexpected trailing input: {t}"))
        }
    }

    fn ring(&mut self) -> Result<RingExpr, DslError> {
        let first = self.atom()?;
        let mut factors = vec![first];
        while matches!(self.peek(), Some(Tok::Word(w)) if w == "x") {
            self.next();
            factors.push(self.atom()?);
        }
        if factors.len() == 1 {
            Ok(factors.pop().unwrap())
        } else {
            let span = factors
                .iter()
                .map(|f| f.span())
                .reduce(Span::merge)
                .unwrap();
            Ok(RingExpr::Product { factors, span })
        }
    }

    fn atom(&mut self) -> Result<RingExpr, DslError> {
        let span0 = self.peek_span();
        match self.next() {
            Some((Tok::Word(w), ws)) => match w.as_str() {
                "Z" => {
                    let (n, ns) = self.expect_nat()?;
                    if matches!(self.peek(), Some(Tok::LBracket)) {
                        self.expect(Tok::LBracket)?;
                        let xs = self.peek_span();
                        match self.next() {
                            Some((Tok::Word(x), _)) if x == "x" => {}
                            _ => return err(xs, "expected 'x' inside brackets"),
                        }
                        self.expect(Tok::RBracket)?;
                        self.expect(Tok::Slash)?;
                        self.expect(Tok::LParen)?;
                        let poly = self.poly()?;
                        let close = self.expect(Tok::RParen)?;
                        Ok(RingExpr::PolyQuotient {
                            p: n,
                            poly,
                            span: ws.merge(close),
                        })
                    } else {
                        Ok(RingExpr::Zn {
                            n,
                            span: ws.merge(ns),
                        })
                    }
                }
                "bool" => {
                    self.expect(Tok::LParen)?;
                    let (k, _) = self.expect_nat()?;
                    let close = self.expect(Tok::RParen)?;
                    Ok(RingExpr::Bool {
                        k,
                        span: ws.merge(close),
                    })
                }
                "quot" | "idealize" | "amalg" => {
                    self.expect(Tok::LParen)?;
                    let ring = Box::new(self.ring()?);
                    self.expect(Tok::Semi)?;
                    let ideal = self.ideal()?;
                    let close = self.expect(Tok::RParen)?;
                    let span = ws.merge(close);
                    Ok(match w.as_str() {
                        "quot" => RingExpr::Quotient { ring, ideal, span },
                        "idealize" => RingExpr::Idealize { ring, ideal, span },
                        _ => RingExpr::Amalg { ring, ideal, span },
                    })
                }
                "loc" => {
                    self.expect(Tok::LParen)?;
                    let ring = Box::new(self.ring()?);
                    self.expect(Tok::Semi)?;
                    let mut elems = vec![self.elem()?];
                    while matches!(self.peek(), Some(Tok::Comma)) {
                        self.next();
                        elems.push(self.elem()?);
                    }
                    let close = self.expect(Tok::RParen)?;
                    Ok(RingExpr::Loc {
                        ring,
                        elems,
                        span: ws.merge(close),
                    })
                }
                other => err(ws, format!("unknown ring constructor '{other}'")),
            },
            Some((Tok::LParen, _)) => {
                let inner = self.ring()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some((t, s)) => err(s, format!("expected a ring expression, found {t}")),
            None => err(span0, "expected a ring expression, found end of input"),
        }
    }

    fn ideal(&mut self) -> Result<IdealExpr, DslError> {
        let span0 = self.peek_span();
        match self.next() {
            Some((Tok::Word(w), ws)) if w == "zero" => Ok(IdealExpr::Zero(ws)),
            Some((Tok::Word(w), ws)) if w == "gen" => {
                self.expect(Tok::LParen)?;
                let mut elems = vec![self.elem()?];
                while matches!(self.peek(), Some(Tok::Comma)) {
                    self.next();
                    elems.push(self.elem()?);
                }
                let close = self.expect(Tok::RParen)?;
                Ok(IdealExpr::Gen(elems, ws.merge(close)))
            }
            Some((t, s)) => err(s, format!("expected 'zero' or 'gen(...)', found {t}")),
            None => err(span0, "expected an ideal, found end of input"),
        }
    }

    fn elem(&mut self) -> Result<ElemExpr, DslError> {
        if matches!(self.peek(), Some(Tok::LParen)) {
            let open = self.expect(Tok::LParen)?;
            let mut elems = vec![self.elem()?];
            while matches!(self.peek(), Some(Tok::Comma)) {
                self.next();
                elems.push(self.elem()?);
            }
            let close = self.expect(Tok::RParen)?;
            Ok(ElemExpr::Tuple(elems, open.merge(close)))
        } else {
            Ok(ElemExpr::Scalar(self.poly()?))
        }
    }

    /// `poly := [sign] term { (+|-) term }`, `term := nat ["x" ["^" nat]] | "x" ["^" nat]`
    fn poly(&mut self) -> Result<PolyExpr, DslError> {
        let mut terms = Vec::new();
        let start = self.peek_span();
        let mut span = start;
        let mut first = true;
        loop {
            let mut sign = 1i64;
            match self.peek() {
                Some(Tok::Plus) if !first => {
                    self.next();
                }
                Some(Tok::Minus) => {
                    self.next();
                    sign = -1;
                }
                _ if first => {}
                _ => break,
            }
            let (coeff, power, tspan) = self.poly_term(sign)?;
            terms.push((coeff, power));
            span = span.merge(tspan);
            first = false;
            if !matches!(self.peek(), Some(Tok::Plus) | Some(Tok::Minus)) {
                break;
            }
        }
        if terms.is_empty() {
            return err(start, "expected a polynomial or integer");
        }
        Ok(PolyExpr { terms, span })
    }

    fn poly_term(&mut self, sign: i64) -> Result<(i64, u64, Span), DslError> {
        let span0 = self.peek_span();
        match self.next() {
            Some((Tok::Nat(n), ns)) => {
                if matches!(self.peek(), Some(Tok::Word(w)) if w == "x") {
                    let (_, xs) = self.next().unwrap();
                    let (pow, ps) = self.opt_power()?;
                    Ok((sign * n as i64, pow, ns.merge(xs).merge(ps)))
                } else {
                    Ok((sign * n as i64, 0, ns))
                }
            }
            Some((Tok::Word(w), ws)) if w == "x" => {
                let (pow, ps) = self.opt_power()?;
                Ok((sign, pow, ws.merge(ps)))
            }
            Some((t, s)) => err(s, format!("expected a polynomial term, found {t}")),
            None => err(span0, "expected a polynomial term, found end of input"),
        }
    }

    fn opt_power(&mut self) -> Result<(u64, Span), DslError> {
        if matches!(self.peek(), Some(Tok::Caret)) {
            let cs = self.expect(Tok::Caret)?;
            let (n, ns) = self.expect_nat()?;
            Ok((n, cs.merge(ns)))
        } else {
            Ok((1, Span { start: 0, end: 0 }))
        }
    }
}

/// Parse a ring expression (syntax only; see [`elaborate`]).
pub fn parse_ring(text: &str) -> Result<RingExpr, DslError> {
    let mut p = Parser::new(text)?;
    let r = p.ring()?;
    p.finish()?;
    Ok(r)
}

pub fn parse_elem_expr(text: &str) -> Result<ElemExpr, DslError> {
    let mut p = Parser::new(text)?;
    let e = p.elem()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_ideal_expr(text: &str) -> Result<IdealExpr, DslError> {
    let mut p = Parser::new(text)?;
    let i = p.ideal()?;
    p.finish()?;
    Ok(i)
}

// ---------------------------------------------------------------------------
// Elaboration
// ---------------------------------------------------------------------------

fn elab_err<T>(span: Span, e: RingError) -> Result<T, DslError> {
    err(span, e.to_string())
}

/// Turn a parsed ring expression into a constructed ring.
pub fn elaborate(expr: &RingExpr) -> Result<FiniteRing, DslError> {
    match expr {
        RingExpr::Zn { n, span } => make_zn(*n).or_else(|e| elab_err(*span, e)),
        RingExpr::Bool { k, span } => {
            if *k == 0 {
                return err(*span, "bool(k) requires k >= 1");
            }
            let z2 = make_zn(2).unwrap();
            if *k == 1 {
                return Ok(z2);
            }
            make_product(vec![z2; *k as usize]).or_else(|e| elab_err(*span, e))
        }
        RingExpr::PolyQuotient { p, poly, span } => {
            let coeffs = poly_coeffs(poly, *p, usize::MAX).map_err(|mut e| {
                e.span = poly.span;
                e
            })?;
            make_poly_quotient(*p, &coeffs).or_else(|e| elab_err(*span, e))
        }
        RingExpr::Product { factors, span } => {
            let rings = factors
                .iter()
                .map(elaborate)
                .collect::<Result<Vec<_>, _>>()?;
            make_product(rings).or_else(|e| elab_err(*span, e))
        }
        RingExpr::Quotient { ring, ideal, span } => {
            let base = elaborate(ring)?;
            let i = elaborate_ideal(&base, ideal)?;
            make_quotient(&base, i.members())
                .map(|(q, _)| q)
                .or_else(|e| elab_err(*span, e))
        }
        RingExpr::Idealize { ring, ideal, span } => {
            let base = elaborate(ring)?;
            let i = elaborate_ideal(&base, ideal)?;
            make_idealization(&base, i.members()).or_else(|e| elab_err(*span, e))
        }
        RingExpr::Amalg { ring, ideal, span } => {
            let base = elaborate(ring)?;
            let i = elaborate_ideal(&base, ideal)?;
            let f = RingHom::identity(&base);
            make_amalgamation(&f, i.members()).or_else(|e| elab_err(*span, e))
        }
        RingExpr::Loc { ring, elems, span } => {
            let base = elaborate(ring)?;
            let s = elems
                .iter()
                .map(|e| elaborate_elem(&base, e))
                .collect::<Result<Vec<_>, _>>()?;
            make_localization(&base, &s)
                .map(|(l, _)| l)
                .or_else(|e| elab_err(*span, e))
        }
    }
}

/// Little-endian coefficient vector of a polynomial term list, with
/// coefficients reduced mod `p`. `max_degree` bounds the exponent.
fn poly_coeffs(poly: &PolyExpr, p: u64, max_degree: usize) -> Result<Vec<u64>, DslError> {
    let deg = poly.terms.iter().map(|&(_, k)| k).max().unwrap_or(0) as usize;
    if deg > max_degree {
        return err(
            poly.span,
            format!("degree {deg} out of range (max {max_degree})"),
        );
    }
    let mut coeffs = vec![0u64; deg + 1];
    for &(c, k) in &poly.terms {
        let cur = coeffs[k as usize] as i64;
        coeffs[k as usize] = (cur + c).rem_euclid(p as i64) as u64;
    }
    Ok(coeffs)
}

fn scalar_int(poly: &PolyExpr) -> Result<i64, DslError> {
    if poly.terms.iter().any(|&(_, k)| k > 0) {
        return err(poly.span, "expected an integer, found a polynomial in x");
    }
    Ok(poly.terms.iter().map(|&(c, _)| c).sum())
}

/// Elaborate an element expression against a constructed ring. Tuple
/// shapes must match the ring's construction.
pub fn elaborate_elem(ring: &FiniteRing, expr: &ElemExpr) -> Result<ElementId, DslError> {
    match ring.construction() {
        Construction::Zn(n) => match expr {
            ElemExpr::Scalar(p) => {
                let v = scalar_int(p)?;
                Ok(ElementId(v.rem_euclid(*n as i64) as u32))
            }
            ElemExpr::Tuple(_, span) => err(*span, "this ring takes integer elements, not tuples"),
        },
        Construction::Product(factors) => match expr {
            ElemExpr::Tuple(parts, span) => {
                if parts.len() != factors.len() {
                    return err(
                        *span,
                        format!(
                            "tuple arity {} does not match product arity {}",
                            parts.len(),
                            factors.len()
                        ),
                    );
                }
                let ids = parts
                    .iter()
                    .zip(factors)
                    .map(|(e, r)| elaborate_elem(r, e))
                    .collect::<Result<Vec<_>, _>>()?;
                ring.product_encode(&ids).or_else(|e| elab_err(*span, e))
            }
            ElemExpr::Scalar(p) => err(p.span, "product elements are tuples"),
        },
        Construction::PolyQuotient { p, modulus } => match expr {
            ElemExpr::Scalar(pe) => {
                let d = modulus.len() - 1;
                let coeffs = poly_coeffs(pe, *p, d - 1)?;
                let mut idx = 0u64;
                for &c in coeffs.iter().rev() {
                    idx = idx * p + c;
                }
                Ok(ElementId(idx as u32))
            }
            ElemExpr::Tuple(_, span) => err(*span, "polynomial-ring elements are polynomials"),
        },
        Construction::Quotient(q) | Construction::Localization(q) => {
            let base_elem = elaborate_elem(&q.base, expr)?;
            Ok(ElementId(q.elem_to_coset[base_elem.0 as usize]))
        }
        Construction::Idealization { base, module } => match expr {
            ElemExpr::Tuple(parts, span) => {
                if parts.len() != 2 {
                    return err(*span, "idealization elements are pairs (r,m)");
                }
                let r = elaborate_elem(base, &parts[0])?;
                let m = elaborate_elem(module, &parts[1])?;
                Ok(ElementId(r.0 * module.order() + m.0))
            }
            ElemExpr::Scalar(p) => err(p.span, "idealization elements are pairs (r,m)"),
        },
        Construction::Amalgamation(a) => match expr {
            ElemExpr::Tuple(parts, span) => {
                if parts.len() != 2 {
                    return err(*span, "amalgamation elements are pairs (a,b)");
                }
                let x = elaborate_elem(&a.a_ring, &parts[0])?;
                let y = elaborate_elem(&a.b_ring, &parts[1])?;
                match a.index.get(&(x.0, y.0)) {
                    Some(&i) => Ok(ElementId(i)),
                    None => err(
                        *span,
                        format!(
                            "({},{}) is not in the amalgamation subring",
                            a.a_ring.label(x),
                            a.b_ring.label(y)
                        ),
                    ),
                }
            }
            ElemExpr::Scalar(p) => err(p.span, "amalgamation elements are pairs (a,b)"),
        },
        Construction::Opaque => match expr {
            ElemExpr::Scalar(p) => {
                let v = scalar_int(p)?;
                if v < 0 || v >= ring.order() as i64 {
                    return err(p.span, "element index out of range");
                }
                Ok(ElementId(v as u32))
            }
            ElemExpr::Tuple(_, span) => err(*span, "this ring takes integer element indices"),
        },
    }
}

pub fn parse_element(ring: &FiniteRing, text: &str) -> Result<ElementId, DslError> {
    let e = parse_elem_expr(text)?;
    elaborate_elem(ring, &e)
}

pub fn elaborate_ideal(ring: &FiniteRing, expr: &IdealExpr) -> Result<Ideal, DslError> {
    match expr {
        IdealExpr::Zero(_) => Ok(ideal_from_generators(ring, &[])),
        IdealExpr::Gen(elems, _) => {
            let gens = elems
                .iter()
                .map(|e| elaborate_elem(ring, e))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ideal_from_generators(ring, &gens))
        }
    }
}

pub fn parse_ideal(ring: &FiniteRing, text: &str) -> Result<Ideal, DslError> {
    let i = parse_ideal_expr(text)?;
    elaborate_ideal(ring, &i)
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

pub fn render_ring(expr: &RingExpr) -> String {
    match expr {
        RingExpr::Zn { n, .. } => format!("Z{n}"),
        RingExpr::Bool { k, .. } => format!("bool({k})"),
        RingExpr::PolyQuotient { p, poly, .. } => {
            format!("Z{p}[x]/({})", render_poly(poly))
        }
        RingExpr::Product { factors, .. } => factors
            .iter()
            .map(|f| match f {
                RingExpr::Product { .. } => format!("({})", render_ring(f)),
                _ => render_ring(f),
            })
            .collect::<Vec<_>>()
            .join(" x "),
        RingExpr::Quotient { ring, ideal, .. } => {
            format!("quot({};{})", render_ring(ring), render_ideal(ideal))
        }
        RingExpr::Idealize { ring, ideal, .. } => {
            format!("idealize({};{})", render_ring(ring), render_ideal(ideal))
        }
        RingExpr::Amalg { ring, ideal, .. } => {
            format!("amalg({};{})", render_ring(ring), render_ideal(ideal))
        }
        RingExpr::Loc { ring, elems, .. } => format!(
            "loc({};{})",
            render_ring(ring),
            elems.iter().map(render_elem).collect::<Vec<_>>().join(",")
        ),
    }
}

pub fn render_ideal(expr: &IdealExpr) -> String {
    match expr {
        IdealExpr::Zero(_) => "zero".to_string(),
        IdealExpr::Gen(elems, _) => format!(
            "gen({})",
            elems.iter().map(render_elem).collect::<Vec<_>>().join(",")
        ),
    }
}

pub fn render_elem(expr: &ElemExpr) -> String {
    match expr {
        ElemExpr::Scalar(p) => render_poly(p),
        ElemExpr::Tuple(parts, _) => format!(
            "({})",
            parts.iter().map(render_elem).collect::<Vec<_>>().join(",")
        ),
    }
}

pub fn render_poly(poly: &PolyExpr) -> String {
    let mut out = String::new();
    for (i, &(c, k)) in poly.terms.iter().enumerate() {
        let mag = c.unsigned_abs();
        if c < 0 {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        match (k, mag) {
            (0, m) => out.push_str(&m.to_string()),
            (1, 1) => out.push('x'),
            (1, m) => out.push_str(&format!("{m}x")),
            (k, 1) => out.push_str(&format!("x^{k}")),
            (k, m) => out.push_str(&format!("{m}x^{k}")),
        }
    }
    out
}
