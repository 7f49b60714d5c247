use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::{GradedBasis, Monomial};
use crate::error::{input, Error, Result};
use crate::linalg::{Rational, SparseVec};

/// Which of the two dual polynomial rings a polynomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingSide {
    /// `S = Q[x_0..x_n]`, the forms being acted on.
    Point,
    /// `T = Q[d_0..d_n]`, the differential operators.
    Operator,
}

impl RingSide {
    pub fn prefix(self) -> char {
        match self {
            RingSide::Point => 'x',
            RingSide::Operator => 'd',
        }
    }

    pub fn dual(self) -> RingSide {
        match self {
            RingSide::Point => RingSide::Operator,
            RingSide::Operator => RingSide::Point,
        }
    }
}

/// Sparse polynomial with exact rational coefficients. No zero coefficient is stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    side: RingSide,
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(side: RingSide, num_vars: usize) -> Self {
        Poly {
            side,
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(side: RingSide, num_vars: usize, c: Rational) -> Self {
        Poly::term(side, c, Monomial::one(num_vars))
    }

    pub fn term(side: RingSide, c: Rational, m: Monomial) -> Self {
        let mut p = Poly::zero(side, m.num_vars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(side: RingSide, num_vars: usize, i: usize) -> Self {
        Poly::term(side, Rational::one(), Monomial::var(num_vars, i))
    }

    pub fn from_terms(
        side: RingSide,
        num_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Poly::zero(side, num_vars);
        for (m, c) in terms {
            assert_eq!(
                m.num_vars(),
                num_vars,
                "monomial has the wrong number of variables"
            );
            p.add_term(m, c);
        }
        p
    }

    /// Polynomial with coordinates `v` in the monomial basis `basis`.
    pub fn from_coords(side: RingSide, basis: &GradedBasis, v: &SparseVec) -> Self {
        Poly::from_terms(
            side,
            basis.num_vars(),
            v.iter().map(|(i, c)| (basis.get(i).clone(), c.clone())),
        )
    }

    pub fn from_dense(side: RingSide, basis: &GradedBasis, v: &[Rational]) -> Self {
        Poly::from_terms(
            side,
            basis.num_vars(),
            v.iter()
                .enumerate()
                .map(|(i, c)| (basis.get(i).clone(), c.clone())),
        )
    }

    /// Coordinates in the degree basis `basis`; fails when a term lies outside it.
    pub fn coords(&self, basis: &GradedBasis) -> Result<SparseVec> {
        let mut pairs = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let i = basis.index_of(m).ok_or_else(|| {
                Error::Input(format!(
                    "term of degree {} outside the degree-{} basis",
                    m.degree(),
                    basis.degree()
                ))
            })?;
            pairs.push((i, c.clone()));
        }
        Ok(SparseVec::from_pairs(pairs))
    }

    pub fn side(&self) -> RingSide {
        self.side
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn with_side(mut self, side: RingSide) -> Self {
        self.side = side;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Largest total degree of a term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Common degree of all terms. The zero polynomial is homogeneous of every
    /// degree and reports `None` here.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.side, self.num_vars);
        }
        Poly {
            side: self.side,
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Coefficient of the largest monomial.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// Scalar multiple whose leading coefficient is 1.
    pub fn normalized(&self) -> Poly {
        match self.leading_coefficient() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// `Some(c)` with `self = c * other` when the two are proportional and nonzero.
    pub fn proportionality(&self, other: &Poly) -> Option<Rational> {
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let c = self.leading_coefficient()? / other.leading_coefficient()?;
        (*self == other.scale(&c)).then_some(c)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::constant(self.side, self.num_vars, Rational::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(
            point.len(),
            self.num_vars,
            "evaluation point has the wrong length"
        );
        self.terms.iter().fold(Rational::zero(), |acc, (m, c)| {
            let v = m
                .exponents()
                .iter()
                .zip(point)
                .fold(Rational::one(), |a, (&e, x)| {
                    a * num_traits::pow(x.clone(), e as usize)
                });
            acc + c * v
        })
    }

    /// Substitutes `x_i -> images[i]`, all images living in one common ring.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.num_vars, "one image per variable");
        let (side, n) = images
            .first()
            .map_or((self.side, self.num_vars), |p| (p.side, p.num_vars));
        let mut out = Poly::zero(side, n);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(side, n, c.clone());
            for (img, &e) in images.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &img.pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    fn check_compatible(&self, other: &Poly) {
        assert_eq!(self.side, other.side, "polynomials from different rings");
        assert_eq!(
            self.num_vars, other.num_vars,
            "polynomials with different variable counts"
        );
    }

    /// Parses the text grammar, inferring the ring from the variable prefix and
    /// the variable count from the largest index.
    pub fn parse(text: &str) -> Result<Poly> {
        let parsed = Parser::new(text).parse()?;
        let side = parsed.side.unwrap_or(RingSide::Point);
        let n = parsed.max_index.map_or(1, |i| i + 1);
        Ok(parsed.into_poly(side, n))
    }

    /// Parses into a fixed ring with a fixed number of variables.
    pub fn parse_as(text: &str, side: RingSide, num_vars: usize) -> Result<Poly> {
        let parsed = Parser::new(text).parse()?;
        if let Some(s) = parsed.side {
            if s != side {
                return input(format!(
                    "expected variables with prefix '{}'",
                    side.prefix()
                ));
            }
        }
        if let Some(i) = parsed.max_index {
            if i >= num_vars {
                return input(format!(
                    "variable index {i} out of range for {num_vars} variables"
                ));
            }
        }
        Ok(parsed.into_poly(side, num_vars))
    }

    /// Formats with custom variable names instead of the `x`/`d` prefixes.
    pub fn display_with(&self, names: &[&str]) -> String {
        format_poly(self, |i| names[i].to_string())
    }
}

fn format_poly(p: &Poly, name: impl Fn(usize) -> String) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let factors: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    name(i)
                } else {
                    format!("{}^{e}", name(i))
                }
            })
            .collect();
        if factors.is_empty() {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                out.push_str(&a.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = self.side.prefix();
        f.write_str(&format_poly(self, |i| format!("{prefix}{i}")))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_compatible(rhs);
        let mut out = Poly::zero(self.side, self.num_vars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

struct ParsedPoly {
    side: Option<RingSide>,
    max_index: Option<usize>,
    terms: Vec<(Rational, Vec<(usize, u32)>)>,
}

impl ParsedPoly {
    fn into_poly(self, side: RingSide, n: usize) -> Poly {
        let mut p = Poly::zero(side, n);
        for (c, factors) in self.terms {
            let mut e = vec![0u32; n];
            for (i, k) in factors {
                e[i] += k;
            }
            p.add_term(Monomial::new(e), c);
        }
        p
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    side: Option<RingSide>,
    max_index: Option<usize>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text: text.as_bytes(),
            pos: 0,
            side: None,
            max_index: None,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string parses"))
    }

    fn small(&mut self) -> Result<u64> {
        let at = self.pos;
        let n = self.integer()?;
        u64::try_from(n).map_err(|_| Error::Parse {
            offset: at,
            message: "number too large".into(),
        })
    }

    fn parse(mut self) -> Result<ParsedPoly> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(c) => return self.err(format!("expected '+' or '-', found '{}'", c as char)),
            };
            first = false;
            let (mut c, factors) = self.term()?;
            if negative {
                c = -c;
            }
            terms.push((c, factors));
        }
        Ok(ParsedPoly {
            side: self.side,
            max_index: self.max_index,
            terms,
        })
    }

    fn term(&mut self) -> Result<(Rational, Vec<(usize, u32)>)> {
        let mut coeff = Rational::one();
        let mut factors = Vec::new();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::Parse {
                            offset: at,
                            message: "zero denominator".into(),
                        });
                    }
                    d
                } else {
                    BigInt::one()
                };
                coeff = Rational::new(num, den);
                if !self.eat(b'*') {
                    return Ok((coeff, factors));
                }
                factors.push(self.factor()?);
            }
            Some(b'x') | Some(b'd') => factors.push(self.factor()?),
            Some(c) => return self.err(format!("unexpected '{}'", c as char)),
            None => return self.err("expected a term"),
        }
        while self.eat(b'*') {
            factors.push(self.factor()?);
        }
        Ok((coeff, factors))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        let side = match self.peek() {
            Some(b'x') => RingSide::Point,
            Some(b'd') => RingSide::Operator,
            _ => return self.err("expected a variable like x0 or d0"),
        };
        if let Some(s) = self.side {
            if s != side {
                return self.err("cannot mix x and d variables");
            }
        }
        self.side = Some(side);
        self.pos += 1;
        if !self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return self.err("variable needs an index");
        }
        let idx = self.small()? as usize;
        self.max_index = Some(self.max_index.map_or(idx, |m| m.max(idx)));
        let exp = if self.eat(b'^') {
            let at = self.pos;
            let e = self.small()?;
            u32::try_from(e).map_err(|_| Error::Parse {
                offset: at,
                message: "exponent too large".into(),
            })?
        } else {
            1
        };
        Ok((idx, exp))
    }
}
