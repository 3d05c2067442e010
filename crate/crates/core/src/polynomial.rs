//! Sparse multivariate polynomials over a [`Field`], plus the ASCII parser
//! shared by ring presentations, fractions and module matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::monomial::Monomial;

/// A polynomial: monomial -> nonzero coefficient, keyed in deglex order so
/// the last entry is the leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        Self::term(field, Monomial::var(nvars, i), field.one())
    }

    pub fn term(field: Field, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(field, m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Lowest degree of a term (the order at the origin); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let mut p = Self::zero(self.field, self.nvars);
        for (m, c) in self.terms.iter().filter(|(m, _)| m.degree() == d) {
            p.terms.insert(m.clone(), c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Drops every term of degree `>= bound`.
    pub fn truncate(&mut self, bound: u32) {
        self.terms.retain(|m, _| m.degree() < bound);
    }

    pub fn truncated(mut self, bound: u32) -> Self {
        self.truncate(bound);
        self
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let mut p = Self::zero(self.field, self.nvars);
        if c.is_zero() {
            return p;
        }
        for (m, a) in &self.terms {
            p.terms.insert(m.clone(), a * c);
        }
        p
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        let mut p = Self::zero(self.field, self.nvars);
        if c.is_zero() {
            return p;
        }
        for (n, a) in &self.terms {
            p.terms.insert(n.mul(m), a * c);
        }
        p
    }

    /// Product with terms of degree `>= bound` discarded as they are formed.
    pub fn mul_truncated(&self, other: &Polynomial, bound: u32) -> Polynomial {
        let mut p = Self::zero(self.field, self.nvars);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                if m.degree() + n.degree() < bound {
                    p.add_term(m.mul(n), a * b);
                }
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::one(self.field, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`. Images may live in a
    /// polynomial ring with a different number of variables.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let target_vars = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Self::zero(self.field, target_vars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(self.field, target_vars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Self::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[i] -= 1;
            out.add_term(
                Monomial::from_exponents(ex),
                c * &self.field.from_i64(e as i64),
            );
        }
        out
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Variables occurring in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.nvars];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        (0..self.nvars).filter(|&i| used[i]).collect()
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, abs) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.render(names));
            } else {
                out.push_str(&format!("{}*{}", abs, m.render(names)));
            }
        }
        out
    }
}

impl<'a> std::ops::Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<'a> std::ops::Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c);
        }
        p
    }
}

impl<'a> std::ops::Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut p = Polynomial::zero(self.field, self.nvars);
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                p.add_term(m.mul(n), a * b);
            }
        }
        p
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-self.field.one())
    }
}

/// Display with generic variable names `v0, v1, ...`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Int(digits.parse().expect("digits")));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
            continue;
        }
        out.push(match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        });
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: Field,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut neg = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            neg = true;
        } else if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
        }
        let mut acc = self.product()?;
        if neg {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.product()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.product()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let f = self.power()?;
            acc = &acc * &f;
        }
        match self.peek() {
            Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => Err(Error::Parse(
                "juxtaposition is not allowed; use `*`".to_string(),
            )),
            _ => Ok(acc),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Int(e)) => {
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("expected integer exponent after `^`".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let n = self.names.len();
        match self.next() {
            Some(Tok::Int(v)) => Ok(Polynomial::constant(
                self.field,
                n,
                self.field.from_bigint(&v),
            )),
            Some(Tok::Ident(name)) => match self.names.iter().position(|v| *v == name) {
                Some(i) => Ok(Polynomial::var(self.field, n, i)),
                None => Err(Error::UnknownVariable(name)),
            },
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse("unbalanced parenthesis".into())),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// Parses a polynomial in the given variables, e.g. `x*y^2 - 3*z`.
pub fn parse_polynomial(text: &str, field: Field, names: &[String]) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        field,
        names,
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input in `{text}` at token {}",
            p.pos
        )));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_render() {
        let n = names(&["x", "y"]);
        let p = parse_polynomial("x*y^2 - 3*y + (x+y)^2", Field::Rationals, &n).unwrap();
        assert_eq!(p.render(&n), "x*y^2 + x^2 + 2*x*y + y^2 - 3*y");
    }

    #[test]
    fn juxtaposition_rejected() {
        let n = names(&["x", "y"]);
        assert!(matches!(
            parse_polynomial("2x", Field::Rationals, &n),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_polynomial("x y", Field::Rationals, &n),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_polynomial("w", Field::Rationals, &n),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn substitution() {
        let n = names(&["x", "y", "z"]);
        let f = Field::Rationals;
        let p = parse_polynomial("y^2 - y*z", f, &n).unwrap();
        let imgs = vec![
            Polynomial::var(f, 3, 0),
            parse_polynomial("y+z", f, &n).unwrap(),
            Polynomial::var(f, 3, 1),
        ];
        assert_eq!(p.substitute(&imgs).render(&n), "y*z + z^2");
    }
}
