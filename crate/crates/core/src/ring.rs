//! Truncated local rings `k[[x1..xn]]/I` represented as `k[x]/(I + m^N)`.
//!
//! Since `R/m^N R = k[[x]]/(I + m^N) = k[x]/(I + m^N)`, arithmetic in the
//! truncation is exact: every answer computed here is an exact statement
//! about `R/m^N`, and is reported as "at precision N" when it is used as a
//! statement about `R` itself.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::groebner;
use crate::linalg::{Echelon, Row};
use crate::monomial::Monomial;
use crate::polynomial::{parse_polynomial, Polynomial};

pub const DEFAULT_PRECISION: u32 = 12;

pub type Ring = Arc<RingPresentation>;

/// A presentation `k[[vars]]/(relations)` truncated at `m^precision`, with
/// its reduction system (reduced Gröbner basis of `I + m^N`) built once.
#[derive(Debug)]
pub struct RingPresentation {
    field: Field,
    names: Vec<String>,
    relations: Vec<Polynomial>,
    precision: u32,
    groebner: Vec<Polynomial>,
    monomial_basis: bool,
    standard: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl RingPresentation {
    pub fn new(
        field: Field,
        names: Vec<String>,
        relations: Vec<Polynomial>,
        precision: u32,
    ) -> Result<Ring> {
        if precision < 4 {
            return Err(Error::PrecisionTooSmall(precision));
        }
        let nvars = names.len();
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(Error::Parse(format!("duplicate variable `{n}`")));
            }
        }
        let mut rels = Vec::new();
        for r in relations {
            if r.nvars() != nvars {
                return Err(Error::Parse("relation uses a different variable list".into()));
            }
            if !r.constant_term().is_zero() {
                return Err(Error::BadRelation(r.render(&names)));
            }
            if !r.is_zero() {
                rels.push(r);
            }
        }
        let groebner = groebner::truncated_groebner(&rels, precision);
        let monomial_basis = groebner.iter().all(Polynomial::is_monomial);
        let standard: Vec<Monomial> = Monomial::all_below(nvars, precision)
            .into_iter()
            .filter(|m| {
                !groebner
                    .iter()
                    .any(|g| g.leading().expect("nonzero").0.divides(m))
            })
            .collect();
        let index = standard
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(Arc::new(RingPresentation {
            field,
            names,
            relations: rels,
            precision,
            groebner,
            monomial_basis,
            standard,
            index,
        }))
    }

    /// Parses `QQ[[x,y]]/(x*y^2)` style text at the given precision.
    pub fn parse(text: &str, precision: u32) -> Result<Ring> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let open = compact
            .find("[[")
            .ok_or_else(|| Error::Parse("expected `[[`".into()))?;
        let field = parse_field(&compact[..open])?;
        let close = compact[open..]
            .find("]]")
            .map(|i| i + open)
            .ok_or_else(|| Error::Parse("expected `]]`".into()))?;
        let vars: Vec<String> = compact[open + 2..close]
            .split(',')
            .map(|s| s.to_string())
            .collect();
        if vars.iter().any(|v| {
            v.is_empty()
                || !v.chars().next().unwrap().is_ascii_alphabetic()
                || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        }) {
            return Err(Error::Parse(format!(
                "bad variable list `{}`",
                &compact[open + 2..close]
            )));
        }
        let rest = &compact[close + 2..];
        let inner = rest
            .strip_prefix("/(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse("expected `/( ... )` after variables".into()))?;
        let mut relations = Vec::new();
        for piece in split_top_level(inner) {
            if piece.is_empty() {
                if inner.is_empty() {
                    continue;
                }
                return Err(Error::Parse("empty relation".into()));
            }
            relations.push(parse_polynomial(&piece, field, &vars)?);
        }
        RingPresentation::new(field, vars, relations, precision)
    }

    /// Same presentation at another precision.
    pub fn with_precision(&self, precision: u32) -> Result<Ring> {
        RingPresentation::new(
            self.field,
            self.names.clone(),
            self.relations.clone(),
            precision,
        )
    }

    /// Same presentation with extra relations appended (a quotient ring).
    pub fn quotient(&self, extra: &[Polynomial]) -> Result<Ring> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        RingPresentation::new(self.field, self.names.clone(), rels, self.precision)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Reduced Gröbner basis of `I + m^N` (elements of degree `< N`).
    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.groebner
    }

    /// True when `I + m^N` is generated by monomials.
    pub fn is_monomial(&self) -> bool {
        self.monomial_basis
    }

    /// k-dimension of `R/m^N`.
    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    /// Certificate that `R` itself is Artinian: if every monomial of degree
    /// `N-1` has normal form zero, then `m^(N-1) ⊆ I + m^N`, hence
    /// `m^(N-1) ⊆ I` by Nakayama. A `false` answer only means the colength
    /// could not be certified at this precision.
    pub fn finite_colength_certified(&self) -> bool {
        let f = self.field;
        Monomial::all_of_degree(self.nvars(), self.precision - 1)
            .into_iter()
            .all(|m| self.reduce_poly(&Polynomial::term(f, m, f.one())).is_zero())
    }

    pub fn same_as(&self, other: &RingPresentation) -> bool {
        std::ptr::eq(self, other)
            || (self.field == other.field
                && self.names == other.names
                && self.precision == other.precision
                && self.relations == other.relations)
    }

    pub fn reduce_poly(&self, p: &Polynomial) -> Polynomial {
        if self.monomial_basis {
            let mut out = Polynomial::zero(self.field, self.nvars());
            for (m, c) in p.terms() {
                if self.index.contains_key(m) {
                    out.add_term(m.clone(), c.clone());
                }
            }
            out
        } else {
            groebner::reduce(p, &self.groebner, self.precision)
        }
    }

    pub fn render(&self) -> String {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| r.render(&self.names))
            .collect();
        format!(
            "{}[[{}]]/({})",
            self.field,
            self.names.join(","),
            rels.join(", ")
        )
    }

    /// Coordinates of a normal-form polynomial over the standard monomials.
    pub fn coords_of(&self, nf: &Polynomial) -> Row {
        let mut row: Row = nf
            .terms()
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect();
        row.sort_by_key(|(i, _)| *i);
        row
    }

    pub fn poly_from_coords(&self, row: &[(usize, Scalar)]) -> Polynomial {
        let mut p = Polynomial::zero(self.field, self.nvars());
        for (i, c) in row {
            p.add_term(self.standard[*i].clone(), c.clone());
        }
        p
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn parse_field(s: &str) -> Result<Field> {
    if s == "QQ" {
        return Ok(Field::Rationals);
    }
    if let Some(inner) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
        let p: u64 = inner
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus `{inner}`")))?;
        return Field::prime(p);
    }
    Err(Error::Parse(format!("unknown field `{s}`")))
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out
}

/// Parses a ring presentation; see [`RingPresentation::parse`].
pub fn parse_ring(text: &str, precision: u32) -> Result<Ring> {
    RingPresentation::parse(text, precision)
}

/// Normal form of `p` in `ring`.
pub fn normal_form(p: &Polynomial, ring: &Ring) -> Result<RingElem> {
    if p.nvars() != ring.nvars() || p.field() != ring.field() {
        return Err(Error::UnknownVariable(format!(
            "polynomial over {} variables used in {}",
            p.nvars(),
            ring.render()
        )));
    }
    Ok(RingElem::from_poly(ring, p))
}

/// An element of a presented ring, always stored in normal form.
#[derive(Clone, Debug)]
pub struct RingElem {
    ring: Ring,
    poly: Polynomial,
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.poly == other.poly
    }
}

impl Eq for RingElem {}

impl RingElem {
    pub fn from_poly(ring: &Ring, p: &Polynomial) -> Self {
        RingElem {
            ring: ring.clone(),
            poly: ring.reduce_poly(p),
        }
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        let p = parse_polynomial(text, ring.field(), ring.names())?;
        Ok(RingElem::from_poly(ring, &p))
    }

    pub fn from_coords(ring: &Ring, row: &[(usize, Scalar)]) -> Self {
        RingElem {
            ring: ring.clone(),
            poly: ring.poly_from_coords(row),
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        RingElem {
            ring: ring.clone(),
            poly: Polynomial::zero(ring.field(), ring.nvars()),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_i64(ring, 1)
    }

    pub fn from_i64(ring: &Ring, v: i64) -> Self {
        let p = Polynomial::constant(ring.field(), ring.nvars(), ring.field().from_i64(v));
        RingElem::from_poly(ring, &p)
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        RingElem::from_poly(ring, &Polynomial::var(ring.field(), ring.nvars(), i))
    }

    /// The variables, i.e. generators of the maximal ideal.
    pub fn vars(ring: &Ring) -> Vec<RingElem> {
        (0..ring.nvars()).map(|i| RingElem::var(ring, i)).collect()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !self.poly.constant_term().is_zero()
    }

    pub fn coords(&self) -> Row {
        self.ring.coords_of(&self.poly)
    }

    fn check(&self, other: &RingElem) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn checked_add(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(RingElem {
            ring: self.ring.clone(),
            poly: &self.poly + &other.poly,
        })
    }

    pub fn checked_sub(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(RingElem {
            ring: self.ring.clone(),
            poly: &self.poly - &other.poly,
        })
    }

    pub fn checked_mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        let prod = self.poly.mul_truncated(&other.poly, self.ring.precision());
        Ok(RingElem::from_poly(&self.ring, &prod))
    }

    pub fn scale(&self, c: &Scalar) -> RingElem {
        RingElem {
            ring: self.ring.clone(),
            poly: self.poly.scale(c),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> RingElem {
        let p = self
            .poly
            .mul_term(m, &self.ring.field().one())
            .truncated(self.ring.precision());
        RingElem::from_poly(&self.ring, &p)
    }

    pub fn pow(&self, e: u32) -> RingElem {
        let mut acc = RingElem::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Smallest `e >= 1` with `self^e = 0` at precision, if any.
    pub fn nilpotency_index(&self) -> Option<u32> {
        let mut acc = self.clone();
        for e in 1..=self.ring.precision() {
            if acc.is_zero() {
                return Some(e);
            }
            acc = &acc * self;
        }
        None
    }

    pub fn render(&self) -> String {
        self.poly.render(self.ring.names())
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Ring arithmetic; panics if the operands come from different presentations.
/// Use the `checked_*` methods to get [`Error::PresentationMismatch`] instead.
impl<'a> std::ops::Add<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        self.checked_add(rhs).expect("presentation mismatch")
    }
}

impl<'a> std::ops::Sub<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        self.checked_sub(rhs).expect("presentation mismatch")
    }
}

impl<'a> std::ops::Mul<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        self.checked_mul(rhs).expect("presentation mismatch")
    }
}

impl std::ops::Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.scale(&-self.ring.field().one())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
}

pub fn ring_arith(a: &RingElem, b: &RingElem, op: ArithOp) -> Result<RingElem> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

/// An ideal of a presented ring given by generators. All questions are
/// answered in `R/m^N` through the k-span of `monomial * generator`.
#[derive(Clone, Debug)]
pub struct IdealHandle {
    ring: Ring,
    gens: Vec<RingElem>,
}

impl IdealHandle {
    pub fn new(ring: &Ring, gens: Vec<RingElem>) -> Result<Self> {
        for g in &gens {
            if !g.ring.same_as(ring) {
                return Err(Error::PresentationMismatch);
            }
        }
        Ok(IdealHandle {
            ring: ring.clone(),
            gens,
        })
    }

    pub fn maximal(ring: &Ring) -> Self {
        IdealHandle {
            ring: ring.clone(),
            gens: RingElem::vars(ring),
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        IdealHandle {
            ring: ring.clone(),
            gens: Vec::new(),
        }
    }

    /// `m^k`, generated by the monomials of degree `k`.
    pub fn maximal_power(ring: &Ring, k: u32) -> Self {
        let gens = Monomial::all_of_degree(ring.nvars(), k)
            .into_iter()
            .map(|m| RingElem::from_poly(ring, &Polynomial::term(ring.field(), m, ring.field().one())))
            .collect();
        IdealHandle {
            ring: ring.clone(),
            gens,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[RingElem] {
        &self.gens
    }

    /// k-basis (echelon form) of the ideal inside `R/m^N`.
    pub fn span(&self) -> Echelon {
        let mut e = Echelon::new(self.ring.dim());
        for g in &self.gens {
            for mu in self.ring.standard_monomials() {
                e.insert(g.mul_monomial(mu).coords());
            }
        }
        e
    }

    /// k-basis of `m * J` inside `R/m^N`.
    pub fn span_times_maximal(&self) -> Echelon {
        let mut e = Echelon::new(self.ring.dim());
        for g in &self.gens {
            for mu in self.ring.standard_monomials().iter().filter(|m| !m.is_one()) {
                e.insert(g.mul_monomial(mu).coords());
            }
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.span().rank()
    }

    pub fn contains(&self, p: &RingElem) -> Result<bool> {
        if !p.ring.same_as(&self.ring) {
            return Err(Error::PresentationMismatch);
        }
        Ok(self.span().contains(&p.coords()))
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool> {
        if !other.ring.same_as(&self.ring) {
            return Err(Error::PresentationMismatch);
        }
        let span = self.span();
        Ok(other.gens.iter().all(|g| span.contains(&g.coords())))
    }

    pub fn equals(&self, other: &IdealHandle) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(RingElem::is_zero)
    }

    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle> {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.checked_mul(b)?);
            }
        }
        IdealHandle::new(&self.ring, gens)
    }

    pub fn in_maximal(&self) -> bool {
        self.gens.iter().all(|g| !g.is_unit())
    }

    /// `dim_k J / mJ`, the minimal number of generators (at precision).
    pub fn num_generators(&self) -> Result<usize> {
        if !self.in_maximal() {
            return Err(Error::NotInMaximalIdeal);
        }
        Ok(self.span().rank() - self.span_times_maximal().rank())
    }

    /// A minimal generating subset: keeps generators whose images in
    /// `J/mJ` are independent, in the given order.
    pub fn minimalized(&self) -> Result<IdealHandle> {
        if !self.in_maximal() {
            return Err(Error::NotInMaximalIdeal);
        }
        let mut e = self.span_times_maximal();
        let mut gens = Vec::new();
        for g in &self.gens {
            if e.insert(g.coords()) {
                gens.push(g.clone());
            }
        }
        IdealHandle::new(&self.ring, gens)
    }

    pub fn render(&self) -> String {
        let g: Vec<String> = self.gens.iter().map(RingElem::render).collect();
        format!("({})", g.join(", "))
    }
}

/// Membership of `p` in `J` (inside `R/m^N`).
pub fn ideal_member(p: &RingElem, j: &IdealHandle) -> Result<bool> {
    j.contains(p)
}
