//! Localizations of a one-dimensional ring at its minimal primes.
//!
//! In a monomial chart a minimal prime `P` is generated by all variables but
//! one, say `t`. Inverting everything outside `P` turns `t` into a unit, so
//! the stalk is `K[vars of P]/I_P` with `K = k(t)`, and `I_P` is obtained by
//! deleting `t` from the monomial generators. The supported stalks are
//! fields and chain rings `K[s]/(s^m)`; both have principal maximal ideal,
//! so matrices over them diagonalize with minimal-valuation pivots.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;
use crate::primes::{self, Chart};
use crate::ring::{IdealHandle, Ring};

/// Dense univariate polynomial, coefficients from degree 0 upward, with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        UniPoly::new(field, Vec::new())
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(c.field(), vec![c])
    }

    /// `c * t^e`.
    pub fn monomial(c: Scalar, e: usize) -> Self {
        let field = c.field();
        let mut v = vec![field.zero(); e];
        v.push(c);
        UniPoly::new(field, v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        let v = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
            .collect();
        UniPoly::new(self.field, v)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut v = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.field, v)
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().unwrap().inv().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut q = vec![self.field.zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] * &inv;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    let k = top - dd + j;
                    rem[k] = &rem[k] - &(&c * b);
                }
                q[top - dd] = c;
            }
            rem.pop();
        }
        (UniPoly::new(self.field, q), UniPoly::new(self.field, rem))
    }

    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    pub fn render(&self, var: &str) -> String {
        let mut p = Polynomial::zero(self.field, 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial::from_exponents(vec![i as u32]), c.clone());
        }
        p.render(&[var.to_string()])
    }
}

/// An element of `k(t)`: reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero(num.field);
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lc = d.lead().unwrap().inv().expect("nonzero");
        RatFunc {
            num: n.scale(&lc),
            den: d.scale(&lc),
        }
    }

    pub fn zero(field: Field) -> Self {
        RatFunc {
            num: UniPoly::zero(field),
            den: UniPoly::constant(field.one()),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        let field = p.field;
        RatFunc::new(p, UniPoly::constant(field.one()))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Option<RatFunc> {
        (!self.is_zero()).then(|| RatFunc::new(self.den.clone(), self.num.clone()))
    }

    pub fn render(&self, var: &str) -> String {
        if self.den.degree() == Some(0) {
            self.num.render(var)
        } else {
            format!("({})/({})", self.num.render(var), self.den.render(var))
        }
    }
}

/// Element of the chain ring `K[s]/(s^m)`, stored as `m` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainElem {
    coeffs: Vec<RatFunc>,
}

impl ChainElem {
    pub fn zero(field: Field, m: usize) -> Self {
        ChainElem {
            coeffs: vec![RatFunc::zero(field); m],
        }
    }

    pub fn length(&self) -> usize {
        self.coeffs.len()
    }

    /// Power of `s` dividing the element; `m` for zero.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation() == self.length()
    }

    pub fn add(&self, o: &ChainElem) -> ChainElem {
        ChainElem {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &ChainElem) -> ChainElem {
        ChainElem {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn mul(&self, o: &ChainElem) -> ChainElem {
        let m = self.length();
        let field = self.coeffs[0].num.field;
        let mut out = vec![RatFunc::zero(field); m];
        for i in 0..m {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..m - i {
                out[i + j] = out[i + j].add(&self.coeffs[i].mul(&o.coeffs[j]));
            }
        }
        ChainElem { coeffs: out }
    }

    /// Inverse of a unit (nonzero constant coefficient).
    pub fn inv(&self) -> Option<ChainElem> {
        let m = self.length();
        let c0inv = self.coeffs[0].inv()?;
        let field = c0inv.num.field;
        // solve (sum a_i s^i)(sum b_j s^j) = 1 term by term
        let mut b = vec![RatFunc::zero(field); m];
        b[0] = c0inv.clone();
        for k in 1..m {
            let mut acc = RatFunc::zero(field);
            for i in 1..=k {
                acc = acc.add(&self.coeffs[i].mul(&b[k - i]));
            }
            b[k] = acc.neg().mul(&c0inv);
        }
        Some(ChainElem { coeffs: b })
    }

    /// `self / s^v` for `v <= valuation` (the quotient is determined up to
    /// `s^(m-v)`; the top coefficients are filled with zero).
    pub fn shift_down(&self, v: usize) -> ChainElem {
        let m = self.length();
        let field = self.coeffs[0].num.field;
        let mut coeffs: Vec<RatFunc> = self.coeffs[v..].to_vec();
        coeffs.resize(m, RatFunc::zero(field));
        ChainElem { coeffs }
    }

    pub fn render(&self, t: &str, s: &str) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.render(t),
                1 => format!("({})*{}", c.render(t), s),
                _ => format!("({})*{}^{}", c.render(t), s, i),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Free/torsion structure of a finitely generated module over a stalk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalProfile {
    /// `S^r`.
    Free(usize),
    /// `S^free ⊕ ⊕ S/(s^e)`; over `K[s]/(s^2)` every torsion exponent is 1,
    /// so `torsion.len()` counts residue-field summands.
    Mixed { free: usize, torsion: Vec<usize> },
}

impl LocalProfile {
    pub fn free_rank(&self) -> usize {
        match self {
            LocalProfile::Free(r) => *r,
            LocalProfile::Mixed { free, .. } => *free,
        }
    }

    pub fn residue_count(&self) -> usize {
        match self {
            LocalProfile::Free(_) => 0,
            LocalProfile::Mixed { torsion, .. } => torsion.len(),
        }
    }
}

impl fmt::Display for LocalProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalProfile::Free(r) => write!(f, "Free({r})"),
            LocalProfile::Mixed { free, torsion } => {
                write!(f, "Mixed({}, {})", free, torsion.len())
            }
        }
    }
}

/// The localization of a ring at one minimal prime.
#[derive(Clone, Debug)]
pub struct Stalk {
    pub prime: IdealHandle,
    chart: Chart,
    /// The chart variable that becomes a unit.
    unit_var: usize,
    /// The surviving nilpotent chart variable, if the stalk is not a field.
    nil_var: Option<usize>,
    /// Length `m` of the stalk `K[s]/(s^m)`; 1 for a field.
    pub length: usize,
    field: Field,
}

impl Stalk {
    pub fn is_field(&self) -> bool {
        self.length == 1
    }

    /// Image of a polynomial (in original coordinates) in the stalk.
    pub fn image(&self, p: &Polynomial) -> ChainElem {
        let q = self.chart.apply(p);
        let mut out = ChainElem::zero(self.field, self.length);
        for (m, c) in q.terms() {
            let e = m.exponents();
            let mut s_pow = 0usize;
            let mut killed = false;
            for (i, &ex) in e.iter().enumerate() {
                if i == self.unit_var || ex == 0 {
                    continue;
                }
                if Some(i) == self.nil_var {
                    s_pow = ex as usize;
                } else {
                    killed = true;
                }
            }
            if killed || s_pow >= self.length {
                continue;
            }
            let term = RatFunc::from_poly(UniPoly::monomial(c.clone(), e[self.unit_var] as usize));
            out.coeffs[s_pow] = out.coeffs[s_pow].add(&term);
        }
        out
    }

    pub fn describe(&self, names: &[String]) -> String {
        let t = &names[self.unit_var];
        match self.nil_var {
            None => format!("k({t})"),
            Some(s) => format!("k({t})[{}]/({}^{})", names[s], names[s], self.length),
        }
    }

    /// Diagonalizes a matrix over the stalk and reads off the cokernel.
    pub fn cokernel_profile(&self, matrix: &[Vec<ChainElem>], rows: usize) -> LocalProfile {
        let vals = smith_valuations(matrix, rows, self.length);
        let m = self.length;
        let free = vals.iter().filter(|&&v| v >= m).count();
        let mut torsion: Vec<usize> = vals.into_iter().filter(|&v| v > 0 && v < m).collect();
        torsion.sort_unstable();
        if torsion.is_empty() {
            LocalProfile::Free(free)
        } else {
            LocalProfile::Mixed { free, torsion }
        }
    }
}

/// Valuations of the diagonal of a Smith form, one per row (rows beyond the
/// rank get valuation `m`, i.e. a zero diagonal entry).
pub fn smith_valuations(matrix: &[Vec<ChainElem>], rows: usize, m: usize) -> Vec<usize> {
    let mut a: Vec<Vec<ChainElem>> = matrix.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(rows);
    let mut k = 0;
    while k < rows.min(cols) {
        // minimal-valuation pivot in the remaining block
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, e) in row.iter().enumerate().skip(k) {
                let v = e.valuation();
                if v < m && best.is_none_or(|b| v < b.2) {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((pi, pj, v)) = best else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        // pivot = s^v * u with u a unit
        let u_inv = a[k][k].shift_down(v).inv().expect("unit part");
        for i in k + 1..rows {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].shift_down(v).mul(&u_inv);
            for j in k..cols {
                let d = f.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&d);
            }
        }
        for j in k + 1..cols {
            if a[k][j].is_zero() {
                continue;
            }
            let f = a[k][j].shift_down(v).mul(&u_inv);
            for i in k..rows {
                let d = f.mul(&a[i][k]);
                a[i][j] = a[i][j].sub(&d);
            }
        }
        out.push(v);
        k += 1;
    }
    out.resize(rows, m);
    out
}

/// Stalks at all minimal primes, in the order of
/// [`primes::minimal_primes`].
pub fn stalks(ring: &Ring) -> Result<Vec<Stalk>> {
    let dec = primes::prime_decomposition(ring)?;
    let moved_gens: Vec<Monomial> = {
        let rels: Vec<Polynomial> = ring.relations().iter().map(|r| dec.chart.apply(r)).collect();
        let moved = crate::ring::RingPresentation::new(
            ring.field(),
            ring.names().to_vec(),
            rels,
            ring.precision(),
        )?;
        moved
            .groebner_basis()
            .iter()
            .map(|g| g.leading().expect("nonzero").0.clone())
            .collect()
    };
    let n = ring.nvars();
    let mut out = Vec::new();
    for (cover, prime) in dec.covers.iter().zip(dec.primes) {
        let outside: Vec<usize> = (0..n).filter(|i| !cover.contains(i)).collect();
        if outside.len() != 1 {
            return Err(Error::UnsupportedStalk(format!(
                "prime {} is not of dimension one",
                prime.render()
            )));
        }
        let t = outside[0];
        // localized generators: delete t
        let local: Vec<Vec<u32>> = moved_gens
            .iter()
            .map(|m| {
                let mut e = m.exponents().to_vec();
                e[t] = 0;
                e
            })
            .collect();
        let killed: Vec<usize> = cover
            .iter()
            .copied()
            .filter(|&v| local.iter().any(|e| e[v] == 1 && e.iter().sum::<u32>() == 1))
            .collect();
        let alive: Vec<usize> = cover.iter().copied().filter(|v| !killed.contains(v)).collect();
        let (nil_var, length) = match alive.as_slice() {
            [] => (None, 1),
            [s] => {
                // the generators not involving killed variables must be powers of s
                let mut len: Option<u32> = None;
                for e in &local {
                    if killed.iter().any(|&v| e[v] > 0) {
                        continue;
                    }
                    let others = e.iter().enumerate().any(|(i, &x)| i != *s && x > 0);
                    if others {
                        return Err(Error::UnsupportedStalk(format!(
                            "mixed generator at {}",
                            prime.render()
                        )));
                    }
                    len = Some(len.map_or(e[*s], |l| l.min(e[*s])));
                }
                let Some(l) = len else {
                    return Err(Error::UnsupportedStalk(format!(
                        "stalk at {} is not Artinian",
                        prime.render()
                    )));
                };
                (Some(*s), l as usize)
            }
            _ => {
                return Err(Error::UnsupportedStalk(format!(
                    "stalk at {} has embedding dimension > 1",
                    prime.render()
                )))
            }
        };
        out.push(Stalk {
            prime,
            chart: dec.chart.clone(),
            unit_var: t,
            nil_var,
            length,
            field: ring.field(),
        });
    }
    Ok(out)
}

/// Rank of a list of vectors over `k(t)` (dense Gaussian elimination).
pub fn rf_rank(mut rows: Vec<Vec<RatFunc>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("nonzero");
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].mul(&inv);
            for c in col..width {
                let d = f.mul(&rows[rank][c]);
                rows[r][c] = rows[r][c].sub(&d);
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of `{u : sum_j u_j * columns[j] = 0}` over `k(t)`.
pub fn rf_kernel(field: Field, columns: &[Vec<RatFunc>]) -> Vec<Vec<RatFunc>> {
    let n = columns.len();
    let height = columns.first().map_or(0, Vec::len);
    // rows of the matrix whose columns are `columns`
    let mut a: Vec<Vec<RatFunc>> = (0..height)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..height).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].inv().expect("nonzero");
        a[r] = a[r].iter().map(|v| v.mul(&inv)).collect();
        for i in 0..height {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for c in 0..n {
                    let d = f.mul(&a[r][c]);
                    a[i][c] = a[i][c].sub(&d);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let one = RatFunc::from_poly(UniPoly::constant(field.one()));
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![RatFunc::zero(field); n];
            v[free] = one.clone();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = a[row][free].neg();
            }
            v
        })
        .collect()
}

impl Stalk {
    pub fn field(&self) -> Field {
        self.field
    }

    /// `S^n` as a `k(t)`-space: component `i`, power `s^j` at `i*m + j`.
    pub fn flatten(&self, v: &[ChainElem]) -> Vec<RatFunc> {
        v.iter().flat_map(|e| e.coeffs.iter().cloned()).collect()
    }

    fn unflatten(&self, v: &[RatFunc]) -> Vec<ChainElem> {
        v.chunks(self.length)
            .map(|c| ChainElem { coeffs: c.to_vec() })
            .collect()
    }

    fn s_power(&self, j: usize) -> ChainElem {
        let mut e = ChainElem::zero(self.field, self.length);
        if j < self.length {
            e.coeffs[j] = RatFunc::from_poly(UniPoly::constant(self.field.one()));
        }
        e
    }

    /// `k(t)`-spanning set of the `S`-submodule generated by the columns.
    fn column_span(&self, matrix: &[Vec<ChainElem>], rows: usize) -> Vec<Vec<RatFunc>> {
        let cols = matrix.first().map_or(0, Vec::len);
        let mut out = Vec::new();
        for c in 0..cols {
            let col: Vec<ChainElem> = (0..rows).map(|r| matrix[r][c].clone()).collect();
            for j in 0..self.length {
                let sj = self.s_power(j);
                out.push(self.flatten(&col.iter().map(|e| e.mul(&sj)).collect::<Vec<_>>()));
            }
        }
        out
    }

    /// Profile of `L / B` from `dim s^j (L + B)/B` (the Jordan type of `s`):
    /// blocks of size `m` are free summands, smaller blocks are `S/(s^e)`.
    fn profile_from_span(&self, gens: &[Vec<RatFunc>], base: &[Vec<RatFunc>]) -> LocalProfile {
        let m = self.length;
        let base_rank = if base.is_empty() { 0 } else { rf_rank(base.to_vec()) };
        let mut d = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let sj = self.s_power(j);
            let mut rows: Vec<Vec<RatFunc>> = base.to_vec();
            for g in gens {
                let v: Vec<ChainElem> = self.unflatten(g).iter().map(|e| e.mul(&sj)).collect();
                rows.push(self.flatten(&v));
            }
            let r = if rows.is_empty() { 0 } else { rf_rank(rows) };
            d.push(r - base_rank);
        }
        // blocks of size >= j+1: d_j - d_{j+1}; exactly j+1: difference of those
        let at_least: Vec<usize> = (0..m).map(|j| d[j] - d[j + 1]).collect();
        let free = at_least[m - 1];
        let mut torsion = Vec::new();
        for e in 1..m {
            let exactly = at_least[e - 1] - at_least[e];
            torsion.extend(std::iter::repeat_n(e, exactly));
        }
        if torsion.is_empty() {
            LocalProfile::Free(free)
        } else {
            LocalProfile::Mixed { free, torsion }
        }
    }

    /// Cokernel profile computed by `k(t)`-linear algebra only; an
    /// independent check on [`Stalk::cokernel_profile`].
    pub fn cokernel_profile_linear(&self, matrix: &[Vec<ChainElem>], rows: usize) -> LocalProfile {
        let n = rows * self.length;
        let unit: Vec<Vec<RatFunc>> = (0..n)
            .map(|i| {
                let mut v = vec![RatFunc::zero(self.field); n];
                v[i] = RatFunc::from_poly(UniPoly::constant(self.field.one()));
                v
            })
            .collect();
        self.profile_from_span(&unit, &self.column_span(matrix, rows))
    }

    /// Profile of the kernel of `Coker(phi1) -> Coker(phi2)` induced by `h`
    /// (an `rows2 x rows1` matrix), all over the stalk.
    pub fn kernel_profile(
        &self,
        h: &[Vec<ChainElem>],
        phi1: &[Vec<ChainElem>],
        rows1: usize,
        phi2: &[Vec<ChainElem>],
        rows2: usize,
    ) -> LocalProfile {
        let m = self.length;
        let n1 = rows1 * m;
        // unknowns: basis vectors s^j e_i of S^rows1, then spanning vectors of im phi2
        let b2 = self.column_span(phi2, rows2);
        let mut columns: Vec<Vec<RatFunc>> = Vec::new();
        for i in 0..rows1 {
            for j in 0..m {
                let sj = self.s_power(j);
                let image: Vec<ChainElem> = (0..rows2).map(|r| h[r][i].mul(&sj)).collect();
                columns.push(self.flatten(&image));
            }
        }
        columns.extend(b2.iter().map(|v| v.iter().map(RatFunc::neg).collect()));
        let lifts: Vec<Vec<RatFunc>> = rf_kernel(self.field, &columns)
            .into_iter()
            .map(|v| v[..n1].to_vec())
            .collect();
        self.profile_from_span(&lifts, &self.column_span(phi1, rows1))
    }
}
