//! Numerical invariants of a presented one-dimensional local ring and the
//! structure of rings with `e(R) = ν(m) = 3`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, TaggedEchelon};
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;
use crate::primes;
use crate::ring::{IdealHandle, Ring, RingElem, RingPresentation};

/// Default bound on the integer coefficients tried in searches for
/// special linear forms.
pub const DEFAULT_SEARCH_BOUND: i64 = 5;

/// The Hilbert–Samuel function `h(n) = dim m^n/m^(n+1)`, `0 <= n < N-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub values: Vec<usize>,
    /// Value of the tail, when the last three entries agree.
    pub stable_value: Option<usize>,
    /// First index from which the sequence is constant.
    pub stable_from: Option<usize>,
    pub precision: u32,
}

/// `dim_k m^n R_N` for `n = 0..N`, computed from the top degree down.
fn power_dims(ring: &Ring) -> Vec<usize> {
    let n = ring.precision();
    let f = ring.field();
    let mut dims = vec![0; n as usize + 1];
    let mut ech = Echelon::new(ring.dim());
    for d in (0..n).rev() {
        for m in Monomial::all_of_degree(ring.nvars(), d) {
            let e = RingElem::from_poly(ring, &Polynomial::term(f, m, f.one()));
            ech.insert(e.coords());
        }
        dims[d as usize] = ech.rank();
    }
    dims
}

pub fn hilbert_data(ring: &Ring) -> HilbertData {
    let dims = power_dims(ring);
    let count = ring.precision() as usize - 1;
    let values: Vec<usize> = (0..count).map(|i| dims[i] - dims[i + 1]).collect();
    let (stable_value, stable_from) = match values.len() {
        l if l >= 3 && values[l - 1] == values[l - 2] && values[l - 2] == values[l - 3] => {
            let v = values[l - 1];
            let from = values.iter().rposition(|&h| h != v).map_or(0, |i| i + 1);
            (Some(v), Some(from))
        }
        _ => (None, None),
    };
    HilbertData {
        values,
        stable_value,
        stable_from,
        precision: ring.precision(),
    }
}

pub fn hilbert_samuel(ring: &Ring, n: u32) -> Result<usize> {
    if n + 1 >= ring.precision() {
        return Err(Error::PrecisionExceeded {
            degree: n,
            precision: ring.precision(),
        });
    }
    Ok(hilbert_data(ring).values[n as usize])
}

/// `e(R)`: the stabilized Hilbert–Samuel value. Never guesses.
pub fn multiplicity(ring: &Ring) -> Result<usize> {
    let h = hilbert_data(ring);
    h.stable_value.ok_or(Error::NotStabilized {
        precision: ring.precision(),
        values: h.values,
    })
}

/// `ν(m) = dim m/m^2`.
pub fn embdim(ring: &Ring) -> usize {
    let dims = power_dims(ring);
    dims[1] - dims[2]
}

pub use crate::primes::nilradical;

/// The data of Sally's inequality `ν(J) <= e(R) - e(R/J)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SallyCheck {
    pub generators: usize,
    pub e_ring: usize,
    pub e_quotient: usize,
    pub holds: bool,
}

/// Height zero means `J` lies in some minimal prime.
pub fn has_height_zero(j: &IdealHandle) -> Result<bool> {
    for p in primes::minimal_primes(j.ring())? {
        if p.contains_ideal(j)? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn sally_check(ring: &Ring, j: &IdealHandle) -> Result<SallyCheck> {
    let generators = j.num_generators()?;
    let e_ring = multiplicity(ring)?;
    let quotient = ring.quotient(&j.gens().iter().map(|g| g.poly().clone()).collect::<Vec<_>>())?;
    let e_quotient = multiplicity(&quotient)?;
    Ok(SallyCheck {
        generators,
        e_ring,
        e_quotient,
        holds: e_quotient <= e_ring && generators <= e_ring - e_quotient,
    })
}

/// `ν(J) = dim J/mJ`. For height-zero ideals, Sally's inequality is checked
/// as well, and a violation is reported as an error.
pub fn min_gens(ring: &Ring, j: &IdealHandle) -> Result<usize> {
    if !j.ring().same_as(ring) {
        return Err(Error::PresentationMismatch);
    }
    let nu = j.num_generators()?;
    if !j.is_zero() && has_height_zero(j).unwrap_or(false) {
        let s = sally_check(ring, j)?;
        if !s.holds {
            return Err(Error::CheckFailed(format!(
                "Sally's inequality fails: nu = {} > {} - {}",
                s.generators, s.e_ring, s.e_quotient
            )));
        }
    }
    Ok(nu)
}

/// Integer coefficient vectors for linear forms, in search order: smaller
/// max |c| first, then fewer nonzero entries, then lexicographic with
/// `1, -1, 2, -2, ...` before `0` in each slot. Vectors whose first nonzero
/// entry is negative are skipped (they give the same ideal as their negation).
pub fn linear_form_candidates(nvars: usize, bound: i64) -> Vec<Vec<i64>> {
    fn slot_key(c: i64) -> i64 {
        if c == 0 {
            i64::MAX
        } else if c > 0 {
            2 * c - 2
        } else {
            -2 * c - 1
        }
    }
    let mut out = Vec::new();
    let width = (2 * bound + 1) as usize;
    let total = width.pow(nvars as u32);
    for code in 0..total {
        let mut rest = code;
        let v: Vec<i64> = (0..nvars)
            .map(|_| {
                let c = (rest % width) as i64 - bound;
                rest /= width;
                c
            })
            .collect();
        match v.iter().find(|&&c| c != 0) {
            Some(&c) if c > 0 => out.push(v),
            _ => {}
        }
    }
    out.sort_by_key(|v| {
        (
            v.iter().map(|c| c.abs()).max().unwrap_or(0),
            v.iter().filter(|&&c| c != 0).count(),
            v.iter().map(|&c| slot_key(c)).collect::<Vec<_>>(),
        )
    });
    out
}

pub fn linear_form(ring: &Ring, coeffs: &[i64]) -> RingElem {
    let f = ring.field();
    let mut p = Polynomial::zero(f, ring.nvars());
    for (i, &c) in coeffs.iter().enumerate() {
        p.add_term(Monomial::var(ring.nvars(), i), f.from_i64(c));
    }
    RingElem::from_poly(ring, &p)
}

/// Tests `m^2 = x m`. Working at precision 4 is exact: equality modulo
/// `m^4` gives `m^2 ⊆ x m + m·m^2`, hence `m^2 ⊆ x m` by Nakayama.
pub fn is_reduction(x: &RingElem) -> Result<bool> {
    let low = x.ring().with_precision(4)?;
    let xl = RingElem::from_poly(&low, x.poly());
    let m = IdealHandle::maximal(&low);
    let xm = IdealHandle::new(&low, vec![xl])?.product(&m)?;
    Ok(xm.dim() == IdealHandle::maximal_power(&low, 2).dim())
}

/// Searches linear forms with coefficients bounded by `bound` for `x` with
/// `m^2 = x m`; `None` when the search is exhausted.
pub fn find_reduction(ring: &Ring, bound: i64) -> Option<RingElem> {
    let low = ring.with_precision(4).ok()?;
    let m = IdealHandle::maximal(&low);
    let target = IdealHandle::maximal_power(&low, 2).dim();
    let test = |c: &Vec<i64>| {
        let x = linear_form(&low, c);
        IdealHandle::new(&low, vec![x])
            .and_then(|i| i.product(&m))
            .map(|xm| xm.dim() == target)
            .unwrap_or(false)
    };
    let candidates = linear_form_candidates(ring.nvars(), bound);
    let found = crate::par::find_first(&candidates, test)?;
    Some(linear_form(ring, found))
}

/// Eliminates variables `v` that occur in a relation `c·v + h` with `h`
/// free of `v`, substituting `v = -h/c` elsewhere. Returns the smaller
/// presentation together with, for each original variable, its image.
pub fn minimal_presentation(ring: &Ring) -> Result<(Ring, Vec<Polynomial>)> {
    let f = ring.field();
    let mut names: Vec<String> = ring.names().to_vec();
    let mut rels: Vec<Polynomial> = ring.relations().to_vec();
    let n0 = names.len();
    // images of the original variables in the current variables
    let mut images: Vec<Polynomial> = (0..n0).map(|i| Polynomial::var(f, n0, i)).collect();
    loop {
        let n = names.len();
        let mut hit = None;
        'search: for (ri, r) in rels.iter().enumerate() {
            for v in 0..n {
                let c = r.coefficient(&Monomial::var(n, v));
                if c.is_zero() {
                    continue;
                }
                let mut h = r.clone();
                h.add_term(Monomial::var(n, v), -&c);
                if !h.variables().contains(&v) {
                    hit = Some((ri, v, h.scale(&-c.inv().expect("nonzero"))));
                    break 'search;
                }
            }
        }
        let Some((ri, v, value)) = hit else { break };
        // new variable list without v; value is written in the old list
        let keep: Vec<usize> = (0..n).filter(|&i| i != v).collect();
        let shrink: Vec<Polynomial> = (0..n)
            .map(|i| match keep.iter().position(|&k| k == i) {
                Some(pos) => Polynomial::var(f, n - 1, pos),
                None => Polynomial::zero(f, n - 1),
            })
            .collect();
        let value_small = value.substitute(&shrink);
        let subst: Vec<Polynomial> = (0..n)
            .map(|i| if i == v { value_small.clone() } else { shrink[i].clone() })
            .collect();
        rels = rels
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != ri)
            .map(|(_, r)| r.substitute(&subst))
            .filter(|r| !r.is_zero())
            .collect();
        images = images.iter().map(|p| p.substitute(&subst)).collect();
        names = keep.iter().map(|&i| names[i].clone()).collect();
    }
    let out = RingPresentation::new(f, names, rels, ring.precision())?;
    Ok((out, images))
}

/// Hypersurface test for one-dimensional CM rings: embedding dimension at
/// most two (then the defining ideal of `k[[x,y]]` is unmixed of height
/// one, hence principal).
pub fn is_hypersurface(ring: &Ring) -> bool {
    embdim(ring) <= 2
}

/// Which of the two shapes the nilradical takes when `e = ν = 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NilradicalShape {
    /// `ν(N) = 2` and `N = (y, z)`.
    TwoGenerated,
    /// `ν(N) = 1`, `N = (z)` and `yz = z^2 = 0`.
    Principal,
}

/// Generators `x, y, z` of `m` adapted to the nilradical, for rings with
/// `e(R) = ν(m) = 3`.
#[derive(Clone, Debug)]
pub struct MultiplicityThreeStructure {
    pub x: RingElem,
    pub y: RingElem,
    pub z: RingElem,
    pub nilradical: IdealHandle,
    pub nilradical_generators: usize,
    pub shape: NilradicalShape,
    pub sally_nilradical: SallyCheck,
}

fn generates_maximal(ring: &Ring, gens: &[RingElem]) -> Result<bool> {
    let j = IdealHandle::new(ring, gens.to_vec())?;
    j.contains_ideal(&IdealHandle::maximal(ring))
}

/// Solves `target = b * base` for `b` in `R` at precision.
pub fn divide(target: &RingElem, base: &RingElem) -> Option<RingElem> {
    let ring = target.ring();
    let mut te = TaggedEchelon::new(ring.field(), ring.dim(), ring.dim());
    for mu in ring.standard_monomials() {
        te.push(base.mul_monomial(mu).coords());
    }
    let u = te.solve(&target.coords())?;
    let f = ring.field();
    let mut b = Polynomial::zero(f, ring.nvars());
    for (i, c) in u {
        b.add_term(ring.standard_monomials()[i].clone(), c);
    }
    Some(RingElem::from_poly(ring, &b))
}

/// Extracts `x, y, z` with `m^2 = x m`, `N^2 = 0`, `ν(N) <= 2`, and either
/// `N = (y, z)` or `N = (z)` with `yz = z^2 = 0`.
pub fn multiplicity_three_structure(
    ring: &Ring,
    bound: i64,
) -> Result<MultiplicityThreeStructure> {
    let e = multiplicity(ring)?;
    let nu = embdim(ring);
    if e != 3 || nu != 3 {
        return Err(Error::HypothesisViolated(format!(
            "needs e = nu = 3, found e = {e}, nu = {nu}"
        )));
    }
    let x = find_reduction(ring, bound).ok_or_else(|| {
        Error::CheckFailed(format!("no reduction element with coefficients up to {bound}"))
    })?;
    let n = primes::nilradical(ring)?;
    if n.is_zero() {
        return Err(Error::ReducedRing);
    }
    let n2 = n.product(&n)?;
    if !n2.is_zero() {
        return Err(Error::CheckFailed("N^2 is not zero".into()));
    }
    let nu_n = min_gens(ring, &n)?;
    if nu_n > 2 {
        return Err(Error::CheckFailed(format!("nu(N) = {nu_n} > 2")));
    }
    let sally_nilradical = sally_check(ring, &n)?;
    let gens = n.gens().to_vec();
    let (y, z, shape) = if nu_n == 2 {
        (gens[0].clone(), gens[1].clone(), NilradicalShape::TwoGenerated)
    } else {
        let z = gens[0].clone();
        let mut choices: Vec<RingElem> = RingElem::vars(ring)
            .into_iter()
            .filter(|w| generates_maximal(ring, &[x.clone(), w.clone(), z.clone()]).unwrap_or(false))
            .collect();
        // prefer a w that already kills z
        choices.sort_by_key(|w| !(&z * w).is_zero());
        let w = choices
            .into_iter()
            .next()
            .ok_or_else(|| Error::CheckFailed("no variable completes (x, z) to m".into()))?;
        // zw = x g with g = b z, so take y = w - b x
        let b = divide(&(&z * &w), &(&x * &z))
            .ok_or_else(|| Error::CheckFailed("zw is not a multiple of xz".into()))?;
        let y = &w - &(&b * &x);
        (y, z, NilradicalShape::Principal)
    };
    if !generates_maximal(ring, &[x.clone(), y.clone(), z.clone()])? {
        return Err(Error::CheckFailed("x, y, z do not generate m".into()));
    }
    if shape == NilradicalShape::Principal && !((&y * &z).is_zero() && (&z * &z).is_zero()) {
        return Err(Error::CheckFailed("yz or z^2 is nonzero".into()));
    }
    Ok(MultiplicityThreeStructure {
        x,
        y,
        z,
        nilradical: n,
        nilradical_generators: nu_n,
        shape,
        sally_nilradical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_ring;

    fn ring(s: &str) -> Ring {
        parse_ring(s, 12).unwrap()
    }

    #[test]
    fn hilbert_examples() {
        let t = ring("QQ[[x,y]]/(x*y^2)");
        assert_eq!(hilbert_samuel(&t, 2).unwrap(), 3);
        assert_eq!(hilbert_data(&t).values[..5], [1, 2, 3, 3, 3]);
        let y2 = ring("QQ[[x,y]]/(y^2)");
        assert_eq!(hilbert_samuel(&y2, 5).unwrap(), 2);
        assert_eq!(hilbert_samuel(&y2, 0).unwrap(), 1);
        assert!(matches!(
            hilbert_samuel(&y2, 11),
            Err(Error::PrecisionExceeded { .. })
        ));
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity(&ring("QQ[[x,y]]/(y^2)")).unwrap(), 2);
        assert_eq!(multiplicity(&ring("QQ[[x,y]]/(x*y^2)")).unwrap(), 3);
        let e = ring("QQ[[x,y,z]]/(x*y, y*z, z^2)");
        assert_eq!(multiplicity(&e).unwrap(), 3);
        assert_eq!(hilbert_data(&e).values[..4], [1, 3, 3, 3]);
        assert!(matches!(
            multiplicity(&ring("QQ[[x,y]]/()")),
            Err(Error::NotStabilized { .. })
        ));
        // inhomogeneous relation: the cusp has e = 2
        assert_eq!(multiplicity(&ring("QQ[[x,y]]/(y^2 - x^3)")).unwrap(), 2);
    }

    #[test]
    fn embedding_dimensions() {
        assert_eq!(embdim(&ring("QQ[[x,y]]/(x*y^2)")), 2);
        assert_eq!(embdim(&ring("QQ[[x,y,z]]/(x*y, y*z, z^2)")), 3);
        assert_eq!(embdim(&ring("QQ[[x]]/()")), 1);
        assert_eq!(embdim(&ring("QQ[[x,y,z]]/(z - x^2)")), 2);
    }

    #[test]
    fn generator_counts_and_sally() {
        let e = ring("QQ[[x,y,z]]/(x*y, y*z, z^2)");
        let n = nilradical(&e).unwrap();
        assert_eq!(min_gens(&e, &n).unwrap(), 1);
        let s = sally_check(&e, &n).unwrap();
        assert_eq!((s.generators, s.e_ring, s.e_quotient, s.holds), (1, 3, 2, true));
        let t = ring("QQ[[x,y]]/(x*y^2)");
        assert_eq!(min_gens(&t, &IdealHandle::maximal(&t)).unwrap(), 2);
        assert_eq!(min_gens(&t, &nilradical(&t).unwrap()).unwrap(), 1);
    }

    #[test]
    fn candidate_order() {
        let c = linear_form_candidates(3, 1);
        assert_eq!(c[0], vec![1, 0, 0]);
        assert_eq!(c[3], vec![1, 1, 0]);
        assert_eq!(c[4], vec![1, -1, 0]);
        assert_eq!(c.len(), 13);
    }

    #[test]
    fn reductions() {
        let e = ring("QQ[[x,y,z]]/(x*y, y*z, z^2)");
        assert_eq!(find_reduction(&e, 5).unwrap().render(), "x + y");
        let dvr = ring("QQ[[x]]/()");
        assert_eq!(find_reduction(&dvr, 5).unwrap().render(), "x");
        assert!(find_reduction(&ring("QQ[[x,y]]/(x*y^2)"), 5).is_none());
    }

    #[test]
    fn minimal_presentations() {
        let r = ring("QQ[[x,y,z]]/(z - x^2 - y^3, x*y)");
        let (m, images) = minimal_presentation(&r).unwrap();
        assert_eq!(m.render(), "QQ[[x,y]]/(x*y)");
        assert_eq!(images[2].render(m.names()), "y^3 + x^2");
    }

    #[test]
    fn structure_principal_nilradical() {
        let e = ring("QQ[[x,y,z]]/(x*y, y*z, z^2)");
        let s = multiplicity_three_structure(&e, 5).unwrap();
        assert_eq!(s.shape, NilradicalShape::Principal);
        assert_eq!(
            (s.x.render(), s.y.render(), s.z.render()),
            ("x + y".into(), "y".into(), "z".into())
        );
        assert!(s.nilradical.product(&s.nilradical).unwrap().is_zero());
    }

    #[test]
    fn structure_two_generated_nilradical() {
        let r = ring("QQ[[x,y,z]]/(y^2, y*z, z^2)");
        let s = multiplicity_three_structure(&r, 5).unwrap();
        assert_eq!(s.shape, NilradicalShape::TwoGenerated);
        assert_eq!(
            (s.x.render(), s.y.render(), s.z.render()),
            ("x".into(), "y".into(), "z".into())
        );
        assert!(s.sally_nilradical.holds);
    }

    #[test]
    fn structure_hypothesis_gate() {
        assert!(matches!(
            multiplicity_three_structure(&ring("QQ[[x,y]]/(x*y^2)"), 5),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(matches!(
            multiplicity_three_structure(&ring("QQ[[x,y,z]]/(x*y, y*z, x*z)"), 5),
            Err(Error::ReducedRing)
        ));
    }
}
