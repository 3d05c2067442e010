//! Modules given as cokernels of matrices over a presented ring, the
//! catalog of indecomposable MCM modules over `T = k[[x,y]]/(xy^2)`, and
//! their localizations at minimal primes.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::polynomial::Polynomial;
use crate::ring::{IdealHandle, Ring, RingElem, RingPresentation};
use crate::stalk::{self, ChainElem, LocalProfile, Stalk};

/// `Coker(phi)` for an `rows x cols` matrix `phi`. A free module `R^r` is
/// an `r x 0` matrix; the zero module has no rows.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ring: Ring,
    rows: usize,
    cols: usize,
    matrix: Vec<Vec<RingElem>>,
    pub label: Option<String>,
}

impl ModulePresentation {
    pub fn new(ring: &Ring, rows: usize, cols: usize, matrix: Vec<Vec<RingElem>>) -> Result<Self> {
        if matrix.len() != rows || matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape(format!("expected a {rows} x {cols} matrix")));
        }
        if matrix.iter().flatten().any(|e| !e.ring().same_as(ring)) {
            return Err(Error::PresentationMismatch);
        }
        Ok(ModulePresentation {
            ring: ring.clone(),
            rows,
            cols,
            matrix,
            label: None,
        })
    }

    /// Parses entries such as `[["y", "x^2"], ["0", "-y"]]`.
    pub fn parse(ring: &Ring, entries: &[Vec<&str>]) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        let matrix = entries
            .iter()
            .map(|r| r.iter().map(|s| RingElem::parse(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        ModulePresentation::new(ring, rows, cols, matrix)
    }

    pub fn free(ring: &Ring, rank: usize) -> Self {
        ModulePresentation {
            ring: ring.clone(),
            rows: rank,
            cols: 0,
            matrix: vec![Vec::new(); rank],
            label: Some(format!("free:{rank}")),
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        ModulePresentation {
            ring: ring.clone(),
            rows: 0,
            cols: 0,
            matrix: Vec::new(),
            label: Some("zero".into()),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &RingElem {
        &self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<RingElem>] {
        &self.matrix
    }

    /// Block-diagonal presentation of `self ⊕ other`.
    pub fn direct_sum(&self, other: &ModulePresentation) -> Result<Self> {
        if !self.ring.same_as(&other.ring) {
            return Err(Error::PresentationMismatch);
        }
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        let zero = RingElem::zero(&self.ring);
        let mut m = vec![vec![zero; c]; r];
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[i][j] = self.matrix[i][j].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[self.rows + i][self.cols + j] = other.matrix[i][j].clone();
            }
        }
        let mut out = ModulePresentation::new(&self.ring, r, c, m)?;
        out.label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        Ok(out)
    }

    /// Same matrix over the same presentation at another precision.
    pub fn at_precision(&self, precision: u32) -> Result<Self> {
        let ring = self.ring.with_precision(precision)?;
        let matrix = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|e| RingElem::from_poly(&ring, e.poly())).collect())
            .collect();
        let mut out = ModulePresentation::new(&ring, self.rows, self.cols, matrix)?;
        out.label = self.label.clone();
        Ok(out)
    }

    pub fn render(&self) -> String {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| {
                let e: Vec<String> = r.iter().map(RingElem::render).collect();
                format!("[{}]", e.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }

    /// Matrix entries as strings (for serialization).
    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        self.matrix
            .iter()
            .map(|r| r.iter().map(RingElem::render).collect())
            .collect()
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Labels of the catalog over `T`: four 1x1 matrices and four 2x2 families.
pub const CATALOG_LABELS: [&str; 8] = ["x", "ysq", "y", "xy", "alpha", "beta", "gamma", "delta"];

/// Labels of the generically free catalog modules, in rank-table order.
pub const GENERICALLY_FREE_LABELS: [&str; 6] = ["x", "ysq", "alpha", "beta", "gamma", "delta"];

pub fn is_family(label: &str) -> bool {
    matches!(label, "alpha" | "beta" | "gamma" | "delta")
}

/// `T = k[[x,y]]/(xy^2)`.
pub fn t_ring(field: Field, precision: u32) -> Result<Ring> {
    let names = vec!["x".to_string(), "y".to_string()];
    let rel = crate::polynomial::parse_polynomial("x*y^2", field, &names)?;
    RingPresentation::new(field, names, vec![rel], precision)
}

/// The catalog matrix with the given label over `T`; `k` is used by the
/// 2x2 families and ignored by the 1x1 entries.
pub fn catalog_t(ring: &Ring, label: &str, k: u32) -> Result<ModulePresentation> {
    if ring.names() != ["x", "y"] {
        return Err(Error::BadParameter(
            "the catalog lives over a ring in variables x, y".into(),
        ));
    }
    if is_family(label) && k == 0 {
        return Err(Error::BadParameter(format!("{label} needs k >= 1")));
    }
    let xk = format!("x^{k}");
    let xk1 = format!("x^{}", k + 1);
    let entries: Vec<Vec<&str>> = match label {
        "x" => vec![vec!["x"]],
        "ysq" => vec![vec!["y^2"]],
        "y" => vec![vec!["y"]],
        "xy" => vec![vec!["x*y"]],
        "alpha" => vec![vec!["y", &xk], vec!["0", "-y"]],
        "beta" => vec![vec!["x*y", &xk1], vec!["0", "-x*y"]],
        "gamma" => vec![vec!["x*y", &xk], vec!["0", "-y"]],
        "delta" => vec![vec!["y", &xk1], vec!["0", "-x*y"]],
        other => return Err(Error::UnknownLabel(other.to_string())),
    };
    let mut m = ModulePresentation::parse(ring, &entries)?;
    m.label = Some(if is_family(label) {
        format!("{label}:{k}")
    } else {
        label.to_string()
    });
    Ok(m)
}

/// Parses `gamma:2+x+free:1` style module descriptions over `T`.
pub fn parse_module_spec(ring: &Ring, spec: &str) -> Result<ModulePresentation> {
    let mut out: Option<ModulePresentation> = None;
    for part in spec.split('+').map(str::trim) {
        let (label, k) = match part.split_once(':') {
            Some((l, k)) => (
                l,
                k.parse::<u32>()
                    .map_err(|_| Error::BadParameter(format!("bad parameter in `{part}`")))?,
            ),
            None => (part, 1),
        };
        let m = match label {
            "free" => ModulePresentation::free(ring, k as usize),
            "zero" => ModulePresentation::zero(ring),
            _ => {
                if !is_family(label) && part.contains(':') {
                    return Err(Error::BadParameter(format!("`{label}` takes no parameter")));
                }
                catalog_t(ring, label, k)?
            }
        };
        out = Some(match out {
            None => m,
            Some(acc) => acc.direct_sum(&m)?,
        });
    }
    out.ok_or_else(|| Error::Parse("empty module description".into()))
}

/// Localization data at every minimal prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    pub primes: Vec<String>,
    pub local: Vec<LocalProfile>,
    pub generically_free: bool,
}

impl RankProfile {
    /// The rank vector, when the module is generically free.
    pub fn ranks(&self) -> Option<Vec<usize>> {
        self.generically_free
            .then(|| self.local.iter().map(LocalProfile::free_rank).collect())
    }

    pub fn is_constant_rank(&self) -> bool {
        self.ranks().is_some_and(|r| r.windows(2).all(|w| w[0] == w[1]))
    }
}

impl fmt::Display for RankProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ranks() {
            Some(r) => {
                let s: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                write!(f, "({})", s.join(","))
            }
            None => {
                let s: Vec<String> = self.local.iter().map(|p| p.to_string()).collect();
                write!(f, "not generically free: {}", s.join(", "))
            }
        }
    }
}

fn stalk_matrix(stalk: &Stalk, m: &ModulePresentation) -> Vec<Vec<ChainElem>> {
    m.matrix
        .iter()
        .map(|r| r.iter().map(|e| stalk.image(e.poly())).collect())
        .collect()
}

pub fn localize_profile_at(m: &ModulePresentation, stalk: &Stalk) -> LocalProfile {
    stalk.cokernel_profile(&stalk_matrix(stalk, m), m.rows)
}

/// Profile of `M` at the minimal prime `p`.
pub fn localize_profile(m: &ModulePresentation, p: &IdealHandle) -> Result<LocalProfile> {
    for st in stalk::stalks(&m.ring)? {
        if st.prime.equals(p)? {
            return Ok(localize_profile_at(m, &st));
        }
    }
    Err(Error::MissingPrime(format!("{} is not a minimal prime", p.render())))
}

pub fn rank_vector_with(m: &ModulePresentation, stalks: &[Stalk]) -> RankProfile {
    let local: Vec<LocalProfile> = stalks.iter().map(|s| localize_profile_at(m, s)).collect();
    let generically_free = local.iter().all(|p| matches!(p, LocalProfile::Free(_)));
    RankProfile {
        primes: stalks.iter().map(|s| s.prime.render()).collect(),
        local,
        generically_free,
    }
}

pub fn rank_vector(m: &ModulePresentation) -> Result<RankProfile> {
    Ok(rank_vector_with(m, &stalk::stalks(&m.ring)?))
}

/// `K ⊗ M1 ≅ K ⊗ M2`, decided by comparing full localization profiles.
pub fn kq_isomorphic(m1: &ModulePresentation, m2: &ModulePresentation) -> Result<bool> {
    if !m1.ring.same_as(&m2.ring) {
        return Err(Error::PresentationMismatch);
    }
    let st = stalk::stalks(&m1.ring)?;
    Ok(rank_vector_with(m1, &st).local == rank_vector_with(m2, &st).local)
}

/// Localization profiles of the kernel of the map `Coker(phi1) ->
/// Coker(phi2)` induced by `h` (a `rows2 x rows1` matrix).
pub fn kernel_profile(
    h: &[Vec<RingElem>],
    m1: &ModulePresentation,
    m2: &ModulePresentation,
) -> Result<Vec<LocalProfile>> {
    let st = stalk::stalks(&m1.ring)?;
    Ok(st
        .iter()
        .map(|s| {
            let hs: Vec<Vec<ChainElem>> = h
                .iter()
                .map(|r| r.iter().map(|e| s.image(e.poly())).collect())
                .collect();
            s.kernel_profile(&hs, &stalk_matrix(s, m1), m1.rows, &stalk_matrix(s, m2), m2.rows)
        })
        .collect())
}

/// Polynomial matrix helper used by callers building maps by hand.
pub fn parse_matrix(ring: &Ring, entries: &[Vec<&str>]) -> Result<Vec<Vec<RingElem>>> {
    entries
        .iter()
        .map(|r| r.iter().map(|s| RingElem::parse(ring, s)).collect())
        .collect()
}

pub fn poly_matrix(m: &[Vec<RingElem>]) -> Vec<Vec<Polynomial>> {
    m.iter().map(|r| r.iter().map(|e| e.poly().clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Ring {
        t_ring(Field::Rationals, 12).unwrap()
    }

    #[test]
    fn catalog_matrices() {
        let t = t();
        assert_eq!(catalog_t(&t, "alpha", 1).unwrap().render(), "[[y, x], [0, -y]]");
        assert_eq!(catalog_t(&t, "x", 7).unwrap().render(), "[[x]]");
        assert_eq!(
            catalog_t(&t, "beta", 2).unwrap().render(),
            "[[x*y, x^3], [0, -x*y]]"
        );
        assert!(matches!(catalog_t(&t, "eta", 1), Err(Error::UnknownLabel(_))));
        assert!(matches!(catalog_t(&t, "gamma", 0), Err(Error::BadParameter(_))));
    }

    #[test]
    fn localization_examples() {
        let t = t();
        let primes = crate::primes::minimal_primes(&t).unwrap();
        let (p, q) = (&primes[0], &primes[1]);
        assert_eq!(
            localize_profile(&catalog_t(&t, "x", 1).unwrap(), p).unwrap(),
            LocalProfile::Free(1)
        );
        assert_eq!(
            localize_profile(&catalog_t(&t, "alpha", 1).unwrap(), q).unwrap(),
            LocalProfile::Free(1)
        );
        assert_eq!(
            localize_profile(&catalog_t(&t, "y", 1).unwrap(), q).unwrap(),
            LocalProfile::Mixed {
                free: 0,
                torsion: vec![1]
            }
        );
    }

    #[test]
    fn rank_vectors() {
        let t = t();
        for k in 1..=4 {
            let g = rank_vector(&catalog_t(&t, "gamma", k).unwrap()).unwrap();
            assert_eq!(g.ranks(), Some(vec![1, 1]));
            let b = rank_vector(&catalog_t(&t, "beta", k).unwrap()).unwrap();
            assert_eq!(b.ranks(), Some(vec![2, 1]));
        }
        let u = rank_vector(&catalog_t(&t, "y", 1).unwrap()).unwrap();
        assert!(!u.generically_free);
        assert_eq!(rank_vector(&ModulePresentation::free(&t, 2)).unwrap().ranks(), Some(vec![2, 2]));
    }

    #[test]
    fn k_isomorphism() {
        let t = t();
        let v = catalog_t(&t, "xy", 1).unwrap();
        let xu = parse_module_spec(&t, "x+y").unwrap();
        assert!(kq_isomorphic(&v, &xu).unwrap());
        assert!(kq_isomorphic(&v, &v).unwrap());
        let x = catalog_t(&t, "x", 1).unwrap();
        let ysq = catalog_t(&t, "ysq", 1).unwrap();
        assert!(!kq_isomorphic(&x, &ysq).unwrap());
    }

    #[test]
    fn multiplication_by_x_from_v_onto_u() {
        // Coker[xy] -> Coker[y], 1 -> 1; its kernel looks like Coker[x]
        let t = t();
        let v = catalog_t(&t, "xy", 1).unwrap();
        let u = catalog_t(&t, "y", 1).unwrap();
        let h = parse_matrix(&t, &[vec!["1"]]).unwrap();
        let kp = kernel_profile(&h, &v, &u).unwrap();
        let x = rank_vector(&catalog_t(&t, "x", 1).unwrap()).unwrap();
        assert_eq!(kp, x.local);
    }

    #[test]
    fn module_specs() {
        let t = t();
        let m = parse_module_spec(&t, "gamma:2+x").unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 3));
        assert_eq!(m.label.as_deref(), Some("gamma:2+x"));
        assert!(parse_module_spec(&t, "x:3").is_err());
    }
}
