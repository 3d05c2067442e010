//! Extendedness bookkeeping for modules over a completion.
//!
//! A module over the completion `R^` is extended from `R` exactly when its
//! ranks agree on minimal primes of `R^` lying over the same prime of `R`.
//! Over the ring `E = k[[X,Y,Z]]/(XY,YZ,Z^2)` this becomes a linear
//! condition on the multiplicities of the indecomposable summands, which
//! depends on how the minimal primes of the base ring split.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::module::RankProfile;
use crate::par::{self, Execution};

/// Minimal primes of the completion, each labelled by the base prime it
/// lies over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberMap {
    lies_over: BTreeMap<String, String>,
}

impl FiberMap {
    pub fn new<I, S, T>(pairs: I) -> Result<FiberMap>
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        let mut lies_over = BTreeMap::new();
        for (q, p) in pairs {
            let q = q.into();
            if lies_over.insert(q.clone(), p.into()).is_some() {
                return Err(Error::BadParameter(format!("prime `{q}` labelled twice")));
            }
        }
        if lies_over.is_empty() {
            return Err(Error::BadParameter("a fiber map needs at least one prime".into()));
        }
        Ok(FiberMap { lies_over })
    }

    /// Every completion prime over one base prime: the `(1,1)`-type split.
    pub fn single_fiber(primes: &[String]) -> Result<FiberMap> {
        FiberMap::new(primes.iter().map(|q| (q.clone(), "P".to_string())))
    }

    /// Each completion prime over its own base prime.
    pub fn separate(primes: &[String]) -> Result<FiberMap> {
        FiberMap::new(primes.iter().map(|q| (q.clone(), q.clone())))
    }

    pub fn base_of(&self, q: &str) -> Option<&str> {
        self.lies_over.get(q).map(String::as_str)
    }

    /// Completion primes grouped by base prime.
    pub fn fibers(&self) -> BTreeMap<&str, Vec<&str>> {
        let mut out: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (q, p) in &self.lies_over {
            out.entry(p.as_str()).or_default().push(q.as_str());
        }
        out
    }
}

/// True iff the ranks are constant along every fiber.
pub fn extended_by_rank_fibers(profile: &BTreeMap<String, usize>, fibers: &FiberMap) -> Result<bool> {
    for (_, qs) in fibers.fibers() {
        let mut ranks = Vec::with_capacity(qs.len());
        for q in qs {
            let r = profile
                .get(q)
                .ok_or_else(|| Error::MissingPrime(q.to_string()))?;
            ranks.push(*r);
        }
        if ranks.windows(2).any(|w| w[0] != w[1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The prime-to-rank map of a generically free module.
pub fn profile_map(profile: &RankProfile) -> Option<BTreeMap<String, usize>> {
    let ranks = profile.ranks()?;
    Some(profile.primes.iter().cloned().zip(ranks).collect())
}

/// How the minimal primes of the base ring sit under those of `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    Domain,
    ReducedTwoPrimes,
    NonreducedOnePrime,
    NonreducedTwoPrimes,
}

impl CaseTag {
    pub const ALL: [CaseTag; 4] = [
        CaseTag::Domain,
        CaseTag::ReducedTwoPrimes,
        CaseTag::NonreducedOnePrime,
        CaseTag::NonreducedTwoPrimes,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Domain => "domain",
            CaseTag::ReducedTwoPrimes => "reduced_two_primes",
            CaseTag::NonreducedOnePrime => "nonreduced_one_prime",
            CaseTag::NonreducedTwoPrimes => "nonreduced_two_primes",
        }
    }

    /// The rule applied by [`tuple_extended`], in words.
    pub fn rule(self) -> &'static str {
        match self {
            CaseTag::Domain => "b = a + d and e = f = 0",
            CaseTag::ReducedTwoPrimes => "e = f = 0",
            CaseTag::NonreducedOnePrime => "b = a + d + f",
            CaseTag::NonreducedTwoPrimes => "every indecomposable is extended",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<CaseTag> {
        CaseTag::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown case tag `{s}`")))
    }
}

/// Multiplicities `(a,b,c,d,e,f)` of the summands of rank `(1,0)`,
/// `(0,1)`, `(1,1)`, `(2,1)`, and of `U`, `V`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DecompositionTuple(pub [u32; 6]);

impl DecompositionTuple {
    pub fn zero() -> Self {
        DecompositionTuple([0; 6])
    }

    pub fn unit(i: usize) -> Self {
        let mut t = [0; 6];
        t[i] = 1;
        DecompositionTuple(t)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 6]
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut t = self.0;
        for (x, y) in t.iter_mut().zip(&other.0) {
            *x += y;
        }
        DecompositionTuple(t)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut t = self.0;
        for (x, y) in t.iter_mut().zip(&other.0) {
            *x = x.checked_sub(*y)?;
        }
        Some(DecompositionTuple(t))
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The single generically free summand with this rank vector (ranks at
    /// the two minimal primes of `E`), if there is such a class.
    pub fn from_rank(ranks: &[usize]) -> Option<Self> {
        let i = match ranks {
            [1, 0] => 0,
            [0, 1] => 1,
            [1, 1] => 2,
            [2, 1] => 3,
            _ => return None,
        };
        Some(DecompositionTuple::unit(i))
    }
}

impl fmt::Display for DecompositionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e, g] = self.0;
        write!(f, "({a},{b},{c},{d},{e},{g})")
    }
}

impl FromStr for DecompositionTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(Error::Parse(format!("expected six entries in `{s}`")));
        }
        let mut t = [0; 6];
        for (slot, p) in t.iter_mut().zip(parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad tuple entry `{p}`")))?;
        }
        Ok(DecompositionTuple(t))
    }
}

pub fn tuple_extended(t: &DecompositionTuple, case: CaseTag) -> bool {
    let [a, b, _c, d, e, f] = t.0;
    match case {
        CaseTag::Domain => b == a + d && e == 0 && f == 0,
        CaseTag::ReducedTwoPrimes => e == 0 && f == 0,
        CaseTag::NonreducedOnePrime => b == a + d + f,
        CaseTag::NonreducedTwoPrimes => true,
    }
}

/// All tuples with entries in `0..=bound`, in lexicographic order.
pub fn box_tuples(bound: u32) -> Vec<DecompositionTuple> {
    let side = bound + 1;
    let count = side.pow(6);
    (0..count)
        .map(|mut n| {
            let mut t = [0; 6];
            for slot in t.iter_mut().rev() {
                *slot = n % side;
                n /= side;
            }
            DecompositionTuple(t)
        })
        .collect()
}

pub fn extended_in_box(case: CaseTag, bound: u32) -> Vec<DecompositionTuple> {
    extended_in_box_with(Execution::default(), case, bound)
}

pub fn extended_in_box_with(exec: Execution, case: CaseTag, bound: u32) -> Vec<DecompositionTuple> {
    let all = box_tuples(bound);
    let keep = par::map(exec, &all, |t| !t.is_zero() && tuple_extended(t, case));
    all.into_iter().zip(keep).filter_map(|(t, k)| k.then_some(t)).collect()
}

/// Minimal nonzero extended tuples under the componentwise order, by
/// brute force over the box `[0, bound]^6`.
pub fn minimal_extended_tuples(case: CaseTag, bound: u32) -> Result<BTreeSet<DecompositionTuple>> {
    minimal_extended_tuples_with(Execution::default(), case, bound)
}

pub fn minimal_extended_tuples_with(
    exec: Execution,
    case: CaseTag,
    bound: u32,
) -> Result<BTreeSet<DecompositionTuple>> {
    if bound < 3 {
        return Err(Error::BadParameter(format!("search box must be at least 3, got {bound}")));
    }
    let mut ext = extended_in_box_with(exec, case, bound);
    ext.sort_by_key(|t| (t.total(), *t));
    // anything strictly below an extended tuple lies below a minimal one
    let mut minimal: Vec<DecompositionTuple> = Vec::new();
    for t in ext {
        if !minimal.iter().any(|m| m.le(&t)) {
            minimal.push(t);
        }
    }
    Ok(minimal.into_iter().collect())
}

/// Whether every extended tuple in the box is a nonnegative integer
/// combination of `generators`.
pub fn generates_box(generators: &BTreeSet<DecompositionTuple>, case: CaseTag, bound: u32) -> bool {
    let in_box = |t: &DecompositionTuple| t.0.iter().all(|&v| v <= bound);
    let mut reached: HashSet<DecompositionTuple> = HashSet::from([DecompositionTuple::zero()]);
    let mut frontier = vec![DecompositionTuple::zero()];
    while let Some(t) = frontier.pop() {
        for g in generators {
            let s = t.add(g);
            if in_box(&s) && reached.insert(s) {
                frontier.push(s);
            }
        }
    }
    extended_in_box(case, bound).iter().all(|t| reached.contains(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> DecompositionTuple {
        s.parse().unwrap()
    }

    fn set(v: &[&str]) -> BTreeSet<DecompositionTuple> {
        v.iter().map(|s| t(s)).collect()
    }

    #[test]
    fn rank_fibers() {
        let profile = |a, b| BTreeMap::from([("Q1".to_string(), a), ("Q2".to_string(), b)]);
        let one = FiberMap::new([("Q1", "P"), ("Q2", "P")]).unwrap();
        let two = FiberMap::new([("Q1", "P1"), ("Q2", "P2")]).unwrap();
        assert!(extended_by_rank_fibers(&profile(2, 2), &one).unwrap());
        assert!(!extended_by_rank_fibers(&profile(1, 2), &one).unwrap());
        assert!(extended_by_rank_fibers(&profile(1, 2), &two).unwrap());
        let three = FiberMap::new([("Q1", "P"), ("Q3", "P")]).unwrap();
        assert!(matches!(
            extended_by_rank_fibers(&profile(1, 1), &three),
            Err(Error::MissingPrime(_))
        ));
        assert!(FiberMap::new(Vec::<(String, String)>::new()).is_err());
    }

    #[test]
    fn tuple_rules() {
        assert!(tuple_extended(&t("(1,1,0,0,0,0)"), CaseTag::Domain));
        assert!(!tuple_extended(&t("(0,0,0,0,1,0)"), CaseTag::Domain));
        assert!(tuple_extended(&t("(0,1,0,0,0,1)"), CaseTag::NonreducedOnePrime));
        assert!(tuple_extended(&t("(0,0,0,0,1,1)"), CaseTag::NonreducedTwoPrimes));
        assert!(!tuple_extended(&t("(1,0,0,0,0,0)"), CaseTag::NonreducedOnePrime));
        assert_eq!(t(" (1, 2,3,4,5,6) ").to_string(), "(1,2,3,4,5,6)");
        assert!("(1,2,3)".parse::<DecompositionTuple>().is_err());
        assert_eq!("nonreduced_one_prime".parse::<CaseTag>().unwrap(), CaseTag::NonreducedOnePrime);
    }

    #[test]
    fn minimal_tuples_per_case() {
        assert_eq!(
            minimal_extended_tuples(CaseTag::Domain, 3).unwrap(),
            set(&["(0,0,1,0,0,0)", "(1,1,0,0,0,0)", "(0,1,0,1,0,0)"])
        );
        assert_eq!(
            minimal_extended_tuples(CaseTag::NonreducedOnePrime, 3).unwrap(),
            set(&[
                "(0,0,1,0,0,0)",
                "(1,1,0,0,0,0)",
                "(0,1,0,1,0,0)",
                "(0,0,0,0,1,0)",
                "(0,1,0,0,0,1)"
            ])
        );
        assert_eq!(
            minimal_extended_tuples(CaseTag::ReducedTwoPrimes, 3).unwrap(),
            set(&["(1,0,0,0,0,0)", "(0,1,0,0,0,0)", "(0,0,1,0,0,0)", "(0,0,0,1,0,0)"])
        );
        assert_eq!(minimal_extended_tuples(CaseTag::NonreducedTwoPrimes, 3).unwrap().len(), 6);
        assert!(minimal_extended_tuples(CaseTag::Domain, 2).is_err());
    }

    #[test]
    fn generation_in_box_four() {
        for case in [CaseTag::Domain, CaseTag::NonreducedOnePrime] {
            let m = minimal_extended_tuples(case, 4).unwrap();
            assert_eq!(m, minimal_extended_tuples(case, 3).unwrap());
            assert!(generates_box(&m, case, 4));
        }
    }

    #[test]
    fn modes_agree() {
        for case in CaseTag::ALL {
            assert_eq!(
                minimal_extended_tuples_with(Execution::Sequential, case, 3).unwrap(),
                minimal_extended_tuples_with(Execution::Parallel, case, 3).unwrap()
            );
        }
    }
}
