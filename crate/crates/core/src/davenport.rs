//! Zero-sum combinatorics in finite abelian groups: the Davenport
//! constant, zero-sum subsequences, and the resulting rank bound `n·D(G)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// Default cap on `|G|` for the exhaustive Davenport search.
pub const DEFAULT_GROUP_BOUND: u64 = 64;

/// `Z/d1 ⊕ … ⊕ Z/dk` with `d1 | d2 | … | dk`, each `di >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

/// An element, as residues modulo the invariant factors.
pub type Element = Vec<u64>;

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<AbelianGroup> {
        if let Some(d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidGroup(format!("invariant factor {d} is below 2")));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup(format!("{factors:?} is not a divisor chain")));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn trivial() -> AbelianGroup {
        AbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Result<AbelianGroup> {
        if n == 1 {
            Ok(AbelianGroup::trivial())
        } else {
            AbelianGroup::new(vec![n])
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn zero(&self) -> Element {
        vec![0; self.rank()]
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Element {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Mixed-radix index in `0..order`.
    pub fn index(&self, a: &[u64]) -> usize {
        a.iter()
            .zip(&self.factors)
            .fold(0u64, |acc, (x, d)| acc * d + x) as usize
    }

    pub fn element(&self, mut i: usize) -> Element {
        let mut out = vec![0; self.rank()];
        for (slot, d) in out.iter_mut().zip(&self.factors).rev() {
            *slot = i as u64 % d;
            i /= *d as usize;
        }
        out
    }

    pub fn elements(&self) -> Vec<Element> {
        (0..self.order() as usize).map(|i| self.element(i)).collect()
    }

    /// Reduces arbitrary integer coordinates into the group.
    pub fn normalize(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(Error::Parse(format!(
                "element has {} coordinates, group has rank {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &d)| x.rem_euclid(d as i64) as u64)
            .collect())
    }

    /// Parses `(1,0),(0,1)`; for cyclic groups plain `1,1,1` also works.
    pub fn parse_sequence(&self, s: &str) -> Result<Vec<Element>> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        let bad = |p: &str| Error::Parse(format!("bad group element `{p}`"));
        let parse_coords = |p: &str| -> Result<Vec<i64>> {
            p.split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|_| bad(p)))
                .collect()
        };
        if !s.contains('(') {
            if self.rank() > 1 {
                return Err(Error::Parse("elements of a non-cyclic group need parentheses".into()));
            }
            return parse_coords(s)?
                .into_iter()
                .map(|c| self.normalize(&[c][..self.rank()]))
                .collect();
        }
        let mut out = Vec::new();
        let mut rest = s;
        while let Some(open) = rest.find('(') {
            let close = rest[open..].find(')').ok_or_else(|| bad(rest))? + open;
            out.push(self.normalize(&parse_coords(&rest[open + 1..close])?)?);
            rest = rest[close + 1..].trim_start().trim_start_matches(',');
        }
        if !rest.trim().is_empty() {
            return Err(bad(rest));
        }
        Ok(out)
    }

    pub fn render_element(&self, a: &[u64]) -> String {
        if self.rank() == 1 {
            a[0].to_string()
        } else {
            let s: Vec<String> = a.iter().map(u64::to_string).collect();
            format!("({})", s.join(","))
        }
    }

    /// All groups of order exactly `n`, as divisor chains.
    pub fn all_of_order(n: u64) -> Vec<AbelianGroup> {
        fn chains(rem: u64, prev: u64, cur: &mut Vec<u64>, out: &mut Vec<AbelianGroup>) {
            if rem == 1 {
                out.push(AbelianGroup { factors: cur.clone() });
                return;
            }
            for d in 2..=rem {
                if rem.is_multiple_of(d) && d.is_multiple_of(prev) {
                    cur.push(d);
                    chains(rem / d, d, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        chains(n, 1, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        let s: Vec<String> = self.factors.iter().map(|d| format!("Z{d}")).collect();
        f.write_str(&s.join("+"))
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Comma-separated invariant factors, e.g. `2,4`; `1`, `0`, `trivial`
    /// or the empty string give the trivial group.
    fn from_str(s: &str) -> Result<AbelianGroup> {
        let s = s.trim();
        if s.is_empty() || s == "trivial" || s == "0" || s == "1" {
            return Ok(AbelianGroup::trivial());
        }
        let factors = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad invariant factor `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        AbelianGroup::new(factors)
    }
}

/// `1 + Σ (di - 1)`, attained by the witness below.
pub fn davenport_lower_bound(g: &AbelianGroup) -> u64 {
    1 + g.factors().iter().map(|d| d - 1).sum::<u64>()
}

/// `di - 1` copies of the i-th basis vector: zero-sum free.
pub fn zero_sum_free_witness(g: &AbelianGroup) -> Vec<Element> {
    let mut out = Vec::new();
    for (i, d) in g.factors().iter().enumerate() {
        let mut e = g.zero();
        e[i] = 1;
        out.extend(std::iter::repeat_n(e, *d as usize - 1));
    }
    out
}

/// Appending `g` to a sequence maps its set of subsums `Σ` (with 0
/// adjoined) to `Σ ∪ (Σ + g)`, independently of order, so zero-sum-free
/// sequences are paths in a DAG on subsum sets and the search memoises on
/// the subsum set alone (a bitmask, hence `|G| <= 64`). Each state stores
/// the shortest continuation length proven impossible from it; states are
/// identified up to automorphisms of `G`.
struct Tables {
    order: usize,
    /// `shift[j][s]` = index of `element(j) + element(s)`.
    shift: Vec<Vec<usize>>,
    /// Index permutations induced by automorphisms, identity excluded.
    autos: Vec<Vec<usize>>,
}

impl Tables {
    fn new(group: &AbelianGroup) -> Self {
        let elems = group.elements();
        let shift = elems
            .iter()
            .map(|g| elems.iter().map(|h| group.index(&group.add(g, h))).collect())
            .collect();
        Tables {
            order: elems.len(),
            shift,
            autos: automorphisms(group),
        }
    }

    /// One nonzero element from each automorphism orbit.
    fn orbit_representatives(&self) -> Vec<usize> {
        (1..self.order)
            .filter(|&j| self.autos.iter().all(|perm| perm[j] >= j))
            .collect()
    }
}

struct Search<'a> {
    tables: &'a Tables,
    impossible: HashMap<u64, u32>,
}

impl<'a> Search<'a> {
    fn new(tables: &'a Tables) -> Self {
        Search {
            tables,
            impossible: HashMap::new(),
        }
    }

    fn canonical(&self, mask: u64) -> u64 {
        self.tables
            .autos
            .iter()
            .map(|perm| {
                let mut image = 0u64;
                let mut m = mask;
                while m != 0 {
                    let s = m.trailing_zeros() as usize;
                    m &= m - 1;
                    image |= 1u64 << perm[s];
                }
                image
            })
            .fold(mask, u64::min)
    }

    /// Nonempty subsums after appending element `j` to a sequence whose
    /// nonempty subsums are `mask`; `None` if 0 becomes a subsum.
    fn extend(&self, mask: u64, j: usize) -> Option<u64> {
        let mut next = mask | (1u64 << j);
        let mut m = mask;
        while m != 0 {
            let s = m.trailing_zeros() as usize;
            m &= m - 1;
            next |= 1u64 << self.tables.shift[j][s];
        }
        (next & 1 == 0).then_some(next)
    }

    /// Indices of a zero-sum-free continuation of length `need`, if any.
    fn find(&mut self, mask: u64, need: u32) -> Option<Vec<usize>> {
        if need == 0 {
            return Some(Vec::new());
        }
        let n = self.tables.order;
        // each appended element adds at least one new nonzero subsum
        let room = (n - 1) as u32 - mask.count_ones();
        if room < need {
            return None;
        }
        let key = self.canonical(mask);
        if self.impossible.get(&key).is_some_and(|&k| need >= k) {
            return None;
        }
        for j in 1..n {
            if let Some(next) = self.extend(mask, j) {
                if let Some(mut rest) = self.find(next, need - 1) {
                    rest.push(j);
                    return Some(rest);
                }
            }
        }
        let slot = self.impossible.entry(key).or_insert(need);
        *slot = (*slot).min(need);
        None
    }
}

/// Automorphisms as index permutations (identity excluded): all of them
/// when the candidate generator images are few, otherwise the unit
/// multiples `g -> u g`.
fn automorphisms(group: &AbelianGroup) -> Vec<Vec<usize>> {
    const CANDIDATE_CAP: usize = 4096;
    let elems = group.elements();
    let n = elems.len();
    let order_divides = |g: &Element, d: u64| {
        let scaled: Vec<i64> = g.iter().map(|&x| (x * d) as i64).collect();
        group.is_zero(&group.normalize(&scaled).expect("same rank"))
    };
    // images allowed for each basis vector e_i: elements killed by d_i
    let choices: Vec<Vec<usize>> = group
        .factors()
        .iter()
        .map(|&d| (0..n).filter(|&i| order_divides(&elems[i], d)).collect())
        .collect();
    let candidates = choices.iter().map(Vec::len).product::<usize>();
    let apply = |images: &[usize], g: &Element| -> usize {
        let mut acc = group.zero();
        for (c, &img) in g.iter().zip(images) {
            for _ in 0..*c {
                acc = group.add(&acc, &elems[img]);
            }
        }
        group.index(&acc)
    };
    let identity: Vec<usize> = (0..n).collect();
    let mut out = std::collections::BTreeSet::new();
    if candidates <= CANDIDATE_CAP {
        let mut images = vec![0; group.rank()];
        for mut code in 0..candidates {
            for (slot, ch) in images.iter_mut().zip(&choices) {
                *slot = ch[code % ch.len()];
                code /= ch.len();
            }
            let perm: Vec<usize> = elems.iter().map(|g| apply(&images, g)).collect();
            let mut seen = vec![false; n];
            if perm.iter().all(|&p| !std::mem::replace(&mut seen[p], true)) && perm != identity {
                out.insert(perm);
            }
        }
    } else {
        let exponent = group.factors().last().copied().unwrap_or(1);
        for u in (2..exponent).filter(|&u| num_integer::gcd(u, exponent) == 1) {
            let scaled = |g: &Element| {
                let v: Vec<i64> = g.iter().map(|&x| (x * u) as i64).collect();
                group.index(&group.normalize(&v).expect("same rank"))
            };
            out.insert(elems.iter().map(scaled).collect::<Vec<usize>>());
        }
    }
    out.into_iter().collect()
}

fn check_order(g: &AbelianGroup, bound: u64) -> Result<()> {
    let order = g.order();
    if order > bound.min(DEFAULT_GROUP_BOUND) {
        return Err(Error::GroupTooLarge {
            order,
            bound: bound.min(DEFAULT_GROUP_BOUND),
        });
    }
    Ok(())
}

/// A zero-sum-free sequence of length `len`, split on its first element
/// across workers.
/// Index sequence of a zero-sum-free sequence of length `len`, if any. The
/// first element ranges over orbit representatives; in parallel mode each
/// representative is searched by its own worker with a private memo.
fn zero_sum_free_of_length(exec: Execution, tables: &Tables, memo: &mut Search, len: u32) -> Option<Vec<usize>> {
    if len == 0 {
        return Some(Vec::new());
    }
    let reps = tables.orbit_representatives();
    let with_first = |s: &mut Search, j: usize| {
        let mask = s.extend(0, j)?;
        s.find(mask, len - 1).map(|mut rest| {
            rest.push(j);
            rest.reverse();
            rest
        })
    };
    match exec.effective() {
        Execution::Sequential => reps.iter().find_map(|&j| with_first(memo, j)),
        Execution::Parallel => par::map(exec, &reps, |&j| with_first(&mut Search::new(tables), j))
            .into_iter()
            .flatten()
            .next(),
    }
}

/// A longest zero-sum-free sequence, found exhaustively.
pub fn longest_zero_sum_free(g: &AbelianGroup, bound: u64) -> Result<Vec<Element>> {
    longest_zero_sum_free_with(Execution::default(), g, bound)
}

pub fn longest_zero_sum_free_with(exec: Execution, g: &AbelianGroup, bound: u64) -> Result<Vec<Element>> {
    check_order(g, bound)?;
    let tables = Tables::new(g);
    let mut memo = Search::new(&tables);
    // the invariant-factor witness gives the starting length
    let mut best = zero_sum_free_witness(g);
    while let Some(longer) = zero_sum_free_of_length(exec, &tables, &mut memo, best.len() as u32 + 1) {
        best = longer.into_iter().map(|i| g.element(i)).collect();
    }
    Ok(best)
}

/// Exact `D(G)`: one more than the longest zero-sum-free sequence.
pub fn davenport(g: &AbelianGroup) -> Result<u64> {
    davenport_bounded(g, DEFAULT_GROUP_BOUND)
}

pub fn davenport_bounded(g: &AbelianGroup, bound: u64) -> Result<u64> {
    Ok(longest_zero_sum_free(g, bound)?.len() as u64 + 1)
}

pub fn davenport_with(exec: Execution, g: &AbelianGroup) -> Result<u64> {
    Ok(longest_zero_sum_free_with(exec, g, DEFAULT_GROUP_BOUND)?.len() as u64 + 1)
}

/// A nonempty sub-multiset of `seq` summing to zero, as positions into
/// `seq` (ascending); `None` if every nonempty subsum is nonzero.
pub fn zero_sum_subsequence(g: &AbelianGroup, seq: &[Element]) -> Option<Vec<usize>> {
    // parent[s] = (item that first reached s, previous sum or None)
    let mut parent: HashMap<Element, (usize, Option<Element>)> = HashMap::new();
    for (i, a) in seq.iter().enumerate() {
        let mut fresh = vec![(a.clone(), (i, None))];
        for s in parent.keys() {
            fresh.push((g.add(s, a), (i, Some(s.clone()))));
        }
        for (s, p) in fresh {
            if g.is_zero(&s) {
                let mut picked = vec![p.0];
                let mut cur = p.1;
                while let Some(prev) = cur {
                    let (j, before) = parent[&prev].clone();
                    picked.push(j);
                    cur = before;
                }
                picked.sort_unstable();
                return Some(picked);
            }
            parent.entry(s).or_insert(p);
        }
    }
    None
}

/// The rank bound `n · D(G)`.
pub fn rank_bound(n: u64, g: &AbelianGroup) -> Result<u64> {
    if n == 0 {
        return Err(Error::BadParameter("n must be at least 1".into()));
    }
    Ok(n * davenport(g)?)
}
