use std::cmp::Ordering;

/// Exponent vector, ordered degree-lexicographically (degree first, then
/// earlier variables weigh more).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables occurring with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// All monomials in `nvars` variables of exactly degree `d`, ascending.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fill(&mut out, &mut cur, 0, d);
        out.sort();
        out
    }

    /// All monomials of degree `< bound`, ascending.
    pub fn all_below(nvars: usize, bound: u32) -> Vec<Monomial> {
        (0..bound)
            .flat_map(|d| Monomial::all_of_degree(nvars, d))
            .collect()
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

fn fill(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, idx: usize, left: u32) {
    if cur.is_empty() {
        if left == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    if idx == cur.len() - 1 {
        cur[idx] = left;
        out.push(Monomial(cur.clone()));
        cur[idx] = 0;
        return;
    }
    for e in 0..=left {
        cur[idx] = e;
        fill(out, cur, idx + 1, left - e);
    }
    cur[idx] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_order() {
        let x = Monomial::from_exponents(vec![1, 0]);
        let y = Monomial::from_exponents(vec![0, 1]);
        let y2 = Monomial::from_exponents(vec![0, 2]);
        let xy = Monomial::from_exponents(vec![1, 1]);
        assert!(x > y);
        assert!(y2 > x);
        assert!(xy > y2);
        let deg2 = Monomial::all_of_degree(2, 2);
        assert_eq!(deg2, vec![y2, xy, Monomial::from_exponents(vec![2, 0])]);
    }

    #[test]
    fn counts() {
        assert_eq!(Monomial::all_below(3, 4).len(), 20);
        assert_eq!(Monomial::all_below(0, 3).len(), 1);
    }
}
