//! Buchberger's algorithm for `I + m^N` under degree-lex order.
//!
//! The degree-`N` monomials generating `m^N` are never stored: reduction by
//! them is the same as discarding every term of degree `>= N`. Their
//! S-pairs with a basis element `g` are the products `v * g` for monomials
//! `v` with `deg(v) + deg(lm(g)) = N`, and those are queued explicitly.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::monomial::Monomial;
use crate::polynomial::Polynomial;

/// Fully reduces `p` modulo `basis` and `m^bound`.
pub fn reduce(p: &Polynomial, basis: &[Polynomial], bound: u32) -> Polynomial {
    let mut work = p.clone().truncated(bound);
    let mut rem = Polynomial::zero(p.field(), p.nvars());
    while let Some((m, c)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis
            .iter()
            .find(|g| g.leading().is_some_and(|(lm, _)| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading().expect("nonzero basis element");
                let q = lm.quotient_of(&m);
                let factor = &c / lc;
                let sub = g.mul_term(&q, &factor).truncated(bound);
                work = &work - &sub;
            }
            None => {
                work.add_term(m.clone(), -&c);
                rem.add_term(m, c);
            }
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, bound: u32) -> Polynomial {
    let (lf, cf) = f.leading().expect("nonzero");
    let (lg, cg) = g.leading().expect("nonzero");
    let l = lf.lcm(lg);
    let a = f.mul_term(&lf.quotient_of(&l), &cg.inv().expect("nonzero"));
    let b = g.mul_term(&lg.quotient_of(&l), &cf.inv().expect("nonzero"));
    (&a - &b).truncated(bound)
}

enum Job {
    Pair(usize, usize),
    Poly(Polynomial),
}

/// Jobs are processed lowest degree first (the "normal" selection
/// strategy); ties go to the job queued earliest.
struct Queue {
    heap: BinaryHeap<Reverse<(u32, u64)>>,
    jobs: HashMap<u64, Job>,
    next: u64,
}

impl Queue {
    fn new() -> Self {
        Queue {
            heap: BinaryHeap::new(),
            jobs: HashMap::new(),
            next: 0,
        }
    }

    fn push(&mut self, degree: u32, job: Job) {
        self.heap.push(Reverse((degree, self.next)));
        self.jobs.insert(self.next, job);
        self.next += 1;
    }

    fn pop(&mut self) -> Option<Job> {
        let Reverse((_, id)) = self.heap.pop()?;
        self.jobs.remove(&id)
    }
}

/// Reduced Gröbner basis of `(generators) + m^bound`, listing only the
/// elements of degree `< bound`. Output is sorted by leading monomial.
pub fn truncated_groebner(generators: &[Polynomial], bound: u32) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut queue = Queue::new();
    for g in generators {
        let g = g.clone().truncated(bound);
        if !g.is_zero() {
            queue.push(g.leading().expect("nonzero").0.degree(), Job::Poly(g));
        }
    }

    while let Some(job) = queue.pop() {
        let candidate = match job {
            Job::Poly(p) => p,
            Job::Pair(i, j) => s_polynomial(&basis[i], &basis[j], bound),
        };
        let r = reduce(&candidate, &basis, bound);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let idx = basis.len();
        let lm = r.leading().expect("nonzero").0.clone();
        // S-pairs against the implicit generators of m^bound.
        let deg = lm.degree();
        if deg < bound {
            for v in Monomial::all_of_degree(r.nvars(), bound - deg) {
                let prod = r.mul_term(&v, &r.field().one()).truncated(bound);
                if !prod.is_zero() {
                    let d = prod.leading().expect("nonzero").0.degree();
                    queue.push(d, Job::Poly(prod));
                }
            }
        }
        for (j, g) in basis.iter().enumerate() {
            let lj = g.leading().expect("nonzero").0;
            if lj.coprime(&lm) {
                continue;
            }
            queue.push(lj.lcm(&lm).degree(), Job::Pair(j, idx));
        }
        basis.push(r);
    }
    interreduce(basis, bound)
}

fn interreduce(mut basis: Vec<Polynomial>, bound: u32) -> Vec<Polynomial> {
    basis.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    // Drop elements whose leading monomial is divisible by another one.
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.leading().unwrap().0;
            j != i && lh.divides(lm) && (lh != lm || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let g = &minimal[i];
        let (lm, lc) = g.leading().unwrap();
        let mut tail = g.clone();
        tail.add_term(lm.clone(), -lc);
        let tail = reduce(&tail, &others, bound);
        let mut h = Polynomial::term(g.field(), lm.clone(), lc.clone());
        h = &h + &tail;
        reduced.push(h.monic());
    }
    reduced.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    reduced
}
