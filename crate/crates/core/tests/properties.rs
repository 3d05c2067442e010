//! Property tests for the algebraic invariants that the rest of the crate
//! leans on.

use proptest::prelude::*;

use cm_type_lab::classify::classify_ring;
use cm_type_lab::davenport::{davenport, davenport_lower_bound, zero_sum_subsequence, AbelianGroup};
use cm_type_lab::descent::{tuple_extended, CaseTag, DecompositionTuple};
use cm_type_lab::groebner::{reduce, truncated_groebner};
use cm_type_lab::invariants::{embdim, multiplicity};
use cm_type_lab::module::{catalog_t, rank_vector, t_ring};
use cm_type_lab::{normal_form, Field, Monomial, Polynomial, RingPresentation};

const RELATION_SETS: [&[&str]; 4] = [
    &["x*y", "y*z", "z^2"],
    &["y^2 - x*z", "y*z", "z^2"],
    &["x*y", "x*z", "y*z"],
    &["y^2 - x^3", "z^2 - x*y"],
];

fn names() -> Vec<String> {
    ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
}

fn relations(idx: usize) -> Vec<Polynomial> {
    RELATION_SETS[idx]
        .iter()
        .map(|s| cm_type_lab::parse_polynomial(s, Field::Rationals, &names()).unwrap())
        .collect()
}

/// A polynomial in x, y, z of degree at most 5 with small coefficients.
fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -3i64..=3), 0..8).prop_map(|terms| {
        let mut p = Polynomial::zero(Field::Rationals, 3);
        for ((a, b, c), v) in terms {
            p.add_term(Monomial::from_exponents(vec![a, b, c]), Field::Rationals.from_i64(v));
        }
        p
    })
}

fn tuple() -> impl Strategy<Value = DecompositionTuple> {
    prop::array::uniform6(0u32..5).prop_map(DecompositionTuple)
}

fn case() -> impl Strategy<Value = CaseTag> {
    prop::sample::select(CaseTag::ALL.to_vec())
}

fn group() -> impl Strategy<Value = AbelianGroup> {
    prop::sample::select(vec!["2", "5", "7", "2,2", "2,4", "3,3", "2,2,2", "2,6", "4,4", "2,2,4"])
        .prop_map(|s| s.parse().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Normal forms do not depend on the order the relations are listed in.
    #[test]
    fn normal_forms_are_confluent(idx in 0usize..4, p in poly(), rot in 0usize..3) {
        let mut rels = relations(idx);
        let a = truncated_groebner(&rels, 10);
        let len = rels.len();
        rels.rotate_left(rot % len);
        rels.reverse();
        let b = truncated_groebner(&rels, 10);
        prop_assert_eq!(reduce(&p, &a, 10), reduce(&p, &b, 10));
    }

    /// Reducing at a high precision and truncating agrees with reducing at
    /// the lower precision directly.
    #[test]
    fn truncation_is_consistent(idx in 0usize..4, p in poly(), low in 4u32..9) {
        let high = RingPresentation::new(Field::Rationals, names(), relations(idx), 12).unwrap();
        let lower = high.with_precision(low).unwrap();
        let reduced_high = normal_form(&p, &high).unwrap().poly().clone().truncated(low);
        let reduced_low = normal_form(&reduced_high, &lower).unwrap();
        let direct = normal_form(&p, &lower).unwrap();
        prop_assert_eq!(reduced_low.poly(), direct.poly());
    }

    /// Sums of extended tuples are extended.
    #[test]
    fn extended_tuples_are_closed_under_sums(c in case(), s in tuple(), t in tuple()) {
        if tuple_extended(&s, c) && tuple_extended(&t, c) {
            prop_assert!(tuple_extended(&s.add(&t), c));
        }
        // the indecomposables of rank (1,0) and (0,1) together always extend
        let pair = DecompositionTuple::unit(0).add(&DecompositionTuple::unit(1));
        prop_assert!(tuple_extended(&pair, c));
    }

    /// Rank vectors add under direct sums.
    #[test]
    fn ranks_are_additive(
        a in prop::sample::select(vec!["x", "ysq", "alpha", "beta", "gamma", "delta"]),
        b in prop::sample::select(vec!["x", "ysq", "alpha", "beta", "gamma", "delta"]),
        k in 1u32..4,
    ) {
        let ring = t_ring(Field::Rationals, 10).unwrap();
        let m = catalog_t(&ring, a, k).unwrap();
        let n = catalog_t(&ring, b, k).unwrap();
        let sum = m.direct_sum(&n).unwrap();
        let rm = rank_vector(&m).unwrap().ranks().unwrap();
        let rn = rank_vector(&n).unwrap().ranks().unwrap();
        let rs = rank_vector(&sum).unwrap().ranks().unwrap();
        let expected: Vec<usize> = rm.iter().zip(&rn).map(|(x, y)| x + y).collect();
        prop_assert_eq!(rs, expected);
    }

    /// D(G) lies between the invariant-factor bound and |G|, and every
    /// sequence of length D(G) has a nonempty zero-sum subsequence.
    #[test]
    fn davenport_bounds_hold(g in group(), seed in prop::collection::vec(0usize..64, 16)) {
        let d = davenport(&g).unwrap();
        prop_assert!(davenport_lower_bound(&g) <= d && d <= g.order());
        let seq: Vec<_> = seed.iter().take(d as usize).map(|&i| g.element(i % g.order() as usize)).collect();
        let positions = zero_sum_subsequence(&g, &seq).unwrap();
        prop_assert!(!positions.is_empty());
        let mut total = g.zero();
        for &p in &positions {
            total = g.add(&total, &seq[p]);
        }
        prop_assert!(g.is_zero(&total));
    }
}

proptest! {
    // each case runs the full classifier twice
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// The classifier's recorded invariants match independent computations,
    /// and its verdict survives a unipotent change of coordinates.
    #[test]
    fn classification_traces_are_sound(idx in 0usize..4, a in -2i64..=2, b in -2i64..=2) {
        let f = Field::Rationals;
        let ring = RingPresentation::new(f, names(), relations(idx), 10).unwrap();
        let c = classify_ring(&ring).unwrap();
        if let Some(e) = c.datum("e") {
            prop_assert_eq!(e, multiplicity(&ring).unwrap().to_string());
        }
        if let Some(nu) = c.datum("nu") {
            prop_assert_eq!(nu, embdim(&ring).to_string());
        }
        prop_assert!(c.trace.iter().all(|t| !t.rule.is_empty() && !t.citation.is_empty()));

        let x = Polynomial::var(f, 3, 0);
        let y = Polynomial::var(f, 3, 1);
        let z = Polynomial::var(f, 3, 2);
        let images = [
            &x + &y.scale(&f.from_i64(a)),
            &y + &z.scale(&f.from_i64(b)),
            z.clone(),
        ];
        let moved: Vec<Polynomial> = relations(idx).iter().map(|r| r.substitute(&images)).collect();
        let other = RingPresentation::new(f, names(), moved, 10).unwrap();
        let d = classify_ring(&other).unwrap();
        prop_assert_eq!(c.label(), d.label());
    }
}
