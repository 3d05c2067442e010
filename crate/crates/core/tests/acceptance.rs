//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line,
//! followed by a check that sequential and parallel execution agree. Runs
//! without the libtest harness so the lines are always shown; the process
//! exits nonzero if anything fails.

use std::collections::BTreeSet;
use std::time::Instant;

use cm_type_lab::classify::classify_ring;
use cm_type_lab::davenport::{
    davenport, davenport_lower_bound, rank_bound, AbelianGroup,
};
use cm_type_lab::descent::{generates_box, minimal_extended_tuples, CaseTag, DecompositionTuple};
use cm_type_lab::endm::{
    end_of_maxideal, fraction_acts_on, hilbert_burch_verify, parse_images, substitution_isomorphism,
    Fraction,
};
use cm_type_lab::hom::end_algebra;
use cm_type_lab::invariants::{hilbert_data, multiplicity_three_structure, NilradicalShape, DEFAULT_SEARCH_BOUND};
use cm_type_lab::module::{catalog_t, kq_isomorphic, parse_module_spec, rank_vector, t_ring, ModulePresentation};
use cm_type_lab::{parse_polynomial, parse_ring, Field, Polynomial, Ring};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn t(precision: u32) -> Ring {
    t_ring(Field::Rationals, precision).unwrap()
}

fn rank_table() -> Check {
    let ring = t(12);
    let expected = [
        ("x", vec![1, 0]),
        ("ysq", vec![0, 1]),
        ("alpha", vec![0, 1]),
        ("beta", vec![2, 1]),
        ("gamma", vec![1, 1]),
        ("delta", vec![1, 1]),
    ];
    let mut ok = 0;
    for (label, ranks) in &expected {
        for k in 1..=4 {
            let m = catalog_t(&ring, label, k).map_err(|e| e.to_string())?;
            let got = rank_vector(&m).map_err(|e| e.to_string())?.ranks();
            ensure(got.as_ref() == Some(ranks), || format!("{label}:{k} has ranks {got:?}"))?;
            ok += 1;
        }
    }
    Ok(format!("{ok}/24 rank vectors match"))
}

fn e_construction() -> Check {
    let end = end_of_maxideal(&t(12)).map_err(|e| e.to_string())?;
    let rels = end.new_relations();
    let want = ["x*z", "-y^2 + y*z", "-y^2 + z^2"];
    ensure(rels == want, || format!("relations {rels:?}"))?;
    ensure(end.colength == 1, || format!("dim E/T = {}", end.colength))?;
    let e = parse_ring("QQ[[X,Y,Z]]/(X*Y, Y*Z, Z^2)", 12).unwrap();
    let images = parse_images(&e, &["X", "Y + Z", "Y"]).map_err(|e| e.to_string())?;
    let iso = substitution_isomorphism(&end.ring, &images, &e).map_err(|e| e.to_string())?;
    ensure(iso, || "change of variables is not an isomorphism onto (XY, YZ, Z^2)".into())?;
    let hf = hilbert_data(&end.ring).values;
    let through_ten = &hf[..11];
    ensure(through_ten[0] == 1 && through_ten[1..].iter().all(|&v| v == 3), || {
        format!("Hilbert function {through_ten:?}")
    })?;
    Ok(format!("fraction {}, relations {rels:?}, HF {:?}", end.fraction.unwrap(), &hf[..6]))
}

fn polys(rows: &[Vec<&str>]) -> Vec<Vec<Polynomial>> {
    let names: Vec<String> = ["X'", "Y'", "Z'"].iter().map(|s| s.replace('\'', "p")).collect();
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_polynomial(&s.replace('\'', "p"), Field::Rationals, &names).unwrap())
                .collect()
        })
        .collect()
}

fn hilbert_burch() -> Check {
    let phi = polys(&[vec!["X'", "Y'"], vec!["Y' - Z'", "0"], vec!["0", "Z'"]]);
    let ideal = polys(&[vec!["X'*Z'", "Y'^2 - Y'*Z'", "Y'*Z' - Z'^2"]]).remove(0);
    let ok = hilbert_burch_verify(&phi, &ideal).map_err(|e| e.to_string())?;
    ensure(ok, || "minors differ from the ideal".into())?;
    Ok("maximal minors generate (X'Z', Y'^2 - Y'Z', Y'Z' - Z'^2)".into())
}

fn classifier() -> Check {
    let cases = [
        ("QQ[[x,y]]/(y^2)", "bounded_infinite(Y2)"),
        ("QQ[[x,y]]/(x*y^2)", "bounded_infinite(XY2)"),
        ("QQ[[x,y,z]]/(x*y, y*z, z^2)", "bounded_infinite(E)"),
        ("QQ[[x,y]]/(y^3)", "unbounded"),
        ("QQ[[x,y]]/(x*y)", "finite"),
        ("QQ[[x,y]]/(y^4)", "unbounded"),
    ];
    for (ring, want) in cases {
        for n in [12, 16] {
            let r = parse_ring(ring, n).map_err(|e| e.to_string())?;
            let c = classify_ring(&r).map_err(|e| e.to_string())?;
            ensure(c.label() == want, || format!("{ring} at {n}: {} (want {want})", c.label()))?;
            ensure(c.trace.iter().all(|e| !e.citation.is_empty()) && c.trace.len() >= 2, || {
                format!("{ring}: trace lacks cited rules")
            })?;
        }
    }
    Ok("6 rings, verdicts agree at precisions 12 and 16".into())
}

fn structure_suite() -> Check {
    let mut notes = Vec::new();
    for (ring, shape) in [
        ("QQ[[x,y,z]]/(x*y, y*z, z^2)", NilradicalShape::Principal),
        ("QQ[[x,y,z]]/(y^2, y*z, z^2)", NilradicalShape::TwoGenerated),
    ] {
        let r = parse_ring(ring, 12).unwrap();
        let s = multiplicity_three_structure(&r, DEFAULT_SEARCH_BOUND).map_err(|e| format!("{ring}: {e}"))?;
        let square = s.nilradical.product(&s.nilradical).map_err(|e| e.to_string())?;
        ensure(square.is_zero(), || format!("{ring}: N^2 != 0"))?;
        ensure(s.nilradical_generators <= 2, || format!("{ring}: nu(N) = {}", s.nilradical_generators))?;
        ensure(s.shape == shape, || format!("{ring}: shape {:?}", s.shape))?;
        let sally = &s.sally_nilradical;
        ensure(sally.holds, || format!("{ring}: Sally inequality fails {sally:?}"))?;
        notes.push(format!(
            "nu(N)={} <= {}-{}",
            sally.generators, sally.e_ring, sally.e_quotient
        ));
    }
    Ok(notes.join("; "))
}

fn catalog_modules(ring: &Ring) -> Vec<ModulePresentation> {
    let mut out = Vec::new();
    for label in ["x", "ysq", "y", "xy"] {
        out.push(catalog_t(ring, label, 1).unwrap());
    }
    for label in ["alpha", "beta", "gamma", "delta"] {
        for k in 1..=3 {
            out.push(catalog_t(ring, label, k).unwrap());
        }
    }
    out
}

fn indecomposability() -> Check {
    let r12 = t(12);
    let r16 = t(16);
    let mods = catalog_modules(&r12);
    for (m, m16) in mods.iter().zip(catalog_modules(&r16)) {
        let label = m.label.clone().unwrap_or_default();
        let a = end_algebra(m).map_err(|e| format!("{label}: {e}"))?;
        ensure(a.semisimple_dimension == 1, || {
            format!("{label}: End/rad has dimension {}", a.semisimple_dimension)
        })?;
        let b = end_algebra(&m16).map_err(|e| format!("{label}: {e}"))?;
        ensure(b.semisimple_dimension == 1, || format!("{label}: not stable at 16"))?;
    }
    let mut pairs = 0;
    for i in 0..mods.len() {
        for j in i..mods.len() {
            let sum = mods[i].direct_sum(&mods[j]).map_err(|e| e.to_string())?;
            let a = end_algebra(&sum).map_err(|e| e.to_string())?;
            ensure(!a.is_local(), || format!("{:?} not detected as decomposable", sum.label))?;
            pairs += 1;
        }
    }
    Ok(format!("{} modules indecomposable at 12 and 16; {pairs} direct sums decomposable", mods.len()))
}

fn k_isomorphism() -> Check {
    let ring = t(12);
    let v = catalog_t(&ring, "xy", 1).unwrap();
    let xu = parse_module_spec(&ring, "x+y").unwrap();
    let ok = kq_isomorphic(&v, &xu).map_err(|e| e.to_string())?;
    ensure(ok, || "K(x) ⊗ V differs from K ⊗ (Coker[x] + U)".into())?;
    Ok("K ⊗ Coker[xy] ≅ K ⊗ (Coker[x] ⊕ Coker[y])".into())
}

fn minimal_tuples() -> Check {
    let set = |v: &[&str]| -> BTreeSet<DecompositionTuple> { v.iter().map(|s| s.parse().unwrap()).collect() };
    let domain = minimal_extended_tuples(CaseTag::Domain, 3).map_err(|e| e.to_string())?;
    let want_domain = set(&["(0,0,1,0,0,0)", "(1,1,0,0,0,0)", "(0,1,0,1,0,0)"]);
    ensure(domain == want_domain, || format!("domain: {domain:?}"))?;
    let one = minimal_extended_tuples(CaseTag::NonreducedOnePrime, 3).map_err(|e| e.to_string())?;
    let want_one = set(&[
        "(0,0,1,0,0,0)",
        "(1,1,0,0,0,0)",
        "(0,1,0,1,0,0)",
        "(0,0,0,0,1,0)",
        "(0,1,0,0,0,1)",
    ]);
    ensure(one == want_one, || format!("nonreduced_one_prime: {one:?}"))?;
    for (case, gens) in [(CaseTag::Domain, &domain), (CaseTag::NonreducedOnePrime, &one)] {
        ensure(generates_box(gens, case, 4), || format!("{case}: generation fails in [0,4]^6"))?;
    }
    Ok("3 + 5 minimal tuples; generation verified in [0,4]^6".into())
}

fn davenport_checks() -> Check {
    for n in 1..=8 {
        let d = davenport(&AbelianGroup::cyclic(n).unwrap()).map_err(|e| e.to_string())?;
        ensure(d == n, || format!("D(Z{n}) = {d}"))?;
    }
    let v = davenport(&"2,2".parse().unwrap()).map_err(|e| e.to_string())?;
    ensure(v == 3, || format!("D(Z2+Z2) = {v}"))?;
    let mut groups = 0;
    for n in 1..=16 {
        for g in AbelianGroup::all_of_order(n) {
            let d = davenport(&g).map_err(|e| e.to_string())?;
            ensure(d <= g.order() && d >= davenport_lower_bound(&g), || format!("D({g}) = {d}"))?;
            groups += 1;
        }
    }
    let b = rank_bound(2, &"3".parse().unwrap()).map_err(|e| e.to_string())?;
    ensure(b == 6, || format!("rank bound {b}"))?;
    Ok(format!("cyclic n <= 8 exact, D(Z2+Z2) = 3, bounds hold on {groups} groups, rank bound 6"))
}

fn z_action() -> Check {
    let ring = t(12);
    let z = Fraction::parse(&ring, "y^2/(x+y)").unwrap();
    let mods = catalog_modules(&ring);
    for m in &mods {
        let ok = fraction_acts_on(m, &z).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{:?}: y^2 I = (x+y) Z + phi W has no solution", m.label))?;
    }
    Ok(format!("solvable for all {} catalog matrices", mods.len()))
}

fn criteria() -> Vec<usize> {
    let criteria: [Criterion; 10] = [
        ("rank table of the catalog", rank_table),
        ("End(m) of T and the ring E", e_construction),
        ("Hilbert-Burch matrix for E", hilbert_burch),
        ("classifier verdicts", classifier),
        ("structure of e = nu = 3 rings", structure_suite),
        ("indecomposability of the catalog", indecomposability),
        ("Coker[xy] and Coker[x] + Coker[y] agree at minimal primes", k_isomorphism),
        ("minimal extended tuples", minimal_tuples),
        ("Davenport constants", davenport_checks),
        ("action of z = y^2/(x+y) on the catalog", z_action),
    ];
    let mut failures = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match &result {
            Ok(detail) => println!("PASS criterion {:>2}: {name} — {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                println!("FAIL criterion {:>2}: {name} — {why} ({secs:.2}s)", i + 1);
                failures.push(i + 1);
            }
        }
    }
    failures
}

fn sequential_and_parallel_agree() {
    use cm_type_lab::davenport::{davenport_with, longest_zero_sum_free_with};
    use cm_type_lab::descent::minimal_extended_tuples_with;
    use cm_type_lab::par::Execution;

    for case in CaseTag::ALL {
        let seq = minimal_extended_tuples_with(Execution::Sequential, case, 4).unwrap();
        let par = minimal_extended_tuples_with(Execution::Parallel, case, 4).unwrap();
        assert_eq!(seq, par, "{case}");
    }
    for spec in ["6", "2,4", "3,3", "2,2,2", "2,6"] {
        let g: AbelianGroup = spec.parse().unwrap();
        let seq = davenport_with(Execution::Sequential, &g).unwrap();
        let par = davenport_with(Execution::Parallel, &g).unwrap();
        assert_eq!(seq, par, "D({g})");
        let w = longest_zero_sum_free_with(Execution::Sequential, &g, 64).unwrap();
        assert_eq!(w.len() as u64 + 1, seq);
    }
}

fn main() {
    let failures = criteria();
    let agree = std::panic::catch_unwind(sequential_and_parallel_agree).is_ok();
    println!(
        "{} sequential and parallel execution agree",
        if agree { "PASS" } else { "FAIL" }
    );
    if !failures.is_empty() || !agree {
        eprintln!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
}
