//! Subcommand implementations. Each returns a [`Report`]; argument and
//! input problems come back as [`UsageError`].

use std::path::Path;

use serde_json::{json, Value};

use cm_type_lab::classify::{classify_ring, depth_witness};
use cm_type_lab::davenport::{
    davenport_lower_bound, longest_zero_sum_free, rank_bound, zero_sum_subsequence, AbelianGroup,
    DEFAULT_GROUP_BOUND,
};
use cm_type_lab::descent::{generates_box, minimal_extended_tuples, tuple_extended, CaseTag, DecompositionTuple};
use cm_type_lab::endm::{
    cm_type, end_of_maxideal, fraction_acts_on, hilbert_burch_verify, is_gorenstein, parse_images,
    substitution_isomorphism, Fraction,
};
use cm_type_lab::hom::{end_algebra, hom_stability};
use cm_type_lab::invariants::{embdim, hilbert_data, is_hypersurface, multiplicity_three_structure, DEFAULT_SEARCH_BOUND};
use cm_type_lab::module::{catalog_t, kq_isomorphic, rank_vector, ModulePresentation, CATALOG_LABELS};
use cm_type_lab::primes::is_reduced;
use cm_type_lab::{Field, Ring};

use crate::inputs;
use crate::report::{Report, UsageError};

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct Globals {
    pub precision: u32,
    pub field: Field,
    pub search_bound: Option<u64>,
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn matrix_json(m: &ModulePresentation) -> Value {
    json!(m.entry_strings())
}

fn matrix_lines(report: &mut Report, m: &ModulePresentation) {
    for row in m.entry_strings() {
        report.line(format!("  [ {} ]", row.join("  ")));
    }
}

pub fn classify(argv: Vec<String>, g: &Globals, ring_text: &str) -> Result<Report, UsageError> {
    let ring = inputs::ring(ring_text, g.field, g.precision)?;
    let c = classify_ring(&ring)?;
    let mut r = Report::new(argv, json!({ "ring": ring.render() }));
    r.precision = Some(c.precision);
    r.results = json!({
        "verdict": c.label(),
        "kind": c.verdict,
        "type": c.bounded_type,
        "warnings": c.warnings,
    });
    r.trace = serde_json::to_value(&c.trace)?;
    r.line(format!("ring: {}", ring.render()));
    r.line(format!("verdict: {}", c.label()));
    for t in &c.trace {
        let data: Vec<String> = t.data.iter().map(|(k, v)| format!("{k}={v}")).collect();
        r.line(format!("  {}: {}", t.rule, t.citation));
        if !data.is_empty() {
            r.line(format!("      {}", data.join("  ")));
        }
    }
    for w in &c.warnings {
        r.line(format!("warning: {w}"));
    }
    Ok(r)
}

pub fn invariants(argv: Vec<String>, g: &Globals, ring_text: &str, structure: bool) -> Result<Report, UsageError> {
    let ring = inputs::ring(ring_text, g.field, g.precision)?;
    let mut r = Report::new(argv, json!({ "ring": ring.render() }));
    r.precision = Some(ring.precision());
    let h = hilbert_data(&ring);
    let witness = depth_witness(&ring);
    let cm = witness.is_some() && h.stable_value.is_some();
    let ctype = if cm { cm_type(&ring).ok() } else { None };
    let gorenstein = if cm { is_gorenstein(&ring).ok() } else { None };
    let reduced = is_reduced(&ring).ok();
    let mut results = json!({
        "hilbert": h.values,
        "e": h.stable_value,
        "stable_from": h.stable_from,
        "nu": embdim(&ring),
        "hypersurface": is_hypersurface(&ring),
        "nonzerodivisor": witness.as_ref().map(|w| w.render()),
        "cm_type": ctype,
        "gorenstein": gorenstein,
        "reduced": reduced,
    });
    r.line(format!("ring: {}", ring.render()));
    r.line(format!("Hilbert function: {}", join(&h.values)));
    match h.stable_value {
        Some(e) => r.line(format!("e = {e}")),
        None => r.line("e: Hilbert function not stable at this precision"),
    }
    r.line(format!("nu = {}", embdim(&ring)));
    match &witness {
        Some(w) => r.line(format!("nonzerodivisor: {}", w.render())),
        None => r.line("no linear nonzerodivisor found (not certified one-dimensional CM)"),
    }
    if let Some(t) = ctype {
        r.line(format!("CM type = {t}{}", if t == 1 { " (Gorenstein)" } else { "" }));
    }
    match reduced {
        Some(b) => r.line(format!("reduced: {b}")),
        None => r.line("reduced: undecided"),
    }
    if structure {
        let bound = g.search_bound.map_or(DEFAULT_SEARCH_BOUND, |b| b as i64);
        let s = match multiplicity_three_structure(&ring, bound) {
            Ok(s) => {
                let square = s.nilradical.product(&s.nilradical)?;
                let nil: Vec<String> = s.nilradical.gens().iter().map(|e| e.render()).collect();
                r.line(format!("x = {}, y = {}, z = {}", s.x.render(), s.y.render(), s.z.render()));
                r.line(format!("N = ({}), nu(N) = {}, shape {:?}", nil.join(", "), s.nilradical_generators, s.shape));
                r.line(format!("N^2 = 0: {}", square.is_zero()));
                let sc = &s.sally_nilradical;
                r.line(format!(
                    "Sally: nu(N) = {} <= e(R) - e(R/N) = {} - {}: {}",
                    sc.generators, sc.e_ring, sc.e_quotient, sc.holds
                ));
                json!({
                    "x": s.x.render(), "y": s.y.render(), "z": s.z.render(),
                    "nilradical": nil,
                    "nu_N": s.nilradical_generators,
                    "shape": s.shape,
                    "nilradical_square_zero": square.is_zero(),
                    "sally": {
                        "nu_N": sc.generators, "e_ring": sc.e_ring,
                        "e_quotient": sc.e_quotient, "holds": sc.holds,
                    },
                })
            }
            Err(e) => {
                r.line(format!("structure: {e}"));
                r.negative();
                json!({ "error": e.to_string() })
            }
        };
        results["structure"] = s;
    }
    r.results = results;
    Ok(r)
}

pub struct EndmOptions<'a> {
    pub target: Option<&'a str>,
    pub images: Option<&'a str>,
    pub hilbert_burch: Option<&'a str>,
}

pub fn endm(argv: Vec<String>, g: &Globals, ring_text: &str, opts: EndmOptions<'_>) -> Result<Report, UsageError> {
    let ring = inputs::ring(ring_text, g.field, g.precision)?;
    let end = end_of_maxideal(&ring)?;
    let mut r = Report::new(argv, json!({ "ring": ring.render() }));
    r.precision = Some(ring.precision());
    let hf = hilbert_data(&end.ring).values;
    let fraction = end.fraction.as_ref().map(Fraction::render);
    let mut results = json!({
        "fraction": fraction,
        "variable": end.variable,
        "new_relations": end.new_relations(),
        "ring": end.ring.render(),
        "colength": end.colength,
        "hilbert": hf,
    });
    r.line(format!("R = {}", ring.render()));
    match (&fraction, &end.variable) {
        (Some(f), Some(v)) => r.line(format!("End(m) = R[{v}], {v} = {f}")),
        _ => r.line("End(m) = R (no new fraction)"),
    }
    r.line(format!("new relations: {}", end.new_relations().join(", ")));
    r.line(format!("End(m) = {}", end.ring.render()));
    r.line(format!("dim_k End(m)/R = {}", end.colength));
    r.line(format!("Hilbert function of End(m): {}", join(&hf)));
    match (opts.target, opts.images) {
        (Some(t), Some(imgs)) => {
            let target = inputs::ring(t, g.field, g.precision)?;
            let pieces: Vec<String> = inputs::split_matrix(imgs).concat();
            let refs: Vec<&str> = pieces.iter().map(String::as_str).collect();
            let images = parse_images(&target, &refs)?;
            let iso = substitution_isomorphism(&end.ring, &images, &target)?;
            r.line(format!("substitution ({}) onto {}: {}", pieces.join(", "), target.render(), iso));
            results["isomorphism"] = json!({ "target": target.render(), "images": pieces, "holds": iso });
            if !iso {
                r.negative();
            }
        }
        (None, None) => {}
        _ => return Err(UsageError("--target and --images go together".into())),
    }
    if let Some(text) = opts.hilbert_burch {
        let phi = inputs::poly_matrix(text, end.ring.field(), end.ring.names())?;
        let ok = hilbert_burch_verify(&phi, end.ring.relations())?;
        r.line(format!("maximal minors of [{text}] generate the defining ideal: {ok}"));
        results["hilbert_burch"] = json!({ "matrix": inputs::split_matrix(text), "holds": ok });
        if !ok {
            r.negative();
        }
    }
    r.results = results;
    Ok(r)
}

pub struct CatalogOptions<'a> {
    pub ring: &'a str,
    pub label: Option<&'a str>,
    pub k: u32,
    pub ranks: bool,
    pub act: Option<&'a str>,
}

pub fn catalog(argv: Vec<String>, g: &Globals, opts: CatalogOptions<'_>) -> Result<Report, UsageError> {
    if opts.ring.trim() != "T" {
        return Err(UsageError("the catalog is available over T only".into()));
    }
    let ring = inputs::ring("T", g.field, g.precision)?;
    let mut r = Report::new(
        argv,
        json!({ "ring": ring.render(), "label": opts.label, "k": opts.k }),
    );
    r.precision = Some(ring.precision());
    let labels: Vec<&str> = match opts.label {
        Some(l) => vec![l],
        None => CATALOG_LABELS.to_vec(),
    };
    let fraction = opts.act.map(|a| Fraction::parse(&ring, a)).transpose()?;
    let mut entries = Vec::new();
    for label in labels {
        let m = catalog_t(&ring, label, opts.k)?;
        let name = m.label.clone().unwrap_or_else(|| label.to_string());
        r.line(format!("{name}:"));
        matrix_lines(&mut r, &m);
        let mut entry = json!({ "label": name, "matrix": matrix_json(&m) });
        if opts.ranks {
            let profile = rank_vector(&m)?;
            r.line(format!("  rank {profile}"));
            entry["rank"] = json!(profile.ranks());
            entry["rank_profile"] = json!(profile.to_string());
        }
        if let Some(f) = &fraction {
            let acts = fraction_acts_on(&m, f)?;
            r.line(format!("  {} acts: {acts}", f.render()));
            entry["acts"] = json!(acts);
            if !acts {
                r.negative();
            }
        }
        entries.push(entry);
    }
    r.results = json!({ "modules": entries });
    Ok(r)
}

fn module_ring(g: &Globals, ring_text: &str) -> Result<(Ring, bool), UsageError> {
    let is_t = ring_text.trim() == "T";
    Ok((inputs::ring(ring_text, g.field, g.precision)?, is_t))
}

pub fn rank(argv: Vec<String>, g: &Globals, ring_text: &str, module: &str, compare: Option<&str>) -> Result<Report, UsageError> {
    let (ring, is_t) = module_ring(g, ring_text)?;
    let m = inputs::module(&ring, is_t, module)?;
    let profile = rank_vector(&m)?;
    let mut r = Report::new(argv, json!({ "ring": ring.render(), "module": module, "compare": compare }));
    r.precision = Some(ring.precision());
    r.line(format!("module {module} over {}", ring.render()));
    r.line(format!("rank {profile}"));
    let mut results = json!({
        "primes": profile.primes,
        "rank": profile.ranks(),
        "profile": profile.to_string(),
        "generically_free": profile.generically_free,
    });
    if let Some(other) = compare {
        let n = inputs::module(&ring, is_t, other)?;
        let iso = kq_isomorphic(&m, &n)?;
        r.line(format!("localizations at every minimal prime agree with {other}: {iso}"));
        results["kq_isomorphic"] = json!(iso);
        if !iso {
            r.negative();
        }
    }
    r.results = results;
    Ok(r)
}

pub fn hom(argv: Vec<String>, g: &Globals, ring_text: &str, source: &str, target: &str, extra: u32) -> Result<Report, UsageError> {
    let (ring, is_t) = module_ring(g, ring_text)?;
    let m = inputs::module(&ring, is_t, source)?;
    let n = inputs::module(&ring, is_t, target)?;
    let s = hom_stability(&m, &n, extra)?;
    let mut r = Report::new(argv, json!({ "ring": ring.render(), "source": source, "target": target }));
    r.precision = Some(ring.precision());
    r.line(format!(
        "dim_k Hom({source}, {target}) at precision {} = {}; at {} = {}",
        s.precision, s.dim, s.check_precision, s.check_dim
    ));
    let growth = s.check_dim.saturating_sub(s.dim);
    if s.stable() {
        r.line("stable: Hom has finite length");
    } else {
        r.line(format!(
            "not stable: grows by {growth} over {extra} steps (Hom is not of finite length)"
        ));
    }
    r.results = json!({
        "dim": s.dim,
        "check_precision": s.check_precision,
        "check_dim": s.check_dim,
        "stable": s.stable(),
        "growth": growth,
    });
    Ok(r)
}

pub fn indecomposable(argv: Vec<String>, g: &Globals, ring_text: &str, module: &str) -> Result<Report, UsageError> {
    let (ring, is_t) = module_ring(g, ring_text)?;
    let m = inputs::module(&ring, is_t, module)?;
    let a = end_algebra(&m)?;
    let mut r = Report::new(argv, json!({ "ring": ring.render(), "module": module }));
    r.precision = Some(ring.precision());
    let local = a.is_local();
    r.line(format!(
        "End at precision {}: dim {}, radical {}, End/rad {}",
        a.precision, a.dimension, a.radical_dimension, a.semisimple_dimension
    ));
    r.line(if local {
        "indecomposable (End is local)".to_string()
    } else {
        "decomposable at this precision (End is not local)".to_string()
    });
    r.results = json!({
        "end_dimension": a.dimension,
        "radical_dimension": a.radical_dimension,
        "semisimple_dimension": a.semisimple_dimension,
        "indecomposable": local,
    });
    if !local {
        r.negative();
    }
    Ok(r)
}

fn case_tag(text: &str) -> Result<CaseTag, UsageError> {
    text.parse::<CaseTag>().map_err(UsageError::from)
}

pub fn extend(argv: Vec<String>, case: &str, tuple: &str) -> Result<Report, UsageError> {
    let case = case_tag(case)?;
    let t: DecompositionTuple = tuple.parse()?;
    let ok = tuple_extended(&t, case);
    let mut r = Report::new(argv, json!({ "case": case.as_str(), "tuple": t.to_string() }));
    r.line(format!("{t} in case {case}: {}", if ok { "extended" } else { "not extended" }));
    r.line(format!("rule: {}", case.rule()));
    r.results = json!({ "extended": ok, "rule": case.rule() });
    if !ok {
        r.negative();
    }
    Ok(r)
}

pub fn minimal_tuples(argv: Vec<String>, case: &str, bound: u32) -> Result<Report, UsageError> {
    let case = case_tag(case)?;
    let tuples = minimal_extended_tuples(case, bound)?;
    let generates = generates_box(&tuples, case, bound);
    let mut r = Report::new(argv, json!({ "case": case.as_str(), "box": bound }));
    r.line(format!("minimal extended tuples, case {case}, box [0,{bound}]^6:"));
    for t in &tuples {
        r.line(format!("  {t}"));
    }
    r.line(format!("they generate every extended tuple in the box: {generates}"));
    let list: Vec<String> = tuples.iter().map(ToString::to_string).collect();
    r.results = json!({ "tuples": list, "generates_box": generates });
    if !generates {
        r.negative();
    }
    Ok(r)
}

fn group_bound(g: &Globals) -> u64 {
    g.search_bound.unwrap_or(DEFAULT_GROUP_BOUND)
}

pub fn davenport(argv: Vec<String>, g: &Globals, factors: &str) -> Result<Report, UsageError> {
    let group: AbelianGroup = factors.parse()?;
    let witness = longest_zero_sum_free(&group, group_bound(g))?;
    let d = witness.len() as u64 + 1;
    let rendered: Vec<String> = witness.iter().map(|e| group.render_element(e)).collect();
    let mut r = Report::new(argv, json!({ "group": group.to_string(), "factors": group.factors() }));
    r.line(format!("D({group}) = {d}"));
    r.line(format!("longest zero-sum free sequence: [{}]", rendered.join(", ")));
    r.line(format!("1 + sum(d_i - 1) = {} <= D <= |G| = {}", davenport_lower_bound(&group), group.order()));
    r.results = json!({
        "davenport": d,
        "lower_bound": davenport_lower_bound(&group),
        "order": group.order(),
        "zero_sum_free_witness": rendered,
    });
    Ok(r)
}

pub fn zerosum(argv: Vec<String>, factors: &str, seq: &str) -> Result<Report, UsageError> {
    let group: AbelianGroup = factors.parse()?;
    let sequence = group.parse_sequence(seq)?;
    let found = zero_sum_subsequence(&group, &sequence);
    let mut r = Report::new(argv, json!({ "group": group.to_string(), "sequence": seq }));
    match &found {
        Some(pos) => {
            let terms: Vec<String> = pos.iter().map(|&i| group.render_element(&sequence[i])).collect();
            r.line(format!("zero-sum subsequence at positions {}: {}", join(pos), terms.join(" + ")));
        }
        None => {
            r.line("the sequence is zero-sum free");
            r.negative();
        }
    }
    r.results = json!({ "positions": found, "zero_sum_free": found.is_none() });
    Ok(r)
}

pub fn bound(argv: Vec<String>, n: u64, factors: &str) -> Result<Report, UsageError> {
    let group: AbelianGroup = factors.parse()?;
    let b = rank_bound(n, &group)?;
    let mut r = Report::new(argv, json!({ "n": n, "group": group.to_string() }));
    r.line(format!("rank bound n * D(G) = {n} * D({group}) = {b}"));
    r.line("assumes the setting of a two-dimensional normal domain with finite class-group cokernel G; not checked");
    r.results = json!({ "bound": b });
    Ok(r)
}

/// Default location of the shipped golden corpus.
pub fn default_corpus() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))
}
