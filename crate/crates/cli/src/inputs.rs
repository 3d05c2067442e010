//! Parsing of rings, modules and matrices given on the command line.

use cm_type_lab::module::{parse_module_spec, t_ring, ModulePresentation};
use cm_type_lab::{parse_polynomial, parse_ring, Field, Polynomial, Ring};

use crate::report::UsageError;

/// Shorthand rings accepted wherever a ring is expected.
const SHORTHANDS: [(&str, &str); 2] = [("T", "[[x,y]]/(x*y^2)"), ("E", "[[x,y,z]]/(x*y, y*z, z^2)")];

pub fn parse_field(text: &str) -> Result<Field, UsageError> {
    let t = text.trim();
    if t == "QQ" {
        return Ok(Field::Rationals);
    }
    let p = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| UsageError(format!("unknown field `{t}`; expected QQ or GF(p)")))?;
    let p: u64 = p.parse().map_err(|_| UsageError(format!("bad modulus in `{t}`")))?;
    Ok(Field::prime(p)?)
}

/// Parses a ring: `T`, `E`, a full presentation such as `QQ[[x,y]]/(y^2)`,
/// or a presentation without a field prefix, which takes `field`.
pub fn ring(text: &str, field: Field, precision: u32) -> Result<Ring, UsageError> {
    let text = text.trim();
    if text == "T" {
        return Ok(t_ring(field, precision)?);
    }
    let body = SHORTHANDS
        .iter()
        .find(|(name, _)| *name == text)
        .map(|(_, body)| body.to_string())
        .unwrap_or_else(|| text.to_string());
    let full = if body.starts_with("[[") { format!("{field}{body}") } else { body };
    Ok(parse_ring(&full, precision)?)
}

/// Splits `a, b; c, d` into rows of entries, ignoring separators nested in
/// parentheses.
pub fn split_matrix(text: &str) -> Vec<Vec<String>> {
    split_top(text, ';')
        .into_iter()
        .map(|row| split_top(&row, ',').into_iter().map(|e| e.trim().to_string()).collect())
        .collect()
}

fn split_top(text: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out
}

/// A module: over `T` a catalog description such as `gamma:2+x` is tried
/// first; otherwise the text is a presentation matrix `a, b; c, d`.
pub fn module(ring: &Ring, is_t: bool, text: &str) -> Result<ModulePresentation, UsageError> {
    if is_t {
        if let Ok(m) = parse_module_spec(ring, text) {
            return Ok(m);
        }
    }
    let rows = split_matrix(text);
    let entries: Vec<Vec<&str>> = rows.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
    ModulePresentation::parse(ring, &entries)
        .map_err(|e| UsageError(format!("cannot read module `{text}`: {e}")))
}

/// A matrix of polynomials over the given variable names.
pub fn poly_matrix(text: &str, field: Field, names: &[String]) -> Result<Vec<Vec<Polynomial>>, UsageError> {
    split_matrix(text)
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| parse_polynomial(e, field, names).map_err(UsageError::from))
                .collect()
        })
        .collect()
}
