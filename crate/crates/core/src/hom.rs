//! Homomorphisms between cokernel modules by linear algebra over `k` at
//! precision, endomorphism algebras, and indecomposability.
//!
//! A map `Coker(phi1) -> Coker(phi2)` is a matrix `H` with
//! `H * phi1 = phi2 * W` for some `W`, taken modulo `phi2 * Z`. Everything
//! is computed over `R_N = R / m^N`, i.e. for the truncated modules
//! `M_N = M / m^N M`. Over a complete local ring a nontrivial idempotent of
//! `End(M)` survives in `End(M_N)`, so "`M_N` indecomposable" certifies
//! "`M` indecomposable"; the converse direction is only heuristic, which is
//! why callers compare two precisions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{self, Echelon, Row, TaggedEchelon};
use crate::module::ModulePresentation;
use crate::ring::{Ring, RingElem};

pub type Matrix = Vec<Vec<RingElem>>;

/// `k`-linear coordinates on `rows x cols` matrices over `R_N`.
#[derive(Clone, Debug)]
pub struct MatrixSpace {
    ring: Ring,
    pub rows: usize,
    pub cols: usize,
}

impl MatrixSpace {
    pub fn new(ring: &Ring, rows: usize, cols: usize) -> Self {
        MatrixSpace {
            ring: ring.clone(),
            rows,
            cols,
        }
    }

    pub fn width(&self) -> usize {
        self.rows * self.cols * self.ring.dim()
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        (i * self.cols + j) * self.ring.dim()
    }

    pub fn vector(&self, m: &[Vec<RingElem>]) -> Row {
        let mut out = Row::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let off = self.offset(i, j);
                out.extend(m[i][j].coords().into_iter().map(|(c, v)| (off + c, v)));
            }
        }
        out
    }

    pub fn matrix(&self, v: &[(usize, Scalar)]) -> Matrix {
        let d = self.ring.dim();
        let mut entries: Vec<Vec<Row>> = vec![vec![Row::new(); self.cols]; self.rows];
        for (c, s) in v {
            let cell = c / d;
            entries[cell / self.cols][cell % self.cols].push((c % d, s.clone()));
        }
        entries
            .iter()
            .map(|r| r.iter().map(|e| RingElem::from_coords(&self.ring, e)).collect())
            .collect()
    }

    /// Coordinates of the matrix that is zero except for column `col`,
    /// which holds `mu * column`.
    fn column_vector(&self, col: usize, column: &[RingElem], mu: usize) -> Row {
        let m = &self.ring.standard_monomials()[mu];
        let mut out = Row::new();
        for (i, e) in column.iter().enumerate() {
            let off = self.offset(i, col);
            out.extend(e.mul_monomial(m).coords().into_iter().map(|(c, v)| (off + c, v)));
        }
        out.sort_by_key(|(c, _)| *c);
        out
    }

    /// Coordinates of the matrix that is zero except for row `row`,
    /// which holds `mu * line`.
    fn row_vector(&self, row: usize, line: &[RingElem], mu: usize) -> Row {
        let m = &self.ring.standard_monomials()[mu];
        let mut out = Row::new();
        for (j, e) in line.iter().enumerate() {
            let off = self.offset(row, j);
            out.extend(e.mul_monomial(m).coords().into_iter().map(|(c, v)| (off + c, v)));
        }
        out
    }

    /// Spanning vectors of `{ a * X }` for `X` ranging over all
    /// `a.cols x self.cols` matrices over `R_N`.
    pub fn left_multiples(&self, a: &[Vec<RingElem>], a_cols: usize) -> Vec<Row> {
        let mut out = Vec::new();
        for k in 0..a_cols {
            let column: Vec<RingElem> = a.iter().map(|r| r[k].clone()).collect();
            for col in 0..self.cols {
                for mu in 0..self.ring.dim() {
                    out.push(self.column_vector(col, &column, mu));
                }
            }
        }
        out
    }
}

pub fn mat_mul(a: &[Vec<RingElem>], b: &[Vec<RingElem>], ring: &Ring) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = RingElem::zero(ring);
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(&row[k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn identity(ring: &Ring, n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { RingElem::one(ring) } else { RingElem::zero(ring) })
                .collect()
        })
        .collect()
}

/// The pieces of a Hom computation, in coordinates of `rows2 x rows1`
/// matrices.
struct HomSpaces {
    space: MatrixSpace,
    /// All `H` with `H * phi1` in the image of `phi2`.
    lifts: Vec<Row>,
    /// `phi2 * Z`, the maps that are zero on the cokernels.
    trivial: Echelon,
}

fn hom_spaces(m1: &ModulePresentation, m2: &ModulePresentation) -> Result<HomSpaces> {
    if !m1.ring().same_as(m2.ring()) {
        return Err(Error::PresentationMismatch);
    }
    let ring = m1.ring();
    let (r1, c1, r2, c2) = (m1.rows(), m1.cols(), m2.rows(), m2.cols());
    let space = MatrixSpace::new(ring, r2, r1);
    let target = MatrixSpace::new(ring, r2, c1);

    let mut image = Echelon::new(target.width());
    for v in target.left_multiples(m2.matrix(), c2) {
        image.insert(v);
    }
    // H = mu * E_ij contributes mu * (row j of phi1) in row i of H * phi1
    let mut residues = Vec::with_capacity(space.width());
    for i in 0..r2 {
        for j in 0..r1 {
            for mu in 0..ring.dim() {
                let v = target.row_vector(i, m1.matrix()[j].as_slice(), mu);
                residues.push(image.reduce(&v));
            }
        }
    }
    let lifts = linalg::kernel(ring.field(), target.width(), &residues);

    let mut trivial = Echelon::new(space.width());
    for v in space.left_multiples(m2.matrix(), c2) {
        trivial.insert(v);
    }
    Ok(HomSpaces {
        space,
        lifts,
        trivial,
    })
}

/// A `k`-basis of `Hom(M1_N, M2_N)` as `rows2 x rows1` matrices.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub precision: u32,
    pub matrices: Vec<Matrix>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.matrices.len()
    }
}

fn complement(base: &Echelon, vectors: &[Row]) -> Vec<Row> {
    let mut acc = base.clone();
    vectors
        .iter()
        .filter(|v| acc.insert((*v).clone()))
        .cloned()
        .collect()
}

pub fn hom_basis(m1: &ModulePresentation, m2: &ModulePresentation) -> Result<HomBasis> {
    let hs = hom_spaces(m1, m2)?;
    let reps = complement(&hs.trivial, &hs.lifts);
    Ok(HomBasis {
        precision: m1.ring().precision(),
        matrices: reps.iter().map(|v| hs.space.matrix(v)).collect(),
    })
}

/// Hom dimensions at the module's precision and at `precision + extra`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomStability {
    pub precision: u32,
    pub dim: usize,
    pub check_precision: u32,
    pub check_dim: usize,
}

impl HomStability {
    pub fn stable(&self) -> bool {
        self.dim == self.check_dim
    }
}

pub fn hom_stability(m1: &ModulePresentation, m2: &ModulePresentation, extra: u32) -> Result<HomStability> {
    let n = m1.ring().precision();
    let d = hom_basis(m1, m2)?.dim();
    let hi = n + extra;
    let d2 = hom_basis(&m1.at_precision(hi)?, &m2.at_precision(hi)?)?.dim();
    Ok(HomStability {
        precision: n,
        dim: d,
        check_precision: hi,
        check_dim: d2,
    })
}

/// Whether `h` induces a map `Coker(phi1) -> Coker(phi2)`.
pub fn is_homomorphism(h: &[Vec<RingElem>], m1: &ModulePresentation, m2: &ModulePresentation) -> Result<bool> {
    let ring = m1.ring();
    let prod = mat_mul(h, m1.matrix(), ring);
    let target = MatrixSpace::new(ring, m2.rows(), m1.cols());
    let mut image = Echelon::new(target.width());
    for v in target.left_multiples(m2.matrix(), m2.cols()) {
        image.insert(v);
    }
    Ok(image.contains(&target.vector(&prod)))
}

/// Whether the map induced by `h` is onto `Coker(phi2)`: the columns of `h`
/// and `phi2` generate `R^rows2` (checked modulo `m`, by Nakayama).
pub fn is_surjective(h: &[Vec<RingElem>], m2: &ModulePresentation) -> bool {
    let cols = h.first().map_or(0, Vec::len);
    let mut rows = Vec::new();
    for j in 0..cols {
        rows.push(constant_column(h.iter().map(|r| &r[j])));
    }
    for j in 0..m2.cols() {
        rows.push(constant_column(m2.matrix().iter().map(|r| &r[j])));
    }
    linalg::rank(m2.rows(), rows) == m2.rows()
}

fn constant_column<'a>(col: impl Iterator<Item = &'a RingElem>) -> Row {
    col.enumerate()
        .filter_map(|(i, e)| {
            let c = e.poly().constant_term();
            (!c.is_zero()).then_some((i, c))
        })
        .collect()
}

/// `End(M_N)` together with its semisimple quotient.
///
/// Since `m End` is a nilpotent two-sided ideal, the radical is computed on
/// the small algebra `End / m End` with the trace form, which in
/// characteristic zero has exactly the radical as its kernel.
#[derive(Clone, Debug, Serialize)]
pub struct EndAlgebra {
    pub precision: u32,
    /// `dim_k End(M_N)`.
    pub dimension: usize,
    /// `dim_k End(M_N) / m End(M_N)`.
    pub residue_dimension: usize,
    pub radical_dimension: usize,
    pub semisimple_dimension: usize,
    #[serde(skip)]
    pub basis: Vec<Matrix>,
}

impl EndAlgebra {
    pub fn is_local(&self) -> bool {
        self.semisimple_dimension == 1
    }
}

pub fn end_algebra(m: &ModulePresentation) -> Result<EndAlgebra> {
    let ring = m.ring();
    let field = ring.field();
    if field.is_finite() {
        return Err(Error::CharacteristicUnsupported(format!("GF({})", field.characteristic())));
    }
    let n = m.rows();
    if n == 0 {
        return Err(Error::BadParameter("the zero module has no local endomorphism ring".into()));
    }
    let hs = hom_spaces(m, m)?;
    let space = &hs.space;
    let reps = complement(&hs.trivial, &hs.lifts);
    let basis: Vec<Matrix> = reps.iter().map(|v| space.matrix(v)).collect();

    // m End + phi Z
    let mut small = hs.trivial.clone();
    for h in &basis {
        for x in RingElem::vars(ring) {
            let xh: Matrix = h.iter().map(|r| r.iter().map(|e| &x * e).collect()).collect();
            small.insert(space.vector(&xh));
        }
    }
    let residue_reps: Vec<Row> = complement(&small, &reps);
    let d = residue_reps.len();
    let residue: Vec<Matrix> = residue_reps.iter().map(|v| space.matrix(v)).collect();
    let mut coords = TaggedEchelon::new(field, space.width(), d);
    for v in &residue_reps {
        let dep = coords.push(small.reduce(v));
        debug_assert!(dep.is_none());
    }

    // structure constants c[a][b] = coordinates of e_a e_b
    let mut structure: Vec<Vec<Vec<Scalar>>> = vec![vec![vec![field.zero(); d]; d]; d];
    for a in 0..d {
        for b in 0..d {
            let p = mat_mul(&residue[a], &residue[b], ring);
            let r = small.reduce(&space.vector(&p));
            let sol = coords
                .solve(&r)
                .ok_or_else(|| Error::CheckFailed("End is not closed under composition".into()))?;
            for (c, v) in sol {
                structure[a][b][c] = v;
            }
        }
    }
    // tr(L_c) = sum_b coefficient of e_b in e_c e_b
    let traces: Vec<Scalar> = (0..d)
        .map(|c| (0..d).fold(field.zero(), |acc, b| &acc + &structure[c][b][b]))
        .collect();
    let form: Vec<Vec<Scalar>> = (0..d)
        .map(|a| {
            (0..d)
                .map(|b| (0..d).fold(field.zero(), |acc, c| &acc + &(&structure[a][b][c] * &traces[c])))
                .collect()
        })
        .collect();
    let semisimple = linalg::dense_rank(&form);
    Ok(EndAlgebra {
        precision: ring.precision(),
        dimension: basis.len(),
        residue_dimension: d,
        radical_dimension: basis.len() - semisimple,
        semisimple_dimension: semisimple,
        basis,
    })
}

/// True iff `End(M_N)` modulo its radical is one-dimensional.
pub fn is_indecomposable(m: &ModulePresentation) -> Result<bool> {
    Ok(end_algebra(m)?.is_local())
}

/// Solves `target = sum_j gens_j * X_j` in coordinates of `space`, where
/// each generator is given by its spanning vectors. Returns the
/// coefficients over the concatenated spanning vectors.
pub fn solve_in_span(space: &MatrixSpace, spanning: &[Row], target: &[Vec<RingElem>], field: Field) -> Option<Vec<(usize, Scalar)>> {
    let mut te = TaggedEchelon::new(field, space.width(), spanning.len());
    for v in spanning {
        te.push(v.clone());
    }
    te.solve(&space.vector(target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{catalog_t, parse_module_spec, t_ring};

    #[test]
    fn endomorphisms_of_free_rank_one() {
        let t = t_ring(Field::Rationals, 8).unwrap();
        let f = ModulePresentation::free(&t, 1);
        let h = hom_basis(&f, &f).unwrap();
        assert_eq!(h.dim(), t.dim());
        assert!(is_indecomposable(&f).unwrap());
    }

    #[test]
    fn hom_into_zero_is_empty() {
        let t = t_ring(Field::Rationals, 8).unwrap();
        let m = catalog_t(&t, "alpha", 1).unwrap();
        let z = ModulePresentation::zero(&t);
        assert_eq!(hom_basis(&m, &z).unwrap().dim(), 0);
    }

    #[test]
    fn hom_dimension_stable_for_x_to_ysq() {
        let t = t_ring(Field::Rationals, 12).unwrap();
        let a = catalog_t(&t, "x", 1).unwrap();
        let b = catalog_t(&t, "ysq", 1).unwrap();
        let s = hom_stability(&a, &b, 4).unwrap();
        assert!(s.stable(), "{s:?}");
    }

    #[test]
    fn identity_is_an_endomorphism() {
        let t = t_ring(Field::Rationals, 10).unwrap();
        let m = catalog_t(&t, "gamma", 2).unwrap();
        assert!(is_homomorphism(&identity(&t, 2), &m, &m).unwrap());
        let e = end_algebra(&m).unwrap();
        assert!(e.semisimple_dimension >= 1);
    }

    #[test]
    fn catalog_entries_are_indecomposable() {
        let t = t_ring(Field::Rationals, 12).unwrap();
        for label in ["x", "y", "alpha", "delta"] {
            let m = catalog_t(&t, label, 2).unwrap();
            assert!(is_indecomposable(&m).unwrap(), "{label}");
        }
    }

    #[test]
    fn direct_sums_decompose() {
        let t = t_ring(Field::Rationals, 12).unwrap();
        let m = parse_module_spec(&t, "x+ysq").unwrap();
        assert!(!is_indecomposable(&m).unwrap());
        let m = parse_module_spec(&t, "alpha:1+alpha:1").unwrap();
        assert_eq!(end_algebra(&m).unwrap().semisimple_dimension, 4);
    }

    #[test]
    fn prime_field_radical_is_refused() {
        let t = t_ring(Field::prime(5).unwrap(), 8).unwrap();
        let m = catalog_t(&t, "x", 1).unwrap();
        assert!(matches!(is_indecomposable(&m), Err(Error::CharacteristicUnsupported(_))));
    }

    #[test]
    fn x_maps_v_onto_u() {
        let t = t_ring(Field::Rationals, 12).unwrap();
        let v = catalog_t(&t, "xy", 1).unwrap();
        let u = catalog_t(&t, "y", 1).unwrap();
        let h = identity(&t, 1);
        assert!(is_homomorphism(&h, &v, &u).unwrap());
        assert!(is_surjective(&h, &u));
        let not_onto = vec![vec![RingElem::var(&t, 0)]];
        assert!(!is_surjective(&not_onto, &u));
    }
}
