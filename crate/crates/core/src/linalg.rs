//! Sparse exact linear algebra: incremental row echelon forms, kernels and
//! linear solves over a [`Field`].
//!
//! A row is a list of `(column, value)` pairs with strictly increasing
//! columns and no zero values. The pivot of a stored row is its first entry.

use std::collections::BTreeMap;

use crate::field::{Field, Scalar};

pub type Row = Vec<(usize, Scalar)>;

/// Incrementally built echelon basis of a subspace of `F^ncols`.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, Row>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Row> {
        self.pivots.values()
    }

    /// Unique remainder of `row` modulo the stored subspace: no entry of the
    /// result sits in a pivot column.
    pub fn reduce(&self, row: &[(usize, Scalar)]) -> Row {
        let mut acc: BTreeMap<usize, Scalar> = row.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((col, c)) = acc.pop_first() {
            if c.is_zero() {
                continue;
            }
            match self.pivots.get(&col) {
                Some(prow) => {
                    for (j, v) in &prow[1..] {
                        let delta = &c * v;
                        match acc.get_mut(j) {
                            Some(e) => *e = &*e - &delta,
                            None => {
                                acc.insert(*j, -delta);
                            }
                        }
                    }
                }
                None => out.push((col, c)),
            }
        }
        out
    }

    /// Adds `row` to the spanning set; returns true if it enlarged the span.
    pub fn insert(&mut self, row: Row) -> bool {
        let r = self.reduce(&row);
        self.insert_reduced(r)
    }

    fn insert_reduced(&mut self, r: Row) -> bool {
        let Some((col, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let normalized: Row = r.into_iter().map(|(j, v)| (j, &v * &inv)).collect();
        self.pivots.insert(col, normalized);
        true
    }

    pub fn contains(&self, row: &[(usize, Scalar)]) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Tracks how each stored row was formed from numbered input vectors, which
/// yields kernels and particular solutions.
///
/// Input vector `j` is stored as `row ++ [tag_j]` with the tag living in a
/// column `>= width`; since tags sort after all real columns, a vector whose
/// real part reduces to zero exposes a linear dependency in its tag part.
#[derive(Clone, Debug)]
pub struct TaggedEchelon {
    width: usize,
    ech: Echelon,
    inputs: usize,
    field: Field,
}

impl TaggedEchelon {
    pub fn new(field: Field, width: usize, max_inputs: usize) -> Self {
        TaggedEchelon {
            width,
            ech: Echelon::new(width + max_inputs),
            inputs: 0,
            field,
        }
    }

    pub fn rank(&self) -> usize {
        self.ech.rows().filter(|r| r[0].0 < self.width).count()
    }

    /// Adds input vector number `self.inputs`. Returns the dependency
    /// (coefficients over input indices, summing to zero) if the vector was
    /// already in the span.
    pub fn push(&mut self, mut row: Row) -> Option<Vec<(usize, Scalar)>> {
        let tag = self.width + self.inputs;
        self.inputs += 1;
        row.push((tag, self.field.one()));
        let r = self.ech.reduce(&row);
        if r.first().is_some_and(|(c, _)| *c >= self.width) {
            let dep = r.iter().map(|(c, v)| (c - self.width, v.clone())).collect();
            // keep the dependency row out of the basis
            Some(dep)
        } else {
            self.ech.insert_reduced(r);
            None
        }
    }

    /// Coefficients `u` with `sum u_j * input_j = target`, if solvable.
    pub fn solve(&self, target: &[(usize, Scalar)]) -> Option<Vec<(usize, Scalar)>> {
        let r = self.ech.reduce(target);
        if r.first().is_some_and(|(c, _)| *c < self.width) {
            return None;
        }
        Some(r.into_iter().map(|(c, v)| (c - self.width, -v)).collect())
    }
}

/// Basis of `{u : sum_j u_j * columns[j] = 0}` where `columns[j]` is the
/// image of the j-th unknown.
pub fn kernel(field: Field, width: usize, columns: &[Row]) -> Vec<Row> {
    let mut te = TaggedEchelon::new(field, width, columns.len());
    columns
        .iter()
        .filter_map(|c| te.push(c.clone()))
        .collect()
}

/// Rank of the span of the given rows.
pub fn rank(width: usize, rows: impl IntoIterator<Item = Row>) -> usize {
    let mut e = Echelon::new(width);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Rank of a small dense matrix.
pub fn dense_rank(m: &[Vec<Scalar>]) -> usize {
    let width = m.first().map(|r| r.len()).unwrap_or(0);
    rank(width, m.iter().map(|r| row_from_dense(r)))
}

pub fn row_from_dense(v: &[Scalar]) -> Row {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j, x.clone()))
        .collect()
}

/// Adds `c * src` into `dst` (both sparse, sorted).
pub fn axpy(dst: &Row, c: &Scalar, src: &Row) -> Row {
    let mut acc: BTreeMap<usize, Scalar> = dst.iter().cloned().collect();
    for (j, v) in src {
        let d = c * v;
        match acc.get_mut(j) {
            Some(e) => *e = &*e + &d,
            None => {
                acc.insert(*j, d);
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rationals.from_i64(v)
    }

    #[test]
    fn kernel_of_small_matrix() {
        // columns: (1,2), (2,4), (0,1)
        let cols = vec![
            vec![(0, q(1)), (1, q(2))],
            vec![(0, q(2)), (1, q(4))],
            vec![(1, q(1))],
        ];
        let k = kernel(Field::Rationals, 2, &cols);
        assert_eq!(k.len(), 1);
        // 2*c0 - c1 = 0 up to scale
        let v: BTreeMap<usize, Scalar> = k[0].iter().cloned().collect();
        assert_eq!(&v[&0] * &q(-1), &v[&1] * &q(2));
    }

    #[test]
    fn solve_particular() {
        let mut te = TaggedEchelon::new(Field::Rationals, 2, 2);
        te.push(vec![(0, q(1)), (1, q(1))]);
        te.push(vec![(1, q(1))]);
        let u = te.solve(&[(0, q(3)), (1, q(5))]).unwrap();
        let m: BTreeMap<usize, Scalar> = u.into_iter().collect();
        assert_eq!(m[&0], q(3));
        assert_eq!(m[&1], q(2));
        assert!(te.solve(&[(0, q(1))]).is_some());
        let mut te2 = TaggedEchelon::new(Field::Rationals, 2, 1);
        te2.push(vec![(0, q(1))]);
        assert!(te2.solve(&[(1, q(1))]).is_none());
    }
}
