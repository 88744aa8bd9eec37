//! Exact sparse row reduction over the coefficient field.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// A sparse vector: column index to nonzero scalar.
pub type SparseRow = BTreeMap<usize, Scalar>;

/// Incrementally maintained row-echelon basis of a subspace.
///
/// Pivot rows are normalized to leading coefficient one and keyed by their
/// leading column.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the basis until it vanishes or its leading column is free.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        loop {
            let Some((&lead, c)) = row.iter().next() else {
                return row;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                return row;
            };
            let c = c.clone();
            axpy(&mut row, &-&c, pivot);
        }
    }

    /// Adds `row` to the basis; returns whether it was independent.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(row);
        let Some((&lead, c)) = row.iter().next() else {
            return false;
        };
        let inv = c.inv().expect("nonzero leading coefficient");
        let row = row.into_iter().map(|(j, v)| (j, &v * &inv)).collect();
        self.pivots.insert(lead, row);
        true
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

/// `row += a * other`, dropping cancelled entries.
fn axpy(row: &mut SparseRow, a: &Scalar, other: &SparseRow) {
    for (j, v) in other {
        let delta = a * v;
        match row.get_mut(j) {
            Some(old) => {
                let s = &*old + &delta;
                if s.is_zero() {
                    row.remove(j);
                } else {
                    *old = s;
                }
            }
            None => {
                if !delta.is_zero() {
                    row.insert(*j, delta);
                }
            }
        }
    }
}

/// Rank of a list of sparse rows.
pub fn rank<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Rank of a dense matrix.
pub fn rank_dense(rows: &[Vec<Scalar>]) -> usize {
    rank(rows.iter().map(|r| {
        r.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn dense(f: Field, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        let q = Field::Rationals;
        assert_eq!(rank_dense(&dense(q, &[&[0, 1], &[1, 0]])), 2);
        assert_eq!(rank_dense(&dense(q, &[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_dense(&dense(q, &[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank_dense(&dense(q, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let rows: &[&[i64]] = &[&[1, 1], &[1, -1]];
        assert_eq!(rank_dense(&dense(Field::Rationals, rows)), 2);
        assert_eq!(rank_dense(&dense(Field::Prime(2), rows)), 1);
    }

    #[test]
    fn membership_in_span() {
        let q = Field::Rationals;
        let mut e = Echelon::new();
        let r = |v: &[i64]| -> SparseRow {
            v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(j, &x)| (j, q.from_i64(x))).collect()
        };
        assert!(e.insert(r(&[1, 1, 0])));
        assert!(e.insert(r(&[0, 1, 1])));
        assert!(!e.insert(r(&[1, 2, 1])));
        assert!(e.contains(r(&[1, 0, -1])));
        assert!(!e.contains(r(&[0, 0, 1])));
    }
}
