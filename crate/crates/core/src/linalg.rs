//! Exact row reduction over Q with sparse rows.
//!
//! Rows are sorted `(column, coefficient)` vectors. The echelon structure
//! keeps one pivot row per column, normalized to a leading 1, which makes
//! rank, kernel-dimension and membership queries cheap.

use crate::scalar::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;

pub type SparseRow = Vec<(usize, Rational)>;

pub fn row_from_map(map: BTreeMap<usize, Rational>) -> SparseRow {
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `a - c * b` for sorted sparse rows.
fn row_axpy(a: &SparseRow, c: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let pick_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let pick_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if pick_a {
            out.push(a[i].clone());
            i += 1;
        } else if pick_b {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Default)]
pub struct Echelon {
    /// pivot column -> normalized row (leading coefficient 1)
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current pivots; the residual starts at a
    /// column without a pivot (or is empty).
    pub fn residual(&self, mut row: SparseRow) -> SparseRow {
        loop {
            let lead = match row.first() {
                None => return row,
                Some((col, _)) => *col,
            };
            match self.rows.get(&lead) {
                None => return row,
                Some(pivot) => {
                    let c = row[0].1.clone();
                    row = row_axpy(&row, &c, pivot);
                }
            }
        }
    }

    /// Inserts a row; returns true when it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let red = self.residual(row);
        match red.first() {
            None => false,
            Some((col, lead)) => {
                let col = *col;
                let inv = lead.clone();
                let norm: SparseRow =
                    red.iter().map(|(j, c)| (*j, c / &inv)).collect();
                self.rows.insert(col, norm);
                true
            }
        }
    }

    /// True when `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.residual(row).is_empty()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }
}

/// Rank of a list of rows.
pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(j, c)| (j, rat(c))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut ech = Echelon::new();
        assert!(ech.insert(row(&[(0, 1), (1, 2)])));
        assert!(ech.insert(row(&[(1, 1), (2, 1)])));
        assert!(!ech.insert(row(&[(0, 1), (1, 1), (2, -1)])));
        assert_eq!(ech.rank(), 2);
        assert!(ech.contains(row(&[(0, 2), (1, 3), (2, -1)])));
        assert!(!ech.contains(row(&[(2, 1), (3, 1)])));
    }

    #[test]
    fn zero_rows_do_nothing() {
        let mut ech = Echelon::new();
        assert!(!ech.insert(Vec::new()));
        assert_eq!(ech.rank(), 0);
    }
}
