//! Exact sparse matrices over Q and their rank.

use std::collections::BTreeMap;

use super::BigRat;

/// A sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow = Vec<(usize, BigRat)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    n_rows: usize,
    n_cols: usize,
    entries: BTreeMap<(usize, usize), BigRat>,
}

impl SparseMat {
    pub fn new(n_rows: usize, n_cols: usize) -> Self {
        SparseMat {
            n_rows,
            n_cols,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a matrix from sparse rows. Zero values are dropped.
    ///
    /// Panics if a column index is out of range.
    pub fn from_rows(n_cols: usize, rows: Vec<SparseRow>) -> Self {
        let mut m = SparseMat::new(rows.len(), n_cols);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, v) in row {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn from_dense(rows: &[Vec<BigRat>]) -> Self {
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMat::new(rows.len(), n_cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n_cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigRat) {
        assert!(
            row < self.n_rows && col < self.n_cols,
            "entry ({row}, {col}) outside {}x{}",
            self.n_rows,
            self.n_cols
        );
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> BigRat {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(BigRat::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigRat)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn rows(&self) -> Vec<SparseRow> {
        let mut rows = vec![Vec::new(); self.n_rows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v.clone()));
        }
        rows
    }

    pub fn row(&self, r: usize) -> SparseRow {
        self.entries
            .range((r, 0)..(r + 1, 0))
            .map(|(&(_, c), v)| (c, v.clone()))
            .collect()
    }

    pub fn transpose(&self) -> SparseMat {
        SparseMat {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    /// Exact rank over Q.
    pub fn rank(&self) -> usize {
        let mut echelon = Echelon::default();
        for row in self.rows() {
            echelon.insert(row);
        }
        echelon.rank()
    }
}

/// Incremental row-echelon form. Rows are reduced against existing pivots in
/// order of their leading column; a row that survives becomes a new pivot
/// normalised to leading coefficient 1.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` and keeps it if independent. Returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = row;
        loop {
            let Some((lead, lead_val)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(pivot) => row = axpy(&row, &lead_val, pivot),
                None => {
                    let inv = lead_val.recip().expect("stored entries are nonzero");
                    let normalized = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
                    self.pivots.insert(lead, normalized);
                    return true;
                }
            }
        }
    }
}

/// `row - factor * pivot`, merged by column, zeros dropped.
fn axpy(row: &[(usize, BigRat)], factor: &BigRat, pivot: &[(usize, BigRat)]) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(factor * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(factor * &pivot[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> SparseMat {
        let rows: Vec<Vec<BigRat>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRat::from_int(x)).collect())
            .collect();
        SparseMat::from_dense(&rows)
    }

    #[test]
    fn small_ranks() {
        assert_eq!(SparseMat::new(0, 0).rank(), 0);
        assert_eq!(dense(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(dense(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(dense(&[&[0, 0, 0], &[0, 0, 0]]).rank(), 0);
        assert_eq!(dense(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).rank(), 2);
    }

    #[test]
    fn zero_entries_are_not_stored() {
        let mut m = SparseMat::new(2, 2);
        m.set(0, 0, BigRat::from_int(3));
        m.set(0, 0, BigRat::zero());
        assert_eq!(m.nnz(), 0);
        assert_eq!(m.get(0, 0), BigRat::zero());
    }

    #[test]
    #[should_panic]
    fn out_of_bounds_panics() {
        SparseMat::new(1, 1).set(1, 0, BigRat::one());
    }

    #[test]
    fn transpose_roundtrip() {
        let m = dense(&[&[1, 0, 2], &[0, 3, 0]]);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().get(2, 0), BigRat::from_int(2));
    }
}
