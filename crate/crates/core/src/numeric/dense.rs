//! Small dense exact solves.

use super::BigRat;
use crate::error::{Error, Result};

/// Solves `A x = b` for the unique `x`, where `A` is `m × n` with `m ≥ n`.
///
/// Fails with [`Error::Singular`] when the columns of `A` are dependent or the
/// system is inconsistent.
pub fn solve_unique(a: &[Vec<BigRat>], b: &[BigRat]) -> Result<Vec<BigRat>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if b.len() != m {
        return Err(Error::Precondition(format!(
            "right-hand side has {} entries, matrix has {m} rows",
            b.len()
        )));
    }
    // augmented matrix
    let mut rows: Vec<Vec<BigRat>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..n {
        let Some(p) = (pivot_row..m).find(|&r| !rows[r][col].is_zero()) else {
            return Err(Error::Singular(format!("column {col} has no pivot")));
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip()?;
        for v in rows[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..m {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &rows[pivot_row][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[n..].iter().any(|r| !r[n].is_zero()) {
        return Err(Error::Singular("inconsistent system".into()));
    }
    Ok(rows[..n].iter().map(|r| r[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigRat> {
        xs.iter().map(|&x| BigRat::from_int(x)).collect()
    }

    #[test]
    fn solves_square_system() {
        let a = vec![v(&[2, 1]), v(&[1, 3])];
        let x = solve_unique(&a, &v(&[3, 5])).unwrap();
        assert_eq!(x, vec![BigRat::ratio(4, 5).unwrap(), BigRat::ratio(7, 5).unwrap()]);
    }

    #[test]
    fn overdetermined_consistent_and_not() {
        let a = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        assert_eq!(solve_unique(&a, &v(&[1, 2, 3])).unwrap(), v(&[1, 2]));
        assert!(matches!(solve_unique(&a, &v(&[1, 2, 4])), Err(Error::Singular(_))));
    }

    #[test]
    fn singular_columns() {
        let a = vec![v(&[1, 2]), v(&[2, 4])];
        assert!(matches!(solve_unique(&a, &v(&[1, 2])), Err(Error::Singular(_))));
    }
}
