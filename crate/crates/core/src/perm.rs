//! Permutations of `0..n` with signs.

use itertools::Itertools;

/// Sign of a permutation given in one-line notation: `1` or `-1`.
pub fn sign(perm: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn all(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_and_counts() {
        let ps = all(3);
        assert_eq!(ps.len(), 6);
        assert_eq!(ps[0], vec![0, 1, 2]);
        let total: i64 = ps.iter().map(|p| sign(p)).sum();
        assert_eq!(total, 0);
        assert_eq!(sign(&[1, 0, 2]), -1);
        assert_eq!(sign(&[1, 2, 0]), 1);
        assert_eq!(all(0), vec![Vec::<usize>::new()]);
        assert_eq!(factorial(7), 5040);
    }
}
