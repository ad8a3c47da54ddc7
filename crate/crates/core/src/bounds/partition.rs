//! Integer partitions, hook-length degrees and the functional Φ.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::BigRat;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

impl Partition {
    /// Parts must be positive and weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Precondition("a partition needs at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Precondition("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!("parts {parts:?} are not weakly decreasing")));
        }
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Length of column `j` (0-based) of the Young diagram.
    fn column_len(&self, j: usize) -> usize {
        self.parts.iter().take_while(|&&p| p > j).count()
    }

    /// `n!` over the product of hook lengths.
    pub fn hook_degree(&self) -> BigUint {
        let mut hooks = BigUint::one();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let hook = (row - j - 1) + (self.column_len(j) - i - 1) + 1;
                hooks *= hook;
            }
        }
        factorial(self.n) / hooks
    }

    /// `∏ μ_i^{μ_i}`.
    pub fn self_power_product(&self) -> BigUint {
        self.parts
            .iter()
            .map(|&p| BigUint::from(p).pow(p as u32))
            .product()
    }

    /// `Φ(μ)^n = ∏ (n/μ_i)^{μ_i}`, exactly.
    pub fn phi_pow_n(&self) -> BigRat {
        let num = BigUint::from(self.n).pow(self.n as u32);
        BigRat::from_bigint(num.into())
            .checked_div(&BigRat::from_bigint(self.self_power_product().into()))
            .expect("parts are positive")
    }

    /// `Φ(μ)` truncated to `places` decimals, via the integer `n`-th root of
    /// `⌊Φ^n · 10^{n·places}⌋`.
    pub fn phi_decimal(&self, places: usize) -> String {
        let num = BigUint::from(self.n).pow(self.n as u32);
        let scaled = num * BigUint::from(10u32).pow((self.n * places) as u32) / self.self_power_product();
        let root = scaled.nth_root(self.n as u32).to_string();
        if places == 0 {
            return root;
        }
        let padded = format!("{root:0>width$}", width = places + 1);
        let (int, frac) = padded.split_at(padded.len() - places);
        format!("{int}.{frac}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Precondition(format!("bad partition `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// All partitions of `n` with at most `max_parts` parts, in reverse
/// lexicographic order (largest first part first).
pub fn partitions(n: usize, max_parts: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if n == 0 || max_parts == 0 {
        return out;
    }
    let mut current = Vec::new();
    extend_partitions(n, n, max_parts, &mut current, &mut out);
    out
}

fn extend_partitions(remaining: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: cur.clone(),
            n: cur.iter().sum(),
        });
        return;
    }
    if slots == 0 {
        return;
    }
    // the remaining parts can hold at most slots · part
    for part in (1..=cap.min(remaining)).rev() {
        if part * slots < remaining {
            break;
        }
        cur.push(part);
        extend_partitions(remaining - part, part, slots - 1, cur, out);
        cur.pop();
    }
}

/// Number of standard Young tableaux, by removing the cell holding `n` in
/// every possible corner. Exponential; an independent check of
/// [`Partition::hook_degree`] for small shapes.
pub fn count_tableaux(parts: &[usize]) -> BigUint {
    let n: usize = parts.iter().sum();
    if n == 0 {
        return BigUint::one();
    }
    let mut total = BigUint::zero();
    for i in 0..parts.len() {
        let is_corner = parts[i] > 0 && parts.get(i + 1).is_none_or(|&next| next < parts[i]);
        if is_corner {
            let mut smaller = parts.to_vec();
            smaller[i] -= 1;
            while smaller.last() == Some(&0) {
                smaller.pop();
            }
            total += count_tableaux(&smaller);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(p(&[3, 1, 1]).n(), 5);
        assert_eq!("(3,1,1,1)".parse::<Partition>().unwrap(), p(&[3, 1, 1, 1]));
    }

    #[test]
    fn hook_degrees() {
        assert_eq!(p(&[1]).hook_degree(), BigUint::from(1u32));
        assert_eq!(p(&[2, 2, 2]).hook_degree(), BigUint::from(5u32));
        assert_eq!(p(&[3, 1, 1, 1]).hook_degree(), BigUint::from(10u32));
        assert_eq!(count_tableaux(&[3, 1, 1, 1]), BigUint::from(10u32));
        assert_eq!(count_tableaux(&[2, 2, 2]), BigUint::from(5u32));
    }

    #[test]
    fn phi_values() {
        assert_eq!(p(&[7]).phi_pow_n(), BigRat::one());
        assert_eq!(p(&[2, 2, 2]).phi_pow_n(), BigRat::from_int(729));
        // (3k,k,k,k) with k = 1: Φ = 2√3, Φ^6 = 12^3
        assert_eq!(p(&[3, 1, 1, 1]).phi_pow_n(), BigRat::from_int(1728));
        assert_eq!(p(&[3, 1, 1, 1]).phi_decimal(6), "3.464101");
        assert_eq!(p(&[1, 1, 1]).phi_decimal(3), "3.000");
        assert_eq!(p(&[4]).phi_decimal(0), "1");
    }

    #[test]
    fn enumeration_counts() {
        // p(10) = 42, partitions of 10 into at most 3 parts = 14
        assert_eq!(partitions(10, 10).len(), 42);
        assert_eq!(partitions(10, 3).len(), 14);
        assert_eq!(partitions(4, 4)[0], p(&[4]));
        assert_eq!(partitions(4, 4).last().unwrap(), &p(&[1, 1, 1, 1]));
        assert!(partitions(0, 3).is_empty());
    }
}
