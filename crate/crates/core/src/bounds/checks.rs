//! Exact inequality checks: the character-degree sandwich, the degree bounds
//! for `(t,t,t)` and `(3k,k,k,k)`, and the codimension lower bounds.

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use super::partition::{partitions, Partition};
use crate::codim::binomial;
use crate::error::{Error, Result};
use crate::numeric::{BigRat, QuadExt3};
use crate::report::{CheckRow, ExactValue, Verdict};

/// Smallest `n` for which the sandwich is asserted.
pub const LEMMA1_MIN_N: usize = 100;

fn rat(n: BigUint) -> BigRat {
    BigRat::from_bigint(BigInt::from(n))
}

fn upow(base: usize, exp: usize) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

/// Outcome of `Φ^n / n^{d²+d} ≤ d_μ ≤ n Φ^n` for one partition, `d` the
/// number of parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sandwich {
    pub lower_ok: bool,
    pub upper_ok: bool,
}

impl Sandwich {
    pub fn holds(self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// Integer form of the sandwich with `P = ∏ μ_i^{μ_i}`, so `Φ^n = n^n / P`:
/// `n^n ≤ d_μ · P · n^{d²+d}` and `d_μ · P ≤ n^{n+1}`.
pub fn sandwich(mu: &Partition) -> Sandwich {
    let n = mu.n();
    let d = mu.num_parts();
    let deg = mu.hook_degree();
    let p = mu.self_power_product();
    let n_pow_n = upow(n, n);
    let dp = &deg * &p;
    Sandwich {
        lower_ok: n_pow_n <= &dp * upow(n, d * d + d),
        upper_ok: dp <= n_pow_n * BigUint::from(n),
    }
}

fn check_hypothesis(n: usize, explore: bool) -> Result<bool> {
    let outside = n < LEMMA1_MIN_N;
    if outside && !explore {
        return Err(Error::Precondition(format!(
            "the sandwich is asserted for n ≥ {LEMMA1_MIN_N}; n = {n} needs exploratory mode"
        )));
    }
    Ok(outside)
}

/// Both halves of the sandwich as exact rows.
pub fn lemma1_check(mu: &Partition, explore: bool) -> Result<Vec<CheckRow>> {
    let exploratory = check_hypothesis(mu.n(), explore)?;
    let n = mu.n();
    let d = mu.num_parts();
    let phi = mu.phi_pow_n();
    let deg = rat(mu.hook_degree());
    let lower = phi.checked_div(&rat(upow(n, d * d + d)))?;
    let upper = BigRat::from_int(n as i64) * &phi;
    let params = format!("mu={mu}");
    let note = format!("d={d} parts");
    Ok(vec![
        CheckRow::new("lemma1-lower", params.clone(), lower.clone(), "<=", deg.clone(), Verdict::from_bool(lower <= deg))
            .exploratory(exploratory)
            .with_note(note.clone()),
        CheckRow::new("lemma1-upper", params, deg.clone(), "<=", upper.clone(), Verdict::from_bool(deg <= upper))
            .exploratory(exploratory)
            .with_note(note),
    ])
}

/// The sandwich over every partition of `n` with at most `max_parts` parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Grid {
    pub n: usize,
    pub max_parts: usize,
    pub total: usize,
    pub failures: Vec<(Partition, Sandwich)>,
    pub exploratory: bool,
}

impl Lemma1Grid {
    pub fn passed(&self) -> usize {
        self.total - self.failures.len()
    }

    /// A summary row, followed by one row per failing half.
    pub fn rows(&self) -> Vec<CheckRow> {
        let mut rows = vec![CheckRow::new(
            "lemma1-grid",
            format!("n={} max_parts={}", self.n, self.max_parts),
            BigInt::from(self.passed()),
            "=",
            BigInt::from(self.total),
            Verdict::from_bool(self.failures.is_empty()),
        )
        .exploratory(self.exploratory)
        .with_note("partitions satisfying the sandwich / partitions checked")];
        for (mu, s) in &self.failures {
            let rows_mu = lemma1_check(mu, true).expect("exploratory mode accepts every n");
            for (row, ok) in rows_mu.into_iter().zip([s.lower_ok, s.upper_ok]) {
                if !ok {
                    rows.push(row.exploratory(self.exploratory));
                }
            }
        }
        rows
    }
}

pub fn lemma1_grid(n: usize, max_parts: usize, explore: bool) -> Result<Lemma1Grid> {
    let exploratory = check_hypothesis(n, explore)?;
    let all = partitions(n, max_parts);
    let mut failures: Vec<(Partition, Sandwich)> = all
        .par_iter()
        .filter_map(|mu| {
            let s = sandwich(mu);
            (!s.holds()).then(|| (mu.clone(), s))
        })
        .collect();
    failures.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(Lemma1Grid {
        n,
        max_parts,
        total: all.len(),
        failures,
        exploratory,
    })
}

fn degree_check(name: &str, param: String, mu: Partition, size: usize, exponent: usize, base_pow: BigUint) -> CheckRow {
    // deg χ_μ ≥ size^{-exponent} · base_pow, compared as deg · size^exponent ≥ base_pow
    let deg = mu.hook_degree();
    let ok = &deg * upow(size, exponent) >= base_pow;
    let rhs = rat(base_pow).checked_div(&rat(upow(size, exponent))).expect("size ≥ 1");
    CheckRow::new(name, param, deg, ">=", rhs, Verdict::from_bool(ok))
        .exploratory(size < LEMMA1_MIN_N)
        .with_note(format!("mu={mu}"))
}

/// `d_{(t,t,t)} ≥ m^{-12} 3^m`, `m = 3t`.
pub fn eq4_check(t: usize) -> Result<CheckRow> {
    if t == 0 {
        return Err(Error::Precondition("t must be at least 1".into()));
    }
    let m = 3 * t;
    let mu = Partition::new(vec![t; 3])?;
    Ok(degree_check("eq4", format!("t={t} m={m}"), mu, m, 12, upow(3, m)))
}

/// `d_{(3k,k,k,k)} ≥ r^{-20} (2√3)^r = r^{-20} 12^{3k}`, `r = 6k`.
pub fn eq7_check(k: usize) -> Result<CheckRow> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let r = 6 * k;
    let mu = Partition::new(vec![3 * k, k, k, k])?;
    Ok(degree_check("eq7", format!("k={k} r={r}"), mu, r, 20, upow(12, 3 * k)))
}

/// `3^m (2√3)^r / (m+r)^32` with `m = 3t`, `r = 6k`; rational since `r` is even.
pub fn lemma2_bound(t: usize, k: usize) -> Result<BigRat> {
    if t == 0 || k == 0 {
        return Err(Error::Precondition("the bound needs t ≥ 1 and k ≥ 1".into()));
    }
    let (m, r) = (3 * t, 6 * k);
    rat(upow(3, m) * upow(12, r / 2)).checked_div(&rat(upow(m + r, 32)))
}

/// `codim ≥ bound` for the codimension `c_{m+1, r+6}`; `source` says how
/// `codim` was obtained.
pub fn lemma2_compare(t: usize, k: usize, codim: &BigUint, source: &str) -> Result<CheckRow> {
    let bound = lemma2_bound(t, k)?;
    let c = rat(codim.clone());
    let (m, r) = (3 * t, 6 * k);
    Ok(CheckRow::new(
        "lemma2",
        format!("t={t} k={k} (k,l)=({},{})", m + 1, r + 6),
        codim.clone(),
        ">=",
        bound.clone(),
        Verdict::from_bool(c >= bound),
    )
    .with_note(source.to_string()))
}

/// Which lower bound applies to `c_n^gr`, by the residue of `n − 7` mod 6.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthRoute {
    /// `n − 7 ≡ 0`: exponent 38.
    Lemma3,
    /// `n − 7 ≡ i` with `1 ≤ i ≤ 5`: exponent 43.
    Lemma5 { i: usize },
}

impl GrowthRoute {
    pub fn for_n(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        match (n as i64 - 7).rem_euclid(6) as usize {
            0 => Ok(GrowthRoute::Lemma3),
            i => Ok(GrowthRoute::Lemma5 { i }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GrowthRoute::Lemma3 => "lemma3",
            GrowthRoute::Lemma5 { .. } => "lemma5",
        }
    }

    fn exponent(self) -> usize {
        match self {
            GrowthRoute::Lemma3 => 38,
            GrowthRoute::Lemma5 { .. } => 43,
        }
    }
}

fn growth(n: usize, exponent: usize) -> Result<QuadExt3> {
    let denom = rat(upow(3, 18) * upow(n, exponent));
    QuadExt3::three_plus_two_sqrt3().pow(n as i64)?.div_rat(&denom)
}

/// `(3+2√3)^n / (3^18 n^38)`, for `n ≡ 7 (mod 6)`.
pub fn lemma3_bound(n: usize) -> Result<QuadExt3> {
    match GrowthRoute::for_n(n)? {
        GrowthRoute::Lemma3 => growth(n, 38),
        GrowthRoute::Lemma5 { i } => Err(Error::Precondition(format!(
            "n − 7 ≡ {i} (mod 6); this bound needs n − 7 ≡ 0"
        ))),
    }
}

/// The form `6 (3+2√3)^{n−7} / ((3n)^5 n^33)` reached before the last
/// simplification.
pub fn lemma3_intermediate(n: usize) -> Result<QuadExt3> {
    lemma3_bound(n)?;
    let denom = rat(upow(3 * n, 5) * upow(n, 33));
    QuadExt3::three_plus_two_sqrt3()
        .pow(n as i64 - 7)?
        .scale(&BigRat::from_int(6))
        .div_rat(&denom)
}

/// `(3+2√3)^n / (3^18 n^43)`, for `n − 7 ≢ 0 (mod 6)`.
pub fn lemma5_bound(n: usize) -> Result<QuadExt3> {
    match GrowthRoute::for_n(n)? {
        GrowthRoute::Lemma5 { .. } => growth(n, 43),
        GrowthRoute::Lemma3 => Err(Error::Precondition(
            "n − 7 ≡ 0 (mod 6); use the exponent-38 bound".into(),
        )),
    }
}

/// The applicable bound for `c_n^gr`.
pub fn growth_bound(n: usize) -> Result<(GrowthRoute, QuadExt3)> {
    let route = GrowthRoute::for_n(n)?;
    Ok((route, growth(n, route.exponent())?))
}

/// Rows for `c_n^gr ≥ bound`; for the exponent-38 route also checks that the
/// intermediate form dominates the final one.
pub fn growth_compare(n: usize, total_codim: &BigUint) -> Result<Vec<CheckRow>> {
    let (route, bound) = growth_bound(n)?;
    let c = QuadExt3::from_rat(rat(total_codim.clone()));
    let params = match route {
        GrowthRoute::Lemma3 => format!("n={n}"),
        GrowthRoute::Lemma5 { i } => format!("n={n} i={i}"),
    };
    let mut rows = vec![CheckRow::new(
        route.name(),
        params.clone(),
        total_codim.clone(),
        ">=",
        bound.clone(),
        Verdict::from_bool(c >= bound),
    )
    .with_note("total graded codimension vs exact bound")];
    if route == GrowthRoute::Lemma3 {
        let mid = lemma3_intermediate(n)?;
        rows.push(
            CheckRow::new("lemma3-forms", params, mid.clone(), ">=", bound.clone(), Verdict::from_bool(mid >= bound))
                .with_note("intermediate 6(3+2√3)^(n-7)/((3n)^5 n^33) vs final form"),
        );
    }
    Ok(rows)
}

/// `Σ_i C(q,i) 3^i (2√3)^{q−i} = (3+2√3)^q`.
pub fn binomial_identity_check(q: usize) -> CheckRow {
    let two_sqrt3 = QuadExt3::two_sqrt3();
    let mut lhs = QuadExt3::zero();
    for i in 0..=q {
        let coeff = rat(binomial(q, i) * upow(3, i));
        let term = two_sqrt3.pow((q - i) as i64).expect("nonnegative power").scale(&coeff);
        lhs = &lhs + &term;
    }
    let rhs = QuadExt3::three_plus_two_sqrt3().pow(q as i64).expect("nonnegative power");
    let ok = lhs == rhs;
    CheckRow::new("binomial", format!("q={q}"), lhs, "=", rhs, Verdict::from_bool(ok))
}

/// `C(n,i) ≤ n · C(n,i+1)` for `0 ≤ i < n`.
pub fn binom_step_check(n: usize, i: usize) -> Result<CheckRow> {
    if i >= n {
        return Err(Error::Precondition(format!("need 0 ≤ i < n, got i={i}, n={n}")));
    }
    let lhs = binomial(n, i);
    let rhs = BigUint::from(n) * binomial(n, i + 1);
    let ok = lhs <= rhs;
    Ok(CheckRow::new("binom-step", format!("n={n} i={i}"), lhs, "<=", rhs, Verdict::from_bool(ok)))
}

/// Every `(n, i)` with `1 ≤ n ≤ max_n`, summarised in one row; failing pairs
/// follow as rows of their own.
pub fn binom_step_sweep(max_n: usize) -> Vec<CheckRow> {
    let mut total = 0usize;
    let mut failing = Vec::new();
    for n in 1..=max_n {
        for i in 0..n {
            total += 1;
            let row = binom_step_check(n, i).expect("i < n");
            if row.verdict != Verdict::Pass {
                failing.push(row);
            }
        }
    }
    let mut rows = vec![CheckRow::new(
        "binom-step-sweep",
        format!("n<={max_n}"),
        ExactValue::Integer(BigInt::from(total - failing.len())),
        "=",
        ExactValue::Integer(BigInt::from(total)),
        Verdict::from_bool(failing.is_empty()),
    )];
    rows.extend(failing);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn sandwich_examples() {
        for mu in [p(&[100]), p(&[34, 33, 33]), p(&[25, 25, 25, 25])] {
            let rows = lemma1_check(&mu, false).unwrap();
            assert!(rows.iter().all(|r| r.verdict == Verdict::Pass), "{rows:?}");
            assert!(sandwich(&mu).holds());
        }
        let rows = lemma1_check(&p(&[100]), false).unwrap();
        assert_eq!(rows[0].lhs.to_string(), "1/10000");
        assert_eq!(rows[1].rhs.to_string(), "100");
    }

    #[test]
    fn small_n_needs_exploration() {
        assert!(lemma1_check(&p(&[3, 2]), false).is_err());
        let rows = lemma1_check(&p(&[3, 2]), true).unwrap();
        assert!(rows.iter().all(|r| r.exploratory));
    }

    #[test]
    fn degree_bounds() {
        let r = eq4_check(1).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.lhs.to_string(), "1");
        let r = eq7_check(1).unwrap();
        assert_eq!(r.lhs.to_string(), "10");
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(eq4_check(6).unwrap().exploratory);
        assert!(eq4_check(0).is_err());
    }

    #[test]
    fn lemma2_values() {
        let b = lemma2_bound(1, 1).unwrap();
        let expected = BigRat::from_int(27 * 1728).checked_div(&rat(upow(9, 32))).unwrap();
        assert_eq!(b, expected);
        assert!(lemma2_bound(1, 0).is_err());
        assert!(b < BigRat::one());
    }

    #[test]
    fn routing() {
        assert_eq!(GrowthRoute::for_n(7).unwrap(), GrowthRoute::Lemma3);
        assert_eq!(GrowthRoute::for_n(13).unwrap(), GrowthRoute::Lemma3);
        assert_eq!(GrowthRoute::for_n(1).unwrap(), GrowthRoute::Lemma3);
        assert_eq!(GrowthRoute::for_n(8).unwrap(), GrowthRoute::Lemma5 { i: 1 });
        assert_eq!(GrowthRoute::for_n(5).unwrap(), GrowthRoute::Lemma5 { i: 4 });
        assert!(lemma3_bound(12).is_err());
        assert!(lemma5_bound(13).is_err());
        let b7 = lemma3_bound(7).unwrap();
        let manual = QuadExt3::three_plus_two_sqrt3()
            .pow_naive(7)
            .div_rat(&rat(upow(3, 18) * upow(7, 38)))
            .unwrap();
        assert_eq!(b7, manual);
    }

    #[test]
    fn binomial_identity() {
        assert_eq!(binomial_identity_check(1).verdict, Verdict::Pass);
        let r = binomial_identity_check(2);
        assert_eq!(r.rhs.to_string(), "21+12√3");
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn binom_steps() {
        assert_eq!(binom_step_check(10, 9).unwrap().verdict, Verdict::Pass);
        assert_eq!(binom_step_check(10, 0).unwrap().verdict, Verdict::Pass);
        assert!(binom_step_check(3, 3).is_err());
        assert_eq!(binom_step_sweep(30)[0].verdict, Verdict::Pass);
    }
}
