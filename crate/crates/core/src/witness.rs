//! The explicit witness polynomials `g, g′, w, w′, u, u′` and exact checks
//! of their values in b(2).
//!
//! Variable names: `x0` is the distinguished even variable; `x{i}_{j}` is the
//! `i`-th member of the `j`-th even triple; `y{i}_{j}`, `z{i}_{j}` are the odd
//! variables of the bracket `(y{i}_{j} z{i}_{j})` in block `j`; the tail
//! variables of `u′` are `x1, x2, …` without a block suffix.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{solve_abc, Parity, StructureSuperalgebra, SuperElement};
use crate::error::{Error, Result};
use crate::numeric::BigRat;
use crate::perm;
use crate::poly::{BracketPoly, BracketTree, VarDecl};
use crate::report::{CheckRow, ExactValue, Verdict};

/// Largest `t` for `g` (6^t terms).
pub const MAX_T: usize = 4;
/// Largest `k` for `w` (24^k terms, times 6 with the alternated tail).
pub const MAX_K: usize = 2;
pub const MAX_TAIL: usize = 5;
/// Largest number of terms produced by a formal symmetrization or composition.
pub const FORMAL_TERM_CEILING: usize = 300_000;

/// Where the alternations of `w` sit.
///
/// Both layouts alternate the `k` sets `{y1_j, y2_j, y3_j, z1_{j+1}}`.
/// `AlternatedTail` additionally alternates the last triple
/// `{y1_{k+1}, y2_{k+1}, y3_{k+1}}`; without it the final three brackets
/// evaluate to `h·e·f·h = 0` and the word vanishes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum WLayout {
    #[default]
    AlternatedTail,
    AsWritten,
}

impl WLayout {
    pub fn label(self) -> &'static str {
        match self {
            WLayout::AlternatedTail => "alternated-tail",
            WLayout::AsWritten => "as-written",
        }
    }
}

impl std::str::FromStr for WLayout {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alternated-tail" => Ok(WLayout::AlternatedTail),
            "as-written" => Ok(WLayout::AsWritten),
            other => Err(Error::Precondition(format!("unknown layout `{other}`"))),
        }
    }
}

/// Parameters shared by the witness constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessSpec {
    pub t: usize,
    pub k: usize,
    pub i: usize,
}

impl WitnessSpec {
    pub fn new(t: usize, k: usize, i: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::Precondition("t must be at least 1".into()));
        }
        if i > MAX_TAIL {
            return Err(Error::Precondition(format!("tail length {i} exceeds {MAX_TAIL}")));
        }
        Ok(WitnessSpec { t, k, i })
    }
}

fn x_var(i: usize, j: usize) -> String {
    format!("x{i}_{j}")
}

fn y_var(i: usize, j: usize) -> String {
    format!("y{i}_{j}")
}

fn z_var(i: usize, j: usize) -> String {
    format!("z{i}_{j}")
}

fn factorial_rat(n: usize) -> BigRat {
    BigRat::from_bigint(BigInt::from(perm::factorial(n)))
}

fn pow_rat(base: i64, exp: usize) -> BigRat {
    BigRat::from_int(base).pow(exp as i32).expect("nonzero base")
}

fn ceiling_check(what: &str, estimate: u128) -> Result<()> {
    if estimate > FORMAL_TERM_CEILING as u128 {
        return Err(Error::Ceiling(format!(
            "{what} would expand to about {estimate} terms (ceiling {FORMAL_TERM_CEILING})"
        )));
    }
    Ok(())
}

fn names<'a>(p: &BracketPoly, list: impl IntoIterator<Item = &'a String>) -> Result<Vec<usize>> {
    list.into_iter().map(|n| p.var_index(n)).collect()
}

/// `g = Alt_1 … Alt_t (x0 x1_1 x2_1 x3_1 … x1_t x2_t x3_t)`.
pub fn build_g(t: usize) -> Result<BracketPoly> {
    if t == 0 {
        return Err(Error::Precondition("g needs t ≥ 1".into()));
    }
    if t > MAX_T {
        return Err(Error::Ceiling(format!("g is limited to t ≤ {MAX_T}")));
    }
    let mut vars = vec![VarDecl::new("x0", Parity::Even)];
    for j in 1..=t {
        for i in 1..=3 {
            vars.push(VarDecl::new(x_var(i, j), Parity::Even));
        }
    }
    let mut g = BracketPoly::left_normed_word(vars)?;
    for j in 0..t {
        g = g.alt(&[1 + 3 * j, 2 + 3 * j, 3 + 3 * j])?;
    }
    Ok(g)
}

/// `g′ = Sym_1 Sym_2 Sym_3 (g)`, `Sym_i` over `{x_i_1, …, x_i_t}`.
pub fn build_g_prime(t: usize) -> Result<BracketPoly> {
    let f = perm::factorial(t.min(30));
    ceiling_check("g′", 6u128.pow(t.min(30) as u32).saturating_mul(f.saturating_pow(3)))?;
    let mut g = build_g(t)?;
    for i in 1..=3 {
        let family: Vec<String> = (1..=t).map(|j| x_var(i, j)).collect();
        g = g.sym(&names(&g, &family)?)?;
    }
    Ok(g)
}

pub fn build_w(k: usize) -> Result<BracketPoly> {
    build_w_with(k, WLayout::default())
}

/// `w = Alt_1 … Alt_k (x0 (y1_1 z1_1)(y2_1 z2_1)(y3_1 z3_1) … (y3_{k+1} z3_{k+1}))`
/// with `Alt_j` on `{y1_j, y2_j, y3_j, z1_{j+1}}`, plus the tail alternation
/// under [`WLayout::AlternatedTail`].
pub fn build_w_with(k: usize, layout: WLayout) -> Result<BracketPoly> {
    if k > MAX_K {
        return Err(Error::Ceiling(format!("w is limited to k ≤ {MAX_K}")));
    }
    let mut vars = vec![VarDecl::new("x0", Parity::Even)];
    let mut tree = BracketTree::leaf(0);
    for j in 1..=k + 1 {
        for i in 1..=3 {
            let y = vars.len();
            vars.push(VarDecl::new(y_var(i, j), Parity::Odd));
            vars.push(VarDecl::new(z_var(i, j), Parity::Odd));
            let pair = BracketTree::node(&BracketTree::leaf(y), &BracketTree::leaf(y + 1));
            tree = BracketTree::node(&tree, &pair);
        }
    }
    let mut w = BracketPoly::monomial(vars, tree)?;
    for j in 1..=k {
        let set = [y_var(1, j), y_var(2, j), y_var(3, j), z_var(1, j + 1)];
        w = w.alt(&names(&w, &set)?)?;
    }
    if layout == WLayout::AlternatedTail {
        let tail = [y_var(1, k + 1), y_var(2, k + 1), y_var(3, k + 1)];
        w = w.alt(&names(&w, &tail)?)?;
    }
    Ok(w)
}

fn w_len(k: usize, layout: WLayout) -> u128 {
    let tail = if layout == WLayout::AlternatedTail { 6 } else { 1 };
    24u128.pow(k as u32) * tail
}

/// `(3k)!(k!)³`, the number of permutation images summed by `w′`.
fn w_prime_multiplier(k: usize) -> BigRat {
    factorial_rat(3 * k) * factorial_rat(k).pow(3).expect("nonzero")
}

/// `w′ = Sym_1 Sym_2 Sym_3 Sym_4 (w)`: `Sym_i` over `{y_i_1, …, y_i_k}`,
/// `Sym_4` over the `z` variables of blocks `2..=k+1`.
pub fn build_w_prime_with(k: usize, layout: WLayout) -> Result<BracketPoly> {
    if k == 0 {
        return Err(Error::Precondition("w′ needs k ≥ 1".into()));
    }
    if k > MAX_K {
        return Err(Error::Ceiling(format!("w is limited to k ≤ {MAX_K}")));
    }
    let f = perm::factorial(k);
    ceiling_check("w′", w_len(k, layout) * f * f * f * perm::factorial(3 * k))?;
    let mut w = build_w_with(k, layout)?;
    for i in 1..=3 {
        let family: Vec<String> = (1..=k).map(|j| y_var(i, j)).collect();
        w = w.sym(&names(&w, &family)?)?;
    }
    let zs: Vec<String> = (2..=k + 1)
        .flat_map(|j| (1..=3).map(move |i| z_var(i, j)))
        .collect();
    w.sym(&names(&w, &zs)?)
}

pub fn build_w_prime(k: usize) -> Result<BracketPoly> {
    build_w_prime_with(k, WLayout::default())
}

/// `u = w′(g′, y1_1, …, z3_{k+1})`: `g′` substituted for `x0`.
pub fn build_u_with(t: usize, k: usize, layout: WLayout) -> Result<BracketPoly> {
    if t == 0 || k == 0 {
        return Err(Error::Precondition("u needs t ≥ 1 and k ≥ 1".into()));
    }
    let g = build_g_prime(t)?;
    let w = build_w_prime_with(k, layout)?;
    ceiling_check("u", g.len() as u128 * w.len() as u128)?;
    let x0 = w.var_index("x0")?;
    w.substitute(x0, &g)
}

pub fn build_u(t: usize, k: usize) -> Result<BracketPoly> {
    build_u_with(t, k, WLayout::default())
}

/// `u′ = u x1 ⋯ x_i` for fresh even tail variables.
pub fn extend_tail(u: &BracketPoly, i: usize) -> Result<BracketPoly> {
    if i == 0 || i > MAX_TAIL {
        return Err(Error::Precondition(format!("tail length must be in 1..={MAX_TAIL}")));
    }
    let mut p = u.clone();
    for n in 1..=i {
        p = p.bracket(&BracketPoly::variable(format!("x{n}"), Parity::Even))?;
    }
    Ok(p)
}

pub fn build_u_prime(t: usize, k: usize, i: usize) -> Result<BracketPoly> {
    extend_tail(&build_u(t, k)?, i)
}

/// The witness values `h, e, f` and `a, b, c, d` with `ad = e`, `bd = f`,
/// `cd = h`.
#[derive(Clone, Debug)]
pub struct WitnessValues {
    pub h: SuperElement,
    pub e: SuperElement,
    pub f: SuperElement,
    pub a: SuperElement,
    pub b: SuperElement,
    pub c: SuperElement,
    pub d: SuperElement,
}

impl WitnessValues {
    pub fn new(alg: &Arc<StructureSuperalgebra>) -> Result<Self> {
        let abc = solve_abc(alg)?;
        let get = |n: &str| {
            alg.index_of(n)
                .map(|i| SuperElement::basis(alg, i))
                .ok_or_else(|| Error::Precondition(format!("algebra has no basis element `{n}`")))
        };
        Ok(WitnessValues {
            h: get("h")?,
            e: get("e")?,
            f: get("f")?,
            a: abc.a,
            b: abc.b,
            c: abc.c,
            d: get("d")?,
        })
    }

    /// The value the witness evaluation assigns to a variable name.
    pub fn value_of(&self, name: &str) -> Result<&SuperElement> {
        let unknown = || Error::UnknownVariable(name.to_string());
        let (head, rest) = name.split_at(1.min(name.len()));
        let (family, block) = match rest.split_once('_') {
            Some((i, j)) => (i, Some(j)),
            None => (rest, None),
        };
        let family: usize = family.parse().map_err(|_| unknown())?;
        if let Some(j) = block {
            j.parse::<usize>().map_err(|_| unknown())?;
        }
        match (head, family, block.is_some()) {
            ("x", 0, false) => Ok(&self.h),
            ("x", 1, true) => Ok(&self.e),
            ("x", 2, true) => Ok(&self.f),
            ("x", 3, true) => Ok(&self.h),
            ("x", 1, false) => Ok(&self.e),
            ("x", _, false) => Ok(&self.h),
            ("y", 1, true) => Ok(&self.a),
            ("y", 2, true) => Ok(&self.b),
            ("y", 3, true) => Ok(&self.c),
            ("z", 1..=3, true) => Ok(&self.d),
            _ => Err(unknown()),
        }
    }

    pub fn assignment(&self, p: &BracketPoly) -> Result<Vec<SuperElement>> {
        p.vars().iter().map(|v| self.value_of(&v.name).cloned()).collect()
    }

    pub fn evaluate(&self, p: &BracketPoly) -> Result<SuperElement> {
        p.evaluate(&self.assignment(p)?)
    }
}

/// One exact witness evaluation compared with its expected value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessOutcome {
    pub check: &'static str,
    pub params: String,
    pub terms: usize,
    pub computed: SuperElement,
    pub expected: SuperElement,
    pub passed: bool,
    pub note: Option<String>,
}

impl WitnessOutcome {
    pub fn row(&self) -> CheckRow {
        let row = CheckRow::new(
            self.check,
            self.params.clone(),
            ExactValue::Element(self.computed.to_string()),
            "=",
            ExactValue::Element(self.expected.to_string()),
            Verdict::from_bool(self.passed),
        );
        match &self.note {
            Some(n) => row.with_note(format!("{} terms; {n}", self.terms)),
            None => row.with_note(format!("{} terms", self.terms)),
        }
    }
}

fn outcome(
    check: &'static str,
    params: String,
    terms: usize,
    computed: SuperElement,
    expected: SuperElement,
    note: Option<String>,
) -> WitnessOutcome {
    let passed = computed == expected;
    WitnessOutcome {
        check,
        params,
        terms,
        computed,
        expected,
        passed,
        note,
    }
}

/// `φ(g) = 8^t h`.
pub fn verify_eq1(vals: &WitnessValues, t: usize) -> Result<WitnessOutcome> {
    let g = build_g(t)?;
    let computed = vals.evaluate(&g)?;
    let expected = vals.h.scale(&pow_rat(8, t));
    Ok(outcome("eq1", format!("t={t}"), g.len(), computed, expected, None))
}

/// `φ(g′) = (t!)³ 8^t h`, by formal expansion of `g′`.
pub fn verify_eq3a(vals: &WitnessValues, t: usize) -> Result<WitnessOutcome> {
    let g = build_g_prime(t)?;
    let computed = vals.evaluate(&g)?;
    let expected = vals.h.scale(&(factorial_rat(t).pow(3)? * pow_rat(8, t)));
    Ok(outcome("eq3a", format!("t={t}"), g.len(), computed, expected, None))
}

/// `φ(w) = 8^{k+1} h`.
pub fn verify_eq6(vals: &WitnessValues, k: usize, layout: WLayout) -> Result<WitnessOutcome> {
    let w = build_w_with(k, layout)?;
    let computed = vals.evaluate(&w)?;
    let expected = vals.h.scale(&pow_rat(8, k + 1));
    let note = format!("layout {}", layout.label());
    Ok(outcome("eq6", format!("k={k}"), w.len(), computed, expected, Some(note)))
}

/// `φ(w′) = (3k)!(k!)³ 8^{k+1} h`.
///
/// Since `φ` is constant on every symmetrized family, `φ(w′)` is
/// `(3k)!(k!)³ φ(w)`. That product is always computed; the formal expansion
/// of `w′` is evaluated too whenever it fits under the term ceiling, and both
/// must agree.
pub fn verify_w_prime(vals: &WitnessValues, k: usize, layout: WLayout) -> Result<WitnessOutcome> {
    if k == 0 {
        return Err(Error::Precondition("w′ needs k ≥ 1".into()));
    }
    let w = build_w_with(k, layout)?;
    let multiplier = w_prime_multiplier(k);
    let shortcut = vals.evaluate(&w)?.scale(&multiplier);
    let expected = vals.h.scale(&(multiplier * pow_rat(8, k + 1)));
    let params = format!("k={k}");
    match build_w_prime_with(k, layout) {
        Ok(wp) => {
            let formal = vals.evaluate(&wp)?;
            let agree = formal == shortcut;
            let note = format!(
                "formal expansion; shortcut {}",
                if agree { "agrees" } else { "DISAGREES" }
            );
            let mut out = outcome("w_prime", params, wp.len(), formal, expected, Some(note));
            out.passed &= agree;
            Ok(out)
        }
        Err(Error::Ceiling(_)) => {
            let note = format!("(3k)!(k!)^3 shortcut over {} terms of w", w.len());
            Ok(outcome("w_prime", params, w.len(), shortcut, expected, Some(note)))
        }
        Err(e) => Err(e),
    }
}

/// `φ(u) = (t!)³ 8^t · (3k)!(k!)³ 8^{k+1} h`, by formal expansion of `u`.
pub fn verify_u(vals: &WitnessValues, t: usize, k: usize, layout: WLayout) -> Result<WitnessOutcome> {
    let u = build_u_with(t, k, layout)?;
    let computed = vals.evaluate(&u)?;
    let coeff = factorial_rat(t).pow(3)? * pow_rat(8, t) * w_prime_multiplier(k) * pow_rat(8, k + 1);
    let expected = vals.h.scale(&coeff);
    Ok(outcome("u", format!("t={t} k={k}"), u.len(), computed, expected, None))
}

/// Result of comparing `φ(u′)` with `φ(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailOutcome {
    pub t: usize,
    pub k: usize,
    pub i: usize,
    pub terms: usize,
    pub phi_u: SuperElement,
    pub phi_u_prime: SuperElement,
    /// `φ(u) = C·h` gives `φ(u′) = sign · 2^i · C · e`; `None` if no sign fits.
    pub sign: Option<i64>,
    pub passed: bool,
}

impl TailOutcome {
    pub fn row(&self) -> CheckRow {
        let c = self.phi_u.ratio_to(&SuperElement::named(self.phi_u.algebra(), "h")).unwrap_or_else(BigRat::zero);
        let magnitude = format!("±{}·{}e", pow_rat(2, self.i), c);
        let note = match self.sign {
            Some(s) => format!("{} terms; sign {:+}; φ(u) = {}", self.terms, s, self.phi_u),
            None => format!("{} terms; no sign fits; φ(u) = {}", self.terms, self.phi_u),
        };
        CheckRow::new(
            "lemma4",
            format!("t={} k={} i={}", self.t, self.k, self.i),
            ExactValue::Element(self.phi_u_prime.to_string()),
            "=",
            ExactValue::Element(magnitude),
            Verdict::from_bool(self.passed),
        )
        .with_note(note)
    }
}

/// Compares `φ(u′)` with `±2^i φ(u)` coefficient-wise: the tail `e, h, …, h`
/// moves the output from `h` to `e`.
pub fn verify_tail(vals: &WitnessValues, u: &BracketPoly, phi_u: &SuperElement, t: usize, k: usize, i: usize) -> Result<TailOutcome> {
    let up = extend_tail(u, i)?;
    let phi_up = vals.evaluate(&up)?;
    let c = phi_u.ratio_to(&vals.h).filter(|c| !c.is_zero());
    let sign = c.and_then(|c| {
        let target = vals.e.scale(&(pow_rat(2, i) * c));
        if phi_up == target {
            Some(1)
        } else if phi_up == target.scale(&BigRat::from_int(-1)) {
            Some(-1)
        } else {
            None
        }
    });
    Ok(TailOutcome {
        t,
        k,
        i,
        terms: up.len(),
        phi_u: phi_u.clone(),
        phi_u_prime: phi_up,
        sign,
        passed: sign.is_some(),
    })
}

/// Lemma-4 style check for each tail length in `tails`.
pub fn verify_lemma4(vals: &WitnessValues, t: usize, k: usize, tails: &[usize], layout: WLayout) -> Result<Vec<TailOutcome>> {
    let u = build_u_with(t, k, layout)?;
    let phi_u = vals.evaluate(&u)?;
    tails.iter().map(|&i| verify_tail(vals, &u, &phi_u, t, k, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_b2;

    fn vals() -> WitnessValues {
        WitnessValues::new(&Arc::new(build_b2())).unwrap()
    }

    #[test]
    fn term_counts() {
        assert_eq!(build_g(1).unwrap().len(), 6);
        assert_eq!(build_g(2).unwrap().len(), 36);
        assert_eq!(build_g_prime(1).unwrap(), build_g(1).unwrap());
        assert_eq!(build_g_prime(2).unwrap().len(), 36 * 8);
        assert_eq!(build_w_with(0, WLayout::AsWritten).unwrap().len(), 1);
        assert_eq!(build_w_with(1, WLayout::AsWritten).unwrap().len(), 24);
        assert_eq!(build_w_with(1, WLayout::AlternatedTail).unwrap().len(), 144);
        let w = build_w(2).unwrap();
        assert_eq!(w.degree(), (1, 18));
    }

    #[test]
    fn ceilings() {
        assert!(matches!(build_g(5), Err(Error::Ceiling(_))));
        assert!(matches!(build_g(0), Err(Error::Precondition(_))));
        assert!(matches!(build_w(3), Err(Error::Ceiling(_))));
        assert!(matches!(build_w_prime(2), Err(Error::Ceiling(_))));
        assert!(matches!(build_g_prime(4), Err(Error::Ceiling(_))));
    }

    #[test]
    fn value_names() {
        let v = vals();
        assert_eq!(v.value_of("x0").unwrap(), &v.h);
        assert_eq!(v.value_of("x2_7").unwrap(), &v.f);
        assert_eq!(v.value_of("x1").unwrap(), &v.e);
        assert_eq!(v.value_of("x4").unwrap(), &v.h);
        assert_eq!(v.value_of("y3_2").unwrap(), &v.c);
        assert_eq!(v.value_of("z2_1").unwrap(), &v.d);
        assert!(v.value_of("y4_1").is_err());
        assert!(v.value_of("q").is_err());
    }

    #[test]
    fn eq1_small() {
        let v = vals();
        for t in 1..=2 {
            let o = verify_eq1(&v, t).unwrap();
            assert!(o.passed, "{o:?}");
        }
        assert_eq!(verify_eq1(&v, 1).unwrap().computed.to_string(), "8h");
    }

    #[test]
    fn eq6_layouts() {
        let v = vals();
        for k in 0..=1 {
            assert!(verify_eq6(&v, k, WLayout::AlternatedTail).unwrap().passed);
            let raw = verify_eq6(&v, k, WLayout::AsWritten).unwrap();
            assert!(raw.computed.is_zero());
            assert!(!raw.passed);
        }
    }

    #[test]
    fn w_prime_k1_formal_matches_shortcut() {
        let o = verify_w_prime(&vals(), 1, WLayout::AlternatedTail).unwrap();
        assert!(o.passed, "{o:?}");
        assert_eq!(o.computed.to_string(), "384h");
        assert!(o.note.unwrap().contains("agrees"));
    }

    #[test]
    fn repeated_value_in_alternating_set_vanishes() {
        let v = vals();
        let w = build_w(1).unwrap();
        let mut values = v.assignment(&w).unwrap();
        let i = w.var_index("y2_1").unwrap();
        values[i] = v.a.clone();
        assert!(w.evaluate(&values).unwrap().is_zero());
    }

    #[test]
    fn tail_signs() {
        let v = vals();
        let outs = verify_lemma4(&v, 1, 1, &[1, 2], WLayout::AlternatedTail).unwrap();
        assert_eq!(outs[0].phi_u.to_string(), "3072h");
        assert_eq!(outs[0].phi_u_prime.to_string(), "6144e");
        assert_eq!(outs[0].sign, Some(1));
        assert_eq!(outs[1].phi_u_prime.to_string(), "-12288e");
        assert_eq!(outs[1].sign, Some(-1));
    }
}
