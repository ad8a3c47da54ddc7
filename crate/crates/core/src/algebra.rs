//! Finite-dimensional Z₂-graded algebras given by structure constants.
//!
//! An algebra is a homogeneous basis (each element even or odd) plus the
//! bracket of every ordered pair of basis elements. Everything downstream
//! (evaluation of polynomials, codimension matrices) works from this table
//! alone; [`build_b2`] uses a 4×4 matrix model once to derive it.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::{solve_unique, BigRat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(bit: u8) -> Self {
        if bit & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity of a product, `|x| + |y| mod 2`.
    pub fn combine(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ other.bit())
    }

    /// The Koszul sign `(-1)^{|x||y|}`.
    pub fn koszul(self, other: Parity) -> i64 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" | "0" => Ok(Parity::Even),
            "odd" | "1" => Ok(Parity::Odd),
            _ => Err(Error::Precondition(format!("unknown parity `{s}`"))),
        }
    }
}

/// Sparse coordinates of a bracket of two basis elements.
type Coords = Vec<(usize, BigRat)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureSuperalgebra {
    id: String,
    names: Vec<String>,
    parities: Vec<Parity>,
    // table[i][j] = [b_i, b_j]
    table: Vec<Vec<Coords>>,
}

impl StructureSuperalgebra {
    /// Builds an algebra from `(i, j, k, c)` constants meaning `[b_i, b_j]`
    /// has coefficient `c` on `b_k`. Repeated keys are summed.
    pub fn new(
        id: impl Into<String>,
        names: Vec<String>,
        parities: Vec<Parity>,
        constants: impl IntoIterator<Item = (usize, usize, usize, BigRat)>,
    ) -> Result<Self> {
        let dim = names.len();
        if parities.len() != dim {
            return Err(Error::Precondition(format!(
                "{dim} basis names but {} parities",
                parities.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Precondition(format!("duplicate basis name `{n}`")));
            }
        }
        let mut dense = vec![vec![vec![BigRat::zero(); dim]; dim]; dim];
        for (i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Precondition(format!(
                    "structure constant index ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            dense[i][j][k] += c;
        }
        let table = dense
            .into_iter()
            .map(|row| row.into_iter().map(sparsify).collect())
            .collect();
        Ok(StructureSuperalgebra {
            id: id.into(),
            names,
            parities,
            table,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    /// Basis indices of the given parity, in basis order.
    pub fn basis_of_parity(&self, p: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parities[i] == p).collect()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, BigRat)] {
        &self.table[i][j]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> BigRat {
        self.table[i][j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(BigRat::zero, |(_, c)| c.clone())
    }

    /// All nonzero constants in `(i, j, k)` order.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, usize, &BigRat)> {
        self.table.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(j, cs)| cs.iter().map(move |(k, c)| (i, j, k.to_owned(), c)))
        })
    }

    /// Bilinear bracket on dense coordinate vectors.
    pub fn bracket_coords(&self, x: &[BigRat], y: &[BigRat]) -> Vec<BigRat> {
        let mut out = vec![BigRat::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let coeff = xi * yj;
                for (k, c) in &self.table[i][j] {
                    out[*k] += &coeff * c;
                }
            }
        }
        out
    }

    /// `[x, b_j]` for a dense `x`.
    pub fn bracket_with_basis(&self, x: &[BigRat], j: usize) -> Vec<BigRat> {
        let mut out = vec![BigRat::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (k, c) in &self.table[i][j] {
                out[*k] += xi * c;
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vec<BigRat> {
        let mut v = vec![BigRat::zero(); self.dim()];
        v[i] = BigRat::one();
        v
    }

    /// A copy with one structure constant shifted by `delta`.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, delta: BigRat) -> Result<Self> {
        let consts = self
            .constants()
            .map(|(a, b, c, v)| (a, b, c, v.clone()))
            .chain(std::iter::once((i, j, k, delta)));
        StructureSuperalgebra::new(
            format!("{}~perturbed", self.id),
            self.names.clone(),
            self.parities.clone(),
            consts.collect::<Vec<_>>(),
        )
    }

    /// Plain-text table: `basis <name> <parity>` lines, then one
    /// `i j k value` line per nonzero constant.
    pub fn to_table_text(&self) -> String {
        let mut s = format!("# structure constants of {}\n", self.id);
        for (n, p) in self.names.iter().zip(&self.parities) {
            s.push_str(&format!("basis {n} {p}\n"));
        }
        for (i, j, k, c) in self.constants() {
            s.push_str(&format!("{i} {j} {k} {c}\n"));
        }
        s
    }

    pub fn from_table_text(id: impl Into<String>, text: &str) -> Result<Self> {
        let mut names = Vec::new();
        let mut parities = Vec::new();
        let mut constants = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let err = |msg: String| Error::Parse { line, msg };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields[0] == "basis" {
                if !constants.is_empty() {
                    return Err(err("basis declarations must precede constants".into()));
                }
                if fields.len() != 3 {
                    return Err(err("expected `basis <name> <parity>`".into()));
                }
                names.push(fields[1].to_string());
                parities.push(fields[2].parse().map_err(|e: Error| err(e.to_string()))?);
                continue;
            }
            if fields.len() != 4 {
                return Err(err("expected `i j k value`".into()));
            }
            let idx = |s: &str| -> Result<usize> {
                s.parse::<usize>()
                    .map_err(|_| err(format!("bad index `{s}`")))
            };
            let (i, j, k) = (idx(fields[0])?, idx(fields[1])?, idx(fields[2])?);
            let c: BigRat = fields[3].parse().map_err(|e: Error| err(e.to_string()))?;
            if i >= names.len() || j >= names.len() || k >= names.len() {
                return Err(err(format!("index out of range for dimension {}", names.len())));
            }
            constants.push((i, j, k, c));
        }
        if names.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "no basis declarations".into(),
            });
        }
        StructureSuperalgebra::new(id, names, parities, constants)
    }
}

fn sparsify(dense: Vec<BigRat>) -> Coords {
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// An element of a [`StructureSuperalgebra`], as coordinates over its basis.
#[derive(Clone, Debug)]
pub struct SuperElement {
    algebra: Arc<StructureSuperalgebra>,
    coords: Vec<BigRat>,
}

impl PartialEq for SuperElement {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.coords == other.coords
    }
}

impl Eq for SuperElement {}

fn same_algebra(a: &Arc<StructureSuperalgebra>, b: &Arc<StructureSuperalgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl SuperElement {
    pub fn from_coords(algebra: &Arc<StructureSuperalgebra>, coords: Vec<BigRat>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::Precondition(format!(
                "{} coordinates for an algebra of dimension {}",
                coords.len(),
                algebra.dim()
            )));
        }
        Ok(SuperElement {
            algebra: Arc::clone(algebra),
            coords,
        })
    }

    pub fn basis(algebra: &Arc<StructureSuperalgebra>, i: usize) -> Self {
        SuperElement {
            algebra: Arc::clone(algebra),
            coords: algebra.unit(i),
        }
    }

    /// Basis element by name. Panics if the name is unknown.
    pub fn named(algebra: &Arc<StructureSuperalgebra>, name: &str) -> Self {
        let i = algebra
            .index_of(name)
            .unwrap_or_else(|| panic!("no basis element `{name}` in {}", algebra.id()));
        SuperElement::basis(algebra, i)
    }

    pub fn zero(algebra: &Arc<StructureSuperalgebra>) -> Self {
        SuperElement {
            algebra: Arc::clone(algebra),
            coords: vec![BigRat::zero(); algebra.dim()],
        }
    }

    pub fn algebra(&self) -> &Arc<StructureSuperalgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[BigRat] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigRat> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(BigRat::is_zero)
    }

    /// `Ok(None)` for zero, `Ok(Some(p))` when every nonzero coordinate has
    /// parity `p`.
    pub fn homogeneous_parity(&self) -> Result<Option<Parity>> {
        let mut found = None;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = self.algebra.parity(i);
            match found {
                None => found = Some(p),
                Some(q) if q != p => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        Ok(found)
    }

    fn check_same(&self, other: &SuperElement) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                expected: self.algebra.id().to_string(),
                found: other.algebra.id().to_string(),
            })
        }
    }

    pub fn bracket(&self, other: &SuperElement) -> Result<SuperElement> {
        self.check_same(other)?;
        Ok(SuperElement {
            algebra: Arc::clone(&self.algebra),
            coords: self.algebra.bracket_coords(&self.coords, &other.coords),
        })
    }

    pub fn add(&self, other: &SuperElement) -> Result<SuperElement> {
        self.check_same(other)?;
        Ok(SuperElement {
            algebra: Arc::clone(&self.algebra),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &BigRat) -> SuperElement {
        SuperElement {
            algebra: Arc::clone(&self.algebra),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// If `self = c · other` for a scalar `c`, returns `c`.
    pub fn ratio_to(&self, other: &SuperElement) -> Option<BigRat> {
        let pivot = other.coords.iter().position(|c| !c.is_zero())?;
        let c = self.coords[pivot].checked_div(&other.coords[pivot]).ok()?;
        (other.scale(&c).coords == self.coords).then_some(c)
    }
}

impl fmt::Display for SuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_combination(f, self.algebra.names(), &self.coords)
    }
}

/// Formats coordinates as a linear combination like `8h` or `2e-1/3f`.
pub fn format_coords(names: &[String], coords: &[BigRat]) -> String {
    struct W<'a>(&'a [String], &'a [BigRat]);
    impl fmt::Display for W<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            format_combination(f, self.0, self.1)
        }
    }
    W(names, coords).to_string()
}

fn format_combination(f: &mut fmt::Formatter<'_>, names: &[String], coords: &[BigRat]) -> fmt::Result {
    let mut first = true;
    for (name, c) in names.iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        let (neg, abs) = (c.is_negative(), c.abs());
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { "-" } else { "+" })?;
        }
        if abs.is_one() {
            write!(f, "{name}")?;
        } else if abs.is_integer() {
            write!(f, "{abs}{name}")?;
        } else {
            write!(f, "({abs}){name}")?;
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// Every nonzero `[b_i, b_j]` coordinate has parity `|b_i| + |b_j|`.
    Grading,
    /// `xy + (-1)^{|x||y|} yx = 0`.
    SuperAnticommutativity,
    /// `x(yz) = (xy)z + (-1)^{|x||y|} y(xz)`, both sides as an equality.
    SuperJacobi,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Grading => "grading: |[x,y]| = |x|+|y| mod 2",
            Axiom::SuperAnticommutativity => "super-anticommutativity: xy + (-1)^{|x||y|} yx = 0",
            Axiom::SuperJacobi => "super-Jacobi: x(yz) = (xy)z + (-1)^{|x||y|} y(xz)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// Basis indices of the offending pair or triple.
    pub basis: Vec<usize>,
    pub lhs: Vec<BigRat>,
    pub rhs: Vec<BigRat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub algebra_id: String,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Exhaustive check of grading, super-anticommutativity (all basis pairs) and
/// super-Jacobi (all basis triples). Stops at the first violation.
pub fn verify_axioms(alg: &StructureSuperalgebra) -> AxiomReport {
    let dim = alg.dim();
    let mut report = AxiomReport {
        algebra_id: alg.id().to_string(),
        pairs_checked: 0,
        triples_checked: 0,
        violation: None,
    };
    let zero = vec![BigRat::zero(); dim];

    for i in 0..dim {
        for j in 0..dim {
            let expected = alg.parity(i).combine(alg.parity(j));
            if let Some((k, _)) = alg.bracket_basis(i, j).iter().find(|(k, _)| alg.parity(*k) != expected) {
                report.violation = Some(AxiomViolation {
                    axiom: Axiom::Grading,
                    basis: vec![i, j, *k],
                    lhs: alg.bracket_coords(&alg.unit(i), &alg.unit(j)),
                    rhs: zero,
                });
                return report;
            }
        }
    }

    for i in 0..dim {
        for j in 0..dim {
            report.pairs_checked += 1;
            let sign = BigRat::from_int(alg.parity(i).koszul(alg.parity(j)));
            let xy = alg.bracket_coords(&alg.unit(i), &alg.unit(j));
            let yx = alg.bracket_coords(&alg.unit(j), &alg.unit(i));
            let lhs: Vec<BigRat> = xy.iter().zip(&yx).map(|(a, b)| a + &(&sign * b)).collect();
            if lhs != zero {
                report.violation = Some(AxiomViolation {
                    axiom: Axiom::SuperAnticommutativity,
                    basis: vec![i, j],
                    lhs,
                    rhs: zero,
                });
                return report;
            }
        }
    }

    for i in 0..dim {
        for j in 0..dim {
            let sign = BigRat::from_int(alg.parity(i).koszul(alg.parity(j)));
            let (x, y) = (alg.unit(i), alg.unit(j));
            let xy = alg.bracket_coords(&x, &y);
            for k in 0..dim {
                report.triples_checked += 1;
                let z = alg.unit(k);
                let lhs = alg.bracket_coords(&x, &alg.bracket_coords(&y, &z));
                let first = alg.bracket_coords(&xy, &z);
                let second = alg.bracket_coords(&y, &alg.bracket_coords(&x, &z));
                let rhs: Vec<BigRat> = first
                    .iter()
                    .zip(&second)
                    .map(|(a, b)| a + &(&sign * b))
                    .collect();
                if lhs != rhs {
                    report.violation = Some(AxiomViolation {
                        axiom: Axiom::SuperJacobi,
                        basis: vec![i, j, k],
                        lhs,
                        rhs,
                    });
                    return report;
                }
            }
        }
    }
    report
}

/// sl₂ with basis e, f, h: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn build_sl2() -> StructureSuperalgebra {
    let (e, f, h) = (0, 1, 2);
    let c = BigRat::from_int;
    let constants = vec![
        (h, e, e, c(2)),
        (e, h, e, c(-2)),
        (h, f, f, c(-2)),
        (f, h, f, c(2)),
        (e, f, h, c(1)),
        (f, e, h, c(-1)),
    ];
    StructureSuperalgebra::new(
        "sl2",
        vec!["e".into(), "f".into(), "h".into()],
        vec![Parity::Even; 3],
        constants,
    )
    .expect("sl2 table is well formed")
}

type Mat4 = [[BigRat; 4]; 4];

fn mat4(entries: &[((usize, usize), i64)]) -> Mat4 {
    let mut m: Mat4 = std::array::from_fn(|_| std::array::from_fn(|_| BigRat::zero()));
    // 1-based positions
    for &((r, c), v) in entries {
        m[r - 1][c - 1] = BigRat::from_int(v);
    }
    m
}

fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = mat4(&[]);
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = (0..4).map(|k| &a[i][k] * &b[k][j]).sum();
        }
    }
    out
}

/// `{x, y} = xy − (−1)^{|x||y|} yx` in the associative matrix model.
fn super_commutator(x: &Mat4, px: Parity, y: &Mat4, py: Parity) -> Mat4 {
    let xy = mat_mul(x, y);
    let yx = mat_mul(y, x);
    let sign = BigRat::from_int(px.koszul(py));
    let mut out = mat4(&[]);
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = &xy[i][j] - &(&sign * &yx[i][j]);
        }
    }
    out
}

fn flatten(m: &Mat4) -> Vec<BigRat> {
    m.iter().flat_map(|r| r.iter().cloned()).collect()
}

/// Names of the L₁⁺ basis in [`build_b2`]: symmetric upper-right blocks
/// E₁₁, E₂₂ and E₁₂+E₂₁.
pub const B2_PLUS_BASIS: [&str; 3] = ["p11", "p22", "p12"];

/// The 4×4 matrices of the b(2) basis, in basis order, with parities.
fn b2_matrix_basis() -> Vec<(&'static str, Parity, Mat4)> {
    use Parity::*;
    vec![
        // diag(A, −Aᵗ) for A = e, f, h of sl₂
        ("e", Even, mat4(&[((1, 2), 1), ((4, 3), -1)])),
        ("f", Even, mat4(&[((2, 1), 1), ((3, 4), -1)])),
        ("h", Even, mat4(&[((1, 1), 1), ((2, 2), -1), ((3, 3), -1), ((4, 4), 1)])),
        // upper-right symmetric block B
        ("p11", Odd, mat4(&[((1, 3), 1)])),
        ("p22", Odd, mat4(&[((2, 4), 1)])),
        ("p12", Odd, mat4(&[((1, 4), 1), ((2, 3), 1)])),
        // lower-left antisymmetric block C = E₁₂ − E₂₁
        ("d", Odd, mat4(&[((3, 2), 1), ((4, 1), -1)])),
    ]
}

/// The 7-dimensional Lie superalgebra b(2): even part sl₂ (e, f, h), odd part
/// L₁⁺ (p11, p22, p12) and L₁⁻ = span(d).
///
/// Structure constants are derived from the super-commutator of 4×4 matrices;
/// the matrices are discarded afterwards.
pub fn build_b2() -> StructureSuperalgebra {
    let basis = b2_matrix_basis();
    // columns of the coordinate system: flattened basis matrices
    let columns: Vec<Vec<BigRat>> = basis.iter().map(|(_, _, m)| flatten(m)).collect();
    let system: Vec<Vec<BigRat>> = (0..16)
        .map(|r| columns.iter().map(|col| col[r].clone()).collect())
        .collect();

    let mut constants = Vec::new();
    for (i, (_, pi, mi)) in basis.iter().enumerate() {
        for (j, (_, pj, mj)) in basis.iter().enumerate() {
            let prod = super_commutator(mi, *pi, mj, *pj);
            let coords = solve_unique(&system, &flatten(&prod))
                .expect("b(2) is closed under the super-commutator");
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    constants.push((i, j, k, c));
                }
            }
        }
    }
    StructureSuperalgebra::new(
        "b2",
        basis.iter().map(|(n, _, _)| n.to_string()).collect(),
        basis.iter().map(|(_, p, _)| *p).collect(),
        constants,
    )
    .expect("b(2) table is well formed")
}

/// The elements `a, b, c ∈ L₁⁺` with `ad = e`, `bd = f`, `cd = h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddTriple {
    pub a: SuperElement,
    pub b: SuperElement,
    pub c: SuperElement,
}

/// Solves for `a, b, c` in L₁⁺ by the 3×3 system `x ↦ [x, d]`, L₁⁺ → L₀.
pub fn solve_abc(alg: &Arc<StructureSuperalgebra>) -> Result<OddTriple> {
    let idx = |n: &str| {
        alg.index_of(n)
            .ok_or_else(|| Error::Precondition(format!("algebra has no basis element `{n}`")))
    };
    let d = idx("d")?;
    let plus = B2_PLUS_BASIS.iter().map(|n| idx(n)).collect::<Result<Vec<_>>>()?;
    let even = ["e", "f", "h"].iter().map(|n| idx(n)).collect::<Result<Vec<_>>>()?;

    // column p = [b_p, d] restricted to even coordinates; the rest must vanish
    let images: Vec<Vec<BigRat>> = plus
        .iter()
        .map(|&p| alg.bracket_coords(&alg.unit(p), &alg.unit(d)))
        .collect();
    for img in &images {
        let off_even = img
            .iter()
            .enumerate()
            .any(|(k, v)| !v.is_zero() && !even.contains(&k));
        if off_even {
            return Err(Error::Singular("[L1+, d] leaves the even part".into()));
        }
    }
    let system: Vec<Vec<BigRat>> = even
        .iter()
        .map(|&r| images.iter().map(|img| img[r].clone()).collect())
        .collect();

    let mut solved = Vec::with_capacity(3);
    for &target in &even {
        let rhs: Vec<BigRat> = even
            .iter()
            .map(|&r| if r == target { BigRat::one() } else { BigRat::zero() })
            .collect();
        let x = solve_unique(&system, &rhs)?;
        let mut coords = vec![BigRat::zero(); alg.dim()];
        for (&p, v) in plus.iter().zip(x) {
            coords[p] = v;
        }
        solved.push(SuperElement::from_coords(alg, coords)?);
    }
    let c = solved.pop().expect("three solutions");
    let b = solved.pop().expect("three solutions");
    let a = solved.pop().expect("three solutions");
    Ok(OddTriple { a, b, c })
}
