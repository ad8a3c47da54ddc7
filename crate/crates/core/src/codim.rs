//! Graded codimensions as ranks of evaluation matrices.
//!
//! Over a field of characteristic zero a multilinear polynomial is a graded
//! identity iff it vanishes on every tuple of basis elements of matching
//! parity. `c_{k,l}` is therefore the rank of the matrix whose rows are the
//! spanning left combs of `P_{k,l}` and whose columns are pairs
//! (basis tuple, output coordinate).

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use chrono::{DateTime, SecondsFormat, Utc};
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::algebra::{Parity, StructureSuperalgebra, SuperElement};
use crate::error::{Error, Result};
use crate::numeric::{BigRat, Echelon, SparseMat, SparseRow};
use crate::perm;
use crate::poly::{spanning_monomials, BracketPoly, BracketTree, SpanningStrategy};

pub const DEFAULT_MAX_DEGREE: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodimConfig {
    /// Largest `k + l` accepted; `(k+l)!` rows are generated.
    pub max_degree: usize,
    pub strategy: SpanningStrategy,
}

impl Default for CodimConfig {
    fn default() -> Self {
        CodimConfig {
            max_degree: DEFAULT_MAX_DEGREE,
            strategy: SpanningStrategy::Full,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CodimRequest {
    pub algebra_id: String,
    pub k: usize,
    pub l: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodimRecord {
    pub request: CodimRequest,
    pub value: usize,
    pub n_rows: usize,
    pub n_cols: usize,
    pub timestamp: DateTime<Utc>,
}

impl CodimRecord {
    fn validate(&self) -> std::result::Result<(), String> {
        let CodimRequest { k, l, .. } = self.request;
        if k + l == 0 {
            return Err("k + l must be at least 1".into());
        }
        if self.value > self.n_rows.min(self.n_cols) {
            return Err(format!(
                "value {} exceeds matrix shape {}x{}",
                self.value, self.n_rows, self.n_cols
            ));
        }
        if k + l <= 34 && self.value as u128 > perm::factorial(k + l) {
            return Err(format!("value {} exceeds ({})!", self.value, k + l));
        }
        Ok(())
    }

    /// `algebra_id k l value n_rows n_cols iso8601_timestamp`
    pub fn to_line(&self) -> String {
        format!(
            "{} {} {} {} {} {} {}",
            self.request.algebra_id,
            self.request.k,
            self.request.l,
            self.value,
            self.n_rows,
            self.n_cols,
            self.timestamp.to_rfc3339_opts(SecondsFormat::Secs, true)
        )
    }

    pub fn from_line(line: &str, lineno: usize) -> Result<Self> {
        let err = |msg: String| Error::Cache { line: lineno, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 7 {
            return Err(err(format!("expected 7 fields, found {}", fields.len())));
        }
        let num = |s: &str, what: &str| {
            s.parse::<usize>()
                .map_err(|_| err(format!("bad {what} `{s}`")))
        };
        let record = CodimRecord {
            request: CodimRequest {
                algebra_id: fields[0].to_string(),
                k: num(fields[1], "k")?,
                l: num(fields[2], "l")?,
            },
            value: num(fields[3], "value")?,
            n_rows: num(fields[4], "n_rows")?,
            n_cols: num(fields[5], "n_cols")?,
            timestamp: DateTime::parse_from_rfc3339(fields[6])
                .map_err(|e| err(format!("bad timestamp: {e}")))?
                .with_timezone(&Utc),
        };
        record.validate().map_err(err)?;
        Ok(record)
    }
}

impl fmt::Display for CodimRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "c_{{{},{}}}({}) = {}  [{}x{} matrix]",
            self.request.k, self.request.l, self.request.algebra_id, self.value, self.n_rows, self.n_cols
        )
    }
}

/// Line-oriented store of computed codimensions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CodimCache {
    records: BTreeMap<CodimRequest, CodimRecord>,
}

impl CodimCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, req: &CodimRequest) -> Option<&CodimRecord> {
        self.records.get(req)
    }

    pub fn insert(&mut self, record: CodimRecord) {
        self.records.insert(record.request.clone(), record);
    }

    pub fn records(&self) -> impl Iterator<Item = &CodimRecord> {
        self.records.values()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cache = CodimCache::new();
        for (i, line) in text.lines().enumerate() {
            let line_trim = line.trim();
            if line_trim.is_empty() || line_trim.starts_with('#') {
                continue;
            }
            cache.insert(CodimRecord::from_line(line_trim, i + 1)?);
        }
        Ok(cache)
    }

    pub fn to_text(&self) -> String {
        self.records.values().map(|r| r.to_line() + "\n").collect()
    }

    /// Loads a cache file; a missing file is an empty cache.
    pub fn load(path: &Path) -> Result<Self> {
        match std::fs::read_to_string(path) {
            Ok(text) => Self::parse(&text),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Self::new()),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes to a sibling temporary file and renames it over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let mut f = std::fs::File::create(&tmp)?;
            f.write_all(self.to_text().as_bytes())?;
            f.sync_all()?;
        }
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Outcome of an identity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityVerdict {
    Identity,
    /// A basis assignment (basis index per variable) with a nonzero value.
    NotIdentity {
        assignment: Vec<usize>,
        value: Vec<BigRat>,
    },
}

impl IdentityVerdict {
    pub fn is_identity(&self) -> bool {
        matches!(self, IdentityVerdict::Identity)
    }
}

/// Column layout for a variable context: each variable ranges over the basis
/// elements of its parity, tuples in lexicographic order (first variable most
/// significant), then the output coordinate.
#[derive(Clone, Debug)]
struct ColumnLayout {
    choices: Vec<Vec<usize>>,
    weights: Vec<usize>,
    n_tuples: usize,
    dim: usize,
}

impl ColumnLayout {
    fn new(alg: &StructureSuperalgebra, parities: &[Parity]) -> Self {
        let choices: Vec<Vec<usize>> = parities.iter().map(|p| alg.basis_of_parity(*p)).collect();
        let mut weights = vec![0; parities.len()];
        let mut w = 1usize;
        for i in (0..parities.len()).rev() {
            weights[i] = w;
            w *= choices[i].len();
        }
        ColumnLayout {
            choices,
            weights,
            n_tuples: w,
            dim: alg.dim(),
        }
    }

    fn n_cols(&self) -> usize {
        self.n_tuples * self.dim
    }

    fn decode(&self, tuple: usize) -> Vec<usize> {
        self.choices
            .iter()
            .zip(&self.weights)
            .map(|(ch, w)| ch[(tuple / w) % ch.len()])
            .collect()
    }
}

/// The evaluation row of the left comb `order[0] order[1] … order[n-1]`.
///
/// Depth-first over basis choices in comb order so that prefixes are shared;
/// a vanishing prefix prunes its whole subtree.
fn comb_row(alg: &StructureSuperalgebra, layout: &ColumnLayout, order: &[usize]) -> SparseRow {
    let mut entries: SparseRow = Vec::new();
    let first = order[0];
    for (pos, &b) in layout.choices[first].iter().enumerate() {
        let v = alg.unit(b);
        comb_dfs(alg, layout, order, 1, v, pos * layout.weights[first], &mut entries);
    }
    entries.sort_by_key(|(c, _)| *c);
    entries
}

fn comb_dfs(
    alg: &StructureSuperalgebra,
    layout: &ColumnLayout,
    order: &[usize],
    depth: usize,
    value: Vec<BigRat>,
    tuple: usize,
    out: &mut SparseRow,
) {
    if depth == order.len() {
        for (k, c) in value.into_iter().enumerate() {
            if !c.is_zero() {
                out.push((tuple * layout.dim + k, c));
            }
        }
        return;
    }
    let var = order[depth];
    for (pos, &b) in layout.choices[var].iter().enumerate() {
        let next = alg.bracket_with_basis(&value, b);
        if next.iter().all(BigRat::is_zero) {
            continue;
        }
        comb_dfs(
            alg,
            layout,
            order,
            depth + 1,
            next,
            tuple + pos * layout.weights[var],
            out,
        );
    }
}

fn comb_order(tree: &BracketTree) -> Vec<usize> {
    tree.leaves().collect()
}

pub struct CodimEngine {
    algebra: Arc<StructureSuperalgebra>,
    config: CodimConfig,
    cache: CodimCache,
}

impl CodimEngine {
    pub fn new(algebra: Arc<StructureSuperalgebra>) -> Self {
        Self::with_config(algebra, CodimConfig::default())
    }

    pub fn with_config(algebra: Arc<StructureSuperalgebra>, config: CodimConfig) -> Self {
        CodimEngine {
            algebra,
            config,
            cache: CodimCache::new(),
        }
    }

    pub fn algebra(&self) -> &Arc<StructureSuperalgebra> {
        &self.algebra
    }

    pub fn config(&self) -> CodimConfig {
        self.config
    }

    pub fn cache(&self) -> &CodimCache {
        &self.cache
    }

    pub fn set_cache(&mut self, cache: CodimCache) {
        self.cache = cache;
    }

    pub fn into_cache(self) -> CodimCache {
        self.cache
    }

    fn guard(&self, k: usize, l: usize) -> Result<()> {
        if k + l == 0 {
            return Err(Error::Precondition("k + l must be at least 1".into()));
        }
        if k + l > self.config.max_degree {
            return Err(Error::Ceiling(format!(
                "k + l = {} exceeds the configured maximum {} ({}! rows)",
                k + l,
                self.config.max_degree,
                k + l
            )));
        }
        Ok(())
    }

    fn context_parities(k: usize, l: usize) -> Vec<Parity> {
        let mut p = vec![Parity::Even; k];
        p.extend(std::iter::repeat_n(Parity::Odd, l));
        p
    }

    pub fn evaluation_matrix(&self, k: usize, l: usize) -> Result<SparseMat> {
        self.evaluation_matrix_with(k, l, self.config.strategy)
    }

    /// Rows: spanning left combs of `P_{k,l}` in permutation order. Columns:
    /// `tuple_index · dim + output_coordinate`.
    pub fn evaluation_matrix_with(&self, k: usize, l: usize, strategy: SpanningStrategy) -> Result<SparseMat> {
        self.guard(k, l)?;
        let parities = Self::context_parities(k, l);
        let layout = ColumnLayout::new(&self.algebra, &parities);
        let monomials = spanning_monomials(k, l, strategy)?;
        let rows: Vec<SparseRow> = monomials
            .par_iter()
            .map(|t| comb_row(&self.algebra, &layout, &comb_order(t)))
            .collect();
        Ok(SparseMat::from_rows(layout.n_cols(), rows))
    }

    /// Computes `c_{k,l}` without consulting or filling the cache.
    pub fn compute(&self, k: usize, l: usize, strategy: SpanningStrategy) -> Result<CodimRecord> {
        let m = self.evaluation_matrix_with(k, l, strategy)?;
        Ok(CodimRecord {
            request: CodimRequest {
                algebra_id: self.algebra.id().to_string(),
                k,
                l,
            },
            value: m.rank(),
            n_rows: m.n_rows(),
            n_cols: m.n_cols(),
            timestamp: now_secs(),
        })
    }

    /// `c_{k,l}`, served from the cache when present.
    pub fn codim_record(&mut self, k: usize, l: usize) -> Result<CodimRecord> {
        let req = CodimRequest {
            algebra_id: self.algebra.id().to_string(),
            k,
            l,
        };
        if let Some(r) = self.cache.get(&req) {
            return Ok(r.clone());
        }
        let record = self.compute(k, l, self.config.strategy)?;
        self.cache.insert(record.clone());
        Ok(record)
    }

    pub fn codim(&mut self, k: usize, l: usize) -> Result<usize> {
        Ok(self.codim_record(k, l)?.value)
    }

    /// `c_n^gr = Σ_k C(n,k) c_{k,n−k}`.
    pub fn total_codim(&mut self, n: usize) -> Result<BigUint> {
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        if n > self.config.max_degree {
            return Err(Error::Ceiling(format!(
                "n = {n} exceeds the configured maximum {}",
                self.config.max_degree
            )));
        }
        let mut total = BigUint::from(0u32);
        for k in 0..=n {
            let c = self.codim(k, n - k)?;
            total += binomial(n, k) * BigUint::from(c);
        }
        Ok(total)
    }

    /// The evaluation row of an arbitrary multilinear polynomial, in the
    /// column layout of its own variable context. Computed by rewriting into
    /// left combs and summing comb rows.
    pub fn evaluation_row(&self, p: &BracketPoly) -> Result<SparseRow> {
        if p.vars().is_empty() {
            return Err(Error::EmptyVariableList);
        }
        let layout = ColumnLayout::new(&self.algebra, &p.parities());
        let normal = p.to_left_normed();
        let terms: Vec<(&BracketTree, &BigRat)> = normal.terms().collect();
        let rows: Vec<(SparseRow, BigRat)> = terms
            .par_iter()
            .map(|(t, c)| (comb_row(&self.algebra, &layout, &comb_order(t)), (*c).clone()))
            .collect();
        let mut acc: BTreeMap<usize, BigRat> = BTreeMap::new();
        for (row, c) in rows {
            for (col, v) in row {
                *acc.entry(col).or_insert_with(BigRat::zero) += v * &c;
            }
        }
        Ok(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    /// Whether `p` vanishes on every basis tuple; otherwise the first
    /// (lexicographic) witnessing tuple and its value.
    pub fn is_graded_identity(&self, p: &BracketPoly) -> Result<IdentityVerdict> {
        let row = self.evaluation_row(p)?;
        let layout = ColumnLayout::new(&self.algebra, &p.parities());
        let Some(&(col, _)) = row.first() else {
            return Ok(IdentityVerdict::Identity);
        };
        let tuple = col / layout.dim;
        let mut value = vec![BigRat::zero(); layout.dim];
        for (c, v) in row.iter().filter(|(c, _)| c / layout.dim == tuple) {
            value[c % layout.dim] = v.clone();
        }
        Ok(IdentityVerdict::NotIdentity {
            assignment: layout.decode(tuple),
            value,
        })
    }

    /// Identity test by direct substitution of every basis tuple, without
    /// any rewriting. Slow; kept as an independent check.
    pub fn is_graded_identity_by_substitution(&self, p: &BracketPoly) -> Result<IdentityVerdict> {
        let layout = ColumnLayout::new(&self.algebra, &p.parities());
        for tuple in 0..layout.n_tuples {
            let assignment = layout.decode(tuple);
            let values: Vec<SuperElement> = assignment
                .iter()
                .map(|&b| SuperElement::basis(&self.algebra, b))
                .collect();
            let v = p.evaluate(&values)?;
            if !v.is_zero() {
                return Ok(IdentityVerdict::NotIdentity {
                    assignment,
                    value: v.into_coords(),
                });
            }
        }
        Ok(IdentityVerdict::Identity)
    }

    /// Dimension of the span of the evaluations of `σ·p` for all
    /// permutations `σ` of the listed same-parity variables; a lower bound
    /// for the codimension of `p`'s degree.
    pub fn orbit_rank(&self, p: &BracketPoly, vars: &[usize]) -> Result<usize> {
        let identity: Vec<usize> = (0..p.vars().len()).collect();
        if vars.iter().any(|&v| v >= identity.len()) {
            return Err(Error::UnknownVariable("orbit variable out of range".into()));
        }
        let mut echelon = Echelon::default();
        for sigma in perm::all(vars.len()) {
            let mut map = identity.clone();
            for (slot, &target) in sigma.iter().enumerate() {
                map[vars[slot]] = vars[target];
            }
            echelon.insert(self.evaluation_row(&p.permute(&map))?);
        }
        Ok(echelon.rank())
    }
}

/// Current time truncated to whole seconds, the resolution stored on disk.
fn now_secs() -> DateTime<Utc> {
    DateTime::from_timestamp(Utc::now().timestamp(), 0).expect("current time is representable")
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_b2, build_sl2};
    use crate::poly::{parse_poly, standard_context};

    fn engine() -> CodimEngine {
        CodimEngine::new(Arc::new(build_b2()))
    }

    #[test]
    fn small_matrices() {
        let e = engine();
        let m = e.evaluation_matrix(1, 0).unwrap();
        assert_eq!((m.n_rows(), m.n_cols()), (1, 21));
        assert_eq!(m.rank(), 1);

        let m = e.evaluation_matrix(2, 0).unwrap();
        assert_eq!((m.n_rows(), m.n_cols()), (2, 63));
        let rows = m.rows();
        let negated: SparseRow = rows[0].iter().map(|(c, v)| (*c, -v)).collect();
        assert_eq!(rows[1], negated);
        assert!(!rows[0].is_empty());

        let m = e.evaluation_matrix(0, 2).unwrap();
        assert_eq!((m.n_rows(), m.n_cols()), (2, 112));
        let rows = m.rows();
        assert_eq!(rows[0], rows[1]);
    }

    #[test]
    fn tiny_codims() {
        let mut e = engine();
        assert_eq!(e.codim(1, 0).unwrap(), 1);
        assert_eq!(e.codim(0, 1).unwrap(), 1);
        assert_eq!(e.codim(2, 0).unwrap(), 1);
        assert_eq!(e.total_codim(1).unwrap(), BigUint::from(2u32));
        let c02 = e.codim(0, 2).unwrap();
        let c11 = e.codim(1, 1).unwrap();
        let c20 = e.codim(2, 0).unwrap();
        assert_eq!(e.total_codim(2).unwrap(), BigUint::from(c02 + 2 * c11 + c20));
        assert_eq!(e.cache().len(), 5);
    }

    #[test]
    fn ceiling_and_preconditions() {
        let mut e = engine();
        assert!(matches!(e.codim(5, 3), Err(Error::Ceiling(_))));
        assert!(matches!(e.total_codim(9), Err(Error::Ceiling(_))));
        assert!(matches!(e.codim(0, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn identities_and_witnesses() {
        let e = engine();
        let sym = parse_poly("vars x1:even x2:even\n(x1 x2)\n(x2 x1)\n").unwrap();
        assert!(e.is_graded_identity(&sym).unwrap().is_identity());

        let word = parse_poly("vars x1:even x2:even\n(x1 x2)\n").unwrap();
        match e.is_graded_identity(&word).unwrap() {
            IdentityVerdict::NotIdentity { assignment, value } => {
                // lexicographically first nonzero pair is (e, f) ↦ h
                assert_eq!(assignment, vec![0, 1]);
                assert_eq!(value, build_b2().unit(2));
            }
            IdentityVerdict::Identity => panic!("x1x2 is not an identity"),
        }

        let four = BracketPoly::left_normed_word(standard_context(4, 0))
            .unwrap()
            .alt(&[0, 1, 2, 3])
            .unwrap();
        assert!(e.is_graded_identity(&four).unwrap().is_identity());
        assert!(e.is_graded_identity_by_substitution(&four).unwrap().is_identity());
    }

    #[test]
    fn substitution_route_agrees() {
        let e = engine();
        let p = parse_poly("vars x1:even y1:odd y2:odd\n(x1 (y1 y2))\n-2 (y2 x1 y1)\n").unwrap();
        assert_eq!(
            e.is_graded_identity(&p).unwrap(),
            e.is_graded_identity_by_substitution(&p).unwrap()
        );
    }

    #[test]
    fn sl2_has_no_odd_part() {
        let mut e = CodimEngine::new(Arc::new(build_sl2()));
        assert_eq!(e.codim(0, 1).unwrap(), 0);
        assert_eq!(e.codim(3, 0).unwrap(), 2);
    }

    #[test]
    fn orbit_rank_bounded_by_codim() {
        let mut e = engine();
        let g = BracketPoly::left_normed_word(standard_context(4, 0))
            .unwrap()
            .alt(&[1, 2, 3])
            .unwrap();
        let r = e.orbit_rank(&g, &[1, 2, 3]).unwrap();
        assert!(r >= 1);
        assert!(r <= e.codim(4, 0).unwrap());
    }

    #[test]
    fn cache_roundtrip_and_validation() {
        let mut e = engine();
        e.codim(1, 1).unwrap();
        e.codim(2, 1).unwrap();
        let text = e.cache().to_text();
        let back = CodimCache::parse(&text).unwrap();
        assert_eq!(&back, e.cache());

        assert!(CodimCache::parse("").unwrap().is_empty());

        let bad = "b2 1 1 3 2 28 2026-01-01T00:00:00Z\n";
        assert!(matches!(CodimCache::parse(bad), Err(Error::Cache { line: 1, .. })));
        let bad = "# header\nb2 1 1 1 2 28\n";
        assert!(matches!(CodimCache::parse(bad), Err(Error::Cache { line: 2, .. })));
    }

    #[test]
    fn cache_file_io() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("codim.cache");
        assert!(CodimCache::load(&path).unwrap().is_empty());
        let mut e = engine();
        e.codim(2, 0).unwrap();
        e.cache().save(&path).unwrap();
        let loaded = CodimCache::load(&path).unwrap();
        assert_eq!(&loaded, e.cache());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 4), BigUint::from(0u32));
    }
}
