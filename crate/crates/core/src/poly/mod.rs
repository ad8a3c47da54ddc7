//! Multilinear graded Lie superpolynomials.
//!
//! A [`BracketPoly`] lives in a fixed variable context (names with parities)
//! and is a rational combination of bracket trees in which every variable
//! occurs exactly once.

mod parse;
mod rewrite;
mod tree;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{Parity, StructureSuperalgebra, SuperElement};
use crate::error::{Error, Result};
use crate::numeric::BigRat;
use crate::perm;

pub use parse::parse_poly;
pub use tree::{BracketTree, Shape, TreeRef};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarDecl {
    pub name: String,
    pub parity: Parity,
}

impl VarDecl {
    pub fn new(name: impl Into<String>, parity: Parity) -> Self {
        VarDecl {
            name: name.into(),
            parity,
        }
    }
}

/// The context `x1..xk` (even) followed by `y1..yl` (odd).
pub fn standard_context(k: usize, l: usize) -> Vec<VarDecl> {
    (1..=k)
        .map(|i| VarDecl::new(format!("x{i}"), Parity::Even))
        .chain((1..=l).map(|i| VarDecl::new(format!("y{i}"), Parity::Odd)))
        .collect()
}

/// Which left combs span `P_{k,l}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SpanningStrategy {
    /// All `(k+l)!` left combs.
    #[default]
    Full,
    /// The `(k+l−1)!` left combs starting with variable 0.
    FirstVariableFixed,
}

/// Left combs over the variable context `0..n`, one per permutation, in
/// lexicographic order of the permutation.
pub fn spanning_monomials(k: usize, l: usize, strategy: SpanningStrategy) -> Result<Vec<BracketTree>> {
    let n = k + l;
    if n == 0 {
        return Err(Error::EmptyVariableList);
    }
    Ok(perm::all(n)
        .into_iter()
        .filter(|p| strategy == SpanningStrategy::Full || p[0] == 0)
        .map(|p| BracketTree::left_normed(&p).expect("nonempty"))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketPoly {
    vars: Vec<VarDecl>,
    terms: BTreeMap<BracketTree, BigRat>,
}

impl BracketPoly {
    pub fn zero(vars: Vec<VarDecl>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        Ok(BracketPoly {
            vars,
            terms: BTreeMap::new(),
        })
    }

    pub fn monomial(vars: Vec<VarDecl>, tree: BracketTree) -> Result<Self> {
        let mut p = BracketPoly::zero(vars)?;
        p.add_term(tree, BigRat::one())?;
        Ok(p)
    }

    /// A single variable as a polynomial.
    pub fn variable(name: impl Into<String>, parity: Parity) -> Self {
        BracketPoly::monomial(vec![VarDecl::new(name, parity)], BracketTree::leaf(0))
            .expect("one variable")
    }

    /// The left-normed monomial over the whole context, in context order.
    pub fn left_normed_word(vars: Vec<VarDecl>) -> Result<Self> {
        let order: Vec<usize> = (0..vars.len()).collect();
        let tree = BracketTree::left_normed(&order)?;
        BracketPoly::monomial(vars, tree)
    }

    pub fn add_term(&mut self, tree: BracketTree, coeff: BigRat) -> Result<()> {
        if !tree.is_multilinear_in(self.vars.len()) {
            return Err(Error::NotMultilinear);
        }
        self.add_term_unchecked(tree, coeff);
        Ok(())
    }

    fn add_term_unchecked(&mut self, tree: BracketTree, coeff: BigRat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(tree) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[VarDecl] {
        &self.vars
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.vars.iter().map(|v| v.name.as_str()).collect()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn var_indices(&self, names: &[&str]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.var_index(n)).collect()
    }

    pub fn parities(&self) -> Vec<Parity> {
        self.vars.iter().map(|v| v.parity).collect()
    }

    /// Counts of (even, odd) variables.
    pub fn degree(&self) -> (usize, usize) {
        let odd = self.vars.iter().filter(|v| v.parity == Parity::Odd).count();
        (self.vars.len() - odd, odd)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BracketTree, &BigRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Parity of every monomial: the sum of all variable parities.
    pub fn parity(&self) -> Parity {
        self.vars
            .iter()
            .fold(Parity::Even, |acc, v| acc.combine(v.parity))
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        let mut out = BracketPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (t, v) in &self.terms {
            out.add_term_unchecked(t.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &BracketPoly) -> Result<Self> {
        if self.vars != other.vars {
            return Err(Error::Precondition(
                "polynomials live in different variable contexts".into(),
            ));
        }
        let mut out = self.clone();
        for (t, v) in &other.terms {
            out.add_term_unchecked(t.clone(), v.clone());
        }
        Ok(out)
    }

    /// Applies the substitution `v ↦ map[v]` to every term (a permutation of
    /// the variable slots).
    pub fn permute(&self, map: &[usize]) -> Self {
        let mut out = BracketPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (t, v) in &self.terms {
            out.add_term_unchecked(t.relabel(map), v.clone());
        }
        out
    }

    fn check_operator_vars(&self, vars: &[usize]) -> Result<()> {
        for (i, &v) in vars.iter().enumerate() {
            if v >= self.vars.len() {
                return Err(Error::UnknownVariable(format!("#{v}")));
            }
            if vars[..i].contains(&v) {
                return Err(Error::DuplicateVariable(self.vars[v].name.clone()));
            }
        }
        if let Some(&first) = vars.first() {
            let p = self.vars[first].parity;
            if vars.iter().any(|&v| self.vars[v].parity != p) {
                return Err(Error::MixedParity);
            }
        }
        Ok(())
    }

    fn permutation_sum(&self, vars: &[usize], signed: bool) -> Result<Self> {
        self.check_operator_vars(vars)?;
        let mut out = BracketPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        let identity: Vec<usize> = (0..self.vars.len()).collect();
        for sigma in perm::all(vars.len()) {
            let mut map = identity.clone();
            for (slot, &target) in sigma.iter().enumerate() {
                map[vars[slot]] = vars[target];
            }
            let s = if signed { perm::sign(&sigma) } else { 1 };
            let s = BigRat::from_int(s);
            for (t, v) in &self.terms {
                out.add_term_unchecked(t.relabel(&map), v * &s);
            }
        }
        Ok(out)
    }

    /// Alternation `Σ_σ sgn(σ) · p(v_σ(1), …, v_σ(m))` over the listed slots.
    pub fn alt(&self, vars: &[usize]) -> Result<Self> {
        self.permutation_sum(vars, true)
    }

    /// Symmetrization `Σ_σ p(v_σ(1), …, v_σ(m))` over the listed slots.
    pub fn sym(&self, vars: &[usize]) -> Result<Self> {
        self.permutation_sum(vars, false)
    }

    pub fn alt_named(&self, names: &[&str]) -> Result<Self> {
        self.alt(&self.var_indices(names)?)
    }

    pub fn sym_named(&self, names: &[&str]) -> Result<Self> {
        self.sym(&self.var_indices(names)?)
    }

    fn check_assignment(&self, assignment: &[SuperElement]) -> Result<Arc<StructureSuperalgebra>> {
        if assignment.len() != self.vars.len() {
            return Err(Error::Precondition(format!(
                "{} values for {} variables",
                assignment.len(),
                self.vars.len()
            )));
        }
        let alg = match assignment.first() {
            Some(x) => Arc::clone(x.algebra()),
            None => return Err(Error::EmptyVariableList),
        };
        for (decl, x) in self.vars.iter().zip(assignment) {
            if x.algebra().as_ref() != alg.as_ref() {
                return Err(Error::AlgebraMismatch {
                    expected: alg.id().to_string(),
                    found: x.algebra().id().to_string(),
                });
            }
            if let Some(p) = x.homogeneous_parity()? {
                if p != decl.parity {
                    return Err(Error::ParityMismatch {
                        var: decl.name.clone(),
                        expected: decl.parity,
                        found: p,
                    });
                }
            }
        }
        Ok(alg)
    }

    /// Substitutes `assignment[v]` for each variable `v` and folds every
    /// tree with the bracket. Terms are evaluated in parallel.
    pub fn evaluate(&self, assignment: &[SuperElement]) -> Result<SuperElement> {
        let alg = self.check_assignment(assignment)?;
        let values: Vec<&[BigRat]> = assignment.iter().map(|x| x.coords()).collect();
        let terms: Vec<(&BracketTree, &BigRat)> = self.terms.iter().collect();
        let dim = alg.dim();
        let total = terms
            .par_iter()
            .map(|(t, c)| {
                let v = eval_tree(&alg, t.root(), &values);
                v.into_iter().map(|x| x * *c).collect::<Vec<_>>()
            })
            .reduce(
                || vec![BigRat::zero(); dim],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            );
        SuperElement::from_coords(&alg, total)
    }

    /// Evaluation by variable name.
    pub fn evaluate_named(&self, assignment: &[(&str, SuperElement)]) -> Result<SuperElement> {
        let mut slots: Vec<Option<SuperElement>> = vec![None; self.vars.len()];
        for (name, x) in assignment {
            slots[self.var_index(name)?] = Some(x.clone());
        }
        let values = slots
            .into_iter()
            .zip(&self.vars)
            .map(|(x, d)| x.ok_or_else(|| Error::Precondition(format!("variable `{}` unassigned", d.name))))
            .collect::<Result<Vec<_>>>()?;
        self.evaluate(&values)
    }

    /// Brackets two polynomials in disjoint variable contexts: `[self, other]`.
    pub fn bracket(&self, other: &BracketPoly) -> Result<Self> {
        for v in &other.vars {
            if self.vars.iter().any(|w| w.name == v.name) {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        let offset = self.vars.len();
        let shift: Vec<usize> = (0..other.vars.len()).map(|i| i + offset).collect();
        let mut vars = self.vars.clone();
        vars.extend(other.vars.iter().cloned());
        let mut out = BracketPoly::zero(vars)?;
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                out.add_term_unchecked(BracketTree::node(t1, &t2.relabel(&shift)), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Replaces variable `var` by the polynomial `inner`.
    ///
    /// The new context is `inner`'s variables followed by the remaining
    /// variables of `self`. Inner names that collide with outer ones get a
    /// `'` suffix until unique.
    pub fn substitute(&self, var: usize, inner: &BracketPoly) -> Result<Self> {
        if var >= self.vars.len() {
            return Err(Error::UnknownVariable(format!("#{var}")));
        }
        if inner.parity() != self.vars[var].parity {
            return Err(Error::ParityMismatch {
                var: self.vars[var].name.clone(),
                expected: self.vars[var].parity,
                found: inner.parity(),
            });
        }
        let outer_rest: Vec<&VarDecl> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != var)
            .map(|(_, v)| v)
            .collect();
        let mut vars: Vec<VarDecl> = Vec::new();
        for v in &inner.vars {
            let mut name = v.name.clone();
            while outer_rest.iter().any(|w| w.name == name) || vars.iter().any(|w| w.name == name) {
                name.push('\'');
            }
            vars.push(VarDecl::new(name, v.parity));
        }
        let m = inner.vars.len();
        vars.extend(outer_rest.into_iter().cloned());

        // outer index i ≠ var maps to m + (position among the rest);
        // `var` itself maps to a placeholder past the end
        let placeholder = vars.len();
        let outer_map: Vec<usize> = (0..self.vars.len())
            .map(|i| match i.cmp(&var) {
                std::cmp::Ordering::Less => m + i,
                std::cmp::Ordering::Equal => placeholder,
                std::cmp::Ordering::Greater => m + i - 1,
            })
            .collect();

        let mut out = BracketPoly::zero(vars)?;
        for (t_out, c_out) in &self.terms {
            let relabelled = t_out.relabel(&outer_map);
            for (t_in, c_in) in &inner.terms {
                out.add_term_unchecked(relabelled.graft(placeholder, t_in), c_out * c_in);
            }
        }
        Ok(out)
    }

    /// Renames variables; `names` must cover the whole context.
    pub fn with_names(&self, names: &[&str]) -> Result<Self> {
        if names.len() != self.vars.len() {
            return Err(Error::Precondition("wrong number of names".into()));
        }
        let vars = self
            .vars
            .iter()
            .zip(names)
            .map(|(v, n)| VarDecl::new(*n, v.parity))
            .collect();
        let mut out = BracketPoly::zero(vars)?;
        out.terms = self.terms.clone();
        Ok(out)
    }

    /// An equivalent polynomial all of whose monomials are left combs.
    pub fn to_left_normed(&self) -> Self {
        let parities = self.parities();
        let mut out = BracketPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (t, c) in &self.terms {
            for (comb, k) in rewrite::left_normed_combination(t, &parities) {
                out.add_term_unchecked(comb, &k * c);
            }
        }
        out
    }
}

pub(crate) fn eval_tree(alg: &StructureSuperalgebra, t: TreeRef<'_>, values: &[&[BigRat]]) -> Vec<BigRat> {
    match t.shape() {
        Shape::Leaf(v) => values[v].to_vec(),
        Shape::Node(l, r) => {
            let lv = eval_tree(alg, l, values);
            if lv.iter().all(BigRat::is_zero) {
                return lv;
            }
            let rv = eval_tree(alg, r, values);
            alg.bracket_coords(&lv, &rv)
        }
    }
}

impl fmt::Display for BracketPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let decls: Vec<String> = self
            .vars
            .iter()
            .map(|v| format!("{}:{}", v.name, v.parity))
            .collect();
        writeln!(f, "vars {}", decls.join(" "))?;
        let names = self.var_names();
        for (t, c) in &self.terms {
            writeln!(f, "{c} {}", t.render(&names))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_b2;

    fn ctx(spec: &[(&str, Parity)]) -> Vec<VarDecl> {
        spec.iter().map(|(n, p)| VarDecl::new(*n, *p)).collect()
    }

    fn b2() -> Arc<StructureSuperalgebra> {
        Arc::new(build_b2())
    }

    #[test]
    fn alternation_of_xay() {
        use Parity::Even;
        let p = BracketPoly::left_normed_word(ctx(&[("x", Even), ("a", Even), ("y", Even)])).unwrap();
        let alt = p.alt_named(&["x", "y"]).unwrap();
        let expected = parse_poly("vars x:even a:even y:even\n1 (x a y)\n-1 (y a x)\n").unwrap();
        assert_eq!(alt, expected);
    }

    #[test]
    fn alternation_sizes() {
        let p = BracketPoly::left_normed_word(standard_context(4, 0)).unwrap();
        assert_eq!(p.alt(&[1, 2, 3]).unwrap().len(), 6);
        let once = p.alt(&[0, 1]).unwrap();
        let twice = once.alt(&[0, 1]).unwrap();
        assert_eq!(twice, once.scale(&BigRat::from_int(2)));
    }

    #[test]
    fn symmetrization() {
        let p = BracketPoly::left_normed_word(standard_context(2, 0)).unwrap();
        let s = p.sym(&[0, 1]).unwrap();
        let expected = parse_poly("vars x1:even x2:even\n(x1 x2)\n(x2 x1)\n").unwrap();
        assert_eq!(s, expected);
        assert_eq!(p.sym(&[1]).unwrap(), p);
    }

    #[test]
    fn operator_errors() {
        let p = BracketPoly::left_normed_word(standard_context(1, 1)).unwrap();
        assert!(matches!(p.alt(&[0, 1]), Err(Error::MixedParity)));
        assert!(matches!(p.alt_named(&["x1", "zz"]), Err(Error::UnknownVariable(_))));
        assert!(matches!(p.sym(&[0, 5]), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn evaluate_basic() {
        let alg = b2();
        let p = BracketPoly::left_normed_word(standard_context(2, 0)).unwrap();
        let e = SuperElement::named(&alg, "e");
        let f = SuperElement::named(&alg, "f");
        assert_eq!(p.evaluate(&[e.clone(), f.clone()]).unwrap(), SuperElement::named(&alg, "h"));
        let z = SuperElement::zero(&alg);
        assert!(p.evaluate(&[e.clone(), z]).unwrap().is_zero());
        let d = SuperElement::named(&alg, "d");
        assert!(matches!(p.evaluate(&[e, d]), Err(Error::ParityMismatch { .. })));
    }

    #[test]
    fn h_alt_efh_is_8h() {
        let alg = b2();
        let vars = ctx(&[
            ("x0", Parity::Even),
            ("x1", Parity::Even),
            ("x2", Parity::Even),
            ("x3", Parity::Even),
        ]);
        let p = BracketPoly::left_normed_word(vars).unwrap().alt(&[1, 2, 3]).unwrap();
        let v = p
            .evaluate_named(&[
                ("x0", SuperElement::named(&alg, "h")),
                ("x1", SuperElement::named(&alg, "e")),
                ("x2", SuperElement::named(&alg, "f")),
                ("x3", SuperElement::named(&alg, "h")),
            ])
            .unwrap();
        assert_eq!(v, SuperElement::named(&alg, "h").scale(&BigRat::from_int(8)));
    }

    #[test]
    fn spanning_sets() {
        use SpanningStrategy::*;
        assert_eq!(spanning_monomials(2, 0, Full).unwrap().len(), 2);
        assert_eq!(spanning_monomials(1, 1, Full).unwrap().len(), 2);
        assert_eq!(spanning_monomials(3, 0, Full).unwrap().len(), 6);
        assert_eq!(spanning_monomials(3, 1, FirstVariableFixed).unwrap().len(), 6);
        assert!(spanning_monomials(0, 0, Full).is_err());
        let names = ["x1", "x2"];
        let rendered: Vec<String> = spanning_monomials(2, 0, Full)
            .unwrap()
            .iter()
            .map(|t| t.render(&names))
            .collect();
        assert_eq!(rendered, vec!["(x1 x2)", "(x2 x1)"]);
    }

    #[test]
    fn jacobi_rewrite_even() {
        let p = parse_poly("vars x:even y:even z:even\n(x (y z))\n").unwrap();
        let expected = parse_poly("vars x:even y:even z:even\n(x y z)\n-1 (x z y)\n").unwrap();
        assert_eq!(p.to_left_normed(), expected);
        assert_eq!(expected.to_left_normed(), expected);
    }

    #[test]
    fn substitution_and_bracket() {
        let alg = b2();
        let outer = parse_poly("vars u:even v:even\n(u v)\n").unwrap();
        let inner = parse_poly("vars v:even w:even\n(v w)\n").unwrap();
        let s = outer.substitute(0, &inner).unwrap();
        assert_eq!(s.var_names(), vec!["v'", "w", "v"]);
        assert_eq!(s.to_string(), "vars v':even w:even v:even\n1 (v' w v)\n");
        let e = SuperElement::named(&alg, "e");
        let f = SuperElement::named(&alg, "f");
        let h = SuperElement::named(&alg, "h");
        // [[e, f], h] = [h, h] = 0; [[h, e], f] = 2h
        assert!(s.evaluate(&[e.clone(), f.clone(), h.clone()]).unwrap().is_zero());
        assert_eq!(
            s.evaluate(&[h.clone(), e.clone(), f.clone()]).unwrap(),
            h.scale(&BigRat::from_int(2))
        );

        let tail = BracketPoly::variable("t", Parity::Even);
        let b = outer.bracket(&tail).unwrap();
        assert_eq!(b.to_string(), "vars u:even v:even t:even\n1 (u v t)\n");
        assert!(outer.bracket(&BracketPoly::variable("u", Parity::Even)).is_err());
        let odd = BracketPoly::variable("y", Parity::Odd);
        assert!(matches!(outer.substitute(0, &odd), Err(Error::ParityMismatch { .. })));
    }
}
