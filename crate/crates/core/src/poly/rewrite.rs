//! Rewriting bracket trees into left combs with the super-Jacobi identity.
//!
//! For a left comb `u` and a right factor `[v, w]` with `w` a single
//! variable,
//!
//! `[u, [v, w]] = [[u, v], w] − (−1)^{|v||w|} [[u, w], v]`,
//!
//! which follows from `x(yz) = (xy)z + (−1)^{|x||y|} y(xz)` and
//! super-anticommutativity. Both right-hand brackets have a strictly smaller
//! right factor, so the recursion terminates.

use std::collections::BTreeMap;

use super::tree::{BracketTree, Shape, TreeRef};
use crate::algebra::Parity;
use crate::numeric::BigRat;

type Combination = BTreeMap<BracketTree, BigRat>;

fn accumulate(into: &mut Combination, tree: BracketTree, c: BigRat) {
    if c.is_zero() {
        return;
    }
    let entry = into.entry(tree).or_insert_with(BigRat::zero);
    *entry += c;
}

fn prune(mut c: Combination) -> Combination {
    c.retain(|_, v| !v.is_zero());
    c
}

fn tree_parity(t: TreeRef<'_>, parities: &[Parity]) -> Parity {
    t.leaves().fold(Parity::Even, |acc, v| acc.combine(parities[v]))
}

pub(crate) fn left_normed_combination(t: &BracketTree, parities: &[Parity]) -> Combination {
    prune(normalize(t.root(), parities))
}

fn normalize(t: TreeRef<'_>, parities: &[Parity]) -> Combination {
    match t.shape() {
        Shape::Leaf(_) => {
            let mut c = Combination::new();
            c.insert(t.to_tree(), BigRat::one());
            c
        }
        Shape::Node(l, r) => {
            let left = normalize(l, parities);
            let right = normalize(r, parities);
            let mut out = Combination::new();
            for (u, cu) in &left {
                for (v, cv) in &right {
                    let coeff = cu * cv;
                    for (comb, c) in bracket_combs(u, v, parities) {
                        accumulate(&mut out, comb, c * &coeff);
                    }
                }
            }
            out
        }
    }
}

/// `[u, v]` for left combs `u`, `v`, as a combination of left combs.
fn bracket_combs(u: &BracketTree, v: &BracketTree, parities: &[Parity]) -> Combination {
    let mut out = Combination::new();
    match v.shape() {
        Shape::Leaf(_) => {
            out.insert(BracketTree::node(u, v), BigRat::one());
        }
        Shape::Node(v_head, w) => {
            // v is a left comb, so its right child is a leaf
            let w_tree = w.to_tree();
            let v_head = v_head.to_tree();
            for (t, c) in bracket_combs(u, &v_head, parities) {
                accumulate(&mut out, BracketTree::node(&t, &w_tree), c);
            }
            let sign = tree_parity(v_head.root(), parities).koszul(tree_parity(w, parities));
            let uw = BracketTree::node(u, &w_tree);
            for (t, c) in bracket_combs(&uw, &v_head, parities) {
                accumulate(&mut out, t, c * BigRat::from_int(-sign));
            }
        }
    }
    out
}
