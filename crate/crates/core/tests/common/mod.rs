#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use supercodim_core::algebra::Parity;
use supercodim_core::numeric::BigRat;
use supercodim_core::poly::{BracketPoly, BracketTree, VarDecl};

/// A context of `k` even then `l` odd variables named `a0..`, `b0..`.
pub fn context(k: usize, l: usize) -> Vec<VarDecl> {
    (0..k)
        .map(|i| VarDecl::new(format!("a{i}"), Parity::Even))
        .chain((0..l).map(|i| VarDecl::new(format!("b{i}"), Parity::Odd)))
        .collect()
}

/// A uniformly shaped random bracket tree on the given leaves.
pub fn random_tree<R: Rng>(rng: &mut R, leaves: &[usize]) -> BracketTree {
    if leaves.len() == 1 {
        return BracketTree::leaf(leaves[0]);
    }
    let split = rng.gen_range(1..leaves.len());
    BracketTree::node(&random_tree(rng, &leaves[..split]), &random_tree(rng, &leaves[split..]))
}

pub fn random_coeff<R: Rng>(rng: &mut R) -> BigRat {
    loop {
        let num = rng.gen_range(-5i64..=5);
        if num != 0 {
            return BigRat::ratio(num, rng.gen_range(1i64..=4)).unwrap();
        }
    }
}

/// A random multilinear polynomial with `terms` monomials over `vars`.
pub fn random_poly<R: Rng>(rng: &mut R, vars: Vec<VarDecl>, terms: usize) -> BracketPoly {
    let n = vars.len();
    let mut p = BracketPoly::zero(vars).unwrap();
    for _ in 0..terms {
        let mut leaves: Vec<usize> = (0..n).collect();
        leaves.shuffle(rng);
        let tree = random_tree(rng, &leaves);
        p.add_term(tree, random_coeff(rng)).unwrap();
    }
    p
}
