//! Binary bracket trees stored as preorder token strings.
//!
//! Ordering and hashing of [`BracketTree`] are those of the preorder
//! serialization, so term tables sort deterministically.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Token {
    Node,
    Leaf(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BracketTree {
    tokens: Vec<Token>,
}

/// Borrowed view of a subtree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeRef<'a> {
    tokens: &'a [Token],
}

pub enum Shape<'a> {
    Leaf(usize),
    Node(TreeRef<'a>, TreeRef<'a>),
}

fn subtree_len(tokens: &[Token]) -> usize {
    let mut need = 1usize;
    for (i, t) in tokens.iter().enumerate() {
        match t {
            Token::Node => need += 1,
            Token::Leaf(_) => need -= 1,
        }
        if need == 0 {
            return i + 1;
        }
    }
    panic!("malformed bracket tree");
}

impl<'a> TreeRef<'a> {
    pub fn shape(self) -> Shape<'a> {
        match self.tokens[0] {
            Token::Leaf(v) => Shape::Leaf(v as usize),
            Token::Node => {
                let rest = &self.tokens[1..];
                let l = subtree_len(rest);
                Shape::Node(
                    TreeRef { tokens: &rest[..l] },
                    TreeRef { tokens: &rest[l..] },
                )
            }
        }
    }

    pub fn to_tree(self) -> BracketTree {
        BracketTree {
            tokens: self.tokens.to_vec(),
        }
    }

    pub fn leaves(self) -> impl Iterator<Item = usize> + 'a {
        self.tokens.iter().filter_map(|t| match t {
            Token::Leaf(v) => Some(*v as usize),
            Token::Node => None,
        })
    }

    pub fn is_leaf(self) -> bool {
        matches!(self.tokens[0], Token::Leaf(_))
    }
}

impl BracketTree {
    pub fn leaf(var: usize) -> Self {
        BracketTree {
            tokens: vec![Token::Leaf(var as u32)],
        }
    }

    pub fn node(left: &BracketTree, right: &BracketTree) -> Self {
        let mut tokens = Vec::with_capacity(1 + left.tokens.len() + right.tokens.len());
        tokens.push(Token::Node);
        tokens.extend_from_slice(&left.tokens);
        tokens.extend_from_slice(&right.tokens);
        BracketTree { tokens }
    }

    /// The left comb `{{…{v₁,v₂},…},vₙ}`.
    pub fn left_normed(vars: &[usize]) -> Result<Self> {
        let (first, rest) = vars.split_first().ok_or(Error::EmptyVariableList)?;
        let mut tokens = Vec::with_capacity(2 * vars.len() - 1);
        tokens.extend(std::iter::repeat_n(Token::Node, rest.len()));
        tokens.push(Token::Leaf(*first as u32));
        for v in rest {
            tokens.push(Token::Leaf(*v as u32));
        }
        Ok(BracketTree { tokens })
    }

    pub fn root(&self) -> TreeRef<'_> {
        TreeRef {
            tokens: &self.tokens,
        }
    }

    pub fn shape(&self) -> Shape<'_> {
        self.root().shape()
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        self.root().leaves()
    }

    pub fn num_leaves(&self) -> usize {
        self.tokens.len().div_ceil(2)
    }

    pub fn is_left_comb(&self) -> bool {
        // a left comb is all Node tokens followed by all Leaf tokens
        let n = self.num_leaves();
        self.tokens[..n - 1].iter().all(|t| *t == Token::Node)
            && self.tokens[n - 1..].iter().all(|t| matches!(t, Token::Leaf(_)))
    }

    /// Replaces every leaf `v` by `map[v]`.
    pub fn relabel(&self, map: &[usize]) -> Self {
        BracketTree {
            tokens: self
                .tokens
                .iter()
                .map(|t| match t {
                    Token::Leaf(v) => Token::Leaf(map[*v as usize] as u32),
                    Token::Node => Token::Node,
                })
                .collect(),
        }
    }

    /// Replaces the leaf `var` by `inner`.
    pub fn graft(&self, var: usize, inner: &BracketTree) -> Self {
        let mut tokens = Vec::with_capacity(self.tokens.len() + inner.tokens.len());
        for t in &self.tokens {
            match t {
                Token::Leaf(v) if *v as usize == var => tokens.extend_from_slice(&inner.tokens),
                other => tokens.push(*other),
            }
        }
        BracketTree { tokens }
    }

    /// Whether the leaves are exactly `0..n`, each once.
    pub fn is_multilinear_in(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for v in self.leaves() {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// Renders with variable names, flattening left spines:
    /// `{{x1,x2},y1}` prints as `(x1 x2 y1)`.
    pub fn render(&self, names: &[impl AsRef<str>]) -> String {
        let mut out = String::new();
        render_into(self.root(), names, &mut out);
        out
    }
}

fn render_into(t: TreeRef<'_>, names: &[impl AsRef<str>], out: &mut String) {
    match t.shape() {
        Shape::Leaf(v) => out.push_str(names[v].as_ref()),
        Shape::Node(..) => {
            // walk down the left spine collecting right children
            let mut rights = Vec::new();
            let mut cur = t;
            while let Shape::Node(l, r) = cur.shape() {
                rights.push(r);
                cur = l;
            }
            out.push('(');
            render_into(cur, names, out);
            for r in rights.into_iter().rev() {
                out.push(' ');
                render_into(r, names, out);
            }
            out.push(')');
        }
    }
}
