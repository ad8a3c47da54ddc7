//! Text syntax for polynomials.
//!
//! ```text
//! # comment
//! vars x1:even x2:even y1:odd
//! 1 (x1 x2 y1)
//! -1/2 (x2 (x1 y1))
//! ```
//!
//! `(a b c)` is the left-normed product `{{a,b},c}`; coefficients are
//! optional rationals (default 1).

use super::{BracketPoly, BracketTree, VarDecl};
use crate::error::{Error, Result};
use crate::numeric::BigRat;

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Word(&'a str),
}

fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        let is_sep = ch.is_whitespace() || ch == '(' || ch == ')';
        if is_sep {
            if let Some(s) = start.take() {
                out.push(Tok::Word(&line[s..i]));
            }
            match ch {
                '(' => out.push(Tok::Open),
                ')' => out.push(Tok::Close),
                _ => {}
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Tok::Word(&line[s..]));
    }
    out
}

struct Parser<'a, 'b> {
    toks: &'b [Tok<'a>],
    pos: usize,
    vars: &'b [VarDecl],
    line: usize,
}

impl Parser<'_, '_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<BracketTree> {
        match self.toks.get(self.pos) {
            Some(Tok::Word(w)) => {
                self.pos += 1;
                let idx = self
                    .vars
                    .iter()
                    .position(|v| v.name == *w)
                    .ok_or_else(|| self.err(format!("unknown variable `{w}`")))?;
                Ok(BracketTree::leaf(idx))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let mut acc = self.expr()?;
                loop {
                    match self.toks.get(self.pos) {
                        Some(Tok::Close) => {
                            self.pos += 1;
                            return Ok(acc);
                        }
                        Some(_) => {
                            let next = self.expr()?;
                            acc = BracketTree::node(&acc, &next);
                        }
                        None => return Err(self.err("unbalanced parentheses")),
                    }
                }
            }
            Some(Tok::Close) => Err(self.err("unexpected `)`")),
            None => Err(self.err("expected a monomial")),
        }
    }
}

pub fn parse_poly(text: &str) -> Result<BracketPoly> {
    let mut poly: Option<BracketPoly> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(decls) = content.strip_prefix("vars") {
            if poly.is_some() {
                return Err(Error::Parse {
                    line,
                    msg: "duplicate `vars` declaration".into(),
                });
            }
            let mut vars = Vec::new();
            for d in decls.split_whitespace() {
                let (name, parity) = d.split_once(':').ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("expected `name:parity`, got `{d}`"),
                })?;
                let parity = parity.parse().map_err(|e: Error| Error::Parse {
                    line,
                    msg: e.to_string(),
                })?;
                vars.push(VarDecl::new(name, parity));
            }
            poly = Some(BracketPoly::zero(vars).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?);
            continue;
        }
        let p = poly.as_mut().ok_or_else(|| Error::Parse {
            line,
            msg: "terms before `vars` declaration".into(),
        })?;
        let toks = tokenize(content);
        let mut pos = 0;
        let mut coeff = BigRat::one();
        if let Some(Tok::Word(w)) = toks.first() {
            let is_var = p.vars.iter().any(|v| v.name == *w);
            if !is_var {
                coeff = match *w {
                    "-" => BigRat::from_int(-1),
                    "+" => BigRat::one(),
                    _ => w.parse().map_err(|e: Error| Error::Parse {
                        line,
                        msg: e.to_string(),
                    })?,
                };
                pos = 1;
            }
        }
        let mut parser = Parser {
            toks: &toks,
            pos,
            vars: &p.vars,
            line,
        };
        let tree = parser.expr()?;
        if parser.pos != toks.len() {
            return Err(parser.err("trailing tokens after monomial"));
        }
        p.add_term(tree, coeff).map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
    }
    poly.ok_or(Error::Parse {
        line: 0,
        msg: "missing `vars` declaration".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_back() {
        let text = "vars x1:even x2:even y1:odd\n-1/2 (x2 (x1 y1))\n(x1 x2 y1)\n";
        let p = parse_poly(text).unwrap();
        assert_eq!(p.len(), 2);
        let again = parse_poly(&p.to_string()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn like_terms_combine() {
        let p = parse_poly("vars a:odd b:odd\n(a b)\n- (a b)\n").unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("vars x:even y:even\n(x x)\n", 2),
            ("vars x:even\n(x\n", 2),
            ("vars x:even y:even\n\n(x z)\n", 3),
            ("(x y)\n", 1),
            ("vars x:sideways\n", 1),
            ("vars x:even y:even\n(x y) y\n", 2),
        ];
        for (text, want) in cases {
            match parse_poly(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }
}
