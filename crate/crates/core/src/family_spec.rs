//! A small textual grammar for matrices and families.
//!
//! ```text
//! family  := spec ("," spec)*
//! spec    := factor ("x" factor)*
//! factor  := "1(" k "," l ")" | "0(" k "," l ")"
//!          | "I(" k ")" | "Ic(" k ")" | "T(" k ")"
//!          | "Q3(t=" t ")" | "Q3z(t=" t ")"
//!          | "b01" | "[" row (";" row)* "]"
//!          | "lit:@" path | catalog-name
//! ```
//!
//! `Q3z(t=..)` is `Q3(t)` without its column of ones. A file path runs to
//! the next whitespace, so a product after a file literal needs a space
//! before the `x`. Commas split a family only outside brackets.

use std::fmt;
use std::path::PathBuf;

use crate::canon::{canonicalize, Configuration};
use crate::constructions::{catalog, Block, ProductExpr};
use crate::error::{Error, Result};
use crate::matrix::{parse_matrices, Matrix};

/// One factor of a spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Block(Block),
    Named(String),
    Q3 { t: usize, without_ones: bool },
    File(PathBuf),
}

/// A parsed product of factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spec {
    pub factors: Vec<Factor>,
}

impl Factor {
    fn block(&self) -> Result<Block> {
        Ok(match self {
            Factor::Block(b) => b.clone(),
            Factor::Named(n) => Block::Literal(catalog(n)?.config.matrix().clone()),
            Factor::Q3 { t, without_ones } => {
                let c = if *without_ones {
                    crate::constructions::q3t0(*t)?
                } else {
                    crate::constructions::q3t(*t)?
                };
                Block::Literal(c.matrix().clone())
            }
            Factor::File(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                let mut ms = parse_matrices(&text)?;
                if ms.len() != 1 {
                    return Err(Error::Parse(format!(
                        "{} holds {} matrices, expected one",
                        p.display(),
                        ms.len()
                    )));
                }
                Block::Literal(ms.remove(0))
            }
        })
    }
}

impl Spec {
    pub fn expr(&self) -> Result<ProductExpr> {
        ProductExpr::new(self.factors.iter().map(Factor::block).collect::<Result<_>>()?)
    }

    pub fn matrix(&self) -> Result<Matrix> {
        self.expr()?.evaluate()
    }

    pub fn configuration(&self) -> Result<Configuration> {
        canonicalize(&self.matrix()?)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Block(b) => write!(f, "{b}"),
            Factor::Named(n) => f.write_str(n),
            Factor::Q3 { t, without_ones: false } => write!(f, "Q3(t={t})"),
            Factor::Q3 { t, without_ones: true } => write!(f, "Q3z(t={t})"),
            Factor::File(p) => write!(f, "lit:@{}", p.display()),
        }
    }
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Short grammar reminder used in error messages.
pub const GRAMMAR_HINT: &str = "expected factors such as 1(k,l), 0(k,l), I(k), Ic(k), T(k), \
Q3(t=2), Q3z(t=2), b01, [10;01], lit:@file, or a catalog name, joined by `x`";

struct Lexer<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn eat(&mut self, p: &str) -> bool {
        if self.rest().starts_with(p) {
            self.pos += p.len();
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at position {} in `{}`; {GRAMMAR_HINT}",
            self.pos, self.s
        ))
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let r = self.rest();
        let n = r.find(|c: char| !f(c)).unwrap_or(r.len());
        self.pos += n;
        &r[..n]
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let d = self.take_while(|c| c.is_ascii_digit());
        d.parse().map_err(|_| self.err("expected a number"))
    }

    fn expect(&mut self, p: &str) -> Result<()> {
        self.skip_ws();
        if self.eat(p) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{p}`")))
        }
    }

    fn args(&mut self, n: usize) -> Result<Vec<usize>> {
        self.expect("(")?;
        let mut out = vec![self.number()?];
        for _ in 1..n {
            self.expect(",")?;
            out.push(self.number()?);
        }
        self.expect(")")?;
        Ok(out)
    }

    fn factor(&mut self) -> Result<Factor> {
        self.skip_ws();
        if self.eat("lit:@") {
            let p = self.take_while(|c| !c.is_whitespace());
            if p.is_empty() {
                return Err(self.err("empty file path"));
            }
            return Ok(Factor::File(PathBuf::from(p)));
        }
        if self.eat("[") {
            let body = self.take_while(|c| c != ']');
            self.expect("]")?;
            let rows: Vec<&str> = body.split(';').map(str::trim).collect();
            return Ok(Factor::Block(Block::Literal(Matrix::from_row_strs(&rows)?)));
        }
        let ident = self.take_while(|c| c.is_ascii_alphanumeric() && c != 'x');
        let has_args = self.rest().trim_start().starts_with('(');
        Ok(match (ident, has_args) {
            ("1", true) => {
                let a = self.args(2)?;
                Factor::Block(Block::Ones(a[0], a[1]))
            }
            ("0", true) => {
                let a = self.args(2)?;
                Factor::Block(Block::Zeros(a[0], a[1]))
            }
            ("I", true) => Factor::Block(Block::I(self.args(1)?[0])),
            ("Ic", true) => Factor::Block(Block::Ic(self.args(1)?[0])),
            ("T", true) => Factor::Block(Block::T(self.args(1)?[0])),
            ("Q3" | "Q3z", true) => {
                self.expect("(")?;
                self.expect("t")?;
                self.expect("=")?;
                let t = self.number()?;
                self.expect(")")?;
                Factor::Q3 {
                    t,
                    without_ones: ident == "Q3z",
                }
            }
            ("b01", false) => Factor::Block(Block::B01),
            ("", _) => return Err(self.err("expected a factor")),
            (name, false) => {
                catalog(name)?;
                Factor::Named(name.to_string())
            }
            (name, true) => return Err(self.err(&format!("`{name}` takes no arguments"))),
        })
    }
}

/// Parses a single product spec.
pub fn parse_spec(s: &str) -> Result<Spec> {
    let mut lx = Lexer { s, pos: 0 };
    let mut factors = vec![lx.factor()?];
    loop {
        lx.skip_ws();
        if lx.rest().is_empty() {
            break;
        }
        if !lx.eat("x") {
            return Err(lx.err("expected `x` or end of spec"));
        }
        factors.push(lx.factor()?);
    }
    Ok(Spec { factors })
}

/// Splits on commas outside brackets.
pub fn split_family(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.retain(|x| !x.is_empty());
    out
}

/// Parses a comma separated family into configurations.
pub fn parse_family(s: &str) -> Result<Vec<Configuration>> {
    split_family(s)
        .into_iter()
        .map(|item| parse_spec(item)?.configuration())
        .collect()
}

/// Parses a spec and evaluates it to a matrix.
pub fn parse_matrix(s: &str) -> Result<Matrix> {
    parse_spec(s)?.matrix()
}
