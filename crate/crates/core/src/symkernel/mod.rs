//! Exact scalar arithmetic: rationals, Laurent polynomials in named
//! coordinates, their fraction field, differentiation, parsing and printing.

mod expr;
pub mod parse;
mod poly;

pub use expr::ScalarExpr;
pub use poly::{LaurentPoly, Monomial};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use parse::{parse_ast, Ast, Node};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `p / q` as a rational; panics if `q = 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Render a rational as `p` or `p/q`.
pub fn rational_text(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse `p`, `-p`, `p/q` or `-p/q` (whitespace allowed around tokens).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Syntax {
        column: 1,
        message: format!("`{t}` is not a rational number"),
    };
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1, rest.trim_start()),
        None => (1, t),
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (body, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_digit());
    if !digits(n) || !digits(d) {
        return Err(bad());
    }
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_positive() {
        Ok(Rational::new(n * sign, d))
    } else {
        Err(Error::ZeroDenominator { column: 1 })
    }
}

/// Parse a scalar expression over the named coordinates.
pub fn parse_scalar(text: &str, coords: &[String]) -> Result<ScalarExpr> {
    let node = parse_ast(text)?;
    eval_scalar(&node, coords)
}

fn eval_scalar(node: &Node, coords: &[String]) -> Result<ScalarExpr> {
    let col = node.column;
    let bin = |a: &Node, b: &Node| -> Result<(ScalarExpr, ScalarExpr)> {
        Ok((eval_scalar(a, coords)?, eval_scalar(b, coords)?))
    };
    match &node.ast {
        Ast::Int(n) => Ok(ScalarExpr::from_rational(Rational::from_integer(n.clone()))),
        Ast::Ident(name) => coords
            .iter()
            .position(|c| c == name)
            .map(ScalarExpr::var)
            .ok_or_else(|| Error::UnknownIdentifier {
                name: name.clone(),
                column: col,
            }),
        Ast::CoordVector(_) | Ast::Differential(_) => Err(Error::Type {
            column: col,
            message: "expected a scalar expression".into(),
        }),
        Ast::Neg(a) => Ok(eval_scalar(a, coords)?.neg()),
        Ast::Add(a, b) => {
            let (x, y) = bin(a, b)?;
            x.checked_add(&y)
        }
        Ast::Sub(a, b) => {
            let (x, y) = bin(a, b)?;
            x.checked_sub(&y)
        }
        Ast::Mul(a, b) => {
            let (x, y) = bin(a, b)?;
            x.checked_mul(&y)
        }
        Ast::Div(a, b) => {
            if parse::is_zero_literal(b) {
                return Err(Error::ZeroDenominator { column: b.column });
            }
            let (x, y) = bin(a, b)?;
            x.checked_div(&y)
        }
        Ast::Pow(a, k) => eval_scalar(a, coords)?.checked_pow(*k),
    }
}
