//! Typed evaluation of the expression grammar into scalars, vector fields
//! and one-forms.

use std::collections::HashMap;

use super::tensor::{OneForm, VectorField};
use super::Chart;
use crate::error::{Error, Result};
use crate::symkernel::parse::{parse_ast, Ast, Node};
use crate::symkernel::{Rational, ScalarExpr};

#[derive(Clone, Debug, PartialEq)]
pub enum FieldValue {
    Scalar(ScalarExpr),
    Vector(VectorField),
    Form(OneForm),
}

impl FieldValue {
    fn kind(&self) -> &'static str {
        match self {
            FieldValue::Scalar(_) => "scalar",
            FieldValue::Vector(_) => "vector field",
            FieldValue::Form(_) => "one-form",
        }
    }
}

/// Identifier bindings for field expressions: chart coordinates plus any
/// named vector fields (frame members, `xi`) and one-forms (`eta`).
#[derive(Clone, Debug)]
pub struct FieldEnv<'a> {
    chart: &'a Chart,
    names: HashMap<String, FieldValue>,
}

impl<'a> FieldEnv<'a> {
    pub fn new(chart: &'a Chart) -> Self {
        FieldEnv {
            chart,
            names: HashMap::new(),
        }
    }

    pub fn bind(&mut self, name: impl Into<String>, value: FieldValue) {
        self.names.insert(name.into(), value);
    }

    pub fn with(mut self, name: impl Into<String>, value: FieldValue) -> Self {
        self.bind(name, value);
        self
    }

    pub fn chart(&self) -> &Chart {
        self.chart
    }

    fn lookup(&self, name: &str, column: usize) -> Result<FieldValue> {
        if let Some(i) = self.chart.index_of(name) {
            return Ok(FieldValue::Scalar(ScalarExpr::var(i)));
        }
        self.names.get(name).cloned().ok_or_else(|| Error::UnknownIdentifier {
            name: name.to_string(),
            column,
        })
    }

    fn coord(&self, name: &str, column: usize) -> Result<usize> {
        self.chart.index_of(name).ok_or_else(|| Error::UnknownIdentifier {
            name: name.to_string(),
            column,
        })
    }
}

fn type_error(column: usize, message: String) -> Error {
    Error::Type { column, message }
}

fn eval(node: &Node, env: &FieldEnv) -> Result<FieldValue> {
    use FieldValue::*;
    let col = node.column;
    let d = env.chart.dim();
    match &node.ast {
        Ast::Int(n) => Ok(Scalar(ScalarExpr::from_rational(Rational::from_integer(n.clone())))),
        Ast::Ident(name) => env.lookup(name, col),
        Ast::CoordVector(name) => Ok(Vector(VectorField::coordinate(d, env.coord(name, col)?))),
        Ast::Differential(name) => Ok(Form(OneForm::differential(d, env.coord(name, col)?))),
        Ast::Neg(a) => Ok(match eval(a, env)? {
            Scalar(s) => Scalar(s.neg()),
            Vector(v) => Vector(v.neg()),
            Form(f) => Form(f.neg()),
        }),
        Ast::Add(a, b) | Ast::Sub(a, b) => {
            let x = eval(a, env)?;
            let y = eval(b, env)?;
            let y = if matches!(node.ast, Ast::Sub(..)) { negate(y) } else { y };
            match (x, y) {
                (Scalar(x), Scalar(y)) => Ok(Scalar(x.checked_add(&y)?)),
                (Vector(x), Vector(y)) => Ok(Vector(x.add(&y))),
                (Form(x), Form(y)) => Ok(Form(x.add(&y))),
                // a literal zero summand stands for the zero field
                (Scalar(s), other) | (other, Scalar(s)) if s.is_zero() => Ok(other),
                (x, y) => Err(type_error(
                    b.column,
                    format!("cannot combine {} and {}", x.kind(), y.kind()),
                )),
            }
        }
        Ast::Mul(a, b) => {
            let (x, y) = (eval(a, env)?, eval(b, env)?);
            match (x, y) {
                (Scalar(x), Scalar(y)) => Ok(Scalar(x.checked_mul(&y)?)),
                (Scalar(s), Vector(v)) | (Vector(v), Scalar(s)) => Ok(Vector(v.scale(&s))),
                (Scalar(s), Form(f)) | (Form(f), Scalar(s)) => Ok(Form(f.scale(&s))),
                (x, y) => Err(type_error(
                    b.column,
                    format!("cannot multiply {} by {}", x.kind(), y.kind()),
                )),
            }
        }
        Ast::Div(a, b) => {
            if crate::symkernel::parse::is_zero_literal(b) {
                return Err(Error::ZeroDenominator { column: b.column });
            }
            let x = eval(a, env)?;
            let Scalar(y) = eval(b, env)? else {
                return Err(type_error(b.column, "divisor must be a scalar".into()));
            };
            let inv = y.checked_recip()?;
            Ok(match x {
                Scalar(x) => Scalar(x.checked_mul(&inv)?),
                Vector(v) => Vector(v.scale(&inv)),
                Form(f) => Form(f.scale(&inv)),
            })
        }
        Ast::Pow(a, k) => match eval(a, env)? {
            Scalar(s) => Ok(Scalar(s.checked_pow(*k)?)),
            other => Err(type_error(col, format!("cannot raise a {} to a power", other.kind()))),
        },
    }
}

fn negate(v: FieldValue) -> FieldValue {
    match v {
        FieldValue::Scalar(s) => FieldValue::Scalar(s.neg()),
        FieldValue::Vector(x) => FieldValue::Vector(x.neg()),
        FieldValue::Form(f) => FieldValue::Form(f.neg()),
    }
}

/// Parse and evaluate an expression of any field type.
pub fn parse_field(text: &str, env: &FieldEnv) -> Result<FieldValue> {
    eval(&parse_ast(text)?, env)
}

/// Parse a vector field; an identically zero scalar is accepted as the zero field.
pub fn parse_vector(text: &str, env: &FieldEnv) -> Result<VectorField> {
    match parse_field(text, env)? {
        FieldValue::Vector(v) => Ok(v),
        FieldValue::Scalar(s) if s.is_zero() => Ok(VectorField::zero(env.chart.dim())),
        other => Err(type_error(
            1,
            format!("expected a vector field, found a {}", other.kind()),
        )),
    }
}

/// Parse a one-form; an identically zero scalar is accepted as the zero form.
pub fn parse_oneform(text: &str, env: &FieldEnv) -> Result<OneForm> {
    match parse_field(text, env)? {
        FieldValue::Form(f) => Ok(f),
        FieldValue::Scalar(s) if s.is_zero() => Ok(OneForm::zero(env.chart.dim())),
        other => Err(type_error(1, format!("expected a one-form, found a {}", other.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> Chart {
        Chart::new(["f1", "f2", "f3"]).unwrap()
    }

    #[test]
    fn vectors_and_forms() {
        let c = chart();
        let v = c.vector("2*f1*@f1 + 2*f2*@f2 + f3*@f3").unwrap();
        assert_eq!(v.comp(0), &c.scalar("2*f1").unwrap());
        assert_eq!(v.comp(2), &c.scalar("f3").unwrap());
        let eta = c.oneform("-(1/f3)*d[f3]").unwrap();
        assert_eq!(eta.comp(2), &c.scalar("-1/f3").unwrap());
        assert!(eta.comp(0).is_zero());
        assert!(c.vector("0").unwrap().is_zero());
        assert_eq!(c.vector("@f1/f3").unwrap().comp(0), &c.scalar("1/f3").unwrap());
    }

    #[test]
    fn named_fields_and_zero_summands() {
        let c = chart();
        let t1 = c.vector("f3*@f1").unwrap();
        let env = FieldEnv::new(&c).with("T1", FieldValue::Vector(t1.clone()));
        assert_eq!(parse_vector("-T1", &env).unwrap(), t1.neg());
        assert_eq!(parse_vector("0 - T1", &env).unwrap(), t1.neg());
        assert_eq!(parse_vector("T1 - 0", &env).unwrap(), t1);
    }

    #[test]
    fn type_errors() {
        let c = chart();
        assert!(matches!(c.vector("@f1 + f1"), Err(Error::Type { column: 7, .. })));
        assert!(matches!(c.vector("@f1 * @f2"), Err(Error::Type { .. })));
        assert!(matches!(c.vector("@f1^2"), Err(Error::Type { .. })));
        assert!(matches!(c.vector("f1"), Err(Error::Type { .. })));
        assert!(matches!(c.oneform("@f1"), Err(Error::Type { .. })));
        assert!(matches!(c.vector("@g"), Err(Error::UnknownIdentifier { .. })));
    }
}
