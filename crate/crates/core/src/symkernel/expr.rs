//! Rational functions in the chart coordinates.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{LaurentPoly, Monomial};
use super::Rational;
use crate::error::{Error, Result};

/// A quotient of two polynomials in the chart coordinates.
///
/// Canonical form: both parts are ordinary polynomials with no monomial
/// factor in common, the denominator's graded-lex leading coefficient is 1,
/// and an exact polynomial quotient is taken whenever one side divides the
/// other. Without a full gcd this form is not unique, so equality is decided
/// by cross-multiplication.
#[derive(Clone, Debug)]
pub struct ScalarExpr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl ScalarExpr {
    pub fn zero() -> Self {
        ScalarExpr {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_rational(q: Rational) -> Self {
        ScalarExpr {
            num: LaurentPoly::constant(q),
            den: LaurentPoly::one(),
        }
    }

    /// The coordinate function with the given index.
    pub fn var(index: usize) -> Self {
        ScalarExpr {
            num: LaurentPoly::var(index),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self::new(p, LaurentPoly::one()).expect("unit denominator")
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut e = ScalarExpr { num, den };
        e.normalize()?;
        Ok(e)
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    fn normalize(&mut self) -> Result<()> {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return Ok(());
        }
        let num_min = self.num.min_exponents();
        let den_min = self.den.min_exponents();
        let width = num_min.len().max(den_min.len());
        let shift: Vec<i64> = (0..width)
            .map(|i| {
                let a = num_min.get(i).copied().unwrap_or(0);
                let b = den_min.get(i).copied().unwrap_or(0);
                a.min(b).checked_neg().ok_or(Error::ExponentOverflow)
            })
            .collect::<Result<_>>()?;
        let shift = Monomial::from_exponents(shift);
        if !shift.is_one() {
            self.num = self.num.mul_monomial(&shift)?;
            self.den = self.den.mul_monomial(&shift)?;
        }
        if self.den.num_terms() > 1 {
            if let Some(q) = self.num.try_div_exact(&self.den) {
                self.num = q;
                self.den = LaurentPoly::one();
                return Ok(());
            }
            if self.num.num_terms() > 1 {
                if let Some(q) = self.den.try_div_exact(&self.num) {
                    self.num = LaurentPoly::one();
                    self.den = q;
                }
            }
        }
        let lc = self.den.leading_term().map(|(_, c)| c.clone()).unwrap();
        if !lc.is_one() {
            let inv = lc.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value if this expression is a constant.
    pub fn as_rational(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Mathematical equality by cross-multiplication.
    pub fn eq_expr(&self, other: &ScalarExpr) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let lhs = self.num.checked_mul(&other.den);
        let rhs = other.num.checked_mul(&self.den);
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => l == r,
            _ => false,
        }
    }

    pub fn checked_add(&self, other: &ScalarExpr) -> Result<ScalarExpr> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            return ScalarExpr::new(self.num.add(&other.num), self.den.clone());
        }
        // Use the larger denominator directly when the smaller one divides it.
        if let Some(k) = other.den.try_div_exact(&self.den) {
            let num = self.num.checked_mul(&k)?.add(&other.num);
            return ScalarExpr::new(num, other.den.clone());
        }
        if let Some(k) = self.den.try_div_exact(&other.den) {
            let num = other.num.checked_mul(&k)?.add(&self.num);
            return ScalarExpr::new(num, self.den.clone());
        }
        let num = self
            .num
            .checked_mul(&other.den)?
            .add(&other.num.checked_mul(&self.den)?);
        ScalarExpr::new(num, self.den.checked_mul(&other.den)?)
    }

    pub fn checked_sub(&self, other: &ScalarExpr) -> Result<ScalarExpr> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &ScalarExpr) -> Result<ScalarExpr> {
        if self.is_zero() || other.is_zero() {
            return Ok(ScalarExpr::zero());
        }
        if let Some(c) = self.as_rational() {
            return Ok(other.scale(&c));
        }
        if let Some(c) = other.as_rational() {
            return Ok(self.scale(&c));
        }
        // Cancel cross factors before multiplying out.
        let (n1, d2) = cancel(&self.num, &other.den);
        let (n2, d1) = cancel(&other.num, &self.den);
        ScalarExpr::new(n1.checked_mul(&n2)?, d1.checked_mul(&d2)?)
    }

    pub fn checked_div(&self, other: &ScalarExpr) -> Result<ScalarExpr> {
        self.checked_mul(&other.checked_recip()?)
    }

    pub fn checked_recip(&self) -> Result<ScalarExpr> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        ScalarExpr::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_pow(&self, k: i64) -> Result<ScalarExpr> {
        if k < 0 {
            if self.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let k = k.checked_neg().ok_or(Error::ExponentOverflow)?;
            return self.checked_recip()?.checked_pow(k);
        }
        if k == 0 {
            return Ok(ScalarExpr::one());
        }
        let k = u32::try_from(k).map_err(|_| Error::ExponentOverflow)?;
        ScalarExpr::new(self.num.checked_pow(k)?, self.den.checked_pow(k)?)
    }

    pub fn scale(&self, k: &Rational) -> ScalarExpr {
        if k.is_zero() {
            return ScalarExpr::zero();
        }
        ScalarExpr {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    pub fn neg(&self) -> ScalarExpr {
        ScalarExpr {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Partial derivative with respect to the coordinate `index`.
    pub fn partial(&self, index: usize) -> ScalarExpr {
        let dn = self.num.partial(index);
        if let Some(c) = self.den.as_constant() {
            return ScalarExpr::new(dn.scale(&c.recip()), LaurentPoly::one()).expect("exponent overflow in derivative");
        }
        let dd = self.den.partial(index);
        if dd.is_zero() {
            return ScalarExpr::new(dn, self.den.clone()).expect("exponent overflow in derivative");
        }
        let result = (|| {
            let num = dn.checked_mul(&self.den)?.sub(&self.num.checked_mul(&dd)?);
            ScalarExpr::new(num, self.den.checked_mul(&self.den)?)
        })();
        result.expect("exponent overflow in derivative")
    }

    pub fn eval_at(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Deterministic rendering that parses back to an equal expression.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.den.as_constant().is_some() {
            return self.num.to_text(names);
        }
        let num = if self.num.num_terms() > 1 {
            format!("({})", self.num.to_text(names))
        } else {
            self.num.to_text(names)
        };
        let den_is_atom = match self.den.as_monomial() {
            Some((m, c)) => c.is_one() && m.exponents().iter().filter(|&&e| e != 0).count() == 1,
            None => false,
        };
        let den = if den_is_atom {
            self.den.to_text(names)
        } else {
            format!("({})", self.den.to_text(names))
        };
        format!("{num}/{den}")
    }

    /// Highest coordinate index referenced, plus one.
    pub fn width(&self) -> usize {
        self.num.width().max(self.den.width())
    }
}

fn cancel(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if b.num_terms() > 1 {
        if let Some(q) = a.try_div_exact(b) {
            return (q, LaurentPoly::one());
        }
    }
    if a.num_terms() > 1 {
        if let Some(q) = b.try_div_exact(a) {
            return (LaurentPoly::one(), q);
        }
    }
    (a.clone(), b.clone())
}

impl PartialEq for ScalarExpr {
    fn eq(&self, other: &Self) -> bool {
        self.eq_expr(other)
    }
}

impl Default for ScalarExpr {
    fn default() -> Self {
        ScalarExpr::zero()
    }
}

impl From<i64> for ScalarExpr {
    fn from(n: i64) -> Self {
        ScalarExpr::from_int(n)
    }
}

impl From<Rational> for ScalarExpr {
    fn from(q: Rational) -> Self {
        ScalarExpr::from_rational(q)
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&[]))
    }
}

// Operator impls panic on exponent overflow (and `/` on a zero divisor);
// use the checked_* methods to observe these as errors.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident, $msg:literal) => {
        impl $trait<&ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: &ScalarExpr) -> ScalarExpr {
                self.$checked(rhs).expect($msg)
            }
        }
        impl $trait<ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: ScalarExpr) -> ScalarExpr {
                (&self).$checked(&rhs).expect($msg)
            }
        }
        impl $trait<&ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: &ScalarExpr) -> ScalarExpr {
                (&self).$checked(rhs).expect($msg)
            }
        }
        impl $trait<ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: ScalarExpr) -> ScalarExpr {
                self.$checked(&rhs).expect($msg)
            }
        }
    };
}

binop!(Add, add, checked_add, "exponent overflow");
binop!(Sub, sub, checked_sub, "exponent overflow");
binop!(Mul, mul, checked_mul, "exponent overflow");
binop!(Div, div, checked_div, "division by zero or exponent overflow");

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr::neg(&self)
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr::neg(self)
    }
}

impl std::iter::Sum for ScalarExpr {
    fn sum<I: Iterator<Item = ScalarExpr>>(iter: I) -> Self {
        iter.fold(ScalarExpr::zero(), |acc, x| acc + x)
    }
}
