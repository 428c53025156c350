//! Sparse multivariate Laurent polynomials over exact rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use super::{rational_text, Rational};
use crate::error::{Error, Result};

/// Exponent vector of a monomial, one signed exponent per coordinate.
///
/// Trailing zero exponents are trimmed so that equal monomials always have
/// equal representations regardless of how many coordinates are in scope.
/// The ordering is graded lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        let mut exps = vec![0; index + 1];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(mut exps: Vec<i64>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponent(&self, index: usize) -> i64 {
        self.0.get(index).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i128 {
        self.0.iter().map(|&e| e as i128).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let len = self.0.len().max(other.0.len());
        let mut exps = Vec::with_capacity(len);
        for i in 0..len {
            let e = self
                .exponent(i)
                .checked_add(other.exponent(i))
                .ok_or(Error::ExponentOverflow)?;
            exps.push(e);
        }
        Ok(Monomial::from_exponents(exps))
    }

    pub fn checked_div(&self, other: &Monomial) -> Result<Monomial> {
        let len = self.0.len().max(other.0.len());
        let mut exps = Vec::with_capacity(len);
        for i in 0..len {
            let e = self
                .exponent(i)
                .checked_sub(other.exponent(i))
                .ok_or(Error::ExponentOverflow)?;
            exps.push(e);
        }
        Ok(Monomial::from_exponents(exps))
    }

    pub fn checked_pow(&self, k: i64) -> Result<Monomial> {
        let exps = self
            .0
            .iter()
            .map(|&e| e.checked_mul(k).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::from_exponents(exps))
    }

    /// True when `other / self` has no negative exponents.
    pub fn divides(&self, other: &Monomial) -> bool {
        let len = self.0.len().max(other.0.len());
        (0..len).all(|i| self.exponent(i) <= other.exponent(i))
    }

    fn write_text(&self, out: &mut String, names: &[String]) {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(&coord_name(names, i));
            if e != 1 {
                let _ = write!(out, "^{e}");
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let len = self.0.len().max(other.0.len());
            for i in 0..len {
                match self.exponent(i).cmp(&other.exponent(i)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn coord_name(names: &[String], index: usize) -> String {
    names.get(index).cloned().unwrap_or_else(|| format!("x{}", index + 1))
}

/// A finite sum of rational multiples of Laurent monomials.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(index: usize) -> Self {
        Self::term(Rational::one(), Monomial::var(index))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The constant value, if this polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single term, if there is exactly one.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Greatest term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_nonnegative)
    }

    /// Number of coordinate slots touched by any term.
    pub fn width(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    /// Per-coordinate minimum exponent over all terms (trimmed).
    pub fn min_exponents(&self) -> Vec<i64> {
        let width = self.width();
        (0..width)
            .map(|i| self.terms.keys().map(|m| m.exponent(i)).min().unwrap_or(0))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> LaurentPoly {
        if k.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<LaurentPoly> {
        let mut terms = BTreeMap::new();
        for (tm, c) in &self.terms {
            terms.insert(tm.checked_mul(m)?, c.clone());
        }
        Ok(LaurentPoly { terms })
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.checked_mul(m2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, k: u32) -> Result<LaurentPoly> {
        if let Some((m, c)) = self.as_monomial() {
            return Ok(LaurentPoly::term(
                num_traits::pow(c.clone(), k as usize),
                m.checked_pow(k as i64)?,
            ));
        }
        let mut result = LaurentPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Exact quotient `self / divisor`, if the division leaves no remainder.
    ///
    /// Both operands must be ordinary polynomials (no negative exponents);
    /// otherwise `None` is returned. Dividing leading terms repeatedly finds
    /// the quotient whenever one exists, because leading monomials are
    /// multiplicative under a monomial order.
    pub fn try_div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() || !self.is_polynomial() || !divisor.is_polynomial() {
            return None;
        }
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quotient = LaurentPoly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            if !lm.divides(rm) {
                return None;
            }
            let qm = rm.checked_div(&lm).ok()?;
            let qc = rc / &lc;
            let step = LaurentPoly::term(qc.clone(), qm.clone());
            rem = rem.sub(&divisor.checked_mul(&step).ok()?);
            quotient.add_term(qm, qc);
        }
        Some(quotient)
    }

    pub fn partial(&self, index: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] = e - 1;
            out.add_term(Monomial::from_exponents(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = point.get(i).cloned().unwrap_or_else(Rational::zero);
                if e < 0 {
                    if x.is_zero() {
                        return Err(Error::Pole);
                    }
                    value *= num_traits::pow(x.recip(), e.unsigned_abs() as usize);
                } else {
                    value *= num_traits::pow(x, e as usize);
                }
            }
            total += value;
        }
        Ok(total)
    }

    /// Canonical rendering, terms in descending graded-lex order.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            if m.is_one() {
                out.push_str(&rational_text(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&rational_text(&abs));
                    out.push('*');
                }
                m.write_text(&mut out, names);
            }
        }
        out
    }
}
