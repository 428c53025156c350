use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::symkernel::{Rational, ScalarExpr};

/// Square matrix of scalar expressions, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    d: usize,
    data: Vec<ScalarExpr>,
}

impl Mat {
    pub fn zeros(d: usize) -> Self {
        Mat {
            d,
            data: vec![ScalarExpr::zero(); d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        Mat::from_fn(d, |i, j| if i == j { ScalarExpr::one() } else { ScalarExpr::zero() })
    }

    pub fn from_fn(d: usize, mut f: impl FnMut(usize, usize) -> ScalarExpr) -> Self {
        let mut data = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                data.push(f(i, j));
            }
        }
        Mat { d, data }
    }

    pub fn from_rows(rows: Vec<Vec<ScalarExpr>>) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension("matrix rows must all have length d".into()));
        }
        Ok(Mat {
            d,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.d, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.d, other.d, "matrix dimension mismatch");
        Mat::from_fn(self.d, |i, j| (0..self.d).map(|k| &self[(i, k)] * &other[(k, j)]).sum())
    }

    pub fn add(&self, other: &Mat) -> Mat {
        Mat::from_fn(self.d, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        Mat::from_fn(self.d, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn scale(&self, k: &ScalarExpr) -> Mat {
        Mat::from_fn(self.d, |i, j| k * &self[(i, j)])
    }

    pub fn scale_rational(&self, k: &Rational) -> Mat {
        Mat::from_fn(self.d, |i, j| self[(i, j)].scale(k))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ScalarExpr::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.d).all(|i| (i + 1..self.d).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> ScalarExpr {
        (0..self.d).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = &ScalarExpr> {
        self.data.iter()
    }

    /// Inverse by Gauss–Jordan elimination over the expression field.
    pub fn inverse(&self) -> Option<Mat> {
        let d = self.d;
        let mut a = self.clone();
        let mut inv = Mat::identity(d);
        for col in 0..d {
            let pivot = (col..d).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                for j in 0..d {
                    a.data.swap(pivot * d + j, col * d + j);
                    inv.data.swap(pivot * d + j, col * d + j);
                }
            }
            let p = a[(col, col)].checked_recip().ok()?;
            for j in 0..d {
                a[(col, j)] = &a[(col, j)] * &p;
                inv[(col, j)] = &inv[(col, j)] * &p;
            }
            for r in 0..d {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..d {
                    a[(r, j)] = &a[(r, j)] - &(&factor * &a[(col, j)]);
                    inv[(r, j)] = &inv[(r, j)] - &(&factor * &inv[(col, j)]);
                }
            }
        }
        Some(inv)
    }

    /// Value of every entry at a point.
    pub fn eval_at(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.data.iter().map(|e| e.eval_at(point)).collect()
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = ScalarExpr;
    fn index(&self, (i, j): (usize, usize)) -> &ScalarExpr {
        &self.data[i * self.d + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ScalarExpr {
        &mut self.data[i * self.d + j]
    }
}

/// Components of a vector field in the coordinate basis `∂/∂x^a`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    comps: Vec<ScalarExpr>,
}

impl VectorField {
    pub fn new(comps: Vec<ScalarExpr>) -> Self {
        VectorField { comps }
    }

    pub fn zero(d: usize) -> Self {
        VectorField::new(vec![ScalarExpr::zero(); d])
    }

    /// The coordinate vector field `∂/∂x^index`.
    pub fn coordinate(d: usize, index: usize) -> Self {
        let mut v = VectorField::zero(d);
        v.comps[index] = ScalarExpr::one();
        v
    }

    /// `Σ x^a ∂/∂x^a`.
    pub fn position(d: usize) -> Self {
        VectorField::new((0..d).map(ScalarExpr::var).collect())
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[ScalarExpr] {
        &self.comps
    }

    pub fn comp(&self, a: usize) -> &ScalarExpr {
        &self.comps[a]
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        assert_eq!(self.dim(), other.dim(), "vector field dimension mismatch");
        VectorField::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        assert_eq!(self.dim(), other.dim(), "vector field dimension mismatch");
        VectorField::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &ScalarExpr) -> VectorField {
        VectorField::new(self.comps.iter().map(|c| k * c).collect())
    }

    pub fn neg(&self) -> VectorField {
        VectorField::new(self.comps.iter().map(|c| -c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ScalarExpr::is_zero)
    }

    /// Directional derivative `X(f) = X^a ∂_a f`.
    pub fn apply(&self, f: &ScalarExpr) -> ScalarExpr {
        self.comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| c * &f.partial(a))
            .sum()
    }

    /// Render as a combination of `@coord` atoms.
    pub fn to_text(&self, names: &[String]) -> String {
        render_combination(&self.comps, names, |n| format!("@{n}"))
    }
}

/// Components of a one-form in the coordinate coframe `d[x^a]`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm {
    comps: Vec<ScalarExpr>,
}

impl OneForm {
    pub fn new(comps: Vec<ScalarExpr>) -> Self {
        OneForm { comps }
    }

    pub fn zero(d: usize) -> Self {
        OneForm::new(vec![ScalarExpr::zero(); d])
    }

    pub fn differential(d: usize, index: usize) -> Self {
        let mut f = OneForm::zero(d);
        f.comps[index] = ScalarExpr::one();
        f
    }

    /// `d f = ∂_a f d[x^a]`.
    pub fn exterior_derivative_of(d: usize, f: &ScalarExpr) -> Self {
        OneForm::new((0..d).map(|a| f.partial(a)).collect())
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[ScalarExpr] {
        &self.comps
    }

    pub fn comp(&self, a: usize) -> &ScalarExpr {
        &self.comps[a]
    }

    pub fn apply(&self, v: &VectorField) -> ScalarExpr {
        assert_eq!(self.dim(), v.dim(), "dimension mismatch");
        self.comps.iter().zip(v.comps()).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        OneForm::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        OneForm::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &ScalarExpr) -> OneForm {
        OneForm::new(self.comps.iter().map(|c| k * c).collect())
    }

    pub fn neg(&self) -> OneForm {
        OneForm::new(self.comps.iter().map(|c| -c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ScalarExpr::is_zero)
    }

    /// `(ρ ⊗ σ)_{ab} = ρ_a σ_b`.
    pub fn tensor(&self, other: &OneForm) -> Tensor2 {
        Tensor2::lower(Mat::from_fn(self.dim(), |a, b| &self.comps[a] * &other.comps[b]))
    }

    pub fn to_text(&self, names: &[String]) -> String {
        render_combination(&self.comps, names, |n| format!("d[{n}]"))
    }
}

fn render_combination(comps: &[ScalarExpr], names: &[String], atom: impl Fn(&str) -> String) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (a, c) in comps.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = names.get(a).cloned().unwrap_or_else(|| format!("x{}", a + 1));
        let basis = atom(&name);
        let coeff = c.to_text(names);
        let simple = c.denominator().as_constant().is_some() && c.numerator().num_terms() == 1;
        let term = match coeff.as_str() {
            "1" => basis,
            "-1" => format!("-{basis}"),
            _ if simple => format!("{coeff}*{basis}"),
            _ => format!("({coeff})*{basis}"),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            None => {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Lower,
    Upper,
}

/// A rank-2 tensor with both indices of the same variance.
///
/// Lower tensors are bilinear forms `T(X, Y) = T_{ab} X^a Y^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor2 {
    variance: Variance,
    m: Mat,
}

impl Tensor2 {
    pub fn new(variance: Variance, m: Mat) -> Self {
        Tensor2 { variance, m }
    }

    pub fn lower(m: Mat) -> Self {
        Tensor2::new(Variance::Lower, m)
    }

    pub fn zero(d: usize) -> Self {
        Tensor2::lower(Mat::zeros(d))
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn comp(&self, a: usize, b: usize) -> &ScalarExpr {
        &self.m[(a, b)]
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_symmetric(&self) -> bool {
        self.m.is_symmetric()
    }

    pub fn add(&self, other: &Tensor2) -> Tensor2 {
        Tensor2::new(self.variance, self.m.add(&other.m))
    }

    pub fn sub(&self, other: &Tensor2) -> Tensor2 {
        Tensor2::new(self.variance, self.m.sub(&other.m))
    }

    pub fn scale(&self, k: &ScalarExpr) -> Tensor2 {
        Tensor2::new(self.variance, self.m.scale(k))
    }

    pub fn scale_rational(&self, k: &Rational) -> Tensor2 {
        Tensor2::new(self.variance, self.m.scale_rational(k))
    }

    pub fn transpose(&self) -> Tensor2 {
        Tensor2::new(self.variance, self.m.transpose())
    }

    /// `½ (T + Tᵀ)`.
    pub fn symmetrized(&self) -> SymTensor2 {
        let half = Rational::new(1.into(), 2.into());
        let m = self.m.add(&self.m.transpose()).scale_rational(&half);
        SymTensor2(Tensor2::new(self.variance, m))
    }

    /// `T(X, Y)` for a lower tensor.
    pub fn eval(&self, x: &VectorField, y: &VectorField) -> ScalarExpr {
        let d = self.dim();
        let mut acc = ScalarExpr::zero();
        for a in 0..d {
            if x.comp(a).is_zero() {
                continue;
            }
            for b in 0..d {
                if y.comp(b).is_zero() || self.m[(a, b)].is_zero() {
                    continue;
                }
                acc = acc + &(x.comp(a) * y.comp(b)) * &self.m[(a, b)];
            }
        }
        acc
    }

    /// Full contraction `h^{ab} T_{ab}` with an upper tensor.
    pub fn contract(&self, upper: &Tensor2) -> ScalarExpr {
        let d = self.dim();
        let mut acc = ScalarExpr::zero();
        for a in 0..d {
            for b in 0..d {
                if self.m[(a, b)].is_zero() || upper.m[(a, b)].is_zero() {
                    continue;
                }
                acc = acc + &self.m[(a, b)] * &upper.m[(a, b)];
            }
        }
        acc
    }

    /// `T(X, ·)` as a one-form.
    pub fn lower_vector(&self, x: &VectorField) -> OneForm {
        let d = self.dim();
        OneForm::new(
            (0..d)
                .map(|b| (0..d).map(|a| x.comp(a) * &self.m[(a, b)]).sum())
                .collect(),
        )
    }
}

/// A symmetric rank-2 tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor2(Tensor2);

impl SymTensor2 {
    pub fn new(t: Tensor2) -> Result<Self> {
        if t.is_symmetric() {
            Ok(SymTensor2(t))
        } else {
            Err(Error::NotSymmetric)
        }
    }

    pub fn lower(m: Mat) -> Result<Self> {
        SymTensor2::new(Tensor2::lower(m))
    }

    /// Lower tensor with `T_{ab} = T_{ba} = f(a, b)` for `a <= b`.
    pub fn lower_from_upper_triangle(d: usize, mut f: impl FnMut(usize, usize) -> ScalarExpr) -> Self {
        let mut m = Mat::zeros(d);
        for a in 0..d {
            for b in a..d {
                let v = f(a, b);
                m[(b, a)] = v.clone();
                m[(a, b)] = v;
            }
        }
        SymTensor2(Tensor2::lower(m))
    }

    pub fn diagonal(entries: Vec<ScalarExpr>) -> Self {
        let d = entries.len();
        SymTensor2::lower_from_upper_triangle(d, |a, b| if a == b { entries[a].clone() } else { ScalarExpr::zero() })
    }

    pub fn identity(d: usize) -> Self {
        SymTensor2(Tensor2::lower(Mat::identity(d)))
    }

    pub fn as_tensor(&self) -> &Tensor2 {
        &self.0
    }

    pub fn into_tensor(self) -> Tensor2 {
        self.0
    }

    pub fn add(&self, other: &SymTensor2) -> SymTensor2 {
        SymTensor2(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &SymTensor2) -> SymTensor2 {
        SymTensor2(self.0.sub(&other.0))
    }

    pub fn scale(&self, k: &ScalarExpr) -> SymTensor2 {
        SymTensor2(self.0.scale(k))
    }

    pub fn scale_rational(&self, k: &Rational) -> SymTensor2 {
        SymTensor2(self.0.scale_rational(k))
    }

    /// `ρ ⊗ ρ`.
    pub fn square_of(rho: &OneForm) -> SymTensor2 {
        SymTensor2(rho.tensor(rho))
    }
}

impl std::ops::Deref for SymTensor2 {
    type Target = Tensor2;
    fn deref(&self) -> &Tensor2 {
        &self.0
    }
}

/// A (1,1)-tensor `A^a_b`, acting on vector fields by `(A X)^a = A^a_b X^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct EndoField {
    m: Mat,
}

impl EndoField {
    pub fn new(m: Mat) -> Self {
        EndoField { m }
    }

    pub fn identity(d: usize) -> Self {
        EndoField::new(Mat::identity(d))
    }

    /// Endomorphism whose value on `∂_b` is `columns[b]`.
    pub fn from_columns(columns: &[VectorField]) -> Self {
        let d = columns.len();
        EndoField::new(Mat::from_fn(d, |a, b| columns[b].comp(a).clone()))
    }

    /// `X ⊗ ρ`, i.e. `Y ↦ ρ(Y) X`.
    pub fn outer(x: &VectorField, rho: &OneForm) -> Self {
        EndoField::new(Mat::from_fn(x.dim(), |a, b| x.comp(a) * rho.comp(b)))
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn comp(&self, a: usize, b: usize) -> &ScalarExpr {
        &self.m[(a, b)]
    }

    pub fn apply(&self, x: &VectorField) -> VectorField {
        let d = self.dim();
        VectorField::new(
            (0..d)
                .map(|a| (0..d).map(|b| &self.m[(a, b)] * x.comp(b)).sum())
                .collect(),
        )
    }

    pub fn compose(&self, other: &EndoField) -> EndoField {
        EndoField::new(self.m.mul(&other.m))
    }

    pub fn add(&self, other: &EndoField) -> EndoField {
        EndoField::new(self.m.add(&other.m))
    }

    pub fn sub(&self, other: &EndoField) -> EndoField {
        EndoField::new(self.m.sub(&other.m))
    }

    pub fn scale(&self, k: &ScalarExpr) -> EndoField {
        EndoField::new(self.m.scale(k))
    }

    pub fn trace(&self) -> ScalarExpr {
        self.m.trace()
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_diagonal_and_singular() {
        let f3 = ScalarExpr::var(2);
        let inv2 = f3.checked_pow(-2).unwrap();
        let g = Mat::from_fn(3, |i, j| if i == j { inv2.clone() } else { ScalarExpr::zero() });
        let inv = g.inverse().unwrap();
        let sq = f3.checked_pow(2).unwrap();
        for i in 0..3 {
            assert_eq!(inv[(i, i)], sq);
        }
        assert_eq!(g.mul(&inv), Mat::identity(3));
        let degenerate = Mat::from_fn(3, |i, j| {
            if i == j && i < 2 {
                ScalarExpr::one()
            } else {
                ScalarExpr::zero()
            }
        });
        assert!(degenerate.inverse().is_none());
    }

    #[test]
    fn inverse_with_pivoting() {
        let x = ScalarExpr::var(0);
        let m = Mat::from_rows(vec![
            vec![ScalarExpr::zero(), x.clone()],
            vec![ScalarExpr::one(), ScalarExpr::one()],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
    }

    #[test]
    fn vector_rendering() {
        let names: Vec<String> = ["f1", "f2", "f3"].iter().map(|s| s.to_string()).collect();
        let f3 = ScalarExpr::var(2);
        let v = VectorField::new(vec![
            ScalarExpr::from_int(2) * ScalarExpr::var(0),
            ScalarExpr::zero(),
            -f3,
        ]);
        assert_eq!(v.to_text(&names), "2*f1*@f1 - f3*@f3");
        assert_eq!(VectorField::zero(3).to_text(&names), "0");
    }
}
