//! Shared fixtures and proptest strategies for the integration tests.
#![allow(dead_code)]

use kenmotsu_core::contact::ContactStructure;
use kenmotsu_core::geometry::{Chart, EndoField, Frame, Metric, SymTensor2, VectorField};
use kenmotsu_core::symkernel::{ratio, LaurentPoly, Monomial, Rational};
use kenmotsu_core::ScalarExpr;
use proptest::prelude::*;

pub const NAMES: [&str; 4] = ["x", "y", "z", "w"];

pub fn names(n: usize) -> Vec<String> {
    NAMES[..n].iter().map(|s| s.to_string()).collect()
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| ratio(p, q))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=5, any::<bool>()).prop_map(|(p, q, neg)| ratio(if neg { -p } else { p }, q))
}

pub fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=5).prop_map(|(p, q)| ratio(p, q))
}

fn sum_terms(terms: Vec<(Rational, Vec<i64>)>) -> LaurentPoly {
    terms.into_iter().fold(LaurentPoly::zero(), |acc, (c, e)| {
        acc.add(&LaurentPoly::term(c, Monomial::from_exponents(e)))
    })
}

/// Laurent polynomial with exponents in `[-2, 2]`.
pub fn laurent(n: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((rational(), prop::collection::vec(-2i64..=2, n)), 1..=max_terms).prop_map(sum_terms)
}

/// Ordinary polynomial with exponents in `[0, 2]`.
pub fn polynomial(n: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((rational(), prop::collection::vec(0i64..=2, n)), 1..=max_terms).prop_map(sum_terms)
}

/// A rational function `p / q` with small Laurent numerator and denominator.
pub fn expr(n: usize) -> impl Strategy<Value = ScalarExpr> {
    (laurent(n, 3), laurent(n, 2))
        .prop_filter("nonzero denominator", |(_, q)| !q.is_zero())
        .prop_map(|(p, q)| ScalarExpr::new(p, q).expect("nonzero denominator"))
}

pub fn nonzero_expr(n: usize) -> impl Strategy<Value = ScalarExpr> {
    expr(n).prop_filter("nonzero", |e| !e.is_zero())
}

/// A point with nonzero coordinates, so Laurent monomials are defined.
pub fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(nonzero_rational(), n)
}

pub fn points(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(point(n), 3)
}

/// Diagonal metric whose entries are sums of one or two positive multiples
/// of Laurent monomials, so none is identically zero.
pub fn diagonal_metric(n: usize) -> impl Strategy<Value = SymTensor2> {
    let entry = prop::collection::vec((positive_rational(), prop::collection::vec(-2i64..=2, n)), 1..=2);
    prop::collection::vec(entry, n).prop_map(|entries| {
        SymTensor2::diagonal(
            entries
                .into_iter()
                .map(|t| ScalarExpr::from_poly(sum_terms(t)))
                .collect(),
        )
    })
}

/// Monomials `c_i m_i` with positive coefficients.
pub fn monomial_roots(n: usize) -> impl Strategy<Value = Vec<ScalarExpr>> {
    prop::collection::vec((positive_rational(), prop::collection::vec(-2i64..=2, n)), n).prop_map(|entries| {
        entries
            .into_iter()
            .map(|(c, e)| ScalarExpr::from_poly(LaurentPoly::term(c, Monomial::from_exponents(e))))
            .collect()
    })
}

/// Diagonal metric `diag(c_i² m_i²)` together with `Π c_i m_i`, a square
/// root of its determinant.
pub fn square_diagonal_metric(n: usize) -> impl Strategy<Value = (SymTensor2, ScalarExpr)> {
    monomial_roots(n).prop_map(|roots| {
        let density = roots.iter().fold(ScalarExpr::one(), |acc, r| acc * r.clone());
        (square_metric(&roots), density)
    })
}

pub fn square_metric(roots: &[ScalarExpr]) -> SymTensor2 {
    SymTensor2::diagonal(roots.iter().map(|r| r * r).collect())
}

pub fn poly_vector(n: usize) -> impl Strategy<Value = VectorField> {
    prop::collection::vec(polynomial(n, 3), n)
        .prop_map(|comps| VectorField::new(comps.into_iter().map(ScalarExpr::from_poly).collect()))
}

/// The hyperbolic Kenmotsu structure on `{x_{2n+1} > 0}`: frame
/// `T_i = z∂_i`, `ξ = −z∂_z`, `φ∂_{2k−1} = −∂_{2k}`, `φ∂_{2k} = ∂_{2k−1}`.
pub fn hyperbolic_kenmotsu(n: usize) -> ContactStructure {
    let d = 2 * n + 1;
    let coords: Vec<String> = (1..=d).map(|i| format!("f{i}")).collect();
    let chart = Chart::new(coords.clone()).unwrap();
    let z = &coords[d - 1];
    let mut frame: Vec<VectorField> = coords[..d - 1]
        .iter()
        .map(|c| chart.vector(&format!("{z}*@{c}")).unwrap())
        .collect();
    frame.push(chart.vector(&format!("-{z}*@{z}")).unwrap());
    let mut columns = Vec::with_capacity(d);
    for k in 0..n {
        columns.push(chart.vector(&format!("-@{}", coords[2 * k + 1])).unwrap());
        columns.push(chart.vector(&format!("@{}", coords[2 * k])).unwrap());
    }
    columns.push(VectorField::zero(d));
    let frame = Frame::new(frame).unwrap();
    let g = frame.dual_metric();
    let xi = frame.vector(d - 1).clone();
    let frame = Frame::orthonormal(frame.vectors().to_vec(), &g).unwrap();
    ContactStructure::new(
        chart,
        Metric::new(g).unwrap(),
        EndoField::from_columns(&columns),
        xi,
        None,
        Some(frame),
    )
    .unwrap()
}

/// The three-dimensional fixture, assembled from the explicit coordinate
/// metric `diag(1/f3², 1/f3², 1/f3²)` rather than from a frame.
pub fn k3_coordinates() -> ContactStructure {
    let chart = Chart::new(["f1", "f2", "f3"]).unwrap();
    let h = chart.scalar("1/f3^2").unwrap();
    let g = SymTensor2::diagonal(vec![h.clone(), h.clone(), h]);
    let phi = EndoField::from_columns(&[
        chart.vector("-@f2").unwrap(),
        chart.vector("@f1").unwrap(),
        VectorField::zero(3),
    ]);
    let xi = chart.vector("-f3*@f3").unwrap();
    ContactStructure::new(chart, Metric::new(g).unwrap(), phi, xi, None, None).unwrap()
}

/// Flat `R³` with `ξ = ∂_z`, `φ∂_x = −∂_y`, `φ∂_y = ∂_x`.
pub fn euclid3() -> ContactStructure {
    let chart = Chart::new(["x", "y", "z"]).unwrap();
    let phi = EndoField::from_columns(&[
        chart.vector("-@y").unwrap(),
        chart.vector("@x").unwrap(),
        VectorField::zero(3),
    ]);
    let xi = chart.vector("@z").unwrap();
    ContactStructure::new(chart, Metric::euclidean(3), phi, xi, None, None).unwrap()
}

pub fn k3_potential(cs: &ContactStructure) -> VectorField {
    cs.chart().vector("2*f1*@f1 + 2*f2*@f2 + f3*@f3").unwrap()
}

pub fn int_expr(k: i64) -> ScalarExpr {
    ScalarExpr::from_int(k)
}
