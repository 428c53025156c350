//! Field and derivation laws of the scalar kernel, checked exactly on
//! random Laurent rational functions, plus numeric oracles at rational
//! points.

mod common;

use common::{expr, laurent, names, nonzero_expr, point, points};
use kenmotsu_core::symkernel::{parse_rational, parse_scalar, rational_text, LaurentPoly, Rational};
use kenmotsu_core::{Error, ScalarExpr};
use num_traits::{One, Zero};
use proptest::prelude::*;

const N: usize = 3;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(128)
}

/// Evaluate, treating a pole as "no value".
fn at(e: &ScalarExpr, p: &[Rational]) -> Option<Rational> {
    match e.eval_at(p) {
        Ok(v) => Some(v),
        Err(Error::Pole) => None,
        Err(other) => panic!("unexpected evaluation error {other:?}"),
    }
}

/// Power rule applied term by term, evaluated directly.
fn partial_oracle(p: &LaurentPoly, index: usize, point: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in p.terms() {
        let e = m.exponent(index);
        if e == 0 {
            continue;
        }
        let mut v = c * Rational::from_integer(e.into());
        for (a, x) in point.iter().enumerate() {
            let k = m.exponent(a) - if a == index { 1 } else { 0 };
            let base = if k < 0 { x.recip() } else { x.clone() };
            for _ in 0..k.unsigned_abs() {
                v *= &base;
            }
        }
        acc += v;
    }
    acc
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn addition_is_a_commutative_group(a in expr(N), b in expr(N), c in expr(N)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!((&a + &b) + c.clone(), &a + &(&b + &c));
        prop_assert_eq!(&a + &ScalarExpr::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(-(-a.clone()), a);
    }

    #[test]
    fn multiplication_is_commutative_associative_distributive(a in expr(N), b in expr(N), c in expr(N)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b) * c.clone(), &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a * &ScalarExpr::one(), a);
    }

    #[test]
    fn division_inverts_multiplication(a in expr(N), b in nonzero_expr(N)) {
        let q = a.checked_div(&b).unwrap();
        prop_assert_eq!(&q * &b, a.clone());
        prop_assert_eq!(&b * &b.checked_recip().unwrap(), ScalarExpr::one());
        prop_assert_eq!(ScalarExpr::zero().checked_recip(), Err(Error::DivisionByZero));
    }

    #[test]
    fn results_are_normalized(a in expr(N), b in nonzero_expr(N)) {
        for e in [&a + &b, &a * &b, a.checked_div(&b).unwrap(), a.partial(0)] {
            if e.is_zero() {
                prop_assert_eq!(e.denominator(), &LaurentPoly::one());
                continue;
            }
            let (_, lc) = e.denominator().leading_term().unwrap();
            prop_assert!(lc.is_one());
            // no monomial divides both sides
            let num_min = e.numerator().min_exponents();
            let den_min = e.denominator().min_exponents();
            for i in 0..N {
                let lo = num_min.get(i).copied().unwrap_or(0).min(den_min.get(i).copied().unwrap_or(0));
                prop_assert_eq!(lo, 0);
            }
        }
    }

    #[test]
    fn partial_derivative_is_a_derivation(a in expr(N), b in expr(N), i in 0..N) {
        prop_assert_eq!((&a + &b).partial(i), a.partial(i) + b.partial(i));
        prop_assert_eq!((&a * &b).partial(i), &a.partial(i) * &b + &a * &b.partial(i));
        prop_assert_eq!(a.scale(&Rational::from_integer(7.into())).partial(i), a.partial(i).scale(&Rational::from_integer(7.into())));
    }

    #[test]
    fn quotient_rule(a in expr(N), b in nonzero_expr(N), i in 0..N) {
        let lhs = a.checked_div(&b).unwrap().partial(i);
        let num = &a.partial(i) * &b - &a * &b.partial(i);
        let rhs = num.checked_div(&(&b * &b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partials_commute(a in expr(N), i in 0..N, j in 0..N) {
        prop_assert_eq!(a.partial(i).partial(j), a.partial(j).partial(i));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in expr(N), b in expr(N), pts in points(N)) {
        for p in &pts {
            let (Some(va), Some(vb)) = (at(&a, p), at(&b, p)) else { continue };
            if let Some(s) = at(&(&a + &b), p) {
                prop_assert_eq!(s, &va + &vb);
            }
            if let Some(m) = at(&(&a * &b), p) {
                prop_assert_eq!(m, &va * &vb);
            }
            if !vb.is_zero() && !b.is_zero() {
                if let Some(q) = at(&a.checked_div(&b).unwrap(), p) {
                    prop_assert_eq!(q, &va / &vb);
                }
            }
        }
    }

    #[test]
    fn symbolic_partial_matches_power_rule(p in laurent(N, 4), i in 0..N, pts in points(N)) {
        let e = ScalarExpr::from_poly(p.clone());
        let d = e.partial(i);
        for x in &pts {
            prop_assert_eq!(d.eval_at(x).unwrap(), partial_oracle(&p, i, x));
        }
    }

    #[test]
    fn powers_agree_with_repeated_products(a in nonzero_expr(N), k in -3i64..=3, x in point(N)) {
        let pow = a.checked_pow(k).unwrap();
        let mut rep = ScalarExpr::one();
        for _ in 0..k.unsigned_abs() {
            rep = &rep * &a;
        }
        if k < 0 {
            rep = rep.checked_recip().unwrap();
        }
        prop_assert_eq!(&pow, &rep);
        if let (Some(va), Some(vp)) = (at(&a, &x), at(&pow, &x)) {
            if !va.is_zero() {
                let mut expect = Rational::one();
                for _ in 0..k.unsigned_abs() {
                    expect *= &va;
                }
                if k < 0 {
                    expect = expect.recip();
                }
                prop_assert_eq!(vp, expect);
            }
        }
    }

    #[test]
    fn print_parse_round_trip(a in expr(N)) {
        let names = names(N);
        let text = a.to_text(&names);
        let back = parse_scalar(&text, &names).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_text(&names), text);
    }

    #[test]
    fn rational_text_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let r = Rational::new(p.into(), q.into());
        prop_assert_eq!(parse_rational(&rational_text(&r)).unwrap(), r);
    }
}

#[test]
fn zero_denominator_literal_is_rejected() {
    let n = names(N);
    assert!(matches!(
        parse_scalar("x/0", &n),
        Err(Error::DivisionByZero) | Err(Error::ZeroDenominator { .. })
    ));
    assert!(matches!(parse_scalar("1/(x - x)", &n), Err(Error::DivisionByZero)));
}

#[test]
fn parse_errors_carry_columns() {
    let n = names(N);
    assert_eq!(
        parse_scalar("x + q", &n),
        Err(Error::UnknownIdentifier {
            name: "q".into(),
            column: 5
        })
    );
    assert!(matches!(parse_scalar("x + ", &n), Err(Error::Syntax { .. })));
}
