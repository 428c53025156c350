//! Exact string renderings of tensors, frame vectors and one-forms.

use std::collections::BTreeMap;

use kenmotsu_core::geometry::{Mat, OneForm, Tensor2, VectorField};
use kenmotsu_core::symkernel::{rational_text, Rational};
use kenmotsu_core::ScalarExpr;

use crate::manifest::Manifold;

pub fn rational(q: &Rational) -> String {
    rational_text(q)
}

pub fn scalar(m: &Manifold, e: &ScalarExpr) -> String {
    e.to_text(m.names())
}

/// `diag(a, b, c)` for diagonal matrices, nested rows otherwise.
pub fn matrix(m: &Manifold, mat: &Mat) -> String {
    let d = mat.dim();
    let diagonal = (0..d).all(|i| (0..d).all(|j| i == j || mat[(i, j)].is_zero()));
    if diagonal {
        let entries: Vec<String> = (0..d).map(|i| scalar(m, &mat[(i, i)])).collect();
        return format!("diag({})", entries.join(", "));
    }
    let rows: Vec<String> = (0..d)
        .map(|i| {
            let row: Vec<String> = (0..d).map(|j| scalar(m, &mat[(i, j)])).collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Components in the frame when there is one, otherwise in coordinates.
pub fn components(m: &Manifold, t: &Tensor2) -> Mat {
    match &m.frame {
        Some(f) => f.components(t).0,
        None => t.matrix().clone(),
    }
}

/// Key suffix naming the basis used by [`components`].
pub fn basis(m: &Manifold) -> &'static str {
    if m.frame.is_some() {
        "frame"
    } else {
        "coords"
    }
}

pub fn tensor(m: &Manifold, t: &Tensor2) -> String {
    matrix(m, &components(m, t))
}

fn basis_names(m: &Manifold) -> Vec<String> {
    if m.frame.is_some() {
        m.frame_names.clone()
    } else {
        m.names().to_vec()
    }
}

/// Nonzero components keyed by basis names; only `i <= j` for symmetric input.
pub fn residual(m: &Manifold, t: &Tensor2) -> BTreeMap<String, String> {
    let c = components(m, t);
    let names = basis_names(m);
    let symmetric = c.is_symmetric();
    let d = c.dim();
    let mut out = BTreeMap::new();
    for i in 0..d {
        for j in 0..d {
            if (symmetric && j < i) || c[(i, j)].is_zero() {
                continue;
            }
            out.insert(format!("{},{}", names[i], names[j]), scalar(m, &c[(i, j)]));
        }
    }
    out
}

/// `Σ c_i·name_i` with unit coefficients elided.
pub fn combination(m: &Manifold, coeffs: &[ScalarExpr], names: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let (negative, body) = match c.as_rational() {
            Some(q) => {
                let abs = num_traits::Signed::abs(&q);
                let body = if abs == Rational::from_integer(1.into()) {
                    name.clone()
                } else {
                    format!("{}*{name}", rational(&abs))
                };
                (num_traits::Signed::is_negative(&q), body)
            }
            None => (false, format!("({})*{name}", scalar(m, c))),
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A vector field in frame names when there is a frame.
pub fn vector(m: &Manifold, v: &VectorField) -> String {
    match &m.frame {
        Some(f) => combination(m, &f.coefficients(v), &m.frame_names),
        None => v.to_text(m.names()),
    }
}

/// A one-form, written as a rational multiple of η when it is one.
pub fn oneform(m: &Manifold, w: &OneForm) -> String {
    if let Some(cs) = &m.structure {
        let eta = cs.eta();
        if let Some(a) = (0..eta.dim()).find(|&a| !eta.comp(a).is_zero()) {
            if let Some(k) = (w.comp(a) / eta.comp(a)).as_rational() {
                if *w == eta.scale(&ScalarExpr::from_rational(k.clone())) {
                    let text = combination(m, &[ScalarExpr::from_rational(k)], &["η".to_string()]);
                    return text;
                }
            }
        }
    }
    w.to_text(m.names())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifest::{parse_manifold, KENMOTSU3};

    #[test]
    fn renderings() {
        let m = parse_manifold(KENMOTSU3).unwrap();
        let cs = m.structure.clone().unwrap();
        assert_eq!(tensor(&m, m.metric.ricci()), "diag(-2, -2, -2)");
        assert_eq!(vector(&m, &m.vector("xi").unwrap()), "T3");
        assert_eq!(vector(&m, &m.vector("f3*@f1 - 2*f3*@f2").unwrap()), "T1 - 2*T2");
        assert_eq!(oneform(&m, &cs.eta().neg()), "-η");
        assert_eq!(oneform(&m, &OneForm::zero(3)), "0");
        let off = m.vector("f1*@f1").unwrap();
        assert_eq!(vector(&m, &off), "(f1/f3)*T1");
        let flat = m.metric.flat(&off);
        let res = residual(&m, &flat.tensor(cs.eta()).add(&cs.eta().tensor(&flat)));
        assert_eq!(res.len(), 1);
        assert_eq!(res["T1,T3"], "f1/f3");
    }
}
