use num_traits::One;

use super::tensor::{EndoField, Mat, OneForm, SymTensor2, Tensor2, Variance, VectorField};
use crate::error::{Error, Result};
use crate::symkernel::{Rational, ScalarExpr};

/// Connection coefficients `Γ^k_{ij}` with `∇_{∂_i} ∂_j = Γ^k_{ij} ∂_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineConnection {
    d: usize,
    gamma: Vec<ScalarExpr>,
    torsion_free: bool,
}

impl AffineConnection {
    /// Build from `f(k, i, j) = Γ^k_{ij}`. A torsion-free flag is verified.
    pub fn from_fn(d: usize, torsion_free: bool, mut f: impl FnMut(usize, usize, usize) -> ScalarExpr) -> Result<Self> {
        let mut gamma = Vec::with_capacity(d * d * d);
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    gamma.push(f(k, i, j));
                }
            }
        }
        let conn = AffineConnection { d, gamma, torsion_free };
        if torsion_free && !conn.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(conn)
    }

    /// The flat connection of the coordinate chart.
    pub fn flat(d: usize) -> Self {
        AffineConnection {
            d,
            gamma: vec![ScalarExpr::zero(); d * d * d],
            torsion_free: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn torsion_free(&self) -> bool {
        self.torsion_free
    }

    /// `Γ^k_{ij}`.
    pub fn gamma(&self, k: usize, i: usize, j: usize) -> &ScalarExpr {
        &self.gamma[(k * self.d + i) * self.d + j]
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.d;
        (0..d).all(|k| (0..d).all(|i| (i + 1..d).all(|j| self.gamma(k, i, j) == self.gamma(k, j, i))))
    }

    /// `∇_X Y`.
    pub fn cov_deriv_vector(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let d = self.d;
        let mut out = Vec::with_capacity(d);
        for c in 0..d {
            let mut acc = x.apply(y.comp(c));
            for a in 0..d {
                if x.comp(a).is_zero() {
                    continue;
                }
                for b in 0..d {
                    let g = self.gamma(c, a, b);
                    if g.is_zero() || y.comp(b).is_zero() {
                        continue;
                    }
                    acc = acc + &(x.comp(a) * y.comp(b)) * g;
                }
            }
            out.push(acc);
        }
        VectorField::new(out)
    }

    /// `∇V` as the endomorphism `X ↦ ∇_X V`, entry `(c, a) = (∇_{∂_a} V)^c`.
    pub fn cov_deriv_endo(&self, v: &VectorField) -> EndoField {
        let d = self.d;
        let cols: Vec<VectorField> = (0..d)
            .map(|a| self.cov_deriv_vector(&VectorField::coordinate(d, a), v))
            .collect();
        EndoField::from_columns(&cols)
    }

    /// `(∇ρ)_{ab} = ∂_a ρ_b − Γ^c_{ab} ρ_c`, so that `(∇ρ)(X, Y) = (∇_X ρ)(Y)`.
    pub fn cov_deriv_oneform(&self, rho: &OneForm) -> Tensor2 {
        let d = self.d;
        Tensor2::lower(Mat::from_fn(d, |a, b| {
            let mut acc = rho.comp(b).partial(a);
            for c in 0..d {
                let g = self.gamma(c, a, b);
                if !g.is_zero() && !rho.comp(c).is_zero() {
                    acc = acc - g * rho.comp(c);
                }
            }
            acc
        }))
    }

    /// `(∇_a A)^c_b = ∂_a A^c_b + Γ^c_{am} A^m_b − Γ^m_{ab} A^c_m`, as one endomorphism per direction `a`.
    pub fn cov_deriv_endo_field(&self, phi: &EndoField) -> Vec<EndoField> {
        let d = self.d;
        (0..d)
            .map(|a| {
                EndoField::new(Mat::from_fn(d, |c, b| {
                    let mut acc = phi.comp(c, b).partial(a);
                    for m in 0..d {
                        let g1 = self.gamma(c, a, m);
                        if !g1.is_zero() && !phi.comp(m, b).is_zero() {
                            acc = acc + g1 * phi.comp(m, b);
                        }
                        let g2 = self.gamma(m, a, b);
                        if !g2.is_zero() && !phi.comp(c, m).is_zero() {
                            acc = acc - g2 * phi.comp(c, m);
                        }
                    }
                    acc
                }))
            })
            .collect()
    }

    /// `∇_a g_{bc}` for every `(a, b, c)`, flattened as `[a][b][c]`.
    pub fn cov_deriv_metric(&self, g: &Tensor2) -> Vec<ScalarExpr> {
        let d = self.d;
        let mut out = Vec::with_capacity(d * d * d);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let mut acc = g.comp(b, c).partial(a);
                    for m in 0..d {
                        acc = acc - self.gamma(m, a, b) * g.comp(m, c);
                        acc = acc - self.gamma(m, a, c) * g.comp(b, m);
                    }
                    out.push(acc);
                }
            }
        }
        out
    }

    /// Add a `(1,2)`-tensor `D^k_{ij}` to the coefficients.
    pub fn plus_difference(
        &self,
        torsion_free: bool,
        mut diff: impl FnMut(usize, usize, usize) -> ScalarExpr,
    ) -> Result<AffineConnection> {
        AffineConnection::from_fn(self.d, torsion_free, |k, i, j| self.gamma(k, i, j) + diff(k, i, j))
    }
}

/// Inverse metric `g^{ab}`.
pub fn metric_inverse(g: &SymTensor2) -> Result<SymTensor2> {
    if g.variance() != Variance::Lower {
        return Err(Error::Dimension("metric must be a lower tensor".into()));
    }
    let inv = g.matrix().inverse().ok_or(Error::SingularMetric)?;
    SymTensor2::new(Tensor2::new(Variance::Upper, inv))
}

/// Christoffel symbols `Γ^k_{ij} = ½ g^{kl}(∂_i g_{jl} + ∂_j g_{il} − ∂_l g_{ij})`.
pub fn levi_civita(g: &SymTensor2) -> Result<AffineConnection> {
    let inv = metric_inverse(g)?;
    Ok(levi_civita_with_inverse(g, &inv))
}

pub(crate) fn levi_civita_with_inverse(g: &SymTensor2, inv: &SymTensor2) -> AffineConnection {
    let d = g.dim();
    // dg[l][i][j] = ∂_l g_ij
    let dg: Vec<Vec<ScalarExpr>> = (0..d)
        .map(|l| (0..d * d).map(|ij| g.comp(ij / d, ij % d).partial(l)).collect())
        .collect();
    let half = Rational::new(1.into(), 2.into());
    // first kind: [ij, l]
    let mut first = vec![ScalarExpr::zero(); d * d * d];
    for i in 0..d {
        for j in i..d {
            for l in 0..d {
                let v = &(&dg[i][j * d + l] + &dg[j][i * d + l]) - &dg[l][i * d + j];
                first[(i * d + j) * d + l] = v.clone();
                first[(j * d + i) * d + l] = v;
            }
        }
    }
    let mut gamma = vec![ScalarExpr::zero(); d * d * d];
    for k in 0..d {
        for i in 0..d {
            for j in i..d {
                let mut acc = ScalarExpr::zero();
                for l in 0..d {
                    let a = inv.comp(k, l);
                    let b = &first[(i * d + j) * d + l];
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a * b;
                    }
                }
                let v = acc.scale(&half);
                gamma[(k * d + i) * d + j] = v.clone();
                gamma[(k * d + j) * d + i] = v;
            }
        }
    }
    AffineConnection {
        d,
        gamma,
        torsion_free: true,
    }
}

/// `[X, Y]^b = X^a ∂_a Y^b − Y^a ∂_a X^b`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    assert_eq!(x.dim(), y.dim(), "vector field dimension mismatch");
    VectorField::new((0..x.dim()).map(|b| x.apply(y.comp(b)) - y.apply(x.comp(b))).collect())
}

/// `(L_V g)(X, Y) = g(∇_X V, Y) + g(X, ∇_Y V)`.
pub fn lie_derivative_metric(g: &SymTensor2, conn: &AffineConnection, v: &VectorField) -> SymTensor2 {
    let d = g.dim();
    let nabla_v = conn.cov_deriv_endo(v);
    // h_{ab} = g_{cb} (∇_a V)^c
    let h = Mat::from_fn(d, |a, b| (0..d).map(|c| g.comp(c, b) * nabla_v.comp(c, a)).sum());
    SymTensor2::lower_from_upper_triangle(d, |a, b| &h[(a, b)] + &h[(b, a)])
}

/// `(L_V g)_{ab} = V^c ∂_c g_{ab} + (∂_a V^c) g_{cb} + (∂_b V^c) g_{ac}`.
pub fn lie_derivative_metric_coordinate(g: &SymTensor2, v: &VectorField) -> SymTensor2 {
    let d = g.dim();
    SymTensor2::lower_from_upper_triangle(d, |a, b| {
        let mut acc = v.apply(g.comp(a, b));
        for c in 0..d {
            acc = acc + v.comp(c).partial(a) * g.comp(c, b) + v.comp(c).partial(b) * g.comp(a, c);
        }
        acc
    })
}

/// Lie derivative of connection coefficients, flattened as `[k][i][j]`:
/// `V^m ∂_m Γ^k_{ij} − (∂_m V^k)Γ^m_{ij} + (∂_i V^m)Γ^k_{mj} + (∂_j V^m)Γ^k_{im} + ∂_i∂_j V^k`.
pub fn lie_derivative_connection(conn: &AffineConnection, v: &VectorField) -> Vec<ScalarExpr> {
    let d = conn.dim();
    let dv: Vec<Vec<ScalarExpr>> = (0..d).map(|m| (0..d).map(|a| v.comp(m).partial(a)).collect()).collect();
    let mut out = Vec::with_capacity(d * d * d);
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                let mut acc = v.apply(conn.gamma(k, i, j));
                for m in 0..d {
                    acc = acc - &dv[k][m] * conn.gamma(m, i, j);
                    acc = acc + &dv[m][i] * conn.gamma(k, m, j);
                    acc = acc + &dv[m][j] * conn.gamma(k, i, m);
                }
                acc = acc + dv[k][i].partial(j);
                out.push(acc);
            }
        }
    }
    out
}

/// `div V = ∂_a V^a + Γ^a_{ab} V^b`.
pub fn divergence(conn: &AffineConnection, v: &VectorField) -> ScalarExpr {
    let d = conn.dim();
    let mut acc = ScalarExpr::zero();
    for a in 0..d {
        acc = acc + v.comp(a).partial(a);
        for b in 0..d {
            acc = acc + conn.gamma(a, a, b) * v.comp(b);
        }
    }
    acc
}

/// `(grad f)^a = g^{ab} ∂_b f`.
pub fn gradient(inv: &SymTensor2, f: &ScalarExpr) -> VectorField {
    let d = inv.dim();
    let df: Vec<ScalarExpr> = (0..d).map(|b| f.partial(b)).collect();
    VectorField::new((0..d).map(|a| (0..d).map(|b| inv.comp(a, b) * &df[b]).sum()).collect())
}

/// `Δf = div(grad f)`.
pub fn laplacian(inv: &SymTensor2, conn: &AffineConnection, f: &ScalarExpr) -> ScalarExpr {
    divergence(conn, &gradient(inv, f))
}

/// Kronecker delta as an expression.
pub(crate) fn delta(a: usize, b: usize) -> ScalarExpr {
    if a == b {
        ScalarExpr::from_rational(Rational::one())
    } else {
        ScalarExpr::zero()
    }
}
