//! CL-connections induced by an infinitesimal CL-transformation and the
//! Schouten–Van Kampen connection of an almost-contact structure.

use num_traits::Zero;

use crate::contact::ContactStructure;
use crate::error::{Error, Result};
use crate::geometry::{
    delta, lie_derivative_connection, ricci_tensor, riemann, AffineConnection, CurvatureTensor, Mat, Metric, OneForm,
    SymTensor2, Tensor2, VectorField,
};
use crate::soliton::{soliton_residual, solve_affine, AffineEquation, AffineSolution, SolitonKind};
use crate::symkernel::{int, ratio, Rational, ScalarExpr};

/// Parameters `(ρ, α)` of a CL-transformation.
#[derive(Clone, Debug, PartialEq)]
pub struct ClParams {
    pub rho: OneForm,
    pub alpha: Rational,
}

/// `ρ_j δ^k_i + ρ_i δ^k_j + α(η_j φ^k_i + η_i φ^k_j)`, the `(k, i, j)` component.
fn cl_difference(cs: &ContactStructure, rho: &OneForm, alpha: &Rational, k: usize, i: usize, j: usize) -> ScalarExpr {
    let eta = cs.eta();
    let phi = cs.phi();
    let mut acc = rho.comp(j) * &delta(k, i) + rho.comp(i) * &delta(k, j);
    if !alpha.is_zero() {
        let pattern = eta.comp(j) * phi.comp(k, i) + eta.comp(i) * phi.comp(k, j);
        acc = acc + pattern.scale(alpha);
    }
    acc
}

/// Recover `(ρ, α)` with `L_V Γ = ρ⊗δ + δ⊗ρ + α(η⊗φ + φ⊗η)`, if `V`
/// generates an infinitesimal CL-transformation of `conn`.
pub fn cl_fit(conn: &AffineConnection, cs: &ContactStructure, v: &VectorField) -> Option<ClParams> {
    let d = conn.dim();
    let lie = lie_derivative_connection(conn, v);
    let at = |k: usize, i: usize, j: usize| &lie[(k * d + i) * d + j];
    // contracting k with i kills the α-part since tr φ = 0 and η∘φ = 0
    let scale = ratio(1, d as i64 + 1);
    let rho = OneForm::new(
        (0..d)
            .map(|j| (0..d).map(|i| at(i, i, j).clone()).sum::<ScalarExpr>().scale(&scale))
            .collect(),
    );
    let zero = Rational::zero();
    let rest = |k: usize, i: usize, j: usize| at(k, i, j) - &cl_difference(cs, &rho, &zero, k, i, j);
    let pattern =
        |k: usize, i: usize, j: usize| cs.eta().comp(j) * cs.phi().comp(k, i) + cs.eta().comp(i) * cs.phi().comp(k, j);
    let mut alpha = Rational::zero();
    'search: for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                let p = pattern(k, i, j);
                if !p.is_zero() {
                    alpha = (rest(k, i, j) / p).as_rational()?;
                    break 'search;
                }
            }
        }
    }
    let fits = (0..d).all(|k| (0..d).all(|i| (0..d).all(|j| *at(k, i, j) == cl_difference(cs, &rho, &alpha, k, i, j))));
    fits.then_some(ClParams { rho, alpha })
}

/// `(L_V g)(X, Y) − (∇_X ρ)(Y) + α g(X, φY)`, symmetrized over `(X, Y)`.
pub fn cl_lvg_identity(cs: &ContactStructure, v: &VectorField, rho: &OneForm, alpha: &Rational) -> SymTensor2 {
    let metric = cs.metric();
    let g_phi = metric.g().matrix().mul(cs.phi().matrix());
    let t = metric
        .lie_derivative(v)
        .as_tensor()
        .sub(&metric.connection().cov_deriv_oneform(rho))
        .add(&Tensor2::lower(g_phi.scale_rational(alpha)));
    t.symmetrized()
}

/// `dρ = 0`, i.e. `∂_a ρ_b = ∂_b ρ_a` for all `a < b`.
pub fn closed_check(rho: &OneForm) -> bool {
    let d = rho.dim();
    (0..d).all(|a| (a + 1..d).all(|b| rho.comp(b).partial(a) == rho.comp(a).partial(b)))
}

/// `Γ^f = Γ + ρ⊗δ + δ⊗ρ + α(η⊗φ + φ⊗η)`.
pub fn cl_connection(
    conn: &AffineConnection,
    cs: &ContactStructure,
    rho: &OneForm,
    alpha: &Rational,
) -> Result<AffineConnection> {
    conn.plus_difference(conn.torsion_free(), |k, i, j| cl_difference(cs, rho, alpha, k, i, j))
}

/// `B(X, Y) = (∇_X ρ)(Y) − ρ(X)ρ(Y) − α²η(X)η(Y) − α[η(X)ρ(φY) + η(Y)ρ(φX)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BTensor {
    pub components: Tensor2,
}

impl BTensor {
    pub fn is_symmetric(&self) -> bool {
        self.components.is_symmetric()
    }

    pub fn as_symmetric(&self) -> Result<SymTensor2> {
        SymTensor2::new(self.components.clone())
    }
}

pub fn b_tensor(cs: &ContactStructure, rho: &OneForm, alpha: &Rational) -> BTensor {
    let metric = cs.metric();
    let d = metric.dim();
    let eta = cs.eta();
    let phi = cs.phi();
    let rho_phi: Vec<ScalarExpr> = (0..d)
        .map(|b| (0..d).map(|c| rho.comp(c) * phi.comp(c, b)).sum())
        .collect();
    let nabla_rho = metric.connection().cov_deriv_oneform(rho);
    let alpha2 = alpha * alpha;
    let m = Mat::from_fn(d, |a, b| {
        let mut acc = nabla_rho.comp(a, b) - rho.comp(a) * rho.comp(b);
        if !alpha.is_zero() {
            acc = acc - (eta.comp(a) * eta.comp(b)).scale(&alpha2);
            acc = acc - (eta.comp(a) * &rho_phi[b] + eta.comp(b) * &rho_phi[a]).scale(alpha);
        }
        acc
    });
    BTensor {
        components: Tensor2::lower(m),
    }
}

/// `S^f = S − 2nB` and `r^f = r − 2n Tr_g B`.
pub fn cl_ricci_scalar(
    metric: &Metric,
    s: &SymTensor2,
    r: &ScalarExpr,
    b: &BTensor,
    n: usize,
) -> (Tensor2, ScalarExpr) {
    let two_n = int(2 * n as i64);
    let s_f = s.as_tensor().sub(&b.components.scale_rational(&two_n));
    let r_f = r - &metric.trace(&b.components).scale(&two_n);
    (s_f, r_f)
}

/// `ρ(X)g(V,Y) + ρ(Y)g(X,V) + 2ρ(V)g(X,Y) + α[η(X)g(φV,Y) + η(Y)g(X,φV)]
/// − 4nB(X,Y) + 2n(Tr_g B)g(X,Y)`; zero exactly when a ∗-η-Schouten
/// soliton is invariant under the CL-connection.
pub fn cl_invariance_residual(
    cs: &ContactStructure,
    v: &VectorField,
    rho: &OneForm,
    alpha: &Rational,
    b: &BTensor,
) -> Tensor2 {
    let metric = cs.metric();
    let d = metric.dim();
    let g = metric.g();
    let n = cs.n() as i64;
    let v_flat = metric.flat(v);
    let phi_v_flat = metric.flat(&cs.phi().apply(v));
    let eta = cs.eta();
    let rho_v = rho.apply(v);
    let tr_b = metric.trace(&b.components);
    let g_coeff = rho_v.scale(&int(2)) + tr_b.scale(&int(2 * n));
    Tensor2::lower(Mat::from_fn(d, |x, y| {
        let mut acc = rho.comp(x) * v_flat.comp(y) + rho.comp(y) * v_flat.comp(x) + &g_coeff * g.comp(x, y);
        if !alpha.is_zero() {
            acc = acc + (eta.comp(x) * phi_v_flat.comp(y) + eta.comp(y) * phi_v_flat.comp(x)).scale(alpha);
        }
        acc - b.components.comp(x, y).scale(&int(4 * n))
    }))
}

/// The ∗-η-Schouten soliton condition with potential ξ relative to the
/// CL-connection, expressed through Levi-Civita quantities:
///
/// `[4 + 2ρ(ξ) − 2(r − 2n Tr_g B + 4n²)/(4n(2n−1)) + 2β] g + ρ⊗η + η⊗ρ
///  − [2S − 4nB + 2η⊗η]/(2n−1) + 2μ η⊗η`.
pub fn cl_xi_soliton_residual(
    cs: &ContactStructure,
    s: &SymTensor2,
    r: &ScalarExpr,
    b: &BTensor,
    beta: &Rational,
    mu: &Rational,
    rho: &OneForm,
) -> Tensor2 {
    let sys = cl_xi_soliton_system(cs, s, r, b, rho);
    sys.constant
        .add(&sys.beta.scale_rational(beta))
        .add(&sys.mu.scale_rational(mu))
}

/// [`cl_xi_soliton_residual`] split as `C + β·A + μ·B`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineTensorSystem {
    pub constant: Tensor2,
    pub beta: Tensor2,
    pub mu: Tensor2,
}

impl AffineTensorSystem {
    pub fn equation(&self) -> AffineEquation<'_> {
        AffineEquation {
            constant: &self.constant,
            beta: &self.beta,
            mu: Some(&self.mu),
        }
    }

    /// All `(β, μ)` making the residual vanish.
    pub fn solve(&self) -> Result<AffineSolution> {
        solve_affine(&self.equation())
    }
}

pub fn cl_xi_soliton_system(
    cs: &ContactStructure,
    s: &SymTensor2,
    r: &ScalarExpr,
    b: &BTensor,
    rho: &OneForm,
) -> AffineTensorSystem {
    let metric = cs.metric();
    let g = metric.g().as_tensor();
    let eta = cs.eta();
    let n = cs.n() as i64;
    let tr_b = metric.trace(&b.components);
    let inner = r - &tr_b.scale(&int(2 * n)) + ScalarExpr::from_int(4 * n * n);
    let g_coeff =
        ScalarExpr::from_int(4) + rho.apply(cs.xi()).scale(&int(2)) - inner.scale(&ratio(2, 4 * n * (2 * n - 1)));
    let eta2 = eta.tensor(eta);
    let bracket = s
        .as_tensor()
        .scale_rational(&int(2))
        .sub(&b.components.scale_rational(&int(4 * n)))
        .add(&eta2.scale_rational(&int(2)));
    let constant = g
        .scale(&g_coeff)
        .add(&rho.tensor(eta))
        .add(&eta.tensor(rho))
        .sub(&bracket.scale_rational(&ratio(1, 2 * n - 1)));
    AffineTensorSystem {
        constant,
        beta: g.scale_rational(&int(2)),
        mu: eta2.scale_rational(&int(2)),
    }
}

/// `Γ̃^k_{ij} = Γ^k_{ij} + g_{ij} ξ^k − η_j δ^k_i`; it has torsion.
pub fn svk_connection(conn: &AffineConnection, cs: &ContactStructure) -> Result<AffineConnection> {
    let g = cs.metric().g();
    let xi = cs.xi();
    let eta = cs.eta();
    conn.plus_difference(false, |k, i, j| g.comp(i, j) * xi.comp(k) - eta.comp(j) * &delta(k, i))
}

/// `∇̃_{∂a} ξ = 0` for every direction.
pub fn parallelizes(conn: &AffineConnection, v: &VectorField) -> bool {
    conn.cov_deriv_endo(v).is_zero()
}

fn require_three(cs: &ContactStructure) -> Result<()> {
    match cs.dim() {
        3 => Ok(()),
        d => Err(Error::Dimension(format!(
            "Schouten–Van Kampen relations need d = 3, got {d}"
        ))),
    }
}

/// Curvature of the Schouten–Van Kampen connection computed directly and
/// compared with the closed forms `R̃ = R + g(Y,Z)X − g(X,Z)Y`,
/// `S̃ = S + 2g`, `r̃ = r + 6`.
#[derive(Clone, Debug)]
pub struct SvkRelations {
    pub connection: AffineConnection,
    pub curvature: CurvatureTensor,
    pub curvature_matches: bool,
    pub ricci: SymTensor2,
    pub ricci_matches: bool,
    pub scalar: ScalarExpr,
    pub scalar_matches: bool,
    pub xi_parallel: bool,
}

impl SvkRelations {
    pub fn all_hold(&self) -> bool {
        self.curvature_matches && self.ricci_matches && self.scalar_matches && self.xi_parallel
    }
}

/// `R^l_{kij} + g_{jk} δ^l_i − g_{ik} δ^l_j`.
pub fn svk_curvature_formula(metric: &Metric) -> CurvatureTensor {
    let r = metric.curvature();
    let g = metric.g();
    CurvatureTensor::from_fn(metric.dim(), |l, k, i, j| {
        r.comp(l, k, i, j) + &(g.comp(j, k) * &delta(l, i)) - g.comp(i, k) * &delta(l, j)
    })
}

pub fn svk_relations(cs: &ContactStructure, conn: &AffineConnection) -> Result<SvkRelations> {
    require_three(cs)?;
    let metric = cs.metric();
    let connection = svk_connection(conn, cs)?;
    let curvature = riemann(&connection);
    let curvature_matches = curvature == svk_curvature_formula(metric);
    let ricci = metric.ricci().add(&metric.g().scale_rational(&int(2)));
    let ricci_matches = &ricci_tensor(&curvature) == ricci.as_tensor();
    let scalar = metric.scalar_curvature() + &ScalarExpr::from_int(6);
    let scalar_matches = metric.trace(&ricci) == scalar;
    let xi_parallel = parallelizes(&connection, cs.xi());
    Ok(SvkRelations {
        connection,
        curvature,
        curvature_matches,
        ricci,
        ricci_matches,
        scalar,
        scalar_matches,
        xi_parallel,
    })
}

/// `g(X,V)η(Y) + g(Y,V)η(X) − 2η(V)g(X,Y) − 2g(X,Y)`.
pub fn svk_invariance_residual(cs: &ContactStructure, v: &VectorField) -> Result<SymTensor2> {
    require_three(cs)?;
    Ok(svk_lie_correction(cs, v).sub(&cs.metric().g().scale_rational(&int(2))))
}

/// `L̃_V g − L_V g = g(X,V)η(Y) + g(Y,V)η(X) − 2η(V)g(X,Y)`.
fn svk_lie_correction(cs: &ContactStructure, v: &VectorField) -> SymTensor2 {
    let metric = cs.metric();
    let v_flat = metric.flat(v);
    let eta = cs.eta();
    let mixed = v_flat.tensor(eta).add(&eta.tensor(&v_flat));
    let sym = SymTensor2::new(mixed).expect("sum of a tensor and its transpose");
    sym.sub(&metric.g().scale(&eta.apply(v).scale(&int(2))))
}

/// The ∗-η-Schouten soliton equation relative to the Schouten–Van Kampen
/// connection, evaluated with `L̃_V g`, `S̃` and `r̃`, together with its
/// comparison against the Levi-Civita residual plus the invariance residual.
#[derive(Clone, Debug, PartialEq)]
pub struct SvkSoliton {
    pub residual: SymTensor2,
    pub lc_residual: SymTensor2,
    pub invariance: SymTensor2,
    /// `residual − lc_residual − invariance`.
    pub decomposition_difference: SymTensor2,
}

impl SvkSoliton {
    pub fn decomposes(&self) -> bool {
        self.decomposition_difference.is_zero()
    }
}

/// `L̃_V g + 2S̃ + 2η⊗η + [2 − (r̃ + 4)/2 + 2β] g + 2μ η⊗η`.
pub fn svk_soliton_residual(
    cs: &ContactStructure,
    v: &VectorField,
    beta: &Rational,
    mu: &Rational,
) -> Result<SvkSoliton> {
    require_three(cs)?;
    let metric = cs.metric();
    let g = metric.g();
    let eta2 = cs.eta_squared();
    let lie_tilde = metric.lie_derivative(v).add(&svk_lie_correction(cs, v));
    let s_tilde = metric.ricci().add(&g.scale_rational(&int(2)));
    let r_tilde = metric.scalar_curvature() + &ScalarExpr::from_int(6);
    let g_coeff = ScalarExpr::from_int(2) - (r_tilde + ScalarExpr::from_int(4)).scale(&ratio(1, 2))
        + ScalarExpr::from_rational(int(2) * beta);
    let residual = lie_tilde
        .add(&s_tilde.scale_rational(&int(2)))
        .add(&eta2.scale_rational(&(int(2) + int(2) * mu)))
        .add(&g.scale(&g_coeff));
    let lc_residual = soliton_residual(SolitonKind::StarEtaSchouten, metric, Some(cs), v, beta, mu)?;
    let invariance = svk_invariance_residual(cs, v)?;
    let decomposition_difference = residual.sub(&lc_residual).sub(&invariance);
    Ok(SvkSoliton {
        residual,
        lc_residual,
        invariance,
        decomposition_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Chart, EndoField, Frame, FrameMatrix};

    fn k3() -> ContactStructure {
        let chart = Chart::new(["f1", "f2", "f3"]).unwrap();
        let t: Vec<VectorField> = ["f3*@f1", "f3*@f2", "-f3*@f3"]
            .iter()
            .map(|s| chart.vector(s).unwrap())
            .collect();
        let frame = Frame::new(t.clone()).unwrap();
        let g = frame.dual_metric();
        let phi = EndoField::from_columns(&[
            chart.vector("-@f2").unwrap(),
            chart.vector("@f1").unwrap(),
            VectorField::zero(3),
        ]);
        ContactStructure::new(chart, Metric::new(g).unwrap(), phi, t[2].clone(), None, Some(frame)).unwrap()
    }

    fn euclid3() -> ContactStructure {
        let chart = Chart::new(["x", "y", "z"]).unwrap();
        let phi = EndoField::from_columns(&[
            chart.vector("-@y").unwrap(),
            chart.vector("@x").unwrap(),
            VectorField::zero(3),
        ]);
        ContactStructure::new(
            chart,
            Metric::euclidean(3),
            phi,
            VectorField::coordinate(3, 2),
            None,
            None,
        )
        .unwrap()
    }

    fn frame(cs: &ContactStructure, t: &Tensor2) -> FrameMatrix {
        cs.frame().unwrap().components(t)
    }

    fn diag(values: &[i64]) -> Mat {
        Mat::from_fn(values.len(), |i, j| {
            ScalarExpr::from_int(if i == j { values[i] } else { 0 })
        })
    }

    #[test]
    fn cl_fit_examples() {
        let cs = euclid3();
        let flat = AffineConnection::flat(3);
        let affine = cs.chart().vector("x*@y + 3*@z").unwrap();
        let fit = cl_fit(&flat, &cs, &affine).unwrap();
        assert!(fit.rho.is_zero() && fit.alpha.is_zero());

        let v = VectorField::position(3).scale(&ScalarExpr::var(0));
        let fit = cl_fit(&flat, &cs, &v).unwrap();
        assert_eq!(fit.rho, cs.chart().oneform("d[x]").unwrap());
        assert!(fit.alpha.is_zero());

        let v = cs.chart().vector("x^2*@x").unwrap();
        assert_eq!(cl_fit(&flat, &cs, &v), None);
    }

    #[test]
    fn cl_lvg_on_k3() {
        let cs = k3();
        let two_eta = cs.eta().scale(&ScalarExpr::from_int(2));
        assert!(cl_lvg_identity(&cs, cs.xi(), &two_eta, &int(0)).is_zero());
        let res = cl_lvg_identity(&cs, cs.xi(), &OneForm::zero(3), &int(0));
        assert_eq!(frame(&cs, &res).0, diag(&[2, 2, 0]));
    }

    #[test]
    fn closedness() {
        let cs = k3();
        assert!(closed_check(cs.eta()));
        assert!(!closed_check(&cs.chart().oneform("f2*d[f1]").unwrap()));
        assert!(closed_check(&cs.chart().oneform("d[f1]").unwrap()));
    }

    #[test]
    fn cl_connection_values() {
        let cs = k3();
        let conn = cs.metric().connection();
        let t = cs.frame().unwrap().vectors().to_vec();
        let cl = cl_connection(conn, &cs, cs.eta(), &int(0)).unwrap();
        assert_eq!(cl.cov_deriv_vector(&t[2], &t[2]), t[2].scale(&ScalarExpr::from_int(2)));
        let cl = cl_connection(conn, &cs, &OneForm::zero(3), &int(1)).unwrap();
        assert_eq!(cl.cov_deriv_vector(&t[2], &t[0]), t[1].neg());
        assert!(cl.torsion_free());
    }

    #[test]
    fn b_tensor_and_cl_ricci() {
        let cs = k3();
        let m = cs.metric();
        let b = b_tensor(&cs, cs.eta(), &int(0));
        assert!(b.is_symmetric());
        assert_eq!(frame(&cs, &b.components).0, diag(&[1, 1, -1]));
        let (s_f, r_f) = cl_ricci_scalar(m, m.ricci(), m.scalar_curvature(), &b, 1);
        assert_eq!(frame(&cs, &s_f).0, diag(&[-4, -4, 0]));
        assert_eq!(r_f, ScalarExpr::from_int(-8));

        let b = b_tensor(&cs, &OneForm::zero(3), &int(1));
        assert_eq!(frame(&cs, &b.components).0, diag(&[0, 0, -1]));
        let (s_f, r_f) = cl_ricci_scalar(m, m.ricci(), m.scalar_curvature(), &b, 1);
        assert_eq!(frame(&cs, &s_f).get(2, 2), &ScalarExpr::zero());
        assert_eq!(r_f, ScalarExpr::from_int(-4));
    }

    #[test]
    fn cl_invariance_values() {
        let cs = k3();
        let b = b_tensor(&cs, cs.eta(), &int(0));
        let res = frame(&cs, &cl_invariance_residual(&cs, cs.xi(), cs.eta(), &int(0), &b));
        assert!(res.get(0, 0).is_zero());
        assert_eq!(res.get(2, 2), &ScalarExpr::from_int(10));

        let b = b_tensor(&cs, &OneForm::zero(3), &int(1));
        let res = frame(
            &cs,
            &cl_invariance_residual(&cs, &VectorField::zero(3), &OneForm::zero(3), &int(1), &b),
        );
        assert_eq!(res.get(2, 2), &ScalarExpr::from_int(2));
    }

    #[test]
    fn cl_xi_soliton_values() {
        let cs = k3();
        let m = cs.metric();
        let b = BTensor {
            components: Tensor2::zero(3),
        };
        let rho = OneForm::zero(3);
        let res = cl_xi_soliton_residual(&cs, m.ricci(), m.scalar_curvature(), &b, &ratio(-9, 2), &int(1), &rho);
        assert!(res.is_zero());
        let res = cl_xi_soliton_residual(&cs, m.ricci(), m.scalar_curvature(), &b, &int(0), &int(0), &rho);
        let fm = frame(&cs, &res);
        assert_eq!(fm.get(0, 0), &ScalarExpr::from_int(9));
        assert!(fm.get(0, 1).is_zero());
        let sol = cl_xi_soliton_system(&cs, m.ricci(), m.scalar_curvature(), &b, &rho)
            .solve()
            .unwrap();
        assert_eq!(sol.status, crate::soliton::SolutionStatus::Unique);
        assert_eq!((sol.beta, sol.mu), (Some(ratio(-9, 2)), Some(int(1))));
        assert!(sol.verified);
    }

    #[test]
    fn svk_values() {
        let cs = k3();
        let conn = cs.metric().connection();
        let t = cs.frame().unwrap().vectors().to_vec();
        let svk = svk_connection(conn, &cs).unwrap();
        assert!(!svk.torsion_free());
        assert!(svk.cov_deriv_vector(&t[0], &t[0]).is_zero());
        assert!(svk.cov_deriv_vector(&t[2], &t[0]).is_zero());
        let rel = svk_relations(&cs, conn).unwrap();
        assert!(rel.all_hold());
        assert!(frame(&cs, &rel.ricci).0.is_zero());
        assert!(rel.scalar.is_zero());
    }

    #[test]
    fn svk_invariance_values() {
        let cs = k3();
        let v = cs.chart().vector("2*f1*@f1 + 2*f2*@f2 + f3*@f3").unwrap();
        let fm = frame(&cs, &svk_invariance_residual(&cs, &v).unwrap());
        assert!(fm.get(0, 0).is_zero());
        assert_eq!(fm.get(2, 2), &ScalarExpr::from_int(-2));
        let fm = frame(&cs, &svk_invariance_residual(&cs, &VectorField::zero(3)).unwrap());
        assert_eq!(fm.0, diag(&[-2, -2, -2]));
        let fm = frame(&cs, &svk_invariance_residual(&cs, cs.xi()).unwrap());
        assert_eq!(fm.get(2, 2), &ScalarExpr::from_int(-2));
    }

    #[test]
    fn svk_soliton_differs_from_decomposition_by_3g() {
        let cs = k3();
        let v = cs.chart().vector("2*f1*@f1 + 2*f2*@f2 + f3*@f3").unwrap();
        let sol = svk_soliton_residual(&cs, &v, &ratio(-1, 2), &int(0)).unwrap();
        assert!(sol.lc_residual.is_zero());
        assert_eq!(sol.decomposition_difference, cs.metric().g().scale_rational(&int(3)));
        let fm = frame(&cs, &sol.residual);
        assert_eq!(
            fm.diagonal(),
            vec![3, 3, 1].into_iter().map(ScalarExpr::from_int).collect::<Vec<_>>()
        );
    }

    #[test]
    fn svk_needs_three_dimensions() {
        let chart = Chart::new(["a", "b", "c", "d", "e"]).unwrap();
        let mut cols: Vec<VectorField> = vec![VectorField::zero(5); 5];
        cols[0] = VectorField::coordinate(5, 1).neg();
        cols[1] = VectorField::coordinate(5, 0);
        cols[2] = VectorField::coordinate(5, 3).neg();
        cols[3] = VectorField::coordinate(5, 2);
        let cs = ContactStructure::new(
            chart,
            Metric::euclidean(5),
            EndoField::from_columns(&cols),
            VectorField::coordinate(5, 4),
            None,
            None,
        )
        .unwrap();
        assert!(matches!(
            svk_invariance_residual(&cs, &VectorField::zero(5)),
            Err(Error::Dimension(_))
        ));
    }
}
