//! Almost-contact metric structures, the Kenmotsu conditions and the
//! ∗-Ricci tensor.

use crate::error::{Error, Result};
use crate::geometry::{
    delta, lie_derivative_metric, Chart, EndoField, Frame, Mat, Metric, OneForm, SymTensor2, Tensor2, VectorField,
};
use crate::symkernel::{int, ScalarExpr};

/// `(φ, ξ, η, g)` on a chart of dimension `2n + 1`.
#[derive(Clone, Debug)]
pub struct ContactStructure {
    chart: Chart,
    metric: Metric,
    phi: EndoField,
    xi: VectorField,
    eta: OneForm,
    frame: Option<Frame>,
}

/// `η_a = g_{ab} ξ^b`.
pub fn derive_eta(g: &SymTensor2, xi: &VectorField) -> OneForm {
    g.lower_vector(xi)
}

impl ContactStructure {
    /// Assemble a structure. `eta` defaults to `g(·, ξ)`; a supplied `eta`
    /// must agree with it exactly. The structure identities themselves are
    /// not enforced here, see [`verify_almost_contact`].
    pub fn new(
        chart: Chart,
        metric: Metric,
        phi: EndoField,
        xi: VectorField,
        eta: Option<OneForm>,
        frame: Option<Frame>,
    ) -> Result<Self> {
        let d = metric.dim();
        if d != chart.dim() || phi.dim() != d || xi.dim() != d {
            return Err(Error::Dimension("structure components disagree on dimension".into()));
        }
        if d.is_multiple_of(2) || d < 3 {
            return Err(Error::Dimension(format!("contact structure needs odd d >= 3, got {d}")));
        }
        let derived = derive_eta(metric.g(), &xi);
        let eta = match eta {
            Some(e) if e != derived => return Err(Error::EtaMismatch),
            _ => derived,
        };
        Ok(ContactStructure {
            chart,
            metric,
            phi,
            xi,
            eta,
            frame,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn phi(&self) -> &EndoField {
        &self.phi
    }

    pub fn xi(&self) -> &VectorField {
        &self.xi
    }

    pub fn eta(&self) -> &OneForm {
        &self.eta
    }

    pub fn frame(&self) -> Option<&Frame> {
        self.frame.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    /// `n` with `d = 2n + 1`.
    pub fn n(&self) -> usize {
        (self.dim() - 1) / 2
    }

    fn names(&self) -> &[String] {
        self.chart.coords()
    }

    /// `η ⊗ η`.
    pub fn eta_squared(&self) -> SymTensor2 {
        SymTensor2::square_of(&self.eta)
    }
}

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityEntry {
    pub id: String,
    pub label: String,
    /// `"0"` when the identity holds, otherwise the first nonzero
    /// component and the number of nonzero components.
    pub residual: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub entries: Vec<IdentityEntry>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn get(&self, id: &str) -> Option<&IdentityEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityEntry> {
        self.entries.iter().filter(|e| !e.holds)
    }

    pub fn extend(&mut self, other: IdentityReport) {
        self.entries.extend(other.entries);
    }

    fn push(&mut self, id: &str, label: &str, names: &[String], comps: Vec<(Vec<usize>, ScalarExpr)>) {
        let nonzero: Vec<&(Vec<usize>, ScalarExpr)> = comps.iter().filter(|(_, e)| !e.is_zero()).collect();
        let residual = match nonzero.first() {
            None => "0".to_string(),
            Some((idx, e)) => {
                let at: Vec<&str> = idx.iter().map(|&i| names[i].as_str()).collect();
                format!("[{}] = {} ({} nonzero)", at.join(","), e.to_text(names), nonzero.len())
            }
        };
        self.entries.push(IdentityEntry {
            id: id.to_string(),
            label: label.to_string(),
            holds: nonzero.is_empty(),
            residual,
        });
    }
}

fn mat_components(m: &Mat) -> Vec<(Vec<usize>, ScalarExpr)> {
    let d = m.dim();
    let mut out = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            out.push((vec![a, b], m[(a, b)].clone()));
        }
    }
    out
}

fn vector_components(comps: &[ScalarExpr]) -> Vec<(Vec<usize>, ScalarExpr)> {
    comps.iter().enumerate().map(|(a, e)| (vec![a], e.clone())).collect()
}

/// `(g φ)_{ab} = g(∂_a, φ∂_b)`.
fn g_phi(cs: &ContactStructure) -> Mat {
    cs.metric.g().matrix().mul(cs.phi.matrix())
}

/// Check φ² = −Id + η⊗ξ, η(ξ) = 1, φξ = 0, η∘φ = 0, the metric
/// compatibility of φ, the skew-symmetry of `g(·, φ·)` and η = g(·, ξ).
pub fn verify_almost_contact(cs: &ContactStructure) -> IdentityReport {
    let d = cs.dim();
    let names = cs.names();
    let g = cs.metric.g().matrix();
    let phi = cs.phi.matrix();
    let mut report = IdentityReport::default();

    let expected = EndoField::outer(&cs.xi, &cs.eta).sub(&EndoField::identity(d));
    let res = cs.phi.compose(&cs.phi).sub(&expected);
    report.push(
        "phi-squared",
        "phi^2 = -Id + eta(x)xi",
        names,
        mat_components(res.matrix()),
    );

    let eta_xi = cs.eta.apply(&cs.xi) - ScalarExpr::one();
    report.push("eta-xi", "eta(xi) = 1", names, vec![(vec![], eta_xi)]);

    report.push(
        "phi-xi",
        "phi xi = 0",
        names,
        vector_components(cs.phi.apply(&cs.xi).comps()),
    );

    let eta_phi: Vec<ScalarExpr> = (0..d)
        .map(|b| (0..d).map(|a| cs.eta.comp(a) * &phi[(a, b)]).sum())
        .collect();
    report.push("eta-phi", "eta o phi = 0", names, vector_components(&eta_phi));

    let compat = phi.transpose().mul(g).mul(phi).sub(&g.sub(cs.eta_squared().matrix()));
    report.push(
        "phi-isometry",
        "g(phi X, phi Y) = g(X, Y) - eta(X)eta(Y)",
        names,
        mat_components(&compat),
    );

    let gp = g_phi(cs);
    report.push(
        "phi-skew",
        "g(X, phi Y) = -g(phi X, Y)",
        names,
        mat_components(&gp.add(&gp.transpose())),
    );

    let eta_res = cs.eta.sub(&derive_eta(cs.metric.g(), &cs.xi));
    report.push(
        "eta-dual",
        "g(X, xi) = eta(X)",
        names,
        vector_components(eta_res.comps()),
    );
    report
}

/// Check `(∇_X φ)Y = −g(X, φY)ξ − η(Y)φX` and `∇_X ξ = X − η(X)ξ` in every
/// pair of coordinate directions. A failing `η(ξ) = 1` precondition is
/// reported alongside.
pub fn verify_kenmotsu(cs: &ContactStructure) -> IdentityReport {
    let d = cs.dim();
    let names = cs.names();
    let conn = cs.metric.connection();
    let mut report = IdentityReport::default();

    let eta_xi = cs.eta.apply(&cs.xi) - ScalarExpr::one();
    if !eta_xi.is_zero() {
        report.push("eta-xi", "eta(xi) = 1", names, vec![(vec![], eta_xi)]);
    }

    let nabla_phi = conn.cov_deriv_endo_field(&cs.phi);
    let gp = g_phi(cs);
    let mut comps = Vec::with_capacity(d * d * d);
    for (a, np) in nabla_phi.iter().enumerate() {
        for b in 0..d {
            for c in 0..d {
                let rhs = -(&gp[(a, b)] * cs.xi.comp(c)) - cs.eta.comp(b) * cs.phi.comp(c, a);
                comps.push((vec![a, b, c], np.comp(c, b) - &rhs));
            }
        }
    }
    report.push(
        "nabla-phi",
        "(nabla_X phi)Y = -g(X, phi Y)xi - eta(Y)phi X",
        names,
        comps,
    );

    let nabla_xi = conn.cov_deriv_endo(&cs.xi);
    let mut comps = Vec::with_capacity(d * d);
    for a in 0..d {
        for c in 0..d {
            let rhs = delta(c, a) - cs.eta.comp(a) * cs.xi.comp(c);
            comps.push((vec![a, c], nabla_xi.comp(c, a) - &rhs));
        }
    }
    report.push("nabla-xi", "nabla_X xi = X - eta(X)xi", names, comps);
    report
}

/// Curvature, Ricci and derivative identities every Kenmotsu manifold
/// satisfies.
pub fn kenmotsu_identity_suite(cs: &ContactStructure) -> IdentityReport {
    let d = cs.dim();
    let n = cs.n() as i64;
    let names = cs.names();
    let metric = &cs.metric;
    let g = metric.g();
    let r = metric.curvature();
    let s = metric.ricci();
    let eta = &cs.eta;
    let xi = &cs.xi;
    let mut report = IdentityReport::default();

    // η(R(∂i, ∂j)∂k) = g_ik η_j − g_jk η_i
    let mut comps = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let lhs: ScalarExpr = (0..d).map(|l| eta.comp(l) * r.comp(l, k, i, j)).sum();
                let rhs = g.comp(i, k) * eta.comp(j) - g.comp(j, k) * eta.comp(i);
                comps.push((vec![i, j, k], lhs - rhs));
            }
        }
    }
    report.push(
        "eta-curvature",
        "eta(R(X, Y)Z) = g(X, Z)eta(Y) - g(Y, Z)eta(X)",
        names,
        comps,
    );

    // R(∂i, ∂j)ξ = η_i ∂j − η_j ∂i
    let mut comps = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                let lhs: ScalarExpr = (0..d).map(|k| xi.comp(k) * r.comp(l, k, i, j)).sum();
                let rhs = eta.comp(i) * delta(l, j) - eta.comp(j) * delta(l, i);
                comps.push((vec![i, j, l], lhs - rhs));
            }
        }
    }
    report.push("curvature-xi", "R(X, Y)xi = eta(X)Y - eta(Y)X", names, comps);

    // R(∂i, ξ)∂k = g_ik ξ − η_k ∂i
    let mut comps = Vec::new();
    for i in 0..d {
        for k in 0..d {
            for l in 0..d {
                let lhs: ScalarExpr = (0..d).map(|m| xi.comp(m) * r.comp(l, k, i, m)).sum();
                let rhs = g.comp(i, k) * xi.comp(l) - eta.comp(k) * delta(l, i);
                comps.push((vec![i, k, l], lhs - rhs));
            }
        }
    }
    report.push("curvature-x-xi", "R(X, xi)Y = g(X, Y)xi - eta(Y)X", names, comps);

    let s_xi = s.lower_vector(xi);
    let comps = (0..d)
        .map(|a| (vec![a], s_xi.comp(a) + &eta.comp(a).scale(&int(2 * n))))
        .collect();
    report.push("ricci-xi", "S(X, xi) = -2n eta(X)", names, comps);

    let phi = cs.phi.matrix();
    let res = phi
        .transpose()
        .mul(s.matrix())
        .mul(phi)
        .sub(s.matrix())
        .sub(&cs.eta_squared().matrix().scale_rational(&int(2 * n)));
    report.push(
        "ricci-phi",
        "S(phi X, phi Y) = S(X, Y) + 2n eta(X)eta(Y)",
        names,
        mat_components(&res),
    );

    let nabla_eta = metric.connection().cov_deriv_oneform(eta);
    let expected = g.sub(&cs.eta_squared());
    let res = nabla_eta.sub(&expected);
    report.push(
        "nabla-eta",
        "(nabla_X eta)Y = g(X, Y) - eta(X)eta(Y)",
        names,
        mat_components(res.matrix()),
    );

    let lxi = lie_derivative_metric(g, metric.connection(), xi);
    let res = lxi.sub(&expected.scale_rational(&int(2)));
    report.push(
        "lie-xi",
        "L_xi g = 2(g - eta(x)eta)",
        names,
        mat_components(res.matrix()),
    );
    report
}

/// ∗-Ricci tensor and ∗-scalar curvature, together with the trace of the
/// tensor as an independent value for the scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct StarRicci {
    pub tensor: SymTensor2,
    pub scalar: ScalarExpr,
    pub trace: ScalarExpr,
}

impl StarRicci {
    /// `g^{ab} S*_{ab} = r + 4n²`.
    pub fn consistent(&self) -> bool {
        self.scalar == self.trace
    }
}

/// `S* = S + (2n − 1)g + η⊗η`, `r* = r + 4n²`.
pub fn star_ricci_scalar(cs: &ContactStructure, s: &SymTensor2, r: &ScalarExpr) -> Result<StarRicci> {
    let d = cs.dim();
    if d.is_multiple_of(2) || d < 3 {
        return Err(Error::Dimension(format!("∗-Ricci needs odd d >= 3, got {d}")));
    }
    let n = cs.n() as i64;
    let tensor = s
        .add(&cs.metric.g().scale_rational(&int(2 * n - 1)))
        .add(&cs.eta_squared());
    let scalar = r + &ScalarExpr::from_int(4 * n * n);
    let trace = cs.metric.trace(&tensor);
    Ok(StarRicci { tensor, scalar, trace })
}

/// `S*` from the metric's own Ricci tensor and scalar curvature.
pub fn star_ricci(cs: &ContactStructure) -> Result<StarRicci> {
    star_ricci_scalar(cs, cs.metric.ricci(), cs.metric.scalar_curvature())
}

/// Frame components of a lower tensor when the structure has a frame.
pub fn frame_components(cs: &ContactStructure, t: &Tensor2) -> Option<Mat> {
    cs.frame.as_ref().map(|f| f.components(t).0)
}
