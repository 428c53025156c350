//! The `check`, `soliton` and `connection` commands. Each appends checks
//! to a report; input problems abort with an error instead.

use kenmotsu_core::connections::{
    b_tensor, cl_connection, cl_invariance_residual, cl_ricci_scalar, cl_xi_soliton_system, closed_check,
    svk_invariance_residual, svk_relations, svk_soliton_residual,
};
use kenmotsu_core::contact::{
    kenmotsu_identity_suite, star_ricci, verify_almost_contact, verify_kenmotsu, ContactStructure, IdentityReport,
};
use kenmotsu_core::geometry::{AffineConnection, OneForm, VectorField};
use kenmotsu_core::soliton::{
    beta_trace_formula, beta_trace_identity, conformal_killing_fit, phi_ric_fit, soliton_residual, soliton_solve,
    torse_forming_fit, AffineRelation, AffineSolution, PhiRicFit, SolitonKind, SolutionStatus,
};
use kenmotsu_core::symkernel::{int, ratio, Rational};
use kenmotsu_core::Error as CoreError;
use num_traits::Zero;

use crate::error::{is_input_error, CliError, Result};
use crate::format;
use crate::manifest::Manifold;
use crate::report::{Check, Report, Status};

fn structure<'a>(m: &'a Manifold, what: &str) -> Result<&'a ContactStructure> {
    m.structure
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("{what} needs a structure block (xi, phi)")))
}

fn potential(m: &Manifold, text: &str) -> Result<VectorField> {
    m.vector(text)
        .map_err(|e| CliError::Usage(format!("potential `{text}`: {e}")))
}

fn one_form(m: &Manifold, text: &str) -> Result<OneForm> {
    m.oneform(text)
        .map_err(|e| CliError::Usage(format!("one-form `{text}`: {e}")))
}

/// Input errors abort the command; anything else becomes an error entry.
fn recover<T>(report: &mut Report, name: &str, r: std::result::Result<T, CoreError>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if is_input_error(&e) => Err(e.into()),
        Err(e) => {
            report.push(Check::error(name, e));
            Ok(None)
        }
    }
}

fn identity_checks(report: &mut Report, identities: IdentityReport) {
    for e in identities.entries {
        let mut check = Check::new(e.id, Status::from_bool(e.holds)).value("identity", e.label);
        if !e.holds {
            check = check.residual([("first".to_string(), e.residual)].into());
        }
        report.push(check);
    }
}

/// Curvature values, then the structure identities and the ∗-Ricci
/// cross-check when the manifold carries a structure.
pub fn check(m: &Manifold, report: &mut Report) -> Result<()> {
    let key = |what: &str| format!("{what} ({})", format::basis(m));
    report.push(
        Check::new("curvature", Status::Pass)
            .value(key("S"), format::tensor(m, m.metric.ricci()))
            .value("r", format::scalar(m, m.metric.scalar_curvature())),
    );
    let Some(cs) = &m.structure else {
        for name in ["almost-contact", "kenmotsu", "identities", "star-ricci"] {
            report.push(Check::new(name, Status::Skipped).value("reason", "no structure block"));
        }
        return Ok(());
    };
    identity_checks(report, verify_almost_contact(cs));
    let kenmotsu = verify_kenmotsu(cs);
    let is_kenmotsu = kenmotsu.holds();
    identity_checks(report, kenmotsu);
    identity_checks(report, kenmotsu_identity_suite(cs));
    if !is_kenmotsu {
        report.push(Check::new("star-ricci", Status::Skipped).value("reason", "structure is not Kenmotsu"));
        return Ok(());
    }
    if let Some(star) = recover(report, "star-ricci", star_ricci(cs))? {
        report.push(
            Check::new("star-ricci", Status::from_bool(star.consistent()))
                .value(key("S*"), format::tensor(m, &star.tensor))
                .value("r* (formula)", format::scalar(m, &star.scalar))
                .value("r* (trace)", format::scalar(m, &star.trace)),
        );
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct SolitonArgs {
    pub kind: SolitonKind,
    pub potential: String,
    pub beta: Option<Rational>,
    pub mu: Option<Rational>,
    pub check_torse: bool,
    pub check_ckv: bool,
    pub check_phi_ric: bool,
}

fn solution_values(mut check: Check, sol: &AffineSolution) -> Check {
    check = check
        .value("status", sol.status.as_str())
        .value("verified", sol.verified.to_string());
    if let Some(b) = &sol.beta {
        check = check.value("β", format::rational(b));
    }
    if let Some(mu) = &sol.mu {
        check = check.value("μ", format::rational(mu));
    }
    if let Some(line) = &sol.line_relation {
        check = check.value("line", line.to_text("β", "μ"));
    }
    check
}

fn solve_status(status: SolutionStatus, verified: bool) -> Status {
    Status::from_bool(status == SolutionStatus::None || verified)
}

pub fn soliton(m: &Manifold, args: &SolitonArgs, report: &mut Report) -> Result<()> {
    let v = potential(m, &args.potential)?;
    let cs = m.structure.as_ref();
    let kind = args.kind;
    if args.beta.is_none() && args.mu.is_some() {
        return Err(CliError::Usage("--mu needs --beta".into()));
    }
    match (&args.beta, &args.mu) {
        (None, _) => {
            let solved = recover(report, "soliton-solve", soliton_solve(kind, &m.metric, cs, &v))?;
            if let Some(sol) = solved {
                let affine = AffineSolution {
                    status: sol.status,
                    beta: sol.beta.clone(),
                    mu: sol.mu.clone(),
                    line_relation: sol.line_relation.clone(),
                    verified: sol.verified,
                    sample_points: sol.sample_points,
                };
                let mut check = Check::new("soliton-solve", solve_status(sol.status, sol.verified))
                    .value("kind", kind.as_str())
                    .value("trace relation", sol.trace_relation.to_text(m.names(), "β", "μ"));
                check = solution_values(check, &affine);
                if let Some(c) = sol.classification {
                    check = check.value("classification", c.as_str());
                }
                report.push(check);
                if kind == SolitonKind::StarEtaSchouten {
                    trace_cross_check(m, &v, sol.trace_relation.as_affine(), sol.mu.as_ref(), report)?;
                }
            }
        }
        (Some(beta), mu) => {
            let mu = match (kind.has_eta(), mu) {
                (true, Some(mu)) => mu.clone(),
                (true, None) => return Err(CliError::Usage(format!("kind {kind} needs --mu"))),
                (false, None) => Rational::zero(),
                (false, Some(_)) => return Err(CliError::Usage(format!("kind {kind} has no μ"))),
            };
            let residual = recover(
                report,
                "soliton-residual",
                soliton_residual(kind, &m.metric, cs, &v, beta, &mu),
            )?;
            if let Some(res) = residual {
                let mut check = Check::new("soliton-residual", Status::from_bool(res.is_zero()))
                    .value("kind", kind.as_str())
                    .value("β", format::rational(beta))
                    .value(format!("residual ({})", format::basis(m)), format::tensor(m, &res));
                if kind.has_eta() {
                    check = check.value("μ", format::rational(&mu));
                }
                report.push(check.residual(format::residual(m, &res)));
            }
        }
    }
    if args.check_torse {
        let text = match torse_forming_fit(&m.metric, &v) {
            Some((a, w)) => format!("(a, ω) = ({}, {})", format::scalar(m, &a), format::oneform(m, &w)),
            None => "V is not torse-forming".to_string(),
        };
        report.push(Check::new("torse-forming", Status::Pass).value("result", text));
    }
    if args.check_ckv {
        let check = match conformal_killing_fit(&m.metric, &v) {
            Some(fit) => Check::new("conformal-killing", Status::Pass)
                .value("result", format!("V is {}", fit.class.as_str()))
                .value("Ω", format::scalar(m, &fit.omega)),
            None => Check::new("conformal-killing", Status::Pass).value("result", "V is not conformal Killing"),
        };
        report.push(check);
    }
    if args.check_phi_ric {
        let cs = structure(m, "--check-phi-ric")?;
        let check = Check::new("phi-ric", Status::Pass);
        let check = match phi_ric_fit(cs, m.metric.ricci(), &v) {
            PhiRicFit::Fit { psi, lie_identity } => check
                .value("result", "V is a Φ(Ric) field")
                .value("ψ", format::rational(&psi))
                .value("L_V g = 2ψS", lie_identity.to_string()),
            PhiRicFit::None => check.value("result", "V is not a Φ(Ric) field"),
            PhiRicFit::Indeterminate => check.value("result", "∇V = 0 and S = 0, ψ is undetermined"),
        };
        report.push(check);
    }
    Ok(())
}

/// `β(μ)` read from the trace of the ∗-η-Schouten equation, checked
/// against the solver's trace relation at a few values of μ.
fn trace_cross_check(
    m: &Manifold,
    v: &VectorField,
    relation: Option<AffineRelation>,
    solved_mu: Option<&Rational>,
    report: &mut Report,
) -> Result<()> {
    let Some(cs) = &m.structure else {
        return Ok(());
    };
    let name = "trace-cross-check";
    let bt = match beta_trace_identity(cs, v, &Rational::zero()) {
        Ok(bt) => bt,
        Err(CoreError::NonConstant(what)) => {
            report.push(Check::new(name, Status::Skipped).value("reason", format!("{what} is not constant")));
            return Ok(());
        }
        Err(e) => return recover::<()>(report, name, Err(e)).map(|_| ()),
    };
    let n = cs.n();
    // β + kμ + c = 0 with k = 4n / (4n(2n+1)) and c = −β(0)
    let k = int(4 * n as i64) * ratio(1, 4 * n as i64 * (2 * n as i64 + 1));
    let formula = AffineRelation {
        beta: int(1),
        mu: k,
        constant: -bt.beta.clone(),
    };
    let mut mus = vec![int(0), int(1), ratio(-3, 2)];
    mus.extend(solved_mu.cloned());
    let agrees = relation.as_ref().is_some_and(|rel| {
        mus.iter()
            .all(|mu| rel.holds_at(&beta_trace_formula(n, &bt.div_v, &bt.scalar_curvature, mu), mu))
    });
    let mut check = Check::new(name, Status::from_bool(agrees))
        .value("div V", format::rational(&bt.div_v))
        .value("r", format::rational(&bt.scalar_curvature))
        .value("formula", formula.to_text("β", "μ"));
    for mu in &mus {
        let beta = beta_trace_formula(n, &bt.div_v, &bt.scalar_curvature, mu);
        check = check.value(format!("β at μ = {}", format::rational(mu)), format::rational(&beta));
    }
    if bt.solenoidal {
        check = check.value("solenoidal", "true");
    }
    report.push(check);
    Ok(())
}

#[derive(Clone, Debug)]
pub enum ConnectionMode {
    Cl { rho: String, alpha: Rational },
    Svk,
}

#[derive(Clone, Debug)]
pub struct ConnectionArgs {
    pub mode: ConnectionMode,
    pub potential: Option<String>,
    pub beta: Option<Rational>,
    pub mu: Option<Rational>,
}

fn difference_values(
    m: &Manifold,
    mut check: Check,
    prefix: &str,
    a: &AffineConnection,
    b: &AffineConnection,
) -> Check {
    let names = m.names();
    let d = m.dim();
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                let diff = a.gamma(k, i, j) - b.gamma(k, i, j);
                if !diff.is_zero() {
                    let key = format!("{prefix}[{}; {} {}]", names[k], names[i], names[j]);
                    check = check.value(key, format::scalar(m, &diff));
                }
            }
        }
    }
    check
}

pub fn connection(m: &Manifold, args: &ConnectionArgs, report: &mut Report) -> Result<()> {
    let cs = structure(m, "connection")?;
    if args.mu.is_some() && args.beta.is_none() || args.beta.is_some() && args.mu.is_none() {
        return Err(CliError::Usage("--beta and --mu go together".into()));
    }
    let v = args.potential.as_deref().map(|p| potential(m, p)).transpose()?;
    match &args.mode {
        ConnectionMode::Cl { rho, alpha } => cl(m, cs, args, &one_form(m, rho)?, alpha, v.as_ref(), report),
        ConnectionMode::Svk => svk(m, cs, args, v.as_ref(), report),
    }
}

fn cl(
    m: &Manifold,
    cs: &ContactStructure,
    args: &ConnectionArgs,
    rho: &OneForm,
    alpha: &Rational,
    v: Option<&VectorField>,
    report: &mut Report,
) -> Result<()> {
    let key = |what: &str| format!("{what} ({})", format::basis(m));
    let lc = m.metric.connection();
    let Some(conn) = recover(report, "cl-connection", cl_connection(lc, cs, rho, alpha))? else {
        return Ok(());
    };
    report.push(difference_values(
        m,
        Check::new("cl-connection", Status::Pass),
        "Γf-Γ",
        &conn,
        lc,
    ));
    let b = b_tensor(cs, rho, alpha);
    report.push(
        Check::new("b-tensor", Status::Pass)
            .value(key("B"), format::tensor(m, &b.components))
            .value("symmetric", b.is_symmetric().to_string()),
    );
    let closed = closed_check(rho);
    report.push(
        Check::new("rho-closed", Status::from_bool(closed == b.is_symmetric()))
            .value("closed", closed.to_string())
            .value("B symmetric", b.is_symmetric().to_string()),
    );
    let s = m.metric.ricci();
    let r = m.metric.scalar_curvature();
    let (s_f, r_f) = cl_ricci_scalar(&m.metric, s, r, &b, cs.n());
    report.push(
        Check::new("cl-ricci", Status::Pass)
            .value(key("S^f"), format::tensor(m, &s_f))
            .value("r^f", format::scalar(m, &r_f)),
    );
    if let Some(v) = v {
        let res = cl_invariance_residual(cs, v, rho, alpha, &b);
        report.push(
            Check::new("cl-invariance", Status::Pass)
                .value("invariant", res.is_zero().to_string())
                .value(key("residual"), format::tensor(m, &res))
                .residual(format::residual(m, &res)),
        );
    }
    let system = cl_xi_soliton_system(cs, s, r, &b, rho);
    match (&args.beta, &args.mu) {
        (Some(beta), Some(mu)) => {
            let res = system
                .constant
                .add(&system.beta.scale_rational(beta))
                .add(&system.mu.scale_rational(mu));
            report.push(
                Check::new("cl-xi-soliton", Status::from_bool(res.is_zero()))
                    .value("β", format::rational(beta))
                    .value("μ", format::rational(mu))
                    .value(key("residual"), format::tensor(m, &res))
                    .residual(format::residual(m, &res)),
            );
        }
        _ => {
            if let Some(sol) = recover(report, "cl-xi-soliton", system.solve())? {
                let check = Check::new("cl-xi-soliton", solve_status(sol.status, sol.verified));
                report.push(solution_values(check, &sol));
            }
        }
    }
    Ok(())
}

fn svk(
    m: &Manifold,
    cs: &ContactStructure,
    args: &ConnectionArgs,
    v: Option<&VectorField>,
    report: &mut Report,
) -> Result<()> {
    let key = |what: &str| format!("{what} ({})", format::basis(m));
    let lc = m.metric.connection();
    let Some(rel) = recover(report, "svk-connection", svk_relations(cs, lc))? else {
        return Ok(());
    };
    report.push(difference_values(
        m,
        Check::new("svk-connection", Status::Pass).value("torsion-free", rel.connection.is_symmetric().to_string()),
        "Γ~-Γ",
        &rel.connection,
        lc,
    ));
    report.push(
        Check::new("svk-curvature", Status::from_bool(rel.curvature_matches))
            .value("direct == formula", rel.curvature_matches.to_string()),
    );
    report.push(
        Check::new("svk-ricci", Status::from_bool(rel.ricci_matches)).value(key("S~"), format::tensor(m, &rel.ricci)),
    );
    report.push(
        Check::new("svk-scalar", Status::from_bool(rel.scalar_matches)).value("r~", format::scalar(m, &rel.scalar)),
    );
    report.push(
        Check::new("svk-xi-parallel", Status::from_bool(rel.xi_parallel))
            .value("xi parallel", rel.xi_parallel.to_string()),
    );
    let Some(v) = v else {
        if args.beta.is_some() {
            return Err(CliError::Usage("--beta/--mu need --potential".into()));
        }
        return Ok(());
    };
    if let Some(res) = recover(report, "svk-invariance", svk_invariance_residual(cs, v))? {
        report.push(
            Check::new("svk-invariance", Status::Pass)
                .value("invariant", res.is_zero().to_string())
                .value(key("residual"), format::tensor(m, &res))
                .residual(format::residual(m, &res)),
        );
    }
    if let (Some(beta), Some(mu)) = (&args.beta, &args.mu) {
        if let Some(sol) = recover(report, "svk-soliton", svk_soliton_residual(cs, v, beta, mu))? {
            report.push(
                Check::new("svk-soliton", Status::from_bool(sol.residual.is_zero()))
                    .value("β", format::rational(beta))
                    .value("μ", format::rational(mu))
                    .value(key("residual"), format::tensor(m, &sol.residual))
                    .value(key("Levi-Civita residual"), format::tensor(m, &sol.lc_residual))
                    .value(key("invariance residual"), format::tensor(m, &sol.invariance))
                    .value(
                        key("residual - LC - invariance"),
                        format::tensor(m, &sol.decomposition_difference),
                    )
                    .residual(format::residual(m, &sol.residual)),
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifest::{parse_manifold, EUCLID3, KENMOTSU3};

    const V6: &str = "2*f1*@f1 + 2*f2*@f2 + f3*@f3";

    fn k3() -> Manifold {
        parse_manifold(KENMOTSU3).unwrap()
    }

    fn soliton_args(potential: &str) -> SolitonArgs {
        SolitonArgs {
            kind: SolitonKind::StarEtaSchouten,
            potential: potential.to_string(),
            beta: None,
            mu: None,
            check_torse: false,
            check_ckv: false,
            check_phi_ric: false,
        }
    }

    fn value<'a>(r: &'a Report, check: &str, key: &str) -> &'a str {
        &r.get(check).unwrap_or_else(|| panic!("no check {check}")).values[key]
    }

    #[test]
    fn check_kenmotsu3_passes() {
        let mut r = Report::new("-", None);
        check(&k3(), &mut r).unwrap();
        assert_eq!(r.exit_code(), 0, "{}", r.to_text());
        assert_eq!(value(&r, "curvature", "r"), "-6");
        assert_eq!(value(&r, "star-ricci", "r* (formula)"), "-2");
        assert_eq!(value(&r, "star-ricci", "r* (trace)"), "-2");
        assert_eq!(value(&r, "star-ricci", "S* (frame)"), "diag(-1, -1, 0)");
    }

    #[test]
    fn check_euclid3_fails_kenmotsu_conditions() {
        let mut r = Report::new("-", None);
        check(&parse_manifold(EUCLID3).unwrap(), &mut r).unwrap();
        assert_eq!(r.get("nabla-phi").unwrap().status, Status::Fail);
        assert_eq!(r.get("nabla-xi").unwrap().status, Status::Fail);
        assert_eq!(r.get("phi-squared").unwrap().status, Status::Pass);
        assert_eq!(r.get("star-ricci").unwrap().status, Status::Skipped);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn check_without_structure_skips() {
        let m = parse_manifold("dim 2\ncoords x y\nmetric g x x = 1\nmetric g y y = 1\n").unwrap();
        let mut r = Report::new("-", None);
        check(&m, &mut r).unwrap();
        assert_eq!(value(&r, "curvature", "r"), "0");
        assert_eq!(r.count(Status::Skipped), 4);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn soliton_solve_on_kenmotsu3() {
        let mut r = Report::new("-", None);
        soliton(&k3(), &soliton_args(V6), &mut r).unwrap();
        assert_eq!(value(&r, "soliton-solve", "status"), "unique");
        assert_eq!(value(&r, "soliton-solve", "β"), "-1/2");
        assert_eq!(value(&r, "soliton-solve", "μ"), "0");
        assert_eq!(value(&r, "soliton-solve", "classification"), "shrinking");
        assert_eq!(value(&r, "soliton-solve", "trace relation"), "β = (-2μ - 3)/6");
        assert_eq!(value(&r, "trace-cross-check", "div V"), "2");
        assert_eq!(value(&r, "trace-cross-check", "formula"), "β = (-2μ - 3)/6");
        assert_eq!(r.exit_code(), 0, "{}", r.to_text());
    }

    #[test]
    fn soliton_residual_at_zero() {
        let mut args = soliton_args(V6);
        args.beta = Some(int(0));
        args.mu = Some(int(0));
        let mut r = Report::new("-", None);
        soliton(&k3(), &args, &mut r).unwrap();
        assert_eq!(value(&r, "soliton-residual", "residual (frame)"), "diag(1, 1, 1)");
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn fitters() {
        let mut args = soliton_args(V6);
        args.check_torse = true;
        let mut r = Report::new("-", None);
        soliton(&k3(), &args, &mut r).unwrap();
        assert_eq!(value(&r, "torse-forming", "result"), "V is not torse-forming");
        let mut args = soliton_args("xi");
        args.check_torse = true;
        args.check_phi_ric = true;
        let mut r = Report::new("-", None);
        soliton(&k3(), &args, &mut r).unwrap();
        assert_eq!(value(&r, "torse-forming", "result"), "(a, ω) = (1, -η)");
        assert_eq!(value(&r, "phi-ric", "result"), "V is not a Φ(Ric) field");
    }

    #[test]
    fn usage_errors() {
        let mut args = soliton_args("@q");
        let mut r = Report::new("-", None);
        assert_eq!(soliton(&k3(), &args, &mut r).unwrap_err().exit_code(), 2);
        args.potential = V6.into();
        args.mu = Some(int(0));
        assert_eq!(soliton(&k3(), &args, &mut r).unwrap_err().exit_code(), 2);
        let m = parse_manifold("dim 2\ncoords x y\nmetric g x x = 1\nmetric g y y = 1\n").unwrap();
        let mut args = soliton_args("@x");
        args.kind = SolitonKind::Schouten;
        assert_eq!(soliton(&m, &args, &mut r).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn cl_on_kenmotsu3() {
        let args = ConnectionArgs {
            mode: ConnectionMode::Cl {
                rho: "-(1/f3)*d[f3]".into(),
                alpha: int(0),
            },
            potential: None,
            beta: None,
            mu: None,
        };
        let mut r = Report::new("-", None);
        connection(&k3(), &args, &mut r).unwrap();
        assert_eq!(value(&r, "b-tensor", "B (frame)"), "diag(1, 1, -1)");
        assert_eq!(value(&r, "cl-ricci", "S^f (frame)"), "diag(-4, -4, 0)");
        assert_eq!(value(&r, "cl-ricci", "r^f"), "-8");
        assert_eq!(value(&r, "rho-closed", "closed"), "true");
        assert_eq!(r.exit_code(), 0, "{}", r.to_text());
    }

    #[test]
    fn svk_on_kenmotsu3() {
        let args = ConnectionArgs {
            mode: ConnectionMode::Svk,
            potential: Some(V6.into()),
            beta: Some(ratio(-1, 2)),
            mu: Some(int(0)),
        };
        let mut r = Report::new("-", None);
        connection(&k3(), &args, &mut r).unwrap();
        assert_eq!(r.get("svk-curvature").unwrap().status, Status::Pass);
        assert_eq!(value(&r, "svk-ricci", "S~ (frame)"), "diag(0, 0, 0)");
        assert_eq!(value(&r, "svk-scalar", "r~"), "0");
        assert_eq!(r.get("svk-xi-parallel").unwrap().status, Status::Pass);
        let svk = r.get("svk-soliton").unwrap();
        assert_eq!(svk.status, Status::Fail);
        assert_eq!(svk.values["residual - LC - invariance (frame)"], "diag(3, 3, 3)");
        assert_eq!(svk.residual.as_ref().unwrap()["T1,T1"], "3");
        assert_eq!(svk.residual.as_ref().unwrap()["T3,T3"], "1");
    }
}
