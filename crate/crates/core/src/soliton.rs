//! Soliton residuals, the exact solver for the soliton constants and the
//! structure fitters (conformal Killing, η-Einstein, Φ(Ric), torse-forming).

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::contact::{star_ricci, verify_kenmotsu, ContactStructure};
use crate::error::{Error, Result};
use crate::geometry::{delta, EndoField, Metric, OneForm, SymTensor2, Tensor2, VectorField};
use crate::symkernel::{int, ratio, rational_text, Rational, ScalarExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolitonKind {
    Ricci,
    EtaRicci,
    Schouten,
    StarSchouten,
    EtaSchouten,
    StarEtaSchouten,
}

impl SolitonKind {
    pub const ALL: [SolitonKind; 6] = [
        SolitonKind::Ricci,
        SolitonKind::EtaRicci,
        SolitonKind::Schouten,
        SolitonKind::StarSchouten,
        SolitonKind::EtaSchouten,
        SolitonKind::StarEtaSchouten,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SolitonKind::Ricci => "ricci",
            SolitonKind::EtaRicci => "eta-ricci",
            SolitonKind::Schouten => "schouten",
            SolitonKind::StarSchouten => "star-schouten",
            SolitonKind::EtaSchouten => "eta-schouten",
            SolitonKind::StarEtaSchouten => "star-eta-schouten",
        }
    }

    /// Kinds with the extra `2μ η⊗η` term.
    pub fn has_eta(self) -> bool {
        matches!(
            self,
            SolitonKind::EtaRicci | SolitonKind::EtaSchouten | SolitonKind::StarEtaSchouten
        )
    }

    pub fn is_star(self) -> bool {
        matches!(self, SolitonKind::StarSchouten | SolitonKind::StarEtaSchouten)
    }

    pub fn is_schouten(self) -> bool {
        !matches!(self, SolitonKind::Ricci | SolitonKind::EtaRicci)
    }

    /// Number of unknown constants: `λ` alone, or `(β, μ)`.
    pub fn unknowns(self) -> usize {
        if self.has_eta() {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for SolitonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolitonKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SolitonKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Structure(format!("unknown soliton kind `{s}`")))
    }
}

/// Schouten and ∗-Schouten tensors.
#[derive(Clone, Debug, PartialEq)]
pub struct SchoutenPair {
    pub schouten: SymTensor2,
    pub star_schouten: SymTensor2,
}

/// `(1/(d−2)) [S − r/(2(d−1)) g]`.
pub fn schouten(g: &SymTensor2, s: &SymTensor2, r: &ScalarExpr, d: usize) -> Result<SymTensor2> {
    if d < 3 {
        return Err(Error::Dimension(format!("Schouten tensor needs d >= 3, got {d}")));
    }
    let d = d as i64;
    let trace_part = g.scale(&r.scale(&ratio(1, 2 * (d - 1))));
    Ok(s.sub(&trace_part).scale_rational(&ratio(1, d - 2)))
}

pub fn schouten_tensors(
    g: &SymTensor2,
    s: &SymTensor2,
    r: &ScalarExpr,
    s_star: &SymTensor2,
    r_star: &ScalarExpr,
    d: usize,
) -> Result<SchoutenPair> {
    Ok(SchoutenPair {
        schouten: schouten(g, s, r, d)?,
        star_schouten: schouten(g, s_star, r_star, d)?,
    })
}

/// The soliton equation as an affine expression `C + x·A + μ·B` in the
/// unknown constants, where `x` is `λ` or `β`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolitonSystem {
    pub kind: SolitonKind,
    pub constant: SymTensor2,
    pub beta: SymTensor2,
    pub mu: Option<SymTensor2>,
    pub trace: TraceRelation,
}

impl SolitonSystem {
    pub fn residual(&self, beta: &Rational, mu: &Rational) -> SymTensor2 {
        let mut out = self.constant.add(&self.beta.scale_rational(beta));
        if let Some(b) = &self.mu {
            out = out.add(&b.scale_rational(mu));
        }
        out
    }
}

/// Build the affine system of a soliton kind for the potential `v`.
/// The η kinds need a contact structure; the ∗ kinds a Kenmotsu one.
pub fn soliton_system(
    kind: SolitonKind,
    metric: &Metric,
    cs: Option<&ContactStructure>,
    v: &VectorField,
) -> Result<SolitonSystem> {
    let d = metric.dim();
    if (kind.has_eta() || kind.is_star()) && cs.is_none() {
        return Err(Error::Structure(format!(
            "soliton kind {kind} needs an almost-contact structure"
        )));
    }
    let base = match kind {
        SolitonKind::Ricci | SolitonKind::EtaRicci => metric.ricci().clone(),
        SolitonKind::Schouten | SolitonKind::EtaSchouten => {
            schouten(metric.g(), metric.ricci(), metric.scalar_curvature(), d)?
        }
        SolitonKind::StarSchouten | SolitonKind::StarEtaSchouten => {
            let cs = cs.expect("checked above");
            if d < 3 {
                return Err(Error::Dimension(format!("Schouten tensor needs d >= 3, got {d}")));
            }
            if !verify_kenmotsu(cs).holds() {
                return Err(Error::Structure(format!(
                    "soliton kind {kind} needs a Kenmotsu structure"
                )));
            }
            let star = star_ricci(cs)?;
            schouten(metric.g(), &star.tensor, &star.scalar, d)?
        }
    };
    let two = int(2);
    let constant = metric.lie_derivative(v).add(&base.scale_rational(&two));
    let beta = metric.g().scale_rational(&two);
    let mu = if kind.has_eta() {
        Some(cs.expect("checked above").eta_squared().scale_rational(&two))
    } else {
        None
    };
    let trace = TraceRelation {
        constant: metric.trace(&constant),
        beta: metric.trace(&beta),
        mu: mu.as_ref().map_or_else(ScalarExpr::zero, |b| metric.trace(b)),
        has_mu: kind.has_eta(),
    };
    Ok(SolitonSystem {
        kind,
        constant,
        beta,
        mu,
        trace,
    })
}

/// `E = L_V g + 2·base + 2x g [+ 2μ η⊗η]` at the given constants.
pub fn soliton_residual(
    kind: SolitonKind,
    metric: &Metric,
    cs: Option<&ContactStructure>,
    v: &VectorField,
    beta: &Rational,
    mu: &Rational,
) -> Result<SymTensor2> {
    Ok(soliton_system(kind, metric, cs, v)?.residual(beta, mu))
}

/// Render `Σ c_i·name_i + c_0` with integer-friendly formatting.
fn linear_text(terms: &[(Rational, &str)], constant: &Rational) -> String {
    let mut out = String::new();
    let mut push = |coeff: &Rational, name: &str| {
        if coeff.is_zero() {
            return;
        }
        let abs = coeff.abs();
        let body = match (name.is_empty(), abs == int(1)) {
            (true, _) => rational_text(&abs),
            (false, true) => name.to_string(),
            (false, false) => format!("{}{}", rational_text(&abs), name),
        };
        if out.is_empty() {
            if coeff.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if coeff.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    };
    for (c, name) in terms {
        push(c, name);
    }
    push(constant, "");
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `a·x + b·μ + c = 0` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineRelation {
    pub beta: Rational,
    pub mu: Rational,
    pub constant: Rational,
}

impl AffineRelation {
    pub fn holds_at(&self, beta: &Rational, mu: &Rational) -> bool {
        (&self.beta * beta + &self.mu * mu + &self.constant).is_zero()
    }

    /// The relation solved for the first unknown, e.g. `β = (-2μ - 3)/6`,
    /// when its coefficient is nonzero; otherwise the raw equation.
    pub fn to_text(&self, x: &str, mu: &str) -> String {
        if self.beta.is_zero() {
            return format!("{} = 0", linear_text(&[(self.mu.clone(), mu)], &self.constant));
        }
        let k_mu = -&self.mu / &self.beta;
        let k_0 = -&self.constant / &self.beta;
        let den = k_mu.denom().lcm(k_0.denom());
        let scale = Rational::from_integer(den.clone());
        let body = linear_text(&[(&k_mu * &scale, mu)], &(&k_0 * &scale));
        if den == 1.into() {
            format!("{x} = {body}")
        } else if k_mu.is_zero() || k_0.is_zero() {
            format!("{x} = {body}/{den}")
        } else {
            format!("{x} = ({body})/{den}")
        }
    }
}

/// The g-trace of the soliton equation: `constant + β·beta + μ·mu = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRelation {
    pub constant: ScalarExpr,
    pub beta: ScalarExpr,
    pub mu: ScalarExpr,
    has_mu: bool,
}

impl TraceRelation {
    /// The relation with rational coefficients, when all three are constant.
    pub fn as_affine(&self) -> Option<AffineRelation> {
        Some(AffineRelation {
            beta: self.beta.as_rational()?,
            mu: self.mu.as_rational()?,
            constant: self.constant.as_rational()?,
        })
    }

    pub fn to_text(&self, names: &[String], x: &str, mu: &str) -> String {
        match self.as_affine() {
            Some(rel) => rel.to_text(x, mu),
            None if self.has_mu => format!(
                "({}) + ({}){x} + ({}){mu} = 0",
                self.constant.to_text(names),
                self.beta.to_text(names),
                self.mu.to_text(names)
            ),
            None => format!(
                "({}) + ({}){x} = 0",
                self.constant.to_text(names),
                self.beta.to_text(names)
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionStatus {
    Unique,
    Line,
    All,
    None,
}

impl SolutionStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolutionStatus::Unique => "unique",
            SolutionStatus::Line => "line",
            SolutionStatus::All => "all",
            SolutionStatus::None => "none",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Expanding,
    Steady,
    Shrinking,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Expanding => "expanding",
            Classification::Steady => "steady",
            Classification::Shrinking => "shrinking",
        }
    }
}

/// `β > 0` expanding, `β = 0` steady, `β < 0` shrinking.
pub fn classify(beta: &Rational) -> Classification {
    if beta.is_positive() {
        Classification::Expanding
    } else if beta.is_zero() {
        Classification::Steady
    } else {
        Classification::Shrinking
    }
}

/// Solution set of a soliton equation. For kinds without η the single
/// unknown `λ` is reported in `beta` and `mu` stays empty.
#[derive(Clone, Debug, PartialEq)]
pub struct SolitonSolution {
    pub kind: SolitonKind,
    pub status: SolutionStatus,
    pub beta: Option<Rational>,
    pub mu: Option<Rational>,
    pub line_relation: Option<AffineRelation>,
    pub trace_relation: TraceRelation,
    pub verified: bool,
    pub classification: Option<Classification>,
    /// Number of sample points stacked into the final linear system.
    pub sample_points: usize,
}

const SEED: u64 = 0x6b65_6e6d_6f74_7375;
const MAX_POLE_RETRIES: usize = 8;
const MAX_POINTS: usize = 8;

/// A tensor equation `C + x·A [+ μ·B] = 0` that is affine in one or two
/// unknown constants.
#[derive(Clone, Copy, Debug)]
pub struct AffineEquation<'a> {
    pub constant: &'a Tensor2,
    pub beta: &'a Tensor2,
    pub mu: Option<&'a Tensor2>,
}

impl AffineEquation<'_> {
    pub fn residual(&self, beta: &Rational, mu: &Rational) -> Tensor2 {
        let mut out = self.constant.add(&self.beta.scale_rational(beta));
        if let Some(b) = self.mu {
            out = out.add(&b.scale_rational(mu));
        }
        out
    }

    fn unknowns(&self) -> usize {
        1 + usize::from(self.mu.is_some())
    }

    /// Rows `[A_ab, B_ab | −C_ab]` for every component at one sample point.
    fn sample_rows(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        let d = self.constant.dim();
        let mut rows = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                let mut row = vec![self.beta.comp(a, b).eval_at(point)?];
                if let Some(m) = self.mu {
                    row.push(m.comp(a, b).eval_at(point)?);
                }
                row.push(-self.constant.comp(a, b).eval_at(point)?);
                rows.push(row);
            }
        }
        Ok(rows)
    }
}

/// Solution set of an [`AffineEquation`].
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution {
    pub status: SolutionStatus,
    pub beta: Option<Rational>,
    pub mu: Option<Rational>,
    pub line_relation: Option<AffineRelation>,
    pub verified: bool,
    /// Number of sample points stacked into the final linear system.
    pub sample_points: usize,
}

fn random_point(rng: &mut ChaCha8Rng, d: usize) -> Vec<Rational> {
    (0..d)
        .map(|_| {
            let mut p: i64 = rng.gen_range(1..=37);
            if rng.gen_bool(0.5) {
                p = -p;
            }
            let q: i64 = rng.gen_range(1..=11);
            ratio(p, q)
        })
        .collect()
}

fn next_sample(eq: &AffineEquation, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<Rational>>> {
    for _ in 0..MAX_POLE_RETRIES {
        let point = random_point(rng, eq.constant.dim());
        match eq.sample_rows(&point) {
            Ok(rows) => return Ok(rows),
            Err(Error::Pole) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplePoles(MAX_POLE_RETRIES))
}

/// Reduced row echelon form of an augmented system in place; returns the
/// pivot columns, or `None` when some row reads `0 = c` with `c ≠ 0`.
fn row_reduce(rows: &mut Vec<Vec<Rational>>, unknowns: usize) -> Option<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &lead;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    rows.truncate(r);
    Some(pivots)
}

enum Candidate {
    Unique(Rational, Rational),
    Line(AffineRelation),
    All,
    Inconsistent,
}

fn candidate(rows: &[Vec<Rational>], unknowns: usize) -> Candidate {
    let mut rows = rows.to_vec();
    let Some(pivots) = row_reduce(&mut rows, unknowns) else {
        return Candidate::Inconsistent;
    };
    match (unknowns, pivots.len()) {
        (_, 0) => Candidate::All,
        (1, 1) => Candidate::Unique(rows[0][1].clone(), Rational::zero()),
        (2, 2) => Candidate::Unique(rows[0][2].clone(), rows[1][2].clone()),
        (2, 1) => Candidate::Line(AffineRelation {
            beta: rows[0][0].clone(),
            mu: rows[0][1].clone(),
            constant: -rows[0][2].clone(),
        }),
        _ => unreachable!("rank exceeds the number of unknowns"),
    }
}

fn verify(eq: &AffineEquation, cand: &Candidate) -> bool {
    let zero = Rational::zero();
    match cand {
        Candidate::Unique(b, m) => eq.residual(b, m).is_zero(),
        Candidate::All => eq.constant.is_zero() && eq.beta.is_zero() && eq.mu.is_none_or(|m| m.is_zero()),
        Candidate::Line(rel) => {
            // an affine map vanishing at two distinct points of a line vanishes on it
            let points = if !rel.mu.is_zero() {
                vec![
                    (zero.clone(), -&rel.constant / &rel.mu),
                    (int(1), -(&rel.constant + &rel.beta) / &rel.mu),
                ]
            } else {
                let b = -&rel.constant / &rel.beta;
                vec![(b.clone(), zero.clone()), (b, int(1))]
            };
            points.iter().all(|(b, m)| eq.residual(b, m).is_zero())
        }
        Candidate::Inconsistent => true,
    }
}

/// Solve an affine tensor equation exactly. The component equations are
/// stacked at generic rational sample points, solved over Q, and the
/// candidate solution set is then verified symbolically. An inconsistent
/// sampled system proves there is no solution.
pub fn solve_affine(eq: &AffineEquation) -> Result<AffineSolution> {
    let unknowns = eq.unknowns();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut rows = Vec::new();
    let mut points = 0;
    let (cand, verified) = loop {
        rows.extend(next_sample(eq, &mut rng)?);
        points += 1;
        if points < 2 {
            continue;
        }
        let cand = candidate(&rows, unknowns);
        if verify(eq, &cand) {
            break (cand, true);
        }
        if points >= MAX_POINTS {
            break (cand, false);
        }
    };
    let mut sol = AffineSolution {
        status: SolutionStatus::None,
        beta: None,
        mu: None,
        line_relation: None,
        verified,
        sample_points: points,
    };
    match cand {
        Candidate::Unique(b, m) => {
            sol.status = SolutionStatus::Unique;
            sol.beta = Some(b);
            sol.mu = eq.mu.is_some().then_some(m);
        }
        Candidate::Line(rel) => {
            sol.status = SolutionStatus::Line;
            sol.line_relation = Some(rel);
        }
        Candidate::All => sol.status = SolutionStatus::All,
        Candidate::Inconsistent => {}
    }
    Ok(sol)
}

pub fn solve_system(system: &SolitonSystem) -> Result<SolitonSolution> {
    let eq = AffineEquation {
        constant: system.constant.as_tensor(),
        beta: system.beta.as_tensor(),
        mu: system.mu.as_ref().map(SymTensor2::as_tensor),
    };
    let sol = solve_affine(&eq)?;
    Ok(SolitonSolution {
        kind: system.kind,
        status: sol.status,
        classification: sol.beta.as_ref().map(classify),
        beta: sol.beta,
        mu: sol.mu,
        line_relation: sol.line_relation,
        trace_relation: system.trace.clone(),
        verified: sol.verified,
        sample_points: sol.sample_points,
    })
}

pub fn soliton_solve(
    kind: SolitonKind,
    metric: &Metric,
    cs: Option<&ContactStructure>,
    v: &VectorField,
) -> Result<SolitonSolution> {
    solve_system(&soliton_system(kind, metric, cs, v)?)
}

fn constant_of(e: &ScalarExpr, what: &str) -> Result<Rational> {
    e.as_rational().ok_or_else(|| Error::NonConstant(what.to_string()))
}

/// β read off from the trace of the ∗-η-Schouten equation on a Kenmotsu
/// manifold, with the divergence-free specialisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaTrace {
    pub beta: Rational,
    pub div_v: Rational,
    pub scalar_curvature: Rational,
    pub solenoidal: bool,
    /// `−(r + 4n² + 4nμ) / (4n(2n+1))`, the value β takes when `div V = 0`.
    pub solenoidal_beta: Rational,
    /// `r = 0`, in which case β depends on `div V` and μ only.
    pub flat: bool,
}

/// `β = −(4n div V + r + 4n² + 4nμ) / (4n(2n+1))`.
pub fn beta_trace_formula(n: usize, div_v: &Rational, r: &Rational, mu: &Rational) -> Rational {
    let n = int(n as i64);
    let four_n = &n * int(4);
    let num = &four_n * div_v + r + &four_n * &n + &four_n * mu;
    -num / (&four_n * (&n * int(2) + int(1)))
}

pub fn beta_trace_identity(cs: &ContactStructure, v: &VectorField, mu: &Rational) -> Result<BetaTrace> {
    let metric = cs.metric();
    let div_v = constant_of(&metric.divergence(v), "div V")?;
    let r = constant_of(metric.scalar_curvature(), "scalar curvature")?;
    let n = cs.n();
    Ok(BetaTrace {
        beta: beta_trace_formula(n, &div_v, &r, mu),
        solenoidal: div_v.is_zero(),
        solenoidal_beta: beta_trace_formula(n, &Rational::zero(), &r, mu),
        flat: r.is_zero(),
        div_v,
        scalar_curvature: r,
    })
}

/// `Δf + (r + 4n² + 4n(2n+1)β + 4nμ) / (4n)` for the gradient potential `V = grad f`.
pub fn laplacian_identity(cs: &ContactStructure, f: &ScalarExpr, beta: &Rational, mu: &Rational) -> ScalarExpr {
    let metric = cs.metric();
    let n = cs.n() as i64;
    let k = int(4 * n * n) + int(4 * n * (2 * n + 1)) * beta + int(4 * n) * mu;
    let tail = (metric.scalar_curvature() + &ScalarExpr::from_rational(k)).scale(&ratio(1, 4 * n));
    metric.laplacian(f) + tail
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConformalClass {
    Proper,
    Homothetic,
    Killing,
}

impl ConformalClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ConformalClass::Proper => "proper",
            ConformalClass::Homothetic => "homothetic",
            ConformalClass::Killing => "killing",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConformalFit {
    pub omega: ScalarExpr,
    pub class: ConformalClass,
}

/// Ω with `L_V g = 2Ω g`, if `V` is conformal Killing.
pub fn conformal_killing_fit(metric: &Metric, v: &VectorField) -> Option<ConformalFit> {
    let lvg = metric.lie_derivative(v);
    let d = metric.dim() as i64;
    let omega = metric.trace(&lvg).scale(&ratio(1, 2 * d));
    if lvg != metric.g().scale(&omega.scale(&int(2))) {
        return None;
    }
    let class = if omega.is_zero() {
        ConformalClass::Killing
    } else if omega.is_constant() {
        ConformalClass::Homothetic
    } else {
        ConformalClass::Proper
    };
    Some(ConformalFit { omega, class })
}

/// `(a, b)` with `S = a g + b η⊗η`, if `S` is η-Einstein.
pub fn eta_einstein_fit(cs: &ContactStructure, s: &SymTensor2) -> Option<(ScalarExpr, ScalarExpr)> {
    let metric = cs.metric();
    let d = metric.dim() as i64;
    let s_xi_xi = s.eval(cs.xi(), cs.xi());
    // on the φ-section the trace sees only a; along ξ it sees a + b
    let a = (metric.trace(s) - &s_xi_xi).scale(&ratio(1, d - 1));
    let b = &s_xi_xi - &a;
    let fitted = metric.g().scale(&a).add(&cs.eta_squared().scale(&b));
    (&fitted == s).then_some((a, b))
}

/// Outcome of fitting `∇Φ = ψ Q` with a constant ψ.
#[derive(Clone, Debug, PartialEq)]
pub enum PhiRicFit {
    Fit {
        psi: Rational,
        /// `L_Φ g = 2ψ S` holds as well.
        lie_identity: bool,
    },
    None,
    /// `∇Φ = 0` and `Q = 0`: every ψ fits; reported as `ψ = 0`.
    Indeterminate,
}

/// Fit `∇_X Φ = ψ Q X` where `Q^a_b = g^{ac} S_{cb}`.
pub fn phi_ric_fit(cs: &ContactStructure, s: &SymTensor2, phi: &VectorField) -> PhiRicFit {
    let metric = cs.metric();
    let d = metric.dim();
    let inv = metric.inverse();
    let q = EndoField::new(crate::geometry::Mat::from_fn(d, |a, b| {
        (0..d).map(|c| inv.comp(a, c) * s.comp(c, b)).sum()
    }));
    let nabla = metric.connection().cov_deriv_endo(phi);
    if q.is_zero() {
        return if nabla.is_zero() {
            PhiRicFit::Indeterminate
        } else {
            PhiRicFit::None
        };
    }
    let Some((a, b)) = (0..d)
        .flat_map(|a| (0..d).map(move |b| (a, b)))
        .find(|&(a, b)| !q.comp(a, b).is_zero())
    else {
        return PhiRicFit::None;
    };
    let Some(psi) = (nabla.comp(a, b) / q.comp(a, b)).as_rational() else {
        return PhiRicFit::None;
    };
    if nabla != q.scale(&ScalarExpr::from_rational(psi.clone())) {
        return PhiRicFit::None;
    }
    let lie_identity = metric.lie_derivative(phi) == s.scale_rational(&(int(2) * &psi));
    PhiRicFit::Fit { psi, lie_identity }
}

/// `β = 2nψ + (r + 4n²)/(4n(2n−1)) − μ` for a Φ(Ric) potential.
pub fn phi_ric_beta(n: usize, psi: &Rational, r: &Rational, mu: &Rational) -> Rational {
    let n = int(n as i64);
    let four_n2 = int(4) * &n * &n;
    int(2) * &n * psi + (r + &four_n2) / (int(4) * &n * (int(2) * &n - int(1))) - mu
}

/// `(a, ω)` with `∇_X V = aX + ω(X)V`, if `V` is torse-forming.
pub fn torse_forming_fit(metric: &Metric, v: &VectorField) -> Option<(ScalarExpr, OneForm)> {
    let d = metric.dim();
    let p = (0..d).find(|&p| !v.comp(p).is_zero())?;
    let q = (p + 1) % d;
    // m[(c, a)] = (∇_{∂a} V)^c = a δ^c_a + ω_a V^c
    let m = metric.connection().cov_deriv_endo(v);
    let vp = v.comp(p);
    let mut omega: Vec<ScalarExpr> = (0..d).map(|a| m.comp(p, a) / vp).collect();
    let a = m.comp(q, q) - &(v.comp(q) * &omega[q]);
    omega[p] = (m.comp(p, p) - &a) / vp;
    let ok = (0..d).all(|c| (0..d).all(|b| *m.comp(c, b) == &a * &delta(c, b) + v.comp(c) * &omega[b]));
    ok.then(|| (a, OneForm::new(omega)))
}
