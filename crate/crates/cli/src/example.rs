//! Golden assertions for the built-in `kenmotsu3` fixture.
//!
//! Expected values are written out literally here and compared exactly
//! against what the engine computes from the fixture text.

use kenmotsu_core::contact::{star_ricci, verify_almost_contact, verify_kenmotsu};
use kenmotsu_core::geometry::{lie_bracket, Frame, VectorField};
use kenmotsu_core::soliton::{soliton_solve, AffineRelation, SolitonKind, SolutionStatus};
use kenmotsu_core::symkernel::{int, ratio};
use kenmotsu_core::ScalarExpr;

use crate::error::{CliError, Result};
use crate::format;
use crate::manifest::{parse_manifold, Manifold, Source, KENMOTSU3};
use crate::report::{Check, Report, Status};

/// `V = 2f1∂1 + 2f2∂2 + f3∂3`.
pub const POTENTIAL: &str = "2*f1*@f1 + 2*f2*@f2 + f3*@f3";

/// `[T_i, T_j]` for `i < j`, as frame coefficients.
const BRACKETS: [((usize, usize), [i64; 3]); 3] = [((0, 1), [0, 0, 0]), ((0, 2), [1, 0, 0]), ((1, 2), [0, 1, 0])];

/// `∇_{T_i} T_j`.
const CONNECTION: [[[i64; 3]; 3]; 3] = [
    [[0, 0, -1], [0, 0, 0], [1, 0, 0]],
    [[0, 0, 0], [0, 0, -1], [0, 1, 0]],
    [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
];

type CurvatureRows = ((usize, usize), [[i64; 3]; 3]);

/// `R(T_i, T_j) T_k` for `i < j`.
const CURVATURE: [CurvatureRows; 3] = [
    ((0, 1), [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]),
    ((0, 2), [[0, 0, 1], [0, 0, 0], [-1, 0, 0]]),
    ((1, 2), [[0, 0, 0], [0, 0, 1], [0, -1, 0]]),
];

pub const NAMES: [&str; 14] = [
    "frame-brackets",
    "connection-table",
    "curvature-table",
    "ricci-diagonal",
    "scalar-curvature",
    "star-ricci",
    "star-scalar-formula",
    "star-scalar-trace",
    "lie-derivative",
    "lie-trace",
    "trace-relation",
    "soliton-solve",
    "classification",
    "kenmotsu",
];

fn ints(v: &[i64]) -> Vec<ScalarExpr> {
    v.iter().map(|&k| ScalarExpr::from_int(k)).collect()
}

fn coefficients(frame: &Frame, v: &VectorField) -> Vec<ScalarExpr> {
    frame.coefficients(v)
}

fn name(m: &Manifold, i: usize) -> &str {
    &m.frame_names[i]
}

/// Compare a family of frame vectors against expected coefficients.
fn table(m: &Manifold, check: &str, rows: Vec<(String, Vec<ScalarExpr>, Vec<ScalarExpr>)>) -> Check {
    let names = &m.frame_names;
    let mut ok = true;
    let mut c = Check::new(check, Status::Pass);
    let mut mismatches = std::collections::BTreeMap::new();
    for (label, got, want) in rows {
        let text = format::combination(m, &got, names);
        if got != want {
            ok = false;
            mismatches.insert(
                label.clone(),
                format!("expected {}", format::combination(m, &want, names)),
            );
        }
        c = c.value(label, text);
    }
    c.status = Status::from_bool(ok);
    c.residual(mismatches)
}

fn equals(check: &str, key: &str, got: String, want: &str) -> Check {
    let c = Check::new(check, Status::from_bool(got == want)).value(key, got);
    if c.status == Status::Pass {
        c
    } else {
        c.value("expected", want)
    }
}

/// Run every golden assertion; failures become report entries.
pub fn kenmotsu3() -> Result<Report> {
    let source = Source {
        text: KENMOTSU3.to_string(),
        fixture: Some("kenmotsu3".into()),
    };
    let mut report = Report::new(source.digest(), source.fixture.clone());
    let m = parse_manifold(&source.text)?;
    let cs = m.structure.as_ref().expect("fixture has a structure");
    let frame = m.frame.as_ref().expect("fixture has a frame");
    let t = frame.vectors();

    let rows = BRACKETS
        .iter()
        .map(|&((i, j), want)| {
            let label = format!("[{},{}]", name(&m, i), name(&m, j));
            (label, coefficients(frame, &lie_bracket(&t[i], &t[j])), ints(&want))
        })
        .collect();
    report.push(table(&m, "frame-brackets", rows));

    let conn = m.metric.connection();
    let mut rows = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let label = format!("∇_{} {}", name(&m, i), name(&m, j));
            let got = coefficients(frame, &conn.cov_deriv_vector(&t[i], &t[j]));
            rows.push((label, got, ints(&CONNECTION[i][j])));
        }
    }
    report.push(table(&m, "connection-table", rows));

    let curvature = m.metric.curvature();
    let mut rows = Vec::new();
    for &((i, j), want) in &CURVATURE {
        for (k, row) in want.iter().enumerate() {
            let label = format!("R({},{}){}", name(&m, i), name(&m, j), name(&m, k));
            rows.push((label, frame.curvature_coefficients(curvature, i, j, k), ints(row)));
        }
    }
    report.push(table(&m, "curvature-table", rows));

    let ricci = frame.components(m.metric.ricci());
    report.push(equals(
        "ricci-diagonal",
        "S (frame)",
        format::matrix(&m, &ricci.0),
        "diag(-2, -2, -2)",
    ));
    report.push(equals(
        "scalar-curvature",
        "r",
        format::scalar(&m, m.metric.scalar_curvature()),
        "-6",
    ));

    let star = star_ricci(cs)?;
    report.push(equals(
        "star-ricci",
        "S* (frame)",
        format::tensor(&m, &star.tensor),
        "diag(-1, -1, 0)",
    ));
    report.push(equals(
        "star-scalar-formula",
        "r* = r + 4n²",
        format::scalar(&m, &star.scalar),
        "-2",
    ));
    report.push(equals(
        "star-scalar-trace",
        "r* = tr S*",
        format::scalar(&m, &star.trace),
        "-2",
    ));

    let v = m.vector(POTENTIAL)?;
    let lvg = frame.components(&m.metric.lie_derivative(&v));
    report.push(equals(
        "lie-derivative",
        "L_V g (frame)",
        format::matrix(&m, &lvg.0),
        "diag(2, 2, 0)",
    ));
    report.push(equals("lie-trace", "tr L_V g", format::scalar(&m, &lvg.trace()), "4"));

    let sol = soliton_solve(SolitonKind::StarEtaSchouten, &m.metric, Some(cs), &v)?;
    let want = AffineRelation {
        beta: int(6),
        mu: int(2),
        constant: int(3),
    };
    let relation = sol.trace_relation.as_affine();
    let same_line = relation.as_ref().is_some_and(|rel| {
        // proportional coefficient vectors describe the same line
        let k = &rel.beta / &want.beta;
        rel.mu == &want.mu * &k && rel.constant == &want.constant * &k
    });
    let text = sol.trace_relation.to_text(m.names(), "β", "μ");
    let mut check = Check::new(
        "trace-relation",
        Status::from_bool(same_line && text == "β = (-2μ - 3)/6"),
    )
    .value("relation", text);
    if check.status == Status::Fail {
        check = check.value("expected", "β = (-2μ - 3)/6");
    }
    report.push(check);

    let unique = sol.status == SolutionStatus::Unique
        && sol.verified
        && sol.beta == Some(ratio(-1, 2))
        && sol.mu == Some(int(0));
    let mut check = Check::new("soliton-solve", Status::from_bool(unique))
        .value("status", sol.status.as_str())
        .value("verified", sol.verified.to_string());
    if let (Some(b), Some(mu)) = (&sol.beta, &sol.mu) {
        check = check.value("(β, μ)", format!("({}, {})", format::rational(b), format::rational(mu)));
    }
    report.push(check);
    let class = sol.classification.map_or("none", |c| c.as_str());
    report.push(equals("classification", "class", class.to_string(), "shrinking"));

    let mut identities = verify_almost_contact(cs);
    identities.extend(verify_kenmotsu(cs));
    let failed: Vec<String> = identities.failures().map(|e| e.id.clone()).collect();
    let mut check = Check::new("kenmotsu", Status::from_bool(failed.is_empty()))
        .value("identities checked", identities.entries.len().to_string());
    if !failed.is_empty() {
        check = check.value("failed", failed.join(", "));
    }
    report.push(check);
    Ok(report)
}

pub fn run(name: &str) -> Result<Report> {
    match name {
        "kenmotsu3" => kenmotsu3(),
        other => Err(CliError::Usage(format!("unknown example `{other}` (known: kenmotsu3)"))),
    }
}
