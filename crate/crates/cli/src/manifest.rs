//! The line-oriented manifold description format.
//!
//! ```text
//! dim 3
//! coords f1 f2 f3
//! frame T1 = f3*@f1
//! frame T2 = f3*@f2
//! frame T3 = -f3*@f3
//! metric orthonormal
//! xi = T3
//! phi T1 = -T2
//! phi T2 = T1
//! phi T3 = 0
//! ```
//!
//! `metric g a b = <scalar>` gives lower components explicitly (indices are
//! coordinate names or 1-based positions, the symmetric entry is filled in).
//! `phi` takes either frame names or coordinate names, never both; an
//! optional `eta = <one-form>` must agree with `g(·, xi)`.

use std::collections::BTreeMap;
use std::path::Path;

use kenmotsu_core::contact::ContactStructure;
use kenmotsu_core::geometry::{
    parse_oneform, parse_vector, Chart, EndoField, FieldEnv, FieldValue, Frame, Mat, Metric, OneForm, SymTensor2,
    VectorField,
};
use kenmotsu_core::{Error as CoreError, ScalarExpr};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// The fixture used by `example kenmotsu3`: a three-dimensional Kenmotsu
/// structure on `f3 > 0` with an orthonormal frame.
pub const KENMOTSU3: &str = "\
# Kenmotsu structure on { f3 > 0 } in R^3
dim 3
coords f1 f2 f3
frame T1 = f3*@f1
frame T2 = f3*@f2
frame T3 = -f3*@f3
metric orthonormal
xi = T3
phi T1 = -T2
phi T2 = T1
phi T3 = 0
";

/// Flat R^3 with the standard almost-contact structure; not Kenmotsu.
pub const EUCLID3: &str = "\
# flat R^3, xi = @z
dim 3
coords x y z
metric g x x = 1
metric g y y = 1
metric g z z = 1
xi = @z
phi x = -@y
phi y = @x
phi z = 0
";

pub const FIXTURES: [(&str, &str); 2] = [("kenmotsu3", KENMOTSU3), ("euclid3", EUCLID3)];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// Manifold source text together with where it came from.
#[derive(Clone, Debug)]
pub struct Source {
    pub text: String,
    pub fixture: Option<String>,
}

impl Source {
    /// A file path, or the name of a built-in fixture when no such file exists.
    pub fn resolve(arg: &str) -> Result<Self> {
        let path = Path::new(arg);
        if !path.exists() {
            if let Some(text) = fixture(arg) {
                return Ok(Source {
                    text: text.to_string(),
                    fixture: Some(arg.to_string()),
                });
            }
        }
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: arg.to_string(),
            source,
        })?;
        Ok(Source { text, fixture: None })
    }

    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.text.as_bytes());
        let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
        format!("sha256:{hex}")
    }
}

/// A validated manifold: chart, metric, optional frame and optional
/// almost-contact structure.
#[derive(Clone, Debug)]
pub struct Manifold {
    pub chart: Chart,
    pub metric: Metric,
    pub frame: Option<Frame>,
    pub frame_names: Vec<String>,
    pub structure: Option<ContactStructure>,
}

impl Manifold {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        parse_manifold(&text)
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn names(&self) -> &[String] {
        self.chart.coords()
    }

    /// Coordinates, frame members, and `xi`/`eta` when a structure exists.
    pub fn env(&self) -> FieldEnv<'_> {
        let mut env = FieldEnv::new(&self.chart);
        if let Some(frame) = &self.frame {
            for (name, v) in self.frame_names.iter().zip(frame.vectors()) {
                env.bind(name.clone(), FieldValue::Vector(v.clone()));
            }
        }
        if let Some(cs) = &self.structure {
            env.bind("xi", FieldValue::Vector(cs.xi().clone()));
            env.bind("eta", FieldValue::Form(cs.eta().clone()));
        }
        env
    }

    pub fn vector(&self, text: &str) -> std::result::Result<VectorField, CoreError> {
        parse_vector(text, &self.env())
    }

    pub fn oneform(&self, text: &str) -> std::result::Result<OneForm, CoreError> {
        parse_oneform(text, &self.env())
    }
}

#[derive(Default)]
struct Draft {
    dim: Option<(usize, usize)>,
    chart: Option<Chart>,
    frame: Vec<(String, VectorField)>,
    orthonormal: Option<usize>,
    metric: BTreeMap<(usize, usize), (ScalarExpr, usize)>,
    xi: Option<VectorField>,
    phi: Vec<(PhiKey, VectorField, usize)>,
    eta: Option<OneForm>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PhiKey {
    Frame(usize),
    Coord(usize),
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    /// 1-based column of a subslice of this line.
    fn column_of(&self, part: &str) -> usize {
        let offset = part.as_ptr() as usize - self.text.as_ptr() as usize;
        self.text[..offset].chars().count() + 1
    }

    fn error(&self, column: usize, message: impl Into<String>) -> CliError {
        CliError::Parse {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn error_at(&self, part: &str, message: impl Into<String>) -> CliError {
        self.error(self.column_of(part), message)
    }

    /// Map an expression error onto file coordinates.
    fn expr_error(&self, expr: &str, e: CoreError) -> CliError {
        let base = self.column_of(expr);
        let inner = match &e {
            CoreError::Syntax { column, .. }
            | CoreError::UnknownIdentifier { column, .. }
            | CoreError::ZeroDenominator { column }
            | CoreError::Type { column, .. } => *column,
            _ => 1,
        };
        let message = match e {
            CoreError::Syntax { message, .. } | CoreError::Type { message, .. } => message,
            CoreError::UnknownIdentifier { name, .. } => format!("unknown identifier `{name}`"),
            CoreError::ZeroDenominator { .. } => "zero denominator".to_string(),
            other => other.to_string(),
        };
        self.error(base + inner - 1, message)
    }
}

/// Split `lhs = rhs`, returning trimmed sides.
fn split_assign<'a>(line: &Line, rest: &'a str) -> Result<(&'a str, &'a str)> {
    let Some((lhs, rhs)) = rest.split_once('=') else {
        return Err(line.error_at(rest, "expected `=`"));
    };
    let rhs = rhs.trim();
    if rhs.is_empty() {
        return Err(line.error(
            line.column_of(rest) + rest.chars().count(),
            "missing expression after `=`",
        ));
    }
    Ok((lhs.trim(), rhs))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Draft {
    fn chart(&self, line: &Line, at: &str) -> Result<&Chart> {
        self.chart
            .as_ref()
            .ok_or_else(|| line.error_at(at, "`coords` must be declared before this line"))
    }

    fn env<'c>(&self, chart: &'c Chart) -> FieldEnv<'c> {
        let mut env = FieldEnv::new(chart);
        for (name, v) in &self.frame {
            env.bind(name.clone(), FieldValue::Vector(v.clone()));
        }
        if let Some(xi) = &self.xi {
            env.bind("xi", FieldValue::Vector(xi.clone()));
        }
        env
    }

    fn vector(&self, line: &Line, expr: &str) -> Result<VectorField> {
        let chart = self.chart(line, expr)?;
        parse_vector(expr, &self.env(chart)).map_err(|e| line.expr_error(expr, e))
    }

    fn statement(&mut self, line: &Line, body: &str) -> Result<()> {
        let (keyword, rest) = match body.find(char::is_whitespace) {
            Some(i) => (&body[..i], body[i..].trim_start()),
            None => (body, &body[body.len()..]),
        };
        match keyword {
            "dim" => self.dim(line, rest),
            "coords" => self.coords(line, rest),
            "frame" => self.frame(line, rest),
            "metric" => self.metric(line, rest),
            "phi" => self.phi(line, rest),
            _ if keyword.starts_with("xi") || keyword.starts_with("eta") => self.structure_field(line, body),
            _ => Err(line.error_at(keyword, format!("unknown declaration `{keyword}`"))),
        }
    }

    fn dim(&mut self, line: &Line, rest: &str) -> Result<()> {
        if self.dim.is_some() {
            return Err(line.error(1, "duplicate `dim`"));
        }
        let d: usize = rest
            .parse()
            .map_err(|_| line.error_at(rest, format!("`{rest}` is not a dimension")))?;
        self.dim = Some((d, line.number));
        Ok(())
    }

    fn coords(&mut self, line: &Line, rest: &str) -> Result<()> {
        if self.chart.is_some() {
            return Err(line.error(1, "duplicate `coords`"));
        }
        for name in rest.split_whitespace() {
            if matches!(name, "xi" | "eta" | "d") {
                return Err(line.error_at(name, format!("`{name}` is reserved")));
            }
        }
        let chart = Chart::new(rest.split_whitespace()).map_err(|e| line.error_at(rest, e.to_string()))?;
        self.chart = Some(chart);
        Ok(())
    }

    fn frame(&mut self, line: &Line, rest: &str) -> Result<()> {
        let (name, expr) = split_assign(line, rest)?;
        let chart = self.chart(line, rest)?;
        if !is_identifier(name) || matches!(name, "xi" | "eta" | "d") || chart.index_of(name).is_some() {
            return Err(line.error_at(rest, format!("`{name}` cannot name a frame vector")));
        }
        if self.frame.iter().any(|(n, _)| n == name) {
            return Err(line.error_at(rest, format!("frame vector `{name}` declared twice")));
        }
        let v = self.vector(line, expr)?;
        self.frame.push((name.to_string(), v));
        Ok(())
    }

    fn metric(&mut self, line: &Line, rest: &str) -> Result<()> {
        if rest == "orthonormal" {
            if self.orthonormal.is_some() {
                return Err(line.error(1, "duplicate `metric orthonormal`"));
            }
            self.orthonormal = Some(line.number);
            return Ok(());
        }
        let Some(spec) = rest.strip_prefix('g').filter(|s| s.starts_with(char::is_whitespace)) else {
            return Err(line.error_at(rest, "expected `metric orthonormal` or `metric g a b = <expr>`"));
        };
        let (lhs, expr) = split_assign(line, spec)?;
        let chart = self.chart(line, rest)?;
        let index = |tok: &str| -> Result<usize> {
            if let Some(i) = chart.index_of(tok) {
                return Ok(i);
            }
            match tok.parse::<usize>() {
                Ok(k) if (1..=chart.dim()).contains(&k) => Ok(k - 1),
                _ => Err(line.error_at(tok, format!("`{tok}` is not a coordinate"))),
            }
        };
        let toks: Vec<&str> = lhs.split_whitespace().collect();
        let [a, b] = toks[..] else {
            return Err(line.error_at(spec, "expected two indices after `g`"));
        };
        let (a, b) = (index(a)?, index(b)?);
        let value = chart.scalar(expr).map_err(|e| line.expr_error(expr, e))?;
        let key = (a.min(b), a.max(b));
        if let Some((prev, at)) = self.metric.get(&key) {
            if *prev != value {
                return Err(line.error_at(expr, format!("conflicts with the component given on line {at}")));
            }
        }
        self.metric.insert(key, (value, line.number));
        Ok(())
    }

    fn phi(&mut self, line: &Line, rest: &str) -> Result<()> {
        let (name, expr) = split_assign(line, rest)?;
        let chart = self.chart(line, rest)?;
        let key = if let Some(i) = self.frame.iter().position(|(n, _)| n == name) {
            PhiKey::Frame(i)
        } else if let Some(i) = chart.index_of(name) {
            PhiKey::Coord(i)
        } else {
            return Err(line.error_at(rest, format!("`{name}` is neither a frame vector nor a coordinate")));
        };
        if self.phi.iter().any(|(k, _, _)| *k == key) {
            return Err(line.error_at(rest, format!("phi {name} given twice")));
        }
        let mixed = self
            .phi
            .iter()
            .any(|(k, _, _)| matches!(k, PhiKey::Frame(_)) != matches!(key, PhiKey::Frame(_)));
        if mixed {
            return Err(line.error_at(rest, "phi mixes frame and coordinate images"));
        }
        let v = self.vector(line, expr)?;
        self.phi.push((key, v, line.number));
        Ok(())
    }

    fn structure_field(&mut self, line: &Line, body: &str) -> Result<()> {
        let (name, expr) = split_assign(line, body)?;
        match name {
            "xi" if self.xi.is_none() => {
                self.xi = Some(self.vector(line, expr)?);
                Ok(())
            }
            "eta" if self.eta.is_none() => {
                let chart = self.chart(line, expr)?;
                let form = parse_oneform(expr, &self.env(chart)).map_err(|e| line.expr_error(expr, e))?;
                self.eta = Some(form);
                Ok(())
            }
            "xi" | "eta" => Err(line.error(1, format!("duplicate `{name}`"))),
            _ => Err(line.error(1, format!("unknown declaration `{name}`"))),
        }
    }

    fn finish(self, last_line: usize) -> Result<Manifold> {
        let at_end = |message: &str| CliError::Parse {
            line: last_line,
            column: 1,
            message: message.to_string(),
        };
        let chart = self.chart.ok_or_else(|| at_end("missing `coords`"))?;
        let d = chart.dim();
        match self.dim {
            None => return Err(at_end("missing `dim`")),
            Some((n, line)) if n != d => {
                return Err(CliError::Parse {
                    line,
                    column: 1,
                    message: format!("dim {n} but {d} coordinates"),
                })
            }
            Some(_) => {}
        }
        if !self.frame.is_empty() && self.frame.len() != d {
            return Err(at_end(&format!("frame has {} vectors, expected {d}", self.frame.len())));
        }
        let frame_names: Vec<String> = self.frame.iter().map(|(n, _)| n.clone()).collect();
        let vectors: Vec<VectorField> = self.frame.into_iter().map(|(_, v)| v).collect();
        let frame = if vectors.is_empty() {
            None
        } else {
            Some(Frame::new(vectors.clone())?)
        };

        let (g, frame) = match (self.orthonormal, self.metric.is_empty()) {
            (Some(line), false) => {
                return Err(CliError::Parse {
                    line,
                    column: 1,
                    message: "`metric orthonormal` together with explicit components".into(),
                })
            }
            (Some(line), true) => {
                let Some(frame) = frame else {
                    return Err(CliError::Parse {
                        line,
                        column: 1,
                        message: "`metric orthonormal` needs a frame".into(),
                    });
                };
                let g = frame.dual_metric();
                (g.clone(), Some(Frame::orthonormal(vectors, &g)?))
            }
            (None, false) => {
                let mut m = Mat::zeros(d);
                for ((a, b), (value, _)) in self.metric {
                    m[(a, b)] = value.clone();
                    m[(b, a)] = value;
                }
                (SymTensor2::lower(m)?, frame)
            }
            (None, true) => return Err(at_end("missing `metric`")),
        };
        let metric = Metric::new(g)?;

        let structure = match (self.xi, self.phi.is_empty()) {
            (None, true) if self.eta.is_none() => None,
            (None, _) => return Err(at_end("structure block needs `xi`")),
            (Some(_), true) => return Err(at_end("structure block needs `phi`")),
            (Some(xi), false) => {
                let phi = assemble_phi(d, &self.phi, frame.as_ref(), &frame_names, last_line)?;
                Some(ContactStructure::new(
                    chart.clone(),
                    metric.clone(),
                    phi,
                    xi,
                    self.eta,
                    frame.clone(),
                )?)
            }
        };
        Ok(Manifold {
            chart,
            metric,
            frame,
            frame_names,
            structure,
        })
    }
}

/// φ as a coordinate endomorphism from the declared images.
fn assemble_phi(
    d: usize,
    images: &[(PhiKey, VectorField, usize)],
    frame: Option<&Frame>,
    frame_names: &[String],
    last_line: usize,
) -> Result<EndoField> {
    let mut columns: Vec<Option<VectorField>> = vec![None; d];
    let by_frame = matches!(images[0].0, PhiKey::Frame(_));
    for (key, v, _) in images {
        let (PhiKey::Frame(i) | PhiKey::Coord(i)) = *key;
        columns[i] = Some(v.clone());
    }
    if let Some(missing) = columns.iter().position(Option::is_none) {
        let what = if by_frame {
            frame_names[missing].clone()
        } else {
            format!("coordinate {}", missing + 1)
        };
        return Err(CliError::Parse {
            line: last_line,
            column: 1,
            message: format!("phi is missing the image of {what}"),
        });
    }
    let columns: Vec<VectorField> = columns.into_iter().flatten().collect();
    if !by_frame {
        return Ok(EndoField::from_columns(&columns));
    }
    // φ(∂_a) = Σ_i θ^i(∂_a) φ(T_i)
    let coframe = frame.expect("frame images need a frame").coframe();
    let coordinate_columns: Vec<VectorField> = (0..d)
        .map(|a| {
            columns
                .iter()
                .zip(&coframe)
                .fold(VectorField::zero(d), |acc, (img, theta)| {
                    acc.add(&img.scale(theta.comp(a)))
                })
        })
        .collect();
    Ok(EndoField::from_columns(&coordinate_columns))
}

/// Parse and validate a manifold description.
pub fn parse_manifold(text: &str) -> Result<Manifold> {
    let mut draft = Draft::default();
    let mut last = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = Line {
            number: i + 1,
            text: raw,
        };
        last = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        draft.statement(&line, body)?;
    }
    draft.finish(last)
}
