//! Chart-based Riemannian machinery.
//!
//! Every tensor is stored by its components in the coordinate basis of a
//! single chart; frame quantities are computed views (see [`Frame`]).

mod connection;
mod curvature;
mod fields;
mod frame;
mod tensor;

use std::sync::OnceLock;

pub(crate) use connection::delta;
pub use connection::{
    divergence, gradient, laplacian, levi_civita, lie_bracket, lie_derivative_connection, lie_derivative_metric,
    lie_derivative_metric_coordinate, metric_inverse, AffineConnection,
};
pub use curvature::{ricci, ricci_tensor, riemann, scalar_curvature, CurvatureTensor};
pub use fields::{parse_field, parse_oneform, parse_vector, FieldEnv, FieldValue};
pub use frame::{Frame, FrameMatrix};
pub use tensor::{EndoField, Mat, OneForm, SymTensor2, Tensor2, Variance, VectorField};

use crate::error::{Error, Result};
use crate::symkernel::{parse_scalar, ScalarExpr};

/// Named coordinates of a single chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    coords: Vec<String>,
}

impl Chart {
    pub fn new<S: Into<String>>(coords: impl IntoIterator<Item = S>) -> Result<Self> {
        let coords: Vec<String> = coords.into_iter().map(Into::into).collect();
        if coords.len() < 2 {
            return Err(Error::Chart("need at least two coordinates".into()));
        }
        for (i, c) in coords.iter().enumerate() {
            let mut chars = c.chars();
            let valid = chars.next().is_some_and(|ch| ch.is_ascii_alphabetic())
                && chars.all(|ch| ch.is_ascii_alphanumeric() || ch == '_');
            if !valid {
                return Err(Error::Chart(format!("invalid coordinate name `{c}`")));
            }
            if coords[..i].contains(c) {
                return Err(Error::Chart(format!("duplicate coordinate `{c}`")));
            }
        }
        Ok(Chart { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }

    pub fn scalar(&self, text: &str) -> Result<ScalarExpr> {
        parse_scalar(text, &self.coords)
    }

    pub fn vector(&self, text: &str) -> Result<VectorField> {
        parse_vector(text, &FieldEnv::new(self))
    }

    pub fn oneform(&self, text: &str) -> Result<OneForm> {
        parse_oneform(text, &FieldEnv::new(self))
    }
}

/// A metric with its inverse and Levi-Civita connection; curvature
/// quantities are computed on first use.
#[derive(Clone, Debug)]
pub struct Metric {
    g: SymTensor2,
    inverse: SymTensor2,
    connection: AffineConnection,
    curvature: OnceLock<CurvatureTensor>,
    ricci: OnceLock<SymTensor2>,
    scalar: OnceLock<ScalarExpr>,
}

impl Metric {
    pub fn new(g: SymTensor2) -> Result<Self> {
        if g.dim() < 2 {
            return Err(Error::Dimension("metric needs d >= 2".into()));
        }
        let inverse = metric_inverse(&g)?;
        let connection = connection::levi_civita_with_inverse(&g, &inverse);
        Ok(Metric {
            g,
            inverse,
            connection,
            curvature: OnceLock::new(),
            ricci: OnceLock::new(),
            scalar: OnceLock::new(),
        })
    }

    pub fn euclidean(d: usize) -> Self {
        Metric::new(SymTensor2::identity(d)).expect("identity metric")
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn g(&self) -> &SymTensor2 {
        &self.g
    }

    pub fn inverse(&self) -> &SymTensor2 {
        &self.inverse
    }

    pub fn connection(&self) -> &AffineConnection {
        &self.connection
    }

    pub fn curvature(&self) -> &CurvatureTensor {
        self.curvature.get_or_init(|| riemann(&self.connection))
    }

    pub fn ricci(&self) -> &SymTensor2 {
        self.ricci.get_or_init(|| {
            // Levi-Civita Ricci tensors are symmetric; symmetrize the
            // contraction so the invariant holds by construction.
            ricci_tensor(self.curvature()).symmetrized()
        })
    }

    pub fn scalar_curvature(&self) -> &ScalarExpr {
        self.scalar
            .get_or_init(|| scalar_curvature(&self.inverse, self.ricci()))
    }

    pub fn inner(&self, x: &VectorField, y: &VectorField) -> ScalarExpr {
        self.g.eval(x, y)
    }

    /// `g(X, ·)`.
    pub fn flat(&self, x: &VectorField) -> OneForm {
        self.g.lower_vector(x)
    }

    /// `g^{ab} T_{ab}`.
    pub fn trace(&self, t: &Tensor2) -> ScalarExpr {
        t.contract(&self.inverse)
    }

    pub fn lie_derivative(&self, v: &VectorField) -> SymTensor2 {
        lie_derivative_metric(&self.g, &self.connection, v)
    }

    pub fn divergence(&self, v: &VectorField) -> ScalarExpr {
        divergence(&self.connection, v)
    }

    pub fn gradient(&self, f: &ScalarExpr) -> VectorField {
        gradient(&self.inverse, f)
    }

    pub fn laplacian(&self, f: &ScalarExpr) -> ScalarExpr {
        laplacian(&self.inverse, &self.connection, f)
    }

    /// Ricci operator `Q^a_b = g^{ac} S_{cb}`.
    pub fn ricci_operator(&self) -> EndoField {
        let d = self.dim();
        let s = self.ricci();
        EndoField::new(Mat::from_fn(d, |a, b| {
            (0..d).map(|c| self.inverse.comp(a, c) * s.comp(c, b)).sum()
        }))
    }
}
