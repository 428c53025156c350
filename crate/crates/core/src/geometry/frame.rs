use super::curvature::CurvatureTensor;
use super::tensor::{EndoField, Mat, OneForm, SymTensor2, Tensor2, VectorField};
use crate::error::{Error, Result};
use crate::symkernel::ScalarExpr;

/// A pointwise basis of vector fields together with its dual coframe.
#[derive(Clone, Debug)]
pub struct Frame {
    vectors: Vec<VectorField>,
    // inverse[(i, a)] = θ^i_a
    inverse: Mat,
    orthonormal: bool,
}

impl Frame {
    /// Build a frame; fails if the frame matrix is not invertible.
    pub fn new(vectors: Vec<VectorField>) -> Result<Self> {
        let d = vectors.len();
        if vectors.iter().any(|v| v.dim() != d) {
            return Err(Error::Dimension("frame needs d vectors with d components".into()));
        }
        let f = Mat::from_fn(d, |a, i| vectors[i].comp(a).clone());
        let inverse = f.inverse().ok_or(Error::SingularFrame)?;
        Ok(Frame {
            vectors,
            inverse,
            orthonormal: false,
        })
    }

    /// Build a frame and check `g(T_i, T_j) = δ_ij`.
    pub fn orthonormal(vectors: Vec<VectorField>, g: &SymTensor2) -> Result<Self> {
        let mut frame = Frame::new(vectors)?;
        if !frame.components(g).is_identity() {
            return Err(Error::NotOrthonormal);
        }
        frame.orthonormal = true;
        Ok(frame)
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_orthonormal(&self) -> bool {
        self.orthonormal
    }

    pub fn vectors(&self) -> &[VectorField] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &VectorField {
        &self.vectors[i]
    }

    /// Dual one-forms with `θ^i(T_j) = δ^i_j`.
    pub fn coframe(&self) -> Vec<OneForm> {
        let d = self.dim();
        (0..d)
            .map(|i| OneForm::new((0..d).map(|a| self.inverse[(i, a)].clone()).collect()))
            .collect()
    }

    /// The metric making this frame orthonormal: `g_{ab} = Σ_i θ^i_a θ^i_b`.
    pub fn dual_metric(&self) -> SymTensor2 {
        let d = self.dim();
        SymTensor2::lower_from_upper_triangle(d, |a, b| {
            (0..d).map(|i| &self.inverse[(i, a)] * &self.inverse[(i, b)]).sum()
        })
    }

    /// Coefficients of `v` in the frame.
    pub fn coefficients(&self, v: &VectorField) -> Vec<ScalarExpr> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|a| &self.inverse[(i, a)] * v.comp(a)).sum())
            .collect()
    }

    /// `T(T_i, T_j)`.
    pub fn components(&self, t: &Tensor2) -> FrameMatrix {
        let d = self.dim();
        FrameMatrix(Mat::from_fn(d, |i, j| t.eval(&self.vectors[i], &self.vectors[j])))
    }

    /// `ρ(T_i)`.
    pub fn oneform_components(&self, rho: &OneForm) -> Vec<ScalarExpr> {
        self.vectors.iter().map(|v| rho.apply(v)).collect()
    }

    /// `θ^i(A T_j)`.
    pub fn endo_components(&self, a: &EndoField) -> FrameMatrix {
        let d = self.dim();
        let images: Vec<Vec<ScalarExpr>> = self.vectors.iter().map(|v| self.coefficients(&a.apply(v))).collect();
        FrameMatrix(Mat::from_fn(d, |i, j| images[j][i].clone()))
    }

    /// Frame coefficients of `R(T_i, T_j)T_k`.
    pub fn curvature_coefficients(&self, r: &CurvatureTensor, i: usize, j: usize, k: usize) -> Vec<ScalarExpr> {
        self.coefficients(&r.apply(&self.vectors[i], &self.vectors[j], &self.vectors[k]))
    }
}

/// A `d × d` matrix of frame components.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameMatrix(pub Mat);

impl FrameMatrix {
    pub fn get(&self, i: usize, j: usize) -> &ScalarExpr {
        &self.0[(i, j)]
    }

    pub fn is_identity(&self) -> bool {
        self.0 == Mat::identity(self.0.dim())
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.0.dim();
        (0..d).all(|i| (0..d).all(|j| i == j || self.0[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<ScalarExpr> {
        (0..self.0.dim()).map(|i| self.0[(i, i)].clone()).collect()
    }

    /// True when the matrix equals `diag(values)` exactly.
    pub fn equals_diagonal(&self, values: &[i64]) -> bool {
        self.is_diagonal()
            && self
                .diagonal()
                .iter()
                .zip(values)
                .all(|(e, &v)| *e == ScalarExpr::from_int(v))
    }

    pub fn trace(&self) -> ScalarExpr {
        self.0.trace()
    }
}
