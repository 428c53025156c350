use super::connection::AffineConnection;
use super::tensor::{Mat, SymTensor2, Tensor2, VectorField};
use crate::error::Result;
use crate::symkernel::ScalarExpr;

/// Curvature components `R^l_{kij}` with `R(∂_i, ∂_j)∂_k = R^l_{kij} ∂_l`,
/// where `R(X, Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_{[X,Y]} Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor {
    d: usize,
    comps: Vec<ScalarExpr>,
}

impl CurvatureTensor {
    pub fn from_fn(d: usize, mut f: impl FnMut(usize, usize, usize, usize) -> ScalarExpr) -> Self {
        let mut comps = Vec::with_capacity(d * d * d * d);
        for l in 0..d {
            for k in 0..d {
                for i in 0..d {
                    for j in 0..d {
                        comps.push(f(l, k, i, j));
                    }
                }
            }
        }
        CurvatureTensor { d, comps }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// `R^l_{kij}`.
    pub fn comp(&self, l: usize, k: usize, i: usize, j: usize) -> &ScalarExpr {
        let d = self.d;
        &self.comps[((l * d + k) * d + i) * d + j]
    }

    pub fn components(&self) -> &[ScalarExpr] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ScalarExpr::is_zero)
    }

    /// `R(X, Y)Z`.
    pub fn apply(&self, x: &VectorField, y: &VectorField, z: &VectorField) -> VectorField {
        let d = self.d;
        let mut out = vec![ScalarExpr::zero(); d];
        for i in 0..d {
            if x.comp(i).is_zero() {
                continue;
            }
            for j in 0..d {
                if y.comp(j).is_zero() {
                    continue;
                }
                let xy = x.comp(i) * y.comp(j);
                for k in 0..d {
                    if z.comp(k).is_zero() {
                        continue;
                    }
                    let xyz = &xy * z.comp(k);
                    for (l, slot) in out.iter_mut().enumerate() {
                        let r = self.comp(l, k, i, j);
                        if !r.is_zero() {
                            *slot = &*slot + &(&xyz * r);
                        }
                    }
                }
            }
        }
        VectorField::new(out)
    }

    /// Antisymmetry `R^l_{kij} + R^l_{kji} = 0`.
    pub fn is_antisymmetric(&self) -> bool {
        let d = self.d;
        (0..d).all(|l| {
            (0..d).all(|k| (0..d).all(|i| (i..d).all(|j| (self.comp(l, k, i, j) + self.comp(l, k, j, i)).is_zero())))
        })
    }

    /// First Bianchi identity `R^l_{kij} + R^l_{ijk} + R^l_{jki} = 0`.
    pub fn satisfies_first_bianchi(&self) -> bool {
        let d = self.d;
        (0..d).all(|l| {
            (0..d).all(|k| {
                (0..d).all(|i| {
                    (0..d).all(|j| (self.comp(l, k, i, j) + self.comp(l, i, j, k) + self.comp(l, j, k, i)).is_zero())
                })
            })
        })
    }
}

/// `R^l_{kij} = ∂_i Γ^l_{jk} − ∂_j Γ^l_{ik} + Γ^l_{im}Γ^m_{jk} − Γ^l_{jm}Γ^m_{ik}`.
pub fn riemann(conn: &AffineConnection) -> CurvatureTensor {
    let d = conn.dim();
    let idx = |k: usize, i: usize, j: usize| (k * d + i) * d + j;
    // dgamma[a][idx(l,i,j)] = ∂_a Γ^l_{ij}
    let dgamma: Vec<Vec<ScalarExpr>> = (0..d)
        .map(|a| {
            let mut v = Vec::with_capacity(d * d * d);
            for l in 0..d {
                for i in 0..d {
                    for j in 0..d {
                        v.push(conn.gamma(l, i, j).partial(a));
                    }
                }
            }
            v
        })
        .collect();
    CurvatureTensor::from_fn(d, |l, k, i, j| {
        let mut acc = &dgamma[i][idx(l, j, k)] - &dgamma[j][idx(l, i, k)];
        for m in 0..d {
            let a = conn.gamma(l, i, m);
            let b = conn.gamma(m, j, k);
            if !a.is_zero() && !b.is_zero() {
                acc = acc + a * b;
            }
            let c = conn.gamma(l, j, m);
            let e = conn.gamma(m, i, k);
            if !c.is_zero() && !e.is_zero() {
                acc = acc - c * e;
            }
        }
        acc
    })
}

/// Ricci contraction `S_{jk} = R^i_{kij}`, without assuming symmetry.
pub fn ricci_tensor(r: &CurvatureTensor) -> Tensor2 {
    let d = r.dim();
    Tensor2::lower(Mat::from_fn(d, |j, k| (0..d).map(|i| r.comp(i, k, i, j).clone()).sum()))
}

/// Ricci tensor of a connection whose Ricci contraction is symmetric.
pub fn ricci(r: &CurvatureTensor) -> Result<SymTensor2> {
    SymTensor2::new(ricci_tensor(r))
}

/// `r = g^{ab} S_{ab}`.
pub fn scalar_curvature(inv: &SymTensor2, s: &Tensor2) -> ScalarExpr {
    s.contract(inv)
}
