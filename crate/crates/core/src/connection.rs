//! Invariant connections on a Lie-group frame: Levi-Civita, connections with
//! skew torsion, covariant derivatives and curvature.

use crate::algebra::LieAlgebra8;
use crate::error::{Error, Result};
use crate::exterior::{hodge_star, interior_product, Covector, FrameMetric, KForm, Mat8, DIM};
use crate::tensor::{for_each_index, Tensor};

type Cube = [[[f64; DIM]; DIM]; DIM];

/// `∇_{e_i} e_j = Σ_k Γ^k_{ij} e_k`, stored as `gamma[i][j][k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameConnection {
    gamma: Cube,
    metric: FrameMetric,
}

/// Curvature `R_{ijkl} = g(R(e_i,e_j)e_k, e_l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTensor {
    pub r: Tensor,
}

/// `c_{ijk} = g([e_i,e_j], e_k)`.
fn lowered_brackets(alg: &LieAlgebra8, m: &FrameMetric) -> Cube {
    let mut out = [[[0.0; DIM]; DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                out[i][j][k] = (0..DIM).map(|l| alg.c(l, i, j) * m.g(l, k)).sum();
            }
        }
    }
    out
}

impl FrameConnection {
    pub fn from_lowered(lowered: &Cube, metric: &FrameMetric) -> Self {
        let mut gamma = [[[0.0; DIM]; DIM]; DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    gamma[i][j][k] = (0..DIM).map(|l| metric.g_inv(k, l) * lowered[i][j][l]).sum();
                }
            }
        }
        FrameConnection { gamma, metric: metric.clone() }
    }

    /// `Γ^k_{ij}`.
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> f64 {
        self.gamma[i][j][k]
    }

    pub fn metric(&self) -> &FrameMetric {
        &self.metric
    }

    /// `Γ_{ijk} = Γ^l_{ij} g_{lk}`.
    pub fn lowered(&self) -> Cube {
        let mut out = [[[0.0; DIM]; DIM]; DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    out[i][j][k] = (0..DIM).map(|l| self.gamma[i][j][l] * self.metric.g(l, k)).sum();
                }
            }
        }
        out
    }

    /// `max |Γ_{ijk} + Γ_{ikj}|`.
    pub fn metric_defect(&self) -> f64 {
        let low = self.lowered();
        let mut worst: f64 = 0.0;
        for row in &low {
            for j in 0..DIM {
                for k in 0..DIM {
                    worst = worst.max((row[j][k] + row[k][j]).abs());
                }
            }
        }
        worst
    }

    /// `T(e_i,e_j,e_k) = g(∇_{e_i}e_j − ∇_{e_j}e_i − [e_i,e_j], e_k)` as a tensor.
    pub fn torsion_tensor(&self, alg: &LieAlgebra8) -> Tensor {
        let low = self.lowered();
        let c = lowered_brackets(alg, &self.metric);
        Tensor::from_fn(3, |x| low[x[0]][x[1]][x[2]] - low[x[1]][x[0]][x[2]] - c[x[0]][x[1]][x[2]])
    }

    /// `(∇_i t)_{j…} = −Σ_slots Σ_m Γ^m_{i j_s} t_{…m…}`; the derivative index comes first.
    pub fn covariant_derivative(&self, t: &Tensor) -> Tensor {
        let r = t.rank();
        let mut idx2 = vec![0usize; r];
        Tensor::from_fn(r + 1, |x| {
            let i = x[0];
            let rest = &x[1..];
            let mut s = 0.0;
            for slot in 0..r {
                idx2.copy_from_slice(rest);
                for m in 0..DIM {
                    let gm = self.gamma[i][rest[slot]][m];
                    if gm != 0.0 {
                        idx2[slot] = m;
                        s -= gm * t.get(&idx2);
                    }
                }
            }
            s
        })
    }

    pub fn covariant_derivative_form(&self, f: &KForm) -> Tensor {
        self.covariant_derivative(&Tensor::from_form(f))
    }

    /// `R^l_{ijk} = Γ^l_{im}Γ^m_{jk} − Γ^l_{jm}Γ^m_{ik} − c^m_{ij}Γ^l_{mk}`, lowered in `l`.
    pub fn curvature(&self, alg: &LieAlgebra8) -> CurvatureTensor {
        let g = &self.gamma;
        let mut up = [[[[0.0; DIM]; DIM]; DIM]; DIM];
        for (i, ui) in up.iter_mut().enumerate() {
            for (j, uij) in ui.iter_mut().enumerate() {
                for (k, uijk) in uij.iter_mut().enumerate() {
                    for (l, v) in uijk.iter_mut().enumerate() {
                        let mut s = 0.0;
                        for m in 0..DIM {
                            s += g[i][m][l] * g[j][k][m] - g[j][m][l] * g[i][k][m] - alg.c(m, i, j) * g[m][k][l];
                        }
                        *v = s;
                    }
                }
            }
        }
        let r = Tensor::from_fn(4, |x| (0..DIM).map(|m| up[x[0]][x[1]][x[2]][m] * self.metric.g(m, x[3])).sum());
        CurvatureTensor { r }
    }
}

pub fn levi_civita(alg: &LieAlgebra8, m: &FrameMetric) -> FrameConnection {
    let c = lowered_brackets(alg, m);
    let mut low = [[[0.0; DIM]; DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                low[i][j][k] = 0.5 * (c[i][j][k] - c[j][k][i] + c[k][i][j]);
            }
        }
    }
    FrameConnection::from_lowered(&low, m)
}

/// `Γ^k_{ij} = (Γ_lc)^k_{ij} + ½ g^{kl} T_{ijl}`.
pub fn connection_from_torsion(lc: &FrameConnection, t: &KForm) -> Result<FrameConnection> {
    if t.degree() != 3 {
        return Err(Error::DegreeMismatch { expected: 3, got: t.degree() });
    }
    let mut low = lc.lowered();
    for (i, row) in low.iter_mut().enumerate() {
        for (j, col) in row.iter_mut().enumerate() {
            for (k, v) in col.iter_mut().enumerate() {
                *v += 0.5 * t.component(&[i, j, k]);
            }
        }
    }
    Ok(FrameConnection::from_lowered(&low, &lc.metric))
}

impl CurvatureTensor {
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.r.get(&[i, j, k, l])
    }

    /// `max |R_{ijkl} + R_{jikl}|, |R_{ijkl} + R_{ijlk}|`.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for_each_index(4, |x| {
            let v = self.r.get(x);
            worst = worst.max((v + self.r.get(&[x[1], x[0], x[2], x[3]])).abs());
            worst = worst.max((v + self.r.get(&[x[0], x[1], x[3], x[2]])).abs());
        });
        worst
    }

    /// `Ric_{ij} = g^{ab} R_{a i j b}`.
    pub fn ricci(&self, m: &FrameMetric) -> Mat8 {
        Mat8::from_fn(|i, j| {
            let mut s = 0.0;
            for a in 0..DIM {
                for b in 0..DIM {
                    let gi = m.g_inv(a, b);
                    if gi != 0.0 {
                        s += gi * self.get(a, i, j, b);
                    }
                }
            }
            s
        })
    }
}

pub fn scalar_curvature(ric: &Mat8, m: &FrameMetric) -> f64 {
    (m.inverse() * ric).trace()
}

/// `δβ = −⋆d⋆β`.
pub fn codifferential(beta: &KForm, alg: &LieAlgebra8, m: &FrameMetric) -> Result<KForm> {
    if beta.degree() == 0 {
        return Err(Error::InteriorOfScalar);
    }
    Ok(-hodge_star(&alg.d(&hodge_star(beta, m))?, m))
}

/// `(δβ)_{i2…ik} = −g^{ab} (∇^g_a β)_{b i2…ik}`.
pub fn codifferential_via_connection(beta: &KForm, lc: &FrameConnection) -> Result<KForm> {
    let k = beta.degree();
    if k == 0 {
        return Err(Error::InteriorOfScalar);
    }
    let nb = lc.covariant_derivative_form(beta);
    let m = lc.metric();
    let mut idx = vec![0usize; k + 1];
    let t = Tensor::from_fn(k - 1, |rest| {
        idx[2..].copy_from_slice(rest);
        let mut s = 0.0;
        for a in 0..DIM {
            for b in 0..DIM {
                let gi = m.g_inv(a, b);
                if gi != 0.0 {
                    idx[0] = a;
                    idx[1] = b;
                    s -= gi * nb.get(&idx);
                }
            }
        }
        s
    });
    Ok(t.to_form())
}

/// `σ^T = ½ Σ_a (v_a⌟T)∧(v_a⌟T)` over an orthonormal frame `v_a` obtained from
/// the Cholesky factor of `g`.
pub fn sigma_t(t: &KForm, m: &FrameMetric) -> Result<KForm> {
    if t.degree() != 3 {
        return Err(Error::DegreeMismatch { expected: 3, got: t.degree() });
    }
    // vectors v_a = columns of L^{-T}; the covector g v_a = column a of L
    let l = m.cholesky_factor();
    let mut out = KForm::zero(4);
    for a in 0..DIM {
        let x = Covector(l.column(a).into_owned());
        let it = interior_product(&x, t, m)?;
        out = out + crate::exterior::wedge(&it, &it)?;
    }
    Ok(out.scale(0.5))
}

/// Components `σ^T_{xyzv} = T_{xy}{}^{m}T_{zvm} + T_{yz}{}^{m}T_{xvm} + T_{zx}{}^{m}T_{yvm}`.
pub fn sigma_t_dense(t: &KForm, m: &FrameMetric) -> Tensor {
    let td = Tensor::from_form(t);
    let tu = Tensor::from_form(&t.clone()).contract_slot(2, &inverse_rows(m));
    let pair = |a: usize, b: usize, c: usize, d: usize| -> f64 {
        (0..DIM).map(|s| tu.get(&[a, b, s]) * td.get(&[c, d, s])).sum()
    };
    Tensor::from_fn(4, |x| {
        let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
        pair(a, b, c, d) + pair(b, c, a, d) + pair(c, a, b, d)
    })
}

pub(crate) fn inverse_rows(m: &FrameMetric) -> [[f64; DIM]; DIM] {
    let mut out = [[0.0; DIM]; DIM];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = m.g_inv(i, j);
        }
    }
    out
}

/// Derivative of the torsion 3-form through the full expansion in `∇T` and `σ^T`:
/// `dT_{xyzv} = ∇_xT_{yzv} + ∇_yT_{zxv} + ∇_zT_{xyv} + 2σ^T_{xyzv} − ∇_vT_{xyz}`.
pub fn dt_expansion(nabla_t: &Tensor, sigma: &Tensor) -> Tensor {
    Tensor::from_fn(4, |x| {
        let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
        nabla_t.get(&[a, b, c, d]) + nabla_t.get(&[b, c, a, d]) + nabla_t.get(&[c, a, b, d]) + 2.0 * sigma.get(x)
            - nabla_t.get(&[d, a, b, c])
    })
}
