//! Eight-dimensional Lie algebras given by structure constants on a frame.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{KForm, Mat8, MultiIndex, DIM};
use crate::scalar::ScalarSpec;

/// `c[k][i][j] = c^k_{ij}` with `[e_i, e_j] = Σ_k c^k_{ij} e_k`.
pub type Constants = [[[f64; DIM]; DIM]; DIM];

pub const JACOBI_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra8 {
    name: String,
    c: Constants,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Entries are bracket constants `c^k_{ij}`.
    Brackets,
    /// Entries are coefficients of `e_{ij}` in `de_k`.
    StructureEquations,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: ScalarSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub name: String,
    pub dim: usize,
    pub convention: Convention,
    #[serde(default)]
    pub constants: Vec<ConstantJson>,
}

impl AlgebraSpec {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

pub fn load_algebra(spec: &AlgebraSpec) -> Result<LieAlgebra8> {
    if spec.dim != DIM {
        return Err(Error::AlgebraSpec(format!("dim must be 8, got {}", spec.dim)));
    }
    let mut c = [[[0.0; DIM]; DIM]; DIM];
    let mut seen = std::collections::BTreeSet::new();
    for e in &spec.constants {
        if e.i >= DIM || e.j >= DIM || e.k >= DIM {
            return Err(Error::AlgebraSpec(format!("index out of range in ({}, {}, {})", e.i, e.j, e.k)));
        }
        if e.i == e.j {
            return Err(Error::AlgebraSpec(format!("repeated lower index {} in constant for k = {}", e.i, e.k)));
        }
        let (lo, hi) = (e.i.min(e.j), e.i.max(e.j));
        if !seen.insert((e.k, lo, hi)) {
            return Err(Error::AlgebraSpec(format!("duplicate constant for k = {}, pair ({lo}, {hi})", e.k)));
        }
        let v = e.c.value()?;
        let v = match spec.convention {
            Convention::Brackets => v,
            Convention::StructureEquations => -v,
        };
        c[e.k][e.i][e.j] = v;
        c[e.k][e.j][e.i] = -v;
    }
    LieAlgebra8::new(spec.name.clone(), c)
}

impl LieAlgebra8 {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(name: impl Into<String>, c: Constants) -> Result<Self> {
        for k in 0..DIM {
            for i in 0..DIM {
                for j in 0..DIM {
                    let v = c[k][i][j];
                    if !v.is_finite() || (v + c[k][j][i]).abs() > JACOBI_TOL {
                        return Err(Error::AlgebraSpec(format!("c^{k}_{{{i}{j}}} is not antisymmetric or not finite")));
                    }
                }
            }
        }
        let alg = LieAlgebra8 { name: name.into(), c };
        let (indices, residual) = alg.jacobi_residual();
        if residual > JACOBI_TOL {
            return Err(Error::Jacobi { indices, residual });
        }
        Ok(alg)
    }

    pub fn abelian() -> Self {
        LieAlgebra8 { name: "abelian".into(), c: [[[0.0; DIM]; DIM]; DIM] }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `c^k_{ij}`.
    pub fn c(&self, k: usize, i: usize, j: usize) -> f64 {
        self.c[k][i][j]
    }

    pub fn constants(&self) -> &Constants {
        &self.c
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(|v| *v == 0.0)
    }

    /// `max_k |tr ad(e_k)|`; zero iff the algebra is unimodular, which is
    /// what a compact quotient of the group requires.
    pub fn unimodularity_defect(&self) -> f64 {
        (0..DIM).map(|k| (0..DIM).map(|i| self.c[i][k][i]).sum::<f64>().abs()).fold(0.0, f64::max)
    }

    /// Worst `(i, j, k, l)` of `Σ_m c^m_{ij}c^l_{mk} + c^m_{jk}c^l_{mi} + c^m_{ki}c^l_{mj}`.
    pub fn jacobi_residual(&self) -> ([usize; 4], f64) {
        let c = &self.c;
        let mut worst = ([0; 4], 0.0);
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    for l in 0..DIM {
                        let mut s = 0.0;
                        for m in 0..DIM {
                            s += c[m][i][j] * c[l][m][k] + c[m][j][k] * c[l][m][i] + c[m][k][i] * c[l][m][j];
                        }
                        if s.abs() > worst.1 {
                            worst = ([i, j, k, l], s.abs());
                        }
                    }
                }
            }
        }
        worst
    }

    /// Brackets in the frame `e'_a = Σ_i M_{ia} e_i`:
    /// `c'^c_{ab} = (M⁻¹)_{ck} c^k_{ij} M_{ia} M_{jb}`.
    pub fn change_frame(&self, m: &Mat8) -> Result<Self> {
        let inv = m.try_inverse().ok_or_else(|| Error::AlgebraSpec("singular frame change".into()))?;
        let mut out = [[[0.0; DIM]; DIM]; DIM];
        // contract one index at a time
        let mut t1 = [[[0.0; DIM]; DIM]; DIM];
        for k in 0..DIM {
            for a in 0..DIM {
                for j in 0..DIM {
                    t1[k][a][j] = (0..DIM).map(|i| self.c[k][i][j] * m[(i, a)]).sum();
                }
            }
        }
        let mut t2 = [[[0.0; DIM]; DIM]; DIM];
        for k in 0..DIM {
            for a in 0..DIM {
                for b in 0..DIM {
                    t2[k][a][b] = (0..DIM).map(|j| t1[k][a][j] * m[(j, b)]).sum();
                }
            }
        }
        for c in 0..DIM {
            for a in 0..DIM {
                for b in 0..DIM {
                    out[c][a][b] = (0..DIM).map(|k| inv[(c, k)] * t2[k][a][b]).sum();
                }
            }
        }
        // round-off can break exact antisymmetry; restore it
        for c in 0..DIM {
            for a in 0..DIM {
                for b in a..DIM {
                    let v = 0.5 * (out[c][a][b] - out[c][b][a]);
                    out[c][a][b] = v;
                    out[c][b][a] = -v;
                }
            }
        }
        LieAlgebra8::new(self.name.clone(), out)
    }

    /// Chevalley–Eilenberg differential of an invariant form:
    /// `dβ(X_0,…,X_k) = Σ_{a<b} (−1)^{a+b} β([X_a,X_b], X_0,…,X̂_a,…,X̂_b,…,X_k)`.
    pub fn d(&self, beta: &KForm) -> Result<KForm> {
        let k = beta.degree();
        if k >= DIM {
            return Err(Error::DegreeOverflow(k, 1));
        }
        let mut out = KForm::zero(k + 1);
        if beta.is_empty() || self.is_abelian() {
            return Ok(out);
        }
        let mut args = vec![0usize; k];
        for j in MultiIndex::all_of_degree(k + 1) {
            let js = j.to_vec();
            let mut s = 0.0;
            for a in 0..=k {
                for b in a + 1..=k {
                    let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
                    let rest: Vec<usize> =
                        js.iter().enumerate().filter(|(q, _)| *q != a && *q != b).map(|(_, v)| *v).collect();
                    args[1..].copy_from_slice(&rest);
                    for m in 0..DIM {
                        let cm = self.c[m][js[a]][js[b]];
                        if cm != 0.0 {
                            args[0] = m;
                            s += sign * cm * beta.component(&args);
                        }
                    }
                }
            }
            out = out + KForm::monomial(&js, s);
        }
        Ok(out)
    }
}

/// Form components in the frame `e'_a = Σ_i M_{ia} e_i`: `ω'_{a…} = ω_{i…} M_{ia} ⋯`.
pub fn transform_form(f: &KForm, m: &Mat8) -> KForm {
    let k = f.degree();
    let mut t = crate::tensor::Tensor::from_form(f);
    let mut rows = [[0.0; DIM]; DIM];
    for (a, row) in rows.iter_mut().enumerate() {
        for (i, v) in row.iter_mut().enumerate() {
            *v = m[(i, a)];
        }
    }
    for slot in 0..k {
        t = t.contract_slot(slot, &rows);
    }
    t.to_form()
}

/// Metric components in the new frame: `Mᵀ g M`.
pub fn transform_metric(g: &Mat8, m: &Mat8) -> Mat8 {
    m.transpose() * g * m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su2su2() -> LieAlgebra8 {
        let s = r#"{"name":"t","dim":8,"convention":"structure_equations","constants":[
            {"i":2,"j":3,"k":1,"c":1},{"i":3,"j":1,"k":2,"c":1},{"i":1,"j":2,"k":3,"c":1},
            {"i":5,"j":6,"k":4,"c":1},{"i":6,"j":4,"k":5,"c":1},{"i":4,"j":5,"k":6,"c":1}]}"#;
        load_algebra(&AlgebraSpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn structure_equation_convention() {
        let a = su2su2();
        assert_eq!(a.c(1, 2, 3), -1.0);
        assert_eq!(a.c(1, 3, 2), 1.0);
        assert_eq!(a.c(2, 1, 3), 1.0);
        let de1 = a.d(&KForm::from_terms(1, &[("1", 1.0)])).unwrap();
        assert_eq!(de1, KForm::from_terms(2, &[("23", 1.0)]));
        let de2 = a.d(&KForm::from_terms(1, &[("2", 1.0)])).unwrap();
        assert_eq!(de2, KForm::from_terms(2, &[("13", -1.0)]));
    }

    #[test]
    fn heisenberg_and_abelian() {
        let mut c = [[[0.0; DIM]; DIM]; DIM];
        c[1][2][3] = 1.0;
        c[1][3][2] = -1.0;
        assert!(LieAlgebra8::new("h", c).is_ok());
        let ab = load_algebra(
            &AlgebraSpec::parse(r#"{"name":"a","dim":8,"convention":"brackets","constants":[]}"#).unwrap(),
        )
        .unwrap();
        assert!(ab.is_abelian());
        assert!(ab.d(&KForm::from_terms(2, &[("01", 1.0)])).unwrap().is_empty());
    }

    #[test]
    fn jacobi_failure_reports_indices() {
        // SU(3) equations keeping only the terms with i, j < k: not closed under d
        let s = r#"{"name":"bad","dim":8,"convention":"structure_equations","constants":[
            {"i":1,"j":2,"k":3,"c":-1},{"i":3,"j":4,"k":5,"c":-0.5},
            {"i":1,"j":5,"k":6,"c":0.5},{"i":2,"j":4,"k":6,"c":-0.5},
            {"i":1,"j":4,"k":7,"c":-0.5},{"i":2,"j":5,"k":7,"c":-0.5},{"i":3,"j":6,"k":7,"c":0.5},
            {"i":4,"j":5,"k":0,"c":"-sqrt(3)/2"},{"i":6,"j":7,"k":0,"c":"-sqrt(3)/2"}]}"#;
        match load_algebra(&AlgebraSpec::parse(s).unwrap()) {
            Err(Error::Jacobi { indices, residual }) => {
                assert!(residual > 0.1);
                assert!(indices.iter().all(|i| *i < 8));
            }
            other => panic!("expected Jacobi error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_specs() {
        for s in [
            r#"{"name":"x","dim":7,"convention":"brackets","constants":[]}"#,
            r#"{"name":"x","dim":8,"convention":"brackets","constants":[{"i":1,"j":1,"k":2,"c":1}]}"#,
            r#"{"name":"x","dim":8,"convention":"brackets","constants":[{"i":1,"j":9,"k":2,"c":1}]}"#,
            r#"{"name":"x","dim":8,"convention":"brackets","constants":[{"i":1,"j":2,"k":0,"c":1},{"i":2,"j":1,"k":0,"c":1}]}"#,
            r#"{"name":"x","dim":8,"convention":"brackets","constants":[{"i":1,"j":2,"k":0,"c":"sqrt(-1)"}]}"#,
        ] {
            let r = AlgebraSpec::parse(s).and_then(|a| load_algebra(&a));
            assert!(r.is_err(), "{s}");
        }
        assert!(AlgebraSpec::parse(r#"{"name":"x","dim":8,"convention":"other","constants":[]}"#).is_err());
    }

    #[test]
    fn d_squared_vanishes() {
        let a = su2su2();
        for k in 0..6 {
            for idx in MultiIndex::all_of_degree(k) {
                let dd = a.d(&a.d(&KForm::basis(idx)).unwrap()).unwrap();
                assert!(dd.max_abs() < 1e-14);
            }
        }
    }
}
