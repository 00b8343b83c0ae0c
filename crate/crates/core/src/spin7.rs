//! The Spin(7) 4-form: canonical model, induced metric, admissibility checks
//! and the type decompositions of Λ², Λ³, Λ⁴.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::exterior::{hodge_star, wedge, Covector, FrameMetric, KForm, Mat8, MultiIndex, DIM};
use crate::report::VerificationReport;
use crate::tensor::Tensor;

pub const DEFAULT_TOL: f64 = 1e-9;

const CANONICAL_TERMS: [(&str, f64); 14] = [
    ("0127", -1.0),
    ("0236", 1.0),
    ("0347", -1.0),
    ("0567", -1.0),
    ("0146", 1.0),
    ("0245", 1.0),
    ("0135", -1.0),
    ("3456", -1.0),
    ("1457", -1.0),
    ("1256", -1.0),
    ("1234", -1.0),
    ("2357", -1.0),
    ("1367", -1.0),
    ("2467", 1.0),
];

/// A 4-form together with the metric it induces.
#[derive(Debug, Clone)]
pub struct Spin7Form {
    phi: KForm,
    metric: FrameMetric,
    dense: Tensor,
}

pub fn canonical_phi() -> Spin7Form {
    Spin7Form::with_metric(KForm::from_terms(4, &CANONICAL_TERMS), FrameMetric::identity())
        .expect("canonical form has degree 4")
}

/// `g_{ij} = (1/42) φ_{iklm} φ_{jklm}` (plain index sums).
pub fn metric_from_phi(phi: &KForm) -> Result<FrameMetric> {
    if phi.degree() != 4 {
        return Err(Error::DegreeMismatch { expected: 4, got: phi.degree() });
    }
    let p = Tensor::from_form(phi);
    let m = pair3_matrix(&p);
    let g: Mat8 = Mat8::from_fn(|i, j| (m.row(i) * m.row(j).transpose())[(0, 0)] / 42.0);
    FrameMetric::new(g).map_err(|e| Error::NotSpin7(format!("induced metric is degenerate: {e}")))
}

/// A frame `e'_a = Σ_i M_{ia} e_i` that is orthonormal for the metric `φ`
/// actually induces, i.e. the solution of
/// `g_{ij} = (1/42) φ_{iklm} φ_{jpqr} g^{kp} g^{lq} g^{mr}`.
///
/// [`metric_from_phi`] is the `g = 1` case of the right-hand side. Near an
/// orthonormal frame, a metric `1 + 2X` shows up in that plain sum as
/// `1 + (8/7)X + (6/7) tr X`, so each step takes `log P`, scales its trace
/// part by 1/4 and its trace-free part by 7/4, and moves to the frame where
/// the corrected guess is the identity.
pub fn orthonormal_frame(phi: &KForm) -> Result<Mat8> {
    const MAX_STEPS: usize = 100;
    let sym_fn = |a: &Mat8, f: &dyn Fn(f64) -> f64| {
        let e = a.symmetric_eigen();
        e.eigenvectors * Mat8::from_diagonal(&e.eigenvalues.map(f)) * e.eigenvectors.transpose()
    };
    let mut m = Mat8::identity();
    for _ in 0..MAX_STEPS {
        let p = *metric_from_phi(&crate::algebra::transform_form(phi, &m))?.matrix();
        if (p - Mat8::identity()).amax() <= 1e-14 {
            return Ok(m);
        }
        let log_p = sym_fn(&p, &|v| v.ln());
        let trace_part = Mat8::identity() * (log_p.trace() / DIM as f64);
        let log_g = trace_part / 4.0 + (log_p - trace_part) * 1.75;
        m *= sym_fn(&log_g, &|v| (-0.5 * v).exp());
    }
    Err(Error::NotSpin7("induced metric did not converge; the form is not of Spin(7) type".into()))
}

/// `φ` as an `8 × 512` matrix, row `i`, column `(k,l,m)`.
fn pair3_matrix(p: &Tensor) -> DMatrix<f64> {
    DMatrix::from_row_slice(DIM, DIM * DIM * DIM, p.data())
}

/// A rank-4 tensor as a 64×64 matrix indexed by `(ij),(kl)`.
pub(crate) fn pair_matrix(t: &Tensor) -> DMatrix<f64> {
    debug_assert_eq!(t.rank(), 4);
    DMatrix::from_row_slice(DIM * DIM, DIM * DIM, t.data())
}

fn inverse_pair(metric: &FrameMetric) -> DMatrix<f64> {
    let inv = metric.inverse();
    DMatrix::from_fn(DIM * DIM, DIM * DIM, |r, c| inv[(r / DIM, c / DIM)] * inv[(r % DIM, c % DIM)])
}

fn as_rows(m: &Mat8) -> [[f64; DIM]; DIM] {
    let mut out = [[0.0; DIM]; DIM];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = m[(i, j)];
        }
    }
    out
}

impl Spin7Form {
    /// Builds the form with its induced metric (see [`orthonormal_frame`]);
    /// fails if there is none. Admissibility is checked separately by
    /// [`validate_phi`].
    pub fn new(phi: KForm) -> Result<Self> {
        let m = orthonormal_frame(&phi)?;
        let g =
            (m * m.transpose()).try_inverse().ok_or_else(|| Error::NotSpin7("induced metric is singular".into()))?;
        // symmetrize away round-off so the metric constructor accepts it
        let metric = FrameMetric::new((g + g.transpose()) * 0.5)?;
        Spin7Form::with_metric(phi, metric)
    }

    /// Uses a known metric instead of recomputing it.
    pub fn with_metric(phi: KForm, metric: FrameMetric) -> Result<Self> {
        if phi.degree() != 4 {
            return Err(Error::DegreeMismatch { expected: 4, got: phi.degree() });
        }
        let dense = Tensor::from_form(&phi);
        Ok(Spin7Form { phi, metric, dense })
    }

    pub fn phi(&self) -> &KForm {
        &self.phi
    }

    pub fn metric(&self) -> &FrameMetric {
        &self.metric
    }

    pub fn dense(&self) -> &Tensor {
        &self.dense
    }

    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.dense.get(&[i, j, k, l])
    }

    pub fn validity(&self) -> VerificationReport {
        validate_with(self, DEFAULT_TOL)
    }

    /// `L(β) = ⋆(β∧φ)` on 2-forms.
    pub fn l_operator(&self, beta: &KForm) -> Result<KForm> {
        if beta.degree() != 2 {
            return Err(Error::DegreeMismatch { expected: 2, got: beta.degree() });
        }
        Ok(hodge_star(&wedge(beta, &self.phi)?, &self.metric))
    }

    /// `α⌟φ` for a covector.
    pub fn contract(&self, alpha: &Covector) -> KForm {
        crate::exterior::interior_product(alpha, &self.phi, &self.metric).expect("degree 4")
    }

    /// `φ` with slot `slot` acted on by the endomorphism `a` (row-major `a[i][t]`).
    fn slot_action(&self, slot: usize, a: &[[f64; DIM]; DIM]) -> Tensor {
        self.dense.contract_slot(slot, a)
    }
}

/// Λ² = Λ²₇ ⊕ Λ²₂₁ from the eigenvalues −3, 1 of `β ↦ ⋆(β∧φ)`.
pub fn project_lambda2(beta: &KForm, phi: &Spin7Form) -> Result<(KForm, KForm)> {
    let l = phi.l_operator(beta)?;
    let part7 = (&l - beta).scale(-0.25);
    let part21 = (&l + &beta.scale(3.0)).scale(0.25);
    Ok((part7, part21))
}

/// `(Dα)_{ijkl} = α_{is}φ_{sjkl} + α_{js}φ_{iskl} + α_{ks}φ_{ijsl} + α_{ls}φ_{ijks}`
/// (indices summed with the metric).
pub fn d_operator(alpha: &KForm, phi: &Spin7Form) -> Result<KForm> {
    if alpha.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, got: alpha.degree() });
    }
    let a = Mat8::from_fn(|i, j| alpha.component(&[i, j])) * phi.metric.inverse();
    let a = as_rows(&a);
    let mut out = Tensor::zeros(4);
    for slot in 0..4 {
        out = out.add(&phi.slot_action(slot, &a));
    }
    Ok(out.to_form())
}

/// Λ³ = Λ³₈ ⊕ Λ³₄₈. Returns `(α⌟φ, remainder, α)` with `α_a = −(1/42) γ^{ijk} φ_{ijka}`.
pub fn project_lambda3(gamma: &KForm, phi: &Spin7Form) -> Result<(KForm, KForm, Covector)> {
    if gamma.degree() != 3 {
        return Err(Error::DegreeMismatch { expected: 3, got: gamma.degree() });
    }
    let up = Tensor::from_form(&crate::exterior::raise_form(gamma, &phi.metric));
    let mut a = [0.0; DIM];
    for (slot, v) in a.iter_mut().enumerate() {
        let mut s = 0.0;
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    s += up.get(&[i, j, k]) * phi.component(i, j, k, slot);
                }
            }
        }
        *v = -s / 42.0;
    }
    let alpha = Covector::from_array(a);
    let part8 = phi.contract(&alpha);
    let part48 = gamma - &part8;
    Ok((part8, part48, alpha))
}

/// `Ω_φ(σ)_{ijkl} = σ_{ijpq}φ_{pqkl} + σ_{ikpq}φ_{pqlj} + σ_{ilpq}φ_{pqjk}
/// + σ_{jkpq}φ_{pqil} + σ_{jlpq}φ_{pqki} + σ_{klpq}φ_{pqij}`.
pub fn omega_operator(sigma: &KForm, phi: &Spin7Form) -> Result<KForm> {
    if sigma.degree() != 4 {
        return Err(Error::DegreeMismatch { expected: 4, got: sigma.degree() });
    }
    Ok(omega_dense(&Tensor::from_form(sigma), phi).to_form())
}

fn omega_dense(sigma: &Tensor, phi: &Spin7Form) -> Tensor {
    let s = pair_matrix(sigma);
    let p = pair_matrix(&phi.dense);
    let m = if phi.metric.is_identity() { &s * &p } else { &s * inverse_pair(&phi.metric) * &p };
    let at = |a: usize, b: usize, c: usize, d: usize| m[(a * DIM + b, c * DIM + d)];
    Tensor::from_fn(4, |x| {
        let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
        at(i, j, k, l) + at(i, k, l, j) + at(i, l, j, k) + at(j, k, i, l) + at(j, l, k, i) + at(k, l, i, j)
    })
}

pub const OMEGA_EIGENVALUES: [f64; 4] = [-24.0, -12.0, 4.0, 0.0];

/// Lagrange coefficients `c_0..c_3` with `P_λ(Ω) = Σ c_n Ωⁿ`.
fn lagrange_coefficients(target: usize) -> [f64; 4] {
    let lam = OMEGA_EIGENVALUES[target];
    // expand Π_{μ≠λ} (x − μ)/(λ − μ)
    let mut poly = [1.0, 0.0, 0.0, 0.0];
    let mut deg = 0;
    for (n, mu) in OMEGA_EIGENVALUES.iter().enumerate() {
        if n == target {
            continue;
        }
        let denom = lam - mu;
        let mut next = [0.0; 4];
        for d in 0..=deg {
            next[d + 1] += poly[d] / denom;
            next[d] -= mu * poly[d] / denom;
        }
        poly = next;
        deg += 1;
    }
    poly
}

/// Λ⁴ = Λ⁴₁ ⊕ Λ⁴₇ ⊕ Λ⁴₂₇ ⊕ Λ⁴₃₅, in that order.
pub fn project_lambda4(sigma: &KForm, phi: &Spin7Form) -> Result<[KForm; 4]> {
    if sigma.degree() != 4 {
        return Err(Error::DegreeMismatch { expected: 4, got: sigma.degree() });
    }
    let s0 = Tensor::from_form(sigma);
    let s1 = omega_dense(&s0, phi);
    let s2 = omega_dense(&s1, phi);
    let s3 = omega_dense(&s2, phi);
    let powers = [s0, s1, s2, s3];
    let part = |n: usize| -> KForm {
        let c = lagrange_coefficients(n);
        let mut t = Tensor::zeros(4);
        for (cn, p) in c.iter().zip(&powers) {
            t = t.add(&p.scale(*cn));
        }
        t.to_form()
    };
    Ok([part(0), part(1), part(2), part(3)])
}

/// Matrix of a linear map on canonical basis forms of degree `k_in → k_out`.
pub fn operator_matrix(k_in: usize, k_out: usize, f: impl Fn(&KForm) -> KForm) -> DMatrix<f64> {
    let ins = MultiIndex::all_of_degree(k_in);
    let outs = MultiIndex::all_of_degree(k_out);
    let mut m = DMatrix::zeros(outs.len(), ins.len());
    for (c, i) in ins.iter().enumerate() {
        let img = f(&KForm::basis(*i));
        for (r, o) in outs.iter().enumerate() {
            m[(r, c)] = img.coeff(*o);
        }
    }
    m
}

/// Numerical rank: singular values above `tol · max(1, σ_max)`.
pub fn numerical_rank(m: &DMatrix<f64>, tol: f64) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().fold(1.0f64, |a, b| a.max(*b));
    sv.iter().filter(|s| **s > tol * top).count()
}

/// Ranks of the four Λ⁴ projectors, built as matrix polynomials in `Ω`.
pub fn lambda4_projector_ranks(phi: &Spin7Form) -> [usize; 4] {
    let om = operator_matrix(4, 4, |s| omega_operator(s, phi).expect("degree 4"));
    let id = DMatrix::<f64>::identity(70, 70);
    let om2 = &om * &om;
    let om3 = &om2 * &om;
    let mut ranks = [0; 4];
    for (n, r) in ranks.iter_mut().enumerate() {
        let c = lagrange_coefficients(n);
        let p = &id * c[0] + &om * c[1] + &om2 * c[2] + &om3 * c[3];
        *r = numerical_rank(&p, 1e-6);
    }
    ranks
}

pub fn validate_phi(phi: &KForm) -> VerificationReport {
    validate_phi_with_tol(phi, DEFAULT_TOL)
}

/// Metric positivity, self-duality and the four contraction identities of a
/// Spin(7) form, all contracted with the induced metric.
pub fn validate_phi_with_tol(phi: &KForm, tol: f64) -> VerificationReport {
    match Spin7Form::new(phi.clone()) {
        Ok(s) => {
            let mut rep = VerificationReport::new("spin7-form");
            rep.identity(
                "phi.metric_positive_definite",
                "g_ij = (1/42) phi_ik..phi_j.. (g-contracted) is positive-definite",
                0.0,
                tol,
            );
            rep.extend(validate_with(&s, tol));
            rep
        }
        Err(e) => {
            let mut rep = VerificationReport::new("spin7-form");
            rep.identity_with_notes(
                "phi.metric_positive_definite",
                "g_ij = (1/42) phi_ik..phi_j.. (g-contracted) is positive-definite",
                f64::INFINITY,
                tol,
                e.to_string(),
            );
            rep
        }
    }
}

fn validate_with(s: &Spin7Form, tol: f64) -> VerificationReport {
    let mut rep = VerificationReport::new("spin7-form");
    let g = s.metric.matrix();
    let ginv = s.metric.inverse();
    let dg = |i: usize, j: usize| g[(i, j)];

    rep.identity("phi.self_dual", "*phi = phi", hodge_star(&s.phi, &s.metric).distance(&s.phi), tol);

    let p = pair_matrix(&s.dense);
    let gp = inverse_pair(&s.metric);
    // line 3: φ_{ijpq} φ_{kl}{}^{pq}
    let line3 = &p * &gp * p.transpose();
    let r1 = ((&line3 * &gp).trace() - 336.0).abs();
    let mut r3: f64 = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                for l in 0..DIM {
                    let rhs = 6.0 * dg(i, k) * dg(j, l) - 6.0 * dg(i, l) * dg(j, k) - 4.0 * s.component(i, j, k, l);
                    r3 = r3.max((line3[(i * DIM + j, k * DIM + l)] - rhs).abs());
                }
            }
        }
    }
    rep.identity("phi.contraction_full", "phi_ijpq phi_ijpq = 336", r1, tol);

    // line 2: φ_{ijpq} φ_a{}^{jpq}
    let m3 = pair3_matrix(&s.dense);
    let ginv3 = {
        let n = DIM * DIM * DIM;
        DMatrix::from_fn(n, n, |r, c| ginv[(r / 64, c / 64)] * ginv[((r / 8) % 8, (c / 8) % 8)] * ginv[(r % 8, c % 8)])
    };
    let line2 = &m3 * &ginv3 * m3.transpose();
    let mut r2: f64 = 0.0;
    for i in 0..DIM {
        for a in 0..DIM {
            r2 = r2.max((line2[(i, a)] - 42.0 * dg(i, a)).abs());
        }
    }
    rep.identity("phi.contraction_one_free", "phi_ijpq phi_ajpq = 42 delta_ia", r2, tol);
    rep.identity("phi.contraction_two_free", "phi_ijpq phi_klpq = 6 dd - 6 dd - 4 phi_ijkl", r3, tol);

    // line 4: φ_{ijks} φ_{abc}{}^{s}
    let m4 = DMatrix::from_row_slice(DIM * DIM * DIM, DIM, s.dense.data());
    let line4 = &m4 * ginv * m4.transpose();
    let ph = |a: usize, b: usize, c: usize, d: usize| s.component(a, b, c, d);
    let mut r4: f64 = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                for a in 0..DIM {
                    for b in 0..DIM {
                        for c in 0..DIM {
                            let rhs = dg(i, a) * dg(j, b) * dg(k, c)
                                + dg(i, b) * dg(j, c) * dg(k, a)
                                + dg(i, c) * dg(j, a) * dg(k, b)
                                - dg(i, a) * dg(j, c) * dg(k, b)
                                - dg(i, b) * dg(j, a) * dg(k, c)
                                - dg(i, c) * dg(j, b) * dg(k, a)
                                - dg(i, a) * ph(j, k, b, c)
                                - dg(j, a) * ph(k, i, b, c)
                                - dg(k, a) * ph(i, j, b, c)
                                - dg(i, b) * ph(j, k, c, a)
                                - dg(j, b) * ph(k, i, c, a)
                                - dg(k, b) * ph(i, j, c, a)
                                - dg(i, c) * ph(j, k, a, b)
                                - dg(j, c) * ph(k, i, a, b)
                                - dg(k, c) * ph(i, j, a, b);
                            let lhs = line4[(i * 64 + j * 8 + k, a * 64 + b * 8 + c)];
                            r4 = r4.max((lhs - rhs).abs());
                        }
                    }
                }
            }
        }
    }
    rep.identity("phi.contraction_three_free", "phi_ijks phi_abcs = ddd - ddd - d phi", r4, tol);
    rep
}
