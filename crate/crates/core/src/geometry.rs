//! A Lie algebra with a left-invariant Spin(7) 4-form, and every derived
//! quantity the identity suite needs, evaluated in an orthonormal frame.

use crate::algebra::{transform_form, LieAlgebra8};
use crate::connection::{
    codifferential, codifferential_via_connection, connection_from_torsion, levi_civita, scalar_curvature, sigma_t,
    sigma_t_dense, CurvatureTensor, FrameConnection,
};
use crate::error::Result;
use crate::exterior::{Covector, FrameMetric, KForm, Mat8};
use crate::spin7::{orthonormal_frame, Spin7Form};
use crate::tensor::Tensor;
use crate::torsion::{lee_expressions, spin7_torsion, spin7_torsion_via_codifferential, LeeExpressions};

#[derive(Debug, Clone)]
pub struct Geometry {
    pub id: String,
    pub alg: LieAlgebra8,
    pub phi: Spin7Form,
    pub metric: FrameMetric,
    /// `Some(M)` when the input frame was not orthonormal for the induced
    /// metric; the new frame is `e'_a = Σ_i M_{ia} e_i`.
    pub frame_change: Option<Mat8>,
    pub dphi: KForm,
    pub delta_phi: KForm,
    pub lee: LeeExpressions,
    pub theta: Covector,
    pub torsion: KForm,
    pub torsion_alt: KForm,
    pub lc: FrameConnection,
    pub nabla: FrameConnection,
    /// `T_{ijk}` as a dense table.
    pub t: Tensor,
    /// `(∇_i T)_{jkl}`
    pub nabla_t: Tensor,
    /// `(∇^g_i T)_{jkl}`
    pub nabla_g_t: Tensor,
    pub sigma: KForm,
    pub sigma_dense: Tensor,
    pub dt: KForm,
    pub delta_t: KForm,
    pub curvature: CurvatureTensor,
    pub lc_curvature: CurvatureTensor,
    pub ric: Mat8,
    pub ric_g: Mat8,
    pub scal: f64,
    pub scal_g: f64,
    /// `Θ_{ij} = (∇_i θ)_j`
    pub nabla_theta: Mat8,
    /// `(∇^g_i θ)_j`
    pub nabla_g_theta: Mat8,
    pub dtheta: KForm,
    /// `δθ = −Σ_i ∇^g_i θ_i`
    pub delta_theta: f64,
}

pub(crate) fn mat_from_tensor(t: &Tensor) -> Mat8 {
    Mat8::from_fn(|i, j| t.get(&[i, j]))
}

impl Geometry {
    /// Moves to a frame orthonormal for the metric `phi` induces, so every
    /// downstream formula can use plain index sums.
    pub fn new(id: impl Into<String>, alg: &LieAlgebra8, phi: &KForm) -> Result<Self> {
        let m = orthonormal_frame(phi)?;
        let (alg, phi, frame_change) = if (m - Mat8::identity()).amax() <= 1e-12 {
            (alg.clone(), phi.clone(), None)
        } else {
            (alg.change_frame(&m)?, transform_form(phi, &m), Some(m))
        };
        let phi = Spin7Form::with_metric(phi, FrameMetric::identity())?;
        Geometry::build(id.into(), alg, phi, frame_change)
    }

    fn build(id: String, alg: LieAlgebra8, phi: Spin7Form, frame_change: Option<Mat8>) -> Result<Self> {
        let metric = phi.metric().clone();
        let dphi = alg.d(phi.phi())?;
        let delta_phi = codifferential(phi.phi(), &alg, &metric)?;
        let lee = lee_expressions(&phi, &alg)?;
        let theta = lee.from_star_dphi;
        let torsion = spin7_torsion(&phi, &alg)?;
        let torsion_alt = spin7_torsion_via_codifferential(&phi, &alg)?;
        let lc = levi_civita(&alg, &metric);
        let nabla = connection_from_torsion(&lc, &torsion)?;
        let t = Tensor::from_form(&torsion);
        let nabla_t = nabla.covariant_derivative(&t);
        let nabla_g_t = lc.covariant_derivative(&t);
        let sigma = sigma_t(&torsion, &metric)?;
        let sigma_dense = sigma_t_dense(&torsion, &metric);
        let dt = alg.d(&torsion)?;
        let delta_t = codifferential(&torsion, &alg, &metric)?;
        let curvature = nabla.curvature(&alg);
        let lc_curvature = lc.curvature(&alg);
        let ric = curvature.ricci(&metric);
        let ric_g = lc_curvature.ricci(&metric);
        let scal = scalar_curvature(&ric, &metric);
        let scal_g = scalar_curvature(&ric_g, &metric);
        let th = Tensor::from_fn(1, |x| theta.get(x[0]));
        let nabla_theta = mat_from_tensor(&nabla.covariant_derivative(&th));
        let nabla_g_theta = mat_from_tensor(&lc.covariant_derivative(&th));
        let dtheta = alg.d(&KForm::from_covector(&theta))?;
        let delta_theta = -nabla_g_theta.trace();
        Ok(Geometry {
            id,
            alg,
            phi,
            metric,
            frame_change,
            dphi,
            delta_phi,
            lee,
            theta,
            torsion,
            torsion_alt,
            lc,
            nabla,
            t,
            nabla_t,
            nabla_g_t,
            sigma,
            sigma_dense,
            dt,
            delta_t,
            curvature,
            lc_curvature,
            ric,
            ric_g,
            scal,
            scal_g,
            nabla_theta,
            nabla_g_theta,
            dtheta,
            delta_theta,
        })
    }

    /// The same structure on the algebra with all brackets negated.
    pub fn mirrored(&self) -> Result<Geometry> {
        let mut c = *self.alg.constants();
        for v in c.iter_mut().flatten().flatten() {
            *v = -*v;
        }
        let alg = LieAlgebra8::new(format!("{}-mirror", self.alg.name()), c)?;
        Geometry::build(format!("{}-mirror", self.id), alg, self.phi.clone(), self.frame_change)
    }

    /// `δθ` through `−⋆d⋆θ`, for cross-checking [`Geometry::delta_theta`].
    pub fn delta_theta_via_star(&self) -> Result<f64> {
        let d = codifferential(&KForm::from_covector(&self.theta), &self.alg, &self.metric)?;
        Ok(d.coeff(crate::exterior::MultiIndex::EMPTY))
    }

    pub fn delta_phi_via_connection(&self) -> Result<KForm> {
        codifferential_via_connection(self.phi.phi(), &self.lc)
    }

    pub fn delta_t_via_connection(&self) -> Result<KForm> {
        codifferential_via_connection(&self.torsion, &self.lc)
    }

    pub fn phi_component(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.phi.component(i, j, k, l)
    }

    /// `∇φ` for the torsion connection.
    pub fn nabla_phi(&self) -> Tensor {
        self.nabla.covariant_derivative(self.phi.dense())
    }
}
