use nalgebra::{Cholesky, SMatrix, SVector};

use super::index::DIM;
use crate::error::{Error, Result};

pub type Mat8 = SMatrix<f64, DIM, DIM>;

/// Constant frame metric `g_ij = g(e_i, e_j)` with an orientation sign.
///
/// The volume form is `orientation * sqrt(det g) * e_{01234567}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameMetric {
    g: Mat8,
    inv: Mat8,
    sqrt_det: f64,
    orientation: f64,
}

impl FrameMetric {
    pub fn identity() -> Self {
        FrameMetric { g: Mat8::identity(), inv: Mat8::identity(), sqrt_det: 1.0, orientation: 1.0 }
    }

    pub fn new(g: Mat8) -> Result<Self> {
        Self::with_orientation(g, 1.0)
    }

    pub fn with_orientation(g: Mat8, orientation: f64) -> Result<Self> {
        let asym = (g - g.transpose()).abs().max();
        if !asym.is_finite() || asym > 1e-12 * (1.0 + g.abs().max()) {
            return Err(Error::NotSymmetric(asym));
        }
        let g = (g + g.transpose()) * 0.5;
        // leading principal minors > 0 <=> Cholesky succeeds with positive pivots
        let chol = Cholesky::new(g).ok_or(Error::NotPositiveDefinite)?;
        let l = chol.l();
        if (0..DIM).any(|i| l[(i, i)] <= 1e-12) {
            return Err(Error::NotPositiveDefinite);
        }
        let sqrt_det = (0..DIM).map(|i| l[(i, i)]).product();
        let inv = chol.inverse();
        Ok(FrameMetric { g, inv, sqrt_det, orientation: if orientation < 0.0 { -1.0 } else { 1.0 } })
    }

    pub fn from_rows(rows: [[f64; DIM]; DIM]) -> Result<Self> {
        Self::new(Mat8::from_fn(|i, j| rows[i][j]))
    }

    pub fn matrix(&self) -> &Mat8 {
        &self.g
    }

    pub fn inverse(&self) -> &Mat8 {
        &self.inv
    }

    pub fn g(&self, i: usize, j: usize) -> f64 {
        self.g[(i, j)]
    }

    pub fn g_inv(&self, i: usize, j: usize) -> f64 {
        self.inv[(i, j)]
    }

    pub fn sqrt_det(&self) -> f64 {
        self.sqrt_det
    }

    pub fn orientation(&self) -> f64 {
        self.orientation
    }

    pub fn is_identity(&self) -> bool {
        self.g == Mat8::identity()
    }

    /// Lower-triangular `L` with `g = L Lᵀ`. Column `a` of `L` is the covector
    /// dual to the `a`-th vector of an orthonormal frame.
    pub fn cholesky_factor(&self) -> Mat8 {
        Cholesky::new(self.g).expect("validated SPD").l()
    }

    /// Determinant of the `k×k` minor of `g⁻¹` with the given rows and columns.
    pub(crate) fn inverse_minor(&self, rows: &[usize], cols: &[usize]) -> f64 {
        minor(&self.inv, rows, cols)
    }

    pub fn raise(&self, x: &Covector) -> Covector {
        Covector(self.inv * x.0)
    }
}

pub(crate) fn minor(m: &Mat8, rows: &[usize], cols: &[usize]) -> f64 {
    match rows.len() {
        0 => 1.0,
        1 => m[(rows[0], cols[0])],
        2 => m[(rows[0], cols[0])] * m[(rows[1], cols[1])] - m[(rows[0], cols[1])] * m[(rows[1], cols[0])],
        k => {
            let sub = nalgebra::DMatrix::from_fn(k, k, |a, b| m[(rows[a], cols[b])]);
            sub.determinant()
        }
    }
}

/// Frame components of a 1-form (equivalently, via the metric, a vector).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Covector(pub SVector<f64, DIM>);

impl Covector {
    pub fn zero() -> Self {
        Covector(SVector::zeros())
    }

    pub fn basis(i: usize) -> Self {
        let mut v = SVector::zeros();
        v[i] = 1.0;
        Covector(v)
    }

    pub fn from_array(a: [f64; DIM]) -> Self {
        Covector(SVector::from(a))
    }

    pub fn to_array(&self) -> [f64; DIM] {
        self.0.into()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    pub fn max_abs(&self) -> f64 {
        self.0.abs().max()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl std::ops::Add for Covector {
    type Output = Covector;
    fn add(self, rhs: Covector) -> Covector {
        Covector(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Covector {
    type Output = Covector;
    fn sub(self, rhs: Covector) -> Covector {
        Covector(self.0 - rhs.0)
    }
}

impl std::ops::Mul<Covector> for f64 {
    type Output = Covector;
    fn mul(self, rhs: Covector) -> Covector {
        Covector(rhs.0 * self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_metrics() {
        let mut g = Mat8::identity();
        g[(3, 3)] = -1.0;
        assert_eq!(FrameMetric::new(g), Err(Error::NotPositiveDefinite));
        let mut g = Mat8::identity();
        g[(0, 1)] = 0.5;
        assert!(matches!(FrameMetric::new(g), Err(Error::NotSymmetric(_))));
        assert!(FrameMetric::new(Mat8::zeros()).is_err());
    }

    #[test]
    fn determinant_and_inverse() {
        let g = Mat8::from_diagonal_element(4.0);
        let m = FrameMetric::new(g).unwrap();
        assert!((m.sqrt_det() - 256.0).abs() < 1e-9);
        assert!((m.g_inv(2, 2) - 0.25).abs() < 1e-15);
        let l = m.cholesky_factor();
        assert!((l * l.transpose() - g).abs().max() < 1e-12);
    }

    #[test]
    fn minors() {
        let m = FrameMetric::identity();
        assert_eq!(m.inverse_minor(&[0, 1, 2], &[0, 1, 2]), 1.0);
        assert_eq!(m.inverse_minor(&[0, 1, 2], &[0, 1, 3]), 0.0);
        assert_eq!(m.inverse_minor(&[0, 1], &[1, 0]), -1.0);
    }
}
