//! Residual checks of the curvature identities and theorems for the torsion
//! connection of a Spin(7)-structure on an invariant frame.
//!
//! All geometries are evaluated in an orthonormal frame ([`Geometry`] makes
//! sure of that), so indices are summed without the metric. Residuals are the
//! max-abs over free indices of left minus right.
//!
//! Unconditional identities are [`EntryKind::Identity`] entries. Theorems are
//! evaluated as implications: their premises are recorded as hypotheses and
//! the conclusions are not-applicable when a premise fails.

use crate::connection::FrameConnection;
use crate::error::Result;
use crate::exterior::{
    contract_into, hodge_star, interior_product, star_interior_identities_check, wedge, Covector, KForm, Mat8, DIM,
};
use crate::geometry::Geometry;
use crate::report::{EntryKind, VerificationReport};
use crate::spin7::{project_lambda2, project_lambda3, validate_phi_with_tol};
use crate::tensor::Tensor;

/// Gradient of the soliton potential, as frame components of `df`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolitonData {
    pub f_gradient: Covector,
}

impl SolitonData {
    pub fn constant() -> Self {
        SolitonData { f_gradient: Covector::zero() }
    }

    /// `V = (7/6)θ − df`.
    pub fn v(&self, theta: &Covector) -> Covector {
        (7.0 / 6.0) * *theta - self.f_gradient
    }
}

fn max4(f: impl Fn(usize, usize, usize, usize) -> f64) -> f64 {
    let mut m: f64 = 0.0;
    for a in 0..DIM {
        for b in 0..DIM {
            for c in 0..DIM {
                for d in 0..DIM {
                    m = m.max(f(a, b, c, d).abs());
                }
            }
        }
    }
    m
}

fn max3(f: impl Fn(usize, usize, usize) -> f64) -> f64 {
    let mut m: f64 = 0.0;
    for a in 0..DIM {
        for b in 0..DIM {
            for c in 0..DIM {
                m = m.max(f(a, b, c).abs());
            }
        }
    }
    m
}

fn mat2(f: &KForm) -> Mat8 {
    Mat8::from_fn(|i, j| f.component(&[i, j]))
}

fn form2(m: &Mat8) -> KForm {
    Tensor::from_fn(2, |x| m[(x[0], x[1])]).to_form()
}

fn sq(t: &Tensor) -> f64 {
    t.data().iter().map(|v| v * v).sum()
}

fn covector_vec(c: &Covector) -> [f64; DIM] {
    std::array::from_fn(|i| c.get(i))
}

/// `M_{ij} = X_{iabc} φ_{jabc}`.
fn contract3(x: &Tensor, phi: &Tensor) -> Mat8 {
    Mat8::from_fn(|i, j| {
        let mut s = 0.0;
        for a in 0..DIM {
            for b in 0..DIM {
                for c in 0..DIM {
                    s += x.get(&[i, a, b, c]) * phi.get(&[j, a, b, c]);
                }
            }
        }
        s
    })
}

/// `(Bφ)_{ij} = B_{ab} φ_{abij}`.
fn mat_phi(b: &Mat8, phi: &Tensor) -> Mat8 {
    Mat8::from_fn(|i, j| {
        let mut s = 0.0;
        for a in 0..DIM {
            for c in 0..DIM {
                s += b[(a, c)] * phi.get(&[a, c, i, j]);
            }
        }
        s
    })
}

/// `(v⌟X)_{ij} = v_s X_{sij}` for a rank-3 table.
fn lee_contract(v: &[f64; DIM], x: &Tensor) -> Mat8 {
    Mat8::from_fn(|i, j| (0..DIM).map(|s| v[s] * x.get(&[s, i, j])).sum())
}

fn full4(x: &Tensor, phi: &Tensor) -> f64 {
    x.data().iter().zip(phi.data()).map(|(a, b)| a * b).sum()
}

/// `(∇_i v)_j = −Γ^m_{ij} v_m`.
fn nabla_covector(conn: &FrameConnection, v: &[f64; DIM]) -> Mat8 {
    let t = Tensor::from_fn(1, |x| v[x[0]]);
    crate::geometry::mat_from_tensor(&conn.covariant_derivative(&t))
}

/// Records `residual` as an identity when every premise holds, otherwise as
/// not-applicable carrying the worst failing premise.
fn conditional(
    rep: &mut VerificationReport,
    id: &str,
    anchor: &str,
    premises: &[(&str, f64)],
    residual: f64,
    tol: f64,
) -> Option<bool> {
    match failed_premise(premises, tol) {
        None => Some(rep.identity(id, anchor, residual, tol)),
        Some((r, notes)) => {
            rep.not_applicable(id, anchor, r, tol, notes);
            None
        }
    }
}

fn conditional_agreement(
    rep: &mut VerificationReport,
    id: &str,
    anchor: &str,
    premises: &[(&str, f64)],
    verdicts: &[bool],
    tol: f64,
) {
    match failed_premise(premises, tol) {
        None => {
            rep.agreement(id, anchor, verdicts, tol);
        }
        Some((r, notes)) => {
            rep.not_applicable(id, anchor, r, tol, notes);
            if let Some(e) = rep.entries.last_mut() {
                e.kind = EntryKind::Agreement;
            }
        }
    }
}

fn failed_premise(premises: &[(&str, f64)], tol: f64) -> Option<(f64, String)> {
    let failed: Vec<&(&str, f64)> = premises.iter().filter(|(_, r)| r.is_nan() || *r > tol).collect();
    if failed.is_empty() {
        return None;
    }
    let worst = failed.iter().map(|(_, r)| *r).fold(0.0, |a: f64, b| if b.is_nan() { f64::MAX } else { a.max(b) });
    let names: Vec<&str> = failed.iter().map(|(n, _)| *n).collect();
    Some((worst, format!("premise failed: {}", names.join(", "))))
}

/// Dense tables shared by several checks.
struct Q<'a> {
    g: &'a Geometry,
    phi: &'a Tensor,
    dt: Tensor,
    sigma: Tensor,
    delta_phi: Tensor,
    part48: KForm,
    theta: [f64; DIM],
    delta_t: Mat8,
    dtheta: Mat8,
    /// `d^∇θ_{ij} = ∇_iθ_j − ∇_jθ_i`
    d_nabla_theta: Mat8,
    theta_t: Mat8,
    theta_delta_phi: Mat8,
    /// `|θ|²`
    th2: f64,
    t2: f64,
}

impl<'a> Q<'a> {
    fn new(g: &'a Geometry) -> Result<Self> {
        let theta = covector_vec(&g.theta);
        let delta_phi = Tensor::from_form(&g.delta_phi);
        let (_, part48, _) = project_lambda3(&g.delta_phi, &g.phi)?;
        Ok(Q {
            g,
            phi: g.phi.dense(),
            dt: Tensor::from_form(&g.dt),
            sigma: Tensor::from_form(&g.sigma),
            theta_t: lee_contract(&theta, &g.t),
            theta_delta_phi: lee_contract(&theta, &delta_phi),
            delta_phi,
            part48,
            theta,
            delta_t: mat2(&g.delta_t),
            dtheta: mat2(&g.dtheta),
            d_nabla_theta: g.nabla_theta - g.nabla_theta.transpose(),
            th2: theta.iter().map(|v| v * v).sum(),
            t2: sq(&g.t),
        })
    }

    fn r(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.g.curvature.get(a, b, c, d)
    }

    fn n(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.g.nabla_t.get(&[a, b, c, d])
    }

    fn cyclic_r(&self, x: usize, y: usize, z: usize, v: usize) -> f64 {
        self.r(x, y, z, v) + self.r(y, z, x, v) + self.r(z, x, y, v)
    }

    fn ric_norm(&self) -> f64 {
        self.g.ric.amax()
    }

    fn part7(&self, beta: &KForm) -> Result<f64> {
        Ok(project_lambda2(beta, &self.g.phi)?.0.max_abs())
    }

    fn part21(&self, beta: &KForm) -> Result<f64> {
        Ok(project_lambda2(beta, &self.g.phi)?.1.max_abs())
    }
}

/// Structural contracts of the connections built for the geometry.
pub fn check_connections(g: &Geometry, tol: f64) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new(&g.id);
    rep.identity(
        "connection.levi_civita_torsion_free",
        "Levi-Civita connection from the Koszul formula",
        g.lc.torsion_tensor(&g.alg).max_abs(),
        tol,
    );
    rep.identity("connection.levi_civita_metric", "nabla^g g = 0", g.lc.metric_defect(), tol);
    rep.identity("connection.torsion_metric", "nabla g = 0", g.nabla.metric_defect(), tol);
    rep.identity(
        "connection.torsion_recovered",
        "nabla^g = nabla - T/2",
        g.nabla.torsion_tensor(&g.alg).distance(&g.t),
        tol,
    );
    rep.identity(
        "connection.curvature_antisymmetry",
        "R(X,Y,Z,V) = -R(Y,X,Z,V) = -R(X,Y,V,Z)",
        g.curvature.antisymmetry_defect().max(g.lc_curvature.antisymmetry_defect()),
        tol,
    );
    rep.identity("connection.preserves_phi", "nabla phi = 0", g.nabla_phi().max_abs(), tol);
    let routes = g
        .delta_phi_via_connection()?
        .distance(&g.delta_phi)
        .max(g.delta_t_via_connection()?.distance(&g.delta_t))
        .max((g.delta_theta_via_star()? - g.delta_theta).abs());
    rep.identity("connection.codifferential_routes", "delta = -*d* = -tr nabla^g", routes, tol);
    rep.identity(
        "connection.sigma_routes",
        "sigma^T = (1/2) sum (e_j -| T) ^ (e_j -| T)",
        g.sigma_dense.distance(&Tensor::from_form(&g.sigma)),
        tol,
    );
    let mut stars = star_interior_identities_check(&g.theta, g.phi.phi(), &g.metric);
    stars.extend(star_interior_identities_check(&g.theta, &g.torsion, &g.metric));
    let worst = stars.entries.iter().map(|e| e.residual).fold(0.0, f64::max);
    rep.identity("connection.star_interior", "*(a -| b) = (-1)^(k+1) a ^ *b and companions", worst, tol);
    Ok(rep)
}

/// Lee form, torsion and the codifferential of the fundamental form.
pub fn check_torsion(g: &Geometry, tol: f64) -> Result<VerificationReport> {
    let q = Q::new(g)?;
    let phi = q.phi;
    let mut rep = VerificationReport::new(&g.id);
    rep.identity(
        "lee.expressions_agree",
        "theta = -(1/7)*(*dphi ^ phi) = (1/7)*(delta phi ^ phi) = (1/7)(delta phi) -| phi",
        g.lee.max_spread(),
        tol,
    );
    let tit = (0..DIM)
        .map(|i| {
            let mut s = 0.0;
            for j in 0..DIM {
                for k in 0..DIM {
                    for l in 0..DIM {
                        s += g.t.get(&[j, k, l]) * phi.get(&[j, k, l, i]);
                    }
                }
            }
            (q.theta[i] + s / 7.0).abs()
        })
        .fold(0.0, f64::max);
    rep.identity("lee.from_torsion", "theta_i = -(1/7) T_jkl phi_jkli", tit, tol);
    let lee_derivative = (g.nabla_theta - contract3(&g.nabla_t, phi) / 7.0).amax();
    rep.identity("lee.derivative", "nabla_i theta_j = (1/7) nabla_i T_abc phi_jabc", lee_derivative, tol);

    rep.identity(
        "torsion.two_expressions",
        "T = -*dphi + (7/6)*(theta ^ phi) = delta phi + (7/6) theta -| phi",
        g.torsion.distance(&g.torsion_alt),
        tol,
    );
    let half_t_phi = |k: usize, l: usize, m: usize| {
        let mut s = 0.0;
        for j in 0..DIM {
            for a in 0..DIM {
                s += g.t.get(&[j, a, k]) * phi.get(&[j, a, l, m]) - g.t.get(&[j, a, l]) * phi.get(&[j, a, k, m])
                    + g.t.get(&[j, a, m]) * phi.get(&[j, a, k, l]);
            }
        }
        0.5 * s
    };
    rep.identity(
        "torsion.codifferential_of_phi",
        "delta phi_klm = (1/2)(T_jsk phi_jslm - T_jsl phi_jskm + T_jsm phi_jskl)",
        max3(|k, l, m| q.delta_phi.get(&[k, l, m]) - half_t_phi(k, l, m)),
        tol,
    );
    rep.identity(
        "torsion.self_consistency",
        "T_klm = (1/2)(T_jsk phi_jslm - ...) + (7/6) theta_s phi_sklm",
        max3(|k, l, m| {
            let th: f64 = (0..DIM).map(|s| q.theta[s] * phi.get(&[s, k, l, m])).sum();
            g.t.get(&[k, l, m]) - half_t_phi(k, l, m) - 7.0 / 6.0 * th
        }),
        tol,
    );
    let theta_phi = g.phi.contract(&g.theta);
    rep.identity(
        "torsion.lambda3_48_part",
        "(delta phi)_48 = delta phi + theta -| phi",
        q.part48.distance(&(&g.delta_phi + &theta_phi)),
        tol,
    );
    let split = g.torsion.distance(&(&q.part48 + &theta_phi.scale(1.0 / 6.0)));
    rep.identity("torsion.split", "T = (delta phi)_48 + (1/6) theta -| phi", split, tol);
    let p48 = sq(&Tensor::from_form(&q.part48));
    rep.identity(
        "torsion.norm_split",
        "|T|^2 = |(delta phi)_48|^2 + (7/6)|theta|^2",
        q.t2 - p48 - 7.0 / 6.0 * q.th2,
        tol,
    );
    rep.identity(
        "torsion.lee_contraction",
        "theta -| delta phi = theta -| T",
        (q.theta_delta_phi - q.theta_t).amax(),
        tol,
    );
    let nth1 = (g.nabla_g_theta - g.nabla_theta - 0.5 * q.theta_t).amax();
    let nth2 = (q.dtheta - q.d_nabla_theta - q.theta_t).amax();
    rep.identity(
        "torsion.lee_derivatives",
        "nabla^g theta = nabla theta + (1/2) theta -| T, dtheta = d^nabla theta + theta -| T",
        nth1.max(nth2),
        tol,
    );
    Ok(rep)
}

/// First Bianchi identities of a metric connection with skew torsion, and
/// the expansion of `dT`.
pub fn check_bianchi_family(g: &Geometry, tol: f64) -> Result<VerificationReport> {
    let q = Q::new(g)?;
    let (dt, s) = (&q.dt, &q.sigma);
    let mut rep = VerificationReport::new(&g.id);
    rep.identity(
        "bianchi.first",
        "R(X,Y,Z,V) + cyclic = dT - sigma^T + (nabla_V T)(X,Y,Z)",
        max4(|x, y, z, v| q.cyclic_r(x, y, z, v) - dt.get(&[x, y, z, v]) + s.get(&[x, y, z, v]) - q.n(v, x, y, z)),
        tol,
    );
    rep.identity(
        "bianchi.general",
        "R(X,Y,Z,V) + cyclic - R(V,X,Y,Z) - R(V,Y,Z,X) - R(V,Z,X,Y) = (3/2)dT - sigma^T",
        max4(|x, y, z, v| {
            q.cyclic_r(x, y, z, v) - q.r(v, x, y, z) - q.r(v, y, z, x) - q.r(v, z, x, y) - 1.5 * dt.get(&[x, y, z, v])
                + s.get(&[x, y, z, v])
        }),
        tol,
    );
    rep.identity(
        "bianchi.torsion_connection",
        "R(V,X,Y,Z) + R(V,Y,Z,X) + R(V,Z,X,Y) = -(1/2)dT + (nabla_V T)(X,Y,Z)",
        max4(|x, y, z, v| {
            q.r(v, x, y, z) + q.r(v, y, z, x) + q.r(v, z, x, y) + 0.5 * dt.get(&[x, y, z, v]) - q.n(v, x, y, z)
        }),
        tol,
    );
    rep.identity(
        "bianchi.dt_expansion",
        "dT = (nabla_X T)(Y,Z,V) + cyclic + 2 sigma^T - (nabla_V T)(X,Y,Z)",
        max4(|x, y, z, v| {
            dt.get(&[x, y, z, v])
                - (q.n(x, y, z, v) + q.n(y, z, x, v) + q.n(z, x, y, v) + 2.0 * s.get(&[x, y, z, v]) - q.n(v, x, y, z))
        }),
        tol,
    );
    rep.identity(
        "bianchi.levi_civita_derivative",
        "nabla^g T = nabla T + (1/2) sigma^T",
        max4(|x, y, z, v| g.nabla_g_t.get(&[x, y, z, v]) - q.n(x, y, z, v) - 0.5 * s.get(&[x, y, z, v])),
        tol,
    );
    Ok(rep)
}

/// The Riemannian first Bianchi identity for the torsion connection and its
/// consequences.
pub fn check_riemannian_bianchi(g: &Geometry, tol: f64) -> Result<VerificationReport> {
    let q = Q::new(g)?;
    let mut rep = VerificationReport::new(&g.id);
    let rb = max4(|x, y, z, v| q.cyclic_r(x, y, z, v));
    let rb_ok = rep.hypothesis("riemannian_bianchi.holds", "R(X,Y,Z,V) + R(Y,Z,X,V) + R(Z,X,Y,V) = 0", rb, tol);
    let fbt1 = max4(|x, y, z, v| q.dt.get(&[x, y, z, v]) + 2.0 * q.n(x, y, z, v));
    let fbt2 = max4(|x, y, z, v| q.dt.get(&[x, y, z, v]) - 2.0 / 3.0 * q.sigma.get(&[x, y, z, v]));
    let premise = [("riemannian_bianchi.holds", rb)];
    conditional(&mut rep, "riemannian_bianchi.dt_nabla_t", "dT = -2 nabla T", &premise, fbt1, tol);
    conditional(&mut rep, "riemannian_bianchi.dt_sigma", "dT = (2/3) sigma^T", &premise, fbt2, tol);
    rep.agreement(
        "riemannian_bianchi.equivalence",
        "Riemannian first Bianchi identity <=> dT = -2 nabla T = (2/3) sigma^T",
        &[rb_ok, fbt1 <= tol && fbt2 <= tol],
        tol,
    );
    conditional(
        &mut rep,
        "riemannian_bianchi.ricci_flat",
        "Riemannian Bianchi => Ric = 0",
        &premise,
        q.ric_norm(),
        tol,
    );
    Ok(rep)
}

/// Curvature in `S²Λ²`: three equivalent conditions.
pub fn check_s2lambda2(g: &Geometry, tol: f64) -> Result<VerificationReport> {
    let q = Q::new(g)?;
    let phi = q.phi;
    let mut rep = VerificationReport::new(&g.id);
    let h1 = max4(|x, y, z, v| q.n(x, y, z, v) + q.n(y, x, z, v));
    let h2 = max4(|x, y, z, v| q.r(x, y, z, v) - q.r(z, v, x, y));
    let h3 = max4(|x, y, z, v| q.dt.get(&[x, y, z, v]) - 4.0 * g.nabla_g_t.get(&[x, y, z, v]));
    let a = rep.hypothesis("s2l2.nabla_t_four_form", "(nabla_X T)(Y,Z,V) = -(nabla_Y T)(X,Z,V)", h1, tol);
    let b = rep.hypothesis("s2l2.pair_symmetry", "R(X,Y,Z,V) = R(Z,V,X,Y)", h2, tol);
    let c = rep.hypothesis("s2l2.dt_four_nabla_g_t", "dT = 4 nabla^g T", h3, tol);
    rep.agreement("s2l2.equivalence", "nabla T a 4-form <=> R in S^2 Lambda^2 <=> dT = 4 nabla^g T", &[a, b, c], tol);

    let sphi = contract3(&q.sigma, phi);
    let su1 = (g.ric + 3.5 * g.nabla_theta + sphi / 6.0).amax();
    conditional(
        &mut rep,
        "s2l2.ricci",
        "nabla T a 4-form => Ric + (7/2) nabla theta + (1/6) sigma_iabc phi_jabc = 0",
        &[("s2l2.nabla_t_four_form", h1)],
        su1,
        tol,
    );
    let tt_phi = Mat8::from_fn(|i, j| {
        let mut s = 0.0;
        for a in 0..DIM {
            for b in 0..DIM {
                for c in 0..DIM {
                    for t in 0..DIM {
                        s += g.t.get(&[a, b, t]) * g.t.get(&[c, i, t]) * phi.get(&[a, b, c, j]);
                    }
                }
            }
        }
        s
    });
    let th = &g.nabla_theta;
    let li = (th - contract3(&g.nabla_t, phi) / 7.0)
        .amax()
        .max((th + contract3(&q.dt, phi) / 12.0).amax())
        .max((th + sphi / 21.0).amax())
        .max((th + tt_phi / 7.0).amax());
    conditional(
        &mut rep,
        "s2l2.ricci_flat_lee",
        "nabla T a 4-form, Ric = 0 => nabla_i theta_j = -(1/12) dT_iabc phi_jabc = -(1/21) sigma_iabc phi_jabc",
        &[("s2l2.nabla_t_four_form", h1), ("ricci_flat", q.ric_norm())],
        li,
        tol,
    );
    Ok(rep)
}

/// Ricci tensor and scalar curvatures of the torsion connection.
pub fn check_spin7_ricci(g: &Geometry, tol: f64) -> Result<VerificationReport> {
    let q = Q::new(g)?;
    let phi = q.phi;
    let mut rep = VerificationReport::new(&g.id);
    let tt = Mat8::from_fn(|i, j| {
        let mut s = 0.0;
        for a in 0..DIM {
            for b in 0..DIM {
                s += g.t.get(&[i, a, b]) * g.t.get(&[j, a, b]);
            }
        }
        s
    });
    rep.identity(
        "ricci.antisymmetric_part",
        "Ric(X,Y) - Ric(Y,X) = -delta T(X,Y)",
        (g.ric - g.ric.transpose() + q.delta_t).amax(),
        tol,
    );
    rep.identity(
        "ricci.riemannian",
        "Ric^g = Ric + (1/2) delta T + (1/4) T_iab T_jab",
        (g.ric_g - g.ric - 0.5 * q.delta_t - 0.25 * tt).amax(),
        tol,
    );
    rep.identity("ricci.riemannian_scalar", "Scal^g = Scal + (1/4)|T|^2", g.scal_g - g.scal - 0.25 * q.t2, tol);
    rep.identity(
        "ricci.curvature_in_spin7",
        "R_ijab phi_abkl = 2 R_ijkl",
        max4(|i, j, k, l| {
            let mut s = 0.0;
            for a in 0..DIM {
                for b in 0..DIM {
                    s += q.r(i, j, a, b) * phi.get(&[a, b, k, l]);
                }
            }
            s - 2.0 * q.r(i, j, k, l)
        }),
        tol,
    );
    let r_phi = contract3(&g.curvature.r, phi);
    let dt_phi = contract3(&q.dt, phi);
    let n_phi = contract3(&g.nabla_t, phi);
    rep.identity(
        "ricci.from_curvature",
        "2 Ric_ij = -R_iabc phi_jabc = -(1/6) dT_iabc phi_jabc - (1/3) nabla_i T_abc phi_jabc",
        (2.0 * g.ric + r_phi).amax().max((2.0 * g.ric + dt_phi / 6.0 + n_phi / 3.0).amax()),
        tol,
    );
    rep.identity(
        "ricci.torsion_formula",
        "Ric_ij = -(1/12) dT_iabc phi_jabc - (7/6) nabla_i theta_j",
        (g.ric + dt_phi / 12.0 + 7.0 / 6.0 * g.nabla_theta).amax(),
        tol,
    );
    let p48 = sq(&Tensor::from_form(&q.part48));
    let dth = g.delta_theta;
    rep.identity(
        "ricci.scalar",
        "Scal = (7/2)delta theta + (49/18)|theta|^2 - (1/3)|T|^2 = (7/2)delta theta + (7/3)|theta|^2 - (1/3)|(delta phi)_48|^2",
        (g.scal - (3.5 * dth + 49.0 / 18.0 * q.th2 - q.t2 / 3.0))
            .abs()
            .max((g.scal - (3.5 * dth + 7.0 / 3.0 * q.th2 - p48 / 3.0)).abs()),
        tol,
    );
    rep.identity(
        "ricci.riemannian_scalar_formula",
        "Scal^g = (7/2)delta theta + (49/18)|theta|^2 - (1/12)|T|^2 = (7/2)delta theta + (21/8)|theta|^2 - (1/12)|(delta phi)_48|^2",
        (g.scal_g - (3.5 * dth + 49.0 / 18.0 * q.th2 - q.t2 / 12.0))
            .abs()
            .max((g.scal_g - (3.5 * dth + 21.0 / 8.0 * q.th2 - p48 / 12.0)).abs()),
        tol,
    );
    let sigma_phi = full4(&q.sigma, phi);
    let mut ttphi = 0.0;
    for_each4(|j, a, b, c| {
        let p = phi.get(&[j, a, b, c]);
        if p != 0.0 {
            let s: f64 = (0..DIM).map(|t| g.t.get(&[j, a, t]) * g.t.get(&[b, c, t])).sum();
            ttphi += s * p;
        }
    });
    rep.identity(
        "ricci.sigma_contraction",
        "sigma_jabc phi_jabc = 3 T_jas T_bcs phi_jabc = 2|T|^2 - (49/3)|theta|^2",
        (sigma_phi - 3.0 * ttphi).abs().max((sigma_phi - (2.0 * q.t2 - 49.0 / 3.0 * q.th2)).abs()),
        tol,
    );
    let dtp = full4(&q.dt, phi);
    let np = full4(&g.nabla_t, phi);
    let div_theta = g.nabla_theta.trace();
    let g22 = (dtp - (4.0 * np + 2.0 * sigma_phi))
        .abs()
        .max((dtp - (28.0 * div_theta + 4.0 * q.t2 - 98.0 / 3.0 * q.th2)).abs())
        .max((dtp - (-28.0 * dth + 4.0 * p48 - 28.0 * q.th2)).abs());
    rep.identity(
        "ricci.dt_contraction",
        "dT_jabc phi_jabc = 4 nabla_j T_abc phi_jabc + 2 sigma_jabc phi_jabc = 28 nabla_j theta_j + 4|T|^2 - (98/3)|theta|^2",
        g22,
        tol,
    );
    Ok(rep)
}

fn for_each4(mut f: impl FnMut(usize, usize, usize, usize)) {
    for a in 0..DIM {
        for b in 0..DIM {
            for c in 0..DIM {
                for d in 0..DIM {
                    f(a, b, c, d);
                }
            }
        }
    }
}

/// Second Bianchi identity for the torsion connection. Scalars are constant
/// on invariant geometries, so `dScal` and `d|T|²` drop out.
pub fn check_second_bianchi(g: &Geometry, tol: f64) -> Result<VerificationReport> {
    let q = Q::new(g)?;
    let mut rep = VerificationReport::new(&g.id);
    let ric = Tensor::from_fn(2, |x| g.ric[(x[0], x[1])]);
    let n_ric = g.nabla.covariant_derivative(&ric);
    let dt_t = Tensor::from_fn(2, |x| q.delta_t[(x[0], x[1])]);
    let n_dt = g.nabla.covariant_derivative(&dt_t);
    let mut e1: f64 = 0.0;
    let mut iii: f64 = 0.0;
    for j in 0..DIM {
        let mut s = 0.0;
        let mut d = 0.0;
        let mut h = 0.0;
        for i in 0..DIM {
            s += -2.0 * n_ric.get(&[i, j, i]);
            d += n_dt.get(&[i, i, j]);
            for a in 0..DIM {
                s += q.delta_t[(i, a)] * g.t.get(&[i, a, j]);
                h += 0.5 * q.delta_t[(i, a)] * g.t.get(&[i, a, j]);
                for b in 0..DIM {
                    s += g.t.get(&[i, a, b]) * q.dt.get(&[j, i, a, b]) / 6.0;
                }
            }
        }
        e1 = e1.max(s.abs());
        iii = iii.max((d - h).abs());
    }
    rep.identity(
        "second_bianchi.ricci_divergence",
        "dScal_j - 2 nabla_i Ric_ji + (1/6) d|T|^2_j + delta T_ab T_abj + (1/6) T_abc dT_jabc = 0",
        e1,
        tol,
    );
    rep.identity("second_bianchi.torsion_divergence", "nabla_i delta T_ij = (1/2) delta T_ia T_iaj", iii, tol);
    Ok(rep)
}

/// Consequences of closed torsion.
pub fn check_closed_torsion(g: &Geometry, tol: f64) -> Result<VerificationReport> {
    let q = Q::new(g)?;
    let mut rep = VerificationReport::new(&g.id);
    let closed = [("dT = 0", g.dt.max_abs())];
    conditional(
        &mut rep,
        "closed.ricci",
        "dT = 0 => Ric = -(7/6) nabla theta",
        &closed,
        (g.ric + 7.0 / 6.0 * g.nabla_theta).amax(),
        tol,
    );
    conditional(
        &mut rep,
        "closed.dtheta_in_spin7",
        "dT = 0 => dtheta in Lambda^2_21",
        &closed,
        q.part7(&g.dtheta)?,
        tol,
    );
    let nnewt = (g.scal - 7.0 / 6.0 * g.delta_theta).abs().max((q.delta_t - 7.0 / 6.0 * q.d_nabla_theta).amax());
    conditional(
        &mut rep,
        "closed.scalar_and_divergence",
        "dT = 0 => Scal = (7/6) delta theta, delta T_ij = (7/6)(nabla_i theta_j - nabla_j theta_i)",
        &closed,
        nnewt,
        tol,
    );
    conditional(
        &mut rep,
        "closed.delta_t",
        "dT = 0 => (6/7) delta T = dtheta - theta -| T",
        &closed,
        (6.0 / 7.0 * q.delta_t - (q.dtheta - q.theta_t)).amax(),
        tol,
    );

    // the remaining equivalences need a compact quotient, hence unimodularity
    let compact = [closed[0], ("unimodular", g.alg.unimodularity_defect())];
    let chain = [
        ("closed.chain_ricci_flat", "Ric = 0", q.ric_norm()),
        ("closed.chain_lee_parallel", "nabla theta = 0", g.nabla_theta.amax()),
        ("closed.chain_scalar_flat", "Scal = 0", g.scal.abs()),
        ("closed.chain_lee_coclosed", "delta theta = 0", g.delta_theta.abs()),
    ];
    let mut verdicts = Vec::new();
    for (id, anchor, r) in chain {
        match failed_premise(&compact, tol) {
            None => verdicts.push(rep.hypothesis(id, anchor, r, tol)),
            Some((p, notes)) => {
                rep.not_applicable(id, anchor, p, tol, notes);
                if let Some(e) = rep.entries.last_mut() {
                    e.kind = EntryKind::Hypothesis;
                }
            }
        }
    }
    conditional_agreement(
        &mut rep,
        "closed.chain_equivalence",
        "compact, dT = 0: Ric = 0 <=> nabla theta = 0 <=> Scal = 0 <=> delta theta = 0",
        &compact,
        &verdicts,
        tol,
    );
    let harmonic = [compact[0], compact[1], ("Ric = 0", q.ric_norm())];
    conditional(
        &mut rep,
        "closed.harmonic_torsion",
        "compact, dT = 0, Ric = 0 => delta T = 0",
        &harmonic,
        q.delta_t.amax(),
        tol,
    );
    Ok(rep)
}

/// Codifferential of the torsion and the symmetric-Ricci theorem.
pub fn check_symmetric_ricci(g: &Geometry, tol: f64) -> Result<VerificationReport> {
    let q = Q::new(g)?;
    let phi = q.phi;
    let m = &g.metric;
    let mut rep = VerificationReport::new(&g.id);
    let theta = KForm::from_covector(&g.theta);
    let via_star = hodge_star(&(wedge(&g.dtheta, g.phi.phi())? - wedge(&theta, &g.dphi)?), m).scale(7.0 / 6.0);
    let via_contraction =
        (contract_into(&g.dtheta, g.phi.phi(), m)? - interior_product(&g.theta, &g.delta_phi, m)?).scale(7.0 / 6.0);
    rep.identity(
        "symmetric_ricci.delta_t",
        "delta T = (7/6)*(dtheta ^ phi - theta ^ dphi) = (7/6)(dtheta -| phi - theta -| delta phi)",
        g.delta_t.distance(&via_star).max(g.delta_t.distance(&via_contraction)),
        tol,
    );
    let new2a = 6.0 / 7.0 * q.delta_t - (0.5 * mat_phi(&q.dtheta, phi) - q.theta_delta_phi);
    let new2b = 6.0 / 7.0 * q.delta_t - (0.5 * mat_phi(&(q.d_nabla_theta + q.theta_t), phi) - q.theta_t);
    rep.identity(
        "symmetric_ricci.delta_t_lee",
        "(6/7) delta T = (1/2) dtheta_st phi_stlm - theta_k delta phi_klm",
        new2a.amax().max(new2b.amax()),
        tol,
    );

    let sym = [("delta T = 0", q.delta_t.amax())];
    let dnt = &q.d_nabla_theta;
    let new = (dnt - (-q.theta_delta_phi / 3.0 + mat_phi(&q.theta_delta_phi, phi) / 6.0))
        .amax()
        .max((dnt - (-q.theta_t / 3.0 + mat_phi(&q.theta_t, phi) / 6.0)).amax())
        .max((dnt + mat_phi(dnt, phi) / 6.0).amax());
    conditional(
        &mut rep,
        "symmetric_ricci.lee_derivative",
        "delta T = 0 => d^nabla theta = -(1/3) theta -| T + (1/6)(theta -| T)_ab phi_abij",
        &sym,
        new,
        tol,
    );
    conditional(
        &mut rep,
        "symmetric_ricci.lee_derivative_in_lambda2_7",
        "delta T = 0 => d^nabla theta in Lambda^2_7",
        &sym,
        q.part21(&form2(dnt))?,
        tol,
    );
    let a = (g.nabla_theta - g.nabla_theta.transpose()).amax();
    let b = (mat_phi(&q.theta_t, phi) - 2.0 * q.theta_t)
        .amax()
        .max((mat_phi(&q.theta_delta_phi, phi) - 2.0 * q.theta_delta_phi).amax());
    let c = q.part7(&g.dtheta)?;
    conditional_agreement(
        &mut rep,
        "symmetric_ricci.equivalence",
        "delta T = 0: nabla theta symmetric <=> theta -| T in Lambda^2_21 <=> dtheta in Lambda^2_21",
        &sym,
        &[a <= tol, b <= tol, c <= tol],
        tol,
    );
    let tht = q.theta_t.amax().max(q.theta_delta_phi.amax()).max((g.nabla_theta - g.nabla_g_theta).amax());
    conditional(
        &mut rep,
        "symmetric_ricci.closed_lee",
        "delta T = 0, dtheta = 0 => theta -| T = theta -| delta phi = 0, nabla theta = nabla^g theta",
        &[sym[0], ("dtheta = 0", g.dtheta.max_abs())],
        tht,
        tol,
    );
    let w2 = (&g.dphi - &wedge(&theta, g.phi.phi())?).max_abs();
    conditional(
        &mut rep,
        "symmetric_ricci.locally_conformally_parallel",
        "dphi = theta ^ phi => delta T = 0",
        &[("dphi = theta ^ phi", w2)],
        q.delta_t.amax(),
        tol,
    );
    Ok(rep)
}

/// Parallel-torsion theorems: curvature in `S²Λ²` or the Riemannian Bianchi
/// identity versus `∇^g T = 0`.
pub fn check_parallel_torsion(g: &Geometry, tol: f64) -> Result<VerificationReport> {
    let q = Q::new(g)?;
    let phi = q.phi;
    let mut rep = VerificationReport::new(&g.id);
    let uni = ("unimodular", g.alg.unimodularity_defect());
    let spin7_dtheta = ("dtheta in Lambda^2_21", q.part7(&g.dtheta)?);
    let closed_lee = ("dtheta = 0", g.dtheta.max_abs());
    let pair = max4(|x, y, z, v| q.r(x, y, z, v) - q.r(z, v, x, y));
    let ric = q.ric_norm();
    let s2l2 = pair <= tol && ric <= tol;
    let s2l2_res = pair.max(ric);
    let nabla_g_t = g.nabla_g_t.max_abs();
    let nabla_t = g.nabla_t.max_abs();
    let rb = max4(|x, y, z, v| q.cyclic_r(x, y, z, v));

    let sbtheta = [spin7_dtheta, ("R in S^2 Lambda^2, Ric = 0", s2l2_res)];
    conditional(
        &mut rep,
        "parallel.lee_parallel",
        "dtheta in Lambda^2_21, R in S^2 Lambda^2, Ric = 0 => nabla theta = 0",
        &sbtheta,
        g.nabla_theta.amax(),
        tol,
    );
    let nthh = contract3(&g.nabla_t, phi).amax().max(contract3(&q.sigma, phi).amax()).max(contract3(&q.dt, phi).amax());
    conditional(
        &mut rep,
        "parallel.lambda4_27",
        "same premises => nabla T, sigma^T, dT in Lambda^4_27",
        &sbtheta,
        nthh,
        tol,
    );
    conditional_agreement(
        &mut rep,
        "parallel.s2l2_equivalence",
        "compact, dtheta in Lambda^2_21: R in S^2 Lambda^2 and Ric = 0 <=> nabla^g T = 0",
        &[uni, spin7_dtheta],
        &[s2l2, nabla_g_t <= tol],
        tol,
    );
    conditional(
        &mut rep,
        "parallel.harmonic_torsion",
        "compact, dtheta in Lambda^2_21, nabla^g T = 0 => dT = delta T = 0, nabla theta = 0",
        &[uni, spin7_dtheta, ("nabla^g T = 0", nabla_g_t)],
        g.dt.max_abs().max(q.delta_t.amax()).max(g.nabla_theta.amax()),
        tol,
    );
    conditional_agreement(
        &mut rep,
        "parallel.bianchi_equivalence",
        "compact, dtheta in Lambda^2_21: Riemannian Bianchi <=> nabla^g T = 0 = nabla T",
        &[uni, spin7_dtheta],
        &[rb <= tol, nabla_g_t <= tol && nabla_t <= tol],
        tol,
    );
    conditional(
        &mut rep,
        "parallel.closed_lee_levi_civita",
        "compact, dtheta = 0, R in S^2 Lambda^2, Ric = 0 => nabla theta = nabla^g theta = 0",
        &[uni, closed_lee, ("R in S^2 Lambda^2, Ric = 0", s2l2_res)],
        g.nabla_theta.amax().max(g.nabla_g_theta.amax()),
        tol,
    );
    Ok(rep)
}

/// Balanced structures (`θ = 0`) with vanishing curvature quantities are
/// torsion-free.
pub fn check_balanced(g: &Geometry, tol: f64) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new(&g.id);
    let parallel = g.lc.covariant_derivative(g.phi.dense()).max_abs();
    let balanced = ("theta = 0", g.theta.max_abs());
    let cases = [
        ("balanced.scalar_flat", "theta = 0, Scal = 0 => nabla^g phi = 0", ("Scal = 0", g.scal.abs())),
        ("balanced.riemannian_scalar_flat", "theta = 0, Scal^g = 0 => nabla^g phi = 0", ("Scal^g = 0", g.scal_g.abs())),
        ("balanced.closed_torsion", "theta = 0, dT = 0 => nabla^g phi = 0", ("dT = 0", g.dt.max_abs())),
        ("balanced.ricci_flat", "theta = 0, Ric = 0 => nabla^g phi = 0", ("Ric = 0", g.ric.amax())),
    ];
    for (id, anchor, p) in cases {
        conditional(&mut rep, id, anchor, &[balanced, p], parallel, tol);
    }
    Ok(rep)
}

/// Generalized gradient Ricci soliton equations for a supplied `df`.
pub fn check_soliton(g: &Geometry, s: &SolitonData, tol: f64) -> Result<VerificationReport> {
    let q = Q::new(g)?;
    let mut rep = VerificationReport::new(&g.id);
    let df = covector_vec(&s.f_gradient);
    let v = covector_vec(&s.v(&g.theta));
    let x: [f64; DIM] = std::array::from_fn(|i| 7.0 / 6.0 * q.theta[i]);
    let exact = g.alg.d(&KForm::from_covector(&s.f_gradient))?.max_abs();
    let premises = [("dT = 0", g.dt.max_abs()), ("d(df) = 0", exact)];
    let skip = failed_premise(&premises, tol);

    let hess = nabla_covector(&g.nabla, &df);
    let n_v = nabla_covector(&g.nabla, &v);
    let n_x = nabla_covector(&g.nabla, &x);
    let lg_v = nabla_covector(&g.lc, &v);
    let lg_x = nabla_covector(&g.lc, &x);
    let tt = Mat8::from_fn(|i, j| {
        (0..DIM).map(|a| (0..DIM).map(|b| g.t.get(&[i, a, b]) * g.t.get(&[j, a, b])).sum::<f64>()).sum()
    });

    let hyps = [
        ("soliton.ricci_hessian", "Ric_ij = -nabla_i nabla_j f", (g.ric + hess).amax()),
        ("soliton.torsion_divergence", "delta T_ij = -df_s T_sij", (q.delta_t + lee_contract(&df, &g.t)).amax()),
        ("soliton.v_parallel", "V = (7/6)theta - df is nabla-parallel", n_v.amax()),
    ];
    let mut verdicts = Vec::new();
    for (id, anchor, r) in hyps {
        match &skip {
            None => verdicts.push(rep.hypothesis(id, anchor, r, tol)),
            Some((p, notes)) => {
                rep.not_applicable(id, anchor, *p, tol, notes.clone());
                if let Some(e) = rep.entries.last_mut() {
                    e.kind = EntryKind::Hypothesis;
                }
            }
        }
    }
    let soliton_verdicts = if verdicts.len() == 3 { vec![verdicts[0] && verdicts[1], verdicts[2]] } else { vec![] };
    conditional_agreement(
        &mut rep,
        "soliton.equivalence",
        "dT = 0: gradient soliton equations <=> nabla V = 0",
        &premises,
        &soliton_verdicts,
        tol,
    );

    let with_v = [premises[0], premises[1], ("nabla V = 0", n_v.amax())];
    let vt = lee_contract(&v, &g.t);
    conditional(
        &mut rep,
        "soliton.dtheta",
        "nabla V = 0 => (7/6) dtheta = V -| T",
        &with_v,
        (7.0 / 6.0 * q.dtheta - vt).amax(),
        tol,
    );
    conditional(
        &mut rep,
        "soliton.killing",
        "nabla V = 0 => L_V g = 0",
        &with_v,
        (lg_v + lg_v.transpose()).amax(),
        tol,
    );
    let vf = Covector::from_array(v);
    let lie_phi = &g.alg.d(&g.phi.contract(&vf))? + &interior_product(&vf, &g.dphi, &g.metric)?;
    conditional(&mut rep, "soliton.preserves_phi", "nabla V = 0 => L_V phi = 0", &with_v, lie_phi.max_abs(), tol);

    let steady_ricci = (g.ric + 0.5 * q.delta_t + 0.5 * (n_x + n_x.transpose())).amax();
    conditional(
        &mut rep,
        "soliton.steady_ricci",
        "dT = 0, X = (7/6)theta: Ric = -(1/2) delta T - (1/2)(nabla_i X_j + nabla_j X_i)",
        &premises[..1],
        steady_ricci,
        tol,
    );
    let steady_riemannian = (g.ric_g - 0.25 * tt + 0.5 * (lg_x + lg_x.transpose())).amax();
    conditional(
        &mut rep,
        "soliton.steady_riemannian",
        "dT = 0, X = (7/6)theta: Ric^g = (1/4) T_iab T_jab - (1/2) L_X g",
        &premises[..1],
        steady_riemannian,
        tol,
    );
    Ok(rep)
}

pub const FERNANDEZ_LABELS: [&str; 5] = ["W0", "W1", "W2", "locally conformally balanced", "strong"];

fn fernandez_residuals(g: &Geometry) -> Result<[f64; 5]> {
    let w2 = (&g.dphi - &wedge(&KForm::from_covector(&g.theta), g.phi.phi())?).max_abs();
    Ok([g.dphi.max_abs(), g.theta.max_abs(), w2, g.dtheta.max_abs(), g.dt.max_abs()])
}

/// Every class whose defining residual is within `tol`, in the order of
/// [`FERNANDEZ_LABELS`].
pub fn classify_fernandez(g: &Geometry, tol: f64) -> Result<Vec<&'static str>> {
    let r = fernandez_residuals(g)?;
    Ok(FERNANDEZ_LABELS.iter().zip(r).filter(|(_, r)| *r <= tol).map(|(l, _)| *l).collect())
}

pub fn check_fernandez(g: &Geometry, tol: f64) -> Result<VerificationReport> {
    let r = fernandez_residuals(g)?;
    let mut rep = VerificationReport::new(&g.id);
    let defs = [
        ("class.w0", "W0: dphi = 0"),
        ("class.w1", "W1: theta = 0"),
        ("class.w2", "W2: dphi = theta ^ phi"),
        ("class.locally_conformally_balanced", "dtheta = 0"),
        ("class.strong", "dT = 0"),
    ];
    for ((id, anchor), r) in defs.into_iter().zip(r) {
        rep.hypothesis(id, anchor, r, tol);
    }
    Ok(rep)
}

/// Mirror algebra `c → −c` with the same 4-form.
pub fn check_bi_spin7(g: &Geometry, tol: f64) -> Result<VerificationReport> {
    let m = g.mirrored()?;
    let mut rep = VerificationReport::new(&g.id);
    rep.identity("bi.opposite_torsion", "mirror torsion = -T", (&m.torsion + &g.torsion).max_abs(), tol);
    rep.identity("bi.mirror_preserves_phi", "mirror torsion connection preserves phi", m.nabla_phi().max_abs(), tol);
    rep.identity("bi.opposite_lee", "mirror Lee form = -theta", (m.theta + g.theta).max_abs(), tol);
    rep.hypothesis("bi.closed", "mirror torsion closed", m.dt.max_abs(), tol);
    Ok(rep)
}

/// Every check, in a fixed order.
pub fn full_report(g: &Geometry, soliton: Option<&SolitonData>, tol: f64) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new(&g.id);
    let mut phi = validate_phi_with_tol(g.phi.phi(), tol);
    rep.entries.append(&mut phi.entries);
    let s = soliton.copied().unwrap_or_default();
    let parts = [
        check_connections(g, tol)?,
        check_torsion(g, tol)?,
        check_bianchi_family(g, tol)?,
        check_riemannian_bianchi(g, tol)?,
        check_s2lambda2(g, tol)?,
        check_spin7_ricci(g, tol)?,
        check_second_bianchi(g, tol)?,
        check_closed_torsion(g, tol)?,
        check_symmetric_ricci(g, tol)?,
        check_parallel_torsion(g, tol)?,
        check_balanced(g, tol)?,
        check_soliton(g, &s, tol)?,
        check_fernandez(g, tol)?,
        check_bi_spin7(g, tol)?,
    ];
    for p in parts {
        rep.extend(p);
    }
    Ok(rep)
}
