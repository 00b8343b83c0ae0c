//! Lee form and the characteristic torsion of a Spin(7)-structure on a Lie-group frame.

use crate::algebra::LieAlgebra8;
use crate::connection::codifferential;
use crate::error::Result;
use crate::exterior::{contract_into, hodge_star, wedge, Covector, KForm, DIM};
use crate::spin7::Spin7Form;

/// The Lee form evaluated through each of its defining expressions.
#[derive(Debug, Clone, PartialEq)]
pub struct LeeExpressions {
    /// `−(1/7) ⋆(⋆dφ ∧ φ)`
    pub from_star_dphi: Covector,
    /// `(1/7) ⋆(δφ ∧ φ)`
    pub from_delta_wedge: Covector,
    /// `(1/7) (δφ)⌟φ`
    pub from_contraction: Covector,
    /// `(1/42) δφ_{ijk} φ_{ijka}`
    pub from_components: Covector,
}

impl LeeExpressions {
    pub fn max_spread(&self) -> f64 {
        let all = [&self.from_star_dphi, &self.from_delta_wedge, &self.from_contraction, &self.from_components];
        let mut worst: f64 = 0.0;
        for a in all {
            for b in all {
                worst = worst.max((*a - *b).max_abs());
            }
        }
        worst
    }
}

pub fn lee_expressions(phi: &Spin7Form, alg: &LieAlgebra8) -> Result<LeeExpressions> {
    let m = phi.metric();
    let dphi = alg.d(phi.phi())?;
    let delta_phi = codifferential(phi.phi(), alg, m)?;
    let one_seventh = 1.0 / 7.0;
    let from_star_dphi = hodge_star(&wedge(&hodge_star(&dphi, m), phi.phi())?, m).scale(-one_seventh).to_covector()?;
    let from_delta_wedge = hodge_star(&wedge(&delta_phi, phi.phi())?, m).scale(one_seventh).to_covector()?;
    let from_contraction = contract_into(&delta_phi, phi.phi(), m)?.scale(one_seventh).to_covector()?;
    let up = crate::exterior::raise_form(&delta_phi, m);
    let mut comps = [0.0; DIM];
    for (a, v) in comps.iter_mut().enumerate() {
        let mut s = 0.0;
        for (idx, c) in up.terms() {
            let ix = idx.to_vec();
            // each increasing triple stands for its 6 orderings
            s += 6.0 * c * phi.component(ix[0], ix[1], ix[2], a);
        }
        *v = s / 42.0;
    }
    Ok(LeeExpressions {
        from_star_dphi,
        from_delta_wedge,
        from_contraction,
        from_components: Covector::from_array(comps),
    })
}

/// `θ = −(1/7) ⋆(⋆dφ ∧ φ)`.
pub fn lee_form(phi: &Spin7Form, alg: &LieAlgebra8) -> Result<Covector> {
    Ok(lee_expressions(phi, alg)?.from_star_dphi)
}

/// `T = −⋆dφ + (7/6) ⋆(θ ∧ φ)`.
pub fn spin7_torsion(phi: &Spin7Form, alg: &LieAlgebra8) -> Result<KForm> {
    let m = phi.metric();
    let theta = lee_form(phi, alg)?;
    let dphi = alg.d(phi.phi())?;
    let th = KForm::from_covector(&theta);
    Ok(-hodge_star(&dphi, m) + hodge_star(&wedge(&th, phi.phi())?, m).scale(7.0 / 6.0))
}

/// `T = δφ + (7/6) θ⌟φ`, the second form of the same torsion.
pub fn spin7_torsion_via_codifferential(phi: &Spin7Form, alg: &LieAlgebra8) -> Result<KForm> {
    let theta = lee_form(phi, alg)?;
    let delta_phi = codifferential(phi.phi(), alg, phi.metric())?;
    Ok(delta_phi + phi.contract(&theta).scale(7.0 / 6.0))
}
