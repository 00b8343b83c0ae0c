//! Wedge product, Hodge star, interior products and the full-contraction pairing.

use super::form::KForm;
use super::index::{MultiIndex, DIM};
use super::metric::{Covector, FrameMetric};
use crate::error::{Error, Result};
use crate::report::VerificationReport;

fn factorial(k: usize) -> f64 {
    (1..=k).product::<usize>() as f64
}

pub fn wedge(a: &KForm, b: &KForm) -> Result<KForm> {
    let k = a.degree() + b.degree();
    if k > DIM {
        return Err(Error::DegreeOverflow(a.degree(), b.degree()));
    }
    let mut out = KForm::zero(k);
    for (i, x) in a.terms() {
        for (j, y) in b.terms() {
            let s = i.wedge_sign(j);
            if s != 0.0 {
                out.add_term(i.union(j), s * x * y);
            }
        }
    }
    Ok(out)
}

/// Canonical components with all indices raised: `β^I = Σ_A det(g⁻¹[I,A]) β_A`.
pub fn raise_form(a: &KForm, m: &FrameMetric) -> KForm {
    if m.is_identity() || a.degree() == 0 {
        return a.clone();
    }
    let mut out = KForm::zero(a.degree());
    for i in MultiIndex::all_of_degree(a.degree()) {
        let rows = i.to_vec();
        let v: f64 = a.terms().map(|(j, c)| c * m.inverse_minor(&rows, &j.to_vec())).sum();
        out.add_term(i, v);
    }
    out
}

pub fn hodge_star(a: &KForm, m: &FrameMetric) -> KForm {
    let up = raise_form(a, m);
    let scale = m.sqrt_det() * m.orientation();
    let mut out = KForm::zero(DIM - a.degree());
    for (i, c) in up.terms() {
        let j = i.complement();
        out.add_term(j, scale * i.wedge_sign(j) * c);
    }
    out
}

/// `(x⌟a)_{i2…ik} = x^s a_{s i2…ik}`.
pub fn interior_product(x: &Covector, a: &KForm, m: &FrameMetric) -> Result<KForm> {
    if a.degree() == 0 {
        return Err(Error::InteriorOfScalar);
    }
    let v = m.raise(x);
    let mut out = KForm::zero(a.degree() - 1);
    for (idx, c) in a.terms() {
        for s in idx.indices() {
            out.add_term(idx.without(s), idx.position_sign(s) * v.get(s) * c);
        }
    }
    Ok(out)
}

/// Form-into-form contraction `(a⌟b)_J = (1/p!) a^{I} b_{I J}` with `p = deg a ≤ deg b`.
/// For a 1-form this coincides with [`interior_product`].
pub fn contract_into(a: &KForm, b: &KForm, m: &FrameMetric) -> Result<KForm> {
    if a.degree() > b.degree() {
        return Err(Error::DegreeMismatch { expected: b.degree(), got: a.degree() });
    }
    let up = raise_form(a, m);
    let mut out = KForm::zero(b.degree() - a.degree());
    for (i, x) in up.terms() {
        for (bi, y) in b.terms() {
            if bi.union(i) == bi {
                let rest = MultiIndex::from_mask(bi.mask() & !i.mask());
                out.add_term(rest, i.wedge_sign(rest) * x * y);
            }
        }
    }
    Ok(out)
}

/// `a_{i1…ik} b^{i1…ik}` over all index tuples (no `1/k!`).
pub fn full_contraction(a: &KForm, b: &KForm, m: &FrameMetric) -> Result<f64> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch { expected: a.degree(), got: b.degree() });
    }
    let up = raise_form(b, m);
    let s: f64 = a.terms().map(|(i, c)| c * up.coeff(i)).sum();
    Ok(factorial(a.degree()) * s)
}

/// `‖a‖² = full_contraction(a, a)`.
pub fn norm_sq(a: &KForm, m: &FrameMetric) -> f64 {
    full_contraction(a, a, m).expect("same degree")
}

/// Sum over canonical (increasing) index sets: `full_contraction / k!`.
pub fn inner(a: &KForm, b: &KForm, m: &FrameMetric) -> Result<f64> {
    Ok(full_contraction(a, b, m)? / factorial(a.degree()))
}

/// The volume form of the metric.
pub fn volume_form(m: &FrameMetric) -> KForm {
    hodge_star(&KForm::scalar(1.0), m)
}

/// The four contraction/star identities for a 1-form `α` and a `k`-form `β`
/// in dimension 8:
///
/// ```text
/// ⋆(α⌟β) = (−1)^{k+1} α∧⋆β        α⌟β  = ⋆(α∧⋆β)
/// ⋆(α⌟⋆β) = −α∧β                  α⌟⋆β = (−1)^k ⋆(α∧β)
/// ```
///
/// Terms that would exceed degree 8 or contract a scalar are zero.
pub fn star_interior_identities_check(alpha: &Covector, beta: &KForm, m: &FrameMetric) -> VerificationReport {
    const TOL: f64 = 1e-12;
    let k = beta.degree();
    let a = KForm::from_covector(alpha);
    let sign_k = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let star_b = hodge_star(beta, m);

    let wedge_or_zero = |x: &KForm, y: &KForm| -> Option<KForm> { wedge(x, y).ok() };
    let interior_or_zero = |x: &KForm| -> Option<KForm> { interior_product(alpha, x, m).ok() };
    let diff = |l: Option<KForm>, r: Option<KForm>| -> f64 {
        match (l, r) {
            (Some(l), Some(r)) => l.distance(&r),
            (Some(f), None) | (None, Some(f)) => f.max_abs(),
            (None, None) => 0.0,
        }
    };

    let mut rep = VerificationReport::new("star-interior");
    let a_int_b = interior_or_zero(beta);
    let a_w_sb = wedge_or_zero(&a, &star_b);
    let a_w_b = wedge_or_zero(&a, beta);
    let a_int_sb = interior_or_zero(&star_b);

    rep.identity(
        "star.interior_of_beta",
        "*(a _| b) = (-1)^(k+1) a ^ *b",
        diff(a_int_b.as_ref().map(|f| hodge_star(f, m)), a_w_sb.as_ref().map(|f| f.scale(-sign_k))),
        TOL,
    );
    rep.identity(
        "star.interior_as_star_wedge",
        "a _| b = (-1)^(n(k+1)) *(a ^ *b)",
        diff(a_int_b, a_w_sb.as_ref().map(|f| hodge_star(f, m))),
        TOL,
    );
    rep.identity(
        "star.interior_of_star_beta",
        "*(a _| *b) = (-1)^(n(k+1)+1) a ^ b",
        diff(a_int_sb.as_ref().map(|f| hodge_star(f, m)), a_w_b.as_ref().map(|f| -f)),
        TOL,
    );
    rep.identity(
        "star.interior_star_as_star_wedge",
        "a _| *b = (-1)^k *(a ^ b)",
        diff(a_int_sb, a_w_b.as_ref().map(|f| hodge_star(f, m).scale(sign_k))),
        TOL,
    );
    rep
}
