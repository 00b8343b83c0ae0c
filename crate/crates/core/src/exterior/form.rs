use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::index::{MultiIndex, DIM};
use super::metric::Covector;
use crate::error::{Error, Result};
use crate::scalar::ScalarSpec;

/// A homogeneous form `Σ_{i1<…<ik} c_I e_{i1…ik}` in sparse canonical storage.
///
/// Zero coefficients are never stored, so two forms are equal iff their maps
/// are equal.
#[derive(Debug, Clone, PartialEq)]
pub struct KForm {
    degree: usize,
    coeffs: BTreeMap<MultiIndex, f64>,
}

impl KForm {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= DIM, "degree {degree} > 8");
        KForm { degree, coeffs: BTreeMap::new() }
    }

    pub fn scalar(c: f64) -> Self {
        let mut f = KForm::zero(0);
        f.add_term(MultiIndex::EMPTY, c);
        f
    }

    pub fn basis(idx: MultiIndex) -> Self {
        let mut f = KForm::zero(idx.degree());
        f.add_term(idx, 1.0);
        f
    }

    /// Monomial from an index list in any order; the permutation sign is applied.
    pub fn monomial(indices: &[usize], c: f64) -> Self {
        let mut f = KForm::zero(indices.len());
        if let Some((idx, s)) = MultiIndex::sorted(indices) {
            f.add_term(idx, s * c);
        }
        f
    }

    /// Parses `"0127"`-style monomial labels: each character is one frame index.
    pub fn from_terms(degree: usize, terms: &[(&str, f64)]) -> Self {
        let mut f = KForm::zero(degree);
        for (label, c) in terms {
            let idx: Vec<usize> = label.chars().map(|ch| ch.to_digit(10).expect("digit label") as usize).collect();
            assert_eq!(idx.len(), degree, "label {label} has wrong degree");
            f = f + KForm::monomial(&idx, *c);
        }
        f
    }

    pub fn from_covector(x: &Covector) -> Self {
        let mut f = KForm::zero(1);
        for i in 0..DIM {
            f.add_term(MultiIndex::from_mask(1 << i), x.get(i));
        }
        f
    }

    pub fn to_covector(&self) -> Result<Covector> {
        if self.degree != 1 {
            return Err(Error::DegreeMismatch { expected: 1, got: self.degree });
        }
        let mut a = [0.0; DIM];
        for (idx, c) in &self.coeffs {
            a[idx.mask().trailing_zeros() as usize] = *c;
        }
        Ok(Covector::from_array(a))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, f64)> + '_ {
        self.coeffs.iter().map(|(k, v)| (*k, *v))
    }

    pub fn coeff(&self, idx: MultiIndex) -> f64 {
        self.coeffs.get(&idx).copied().unwrap_or(0.0)
    }

    /// Component `β_{i1…ik}` at an arbitrary index order.
    pub fn component(&self, indices: &[usize]) -> f64 {
        debug_assert_eq!(indices.len(), self.degree);
        match MultiIndex::sorted(indices) {
            Some((idx, s)) => s * self.coeff(idx),
            None => 0.0,
        }
    }

    pub(crate) fn add_term(&mut self, idx: MultiIndex, c: f64) {
        debug_assert_eq!(idx.degree(), self.degree);
        if c == 0.0 {
            return;
        }
        let entry = self.coeffs.entry(idx).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            self.coeffs.remove(&idx);
        }
    }

    pub fn scale(&self, s: f64) -> KForm {
        let mut out = KForm::zero(self.degree);
        for (idx, c) in self.terms() {
            out.add_term(idx, s * c);
        }
        out
    }

    /// Drops coefficients with `|c| <= tol`.
    pub fn pruned(&self, tol: f64) -> KForm {
        KForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().filter(|(_, c)| c.abs() > tol).map(|(k, v)| (*k, *v)).collect(),
        }
    }

    /// Largest absolute canonical coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.values().all(|c| c.is_finite())
    }

    /// `max |a_I - b_I|` over canonical coefficients.
    pub fn distance(&self, other: &KForm) -> f64 {
        assert_eq!(self.degree, other.degree, "degree mismatch in distance");
        (self - other).max_abs()
    }

    pub fn to_json(&self) -> KFormJson {
        KFormJson {
            degree: self.degree,
            terms: self.terms().map(|(idx, c)| TermJson { idx: idx.to_vec(), c: ScalarSpec::Number(c) }).collect(),
        }
    }

    pub fn from_json(j: &KFormJson) -> Result<KForm> {
        if j.degree > DIM {
            return Err(Error::InvalidDegree(j.degree));
        }
        let mut f = KForm::zero(j.degree);
        for t in &j.terms {
            if t.idx.len() != j.degree {
                return Err(Error::InvalidIndex(t.idx.clone(), "length differs from degree"));
            }
            let idx = MultiIndex::new(&t.idx)?;
            if f.coeffs.contains_key(&idx) {
                return Err(Error::DuplicateMonomial(t.idx.clone()));
            }
            // explicit zeros are kept until the end so duplicates are still caught
            f.coeffs.insert(idx, t.c.value()?);
        }
        f.coeffs.retain(|_, c| *c != 0.0);
        Ok(f)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn parse_json(s: &str) -> Result<KForm> {
        let j: KFormJson = serde_json::from_str(s)?;
        KForm::from_json(&j)
    }
}

/// On-disk form: `{"degree": k, "terms": [{"idx": [..], "c": ..}, ..]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KFormJson {
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub idx: Vec<usize>,
    pub c: ScalarSpec,
}

impl Add<&KForm> for &KForm {
    type Output = KForm;
    fn add(self, rhs: &KForm) -> KForm {
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (idx, c) in rhs.terms() {
            out.add_term(idx, c);
        }
        out
    }
}

impl Add for KForm {
    type Output = KForm;
    fn add(self, rhs: KForm) -> KForm {
        &self + &rhs
    }
}

impl Sub<&KForm> for &KForm {
    type Output = KForm;
    fn sub(self, rhs: &KForm) -> KForm {
        self + &rhs.scale(-1.0)
    }
}

impl Sub for KForm {
    type Output = KForm;
    fn sub(self, rhs: KForm) -> KForm {
        &self - &rhs
    }
}

impl Neg for &KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        self.scale(-1.0)
    }
}

impl Neg for KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        self.scale(-1.0)
    }
}

impl Mul<&KForm> for f64 {
    type Output = KForm;
    fn mul(self, rhs: &KForm) -> KForm {
        rhs.scale(self)
    }
}

impl Mul<KForm> for f64 {
    type Output = KForm;
    fn mul(self, rhs: KForm) -> KForm {
        rhs.scale(self)
    }
}
