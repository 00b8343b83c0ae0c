//! Brute-force reference implementations over full component tables.
//!
//! Nothing here uses the bitmask sign bookkeeping of the sparse code: signs
//! come from counting inversions of explicit permutations, and products are
//! antisymmetrized by summing over the symmetric group.

use super::form::KForm;
use super::index::DIM;
use super::metric::FrameMetric;
use crate::tensor::Tensor;

/// Sign of the sequence as a permutation of its sorted values; 0 on repeats.
pub fn levi_civita(seq: &[usize]) -> f64 {
    let mut inversions = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] == seq[b] {
                return 0.0;
            }
            if seq[a] > seq[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Heap's algorithm; all permutations of `0..n`.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            go(k - 1, a, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
    let mut out = Vec::new();
    go(n, &mut (0..n).collect(), &mut out);
    out
}

fn factorial(k: usize) -> f64 {
    (1..=k).product::<usize>() as f64
}

/// Full component table of a form: every stored monomial spread over all
/// orderings of its indices.
pub fn dense_oracle(a: &KForm) -> Tensor {
    let k = a.degree();
    let mut t = Tensor::zeros(k);
    let perms = permutations(k);
    let mut idx = vec![0usize; k];
    for (mono, c) in a.terms() {
        let base = mono.to_vec();
        for p in &perms {
            for s in 0..k {
                idx[s] = base[p[s]];
            }
            t.set(&idx, levi_civita(p) * c);
        }
    }
    t
}

/// `(a∧b)_{i1…i_{k+l}} = (1/(k! l!)) Σ_σ sgn σ · a_{σ(1…k)} b_{σ(k+1…k+l)}`.
pub fn dense_wedge(a: &Tensor, b: &Tensor) -> Tensor {
    let (k, l) = (a.rank(), b.rank());
    let n = k + l;
    let perms = permutations(n);
    let norm = factorial(k) * factorial(l);
    let mut ai = vec![0usize; k];
    let mut bi = vec![0usize; l];
    Tensor::from_fn(n, |idx| {
        let mut s = 0.0;
        for p in &perms {
            for q in 0..k {
                ai[q] = idx[p[q]];
            }
            for q in 0..l {
                bi[q] = idx[p[k + q]];
            }
            s += levi_civita(p) * a.get(&ai) * b.get(&bi);
        }
        s / norm
    })
}

/// `(⋆β)_J = (1/k!) β^{I} ε_{IJ} √det g`, raising with the full inverse metric.
pub fn dense_star(b: &Tensor, m: &FrameMetric) -> Tensor {
    let k = b.rank();
    let mut ginv = [[0.0; DIM]; DIM];
    for (i, row) in ginv.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = m.g_inv(i, j);
        }
    }
    let mut up = b.clone();
    for slot in 0..k {
        up = up.contract_slot(slot, &ginv);
    }
    let scale = m.sqrt_det() * m.orientation() / factorial(k);
    // ε vanishes off permutations of 0..8, so sum over those: the first k
    // slots index β, the rest index the output
    let mut out = Tensor::zeros(DIM - k);
    for p in permutations(DIM) {
        out.add_at(&p[k..], scale * levi_civita(&p) * up.get(&p[..k]));
    }
    out
}

/// `Σ_{all tuples} a_I b^I` with a dense metric raise.
pub fn dense_full_contraction(a: &Tensor, b: &Tensor, m: &FrameMetric) -> f64 {
    let mut ginv = [[0.0; DIM]; DIM];
    for (i, row) in ginv.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = m.g_inv(i, j);
        }
    }
    let mut up = b.clone();
    for slot in 0..b.rank() {
        up = up.contract_slot(slot, &ginv);
    }
    a.data().iter().zip(up.data()).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_count_and_signs() {
        let p = permutations(4);
        assert_eq!(p.len(), 24);
        let even = p.iter().filter(|q| levi_civita(q) > 0.0).count();
        assert_eq!(even, 12);
        assert_eq!(levi_civita(&[1, 0]), -1.0);
        assert_eq!(levi_civita(&[0, 0]), 0.0);
    }

    #[test]
    fn dense_of_basis_two_form() {
        let t = dense_oracle(&KForm::from_terms(2, &[("01", 1.0)]));
        let nz: Vec<f64> = t.data().iter().copied().filter(|v| *v != 0.0).collect();
        assert_eq!(nz.len(), 2);
        assert_eq!(t.get(&[0, 1]), 1.0);
        assert_eq!(t.get(&[1, 0]), -1.0);
    }

    #[test]
    fn dense_wedge_of_basis() {
        let a = dense_oracle(&KForm::from_terms(1, &[("2", 1.0)]));
        let b = dense_oracle(&KForm::from_terms(1, &[("5", 1.0)]));
        let w = dense_wedge(&a, &b);
        assert_eq!(w.get(&[2, 5]), 1.0);
        assert_eq!(w.get(&[5, 2]), -1.0);
    }
}
