//! Dense covariant tensors over the 8-dimensional frame (rank ≤ 8, row-major).

use crate::exterior::{KForm, MultiIndex, DIM};

#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    rank: usize,
    data: Vec<f64>,
}

fn flat(idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * DIM + i)
}

/// Calls `f` on every index tuple of the given rank, in row-major order.
pub fn for_each_index(rank: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; rank];
    let total = DIM.pow(rank as u32);
    for _ in 0..total {
        f(&idx);
        for s in (0..rank).rev() {
            idx[s] += 1;
            if idx[s] < DIM {
                break;
            }
            idx[s] = 0;
        }
    }
}

impl Tensor {
    pub fn zeros(rank: usize) -> Self {
        Tensor { rank, data: vec![0.0; DIM.pow(rank as u32)] }
    }

    pub fn from_fn(rank: usize, mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let mut data = Vec::with_capacity(DIM.pow(rank as u32));
        for_each_index(rank, |idx| data.push(f(idx)));
        Tensor { rank, data }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.rank);
        self.data[flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: f64) {
        let i = flat(idx);
        self.data[i] = v;
    }

    pub fn add_at(&mut self, idx: &[usize], v: f64) {
        let i = flat(idx);
        self.data[i] += v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn distance(&self, other: &Tensor) -> f64 {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn scale(&self, s: f64) -> Tensor {
        Tensor { rank: self.rank, data: self.data.iter().map(|v| s * v).collect() }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        Tensor { rank: self.rank, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.scale(-1.0))
    }

    /// All components `β_{i1…ik}` of a form.
    pub fn from_form(f: &KForm) -> Tensor {
        Tensor::from_fn(f.degree(), |idx| f.component(idx))
    }

    /// Reads the increasing-index components; meaningful for antisymmetric tensors.
    pub fn to_form(&self) -> KForm {
        let mut out = KForm::zero(self.rank);
        for idx in MultiIndex::all_of_degree(self.rank) {
            let v = self.get(&idx.to_vec());
            out = out + KForm::monomial(&idx.to_vec(), v);
        }
        out
    }

    /// Largest violation of total antisymmetry under adjacent transpositions.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let mut swapped = vec![0usize; self.rank];
        for_each_index(self.rank, |idx| {
            for s in 0..self.rank.saturating_sub(1) {
                swapped.copy_from_slice(idx);
                swapped.swap(s, s + 1);
                worst = worst.max((self.get(idx) + self.get(&swapped)).abs());
            }
        });
        worst
    }

    /// Contracts slot `slot` with a matrix: `t'_{…a…} = Σ_b m[a][b] t_{…b…}`.
    pub fn contract_slot(&self, slot: usize, m: &[[f64; DIM]; DIM]) -> Tensor {
        let mut idx2 = vec![0usize; self.rank];
        Tensor::from_fn(self.rank, |idx| {
            idx2.copy_from_slice(idx);
            let mut s = 0.0;
            for b in 0..DIM {
                idx2[slot] = b;
                s += m[idx[slot]][b] * self.get(&idx2);
            }
            s
        })
    }
}
