//! Carlitz multiple polylogarithms and their star variants as truncated
//! series, at a finite place v and at ∞.
//!
//! Conventions: `Li_s(u) = Σ_{i₁>⋯>i_r≥0} Π u_j^{q^{i_j}} / L_{i_j}^{s_j}` and
//! `Li*_s(u)` is the same sum over `i₁ ≥ ⋯ ≥ i_r`. In both, the first
//! argument carries the largest index.

mod inf;
mod star;
mod vadic;

use std::sync::RwLock;

use crate::algebra::{Fq, Poly};
use crate::error::{Error, Result};

pub use inf::{cmpl_eval_inf, cmspl_eval_inf, series_inf, term_degree_inf};
pub use star::{star_nonstar_transform, star_residue_inf, star_residue_v};
pub use vadic::{cmpl_eval_v, cmpl_series_v, cmspl_eval_v, exact_val, inverse_l_v, ArgSource};

/// Hard cap on any summation index; deeper sums are rejected as unreachable.
pub const MAX_INDEX: usize = 48;

/// s = (s₁,…,s_r) with derived weight and block sizes d_ℓ = s_ℓ+⋯+s_r.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompositionIndex {
    s: Vec<u32>,
}

impl CompositionIndex {
    pub fn new(s: Vec<u32>) -> Result<CompositionIndex> {
        if s.is_empty() {
            return Err(Error::InvalidInput("empty index".into()));
        }
        if s.contains(&0) {
            return Err(Error::InvalidInput("index entries must be positive".into()));
        }
        Ok(CompositionIndex { s })
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    pub fn depth(&self) -> usize {
        self.s.len()
    }

    pub fn weight(&self) -> u32 {
        self.s.iter().sum()
    }

    /// d_ℓ for ℓ = 1..=r.
    pub fn d(&self, l: usize) -> usize {
        self.s[l - 1..].iter().sum::<u32>() as usize
    }

    /// (d₁, …, d_r).
    pub fn dims(&self) -> Vec<usize> {
        (1..=self.depth()).map(|l| self.d(l)).collect()
    }

    /// d = d₁ + ⋯ + d_r.
    pub fn dim(&self) -> usize {
        self.dims().iter().sum()
    }

    /// 1-based index d₁+⋯+d_ℓ of the bottom row of block ℓ.
    pub fn block_bottom(&self, l: usize) -> usize {
        (1..=l).map(|k| self.d(k)).sum()
    }

    /// (s_r, …, s₁).
    pub fn reversed(&self) -> CompositionIndex {
        CompositionIndex {
            s: self.s.iter().rev().copied().collect(),
        }
    }

    /// (s_a, …, s_b), 1-based and inclusive.
    pub fn slice(&self, a: usize, b: usize) -> CompositionIndex {
        CompositionIndex {
            s: self.s[a - 1..b].to_vec(),
        }
    }
}

/// L₀ = 1, L_i = (θ - θ^q)⋯(θ - θ^{q^i}), and D₀ = 1, D_i = (θ^{q^i} - θ)·D_{i-1}^q.
/// Append-only caches; reads take a shared lock.
pub struct LSequence {
    fq: Fq,
    l: RwLock<Vec<Poly>>,
    d: RwLock<Vec<Poly>>,
}

impl LSequence {
    pub fn new(fq: Fq) -> LSequence {
        LSequence {
            fq,
            l: RwLock::new(vec![Poly::one(fq)]),
            d: RwLock::new(vec![Poly::one(fq)]),
        }
    }

    pub fn field(&self) -> Fq {
        self.fq
    }

    // θ^{q^i} - θ
    fn bracket(&self, i: usize) -> Poly {
        let theta = Poly::x(self.fq);
        theta.twist(i as u32).sub(&theta)
    }

    pub fn l(&self, i: usize) -> Poly {
        if let Some(x) = self.l.read().unwrap().get(i) {
            return x.clone();
        }
        let mut l = self.l.write().unwrap();
        while l.len() <= i {
            let k = l.len();
            let next = l[k - 1].mul(&self.bracket(k).neg());
            l.push(next);
        }
        l[i].clone()
    }

    pub fn d(&self, i: usize) -> Poly {
        if let Some(x) = self.d.read().unwrap().get(i) {
            return x.clone();
        }
        let mut d = self.d.write().unwrap();
        while d.len() <= i {
            let k = d.len();
            let next = self.bracket(k).mul(&d[k - 1].twist(1));
            d.push(next);
        }
        d[i].clone()
    }

    /// deg L_i = q + q² + ⋯ + q^i.
    pub fn deg_l(&self, i: usize) -> i64 {
        let q = self.fq.q() as i64;
        (1..=i as u32).map(|k| q.pow(k)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_data() {
        let s = CompositionIndex::new(vec![2, 1, 3]).unwrap();
        assert_eq!(s.weight(), 6);
        assert_eq!(s.dims(), vec![6, 4, 3]);
        assert_eq!(s.dim(), 13);
        assert_eq!(s.block_bottom(2), 10);
        assert_eq!(s.reversed().s(), &[3, 1, 2]);
        assert_eq!(s.slice(2, 3).s(), &[1, 3]);
        assert!(CompositionIndex::new(vec![]).is_err());
        assert!(CompositionIndex::new(vec![1, 0]).is_err());
    }

    #[test]
    fn l_and_d_sequences() {
        let fq = Fq::prime(3).unwrap();
        let ls = LSequence::new(fq);
        let theta = Poly::x(fq);
        assert!(ls.l(0).is_one());
        assert_eq!(ls.l(1), theta.sub(&theta.twist(1)));
        for i in 0..5 {
            assert_eq!(ls.l(i).deg(), ls.deg_l(i));
            // D_i = Π_{j<i} (θ^{q^i} - θ^{q^j})
            let direct = (0..i).fold(Poly::one(fq), |acc, j| {
                acc.mul(&theta.twist(i as u32).sub(&theta.twist(j as u32)))
            });
            assert_eq!(ls.d(i), direct);
        }
    }

    #[test]
    fn l_has_small_valuation() {
        let fq = Fq::prime(3).unwrap();
        let ls = LSequence::new(fq);
        for v in [&[0, 1][..], &[1, 1], &[1, 0, 1]] {
            let v = Poly::from_ints(fq, v);
            for i in 0..=12 {
                let o = ls.l(i).ord(&v).unwrap() as usize;
                assert!(o <= i);
                assert_eq!(o, i / v.deg() as usize);
            }
        }
    }
}
