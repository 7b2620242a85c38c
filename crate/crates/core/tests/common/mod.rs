#![allow(dead_code)]

use std::sync::Arc;

use cmpl_core::algebra::{ExtElem, ExtField, Fq, Poly, RatFunc};
use cmpl_core::completions::{Embedding, Place};

pub fn f3() -> Fq {
    Fq::prime(3).unwrap()
}

pub fn poly(c: &[i64]) -> Poly {
    Poly::from_ints(f3(), c)
}

pub fn rat(c: &[i64]) -> RatFunc {
    RatFunc::from_poly(poly(c))
}

pub fn place(c: &[i64]) -> Arc<Place> {
    Place::new(poly(c)).unwrap()
}

/// Elements of k seen inside the trivial extension.
pub fn in_k(xs: &[RatFunc]) -> (Arc<ExtField>, Vec<ExtElem>) {
    let k = ExtField::trivial(xs[0].field());
    let u = xs
        .iter()
        .map(|x| ExtElem::from_rat(&k, x.clone()))
        .collect();
    (k, u)
}

pub fn embedding_k(v: &Arc<Place>) -> Embedding {
    Embedding::new(&ExtField::trivial(v.field()), v, None).unwrap()
}

/// The λ example: K = k[x]/(x² - 2θ) over F_3, v = θ + 1, λ ≡ θ + 2 mod v².
pub fn lambda_setup() -> (Arc<ExtField>, Arc<Place>, Embedding, ExtElem) {
    let k = ExtField::new(vec![rat(&[0, -2]), rat(&[]), rat(&[1])]).unwrap();
    let v = place(&[1, 1]);
    let emb = Embedding::new(&k, &v, Some(poly(&[1]))).unwrap();
    let lambda = ExtElem::generator(&k);
    (k, v, emb, lambda)
}

/// Naive exact L_i, independent of the library cache.
pub fn naive_l(i: usize) -> Poly {
    let theta = poly(&[0, 1]);
    (1..=i).fold(Poly::one(f3()), |acc, k| {
        acc.mul(&theta.sub(&theta.twist(k as u32)))
    })
}

/// Exact partial sum of Li_s(u) (or Li*) over indices ≤ cap, by brute force.
pub fn naive_partial(s: &[u32], u: &[RatFunc], cap: usize, star: bool) -> RatFunc {
    let r = s.len();
    let mut total = RatFunc::zero(f3());
    let mut idx = vec![0usize; r];
    loop {
        let ok = idx
            .windows(2)
            .all(|w| if star { w[0] >= w[1] } else { w[0] > w[1] });
        if ok {
            let mut t = RatFunc::one(f3());
            for j in 0..r {
                let num = u[j].twist(idx[j] as u32);
                let den = RatFunc::from_poly(naive_l(idx[j]).pow(s[j] as u64));
                t = t.mul(&num.div(&den).unwrap());
            }
            total = total.add(&t);
        }
        let mut k = 0;
        loop {
            if k == r {
                return total;
            }
            idx[k] += 1;
            if idx[k] <= cap {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
