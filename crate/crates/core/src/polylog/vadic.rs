use std::sync::Arc;

use super::{CompositionIndex, MAX_INDEX};
use crate::algebra::{ExtElem, Poly};
use crate::completions::{certify_v, Embedding, Place, VAdicNumber};
use crate::error::{Error, Result};

/// Where the arguments u_j come from: elements of K pushed through an
/// embedding on demand, or v-adic values with fixed precision.
#[derive(Clone, Copy)]
pub enum ArgSource<'a> {
    Embedded(&'a Embedding, &'a [ExtElem]),
    Fixed(&'a Arc<Place>, &'a [VAdicNumber]),
}

impl ArgSource<'_> {
    pub fn place(&self) -> &Arc<Place> {
        match self {
            ArgSource::Embedded(e, _) => e.place(),
            ArgSource::Fixed(p, _) => p,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            ArgSource::Embedded(_, u) => u.len(),
            ArgSource::Fixed(_, z) => z.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// v-adic valuation of u_j; None for zero.
    pub fn val(&self, j: usize) -> Result<Option<i64>> {
        match self {
            ArgSource::Embedded(e, u) => exact_val(&u[j], e),
            ArgSource::Fixed(_, z) => Ok(if z[j].is_exact_zero() {
                None
            } else {
                Some(z[j].val())
            }),
        }
    }

    /// u_j with relative precision at least n where the source allows it.
    pub fn arg(&self, j: usize, n: u32) -> Result<VAdicNumber> {
        match self {
            ArgSource::Embedded(e, u) => {
                let v = exact_val(&u[j], e)?.unwrap_or(0);
                e.embed(&u[j], (n as i64 + v.max(0)) as u32)
            }
            ArgSource::Fixed(_, z) => Ok(z[j].clone()),
        }
    }
}

/// Exact valuation of x ∈ K at the place of `emb`; None for x = 0.
pub fn exact_val(x: &ExtElem, emb: &Embedding) -> Result<Option<i64>> {
    if x.is_zero() {
        return Ok(None);
    }
    let mut n = 8;
    while n <= 1 << 14 {
        let y = emb.embed(x, n)?;
        if !y.is_zero() {
            return Ok(Some(y.val()));
        }
        n *= 4;
    }
    Err(Error::PrecisionUnreachable(format!(
        "valuation of {x} is out of reach"
    )))
}

/// 1/L_0, …, 1/L_imax with relative precision `rel`.
pub fn inverse_l_v(place: &Arc<Place>, imax: usize, rel: u32) -> Result<Vec<VAdicNumber>> {
    let fq = place.field();
    let abs = rel as usize + 1;
    let theta = place.reduce(&Poly::x(fq), abs);
    let mut t = theta.clone();
    let mut l = VAdicNumber::from_poly(place, &Poly::one(fq), rel);
    let mut out = vec![l.clone()];
    for _ in 1..=imax {
        t = place.reduce(&t.twist(1), abs);
        let f = VAdicNumber::from_poly_mod(place, &theta.sub(&t), abs as i64);
        l = l.mul(&f.truncate_rel(rel));
        out.push(l.inv()?);
    }
    Ok(out)
}

fn pow_sat(q: i64, i: usize) -> i64 {
    q.checked_pow(i as u32).unwrap_or(i64::MAX / 8)
}

/// The series Li_s(u) (or Li*_s(u) when `star`) modulo v^abs. Every omitted
/// term has valuation ≥ abs by the bound ord_v(L_i) = ⌊i / deg v⌋.
pub fn cmpl_series_v(
    s: &CompositionIndex,
    args: ArgSource<'_>,
    abs: i64,
    star: bool,
) -> Result<VAdicNumber> {
    let r = s.depth();
    if args.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "{} arguments for depth {r}",
            args.len()
        )));
    }
    let place = args.place().clone();
    let mut vals = Vec::with_capacity(r);
    for j in 0..r {
        match args.val(j)? {
            None => return Ok(VAdicNumber::exact_zero(&place)),
            Some(v) => vals.push(v),
        }
    }
    if vals[0] < 1 {
        return Err(Error::Domain("series needs |u₁|_v < 1".into()));
    }
    if vals[1..].iter().any(|&v| v < 0) {
        return Err(Error::Domain("series needs |u_j|_v ≤ 1".into()));
    }
    let q = place.field().q() as i64;
    let dv = place.degree();
    let sj: Vec<i64> = s.s().iter().map(|&x| x as i64).collect();
    let wt = s.weight() as i64;
    let g = |j: usize, i: usize| -> i64 {
        pow_sat(q, i).saturating_mul(vals[j]) - sj[j] * (i / dv) as i64
    };

    // largest i₁ that can still contribute
    let mut i1 = 0;
    loop {
        let bound = g(0, i1) - (wt - sj[0]) * (i1 / dv) as i64;
        let growth = pow_sat(q, i1).saturating_mul((q - 1) * vals[0]);
        if bound >= abs && growth >= wt {
            break;
        }
        i1 += 1;
        if i1 > MAX_INDEX {
            return Err(Error::PrecisionUnreachable(format!(
                "more than {MAX_INDEX} terms needed for {abs} digits"
            )));
        }
    }
    if i1 == 0 || (!star && i1 < r) {
        return Ok(VAdicNumber::zero_to(&place, abs));
    }
    let imax = i1 - 1;
    let min_g = |j: usize, hi: usize| (0..=hi).map(|i| g(j, i)).min().unwrap();
    let tmin: i64 = (0..r).map(|j| min_g(j, imax)).sum();
    let rel = (abs - tmin).max(1) as u32;

    let linv = inverse_l_v(&place, imax, rel)?;
    let mut factors: Vec<Vec<VAdicNumber>> = Vec::with_capacity(r);
    for (j, &sjj) in sj.iter().enumerate().take(r) {
        let z = args.arg(j, rel)?.truncate_rel(rel);
        let mut zp = z;
        let mut row = Vec::with_capacity(imax + 1);
        for (i, li) in linv.iter().enumerate() {
            if i > 0 {
                zp = zp.frobenius(1);
            }
            row.push(zp.mul(&li.pow(sjj as u64)));
        }
        factors.push(row);
    }

    struct Walk<'a> {
        r: usize,
        star: bool,
        abs: i64,
        factors: &'a [Vec<VAdicNumber>],
        g: &'a dyn Fn(usize, usize) -> i64,
        min_g: &'a dyn Fn(usize, usize) -> i64,
        acc: Option<VAdicNumber>,
    }
    impl Walk<'_> {
        fn go(&mut self, j: usize, hi: usize, val: i64, prod: Option<&VAdicNumber>) {
            let lo = if self.star { 0 } else { self.r - 1 - j };
            for i in lo..=hi {
                let here = val + (self.g)(j, i);
                let next_hi = if self.star { Some(i) } else { i.checked_sub(1) };
                let rest: i64 = match next_hi {
                    Some(h) => (j + 1..self.r).map(|k| (self.min_g)(k, h)).sum(),
                    None if j + 1 == self.r => 0,
                    None => continue,
                };
                if here + rest >= self.abs {
                    continue;
                }
                let f = &self.factors[j][i];
                let p = match prod {
                    None => f.clone(),
                    Some(p) => p.mul(f),
                };
                if j + 1 == self.r {
                    self.acc = Some(match self.acc.take() {
                        None => p,
                        Some(a) => a.add(&p),
                    });
                } else {
                    self.go(j + 1, next_hi.unwrap(), here, Some(&p));
                }
            }
        }
    }
    let mut walk = Walk {
        r,
        star,
        abs,
        factors: &factors,
        g: &g,
        min_g: &min_g,
        acc: None,
    };
    walk.go(0, imax, 0, None);
    Ok(match walk.acc {
        None => VAdicNumber::zero_to(&place, abs),
        Some(a) => a.truncate_abs(abs),
    })
}

/// Li_s(u)_v with relative precision n (or zero modulo v^n).
pub fn cmpl_eval_v(
    s: &CompositionIndex,
    u: &[ExtElem],
    emb: &Embedding,
    n: u32,
) -> Result<VAdicNumber> {
    certify_v(n, |abs| {
        cmpl_series_v(s, ArgSource::Embedded(emb, u), abs, false)
    })
}

/// Li*_s(u)_v with relative precision n (or zero modulo v^n).
pub fn cmspl_eval_v(
    s: &CompositionIndex,
    u: &[ExtElem],
    emb: &Embedding,
    n: u32,
) -> Result<VAdicNumber> {
    certify_v(n, |abs| {
        cmpl_series_v(s, ArgSource::Embedded(emb, u), abs, true)
    })
}
