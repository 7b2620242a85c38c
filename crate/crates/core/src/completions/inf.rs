//! Truncated Laurent series in 1/θ: the completion k_∞.
//!
//! A value is θ^val·(c_0 + c_1 θ^{-1} + c_2 θ^{-2} + …) with the coefficients
//! of θ^e known for every e ≥ prec. Zero to precision has no coefficients
//! and val = prec.

use std::fmt;

use crate::algebra::{Fe, Fq, Poly, RatFunc, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct InfLaurent {
    fq: Fq,
    val: i64,
    coeffs: Vec<Fe>,
    prec: i64,
}

// Power series in y = 1/θ, truncated to n terms.
fn series_mul(fq: Fq, a: &[Fe], b: &[Fe], n: usize) -> Vec<Fe> {
    let pa = Poly::from_coeffs(fq, a[..a.len().min(n)].to_vec());
    let pb = Poly::from_coeffs(fq, b[..b.len().min(n)].to_vec());
    let mut c = pa.mul(&pb).coeffs().to_vec();
    c.resize(n, 0);
    c
}

fn series_inv(fq: Fq, a: &[Fe], n: usize) -> Vec<Fe> {
    let a0_inv = fq.inv(a[0]).expect("unit leading coefficient");
    let mut out = vec![0; n];
    out[0] = a0_inv;
    for k in 1..n {
        let mut s = 0;
        for j in 1..=k.min(a.len() - 1) {
            s = fq.add(s, fq.mul(a[j], out[k - j]));
        }
        out[k] = fq.neg(fq.mul(s, a0_inv));
    }
    out
}

impl InfLaurent {
    /// Builds a value from raw data, normalizing leading zeros.
    pub fn new(fq: Fq, val: i64, coeffs: Vec<Fe>, prec: i64) -> InfLaurent {
        let mut x = InfLaurent {
            fq,
            val,
            coeffs,
            prec,
        };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        let known = (self.val - self.prec + 1).max(0) as usize;
        self.coeffs.resize(known, 0);
        let lead = self.coeffs.iter().position(|&c| c != 0);
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.prec;
            }
            Some(k) => {
                self.coeffs.drain(..k);
                self.val -= k as i64;
            }
        }
    }

    pub fn zero(fq: Fq, prec: i64) -> InfLaurent {
        InfLaurent {
            fq,
            val: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn field(&self) -> Fq {
        self.fq
    }

    /// θ-degree of the leading term (for zero, the precision).
    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of known coefficients from the leading term down.
    pub fn rel_prec(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of θ^e, if known.
    pub fn coeff(&self, e: i64) -> Option<Fe> {
        if e < self.prec {
            return None;
        }
        if e > self.val {
            return Some(0);
        }
        Some(
            self.coeffs
                .get((self.val - e) as usize)
                .copied()
                .unwrap_or(0),
        )
    }

    pub fn from_poly(a: &Poly, prec: i64) -> InfLaurent {
        let fq = a.field();
        if a.is_zero() {
            return InfLaurent::zero(fq, prec);
        }
        let coeffs = a.coeffs().iter().rev().copied().collect();
        InfLaurent::new(fq, a.deg(), coeffs, prec)
    }

    /// Expansion of x ∈ k, known for all exponents ≥ prec.
    pub fn from_ratfunc(x: &RatFunc, prec: i64) -> InfLaurent {
        let fq = x.field();
        if x.is_zero() {
            return InfLaurent::zero(fq, prec);
        }
        let val = x.num().deg() - x.den().deg();
        if val < prec {
            return InfLaurent::zero(fq, prec);
        }
        let n = (val - prec + 1) as usize;
        let num: Vec<Fe> = x.num().coeffs().iter().rev().copied().collect();
        let den: Vec<Fe> = x.den().coeffs().iter().rev().copied().collect();
        let coeffs = series_mul(fq, &num, &series_inv(fq, &den, n), n);
        InfLaurent::new(fq, val, coeffs, prec)
    }

    pub fn neg(&self) -> InfLaurent {
        InfLaurent {
            fq: self.fq,
            val: self.val,
            coeffs: self.coeffs.iter().map(|&c| self.fq.neg(c)).collect(),
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &InfLaurent) -> InfLaurent {
        let prec = self.prec.max(o.prec);
        let top = self.val.max(o.val);
        if top < prec {
            return InfLaurent::zero(self.fq, prec);
        }
        let n = (top - prec + 1) as usize;
        let mut c = vec![0; n];
        for x in [self, o] {
            for (j, &a) in x.coeffs.iter().enumerate() {
                let e = x.val - j as i64;
                if e < prec {
                    break;
                }
                let k = (top - e) as usize;
                c[k] = self.fq.add(c[k], a);
            }
        }
        InfLaurent::new(self.fq, top, c, prec)
    }

    pub fn sub(&self, o: &InfLaurent) -> InfLaurent {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &InfLaurent) -> InfLaurent {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => InfLaurent::zero(self.fq, self.prec + o.prec - 1),
            (true, false) => InfLaurent::zero(self.fq, self.prec + o.val),
            (false, true) => InfLaurent::zero(self.fq, o.prec + self.val),
            (false, false) => {
                let n = self.rel_prec().min(o.rel_prec());
                let val = self.val + o.val;
                let c = series_mul(self.fq, &self.coeffs, &o.coeffs, n);
                InfLaurent::new(self.fq, val, c, val - n as i64 + 1)
            }
        }
    }

    pub fn scale(&self, c: Fe) -> InfLaurent {
        if c == 0 {
            return InfLaurent::zero(self.fq, self.prec);
        }
        InfLaurent {
            fq: self.fq,
            val: self.val,
            coeffs: self.coeffs.iter().map(|&x| self.fq.mul(x, c)).collect(),
            prec: self.prec,
        }
    }

    /// Multiplication by θ^k.
    pub fn shift(&self, k: i64) -> InfLaurent {
        InfLaurent {
            fq: self.fq,
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec + k,
        }
    }

    pub fn inv(&self) -> Result<InfLaurent> {
        if self.is_zero() {
            return Err(Error::InsufficientPrecision(
                "inverting a value that is zero to precision".into(),
            ));
        }
        let n = self.rel_prec();
        let c = series_inv(self.fq, &self.coeffs, n);
        let val = -self.val;
        Ok(InfLaurent::new(self.fq, val, c, val - n as i64 + 1))
    }

    pub fn div(&self, o: &InfLaurent) -> Result<InfLaurent> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, mut n: u64) -> InfLaurent {
        let mut acc = InfLaurent::new(self.fq, 0, vec![1], -(self.rel_prec() as i64) + 1);
        if n == 0 {
            return acc;
        }
        let mut b = self.clone();
        let mut first = true;
        while n > 0 {
            if n & 1 == 1 {
                acc = if first { b.clone() } else { acc.mul(&b) };
                first = false;
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// x ↦ x^{q^s}; relative precision is multiplied by q^s.
    pub fn frobenius(&self, s: u32) -> InfLaurent {
        let k = (self.fq.q() as i64).pow(s);
        if self.is_zero() {
            return InfLaurent::zero(self.fq, (self.prec - 1) * k + 1);
        }
        let n = self.rel_prec() * k as usize;
        let mut c = vec![0; n];
        for (j, &a) in self.coeffs.iter().enumerate() {
            let mut x = a;
            for _ in 0..s {
                x = self.fq.pow(x, self.fq.q() as u64);
            }
            c[j * k as usize] = x;
        }
        let val = self.val * k;
        InfLaurent::new(self.fq, val, c, val - n as i64 + 1)
    }

    /// Same value, forgetting coefficients below θ^prec.
    pub fn truncate(&self, prec: i64) -> InfLaurent {
        if prec <= self.prec {
            return self.clone();
        }
        InfLaurent::new(self.fq, self.val, self.coeffs.clone(), prec)
    }

    /// True when both agree on every coefficient the less precise one claims.
    pub fn agrees_with(&self, o: &InfLaurent) -> bool {
        self.sub(o).is_zero()
    }
}

impl fmt::Debug for InfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                parts.push(format!("{}θ^{}", c, self.val - j as i64));
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O(θ^{})", parts.join(" + "), self.prec - 1)
    }
}

/// π̃^{q-1} = (-θ)^q ∏_{i≥1} (1 - θ^{1-q^i})^{-(q-1)}, known for exponents ≥ prec.
pub fn carlitz_period_power(fq: Fq, prec: i64) -> InfLaurent {
    let q = fq.q() as i64;
    if q < prec {
        return InfLaurent::zero(fq, prec);
    }
    let n = (q - prec + 1) as usize;
    // product of (1 - y^{q^i - 1}) in y = 1/θ, over all factors that matter at n terms
    let mut prod = vec![0; n];
    prod[0] = 1;
    let mut qi = q;
    while ((qi - 1) as usize) < n {
        let mut factor = vec![0; n];
        factor[0] = 1;
        factor[(qi - 1) as usize] = fq.neg(1);
        prod = series_mul(fq, &prod, &factor, n);
        qi *= q;
    }
    let inv = series_inv(fq, &prod, n);
    let mut s = vec![0; n];
    s[0] = 1;
    for _ in 0..fq.q() - 1 {
        s = series_mul(fq, &s, &inv, n);
    }
    let sign = if q % 2 == 1 { fq.neg(1) } else { 1 };
    let coeffs = s.iter().map(|&c| fq.mul(c, sign)).collect();
    InfLaurent::new(fq, q, coeffs, prec)
}

/// Continued-fraction reconstruction of a/b with deg a, deg b ≤ h matching x.
///
/// Needs at least 2h+2 known coefficients and known exponents reaching down
/// to -(2h+1), which makes any match unique.
pub fn rational_reconstruct(x: &InfLaurent, h: u32) -> Result<Option<RatFunc>> {
    let fq = x.field();
    let h = h as i64;
    let known = x.val().max(0) - x.prec() + 1;
    let p_exact = |p: &Poly| InfLaurent::from_poly(p, p.deg().min(0) - known - 1);
    if x.prec() > -(2 * h + 1) || known < 2 * h + 2 {
        return Err(Error::InsufficientPrecision(format!(
            "reconstruction at height {h} needs coefficients down to θ^{}",
            -(2 * h + 1)
        )));
    }
    let check = |p: &Poly, q: &Poly| -> Option<RatFunc> {
        if p.deg() > h || q.deg() > h || q.is_zero() {
            return None;
        }
        let qx = InfLaurent::from_poly(q, q.deg() - x.rel_prec() as i64).mul(x);
        let resid = qx.sub(&p_exact(p));
        if resid.is_zero() {
            RatFunc::new(p.clone(), q.clone()).ok()
        } else {
            None
        }
    };
    // convergents p_k/q_k of the continued fraction of x
    let (mut p0, mut q0) = (Poly::zero(fq), Poly::one(fq));
    let (mut p1, mut q1) = (Poly::one(fq), Poly::zero(fq));
    let mut cur = x.clone();
    loop {
        if cur.prec() > 0 {
            return Ok(None);
        }
        let (a, frac) = split_polynomial_part(&cur);
        let p2 = a.mul(&p1).add(&p0);
        let q2 = a.mul(&q1).add(&q0);
        if q2.deg() > h {
            return Ok(None);
        }
        if let Some(r) = check(&p2, &q2) {
            return Ok(Some(r));
        }
        if frac.is_zero() {
            return Ok(None);
        }
        cur = frac.inv()?;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
}

// x = a + f with a ∈ A and f of negative degree (or zero to precision).
fn split_polynomial_part(x: &InfLaurent) -> (Poly, InfLaurent) {
    let fq = x.field();
    let mut a = vec![0; x.val().max(0) as usize + 1];
    let mut rest = Vec::new();
    for (j, &c) in x.coeffs().iter().enumerate() {
        let e = x.val() - j as i64;
        if e >= 0 {
            a[e as usize] = c;
        } else {
            rest.push((e, c));
        }
    }
    let frac_val = rest.first().map_or(-1, |&(e, _)| e).min(-1);
    let n = (frac_val - x.prec() + 1).max(0) as usize;
    let mut c = vec![0; n];
    for (e, v) in rest {
        c[(frac_val - e) as usize] = v;
    }
    let frac = if x.prec() > frac_val {
        InfLaurent::zero(fq, x.prec())
    } else {
        InfLaurent::new(fq, frac_val, c, x.prec())
    };
    (Poly::from_coeffs(fq, a), frac)
}

impl Scalar for InfLaurent {
    /// The field and the precision given to constants.
    type Ctx = (Fq, i64);

    fn field_of(ctx: &Self::Ctx) -> Fq {
        ctx.0
    }

    fn ctx(&self) -> (Fq, i64) {
        (self.fq, self.prec)
    }
    fn zero(ctx: &(Fq, i64)) -> Self {
        InfLaurent::zero(ctx.0, ctx.1)
    }
    fn one(ctx: &(Fq, i64)) -> Self {
        InfLaurent::from_poly(&Poly::one(ctx.0), ctx.1)
    }
    fn from_poly(ctx: &(Fq, i64), a: &Poly) -> Self {
        InfLaurent::from_poly(a, ctx.1)
    }
    fn add(&self, o: &Self) -> Self {
        InfLaurent::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        InfLaurent::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        InfLaurent::mul(self, o)
    }
    fn neg(&self) -> Self {
        InfLaurent::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        InfLaurent::inv(self)
    }
    fn frobenius(&self, s: u32) -> Self {
        InfLaurent::frobenius(self, s)
    }
    fn is_zero(&self) -> bool {
        InfLaurent::is_zero(self)
    }
    fn is_exact_zero(&self) -> bool {
        false
    }
}
