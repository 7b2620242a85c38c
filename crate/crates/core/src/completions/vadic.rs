//! The completion k_v at a finite place: v^val · unit, unit known mod v^prec.
//!
//! Three kinds of value share one representation:
//! * nonzero: prec ≥ 1 and the unit is prime to v;
//! * zero to precision: unit 0, prec 0, and val is the absolute precision;
//! * exact zero: val is [`EXACT_ZERO_VAL`].
//!
//! Multiplication and division keep the smaller relative precision, addition
//! keeps the smaller absolute precision, so the recorded precision is never
//! more than what the inputs justify.

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::algebra::{Fq, Poly, RatFunc, Scalar};
use crate::error::{Error, Result};

pub const EXACT_ZERO_VAL: i64 = i64::MAX / 4;

pub struct Place {
    v: Poly,
    deg: usize,
    pows: Mutex<Vec<Poly>>,
}

impl Place {
    pub fn new(v: Poly) -> Result<Arc<Place>> {
        if !v.is_monic() || !v.is_irreducible() {
            return Err(Error::Domain(format!("{v} is not a monic prime of A")));
        }
        let deg = v.deg() as usize;
        let fq = v.field();
        Ok(Arc::new(Place {
            v,
            deg,
            pows: Mutex::new(vec![Poly::one(fq)]),
        }))
    }

    pub fn v(&self) -> &Poly {
        &self.v
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn field(&self) -> Fq {
        self.v.field()
    }

    fn is_theta(&self) -> bool {
        self.deg == 1 && self.v.coeff(0) == 0
    }

    /// v^n, cached.
    pub fn pow(&self, n: usize) -> Poly {
        let mut pows = self.pows.lock().unwrap();
        while pows.len() <= n {
            let next = pows.last().unwrap().mul(&self.v);
            pows.push(next);
        }
        pows[n].clone()
    }

    /// a mod v^n.
    pub fn reduce(&self, a: &Poly, n: usize) -> Poly {
        if a.deg() < (n * self.deg) as i64 {
            return a.clone();
        }
        if self.is_theta() {
            return a.truncate(n);
        }
        a.rem(&self.pow(n)).expect("nonzero modulus")
    }

    /// (k, a / v^k) with k = ord_v(a) when that is below `cap`, else (cap, _).
    pub fn split(&self, a: &Poly, cap: usize) -> (usize, Poly) {
        if a.is_zero() {
            return (cap, a.clone());
        }
        if self.is_theta() {
            let k = a.low_order().unwrap().min(cap);
            return (k, Poly::from_coeffs(a.field(), a.coeffs()[k..].to_vec()));
        }
        let mut k = 0;
        let mut cur = a.clone();
        while k < cap {
            let (q, r) = cur.divrem(&self.v).expect("nonzero");
            if !r.is_zero() {
                break;
            }
            cur = q;
            k += 1;
        }
        (k, cur)
    }

    /// Reduction map to the residue field A/v.
    pub fn residue(&self, a: &Poly) -> Poly {
        self.reduce(a, 1)
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v = {}", self.v)
    }
}

/// What a [`VAdicNumber`] needs to build constants: the place and a precision.
#[derive(Clone, Debug)]
pub struct VCtx {
    pub place: Arc<Place>,
    pub prec: u32,
}

#[derive(Clone)]
pub struct VAdicNumber {
    place: Arc<Place>,
    val: i64,
    unit: Poly,
    prec: u32,
}

impl VAdicNumber {
    pub fn exact_zero(place: &Arc<Place>) -> VAdicNumber {
        VAdicNumber {
            place: place.clone(),
            val: EXACT_ZERO_VAL,
            unit: Poly::zero(place.field()),
            prec: 0,
        }
    }

    /// Zero modulo v^abs.
    pub fn zero_to(place: &Arc<Place>, abs: i64) -> VAdicNumber {
        VAdicNumber {
            place: place.clone(),
            val: abs,
            unit: Poly::zero(place.field()),
            prec: 0,
        }
    }

    /// v^val · unit with the unit known modulo v^prec; the unit must be prime to v.
    pub fn from_parts(place: &Arc<Place>, val: i64, unit: Poly, prec: u32) -> Result<VAdicNumber> {
        if prec == 0 {
            return Ok(VAdicNumber::zero_to(place, val));
        }
        let unit = place.reduce(&unit, prec as usize);
        if place.residue(&unit).is_zero() {
            return Err(Error::InvalidInput("unit part divisible by v".into()));
        }
        Ok(VAdicNumber {
            place: place.clone(),
            val,
            unit,
            prec,
        })
    }

    /// Value of a polynomial known modulo v^abs, absolute precision abs.
    pub fn from_poly_mod(place: &Arc<Place>, a: &Poly, abs: i64) -> VAdicNumber {
        VAdicNumber::from_shifted_poly(place, 0, a, abs)
    }

    // v^shift · a, with a known modulo v^{abs - shift}.
    fn from_shifted_poly(place: &Arc<Place>, shift: i64, a: &Poly, abs: i64) -> VAdicNumber {
        let n = abs - shift;
        if n <= 0 {
            return VAdicNumber::zero_to(place, abs);
        }
        let a = place.reduce(a, n as usize);
        if a.is_zero() {
            return VAdicNumber::zero_to(place, abs);
        }
        let (k, cof) = place.split(&a, n as usize);
        if k as i64 >= n {
            return VAdicNumber::zero_to(place, abs);
        }
        let prec = (n - k as i64) as u32;
        VAdicNumber {
            place: place.clone(),
            val: shift + k as i64,
            unit: place.reduce(&cof, prec as usize),
            prec,
        }
    }

    /// Embedding of x ∈ k with relative precision n (exact zero for 0).
    pub fn from_ratfunc(place: &Arc<Place>, x: &RatFunc, n: u32) -> VAdicNumber {
        if x.is_zero() {
            return VAdicNumber::exact_zero(place);
        }
        let big = usize::MAX / 2;
        let (a, na) = place.split(x.num(), big);
        let (b, db) = place.split(x.den(), big);
        let m = place.pow(n as usize);
        let inv = db.modinv(&m).expect("v-free denominator");
        let unit = place.reduce(&na.mul(&inv), n as usize);
        VAdicNumber {
            place: place.clone(),
            val: a as i64 - b as i64,
            unit,
            prec: n,
        }
    }

    pub fn from_poly(place: &Arc<Place>, a: &Poly, n: u32) -> VAdicNumber {
        VAdicNumber::from_ratfunc(place, &RatFunc::from_poly(a.clone()), n)
    }

    pub fn place(&self) -> &Arc<Place> {
        &self.place
    }

    pub fn is_exact_zero(&self) -> bool {
        self.val >= EXACT_ZERO_VAL
    }

    /// Zero to the available precision (or exactly).
    pub fn is_zero(&self) -> bool {
        self.prec == 0
    }

    /// v-adic valuation (for zero to precision: the absolute precision).
    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn unit(&self) -> &Poly {
        &self.unit
    }

    /// Relative precision in powers of v (0 for zeros).
    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// The value is known modulo v^abs_prec.
    pub fn abs_prec(&self) -> i64 {
        if self.is_exact_zero() {
            EXACT_ZERO_VAL
        } else {
            self.val + self.prec as i64
        }
    }

    /// True when the value is 0 modulo v^n.
    pub fn vanishes_to(&self, n: i64) -> bool {
        self.is_zero() && self.val >= n
    }

    /// Representative polynomial v^val · unit, for val ≥ 0.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.val < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero(self.place.field()));
        }
        Some(self.place.pow(self.val as usize).mul(&self.unit))
    }

    /// Image in the residue field A/v; None when |x|_v > 1.
    pub fn residue(&self) -> Option<Poly> {
        let fq = self.place.field();
        if self.is_exact_zero() || self.val > 0 {
            return Some(Poly::zero(fq));
        }
        if self.is_zero() {
            return if self.val >= 1 {
                Some(Poly::zero(fq))
            } else {
                None
            };
        }
        if self.val < 0 {
            return None;
        }
        Some(self.place.residue(&self.unit))
    }

    fn same_place(&self, o: &VAdicNumber) {
        assert!(
            Arc::ptr_eq(&self.place, &o.place) || self.place.v == o.place.v,
            "v-adic numbers at different places"
        );
    }

    pub fn add(&self, o: &VAdicNumber) -> VAdicNumber {
        self.same_place(o);
        if self.is_exact_zero() {
            return o.clone();
        }
        if o.is_exact_zero() {
            return self.clone();
        }
        let abs = self.abs_prec().min(o.abs_prec());
        let m = self.val.min(o.val);
        if abs <= m {
            return VAdicNumber::zero_to(&self.place, abs);
        }
        let n = (abs - m) as usize;
        let mut w = Poly::zero(self.place.field());
        for x in [self, o] {
            if x.is_zero() {
                continue;
            }
            let sh = (x.val - m) as usize;
            if sh >= n {
                continue;
            }
            let t = self.place.reduce(&x.unit, n - sh);
            w = w.add(&t.mul(&self.place.pow(sh)));
        }
        VAdicNumber::from_shifted_poly(&self.place, m, &w, abs)
    }

    pub fn neg(&self) -> VAdicNumber {
        VAdicNumber {
            place: self.place.clone(),
            val: self.val,
            unit: self.unit.neg(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &VAdicNumber) -> VAdicNumber {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &VAdicNumber) -> VAdicNumber {
        self.same_place(o);
        if self.is_exact_zero() || o.is_exact_zero() {
            return VAdicNumber::exact_zero(&self.place);
        }
        if self.is_zero() || o.is_zero() {
            return VAdicNumber::zero_to(&self.place, self.val + o.val);
        }
        let n = self.prec.min(o.prec);
        let a = self.place.reduce(&self.unit, n as usize);
        let b = self.place.reduce(&o.unit, n as usize);
        VAdicNumber {
            place: self.place.clone(),
            val: self.val + o.val,
            unit: self.place.reduce(&a.mul(&b), n as usize),
            prec: n,
        }
    }

    pub fn inv(&self) -> Result<VAdicNumber> {
        if self.is_zero() {
            return Err(Error::InsufficientPrecision(
                "division by a value that is zero to precision".into(),
            ));
        }
        let m = self.place.pow(self.prec as usize);
        Ok(VAdicNumber {
            place: self.place.clone(),
            val: -self.val,
            unit: self.unit.modinv(&m)?,
            prec: self.prec,
        })
    }

    pub fn div(&self, o: &VAdicNumber) -> Result<VAdicNumber> {
        Ok(self.mul(&o.inv()?))
    }

    /// Multiplication by v^k.
    pub fn shift(&self, k: i64) -> VAdicNumber {
        if self.is_exact_zero() {
            return self.clone();
        }
        let mut x = self.clone();
        x.val += k;
        x
    }

    /// Drops digits so that the result is known modulo v^abs only.
    pub fn truncate_abs(&self, abs: i64) -> VAdicNumber {
        if abs >= self.abs_prec() {
            return self.clone();
        }
        if abs <= self.val || self.is_zero() {
            return VAdicNumber::zero_to(&self.place, abs.min(self.abs_prec()));
        }
        let prec = (abs - self.val) as u32;
        VAdicNumber {
            place: self.place.clone(),
            val: self.val,
            unit: self.place.reduce(&self.unit, prec as usize),
            prec,
        }
    }

    /// Drops digits so that at most `n` relative digits remain.
    pub fn truncate_rel(&self, n: u32) -> VAdicNumber {
        if self.is_zero() || n >= self.prec {
            return self.clone();
        }
        if n == 0 {
            return VAdicNumber::zero_to(&self.place, self.val);
        }
        VAdicNumber {
            place: self.place.clone(),
            val: self.val,
            unit: self.place.reduce(&self.unit, n as usize),
            prec: n,
        }
    }

    /// x ↦ x^{q^s}, keeping the relative precision.
    pub fn frobenius(&self, s: u32) -> VAdicNumber {
        if self.is_exact_zero() || s == 0 {
            return self.clone();
        }
        let k = (self.place.field().q() as i64).pow(s);
        if self.is_zero() {
            return VAdicNumber::zero_to(&self.place, self.val.saturating_mul(k));
        }
        let mut u = self.unit.clone();
        for _ in 0..s {
            u = self.place.reduce(&u.twist(1), self.prec as usize);
        }
        VAdicNumber {
            place: self.place.clone(),
            val: self.val * k,
            unit: u,
            prec: self.prec,
        }
    }

    pub fn pow(&self, mut n: u64) -> VAdicNumber {
        let mut acc = VAdicNumber::from_poly(
            &self.place,
            &Poly::one(self.place.field()),
            self.prec.max(1),
        );
        let mut b = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Agreement on every digit both values claim.
    pub fn agrees_with(&self, o: &VAdicNumber) -> bool {
        self.sub(o).is_zero()
    }

    /// Number of leading digits on which a and b agree, relative to the
    /// larger of the two: val(a - b) - min(val a, val b).
    pub fn agreement_digits(&self, o: &VAdicNumber) -> i64 {
        let d = self.sub(o);
        d.val.saturating_sub(self.val.min(o.val))
    }
}

impl fmt::Debug for VAdicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact_zero() {
            return write!(f, "0");
        }
        if self.is_zero() {
            return write!(f, "O(v^{})", self.val);
        }
        write!(
            f,
            "v^{} · ({}) + O(v^{})",
            self.val,
            self.unit,
            self.abs_prec()
        )
    }
}

impl Scalar for VAdicNumber {
    type Ctx = VCtx;

    fn field_of(ctx: &Self::Ctx) -> Fq {
        ctx.place.field()
    }

    fn ctx(&self) -> VCtx {
        VCtx {
            place: self.place.clone(),
            prec: self.prec.max(1),
        }
    }
    fn zero(ctx: &VCtx) -> Self {
        VAdicNumber::exact_zero(&ctx.place)
    }
    fn one(ctx: &VCtx) -> Self {
        VAdicNumber::from_poly(&ctx.place, &Poly::one(ctx.place.field()), ctx.prec)
    }
    fn from_poly(ctx: &VCtx, a: &Poly) -> Self {
        VAdicNumber::from_poly(&ctx.place, a, ctx.prec)
    }
    fn add(&self, o: &Self) -> Self {
        VAdicNumber::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        VAdicNumber::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        VAdicNumber::mul(self, o)
    }
    fn neg(&self) -> Self {
        VAdicNumber::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        VAdicNumber::inv(self)
    }
    fn frobenius(&self, s: u32) -> Self {
        VAdicNumber::frobenius(self, s)
    }
    fn is_zero(&self) -> bool {
        VAdicNumber::is_zero(self)
    }
    fn is_exact_zero(&self) -> bool {
        VAdicNumber::is_exact_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::prime(3).unwrap()
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(f3(), c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn embeddings() {
        let th = Place::new(p(&[0, 1])).unwrap();
        let x = VAdicNumber::from_ratfunc(&th, &rf(&[0, 0, 1], &[1]), 5);
        assert_eq!((x.val(), x.unit().clone()), (2, p(&[1])));
        let y = VAdicNumber::from_ratfunc(&th, &rf(&[1], &[1, 1]), 3);
        assert_eq!((y.val(), y.unit().clone()), (0, p(&[1, 2, 1])));
        let w = Place::new(p(&[1, 1])).unwrap();
        let z = VAdicNumber::from_ratfunc(&w, &rf(&[0, 2], &[1]), 4);
        assert_eq!(z.val(), 0);
        assert_eq!(w.reduce(&z.unit().sub(&p(&[0, 2])), 4), Poly::zero(f3()));
    }

    #[test]
    fn multiplication_keeps_relative_precision() {
        let th = Place::new(p(&[0, 1])).unwrap();
        let a = VAdicNumber::from_parts(&th, 0, p(&[1, 1]), 3).unwrap();
        let b = VAdicNumber::from_parts(&th, 0, p(&[1, 2]), 3).unwrap();
        let c = a.mul(&b);
        assert_eq!(c.unit(), &p(&[1, 0, 2]));
        assert_eq!(c.prec(), 3);
        let x = VAdicNumber::from_parts(&th, 1, p(&[1]), 4).unwrap();
        let y = VAdicNumber::from_parts(&th, 2, p(&[1]), 4).unwrap();
        assert_eq!(x.mul(&y).val(), 3);
    }

    #[test]
    fn addition_tracks_cancellation() {
        let th = Place::new(p(&[0, 1])).unwrap();
        let a = VAdicNumber::from_parts(&th, 0, p(&[1, 1, 1]), 3).unwrap();
        let b = VAdicNumber::from_parts(&th, 0, p(&[2, 2]), 3).unwrap();
        let s = a.add(&b);
        // 1+θ+θ^2 + 2+2θ = θ^2 mod θ^3
        assert_eq!(s.val(), 2);
        assert_eq!(s.prec(), 1);
        assert_eq!(s.abs_prec(), 3);
        let z = a.sub(&a);
        assert!(z.vanishes_to(3));
        assert!(!z.is_exact_zero());
    }

    #[test]
    fn frobenius_is_q_power() {
        let w = Place::new(p(&[1, 0, 1])).unwrap();
        let a = VAdicNumber::from_ratfunc(&w, &rf(&[1, 2, 1], &[2, 1]), 6);
        assert!(a.frobenius(2).agrees_with(&a.pow(9)));
        assert!(a
            .div(&a)
            .unwrap()
            .agrees_with(&VAdicNumber::from_poly(&w, &p(&[1]), 6)));
    }
}
