//! Elements of k with the denominator kept as a product of powers of monic
//! keys. No gcd is ever taken: the log and exp recurrences only divide by
//! θ^{q^i} - θ and its twists, so keeping those factors symbolic avoids
//! Euclid on polynomials of degree in the tens of thousands. A key that
//! divides the numerator is cancelled after each operation.

use std::fmt;

use super::fq::Fq;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct FactoredRat {
    num: Poly,
    // sorted by key, exponents positive, keys monic and nonconstant
    den: Vec<(Poly, u64)>,
}

fn key_pow(k: &Poly, e: u64) -> Poly {
    k.pow(e)
}

impl FactoredRat {
    pub fn from_poly(a: Poly) -> FactoredRat {
        FactoredRat {
            num: a,
            den: Vec::new(),
        }
    }

    pub fn zero(fq: Fq) -> FactoredRat {
        FactoredRat::from_poly(Poly::zero(fq))
    }

    pub fn one(fq: Fq) -> FactoredRat {
        FactoredRat::from_poly(Poly::one(fq))
    }

    /// num / key^e.
    pub fn with_denominator(num: Poly, key: &Poly, e: u64) -> Result<FactoredRat> {
        if key.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let fq = num.field();
        let lc_inv = fq.inv(key.lc())?;
        let num = num.scale(fq.pow(lc_inv, e));
        let mut x = FactoredRat::from_poly(num);
        if !key.is_constant() && e > 0 {
            x.den.push((key.monic(), e));
            x.normalize();
        }
        Ok(x)
    }

    pub fn field(&self) -> Fq {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(Poly, u64)] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let p = self.field().p() as u64;
        for (k, e) in self.den.iter_mut() {
            if *e == 0 || !self.num.rem(k).expect("nonzero key").is_zero() {
                continue;
            }
            // strip k^{p^j} for j from the top down; those powers stay sparse
            let mut pj = 1u64;
            let mut powers = vec![k.clone()];
            while pj * p <= *e {
                pj *= p;
                let next = powers.last().unwrap().p_power();
                powers.push(next);
            }
            for kp in powers.iter().rev() {
                while *e >= pj {
                    let (q, r) = self.num.divrem(kp).expect("nonzero key");
                    if !r.is_zero() {
                        break;
                    }
                    self.num = q;
                    *e -= pj;
                }
                pj /= p;
            }
        }
        self.den.retain(|(_, e)| *e > 0);
    }

    fn merge_max(&self, o: &FactoredRat) -> Vec<(Poly, u64)> {
        let mut out: Vec<(Poly, u64)> = self.den.clone();
        for (k, e) in &o.den {
            match out.binary_search_by(|(k2, _)| k2.cmp(k)) {
                Ok(i) => out[i].1 = out[i].1.max(*e),
                Err(i) => out.insert(i, (k.clone(), *e)),
            }
        }
        out
    }

    fn lift_to(&self, den: &[(Poly, u64)]) -> Poly {
        let mut n = self.num.clone();
        for (k, e) in den {
            let have = self
                .den
                .binary_search_by(|(k2, _)| k2.cmp(k))
                .map(|i| self.den[i].1)
                .unwrap_or(0);
            if *e > have {
                n = n.mul(&key_pow(k, e - have));
            }
        }
        n
    }

    pub fn add(&self, o: &FactoredRat) -> FactoredRat {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let den = self.merge_max(o);
        let num = self.lift_to(&den).add(&o.lift_to(&den));
        let mut x = FactoredRat { num, den };
        x.normalize();
        x
    }

    pub fn neg(&self) -> FactoredRat {
        FactoredRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &FactoredRat) -> FactoredRat {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &FactoredRat) -> FactoredRat {
        if self.is_zero() || o.is_zero() {
            return FactoredRat::zero(self.field());
        }
        let mut den = self.den.clone();
        for (k, e) in &o.den {
            match den.binary_search_by(|(k2, _)| k2.cmp(k)) {
                Ok(i) => den[i].1 += e,
                Err(i) => den.insert(i, (k.clone(), *e)),
            }
        }
        let mut x = FactoredRat {
            num: self.num.mul(&o.num),
            den,
        };
        if !self.den.is_empty() || !o.den.is_empty() {
            x.normalize();
        }
        x
    }

    pub fn inv(&self) -> Result<FactoredRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut num = Poly::one(self.field());
        for (k, e) in &self.den {
            num = num.mul(&key_pow(k, *e));
        }
        FactoredRat::with_denominator(num, &self.num, 1)
    }

    /// Keys are kept and exponents scale: (k^e)^{q^s} = k^{e q^s}.
    pub fn twist(&self, s: u32) -> FactoredRat {
        let qs = (self.field().q() as u64).pow(s);
        FactoredRat {
            num: self.num.twist(s),
            den: self.den.iter().map(|(k, e)| (k.clone(), e * qs)).collect(),
        }
    }

    /// ord_v of the value; None for zero.
    pub fn ord(&self, v: &Poly) -> Option<i64> {
        let mut o = self.num.ord(v)? as i64;
        for (k, e) in &self.den {
            o -= *e as i64 * k.ord(v).unwrap() as i64;
        }
        Some(o)
    }

    /// Degree at ∞ (deg num - deg den); None for zero.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let d: i64 = self.den.iter().map(|(k, e)| k.deg() * *e as i64).sum();
        Some(self.num.deg() - d)
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let mut den = Poly::one(self.field());
        for (k, e) in &self.den {
            den = den.mul(&key_pow(k, *e));
        }
        RatFunc::new(self.num.clone(), den).expect("nonzero denominator")
    }

    pub fn from_ratfunc(x: &RatFunc) -> FactoredRat {
        if x.den().is_one() {
            return FactoredRat::from_poly(x.num().clone());
        }
        FactoredRat::with_denominator(x.num().clone(), x.den(), 1).expect("nonzero denominator")
    }
}

impl PartialEq for FactoredRat {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Debug for FactoredRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})", self.num)?;
        for (k, e) in &self.den {
            write!(f, " / ({:?})^{}", k, e)?;
        }
        Ok(())
    }
}

impl Scalar for FactoredRat {
    type Ctx = Fq;

    fn field_of(ctx: &Self::Ctx) -> Fq {
        *ctx
    }

    fn ctx(&self) -> Fq {
        self.field()
    }
    fn zero(ctx: &Fq) -> Self {
        FactoredRat::zero(*ctx)
    }
    fn one(ctx: &Fq) -> Self {
        FactoredRat::one(*ctx)
    }
    fn from_poly(_: &Fq, a: &Poly) -> Self {
        FactoredRat::from_poly(a.clone())
    }
    fn add(&self, o: &Self) -> Self {
        FactoredRat::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        FactoredRat::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FactoredRat::mul(self, o)
    }
    fn neg(&self) -> Self {
        FactoredRat::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        FactoredRat::inv(self)
    }
    fn frobenius(&self, s: u32) -> Self {
        self.twist(s)
    }
    fn is_zero(&self) -> bool {
        FactoredRat::is_zero(self)
    }
}
