//! Elements of k = F_q(θ), kept reduced with a monic denominator.

use std::fmt;

use super::fq::{Fe, Fq};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> RatFunc {
        let fq = num.field();
        if num.is_zero() {
            return RatFunc::zero(fq);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        if !den.is_monic() {
            let inv = fq.inv(den.lc()).unwrap();
            num = num.scale(inv);
            den = den.scale(inv);
        }
        RatFunc { num, den }
    }

    pub fn zero(fq: Fq) -> RatFunc {
        RatFunc {
            num: Poly::zero(fq),
            den: Poly::one(fq),
        }
    }

    pub fn one(fq: Fq) -> RatFunc {
        RatFunc::from_poly(Poly::one(fq))
    }

    pub fn constant(fq: Fq, c: Fe) -> RatFunc {
        RatFunc::from_poly(Poly::constant(fq, c))
    }

    pub fn from_poly(a: Poly) -> RatFunc {
        let den = Poly::one(a.field());
        RatFunc { num: a, den }
    }

    pub fn field(&self) -> Fq {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// deg num - deg den; None for zero.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.num.deg() - self.den.deg())
        }
    }

    /// ord_v(num) - ord_v(den); None for zero.
    pub fn ord(&self, v: &Poly) -> Option<i64> {
        let a = self.num.ord(v)? as i64;
        Some(a - self.den.ord(v).unwrap() as i64)
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::reduce(self.num.add(&o.num), self.den.clone());
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RatFunc::reduce(num, self.den.mul(&o.den))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.field());
        }
        // cross-cancel first so the gcds stay small
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = o.den.div_exact(&g1).unwrap();
        let b = o.num.div_exact(&g2).unwrap();
        let c = self.den.div_exact(&g2).unwrap();
        let mut num = a.mul(&b);
        let mut den = c.mul(&d);
        if !den.is_monic() {
            let inv = self.field().inv(den.lc()).unwrap();
            num = num.scale(inv);
            den = den.scale(inv);
        }
        RatFunc { num, den }
    }

    pub fn scale(&self, c: Fe) -> RatFunc {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, n: u64) -> RatFunc {
        RatFunc {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    /// Frobenius twist x ↦ x^{q^s}; stays reduced since twisting is injective on A.
    pub fn twist(&self, s: u32) -> RatFunc {
        RatFunc {
            num: self.num.twist(s),
            den: self.den.twist(s),
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(Fq::prime(3).unwrap(), c)
    }

    #[test]
    fn reduced_with_monic_denominator() {
        let x = RatFunc::new(p(&[2, 2]), p(&[2, 0, 2])).unwrap();
        // (2θ+2)/(2θ^2+2) = (θ+1)/(θ^2+1)
        assert_eq!(x.num(), &p(&[1, 1]));
        assert_eq!(x.den(), &p(&[1, 0, 1]));
        let y = RatFunc::new(p(&[2, 1]), p(&[1, 0, 2])).unwrap();
        // θ^2 - 1 = (θ+1)(θ-1); (θ-1)/(2(θ^2-1)) = 2/(θ+1)
        assert_eq!(y, RatFunc::new(p(&[2]), p(&[1, 1])).unwrap());
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(p(&[1]), p(&[2, 1])).unwrap();
        let b = RatFunc::from_poly(p(&[0, 1]));
        let s = a.add(&b).sub(&b);
        assert_eq!(s, a);
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert_eq!(a.twist(1), a.pow(3));
        assert!(RatFunc::zero(a.field()).inv().is_err());
    }

    #[test]
    fn valuations() {
        let a = RatFunc::new(p(&[0, 0, 1]), p(&[1, 1])).unwrap();
        assert_eq!(a.ord(&p(&[0, 1])), Some(2));
        assert_eq!(a.ord(&p(&[1, 1])), Some(-1));
        assert_eq!(a.degree(), Some(1));
    }
}
