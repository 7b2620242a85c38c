//! The field interface shared by exact and truncated scalars, so matrix,
//! twisted-polynomial, and recurrence code is written once.

use std::fmt::Debug;

use super::fq::{Fe, Fq};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::Result;

pub trait Scalar: Clone + Debug + Send + Sync + Sized {
    /// Whatever is needed to build constants: the field, or a place and precision.
    type Ctx: Clone + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn field_of(ctx: &Self::Ctx) -> Fq;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    /// Image of an element of A.
    fn from_poly(ctx: &Self::Ctx, a: &Poly) -> Self;

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    /// x ↦ x^{q^s}.
    fn frobenius(&self, s: u32) -> Self;

    /// Zero, or zero to the available precision.
    fn is_zero(&self) -> bool;

    /// Provably zero; used to skip work.
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }

    fn from_fq(ctx: &Self::Ctx, fq: Fq, c: Fe) -> Self {
        Self::from_poly(ctx, &Poly::constant(fq, c))
    }

    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }
}

impl Scalar for RatFunc {
    type Ctx = Fq;

    fn field_of(ctx: &Self::Ctx) -> Fq {
        *ctx
    }

    fn ctx(&self) -> Fq {
        self.field()
    }
    fn zero(ctx: &Fq) -> Self {
        RatFunc::zero(*ctx)
    }
    fn one(ctx: &Fq) -> Self {
        RatFunc::one(*ctx)
    }
    fn from_poly(_: &Fq, a: &Poly) -> Self {
        RatFunc::from_poly(a.clone())
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        RatFunc::inv(self)
    }
    fn frobenius(&self, s: u32) -> Self {
        self.twist(s)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}
