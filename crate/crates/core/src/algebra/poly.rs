//! Dense univariate polynomials over F_q.
//!
//! The same type serves as A = F_q[θ] and as F_q[t]; which variable is meant
//! is a matter of context. Coefficients are little-endian and canonical (no
//! trailing zeros), so structural equality is ring equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fq::{Fe, Fq};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Poly {
    fq: Fq,
    c: Vec<Fe>,
}

const KARATSUBA_CUTOFF: usize = 48;

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.fq == other.fq && self.c == other.c
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    /// Degree first, then coefficients from the top; only used to keep
    /// factored denominators in a canonical order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

fn trim(v: &mut Vec<Fe>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn nonzero_terms(v: &[Fe]) -> Vec<(usize, Fe)> {
    v.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect()
}

// Schoolbook product over the prime field with delayed reduction.
fn mul_sparse_prime(p: u32, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let ta = nonzero_terms(a);
    let tb = nonzero_terms(b);
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    let pm = (p as u64 - 1).max(1);
    let limit = (u64::MAX / (pm * pm)).max(1) as usize;
    let (outer, inner) = if ta.len() <= tb.len() {
        (&ta, &tb)
    } else {
        (&tb, &ta)
    };
    if outer.len() < limit {
        for &(i, x) in outer.iter() {
            let x = x as u64;
            for &(j, y) in inner.iter() {
                acc[i + j] += x * y as u64;
            }
        }
        return acc.into_iter().map(|c| (c % p as u64) as Fe).collect();
    }
    for (n, &(i, x)) in outer.iter().enumerate() {
        for &(j, y) in inner.iter() {
            acc[i + j] += x as u64 * y as u64;
        }
        if n % limit == limit - 1 {
            for c in acc.iter_mut() {
                *c %= p as u64;
            }
        }
    }
    acc.into_iter().map(|c| (c % p as u64) as Fe).collect()
}

fn mul_sparse_general(fq: Fq, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let ta = nonzero_terms(a);
    let tb = nonzero_terms(b);
    let mut out = vec![0; a.len() + b.len() - 1];
    for &(i, x) in &ta {
        for &(j, y) in &tb {
            out[i + j] = fq.add(out[i + j], fq.mul(x, y));
        }
    }
    out
}

fn add_into(p: u32, dst: &mut [Fe], src: &[Fe]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        let t = *d + s;
        *d = if t >= p { t - p } else { t };
    }
}

fn sub_into(p: u32, dst: &mut [Fe], src: &[Fe]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = if *d >= s { *d - s } else { *d + p - s };
    }
}

// Karatsuba for equal-length inputs over a prime field; returns 2n-1 coefficients.
fn karatsuba(p: u32, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let n = a.len();
    debug_assert_eq!(n, b.len());
    if n <= KARATSUBA_CUTOFF {
        if n == 0 {
            return Vec::new();
        }
        let mut acc = vec![0u64; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += x as u64 * y as u64;
            }
        }
        return acc.into_iter().map(|c| (c % p as u64) as Fe).collect();
    }
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let z0 = karatsuba(p, a0, b0);
    let z2 = karatsuba(p, &a1[..n - h], &b1[..n - h]);
    let mut sa = a1.to_vec();
    add_into(p, &mut sa, a0);
    let mut sb = b1.to_vec();
    add_into(p, &mut sb, b0);
    let mut z1 = karatsuba(p, &sa, &sb);
    sub_into(p, &mut z1, &z0);
    sub_into(p, &mut z1, &z2);
    let mut out = vec![0; 2 * n - 1];
    add_into(p, &mut out[..z0.len()], &z0);
    add_into(p, &mut out[h..h + z1.len()], &z1);
    add_into(p, &mut out[2 * h..2 * h + z2.len()], &z2);
    out
}

fn mul_dense_prime(p: u32, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let m = short.len();
    let mut out = vec![0; a.len() + b.len() - 1];
    let mut start = 0;
    while start < long.len() {
        let end = (start + m).min(long.len());
        let mut chunk = long[start..end].to_vec();
        chunk.resize(m, 0);
        let prod = karatsuba(p, &chunk, short);
        let usable = (end - start) + m - 1;
        add_into(p, &mut out[start..start + usable], &prod[..usable]);
        start = end;
    }
    out
}

fn mul_coeffs(fq: Fq, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if !fq.is_prime_field() {
        return mul_sparse_general(fq, a, b);
    }
    let p = fq.p();
    let m = a.len().min(b.len());
    if m <= KARATSUBA_CUTOFF {
        return mul_sparse_prime(p, a, b);
    }
    let na = a.iter().filter(|&&c| c != 0).count() as f64;
    let nb = b.iter().filter(|&&c| c != 0).count() as f64;
    let n = a.len().max(b.len()) as f64;
    let kara_cost = 4.0 * (n / m as f64) * (m as f64).powf(1.585);
    if na * nb <= kara_cost {
        mul_sparse_prime(p, a, b)
    } else {
        mul_dense_prime(p, a, b)
    }
}

impl Poly {
    pub fn zero(fq: Fq) -> Poly {
        Poly { fq, c: Vec::new() }
    }

    pub fn one(fq: Fq) -> Poly {
        Poly::constant(fq, 1)
    }

    pub fn constant(fq: Fq, c: Fe) -> Poly {
        Poly::from_coeffs(fq, vec![c])
    }

    /// The variable θ (or t).
    pub fn x(fq: Fq) -> Poly {
        Poly::monomial(fq, 1, 1)
    }

    pub fn monomial(fq: Fq, c: Fe, n: usize) -> Poly {
        if c == 0 {
            return Poly::zero(fq);
        }
        let mut v = vec![0; n + 1];
        v[n] = c;
        Poly { fq, c: v }
    }

    pub fn from_coeffs(fq: Fq, mut c: Vec<Fe>) -> Poly {
        trim(&mut c);
        Poly { fq, c }
    }

    /// Coefficients taken in the prime subfield, little-endian.
    pub fn from_ints(fq: Fq, c: &[i64]) -> Poly {
        Poly::from_coeffs(fq, c.iter().map(|&n| fq.from_int(n)).collect())
    }

    pub fn field(&self) -> Fq {
        self.fq
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == 1
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the convention deg 0 = -1.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lc(&self) -> Fe {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn nnz(&self) -> usize {
        self.c.iter().filter(|&&c| c != 0).count()
    }

    /// Order of vanishing at θ = 0.
    pub fn low_order(&self) -> Option<usize> {
        self.c.iter().position(|&c| c != 0)
    }

    fn check(&self, other: &Poly) {
        assert!(self.fq == other.fq, "polynomials over different fields");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check(other);
        let (long, short) = if self.c.len() >= other.c.len() {
            (&self.c, &other.c)
        } else {
            (&other.c, &self.c)
        };
        let mut c = long.clone();
        if self.fq.is_prime_field() {
            add_into(self.fq.p(), &mut c, short);
        } else {
            for (d, &s) in c.iter_mut().zip(short.iter()) {
                *d = self.fq.add(*d, s);
            }
        }
        Poly::from_coeffs(self.fq, c)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            fq: self.fq,
            c: self.c.iter().map(|&x| self.fq.neg(x)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check(other);
        let n = self.c.len().max(other.c.len());
        let mut c = self.c.clone();
        c.resize(n, 0);
        if self.fq.is_prime_field() {
            sub_into(self.fq.p(), &mut c, &other.c);
        } else {
            for (d, &s) in c.iter_mut().zip(other.c.iter()) {
                *d = self.fq.sub(*d, s);
            }
        }
        Poly::from_coeffs(self.fq, c)
    }

    pub fn scale(&self, s: Fe) -> Poly {
        if s == 0 {
            return Poly::zero(self.fq);
        }
        Poly {
            fq: self.fq,
            c: self.c.iter().map(|&x| self.fq.mul(x, s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check(other);
        Poly::from_coeffs(self.fq, mul_coeffs(self.fq, &self.c, &other.c))
    }

    /// Multiplication by θ^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        Poly { fq: self.fq, c }
    }

    /// Drops all terms of degree ≥ n.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::from_coeffs(self.fq, self.c[..self.c.len().min(n)].to_vec())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.fq.inv(self.lc()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let fq = self.fq;
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return Ok((Poly::zero(fq), self.clone()));
        }
        let lc_inv = fq.inv(d.lc())?;
        let mut r = self.c.clone();
        let mut quot = vec![0; r.len() - dd];
        let terms: Vec<(usize, Fe)> = nonzero_terms(&d.c[..dd]);
        if fq.is_prime_field() {
            let p = fq.p() as u64;
            for i in (dd..r.len()).rev() {
                let top = r[i];
                if top == 0 {
                    continue;
                }
                let c = (top as u64 * lc_inv as u64 % p) as Fe;
                quot[i - dd] = c;
                r[i] = 0;
                let neg_c = (p - c as u64) % p;
                for &(j, dj) in &terms {
                    let k = i - dd + j;
                    r[k] = ((r[k] as u64 + neg_c * dj as u64) % p) as Fe;
                }
            }
        } else {
            for i in (dd..r.len()).rev() {
                let top = r[i];
                if top == 0 {
                    continue;
                }
                let c = fq.mul(top, lc_inv);
                quot[i - dd] = c;
                r[i] = 0;
                for &(j, dj) in &terms {
                    let k = i - dd + j;
                    r[k] = fq.sub(r[k], fq.mul(c, dj));
                }
            }
        }
        r.truncate(dd);
        Ok((Poly::from_coeffs(fq, quot), Poly::from_coeffs(fq, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Quotient of an exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s·self + t·other = g, g monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let fq = self.fq;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(fq), Poly::zero(fq));
        let (mut t0, mut t1) = (Poly::zero(fq), Poly::one(fq));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = fq.inv(r0.lc()).expect("nonzero");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Inverse of self modulo m.
    pub fn modinv(&self, m: &Poly) -> Result<Poly> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = self.rem(m)?;
        let (g, s, _) = a.xgcd(m);
        if !g.is_one() {
            return Err(Error::NotInvertible(format!(
                "gcd with modulus has degree {}",
                g.deg()
            )));
        }
        s.rem(m)
    }

    /// self^p: coefficients go through the absolute Frobenius and exponents scale by p.
    pub fn p_power(&self) -> Poly {
        let p = self.fq.p() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; (self.c.len() - 1) * p + 1];
        for (i, &x) in self.c.iter().enumerate() {
            c[i * p] = self.fq.frob_p(x);
        }
        Poly { fq: self.fq, c }
    }

    /// The Frobenius twist self^{(s)} = self^{q^s}; coefficients lie in F_q so
    /// only exponents move.
    pub fn twist(&self, s: u32) -> Poly {
        if self.is_zero() || s == 0 {
            return self.clone();
        }
        let k = (self.fq.q() as usize).pow(s);
        let mut c = vec![0; (self.c.len() - 1) * k + 1];
        for (i, &x) in self.c.iter().enumerate() {
            c[i * k] = x;
        }
        Poly { fq: self.fq, c }
    }

    /// Signed twist: s < 0 is only meaningful on constants.
    pub fn twist_signed(&self, s: i64) -> Result<Poly> {
        if s >= 0 {
            return Ok(self.twist(s as u32));
        }
        if self.is_constant() {
            return Ok(self.clone());
        }
        Err(Error::NegativeTwist)
    }

    /// Power via base-p digits of the exponent, so sparse inputs stay sparse.
    pub fn pow(&self, mut n: u64) -> Poly {
        let p = self.fq.p() as u64;
        let mut acc = Poly::one(self.fq);
        let mut base = self.clone();
        while n > 0 {
            let digit = n % p;
            for _ in 0..digit {
                acc = acc.mul(&base);
            }
            n /= p;
            if n > 0 {
                base = base.p_power();
            }
        }
        acc
    }

    pub fn pow_mod(&self, mut n: u64, m: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(self.fq).rem(m)?;
        let mut base = self.rem(m)?;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            n >>= 1;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: Fe) -> Fe {
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &c| self.fq.add(self.fq.mul(acc, x), c))
    }

    /// Horner evaluation at a polynomial argument.
    pub fn compose(&self, x: &Poly) -> Poly {
        self.c.iter().rev().fold(Poly::zero(self.fq), |acc, &c| {
            acc.mul(x).add(&Poly::constant(self.fq, c))
        })
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| self.fq.mul(self.fq.from_int(i as i64), x))
            .collect();
        Poly::from_coeffs(self.fq, c)
    }

    /// (k, rest) with self = d^k · rest and d ∤ rest. Panics on zero input.
    pub fn split_power(&self, d: &Poly) -> (u64, Poly) {
        assert!(!self.is_zero(), "valuation of zero");
        assert!(!d.is_constant(), "valuation needs a nonconstant divisor");
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(d).expect("nonzero divisor");
            if !r.is_zero() {
                return (k, cur);
            }
            cur = q;
            k += 1;
        }
    }

    /// Valuation at the prime d, with 0 ↦ None.
    pub fn ord(&self, d: &Poly) -> Option<u64> {
        if self.is_zero() {
            None
        } else {
            Some(self.split_power(d).0)
        }
    }

    /// All polynomials of degree < n, in counting order of their coefficient digits.
    pub fn all_below(fq: Fq, n: usize) -> impl Iterator<Item = Poly> {
        let q = fq.q() as u64;
        let total = q.checked_pow(n as u32).expect("enumeration too large");
        (0..total).map(move |mut k| {
            let mut c = Vec::with_capacity(n);
            for _ in 0..n {
                c.push((k % q) as Fe);
                k /= q;
            }
            Poly::from_coeffs(fq, c)
        })
    }

    /// All monic polynomials of exact degree n.
    pub fn all_monic(fq: Fq, n: usize) -> impl Iterator<Item = Poly> {
        Poly::all_below(fq, n).map(move |low| low.add(&Poly::monomial(fq, 1, n)))
    }

    /// Irreducibility over F_q by trial division with monic polynomials.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        for d in 1..=n / 2 {
            for f in Poly::all_monic(self.fq, d) {
                if self.rem(&f).expect("nonzero").is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Factorization into monic irreducibles by trial division, with the
    /// leading coefficient returned separately. Desk scale only.
    pub fn factor(&self) -> (Fe, Vec<(Poly, u32)>) {
        assert!(!self.is_zero(), "factoring zero");
        let mut rest = self.monic();
        let mut out = Vec::new();
        let mut d = 1;
        while rest.deg() >= 2 * d as i64 {
            for f in Poly::all_monic(self.fq, d) {
                let (k, r) = rest.split_power(&f);
                if k > 0 {
                    out.push((f, k as u32));
                    rest = r;
                }
            }
            d += 1;
        }
        if rest.deg() > 0 {
            out.push((rest, 1));
        }
        out.sort();
        (self.lc(), out)
    }

    /// Renders with the given variable name, highest degree first.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let fq = self.fq;
        let coef = |c: Fe| -> String {
            if fq.is_prime_field() {
                c.to_string()
            } else {
                fmt_fq(fq, c)
            }
        };
        let mut parts = Vec::new();
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let s = if mono.is_empty() {
                coef(c)
            } else if c == 1 {
                mono
            } else {
                format!("{}*{}", coef(c), mono)
            };
            parts.push(s);
        }
        parts.join(" + ")
    }
}

/// An element of F_q as a polynomial in the generator "a" over F_p.
pub fn fmt_fq(fq: Fq, c: Fe) -> String {
    if fq.is_prime_field() {
        return c.to_string();
    }
    let d = fq.digits(c);
    let parts: Vec<String> = d
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| match (i, x) {
            (0, _) => x.to_string(),
            (1, 1) => "a".into(),
            (1, _) => format!("{x}*a"),
            (_, 1) => format!("a^{i}"),
            _ => format!("{x}*a^{i}"),
        })
        .collect();
    match parts.len() {
        0 => "0".into(),
        1 => parts[0].clone(),
        _ => format!("({})", parts.join(" + ")),
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("θ"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("theta"))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                Poly::$m(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
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

    #[test]
    fn multiply_over_f3() {
        // (θ+1)(θ+2) = θ^2 + 3θ + 2 = θ^2 + 2 over F_3
        assert_eq!(p(&[1, 1]).mul(&p(&[2, 1])), p(&[2, 0, 1]));
        let a = p(&[1, 2, 0, 1]);
        assert_eq!(a.mul(&Poly::one(f3())), a);
    }

    #[test]
    fn modinv_of_one_plus_theta_mod_theta_cubed() {
        let inv = p(&[1, 1]).modinv(&p(&[0, 0, 0, 1])).unwrap();
        assert_eq!(inv, p(&[1, 2, 1]));
        assert!(p(&[0, 1]).modinv(&p(&[0, 0, 1])).is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            p(&[1]).divrem(&Poly::zero(f3())),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn twist_is_q_power() {
        assert_eq!(p(&[1, 1]).twist(1), p(&[1, 0, 0, 1]));
        assert_eq!(p(&[0, 1]).twist(1), p(&[0, 0, 0, 1]));
        let a = p(&[2, 1, 1]);
        assert_eq!(a.twist(2), a.pow(9));
        assert!(a.twist_signed(-1).is_err());
        assert_eq!(p(&[2]).twist_signed(-3).unwrap(), p(&[2]));
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let fq = Fq::prime(5).unwrap();
        let a: Vec<Fe> = (0..301).map(|i| (i * 7 + 3) % 5).collect();
        let b: Vec<Fe> = (0..177).map(|i| (i * i + 1) % 5).collect();
        let fast = mul_dense_prime(5, &a, &b);
        let slow = mul_sparse_prime(5, &a, &b);
        assert_eq!(fast, slow);
        let x = Poly::from_coeffs(fq, a);
        let y = Poly::from_coeffs(fq, b);
        assert_eq!(x.mul(&y).divrem(&y).unwrap(), (x, Poly::zero(fq)));
    }

    #[test]
    fn gcd_and_xgcd() {
        let a = p(&[1, 1]).mul(&p(&[1, 0, 1]));
        let b = p(&[1, 1]).mul(&p(&[1, 2]));
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn valuation_at_a_prime() {
        let v = p(&[1, 1]);
        let x = v.pow(3).mul(&p(&[0, 1]));
        assert_eq!(x.ord(&v), Some(3));
        assert_eq!(Poly::zero(f3()).ord(&v), None);
    }

    #[test]
    fn extension_field_coefficients() {
        let f9 = Fq::new(3, 2, None).unwrap();
        let a = Poly::from_coeffs(f9, vec![4, 1]);
        let b = Poly::from_coeffs(f9, vec![7, 0, 2]);
        let (q, r) = a.mul(&b).add(&Poly::constant(f9, 5)).divrem(&b).unwrap();
        assert_eq!(q, a);
        assert_eq!(r, Poly::constant(f9, 5));
        // twist by q still fixes coefficients in F_9
        assert_eq!(a.twist(1), a.pow(9));
    }
}
