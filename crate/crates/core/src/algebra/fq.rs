//! The finite field F_q, q = p^e, as F_p[α]/(f) for an explicit irreducible f.
//!
//! Elements are `u32` values whose base-p digits are the coordinates of the
//! element in the power basis 1, α, …, α^{e-1}. Field descriptions are
//! interned, so an [`Fq`] handle is a `Copy` pointer and two handles compare
//! equal exactly when they describe the same (p, e, f).

use std::fmt;
use std::sync::Mutex;

use crate::error::{Error, Result};

/// An element of F_q in digit encoding.
pub type Fe = u32;

/// Largest field size accepted by [`Fq::new`].
pub const MAX_Q: u64 = 1 << 20;

const TABLE_Q: u32 = 256;
const INV_TABLE_Q: u32 = 1 << 16;

pub struct FqData {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    mul_table: Option<Vec<u32>>,
    inv_table: Option<Vec<u32>>,
}

/// Handle to an interned finite field.
#[derive(Clone, Copy)]
pub struct Fq(&'static FqData);

static REGISTRY: Mutex<Vec<&'static FqData>> = Mutex::new(Vec::new());

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over F_p as little-endian digit vectors; only used while
// validating and multiplying in the field description itself.
fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let lc_inv = fp_pow(m[dm], p - 2, p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = (r[top] as u64 * lc_inv as u64 % p as u64) as u32;
        let shift = top - dm;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c as u64 * mi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_pow(mut b: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = b as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    b = acc as u32;
    b
}

fn fp_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    // trial division by every monic polynomial of degree 1..=deg/2
    for k in 1..=deg / 2 {
        let count = (p as u64).pow(k as u32);
        for idx in 0..count {
            let mut f = vec![0u32; k + 1];
            let mut x = idx;
            for c in f.iter_mut().take(k) {
                *c = (x % p as u64) as u32;
                x /= p as u64;
            }
            f[k] = 1;
            if fp_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(e);
    for idx in 0..count {
        let mut f = vec![0u32; e as usize + 1];
        let mut x = idx;
        for c in f.iter_mut().take(e as usize) {
            *c = (x % p as u64) as u32;
            x /= p as u64;
        }
        f[e as usize] = 1;
        if fp_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FqData {
    fn mul_any(&self, a: u32, b: u32) -> u32 {
        match &self.mul_table {
            Some(t) => t[(a * self.q + b) as usize],
            None => self.mul_raw(a, b),
        }
    }

    fn pow_raw(&self, a: u32, mut n: u64) -> u32 {
        let (mut acc, mut base) = (1u32, a);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_any(acc, base);
            }
            base = self.mul_any(base, base);
            n >>= 1;
        }
        acc
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let p = self.p;
        let e = self.e as usize;
        let da = digits_of(a, p, e);
        let db = digits_of(b, p, e);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] += x as u64 * y as u64;
            }
        }
        let prod: Vec<u32> = prod.iter().map(|&c| (c % p as u64) as u32).collect();
        let r = fp_rem(&prod, &self.modulus, p);
        from_digits_of(&r, p)
    }
}

fn digits_of(mut a: u32, p: u32, e: usize) -> Vec<u32> {
    let mut d = vec![0u32; e];
    for c in d.iter_mut() {
        *c = a % p;
        a /= p;
    }
    d
}

fn from_digits_of(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

impl Fq {
    /// Builds (or looks up) F_{p^e}. With `modulus = None` the first monic
    /// irreducible polynomial of degree e in lexicographic order is used.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_Q)
            .ok_or_else(|| Error::InvalidField(format!("q = {p}^{e} exceeds {MAX_Q}")))?;
        let modulus = match modulus {
            Some(mut m) => {
                fp_trim(&mut m);
                if m.len() != e as usize + 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus must have degree {e}, got {}",
                        m.len() as i64 - 1
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField(
                        "modulus coefficient out of range".into(),
                    ));
                }
                if m[e as usize] != 1 {
                    return Err(Error::InvalidField("modulus must be monic".into()));
                }
                if !fp_irreducible(&m, p) {
                    return Err(Error::NotIrreducible(format!("{m:?} over F_{p}")));
                }
                m
            }
            None => default_modulus(p, e),
        };
        let mut reg = REGISTRY.lock().expect("field registry poisoned");
        if let Some(found) = reg
            .iter()
            .find(|d| d.p == p && d.e == e && d.modulus == modulus)
        {
            return Ok(Fq(found));
        }
        let q = q as u32;
        let mut data = FqData {
            p,
            e,
            q,
            modulus,
            mul_table: None,
            inv_table: None,
        };
        if e > 1 && q <= TABLE_Q {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = data.mul_raw(a, b);
                }
            }
            data.mul_table = Some(t);
        }
        if q <= INV_TABLE_Q {
            let mut inv = vec![0u32; q as usize];
            for (a, slot) in inv.iter_mut().enumerate().skip(1) {
                *slot = data.pow_raw(a as u32, q as u64 - 2);
            }
            data.inv_table = Some(inv);
        }
        let leaked: &'static FqData = Box::leak(Box::new(data));
        let fq = Fq(leaked);
        reg.push(leaked);
        Ok(fq)
    }

    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Fq> {
        Fq::new(p, 1, None)
    }

    pub fn p(self) -> u32 {
        self.0.p
    }

    pub fn e(self) -> u32 {
        self.0.e
    }

    pub fn q(self) -> u32 {
        self.0.q
    }

    pub fn modulus(self) -> &'static [u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(self) -> bool {
        self.0.e == 1
    }

    #[inline]
    pub fn zero(self) -> Fe {
        0
    }

    #[inline]
    pub fn one(self) -> Fe {
        1
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(self, n: i64) -> Fe {
        n.rem_euclid(self.0.p as i64) as Fe
    }

    /// Base-p digits (power-basis coordinates) of `a`.
    pub fn digits(self, a: Fe) -> Vec<u32> {
        digits_of(a, self.0.p, self.0.e as usize)
    }

    pub fn from_digits(self, d: &[u32]) -> Result<Fe> {
        if d.len() != self.0.e as usize || d.iter().any(|&c| c >= self.0.p) {
            return Err(Error::Parse(format!(
                "F_q element must be {} digits in [0,{})",
                self.0.e, self.0.p
            )));
        }
        Ok(from_digits_of(d, self.0.p))
    }

    #[inline]
    pub fn add(self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if self.0.e == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut x, mut y, mut out, mut place) = (a, b, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn neg(self, a: Fe) -> Fe {
        let p = self.0.p;
        if self.0.e == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let (mut x, mut out, mut place) = (a, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn sub(self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: Fe, b: Fe) -> Fe {
        if self.0.e == 1 {
            return ((a as u64 * b as u64) % self.0.p as u64) as Fe;
        }
        if let Some(t) = &self.0.mul_table {
            return t[(a * self.0.q + b) as usize];
        }
        self.0.mul_raw(a, b)
    }

    pub fn pow(self, a: Fe, mut n: u64) -> Fe {
        let mut acc = self.one();
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(self, a: Fe) -> Result<Fe> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.inv_table {
            return Ok(t[a as usize]);
        }
        Ok(self.pow(a, self.0.q as u64 - 2))
    }

    /// a^p, the absolute Frobenius of F_q.
    pub fn frob_p(self, a: Fe) -> Fe {
        if self.0.e == 1 {
            a
        } else {
            self.pow(a, self.0.p as u64)
        }
    }

    /// All elements in encoding order.
    pub fn elements(self) -> impl Iterator<Item = Fe> {
        0..self.0.q
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Fq) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}[{:?}]", self.0.p, self.0.e, self.0.modulus)
        }
    }
}
