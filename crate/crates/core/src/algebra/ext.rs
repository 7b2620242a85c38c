//! Finite extensions K = k[x]/(m) in the power basis 1, x, …, x^{n-1}.

use std::fmt;
use std::sync::Arc;

use super::fq::Fq;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense polynomials over k, little-endian, trimmed.
type KPoly = Vec<RatFunc>;

fn kp_trim(a: &mut KPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn kp_sub(a: &[RatFunc], b: &[RatFunc], fq: Fq) -> KPoly {
    let n = a.len().max(b.len());
    let z = RatFunc::zero(fq);
    let mut out: KPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z).sub(b.get(i).unwrap_or(&z)))
        .collect();
    kp_trim(&mut out);
    out
}

fn kp_mul(a: &[RatFunc], b: &[RatFunc], fq: Fq) -> KPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![RatFunc::zero(fq); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    kp_trim(&mut out);
    out
}

fn kp_divrem(a: &[RatFunc], b: &[RatFunc], fq: Fq) -> (KPoly, KPoly) {
    let db = b.len() - 1;
    let mut r: KPoly = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lc_inv = b[db].inv().expect("trimmed divisor");
    let mut q = vec![RatFunc::zero(fq); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = r[i].mul(&lc_inv);
        for (j, bj) in b.iter().enumerate() {
            r[i - db + j] = r[i - db + j].sub(&c.mul(bj));
        }
        q[i - db] = c;
    }
    r.truncate(db);
    kp_trim(&mut r);
    kp_trim(&mut q);
    (q, r)
}

fn kp_eval(a: &[RatFunc], x: &RatFunc, fq: Fq) -> RatFunc {
    a.iter()
        .rev()
        .fold(RatFunc::zero(fq), |acc, c| acc.mul(x).add(c))
}

/// Content-free form over A: the coefficients times the lcm of denominators.
fn integral_form(m: &[RatFunc]) -> Vec<Poly> {
    let fq = m[0].field();
    let mut l = Poly::one(fq);
    for c in m {
        let g = l.gcd(c.den());
        l = l.mul(&c.den().div_exact(&g).unwrap());
    }
    m.iter()
        .map(|c| c.num().mul(&l.div_exact(c.den()).unwrap()))
        .collect()
}

// All c·d with d a monic divisor of a and c ∈ F_q^× (or c = 1 when `monic`).
fn divisors(a: &Poly, monic: bool) -> Vec<Poly> {
    let fq = a.field();
    let (_, fac) = a.factor();
    let mut out = vec![Poly::one(fq)];
    for (f, e) in fac {
        let mut next = Vec::new();
        for d in &out {
            let mut pw = d.clone();
            for _ in 0..=e {
                next.push(pw.clone());
                pw = pw.mul(&f);
            }
        }
        out = next;
    }
    if monic {
        return out;
    }
    let units: Vec<_> = fq.elements().filter(|&c| c != 0).collect();
    out.iter()
        .flat_map(|d| units.iter().map(move |&c| d.scale(c)))
        .collect()
}

const FACTOR_SEARCH_CAP: u64 = 200_000;

fn has_root_in_k(m: &[Poly]) -> Result<bool> {
    let fq = m[0].field();
    if m[0].is_zero() {
        return Ok(true);
    }
    let n = m.len() - 1;
    let mk: Vec<RatFunc> = m.iter().map(|c| RatFunc::from_poly(c.clone())).collect();
    let nums = divisors(&m[0], false);
    let dens = divisors(&m[n], true);
    if (nums.len() as u64) * (dens.len() as u64) > FACTOR_SEARCH_CAP {
        return Err(Error::InvalidInput(
            "irreducibility check beyond desk scale".into(),
        ));
    }
    for a in &nums {
        for b in &dens {
            let r = RatFunc::new(a.clone(), b.clone())?;
            if kp_eval(&mk, &r, fq).is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn poly_mul_a(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let fq = a[0].field();
    let mut out = vec![Poly::zero(fq); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

// Quartic over A with no linear factor: search (g2 x^2 + g1 x + g0)(h2 x^2 + h1 x + h0).
fn has_quadratic_factor(m: &[Poly]) -> Result<bool> {
    let fq = m[0].field();
    let g2s = divisors(&m[4], true);
    let g0s = divisors(&m[0], false);
    if (g2s.len() as u64) * (g0s.len() as u64) > FACTOR_SEARCH_CAP {
        return Err(Error::InvalidInput(
            "irreducibility check beyond desk scale".into(),
        ));
    }
    let theta_deg = m.iter().map(|c| c.deg()).max().unwrap_or(0).max(0) as usize;
    for g2 in &g2s {
        let h2 = m[4].div_exact(g2)?;
        for g0 in &g0s {
            let h0 = m[0].div_exact(g0)?;
            let check = |g1: &Poly, h1: &Poly| {
                poly_mul_a(
                    &[g0.clone(), g1.clone(), g2.clone()],
                    &[h0.clone(), h1.clone(), h2.clone()],
                ) == m
            };
            let det = h2.mul(g0).sub(&g2.mul(&h0));
            if !det.is_zero() {
                let n1 = m[3].mul(g0).sub(&g2.mul(&m[1]));
                let n2 = h2.mul(&m[1]).sub(&h0.mul(&m[3]));
                let (g1, r1) = n1.divrem(&det)?;
                let (h1, r2) = n2.divrem(&det)?;
                if r1.is_zero() && r2.is_zero() && check(&g1, &h1) {
                    return Ok(true);
                }
                continue;
            }
            let count = (fq.q() as u64).saturating_pow(theta_deg as u32 + 1);
            if count > FACTOR_SEARCH_CAP {
                return Err(Error::InvalidInput(
                    "irreducibility check beyond desk scale".into(),
                ));
            }
            for g1 in Poly::all_below(fq, theta_deg + 1) {
                let (h1, r) = m[3].sub(&h2.mul(&g1)).divrem(g2)?;
                if r.is_zero() && check(&g1, &h1) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

fn is_irreducible_over_k(m: &[RatFunc]) -> Result<bool> {
    let n = m.len() - 1;
    if n == 1 {
        return Ok(true);
    }
    if n > 4 {
        return Err(Error::InvalidInput(format!(
            "irreducibility check supports degree ≤ 4, got {n}"
        )));
    }
    let a = integral_form(m);
    if has_root_in_k(&a)? {
        return Ok(false);
    }
    if n == 4 && has_quadratic_factor(&a)? {
        return Ok(false);
    }
    Ok(true)
}

pub struct ExtField {
    fq: Fq,
    // monic, length n + 1
    m: Vec<RatFunc>,
    // coordinates of x^q
    frob_x: Vec<RatFunc>,
}

impl ExtField {
    /// K = k[x]/(m); m is made monic and must be irreducible over k.
    pub fn new(m: Vec<RatFunc>) -> Result<Arc<ExtField>> {
        let mut m = m;
        kp_trim(&mut m);
        if m.len() < 2 {
            return Err(Error::InvalidInput(
                "minimal polynomial must have degree ≥ 1".into(),
            ));
        }
        let fq = m[0].field();
        let lc_inv = m.last().unwrap().inv()?;
        let m: Vec<RatFunc> = m.iter().map(|c| c.mul(&lc_inv)).collect();
        if !is_irreducible_over_k(&m)? {
            return Err(Error::NotIrreducible(fmt_kpoly(&m, "x").to_string()));
        }
        let mut field = ExtField {
            fq,
            m,
            frob_x: Vec::new(),
        };
        field.frob_x = field.pow_x(fq.q() as u64);
        Ok(Arc::new(field))
    }

    /// K = k, presented as k[x]/(x).
    pub fn trivial(fq: Fq) -> Arc<ExtField> {
        let m = vec![RatFunc::zero(fq), RatFunc::one(fq)];
        Arc::new(ExtField {
            fq,
            m,
            frob_x: vec![RatFunc::zero(fq)],
        })
    }

    fn pow_x(&self, mut e: u64) -> Vec<RatFunc> {
        let n = self.degree();
        let mut acc = self.reduce(vec![RatFunc::one(self.fq)]);
        let mut x = vec![RatFunc::zero(self.fq), RatFunc::one(self.fq)];
        x = self.reduce(x);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.reduce(kp_mul(&acc, &x, self.fq));
            }
            x = self.reduce(kp_mul(&x, &x, self.fq));
            e >>= 1;
        }
        acc.resize(n, RatFunc::zero(self.fq));
        acc
    }

    fn reduce(&self, a: KPoly) -> KPoly {
        let mut r = if a.len() >= self.m.len() {
            kp_divrem(&a, &self.m, self.fq).1
        } else {
            let mut a = a;
            kp_trim(&mut a);
            a
        };
        r.resize(self.degree(), RatFunc::zero(self.fq));
        r
    }

    pub fn field(&self) -> Fq {
        self.fq
    }

    pub fn degree(&self) -> usize {
        self.m.len() - 1
    }

    pub fn minpoly(&self) -> &[RatFunc] {
        &self.m
    }

    pub fn is_trivial(&self) -> bool {
        self.degree() == 1 && self.m[0].is_zero()
    }

    pub fn same_as(&self, other: &ExtField) -> bool {
        std::ptr::eq(self, other) || self.m == other.m
    }
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k[x]/({})", fmt_kpoly(&self.m, "x"))
    }
}

fn fmt_kpoly(m: &[RatFunc], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, c) in m.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (mono.is_empty(), c.is_one()) {
            (true, _) => format!("{c}"),
            (false, true) => mono,
            (false, false) => format!("({c})*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[derive(Clone)]
pub struct ExtElem {
    field: Arc<ExtField>,
    c: Vec<RatFunc>,
}

impl ExtElem {
    pub fn from_coords(field: &Arc<ExtField>, mut c: Vec<RatFunc>) -> Result<ExtElem> {
        let n = field.degree();
        if c.len() > n {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for an extension of degree {n}",
                c.len()
            )));
        }
        c.resize(n, RatFunc::zero(field.fq));
        Ok(ExtElem {
            field: field.clone(),
            c,
        })
    }

    pub fn from_rat(field: &Arc<ExtField>, a: RatFunc) -> ExtElem {
        let mut c = vec![RatFunc::zero(field.fq); field.degree()];
        c[0] = a;
        ExtElem {
            field: field.clone(),
            c,
        }
    }

    /// The class of x (for the trivial extension, this is 0).
    pub fn generator(field: &Arc<ExtField>) -> ExtElem {
        let c = field.reduce(vec![RatFunc::zero(field.fq), RatFunc::one(field.fq)]);
        ExtElem {
            field: field.clone(),
            c,
        }
    }

    pub fn ext(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn coords(&self) -> &[RatFunc] {
        &self.c
    }

    /// The value as an element of k, if it lies there.
    pub fn as_rat(&self) -> Option<&RatFunc> {
        if self.c[1..].iter().all(|c| c.is_zero()) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    fn check(&self, o: &ExtElem) {
        assert!(
            self.field.same_as(&o.field),
            "elements of different extensions mixed"
        );
    }

    pub fn try_add(&self, o: &ExtElem) -> Result<ExtElem> {
        if !self.field.same_as(&o.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.add(o))
    }

    pub fn add(&self, o: &ExtElem) -> ExtElem {
        self.check(o);
        ExtElem {
            field: self.field.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &ExtElem) -> ExtElem {
        self.check(o);
        ExtElem {
            field: self.field.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> ExtElem {
        ExtElem {
            field: self.field.clone(),
            c: self.c.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn mul(&self, o: &ExtElem) -> ExtElem {
        self.check(o);
        if self.field.degree() == 1 {
            return ExtElem {
                field: self.field.clone(),
                c: vec![self.c[0].mul(&o.c[0])],
            };
        }
        let fq = self.field.fq;
        let prod = kp_mul(&self.c, &o.c, fq);
        ExtElem {
            field: self.field.clone(),
            c: self.field.reduce(prod),
        }
    }

    pub fn scale(&self, a: &RatFunc) -> ExtElem {
        ExtElem {
            field: self.field.clone(),
            c: self.c.iter().map(|x| x.mul(a)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }

    pub fn inv(&self) -> Result<ExtElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let fq = self.field.fq;
        if self.field.degree() == 1 {
            return Ok(ExtElem::from_rat(&self.field, self.c[0].inv()?));
        }
        // extended Euclid in k[x] against m
        let mut a = self.c.clone();
        kp_trim(&mut a);
        let (mut r0, mut r1) = (self.field.m.clone(), a);
        let (mut s0, mut s1): (KPoly, KPoly) = (Vec::new(), vec![RatFunc::one(fq)]);
        while r1.len() > 1 {
            let (q, r) = kp_divrem(&r0, &r1, fq);
            let s = kp_sub(&s0, &kp_mul(&q, &s1, fq), fq);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r1.is_empty() {
            return Err(Error::NotInvertible(
                "shares a factor with the modulus".into(),
            ));
        }
        let c = r1[0].inv()?;
        let s: KPoly = s1.iter().map(|x| x.mul(&c)).collect();
        Ok(ExtElem {
            field: self.field.clone(),
            c: self.field.reduce(s),
        })
    }

    /// x ↦ x^{q^s}: twist the coordinates, then substitute x^q for x.
    pub fn frobenius(&self, s: u32) -> ExtElem {
        if self.field.degree() == 1 {
            return ExtElem {
                field: self.field.clone(),
                c: vec![self.c[0].twist(s)],
            };
        }
        let fx = ExtElem {
            field: self.field.clone(),
            c: self.field.frob_x.clone(),
        };
        let mut cur = self.clone();
        for _ in 0..s {
            let zero = ExtElem::from_rat(&self.field, RatFunc::zero(self.field.fq));
            cur = cur.c.iter().rev().fold(zero, |acc, c| {
                acc.mul(&fx)
                    .add(&ExtElem::from_rat(&self.field, c.twist(1)))
            });
        }
        cur
    }

    pub fn pow(&self, mut n: u64) -> ExtElem {
        let mut acc = ExtElem::from_rat(&self.field, RatFunc::one(self.field.fq));
        let mut b = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            n >>= 1;
        }
        acc
    }
}

impl PartialEq for ExtElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.c == other.c
    }
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_kpoly(&self.c, "x"))
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            write!(f, "{}", self.c[0])
        } else {
            write!(f, "{}", fmt_kpoly(&self.c, "x"))
        }
    }
}

impl Scalar for ExtElem {
    type Ctx = Arc<ExtField>;

    fn field_of(ctx: &Self::Ctx) -> Fq {
        ctx.field()
    }

    fn ctx(&self) -> Arc<ExtField> {
        self.field.clone()
    }
    fn zero(ctx: &Arc<ExtField>) -> Self {
        ExtElem::from_rat(ctx, RatFunc::zero(ctx.fq))
    }
    fn one(ctx: &Arc<ExtField>) -> Self {
        ExtElem::from_rat(ctx, RatFunc::one(ctx.fq))
    }
    fn from_poly(ctx: &Arc<ExtField>, a: &Poly) -> Self {
        ExtElem::from_rat(ctx, RatFunc::from_poly(a.clone()))
    }
    fn add(&self, o: &Self) -> Self {
        ExtElem::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ExtElem::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ExtElem::mul(self, o)
    }
    fn neg(&self) -> Self {
        ExtElem::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        ExtElem::inv(self)
    }
    fn frobenius(&self, s: u32) -> Self {
        ExtElem::frobenius(self, s)
    }
    fn is_zero(&self) -> bool {
        ExtElem::is_zero(self)
    }
}
