//! ASCII element syntax: integers, `theta`, `x` (extension generator),
//! `t`, `a` (generator of F_q over F_p), `+ - * / ^` and parentheses.
//! Tuples are separated by `;`, composition indices by `,`.

use std::sync::Arc;

use crate::algebra::{ExtElem, ExtField, Fq, Poly, RatFunc};
use crate::error::{Error, Result};
use crate::polylog::CompositionIndex;

#[derive(Clone, Debug, PartialEq)]
enum Expr {
    Num(i64),
    Var(String),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn perr(src: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{msg} in {src:?}"))
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let cs: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let j = (i..cs.len())
                .find(|&j| !cs[j].is_ascii_digit())
                .unwrap_or(cs.len());
            toks.push(Tok::Num(cs[i..j].iter().collect()));
            i = j;
        } else if c.is_ascii_alphabetic() {
            let j = (i..cs.len())
                .find(|&j| !cs[j].is_ascii_alphanumeric() && cs[j] != '_')
                .unwrap_or(cs.len());
            toks.push(Tok::Ident(cs[i..j].iter().collect()));
            i = j;
        } else if "+-*/^()".contains(c) {
            toks.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(perr(src, format!("unexpected character {c:?}")));
        }
    }
    Ok(toks)
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Parser<'a>> {
        Ok(Parser {
            src,
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse(mut self) -> Result<Expr> {
        if self.toks.is_empty() {
            return Err(perr(self.src, "empty expression"));
        }
        let e = self.expr()?;
        if self.pos < self.toks.len() {
            return Err(perr(
                self.src,
                format!("trailing {:?}", self.toks[self.pos]),
            ));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                '+'
            } else if self.eat('-') {
                '-'
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                '*'
            } else if self.eat('/') {
                '/'
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let e = n
                    .parse()
                    .map_err(|_| perr(self.src, "exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(perr(self.src, "exponent must be a non-negative integer")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n.parse()
                    .map(Expr::Num)
                    .map_err(|_| perr(self.src, "integer too large"))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(perr(self.src, "missing ')'"));
                }
                Ok(e)
            }
            Some(t) => Err(perr(self.src, format!("unexpected {t:?}"))),
            None => Err(perr(self.src, "unexpected end of input")),
        }
    }
}

// Values an expression can be evaluated into.
trait Target: Sized + Clone {
    fn num(&self, n: i64) -> Self;
    fn var(&self, name: &str) -> Option<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn pow(&self, e: u64) -> Self;
}

fn eval<T: Target>(src: &str, e: &Expr, z: &T) -> Result<T> {
    Ok(match e {
        Expr::Num(n) => z.num(*n),
        Expr::Var(v) => z
            .var(v)
            .ok_or_else(|| perr(src, format!("variable {v:?} not allowed here")))?,
        Expr::Neg(a) => z.num(0).sub(&eval(src, a, z)?),
        Expr::Pow(a, k) => eval(src, a, z)?.pow(*k),
        Expr::Bin(op, a, b) => {
            let (a, b) = (eval(src, a, z)?, eval(src, b, z)?);
            match op {
                '+' => a.add(&b),
                '-' => a.sub(&b),
                '*' => a.mul(&b),
                _ => a
                    .div(&b)
                    .map_err(|err| perr(src, format!("division failed: {err}")))?,
            }
        }
    })
}

fn fq_gen(fq: Fq) -> Option<crate::algebra::Fe> {
    if fq.is_prime_field() {
        None
    } else {
        fq.from_digits(&[0, 1]).ok()
    }
}

impl Target for RatFunc {
    fn num(&self, n: i64) -> Self {
        RatFunc::constant(self.field(), self.field().from_int(n))
    }
    fn var(&self, name: &str) -> Option<Self> {
        let fq = self.field();
        match name {
            "theta" => Some(RatFunc::from_poly(Poly::x(fq))),
            "a" => fq_gen(fq).map(|g| RatFunc::constant(fq, g)),
            _ => None,
        }
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
    fn div(&self, o: &Self) -> Result<Self> {
        RatFunc::div(self, o)
    }
    fn pow(&self, e: u64) -> Self {
        RatFunc::pow(self, e)
    }
}

impl Target for ExtElem {
    fn num(&self, n: i64) -> Self {
        let fq = self.ext().field();
        ExtElem::from_rat(self.ext(), RatFunc::constant(fq, fq.from_int(n)))
    }
    fn var(&self, name: &str) -> Option<Self> {
        match name {
            "x" if !self.ext().is_trivial() => Some(ExtElem::generator(self.ext())),
            "x" => None,
            _ => RatFunc::zero(self.ext().field())
                .var(name)
                .map(|r| ExtElem::from_rat(self.ext(), r)),
        }
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
    fn div(&self, o: &Self) -> Result<Self> {
        Ok(ExtElem::mul(self, &o.inv()?))
    }
    fn pow(&self, e: u64) -> Self {
        ExtElem::pow(self, e)
    }
}

// Polynomials in x over k, for minimal polynomials.
#[derive(Clone)]
struct KPoly(Fq, Vec<RatFunc>);

impl KPoly {
    fn trim(mut self) -> Self {
        while self.1.last().is_some_and(|c| c.is_zero()) {
            self.1.pop();
        }
        self
    }
    fn constant(&self) -> Option<RatFunc> {
        match self.1.len() {
            0 => Some(RatFunc::zero(self.0)),
            1 => Some(self.1[0].clone()),
            _ => None,
        }
    }
}

impl Target for KPoly {
    fn num(&self, n: i64) -> Self {
        KPoly(self.0, vec![Target::num(&RatFunc::zero(self.0), n)]).trim()
    }
    fn var(&self, name: &str) -> Option<Self> {
        let fq = self.0;
        match name {
            "x" => Some(KPoly(fq, vec![RatFunc::zero(fq), RatFunc::one(fq)])),
            _ => RatFunc::zero(fq).var(name).map(|r| KPoly(fq, vec![r])),
        }
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.1.len().max(o.1.len());
        let z = RatFunc::zero(self.0);
        let c = (0..n)
            .map(|i| self.1.get(i).unwrap_or(&z).add(o.1.get(i).unwrap_or(&z)))
            .collect();
        KPoly(self.0, c).trim()
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&KPoly(o.0, o.1.iter().map(|c| c.neg()).collect()))
    }
    fn mul(&self, o: &Self) -> Self {
        if self.1.is_empty() || o.1.is_empty() {
            return KPoly(self.0, Vec::new());
        }
        let mut c = vec![RatFunc::zero(self.0); self.1.len() + o.1.len() - 1];
        for (i, a) in self.1.iter().enumerate() {
            for (j, b) in o.1.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        KPoly(self.0, c).trim()
    }
    fn div(&self, o: &Self) -> Result<Self> {
        let d = o
            .constant()
            .ok_or_else(|| Error::InvalidInput("division by a polynomial in x".into()))?;
        let inv = d.inv()?;
        Ok(KPoly(self.0, self.1.iter().map(|c| c.mul(&inv)).collect()))
    }
    fn pow(&self, e: u64) -> Self {
        let mut acc = self.num(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

// Polynomials in t over F_q.
#[derive(Clone)]
struct TPoly(Poly);

impl Target for TPoly {
    fn num(&self, n: i64) -> Self {
        let fq = self.0.field();
        TPoly(Poly::constant(fq, fq.from_int(n)))
    }
    fn var(&self, name: &str) -> Option<Self> {
        let fq = self.0.field();
        match name {
            "t" => Some(TPoly(Poly::x(fq))),
            "a" => fq_gen(fq).map(|g| TPoly(Poly::constant(fq, g))),
            _ => None,
        }
    }
    fn add(&self, o: &Self) -> Self {
        TPoly(self.0.add(&o.0))
    }
    fn sub(&self, o: &Self) -> Self {
        TPoly(self.0.sub(&o.0))
    }
    fn mul(&self, o: &Self) -> Self {
        TPoly(self.0.mul(&o.0))
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if !o.0.is_constant() || o.0.is_zero() {
            return Err(Error::InvalidInput(
                "division by a non-constant in t".into(),
            ));
        }
        let inv = o.0.field().inv(o.0.coeff(0))?;
        Ok(TPoly(self.0.scale(inv)))
    }
    fn pow(&self, e: u64) -> Self {
        TPoly(self.0.pow(e))
    }
}

fn parse_expr(src: &str) -> Result<Expr> {
    Parser::new(src)?.parse()
}

/// An element of k = F_q(θ).
pub fn parse_ratfunc(src: &str, fq: Fq) -> Result<RatFunc> {
    eval(src, &parse_expr(src)?, &RatFunc::zero(fq))
}

/// An element of A = F_q[θ].
pub fn parse_poly(src: &str, fq: Fq) -> Result<Poly> {
    let r = parse_ratfunc(src, fq)?;
    if !r.is_poly() {
        return Err(perr(src, "expected a polynomial in theta"));
    }
    Ok(r.num().clone())
}

/// An element of F_q[t].
pub fn parse_t_poly(src: &str, fq: Fq) -> Result<Poly> {
    Ok(eval(src, &parse_expr(src)?, &TPoly(Poly::zero(fq)))?.0)
}

/// An element of K, with `x` the class of the generator.
pub fn parse_ext(src: &str, field: &Arc<ExtField>) -> Result<ExtElem> {
    let z = ExtElem::from_rat(field, RatFunc::zero(field.field()));
    eval(src, &parse_expr(src)?, &z)
}

/// A polynomial in x over k, coefficients from the constant term up.
pub fn parse_minpoly(src: &str, fq: Fq) -> Result<Vec<RatFunc>> {
    let p = eval(src, &parse_expr(src)?, &KPoly(fq, Vec::new()))?;
    if p.1.len() < 2 {
        return Err(perr(src, "expected a polynomial of degree ≥ 1 in x"));
    }
    Ok(p.1)
}

/// `;`-separated elements of K.
pub fn parse_ext_tuple(src: &str, field: &Arc<ExtField>) -> Result<Vec<ExtElem>> {
    src.split(';').map(|p| parse_ext(p, field)).collect()
}

/// `;`-separated elements of k.
pub fn parse_ratfunc_tuple(src: &str, fq: Fq) -> Result<Vec<RatFunc>> {
    src.split(';').map(|p| parse_ratfunc(p, fq)).collect()
}

/// `,`-separated positive integers.
pub fn parse_composition(src: &str) -> Result<CompositionIndex> {
    let s = src
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| perr(src, format!("bad index entry {p:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    CompositionIndex::new(s)
}

/// `,`-separated F_p digits, constant term first.
pub fn parse_digits(src: &str) -> Result<Vec<u32>> {
    src.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| perr(src, format!("bad digit {p:?}")))
        })
        .collect()
}

/// F_q from q = p^e and an optional modulus given as digits.
pub fn parse_field(q: u32, modulus: Option<&str>) -> Result<Fq> {
    let (p, e) =
        prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
    let m = modulus.map(parse_digits).transpose()?;
    Fq::new(p, e, m)
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut n, mut e) = (q, 0);
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    (n == 1).then_some((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::prime(3).unwrap()
    }

    #[test]
    fn precedence() {
        let a = parse_poly("theta+2*theta^2", f3()).unwrap();
        assert_eq!(a, Poly::from_ints(f3(), &[0, 1, 2]));
        let b = parse_poly("-(theta+1)^2", f3()).unwrap();
        assert_eq!(b, Poly::from_ints(f3(), &[-1, -2, -1]));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "theta+", "theta^-1", "y", "theta$", "(theta", "2 3"] {
            assert!(
                matches!(parse_ratfunc(s, f3()), Err(Error::Parse(_))),
                "{s}"
            );
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
