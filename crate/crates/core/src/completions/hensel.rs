//! Roots of the minimal polynomial of K in k_v, and the resulting embedding
//! K → k_v. Only simple roots mod v are lifted, so the place must split off
//! a degree-one factor of m over k_v.

use std::sync::{Arc, Mutex};

use super::vadic::{Place, VAdicNumber};
use crate::algebra::{ExtElem, ExtField, Poly, RatFunc};
use crate::error::{Error, Result};

// Coefficients of m reduced mod v^n; errors unless every coefficient is v-integral.
fn integral_coeffs(m: &[RatFunc], place: &Arc<Place>, n: usize) -> Result<Vec<Poly>> {
    m.iter()
        .map(|c| {
            let x = VAdicNumber::from_ratfunc(place, c, n as u32);
            match x.to_poly() {
                Some(p) => Ok(place.reduce(&p, n)),
                None => Err(Error::Domain(format!(
                    "coefficient {c} of the minimal polynomial is not v-integral"
                ))),
            }
        })
        .collect()
}

fn eval_mod(f: &[Poly], x: &Poly, place: &Place, n: usize) -> Poly {
    let fq = place.field();
    f.iter()
        .rev()
        .fold(Poly::zero(fq), |acc, c| place.reduce(&acc.mul(x).add(c), n))
}

fn derivative(f: &[Poly]) -> Vec<Poly> {
    let fq = f[0].field();
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(fq.from_int(i as i64)))
        .collect()
}

/// Simple roots of m modulo v, in enumeration order of A/v.
pub fn simple_roots_mod_v(m: &[RatFunc], place: &Arc<Place>) -> Result<(Vec<Poly>, usize)> {
    let f = integral_coeffs(m, place, 1)?;
    let df = derivative(&f);
    let mut simple = Vec::new();
    let mut all = 0;
    for r in Poly::all_below(place.field(), place.degree()) {
        if eval_mod(&f, &r, place, 1).is_zero() {
            all += 1;
            if !eval_mod(&df, &r, place, 1).is_zero() {
                simple.push(r);
            }
        }
    }
    Ok((simple, all))
}

/// Root of m in k_v lifted from r0 (default: the first simple root mod v),
/// as a polynomial known modulo v^n.
pub fn hensel_root(m: &[RatFunc], place: &Arc<Place>, r0: Option<&Poly>, n: u32) -> Result<Poly> {
    let n = n.max(1) as usize;
    let start = match r0 {
        Some(r) => {
            let f = integral_coeffs(m, place, 1)?;
            let r = place.residue(r);
            if !eval_mod(&f, &r, place, 1).is_zero() {
                return Err(Error::NoRoot(format!("{r} is not a root mod v")));
            }
            if eval_mod(&derivative(&f), &r, place, 1).is_zero() {
                return Err(Error::MultipleRoot(format!("{r} is a multiple root mod v")));
            }
            r
        }
        None => {
            let (simple, all) = simple_roots_mod_v(m, place)?;
            match simple.into_iter().next() {
                Some(r) => r,
                None if all > 0 => {
                    return Err(Error::MultipleRoot("every root mod v is multiple".into()))
                }
                None => return Err(Error::NoRoot(format!("no root mod {}", place.v()))),
            }
        }
    };
    let f = integral_coeffs(m, place, n)?;
    let df = derivative(&f);
    let mut r = start;
    let mut k = 1;
    while k < n {
        k = (2 * k).min(n);
        let fr = eval_mod(&f, &r, place, k);
        let dfr = eval_mod(&df, &r, place, k);
        let inv = dfr.modinv(&place.pow(k))?;
        r = place.reduce(&r.sub(&fr.mul(&inv)), k);
    }
    Ok(r)
}

/// The root as a v-adic number with absolute precision n.
pub fn hensel_lift(
    m: &[RatFunc],
    place: &Arc<Place>,
    r0: Option<&Poly>,
    n: u32,
) -> Result<VAdicNumber> {
    let r = hensel_root(m, place, r0, n)?;
    Ok(VAdicNumber::from_poly_mod(place, &r, n as i64))
}

/// The embedding K → k_v fixed by a root of m.
pub struct Embedding {
    place: Arc<Place>,
    field: Arc<ExtField>,
    residue: Option<Poly>,
    cache: Mutex<Option<(u32, Poly)>>,
}

impl Embedding {
    /// For nontrivial K, checks that m is v-integral with a simple root mod v.
    pub fn new(field: &Arc<ExtField>, place: &Arc<Place>, r0: Option<Poly>) -> Result<Embedding> {
        let residue = if field.is_trivial() {
            None
        } else {
            let r = hensel_root(field.minpoly(), place, r0.as_ref(), 1)?;
            Some(r)
        };
        Ok(Embedding {
            place: place.clone(),
            field: field.clone(),
            residue,
            cache: Mutex::new(None),
        })
    }

    pub fn place(&self) -> &Arc<Place> {
        &self.place
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    /// Residue of the chosen root, if K ≠ k.
    pub fn root_residue(&self) -> Option<&Poly> {
        self.residue.as_ref()
    }

    /// The chosen root of m, known modulo v^n.
    pub fn root(&self, n: u32) -> Result<VAdicNumber> {
        let r = self.root_poly(n)?;
        Ok(VAdicNumber::from_poly_mod(&self.place, &r, n as i64))
    }

    fn root_poly(&self, n: u32) -> Result<Poly> {
        let mut cache = self.cache.lock().unwrap();
        if let Some((have, r)) = cache.as_ref() {
            if *have >= n {
                return Ok(self.place.reduce(r, n as usize));
            }
        }
        let r = hensel_root(self.field.minpoly(), &self.place, self.residue.as_ref(), n)?;
        *cache = Some((n, r.clone()));
        Ok(r)
    }

    /// Image of x with absolute precision at least n (relative precision n
    /// when |x|_v ≥ 1).
    pub fn embed(&self, x: &ExtElem, n: u32) -> Result<VAdicNumber> {
        if !x.ext().same_as(&self.field) {
            return Err(Error::FieldMismatch);
        }
        let cs = x.coords();
        if self.field.is_trivial() || cs[1..].iter().all(|c| c.is_zero()) {
            return Ok(VAdicNumber::from_ratfunc(&self.place, &cs[0], n));
        }
        let g = cs
            .iter()
            .filter_map(|c| c.ord(self.place.v()))
            .map(|o| (-o).max(0))
            .max()
            .unwrap_or(0) as u32;
        let work = n + g;
        let root = self.root(work)?;
        let mut acc = VAdicNumber::exact_zero(&self.place);
        let mut pw = VAdicNumber::from_poly(&self.place, &Poly::one(self.place.field()), work);
        for (i, c) in cs.iter().enumerate() {
            if i > 0 {
                pw = pw.mul(&root);
            }
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&VAdicNumber::from_ratfunc(&self.place, c, work).mul(&pw));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Fq;

    fn f3() -> Fq {
        Fq::prime(3).unwrap()
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(f3(), c)
    }

    fn r(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(p(c))
    }

    #[test]
    fn lambda_root() {
        // x^2 - 2θ at v = θ+1 with residue 1 lifts to θ+2 mod v^2
        let v = Place::new(p(&[1, 1])).unwrap();
        let m = [r(&[0, -2]), r(&[]), r(&[1])];
        let root = hensel_root(&m, &v, Some(&p(&[1])), 2).unwrap();
        assert_eq!(root, p(&[2, 1]));
        let deep = hensel_root(&m, &v, None, 12).unwrap();
        let fr = deep.mul(&deep).sub(&p(&[0, 2]));
        assert!(v.reduce(&fr, 12).is_zero());
        assert_eq!(v.reduce(&deep, 2), p(&[2, 1]));
    }

    #[test]
    fn linear_minimal_polynomial() {
        let v = Place::new(p(&[0, 1])).unwrap();
        let m = [r(&[-1, -1]), r(&[1])];
        for n in [1, 5, 9] {
            let root = hensel_root(&m, &v, None, n).unwrap();
            assert_eq!(root, v.reduce(&p(&[1, 1]), n as usize));
        }
    }

    #[test]
    fn no_root_mod_v() {
        let v = Place::new(p(&[1, 1])).unwrap();
        let m = [r(&[0, -1]), r(&[]), r(&[1])];
        assert!(matches!(
            hensel_root(&m, &v, None, 4),
            Err(Error::NoRoot(_))
        ));
    }

    #[test]
    fn multiple_root_is_rejected() {
        let v = Place::new(p(&[0, 1])).unwrap();
        let m = [r(&[0, -2]), r(&[]), r(&[1])];
        assert!(matches!(
            hensel_root(&m, &v, Some(&p(&[0])), 4),
            Err(Error::MultipleRoot(_))
        ));
    }
}
