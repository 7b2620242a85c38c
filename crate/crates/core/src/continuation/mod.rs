//! v-adic evaluation of log_G on the open unit polydisc, and its use to
//! continue Li* and Li to the closed unit polydisc.
//!
//! A point w of G with coordinates in the closed disc is pushed into the
//! open disc by ρ_a for a = ∏_ℓ (v(t)^{d_ℓ·e} - 1), where F_{q^e} contains
//! the residues of the u_i. Then log_G(ρ_a w) = ∂ρ_a log_G(w), and the
//! block-bottom rows of ∂ρ_a are a(θ) times those of the identity.

use crate::algebra::{ExtElem, Matrix, Poly};
use crate::completions::{certify_vec, Embedding, Place, VAdicNumber, VCtx};
use crate::error::{Error, Result};
use crate::polylog::{exact_val, CompositionIndex, MAX_INDEX};
use crate::tmodule::{build_tmodule, TModuleSpec};

const GUARD: i64 = 4;

/// The module with u pushed into k_v at relative precision `w`; fails
/// when some |u_i|_v > 1.
pub fn module_at_v(
    g: &TModuleSpec<ExtElem>,
    emb: &Embedding,
    w: u32,
) -> Result<TModuleSpec<VAdicNumber>> {
    let ctx = VCtx {
        place: emb.place().clone(),
        prec: w,
    };
    g.map_scalars(&ctx, |u| {
        let val = exact_val(u, emb)?.unwrap_or(0);
        if val < 0 {
            return Err(Error::Domain(format!("|{u}|_v > 1")));
        }
        emb.embed(u, w + val as u32)
    })
}

// First index I with q^i·m - i·c ≥ abs for all i ≥ I.
fn log_cutoff(q: i64, m: i64, c: i64, abs: i64) -> Result<usize> {
    let mut qi = 1i64;
    for i in 0..=MAX_INDEX {
        let growing = qi.saturating_mul(q - 1).saturating_mul(m) >= c;
        if growing && qi.saturating_mul(m) - i as i64 * c >= abs {
            return Ok(i);
        }
        qi = qi.saturating_mul(q);
    }
    Err(Error::PrecisionUnreachable(format!(
        "log series needs more than {MAX_INDEX} terms"
    )))
}

/// Σ_i P_i x^{(i)} over the v-adic module `g`, truncated once every later
/// term vanishes modulo v^abs (using |P_i|_v ≤ |v|^{-i(2d₁-1)}). `x` must
/// have positive valuation.
pub fn log_series(
    g: &TModuleSpec<VAdicNumber>,
    x: &[VAdicNumber],
    abs: i64,
) -> Result<Vec<VAdicNumber>> {
    let place = g.ctx().place.clone();
    let d = g.dim();
    if x.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "point of length {}",
            x.len()
        )));
    }
    let Some(m) = x
        .iter()
        .filter(|c| !c.is_exact_zero())
        .map(|c| c.val())
        .min()
    else {
        return Ok(vec![VAdicNumber::exact_zero(&place); d]);
    };
    if m < 1 {
        return Err(Error::Domain("log_G needs |x|_v < 1".into()));
    }
    let q = place.field().q() as i64;
    let c = 2 * g.index().d(1) as i64 - 1;
    let imax = log_cutoff(q, m, c, abs)?;
    let p = g.log_coeffs(imax.saturating_sub(1))?;
    let mut acc = vec![VAdicNumber::exact_zero(&place); d];
    for (i, pi) in p.iter().enumerate().take(imax) {
        let xi: Vec<VAdicNumber> = x.iter().map(|c| c.frobenius(i as u32)).collect();
        let t = pi.mul_vec(&xi)?;
        for (a, b) in acc.iter_mut().zip(t) {
            *a = a.add(&b);
        }
    }
    Ok(acc.iter().map(|a| a.truncate_abs(abs)).collect())
}

// The point in k_v with relative precision w per coordinate.
fn embed_point(x: &[ExtElem], emb: &Embedding, w: u32) -> Result<Vec<VAdicNumber>> {
    x.iter()
        .map(|c| {
            let val = exact_val(c, emb)?;
            match val {
                None => Ok(VAdicNumber::exact_zero(emb.place())),
                Some(v) => emb.embed(c, (w as i64 + v.max(0)) as u32),
            }
        })
        .collect()
}

// Working relative precision for a target absolute precision.
fn working_prec(g: &TModuleSpec<ExtElem>, emb: &Embedding, x: &[ExtElem], abs: i64) -> Result<u32> {
    let q = emb.place().field().q() as i64;
    let c = 2 * g.index().d(1) as i64 - 1;
    let mut m = i64::MAX;
    for xi in x {
        if let Some(v) = exact_val(xi, emb)? {
            m = m.min(v);
        }
    }
    if m == i64::MAX {
        return Ok(abs.max(1) as u32);
    }
    if m < 1 {
        return Err(Error::Domain("log_G needs |x|_v < 1".into()));
    }
    let imax = log_cutoff(q, m, c, abs)? as i64;
    Ok((abs.max(1) + imax * c + GUARD) as u32)
}

/// log_G(x) known modulo v^abs in every coordinate.
pub fn log_eval_abs(
    g: &TModuleSpec<ExtElem>,
    x: &[ExtElem],
    emb: &Embedding,
    abs: i64,
) -> Result<Vec<VAdicNumber>> {
    let mut w = working_prec(g, emb, x, abs)?;
    for _ in 0..6 {
        let gv = module_at_v(g, emb, w)?;
        let xv = embed_point(x, emb, w)?;
        let y = log_series(&gv, &xv, abs)?;
        if y.iter().all(|c| c.abs_prec() >= abs) {
            return Ok(y);
        }
        let lost = y.iter().map(|c| abs - c.abs_prec()).max().unwrap_or(0);
        w += lost.max(GUARD) as u32;
    }
    Err(Error::PrecisionUnreachable(format!(
        "log_G not known modulo v^{abs}"
    )))
}

/// log_G(x) for |x|_v < 1, each coordinate with n certified digits.
pub fn log_eval_v(
    g: &TModuleSpec<ExtElem>,
    x: &[ExtElem],
    emb: &Embedding,
    n: u32,
) -> Result<Vec<VAdicNumber>> {
    certify_vec(n, |abs| log_eval_abs(g, x, emb, abs))
}

/// The least e ≥ 1 with every residue u_i mod v in F_{q^e}.
pub fn residue_degree(u: &[ExtElem], emb: &Embedding) -> Result<usize> {
    let place = emb.place();
    let q = place.field().q() as u64;
    let mut res = Vec::with_capacity(u.len());
    for ui in u {
        match exact_val(ui, emb)? {
            None => continue,
            Some(v) if v < 0 => return Err(Error::Domain(format!("|{ui}|_v > 1"))),
            Some(v) if v > 0 => continue,
            Some(_) => {
                let r = emb.embed(ui, 1)?.residue().expect("v-integral");
                res.push(r);
            }
        }
    }
    let dv = place.degree();
    for e in 1..=dv {
        let qe = q.pow(e as u32);
        let fixed = res
            .iter()
            .all(|r| r.pow_mod(qe, place.v()).map(|y| &y == r).unwrap_or(false));
        if fixed {
            return Ok(e);
        }
    }
    Ok(dv)
}

/// a = ∏_ℓ (v(t)^{d_ℓ·e} - 1) as a polynomial in t.
pub fn multiplier(s: &CompositionIndex, place: &Place, e: usize) -> Poly {
    let fq = place.field();
    let one = Poly::one(fq);
    (1..=s.depth()).fold(one.clone(), |acc, l| {
        acc.mul(&place.v().pow((s.d(l) * e) as u64).sub(&one))
    })
}

/// Valuation of a point: the least coordinate valuation, None for 0.
pub fn point_val(x: &[ExtElem], emb: &Embedding) -> Result<Option<i64>> {
    let mut m: Option<i64> = None;
    for c in x {
        if let Some(v) = exact_val(c, emb)? {
            m = Some(m.map_or(v, |m| m.min(v)));
        }
    }
    Ok(m)
}

/// Multiplier a and the moved point ρ_a(w), computed exactly in K.
#[derive(Clone, Debug)]
pub struct Continuation {
    pub a: Poly,
    pub moved: Vec<ExtElem>,
}

/// Pushes w into the open disc by the standard multiplier. Fails if some
/// |u_i|_v > 1.
pub fn continuation_multiplier(
    g: &TModuleSpec<ExtElem>,
    w: &[ExtElem],
    emb: &Embedding,
) -> Result<Continuation> {
    let e = residue_degree(g.u(), emb)?;
    let a = multiplier(g.index(), emb.place(), e);
    move_point(g, w, emb, &a)
}

/// ρ_a(w) for a given a, checked to land in the open disc.
pub fn move_point(
    g: &TModuleSpec<ExtElem>,
    w: &[ExtElem],
    emb: &Embedding,
    a: &Poly,
) -> Result<Continuation> {
    for ui in g.u() {
        if exact_val(ui, emb)?.is_some_and(|v| v < 0) {
            return Err(Error::Domain(format!("|{ui}|_v > 1")));
        }
    }
    if a.is_zero() {
        return Err(Error::InvalidInput("zero multiplier".into()));
    }
    let moved = g.apply_a(a, w)?;
    if point_val(&moved, emb)?.is_some_and(|v| v < 1) {
        return Err(Error::Domain(format!(
            "ρ_a(w) is not in the open disc for a = {}",
            a.fmt_var("t")
        )));
    }
    Ok(Continuation {
        a: a.clone(),
        moved,
    })
}

fn sign(x: VAdicNumber, k: usize) -> VAdicNumber {
    if k % 2 == 1 {
        x.neg()
    } else {
        x
    }
}

fn module_k(s: &CompositionIndex, u: &[ExtElem]) -> Result<TModuleSpec<ExtElem>> {
    let field = u
        .first()
        .ok_or_else(|| Error::InvalidInput("no arguments".into()))?
        .ext()
        .clone();
    build_tmodule(s, u, &field)
}

/// Li*_{(s_r,…,s_ℓ)}(u_r,…,u_ℓ) for ℓ = 1..=r (entry ℓ-1), continued to
/// the closed unit polydisc, with n certified digits each.
pub fn extended_cmspl(
    s: &CompositionIndex,
    u: &[ExtElem],
    emb: &Embedding,
    n: u32,
) -> Result<Vec<VAdicNumber>> {
    let g = module_k(s, u)?;
    let c = continuation_multiplier(&g, &g.special_point(), emb)?;
    star_from_moved(&g, &c, emb, n)
}

/// [`extended_cmspl`] with a caller-chosen multiplier a.
pub fn extended_cmspl_with(
    s: &CompositionIndex,
    u: &[ExtElem],
    emb: &Embedding,
    n: u32,
    a: &Poly,
) -> Result<Vec<VAdicNumber>> {
    let g = module_k(s, u)?;
    let c = move_point(&g, &g.special_point(), emb, a)?;
    star_from_moved(&g, &c, emb, n)
}

fn star_from_moved(
    g: &TModuleSpec<ExtElem>,
    c: &Continuation,
    emb: &Embedding,
    n: u32,
) -> Result<Vec<VAdicNumber>> {
    let s = g.index();
    let r = s.depth();
    let place = emb.place();
    // a(θ): the same coefficients read in θ
    let a_theta = &c.a;
    let ord = a_theta.ord(place.v()).expect("nonzero multiplier") as i64;
    certify_vec(n, |abs| {
        let y = log_eval_abs(g, &c.moved, emb, abs + ord)?;
        let a_v = VAdicNumber::from_poly(place, a_theta, (abs + ord).max(1) as u32);
        (1..=r)
            .map(|l| Ok(sign(y[s.block_bottom(l) - 1].div(&a_v)?, r - l)))
            .collect()
    })
}

/// Li_{(s₁,…,s_j)}(u₁,…,u_j) for j = 1..=r (entry j-1), continued to the
/// closed unit polydisc through
/// `Li_{(s₁..s_j)} = (-1)^{j+1} Li*_{(s_j..s₁)} + Σ_{ℓ=2}^{j} (-1)^{j+ℓ} Li_{(s₁..s_{ℓ-1})} Li*_{(s_j..s_ℓ)}`.
pub fn extended_cmpl_prefixes(
    s: &CompositionIndex,
    u: &[ExtElem],
    emb: &Embedding,
    n: u32,
) -> Result<Vec<VAdicNumber>> {
    let r = s.depth();
    certify_vec(n, |abs| {
        // star suffix values of every prefix, each with abs relative digits
        let w = abs.max(1) as u32;
        let mut li: Vec<VAdicNumber> = Vec::with_capacity(r);
        for j in 1..=r {
            let star = extended_cmspl(&s.slice(1, j), &u[..j], emb, w)?;
            let mut acc = sign(star[0].clone(), j + 1);
            for l in 2..=j {
                acc = acc.add(&sign(li[l - 2].mul(&star[l - 1]), j + l));
            }
            li.push(acc);
        }
        Ok(li)
    })
}

/// Li_{(s₁,…,s_r)}(u₁,…,u_r) continued to the closed unit polydisc.
pub fn extended_cmpl(
    s: &CompositionIndex,
    u: &[ExtElem],
    emb: &Embedding,
    n: u32,
) -> Result<VAdicNumber> {
    let mut all = extended_cmpl_prefixes(s, u, emb, n)?;
    Ok(all.pop().expect("depth ≥ 1"))
}

/// log_H(ρ_a x) - ∂ρ_a log_H(x), known modulo v^abs.
pub fn log_commute_check(
    g: &TModuleSpec<ExtElem>,
    x: &[ExtElem],
    a: &Poly,
    emb: &Embedding,
    abs: i64,
) -> Result<Vec<VAdicNumber>> {
    if point_val(x, emb)?.is_some_and(|v| v < 1) {
        return Err(Error::Domain("log_H needs |x|_v < 1".into()));
    }
    let ax = g.apply_a(a, x)?;
    let lhs = log_eval_abs(g, &ax, emb, abs)?;
    let lx = log_eval_abs(g, x, emb, abs)?;
    let w = lx
        .iter()
        .map(|c| (abs - c.val().min(abs)).max(1))
        .max()
        .unwrap_or(1) as u32
        + GUARD as u32;
    let gv = module_at_v(g, emb, w.max(abs.max(1) as u32))?;
    let da: Matrix<VAdicNumber> = gv.partial_rho_a(a)?;
    let rhs = da.mul_vec(&lx)?;
    Ok(lhs
        .iter()
        .zip(&rhs)
        .map(|(l, r)| l.sub(r).truncate_abs(abs))
        .collect())
}
