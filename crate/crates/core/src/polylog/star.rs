use super::{cmpl_eval_inf, cmpl_eval_v, cmspl_eval_inf, cmspl_eval_v, CompositionIndex};
use crate::algebra::{ExtElem, RatFunc, Scalar};
use crate::completions::{Embedding, InfLaurent, VAdicNumber};
use crate::error::{Error, Result};

/// Residue of the star/non-star identity
///
/// `Li*_{(s_r..s_1)} - Σ_{ℓ=2}^{r} (-1)^ℓ Li_{(s_1..s_{ℓ-1})}·Li*_{(s_r..s_ℓ)} - (-1)^{r+1} Li_{(s_1..s_r)}`
///
/// where `star[ℓ-1] = Li*_{(s_r..s_ℓ)}(u_r..u_ℓ)` and `nonstar[j-1] = Li_{(s_1..s_j)}(u_1..u_j)`.
pub fn star_nonstar_transform<F: Scalar>(star: &[F], nonstar: &[F]) -> Result<F> {
    let r = star.len();
    if r == 0 || nonstar.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "{} star values against {} non-star values",
            r,
            nonstar.len()
        )));
    }
    let mut res = star[0].clone();
    for l in 2..=r {
        let t = nonstar[l - 2].mul(&star[l - 1]);
        res = if l % 2 == 0 { res.sub(&t) } else { res.add(&t) };
    }
    // -(-1)^{r+1} = (-1)^r
    res = if r.is_multiple_of(2) {
        res.add(&nonstar[r - 1])
    } else {
        res.sub(&nonstar[r - 1])
    };
    Ok(res)
}

fn rev<T: Clone>(x: &[T]) -> Vec<T> {
    x.iter().rev().cloned().collect()
}

/// The identity's residue at v, all pieces evaluated as series with n digits.
pub fn star_residue_v(
    s: &CompositionIndex,
    u: &[ExtElem],
    emb: &Embedding,
    n: u32,
) -> Result<VAdicNumber> {
    let r = s.depth();
    let mut star = Vec::with_capacity(r);
    let mut nonstar = Vec::with_capacity(r);
    for l in 1..=r {
        star.push(cmspl_eval_v(
            &s.slice(l, r).reversed(),
            &rev(&u[l - 1..]),
            emb,
            n,
        )?);
        nonstar.push(cmpl_eval_v(&s.slice(1, l), &u[..l], emb, n)?);
    }
    star_nonstar_transform(&star, &nonstar)
}

/// The identity's residue at ∞, known for exponents ≥ prec.
pub fn star_residue_inf(s: &CompositionIndex, u: &[RatFunc], prec: i64) -> Result<InfLaurent> {
    let r = s.depth();
    let mut work = prec;
    for _ in 0..4 {
        let mut star = Vec::with_capacity(r);
        let mut nonstar = Vec::with_capacity(r);
        for l in 1..=r {
            star.push(cmspl_eval_inf(
                &s.slice(l, r).reversed(),
                &rev(&u[l - 1..]),
                work,
            )?);
            nonstar.push(cmpl_eval_inf(&s.slice(1, l), &u[..l], work)?);
        }
        let res = star_nonstar_transform(&star, &nonstar)?;
        if res.prec() <= prec {
            return Ok(res.truncate(prec));
        }
        work -= res.prec() - prec;
    }
    Err(Error::PrecisionUnreachable(format!(
        "residue not known down to θ^{prec}"
    )))
}
