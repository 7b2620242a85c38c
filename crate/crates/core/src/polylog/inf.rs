use std::collections::HashMap;

use super::{CompositionIndex, LSequence, MAX_INDEX};
use crate::algebra::RatFunc;
use crate::completions::InfLaurent;
use crate::error::{Error, Result};

/// deg(u^{q^i} / L_i^s) = q^i·deg u - s·(q + ⋯ + q^i).
pub fn term_degree_inf(q: i64, deg_u: i64, s: u32, i: usize) -> i128 {
    let q = q as i128;
    let qi = q.pow(i as u32);
    let deg_l = (1..=i as u32).map(|k| q.pow(k)).sum::<i128>();
    qi * deg_u as i128 - s as i128 * deg_l
}

/// Li_s(u) (or Li*_s(u)) in k_∞, known for every exponent ≥ prec.
///
/// Each argument must satisfy (q-1)·deg u_j < q·s_j, which makes the term
/// degree strictly decreasing in every index.
pub fn series_inf(
    s: &CompositionIndex,
    u: &[RatFunc],
    prec: i64,
    star: bool,
) -> Result<InfLaurent> {
    let r = s.depth();
    if u.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "{} arguments for depth {r}",
            u.len()
        )));
    }
    let fq = u[0].field();
    if u.iter().any(|x| x.is_zero()) {
        return Ok(InfLaurent::zero(fq, prec));
    }
    let q = fq.q() as i64;
    for (x, &sj) in u.iter().zip(s.s()) {
        let d = x.degree().unwrap();
        if (q - 1) * d >= q * sj as i64 {
            return Err(Error::Domain(format!(
                "|{x}|_∞ is too large for convergence at weight {sj}"
            )));
        }
    }
    let f = |j: usize, i: usize| term_degree_inf(q, u[j].degree().unwrap(), s.s()[j], i);
    let lowest = |k: usize| if star { 0 } else { r - 1 - k };
    let p = prec as i128;

    // all index tuples whose term reaches θ^prec, with their degrees
    let mut terms: Vec<(Vec<usize>, i128)> = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(r);
    #[allow(clippy::too_many_arguments)]
    fn walk(
        j: usize,
        hi: Option<usize>,
        acc: i128,
        r: usize,
        star: bool,
        p: i128,
        f: &dyn Fn(usize, usize) -> i128,
        lowest: &dyn Fn(usize) -> usize,
        stack: &mut Vec<usize>,
        terms: &mut Vec<(Vec<usize>, i128)>,
    ) -> Result<()> {
        let rest: i128 = (j + 1..r).map(|k| f(k, lowest(k))).sum();
        let mut i = lowest(j);
        loop {
            if let Some(h) = hi {
                if i > h {
                    break;
                }
            }
            if i > MAX_INDEX {
                return Err(Error::PrecisionUnreachable(format!(
                    "more than {MAX_INDEX} terms needed down to θ^{p}"
                )));
            }
            let here = acc + f(j, i);
            if here + rest < p {
                break;
            }
            stack.push(i);
            if j + 1 == r {
                terms.push((stack.clone(), here));
            } else {
                let next = if star { Some(i) } else { i.checked_sub(1) };
                if let Some(n) = next {
                    walk(j + 1, Some(n), here, r, star, p, f, lowest, stack, terms)?;
                }
            }
            stack.pop();
            i += 1;
        }
        Ok(())
    }
    walk(0, None, 0, r, star, p, &f, &lowest, &mut stack, &mut terms)?;
    let Some(top) = terms.iter().map(|t| t.1).max() else {
        return Ok(InfLaurent::zero(fq, prec));
    };
    let rel = (top - p + 1) as i64;

    let ls = LSequence::new(fq);
    let mut linv: HashMap<usize, InfLaurent> = HashMap::new();
    let mut factors: HashMap<(usize, usize), InfLaurent> = HashMap::new();
    let mut acc: Option<InfLaurent> = None;
    for (idx, _) in &terms {
        let mut prod: Option<InfLaurent> = None;
        for (j, &i) in idx.iter().enumerate() {
            if let std::collections::hash_map::Entry::Vacant(e) = factors.entry((j, i)) {
                if let std::collections::hash_map::Entry::Vacant(e) = linv.entry(i) {
                    let l = ls.l(i);
                    let x = InfLaurent::from_poly(&l, l.deg() - rel + 1).inv()?;
                    e.insert(x);
                }
                let ui = u[j].twist(i as u32);
                let z = InfLaurent::from_ratfunc(&ui, ui.degree().unwrap() - rel + 1);
                let fct = z.mul(&linv[&i].pow(s.s()[j] as u64));
                e.insert(fct);
            }
            let fct = &factors[&(j, i)];
            prod = Some(match prod {
                None => fct.clone(),
                Some(p) => p.mul(fct),
            });
        }
        let t = prod.unwrap();
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t),
        });
    }
    let out = acc.unwrap().truncate(prec);
    if out.prec() > prec {
        return Err(Error::PrecisionUnreachable(format!(
            "series only known down to θ^{}",
            out.prec()
        )));
    }
    Ok(out)
}

pub fn cmpl_eval_inf(s: &CompositionIndex, u: &[RatFunc], prec: i64) -> Result<InfLaurent> {
    series_inf(s, u, prec, false)
}

pub fn cmspl_eval_inf(s: &CompositionIndex, u: &[RatFunc], prec: i64) -> Result<InfLaurent> {
    series_inf(s, u, prec, true)
}
