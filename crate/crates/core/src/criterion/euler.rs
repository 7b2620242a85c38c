use std::sync::Arc;

use crate::algebra::{ExtElem, Fq, Poly, RatFunc};
use crate::completions::{
    carlitz_period_power, rational_reconstruct, InfLaurent, Place, VAdicNumber,
};
use crate::error::{Error, Result};
use crate::polylog::{cmpl_eval_inf, CompositionIndex, LSequence};

const ROUNDS: usize = 8;

/// Which power comparison turns a weight-w value into an element of k_∞.
///
/// When (q-1) | w the value itself is compared with (π̃^{q-1})^{w/(q-1)};
/// otherwise its (q-1)-th power is compared with (π̃^{q-1})^w.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessPower {
    /// Exponent applied to the value.
    pub value: u64,
    /// Exponent applied to π̃^{q-1}.
    pub period: u64,
}

impl WitnessPower {
    pub fn new(q: u32, weight: u32) -> WitnessPower {
        let (q1, w) = (q as u64 - 1, weight as u64);
        if w % q1 == 0 {
            WitnessPower {
                value: 1,
                period: w / q1,
            }
        } else {
            WitnessPower {
                value: q1,
                period: w,
            }
        }
    }
}

/// value^e / (π̃^{q-1})^f with the exponents from [`WitnessPower`].
pub fn euler_ratio(value: &InfLaurent, weight: u32) -> Result<InfLaurent> {
    let fq = value.field();
    let wp = WitnessPower::new(fq.q(), weight);
    let x = value.pow(wp.value);
    let want = x.rel_prec() as i64 + 2;
    let period = carlitz_period_power(fq, fq.q() as i64 - want + 1).pow(wp.period);
    x.div(&period)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EulerVerdict {
    /// The ratio is this element of k at both precisions.
    Eulerian(RatFunc),
    /// No ratio of height ≤ H fits at the working precision.
    NotToPrecision,
}

impl EulerVerdict {
    pub fn is_eulerian(&self) -> bool {
        matches!(self, EulerVerdict::Eulerian(_))
    }

    pub fn witness(&self) -> Option<&RatFunc> {
        match self {
            EulerVerdict::Eulerian(r) => Some(r),
            EulerVerdict::NotToPrecision => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EulerReport {
    pub verdict: EulerVerdict,
    pub witness_power: WitnessPower,
    /// Ratio as computed at the first working precision.
    pub ratio: InfLaurent,
    /// Exponent bound of the recheck.
    pub recheck_prec: i64,
}

// ratio known for all exponents ≥ target, lowering the value precision as needed
fn ratio_to(
    value_at: &dyn Fn(i64) -> Result<InfLaurent>,
    weight: u32,
    target: i64,
) -> Result<InfLaurent> {
    let mut p = target;
    for _ in 0..ROUNDS {
        let v = value_at(p)?;
        if v.is_zero() {
            p = 2 * p - 8;
            continue;
        }
        let ratio = euler_ratio(&v, weight)?;
        if ratio.prec() <= target {
            return Ok(ratio.truncate(target));
        }
        p -= ratio.prec() - target;
    }
    Err(Error::PrecisionUnreachable(format!(
        "ratio not known down to θ^{target}"
    )))
}

/// Reconstructs the ratio at height h from a value oracle, then repeats the
/// reconstruction at doubled precision; a verdict survives only if both agree.
pub fn eulerian_ratio_check(
    value_at: &dyn Fn(i64) -> Result<InfLaurent>,
    weight: u32,
    prec: i64,
    h: u32,
) -> Result<EulerReport> {
    if weight == 0 {
        return Err(Error::InvalidInput("weight must be positive".into()));
    }
    // reconstruction needs exponents down to -(2h+1) and 2h+2 coefficients
    let base = prec.min(-(2 * h as i64 + 1) - 2);
    let ratio = ratio_to(value_at, weight, base)?;
    let first = reconstruct_or_retry(&ratio, value_at, weight, base, h)?;
    let recheck_prec = 2 * base;
    let verdict = match first {
        None => EulerVerdict::NotToPrecision,
        Some(r) => {
            let again = ratio_to(value_at, weight, recheck_prec)?;
            match rational_reconstruct(&again, h)? {
                Some(r2) if r2 == r => EulerVerdict::Eulerian(r),
                _ => EulerVerdict::NotToPrecision,
            }
        }
    };
    Ok(EulerReport {
        verdict,
        witness_power: WitnessPower::new(ratio.field().q(), weight),
        ratio,
        recheck_prec,
    })
}

// a large ratio can leave fewer than 2h+2 known coefficients; go deeper then
fn reconstruct_or_retry(
    ratio: &InfLaurent,
    value_at: &dyn Fn(i64) -> Result<InfLaurent>,
    weight: u32,
    base: i64,
    h: u32,
) -> Result<Option<RatFunc>> {
    match rational_reconstruct(ratio, h) {
        Err(Error::InsufficientPrecision(_)) => {
            let deeper = base - ratio.val().max(0) - 2;
            rational_reconstruct(&ratio_to(value_at, weight, deeper)?, h)
        }
        other => other,
    }
}

/// Eulerianness of Li_s(u)_∞ by bounded-height reconstruction.
pub fn eulerian_check_inf(
    s: &CompositionIndex,
    u: &[RatFunc],
    prec: i64,
    h: u32,
) -> Result<EulerReport> {
    let value_at = |p: i64| cmpl_eval_inf(s, u, p);
    eulerian_ratio_check(&value_at, s.weight(), prec, h)
}

/// [`eulerian_check_inf`] for arguments given in an extension; every
/// argument must lie in k.
pub fn eulerian_check_ext(
    s: &CompositionIndex,
    u: &[ExtElem],
    prec: i64,
    h: u32,
) -> Result<EulerReport> {
    let args = u
        .iter()
        .map(|x| {
            x.as_rat()
                .cloned()
                .ok_or_else(|| Error::Domain(format!("{x} is not in k; there is no ∞-adic value")))
        })
        .collect::<Result<Vec<_>>>()?;
    eulerian_check_inf(s, &args, prec, h)
}

/// Σ over monic a of degree d of a^{-n}, by enumeration.
pub fn power_sum_enumerated(fq: Fq, d: usize, n: u32) -> RatFunc {
    let mut acc = RatFunc::zero(fq);
    for a in Poly::all_monic(fq, d) {
        let term = RatFunc::new(Poly::one(fq), a.pow(n as u64)).expect("monic");
        acc = acc.add(&term);
    }
    acc
}

/// Σ over monic a of degree d of a^{-n}; for n ≤ q this is 1/L_d^n.
pub fn power_sum_exact(fq: Fq, d: usize, n: u32) -> RatFunc {
    if n <= fq.q() {
        let l = LSequence::new(fq).l(d);
        RatFunc::new(Poly::one(fq), l.pow(n as u64)).expect("L_d is nonzero")
    } else {
        power_sum_enumerated(fq, d, n)
    }
}

#[derive(Clone, Debug)]
pub enum ZetaPlace {
    /// Expansion in k_∞ known for exponents ≥ prec.
    Inf(i64),
    /// Expansion in k_v with the given relative precision.
    V(Arc<Place>, u32),
}

#[derive(Clone, Debug)]
pub enum ZetaValue {
    Inf(InfLaurent),
    V(VAdicNumber),
}

#[derive(Clone, Debug)]
pub struct ZetaPartial {
    pub value: ZetaValue,
    /// Every omitted term has ∞-adic degree at most this.
    pub tail_degree: i64,
}

fn check_zeta_args(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    Ok(())
}

// S_d(n) has degree ≤ -n·d, and exactly -n·deg L_d when n ≤ q
fn sum_degree_bound(fq: Fq, d: usize, n: u32) -> i64 {
    if n <= fq.q() {
        -(n as i64) * LSequence::new(fq).deg_l(d)
    } else {
        -(n as i64) * d as i64
    }
}

/// Σ_{a monic, deg a ≤ b} a^{-n} at the requested place.
pub fn carlitz_zeta_partial(fq: Fq, n: u32, b: usize, place: &ZetaPlace) -> Result<ZetaPartial> {
    check_zeta_args(n)?;
    let tail_degree = -(n as i64) * (b as i64 + 1);
    let value = match place {
        ZetaPlace::Inf(prec) => {
            let mut acc = InfLaurent::from_poly(&Poly::one(fq), *prec);
            for d in 1..=b {
                if sum_degree_bound(fq, d, n) < *prec {
                    break;
                }
                acc = acc.add(&InfLaurent::from_ratfunc(&power_sum_exact(fq, d, n), *prec));
            }
            ZetaValue::Inf(acc)
        }
        ZetaPlace::V(v, digits) => {
            let mut acc = RatFunc::one(fq);
            for d in 1..=b {
                acc = acc.add(&power_sum_exact(fq, d, n));
            }
            ZetaValue::V(VAdicNumber::from_ratfunc(v, &acc, *digits))
        }
    };
    Ok(ZetaPartial { value, tail_degree })
}

/// ζ_A(n) in k_∞, known for exponents ≥ prec.
pub fn carlitz_zeta_inf(fq: Fq, n: u32, prec: i64) -> Result<InfLaurent> {
    check_zeta_args(n)?;
    let mut b = 0;
    while sum_degree_bound(fq, b + 1, n) >= prec {
        b += 1;
    }
    match carlitz_zeta_partial(fq, n, b, &ZetaPlace::Inf(prec))?.value {
        ZetaValue::Inf(x) => Ok(x),
        ZetaValue::V(_) => unreachable!("requested the ∞-adic place"),
    }
}

/// Eulerianness of ζ_A(n) by the same reconstruction as [`eulerian_check_inf`].
pub fn zeta_euler_check(fq: Fq, n: u32, prec: i64, h: u32) -> Result<EulerReport> {
    let value_at = |p: i64| carlitz_zeta_inf(fq, n, p);
    eulerian_ratio_check(&value_at, n, prec, h)
}
