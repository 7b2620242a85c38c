//! The completions k_∞ and k_v, with explicit precision on every value.

pub mod hensel;
pub mod inf;
pub mod vadic;

pub use hensel::{hensel_lift, Embedding};
pub use inf::{carlitz_period_power, rational_reconstruct, InfLaurent};
pub use vadic::{Place, VAdicNumber, VCtx};

use crate::error::{Error, Result};

/// Requested output precision plus guard digits used while computing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionBudget {
    pub target: u32,
    pub slack: u32,
}

const MAX_ROUNDS: u32 = 6;

impl PrecisionBudget {
    pub fn new(target: u32) -> PrecisionBudget {
        PrecisionBudget { target, slack: 4 }
    }

    /// Runs `f` at increasing working precision until `ok` accepts the
    /// result. Insufficient-precision errors trigger a retry; anything
    /// else propagates.
    pub fn run<T>(
        &self,
        mut f: impl FnMut(u32) -> Result<T>,
        ok: impl Fn(&T) -> bool,
    ) -> Result<T> {
        let mut slack = self.slack;
        for _ in 0..MAX_ROUNDS {
            match f(self.target + slack) {
                Ok(x) if ok(&x) => return Ok(x),
                Ok(_) | Err(Error::InsufficientPrecision(_)) => {}
                Err(e) => return Err(e),
            }
            slack = (slack * 2).max(4) + self.target / 2;
        }
        Err(Error::PrecisionUnreachable(format!(
            "{} digits not certified after {MAX_ROUNDS} rounds",
            self.target
        )))
    }
}

/// Calls `f(abs)` for growing absolute precision until the value meets
/// the output contract for `n`, then trims it to n relative digits.
pub fn certify_v(n: u32, mut f: impl FnMut(i64) -> Result<VAdicNumber>) -> Result<VAdicNumber> {
    let mut x = certify_vec(n, |abs| Ok(vec![f(abs)?]))?;
    Ok(x.pop().expect("one value"))
}

/// [`certify_v`] for several values computed together; every entry must
/// meet the contract.
pub fn certify_vec(
    n: u32,
    mut f: impl FnMut(i64) -> Result<Vec<VAdicNumber>>,
) -> Result<Vec<VAdicNumber>> {
    let n = n.max(1);
    let mut abs = n as i64 + 2;
    for _ in 0..MAX_ROUNDS {
        let xs = f(abs)?;
        if xs.iter().all(|x| meets(x, n)) {
            return Ok(xs.iter().map(|x| x.truncate_rel(n)).collect());
        }
        let want = xs
            .iter()
            .filter(|x| !meets(x, n))
            .map(|x| {
                if x.is_zero() {
                    abs + n as i64
                } else {
                    x.val() + n as i64 + 2
                }
            })
            .max()
            .unwrap_or(abs);
        abs = want.max(abs + abs / 2 + 2);
    }
    Err(Error::PrecisionUnreachable(format!(
        "{n} digits not certified after {MAX_ROUNDS} rounds"
    )))
}

/// The output contract: relative precision ≥ n for nonzero values,
/// absolute precision ≥ n for zeros.
pub fn meets(x: &VAdicNumber, n: u32) -> bool {
    if x.is_exact_zero() {
        true
    } else if x.is_zero() {
        x.val() >= n as i64
    } else {
        x.prec() >= n
    }
}
