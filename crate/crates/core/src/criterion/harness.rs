use serde_json::{json, Value};

use super::torsion::{torsion_search, Torsion};
use crate::algebra::ExtElem;
use crate::completions::{Embedding, VAdicNumber};
use crate::continuation::{extended_cmpl, extended_cmspl};
use crate::error::{Error, Result};
use crate::polylog::CompositionIndex;
use crate::tmodule::build_tmodule;

/// Default number of v-adic digits used as the proxy for exact vanishing.
pub const DEFAULT_PRECISION: u32 = 24;

/// Continued values of both families and whether each vanishes to precision.
#[derive(Clone, Debug)]
pub struct VanishingReport {
    /// Entry ℓ-1: Li_{(s_ℓ,…,s_r)}(u_ℓ,…,u_r)_v.
    pub nonstar: Vec<VAdicNumber>,
    /// Entry ℓ-1: Li*_{(s_r,…,s_ℓ)}(u_r,…,u_ℓ)_v.
    pub star: Vec<VAdicNumber>,
    pub precision: u32,
}

impl VanishingReport {
    pub fn nonstar_vanishing(&self) -> Vec<bool> {
        self.nonstar.iter().map(|x| x.is_zero()).collect()
    }

    pub fn star_vanishing(&self) -> Vec<bool> {
        self.star.iter().map(|x| x.is_zero()).collect()
    }

    /// Condition (i): every non-star suffix value vanishes.
    pub fn i(&self) -> bool {
        self.nonstar.iter().all(|x| x.is_zero())
    }

    /// Condition (ii): every star value vanishes.
    pub fn ii(&self) -> bool {
        self.star.iter().all(|x| x.is_zero())
    }

    /// (i) and (ii) agree, as the triangular relation between the families forces.
    pub fn consistent(&self) -> bool {
        self.i() == self.ii()
    }
}

/// Evaluates both families of continued values with n digits.
pub fn simultaneous_vanishing(
    s: &CompositionIndex,
    u: &[ExtElem],
    emb: &Embedding,
    n: u32,
) -> Result<VanishingReport> {
    let r = s.depth();
    if u.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "{} arguments for depth {r}",
            u.len()
        )));
    }
    let star = extended_cmspl(s, u, emb, n)?;
    let nonstar = (1..=r)
        .map(|l| extended_cmpl(&s.slice(l, r), &u[l - 1..], emb, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(VanishingReport {
        nonstar,
        star,
        precision: n,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flag {
    /// The verdicts fit the equivalence.
    Consistent,
    /// Values vanish to precision but no certificate was found within the bound.
    Tension,
    /// A verified certificate or the (i)/(ii) relation contradicts the values;
    /// points at a precision or implementation problem.
    Inconsistent,
}

impl Flag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flag::Consistent => "CONSISTENT",
            Flag::Tension => "TENSION",
            Flag::Inconsistent => "INCONSISTENT",
        }
    }
}

#[derive(Clone, Debug)]
pub struct HarnessReport {
    pub case: String,
    pub vanishing: VanishingReport,
    pub torsion: Torsion,
    pub flag: Flag,
    pub precision: u32,
    pub degree_bound: usize,
}

impl HarnessReport {
    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case,
            "i": self.vanishing.i(),
            "ii": self.vanishing.ii(),
            "iii": self.torsion.label(),
            "flag": self.flag.as_str(),
            "precision": self.precision,
            "degree_bound": self.degree_bound,
        })
    }
}

/// The flag for given verdicts.
pub fn flag_for(i: bool, ii: bool, torsion: &Torsion) -> Flag {
    if i != ii {
        return Flag::Inconsistent;
    }
    match (torsion, i) {
        (Torsion::Certificate(_), true) => Flag::Consistent,
        (Torsion::Certificate(_), false) => Flag::Inconsistent,
        (Torsion::Inconclusive, false) => Flag::Consistent,
        (Torsion::Inconclusive, true) => Flag::Tension,
    }
}

/// Runs the vanishing evaluation and the torsion search on v_{s,u}.
pub fn theorem_harness(
    case: &str,
    s: &CompositionIndex,
    u: &[ExtElem],
    emb: &Embedding,
    n: u32,
    degree_bound: usize,
) -> Result<HarnessReport> {
    let field = u
        .first()
        .ok_or_else(|| Error::InvalidInput("no arguments".into()))?
        .ext()
        .clone();
    let g = build_tmodule(s, u, &field)?;
    let vanishing = simultaneous_vanishing(s, u, emb, n)?;
    let torsion = torsion_search(&g, &g.special_point(), degree_bound)?;
    let flag = flag_for(vanishing.i(), vanishing.ii(), &torsion);
    Ok(HarnessReport {
        case: case.to_string(),
        vanishing,
        torsion,
        flag,
        precision: n,
        degree_bound,
    })
}
