use std::sync::Arc;

use cmpl_core::algebra::{ExtElem, ExtField, Fq, RatFunc};
use cmpl_core::completions::{Embedding, Place};
use cmpl_core::continuation::continuation_multiplier;
use cmpl_core::continuation::{extended_cmpl, extended_cmspl, log_commute_check, log_eval_v};
use cmpl_core::criterion::{
    carlitz_zeta_partial, eulerian_check_ext, theorem_harness, torsion_search, zeta_euler_check,
    EulerReport, ZetaPlace, ZetaValue, DEFAULT_PRECISION,
};
use cmpl_core::parse::{
    parse_composition, parse_ext_tuple, parse_field, parse_minpoly, parse_poly, parse_t_poly,
};
use cmpl_core::polylog::{
    cmpl_eval_inf, cmpl_eval_v, cmspl_eval_inf, cmspl_eval_v, CompositionIndex,
};
use cmpl_core::tmodule::{build_tmodule, TModuleSpec};
use cmpl_core::{json, Error, Result};
use serde_json::{json, Map, Value};

use crate::args::{Common, PlaceKind};

const DEFAULT_INF_PREC: i64 = -20;

pub struct Setup {
    pub fq: Fq,
    pub field: Arc<ExtField>,
}

impl Setup {
    pub fn new(c: &Common) -> Result<Setup> {
        let fq = parse_field(c.q.unwrap_or(3), c.fq_modulus.as_deref())?;
        let field = match &c.ext_minpoly {
            Some(m) => ExtField::new(parse_minpoly(m, fq)?)?,
            None => ExtField::trivial(fq),
        };
        Ok(Setup { fq, field })
    }

    fn s(&self, c: &Common) -> Result<CompositionIndex> {
        parse_composition(c.s.as_deref().ok_or_else(|| missing("--s"))?)
    }

    fn u(&self, c: &Common) -> Result<Vec<ExtElem>> {
        parse_ext_tuple(c.u.as_deref().ok_or_else(|| missing("--u"))?, &self.field)
    }

    fn u_in_k(&self, c: &Common) -> Result<Vec<RatFunc>> {
        self.u(c)?
            .iter()
            .map(|x| {
                x.as_rat()
                    .cloned()
                    .ok_or_else(|| Error::Domain(format!("{x} is not in k; no value at ∞")))
            })
            .collect()
    }

    fn embedding(&self, c: &Common) -> Result<Embedding> {
        let v = parse_poly(c.v.as_deref().ok_or_else(|| missing("--v"))?, self.fq)?;
        let place = Place::new(v)?;
        let root = c
            .root
            .as_deref()
            .map(|r| parse_poly(r, self.fq))
            .transpose()?;
        Embedding::new(&self.field, &place, root)
    }

    fn module(&self, c: &Common) -> Result<TModuleSpec<ExtElem>> {
        build_tmodule(&self.s(c)?, &self.u(c)?, &self.field)
    }

    fn point(&self, c: &Common, g: &TModuleSpec<ExtElem>) -> Result<Vec<ExtElem>> {
        match &c.w {
            Some(w) => {
                let w = parse_ext_tuple(w, &self.field)?;
                if w.len() != g.dim() {
                    return Err(Error::DimensionMismatch(format!(
                        "point has {} coordinates, module has dimension {}",
                        w.len(),
                        g.dim()
                    )));
                }
                Ok(w)
            }
            None => Ok(g.special_point()),
        }
    }
}

fn missing(flag: &str) -> Error {
    Error::InvalidInput(format!("{flag} is required"))
}

fn place_of(c: &Common) -> PlaceKind {
    c.place.unwrap_or(if c.v.is_some() {
        PlaceKind::V
    } else {
        PlaceKind::Inf
    })
}

fn digits(c: &Common) -> Result<u32> {
    match c.prec {
        None => Ok(DEFAULT_PRECISION),
        Some(p) if p >= 1 => Ok(p as u32),
        Some(p) => Err(Error::InvalidInput(format!(
            "v-adic precision {p} must be ≥ 1"
        ))),
    }
}

fn header(name: &str, c: &Common, st: &Setup) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(name));
    m.insert("q".into(), json!(st.fq.q()));
    for (k, v) in [
        ("s", &c.s),
        ("u", &c.u),
        ("v", &c.v),
        ("ext_minpoly", &c.ext_minpoly),
    ] {
        if let Some(v) = v {
            m.insert(k.into(), json!(v));
        }
    }
    m
}

/// Runs one subcommand and returns its JSON report.
pub fn run(name: &str, c: &Common) -> Result<Value> {
    let st = Setup::new(c)?;
    let mut out = header(name, c, &st);
    let body = match name {
        "cmpl" | "cmspl" => series(name == "cmspl", c, &st)?,
        "log-coeffs" => log_coeffs(c, &st)?,
        "log-eval" => log_eval(c, &st)?,
        "continue" => cont(c, &st)?,
        "torsion" => torsion(c, &st)?,
        "check" => check(c, &st)?,
        "euler" => euler(c, &st)?,
        "zeta" => zeta(c, &st)?,
        "tmodule-show" => tmodule_show(c, &st)?,
        _ => return Err(Error::InvalidInput(format!("unknown command {name:?}"))),
    };
    if let Value::Object(b) = body {
        out.extend(b);
    }
    Ok(Value::Object(out))
}

fn series(star: bool, c: &Common, st: &Setup) -> Result<Value> {
    let s = st.s(c)?;
    Ok(match place_of(c) {
        PlaceKind::Inf => {
            let prec = c.prec.unwrap_or(DEFAULT_INF_PREC);
            let u = st.u_in_k(c)?;
            let x = if star {
                cmspl_eval_inf(&s, &u, prec)?
            } else {
                cmpl_eval_inf(&s, &u, prec)?
            };
            json!({"place": "inf", "value": json::inf(&x)})
        }
        PlaceKind::V => {
            let emb = st.embedding(c)?;
            let n = digits(c)?;
            let u = st.u(c)?;
            let x = if star {
                cmspl_eval_v(&s, &u, &emb, n)?
            } else {
                cmpl_eval_v(&s, &u, &emb, n)?
            };
            json!({"place": "v", "precision": n, "value": json::vadic(&x)})
        }
    })
}

fn log_coeffs(c: &Common, st: &Setup) -> Result<Value> {
    let g = st.module(c)?;
    let imax = c.n.unwrap_or(3) as usize;
    let p = g.log_coeffs(imax)?;
    let mats: Vec<Value> = p.iter().map(|m| json::matrix(m, json::ext)).collect();
    Ok(json!({"dim": g.dim(), "exact": true, "coeffs": mats}))
}

fn log_eval(c: &Common, st: &Setup) -> Result<Value> {
    let g = st.module(c)?;
    let w = st.point(c, &g)?;
    let emb = st.embedding(c)?;
    let n = digits(c)?;
    let y = log_eval_v(&g, &w, &emb, n)?;
    let mut out = json!({
        "precision": n,
        "point": w.iter().map(json::ext).collect::<Vec<_>>(),
        "log": y.iter().map(json::vadic).collect::<Vec<_>>(),
    });
    if let Some(a) = &c.a {
        let a = parse_t_poly(a, st.fq)?;
        let res = log_commute_check(&g, &w, &a, &emb, n as i64)?;
        out["commute_residue"] = json!(res.iter().map(json::vadic).collect::<Vec<_>>());
        out["commute_ok"] = json!(res.iter().all(|r| r.vanishes_to(n as i64)));
    }
    Ok(out)
}

fn cont(c: &Common, st: &Setup) -> Result<Value> {
    let s = st.s(c)?;
    let u = st.u(c)?;
    let emb = st.embedding(c)?;
    let n = digits(c)?;
    let g = build_tmodule(&s, &u, &st.field)?;
    let m = continuation_multiplier(&g, &g.special_point(), &emb)?;
    let star = extended_cmspl(&s, &u, &emb, n)?;
    let li = extended_cmpl(&s, &u, &emb, n)?;
    Ok(json!({
        "precision": n,
        "multiplier": json::t_poly(&m.a),
        "moved_point": m.moved.iter().map(json::ext).collect::<Vec<_>>(),
        "star": star.iter().map(json::vadic).collect::<Vec<_>>(),
        "li": json::vadic(&li),
    }))
}

fn torsion(c: &Common, st: &Setup) -> Result<Value> {
    let g = st.module(c)?;
    let w = st.point(c, &g)?;
    let d = c.deg_bound.unwrap_or(4);
    let t = torsion_search(&g, &w, d)?;
    Ok(json!({"degree_bound": d, "certificate": t.label(), "verified": t.certificate().is_some()}))
}

fn check(c: &Common, st: &Setup) -> Result<Value> {
    let emb = st.embedding(c)?;
    let rep = theorem_harness(
        c.case.as_deref().unwrap_or("cli"),
        &st.s(c)?,
        &st.u(c)?,
        &emb,
        digits(c)?,
        c.deg_bound.unwrap_or(4),
    )?;
    Ok(rep.to_json())
}

fn euler_json(r: &EulerReport) -> Value {
    json!({
        "eulerian": r.verdict.is_eulerian(),
        "witness": r.verdict.witness().map(json::ratfunc),
        "value_power": r.witness_power.value,
        "period_power": r.witness_power.period,
        "ratio": json::inf(&r.ratio),
        "recheck_prec": r.recheck_prec,
    })
}

fn euler(c: &Common, st: &Setup) -> Result<Value> {
    let h = c.height.unwrap_or(4);
    let prec = c.prec.unwrap_or(-(4 * h as i64 + 8));
    let rep = match (&c.s, c.n) {
        (None, Some(n)) => zeta_euler_check(st.fq, n, prec, h)?,
        _ => eulerian_check_ext(&st.s(c)?, &st.u(c)?, prec, h)?,
    };
    let mut out = euler_json(&rep);
    out["height"] = json!(h);
    out["prec"] = json!(prec);
    Ok(out)
}

fn zeta(c: &Common, st: &Setup) -> Result<Value> {
    let n = c.n.ok_or_else(|| missing("--n"))?;
    let b = c.deg_bound.unwrap_or(2);
    let place = match place_of(c) {
        PlaceKind::Inf => ZetaPlace::Inf(c.prec.unwrap_or(DEFAULT_INF_PREC)),
        PlaceKind::V => {
            let v = parse_poly(c.v.as_deref().ok_or_else(|| missing("--v"))?, st.fq)?;
            ZetaPlace::V(Place::new(v)?, digits(c)?)
        }
    };
    let z = carlitz_zeta_partial(st.fq, n, b, &place)?;
    let value = match &z.value {
        ZetaValue::Inf(x) => json::inf(x),
        ZetaValue::V(x) => json::vadic(x),
    };
    Ok(json!({"n": n, "degree_bound": b, "tail_degree": z.tail_degree, "value": value}))
}

fn tmodule_show(c: &Common, st: &Setup) -> Result<Value> {
    let g = st.module(c)?;
    let s = g.index();
    Ok(json!({
        "dim": g.dim(),
        "blocks": s.dims(),
        "block_bottoms": (1..=s.depth()).map(|l| s.block_bottom(l)).collect::<Vec<_>>(),
        "N": json::matrix(g.n(), json::ext),
        "E": json::matrix(g.e(), json::ext),
        "special_point": g.special_point().iter().map(json::ext).collect::<Vec<_>>(),
    }))
}

/// Exit code for an error: 2 domain, 3 precision, 4 parse, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) => 2,
        Error::PrecisionUnreachable(_) | Error::InsufficientPrecision(_) => 3,
        Error::Parse(_) => 4,
        _ => 1,
    }
}
