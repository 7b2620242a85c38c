//! JSON renderings of values, each carrying its precision.

use serde_json::{json, Value};

use crate::algebra::poly::fmt_fq;
use crate::algebra::{ExtElem, Matrix, Poly, RatFunc, Scalar};
use crate::completions::{InfLaurent, VAdicNumber};

pub fn poly(p: &Poly) -> Value {
    json!(p.to_string())
}

pub fn t_poly(p: &Poly) -> Value {
    json!(p.fmt_var("t"))
}

pub fn ratfunc(x: &RatFunc) -> Value {
    json!(x.to_string())
}

pub fn ext(x: &ExtElem) -> Value {
    json!(x.to_string())
}

/// Leading exponent, the exponent bound, and the known coefficients from
/// θ^val downward.
pub fn inf(x: &InfLaurent) -> Value {
    let fq = x.field();
    json!({
        "place": "inf",
        "zero": x.is_zero(),
        "val": x.val(),
        "prec": x.prec(),
        "coeffs": x.coeffs().iter().map(|&c| fmt_fq(fq, c)).collect::<Vec<_>>(),
        "text": format!("{x:?}"),
    })
}

/// v^val·unit with `prec` relative digits (absolute precision for zeros).
pub fn vadic(x: &VAdicNumber) -> Value {
    json!({
        "place": x.place().v().to_string(),
        "zero": x.is_zero(),
        "exact_zero": x.is_exact_zero(),
        "val": x.val(),
        "prec": x.prec(),
        "abs_prec": x.abs_prec(),
        "unit": x.unit().to_string(),
        "text": format!("{x:?}"),
    })
}

pub fn matrix<F: Scalar>(m: &Matrix<F>, f: impl Fn(&F) -> Value) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| f(m.get(i, j))).collect()))
        .collect();
    Value::Array(rows)
}
