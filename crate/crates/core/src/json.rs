//! Deterministic JSON encoding. Rationals are reduced `"p/q"` strings,
//! polynomial coefficient lists run from low to high degree, and operator
//! terms are sorted by `(l, m, n)`.

use serde_json::{json, Map, Value};

use crate::contact::VectorField;
use crate::diffop::{DiffOp, Mono};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::quantize::QuantizationResult;
use crate::rational::{fmt_rational, parse_rational, Rational};
use crate::superfn::SuperFn;
use crate::symbol::{GradedSymbol, Symbol};

fn rational(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

fn poly(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(rational).collect())
}

pub fn superfn_json(f: &SuperFn) -> Value {
    json!({ "f0": poly(&f.f0), "f1": poly(&f.f1), "f2": poly(&f.f2), "f12": poly(&f.f12) })
}

pub fn operator_json(d: &DiffOp) -> Value {
    let terms: Vec<Value> = d
        .terms()
        .iter()
        .map(|(mono, c)| json!({ "l": mono.l, "m": mono.m, "n": mono.n, "coeff": superfn_json(c) }))
        .collect();
    json!({ "lambda": rational(&d.lambda), "mu": rational(&d.mu), "terms": terms })
}

pub fn symbol_json(s: &Symbol) -> Value {
    json!({
        "k": s.k.to_string(),
        "delta": rational(&s.delta),
        "f1": superfn_json(&s.f1),
        "f2": superfn_json(&s.f2),
    })
}

pub fn graded_json(g: &GradedSymbol) -> Value {
    json!({
        "delta": rational(&g.delta),
        "parts": g.symbols().map(symbol_json).collect::<Vec<_>>(),
    })
}

pub fn vector_field_json(v: &VectorField) -> Value {
    json!({ "a": superfn_json(&v.a), "b1": superfn_json(&v.b1), "b2": superfn_json(&v.b2) })
}

pub fn result_json(r: &QuantizationResult) -> Value {
    let diagnostics: Vec<Value> = r
        .diagnostics
        .iter()
        .map(|d| json!({ "degree": d.degree.to_string(), "pivot": rational(&d.pivot), "rhs_zero": d.rhs_zero }))
        .collect();
    let mut out = Map::new();
    out.insert("status".into(), Value::String(r.status.to_string()));
    out.insert("operator".into(), r.operator.as_ref().map_or(Value::Null, operator_json));
    out.insert("graded".into(), r.graded.as_ref().map_or(Value::Null, graded_json));
    out.insert("diagnostics".into(), Value::Array(diagnostics));
    Value::Object(out)
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(format!("operator JSON: {}", msg.into()))
}

fn read_rational(v: &Value) -> Result<Rational> {
    v.as_str().ok_or_else(|| bad("expected a rational string")).and_then(parse_rational)
}

fn read_poly(v: &Value) -> Result<Poly> {
    let items = v.as_array().ok_or_else(|| bad("expected a coefficient list"))?;
    Ok(Poly::from_coeffs(items.iter().map(read_rational).collect::<Result<Vec<_>>>()?))
}

pub fn superfn_from_json(v: &Value) -> Result<SuperFn> {
    let part = |key: &str| v.get(key).ok_or_else(|| bad(format!("missing `{key}`"))).and_then(read_poly);
    Ok(SuperFn::new(part("f0")?, part("f1")?, part("f2")?, part("f12")?))
}

/// Inverse of [`operator_json`].
pub fn operator_from_json(v: &Value) -> Result<DiffOp> {
    let field = |key: &str| v.get(key).ok_or_else(|| bad(format!("missing `{key}`")));
    let lambda = read_rational(field("lambda")?)?;
    let mu = read_rational(field("mu")?)?;
    let mut terms = Vec::new();
    for t in field("terms")?.as_array().ok_or_else(|| bad("`terms` is not a list"))? {
        let index = |key: &str| {
            t.get(key)
                .and_then(Value::as_u64)
                .ok_or_else(|| bad(format!("term index `{key}`")))
        };
        let (l, m, n) = (index("l")?, index("m")?, index("n")?);
        if m > 1 || n > 1 {
            return Err(bad("odd exponents must be 0 or 1"));
        }
        let l = u32::try_from(l).map_err(|_| bad("`l` out of range"))?;
        let coeff = superfn_from_json(t.get("coeff").ok_or_else(|| bad("missing `coeff`"))?)?;
        terms.push((Mono::new(l, m as u8, n as u8), coeff));
    }
    Ok(DiffOp::from_terms(lambda, mu, terms))
}
