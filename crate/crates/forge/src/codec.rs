//! JSON forms of ideals, unit sets and report rows.
//!
//! Coordinates are integer arrays; a rational coordinate that is not an
//! integer is written as the string `"a/b"`.

use lpi_core::algebra::{Element, FiniteAlgebra, IdealBasis};
use lpi_core::linalg::Subspace;
use lpi_core::scalar::{FieldSpec, Scalar};
use lpi_core::structure::UnitSet;
use lpi_core::suite::ReportRow;
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("missing or malformed field `{0}`")]
    Field(&'static str),
    #[error("file is over {found}, algebra is over {expected}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },
    #[error("vectors have length {found}, algebra dimension is {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("bad coordinate {0}")]
    Coordinate(String),
    #[error("the listed vectors do not span a two-sided ideal")]
    NotAnIdeal,
    #[error("listed pair {0} does not multiply to the identity")]
    NotInverse(usize),
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    if let Some(v) = s.residue_value() {
        return json!(v);
    }
    let text = s.to_string();
    match text.parse::<i64>() {
        Ok(n) => json!(n),
        Err(_) => json!(text),
    }
}

pub fn scalar_from_json(field: FieldSpec, v: &Value) -> Result<Scalar, CodecError> {
    let bad = || CodecError::Coordinate(v.to_string());
    match v {
        Value::Number(n) => n.as_i64().map(|n| field.from_i64(n)).ok_or_else(bad),
        Value::String(s) => field.parse_scalar(s).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

pub fn element_to_json(x: &Element) -> Value {
    Value::Array(x.0.iter().map(scalar_to_json).collect())
}

fn element_from_json(alg: &FiniteAlgebra, v: &Value) -> Result<Element, CodecError> {
    let coords = v.as_array().ok_or(CodecError::Field("vector"))?;
    if coords.len() != alg.dim() {
        return Err(CodecError::Dimension { expected: alg.dim(), found: coords.len() });
    }
    let coords = coords.iter().map(|c| scalar_from_json(alg.field(), c)).collect::<Result<Vec<_>, _>>()?;
    Ok(Element(coords))
}

fn header(field: FieldSpec, dim: usize) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("field".into(), json!(field.to_string()));
    m.insert("dim".into(), json!(dim));
    m
}

fn check_header(alg: &FiniteAlgebra, v: &Value) -> Result<(), CodecError> {
    let field: FieldSpec = v
        .get("field")
        .and_then(Value::as_str)
        .and_then(|s| s.parse().ok())
        .ok_or(CodecError::Field("field"))?;
    if field != alg.field() {
        return Err(CodecError::FieldMismatch { expected: alg.field(), found: field });
    }
    let dim = v.get("dim").and_then(Value::as_u64).ok_or(CodecError::Field("dim"))? as usize;
    if dim != alg.dim() {
        return Err(CodecError::Dimension { expected: alg.dim(), found: dim });
    }
    Ok(())
}

pub fn parse_json(text: &str) -> Result<Value, CodecError> {
    serde_json::from_str(text).map_err(|e| CodecError::Json(e.to_string()))
}

pub fn ideal_to_json(ideal: &IdealBasis) -> Value {
    let mut m = header(ideal.field(), ideal.ambient_dim());
    m.insert("basis".into(), Value::Array(ideal.basis().iter().map(element_to_json).collect()));
    Value::Object(m)
}

pub fn ideal_from_json(alg: &FiniteAlgebra, v: &Value) -> Result<IdealBasis, CodecError> {
    check_header(alg, v)?;
    let basis = v.get("basis").and_then(Value::as_array).ok_or(CodecError::Field("basis"))?;
    let vectors = basis.iter().map(|b| element_from_json(alg, b)).collect::<Result<Vec<_>, _>>()?;
    let space = Subspace::spanned_by(alg.field(), alg.dim(), vectors.iter().map(|e| &e.0));
    alg.ideal_from_subspace(space).map_err(|_| CodecError::NotAnIdeal)
}

pub fn units_to_json(alg: &FiniteAlgebra, units: &UnitSet) -> Value {
    let mut m = header(alg.field(), alg.dim());
    m.insert("complete".into(), json!(units.complete));
    m.insert("exponent".into(), json!(units.exponent));
    m.insert("count".into(), json!(units.len()));
    let pairs = units
        .units
        .iter()
        .map(|(u, inv)| json!({ "unit": element_to_json(u), "inverse": element_to_json(inv) }))
        .collect();
    m.insert("units".into(), Value::Array(pairs));
    Value::Object(m)
}

pub fn units_from_json(alg: &FiniteAlgebra, v: &Value) -> Result<UnitSet, CodecError> {
    check_header(alg, v)?;
    let complete = v.get("complete").and_then(Value::as_bool).ok_or(CodecError::Field("complete"))?;
    let exponent = match v.get("exponent") {
        Some(Value::Null) | None => None,
        Some(e) => Some(e.as_u64().ok_or(CodecError::Field("exponent"))?),
    };
    let list = v.get("units").and_then(Value::as_array).ok_or(CodecError::Field("units"))?;
    let one = alg.one();
    let mut units = Vec::with_capacity(list.len());
    for (i, pair) in list.iter().enumerate() {
        let u = element_from_json(alg, pair.get("unit").ok_or(CodecError::Field("unit"))?)?;
        let inv = element_from_json(alg, pair.get("inverse").ok_or(CodecError::Field("inverse"))?)?;
        if alg.mul(&u, &inv) != one || alg.mul(&inv, &u) != one {
            return Err(CodecError::NotInverse(i));
        }
        units.push((u, inv));
    }
    Ok(UnitSet { units, exponent, complete })
}

/// Suite report row with camelCase keys; absent optionals are omitted.
pub fn row_to_json(r: &ReportRow) -> Value {
    let mut m = Map::new();
    m.insert("suite".into(), json!(r.suite));
    m.insert("instance".into(), json!(r.instance));
    m.insert("assertion".into(), json!(r.assertion));
    m.insert("paperRef".into(), json!(r.paper_ref));
    m.insert("mode".into(), json!(r.mode));
    m.insert("tuplesChecked".into(), json!(r.tuples_checked));
    m.insert("holds".into(), json!(r.holds));
    if let Some(w) = &r.witness {
        m.insert("witness".into(), json!(w));
    }
    if let Some(c) = &r.certificate {
        m.insert("certificate".into(), json!(c));
    }
    if let Some(s) = r.seed {
        m.insert("seed".into(), json!(s));
    }
    m.insert("elapsedMs".into(), json!(r.elapsed_ms));
    Value::Object(m)
}
