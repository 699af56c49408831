//! Problem-file parsing and document serialization.

use serde_json::{json, Value};

use crate::linalg::UMatrix;
use crate::norm::Norm;
use crate::padic::{PadicScalar, PrecisionContext};
use crate::scalar::{Scalar, ScalarRing};
use crate::witt::{ExtRing, ExtScalar};

pub const MAX_DIMENSION: usize = 64;
pub const MAX_PRECISION: u32 = 64;

/// Input that cannot be interpreted; the message names the offending field.
#[derive(Debug, Clone, PartialEq)]
pub struct Malformed(pub String);

impl Malformed {
    pub fn field(field: &str, msg: impl std::fmt::Display) -> Self {
        Malformed(format!("field `{field}`: {msg}"))
    }
}

pub type ParseResult<T> = std::result::Result<T, Malformed>;

/// Scalars that can be written to and read from documents.
pub trait Serial: Scalar {
    fn to_json(&self) -> Value;
}

impl Serial for PadicScalar {
    fn to_json(&self) -> Value {
        scalar_json(self)
    }
}

impl Serial for ExtScalar {
    fn to_json(&self) -> Value {
        Value::Array(self.coords().iter().map(scalar_json).collect())
    }
}

pub fn scalar_json(x: &PadicScalar) -> Value {
    match x.valuation() {
        None => json!({"v": null, "u": "0"}),
        Some(v) => json!({"v": v, "u": x.unit().to_string()}),
    }
}

pub fn norm_json(n: Norm) -> Value {
    json!({"valuation": n.valuation(), "display": n.to_string()})
}

pub fn matrix_json<S: Serial>(a: &UMatrix<S>) -> Value {
    Value::Array(
        a.rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(Serial::to_json).collect()))
            .collect(),
    )
}

pub fn vector_json<S: Serial>(v: &[S]) -> Value {
    Value::Array(v.iter().map(Serial::to_json).collect())
}

/// Parses a rational written as `"a"` or `"a/b"`.
fn parse_rational(field: &str, s: &str, ctx: PrecisionContext) -> ParseResult<PadicScalar> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: i128 = num
        .parse()
        .map_err(|_| Malformed::field(field, format!("`{s}` is not an integer or fraction")))?;
    let den: i128 = den
        .parse()
        .map_err(|_| Malformed::field(field, format!("`{s}` has a malformed denominator")))?;
    PadicScalar::from_rational(num, den, ctx).map_err(|e| Malformed::field(field, e))
}

/// A base scalar: integer, `"a/b"` string, or `{"v": valuation, "u": "unit"}`.
pub fn parse_scalar(field: &str, v: &Value, ctx: PrecisionContext) -> ParseResult<PadicScalar> {
    match v {
        Value::Number(n) => {
            let n = n
                .as_i64()
                .ok_or_else(|| Malformed::field(field, "numbers must be integers"))?;
            Ok(PadicScalar::from_integer(n as i128, ctx))
        }
        Value::String(s) => parse_rational(field, s, ctx),
        Value::Object(obj) => {
            let unit = match obj.get("u") {
                Some(Value::String(s)) => s
                    .parse::<u64>()
                    .map_err(|_| Malformed::field(field, format!("unit `{s}` is not a decimal")))?,
                Some(Value::Number(n)) => n
                    .as_u64()
                    .ok_or_else(|| Malformed::field(field, "unit must be non-negative"))?,
                _ => return Err(Malformed::field(field, "scalar object needs a `u` entry")),
            };
            match obj.get("v") {
                None | Some(Value::Null) => {
                    if unit != 0 {
                        return Err(Malformed::field(field, "zero scalar must have unit 0"));
                    }
                    Ok(PadicScalar::zero(ctx))
                }
                Some(Value::Number(v)) => {
                    let v = v
                        .as_i64()
                        .ok_or_else(|| Malformed::field(field, "valuation must be an integer"))?;
                    if unit == 0 {
                        return Ok(PadicScalar::zero(ctx));
                    }
                    PadicScalar::from_parts(v, unit, ctx).map_err(|e| Malformed::field(field, e))
                }
                Some(_) => Err(Malformed::field(field, "valuation must be an integer or null")),
            }
        }
        _ => Err(Malformed::field(field, "expected a scalar")),
    }
}

/// A matrix over `Z_p` or over an unramified extension.
#[derive(Debug, Clone)]
pub enum AnyMatrix {
    Base(UMatrix<PadicScalar>),
    Ext(UMatrix<ExtScalar>),
}

impl AnyMatrix {
    pub fn dim(&self) -> usize {
        match self {
            AnyMatrix::Base(a) => a.dim(),
            AnyMatrix::Ext(a) => a.dim(),
        }
    }
}

fn parse_rows(field: &str, v: &Value) -> ParseResult<Vec<Vec<Value>>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Malformed::field(field, "expected an array of rows"))?;
    let n = rows.len();
    if n == 0 {
        return Err(Malformed::field(field, "matrix is empty"));
    }
    if n > MAX_DIMENSION {
        return Err(Malformed::field(
            field,
            format!("dimension {n} exceeds the bound {MAX_DIMENSION}"),
        ));
    }
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let row = row
                .as_array()
                .ok_or_else(|| Malformed::field(field, format!("row {i} is not an array")))?;
            if row.len() != n {
                return Err(Malformed::field(
                    field,
                    format!("row {i} has {} entries, expected {n}", row.len()),
                ));
            }
            Ok(row.clone())
        })
        .collect()
}

/// Parses an extension scalar given as a coordinate array (constant first) or as a
/// base scalar embedded as a constant.
pub fn parse_ext_scalar(field: &str, v: &Value, ring: &ExtRing) -> ParseResult<ExtScalar> {
    let ctx = ring.ctx();
    let degree = ring.degree() as usize;
    let coords = match v {
        Value::Array(items) => {
            if items.len() > degree {
                return Err(Malformed::field(
                    field,
                    format!("{} coordinates exceed the degree {degree}", items.len()),
                ));
            }
            let mut coords = items
                .iter()
                .map(|x| parse_scalar(field, x, ctx))
                .collect::<ParseResult<Vec<_>>>()?;
            coords.resize(degree, PadicScalar::zero(ctx));
            coords
        }
        other => {
            let mut coords = vec![PadicScalar::zero(ctx); degree];
            coords[0] = parse_scalar(field, other, ctx)?;
            coords
        }
    };
    ring.element(coords).map_err(|e| Malformed::field(field, e))
}

/// Parses a matrix; any array-valued entry switches to the extension of degree
/// `degree` (or the longest coordinate array when no degree is given).
pub fn parse_matrix(
    field: &str,
    v: &Value,
    ctx: PrecisionContext,
    degree: Option<u32>,
) -> ParseResult<AnyMatrix> {
    let rows = parse_rows(field, v)?;
    let longest = rows.iter().flatten().filter_map(|x| x.as_array().map(Vec::len)).max();
    let degree = match (degree, longest) {
        (Some(d), _) if d > 1 => Some(d),
        (_, Some(len)) => Some(len.max(1) as u32),
        _ => None,
    };
    match degree {
        None => {
            let parsed = rows
                .iter()
                .map(|row| row.iter().map(|x| parse_scalar(field, x, ctx)).collect())
                .collect::<ParseResult<Vec<Vec<_>>>>()?;
            UMatrix::from_rows(ctx, parsed)
                .map(AnyMatrix::Base)
                .map_err(|e| Malformed::field(field, e))
        }
        Some(d) => {
            let ring = ext_ring(field, ctx, d)?;
            let parsed = rows
                .iter()
                .map(|row| row.iter().map(|x| parse_ext_scalar(field, x, &ring)).collect())
                .collect::<ParseResult<Vec<Vec<_>>>>()?;
            UMatrix::from_rows(ring, parsed)
                .map(AnyMatrix::Ext)
                .map_err(|e| Malformed::field(field, e))
        }
    }
}

pub fn ext_ring(field: &str, ctx: PrecisionContext, degree: u32) -> ParseResult<ExtRing> {
    check_enumerable(field, ctx.p(), degree)?;
    ExtRing::with_context(ctx, degree).map_err(|e| Malformed::field(field, e))
}

pub fn check_enumerable(field: &str, p: u64, degree: u32) -> ParseResult<()> {
    match p.checked_pow(degree) {
        Some(q) if q <= crate::residue::ENUMERATION_BOUND => Ok(()),
        _ => Err(Malformed::field(
            field,
            format!("{p}^{degree} exceeds the enumeration bound 2^20"),
        )),
    }
}

pub fn parse_base_vector(field: &str, v: &Value, ctx: PrecisionContext) -> ParseResult<Vec<PadicScalar>> {
    v.as_array()
        .ok_or_else(|| Malformed::field(field, "expected an array"))?
        .iter()
        .map(|x| parse_scalar(field, x, ctx))
        .collect()
}

pub fn parse_ext_vector(field: &str, v: &Value, ring: &ExtRing) -> ParseResult<Vec<ExtScalar>> {
    v.as_array()
        .ok_or_else(|| Malformed::field(field, "expected an array"))?
        .iter()
        .map(|x| parse_ext_scalar(field, x, ring))
        .collect()
}
