//! JSON encoding shared by the CLI: complex numbers as `[re, im]`, matrices as
//! row-major nested arrays, lattices as `{"n", "generators"}` with one row
//! per generator. Floats are written with 17 significant digits.

use std::io;

use serde_json::ser::{Formatter, Serializer};
use serde_json::{json, Map, Value};

use crate::lattice::LatticeBasis;
use crate::numeric::{Complex, ComplexMatrix, Tolerance};
use crate::reallinear::{BlockForm, ConjugatePairForm, NormalizedForm, RealLinearMap, SplitForm};
use crate::Error;

/// Structurally invalid input (as opposed to a mathematical failure).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// Either a malformed document or a domain error raised while building objects from it.
#[derive(Debug, Clone, PartialEq)]
pub enum DecodeError {
    Input(InputError),
    Domain(Error),
}

impl From<InputError> for DecodeError {
    fn from(e: InputError) -> Self {
        DecodeError::Input(e)
    }
}

impl From<Error> for DecodeError {
    fn from(e: Error) -> Self {
        DecodeError::Domain(e)
    }
}

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

/// `%.17g`, keeping a decimal point and printing `-0` as `0.0`.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return "0.0".to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, x);
        let trimmed = if fixed.contains('.') {
            fixed.trim_end_matches('0')
        } else {
            &fixed
        };
        let trimmed = trimmed.strip_suffix('.').unwrap_or(trimmed);
        if trimmed.contains('.') {
            trimmed.to_string()
        } else {
            format!("{trimmed}.0")
        }
    } else {
        let m = mantissa.trim_end_matches('0');
        let m = m.strip_suffix('.').unwrap_or(m);
        let m = if m.contains('.') {
            m.to_string()
        } else {
            format!("{m}.0")
        };
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

struct SeventeenDigits;

impl Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Compact JSON with keys in sorted order and 17-digit floats.
pub fn to_string(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, SeventeenDigits);
    serde::Serialize::serialize(value, &mut ser).expect("writing to memory");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// Finite floats as numbers; non-finite ones as the strings `"inf"`, `"-inf"`, `"nan"`.
pub fn num(x: f64) -> Value {
    match serde_json::Number::from_f64(x) {
        Some(n) => Value::Number(n),
        None if x.is_nan() => Value::String("nan".into()),
        None if x > 0.0 => Value::String("inf".into()),
        None => Value::String("-inf".into()),
    }
}

pub fn complex_json(z: Complex) -> Value {
    json!([num(z.re), num(z.im)])
}

pub fn vector_json(v: &[Complex]) -> Value {
    Value::Array(v.iter().map(|&z| complex_json(z)).collect())
}

pub fn matrix_json(m: &ComplexMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_json(m.row(i))).collect())
}

pub fn reals_json(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| num(x)).collect())
}

pub fn lattice_json(l: &LatticeBasis) -> Value {
    let g = l.generators();
    let rows: Vec<Value> = (0..g.cols()).map(|j| vector_json(&g.column(j))).collect();
    json!({ "n": l.n(), "generators": rows })
}

pub fn map_json(map: &RealLinearMap) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), Value::String(map.kind().name().into()));
    match map {
        RealLinearMap::Block(f) => {
            for (name, block) in ["e1", "e2", "e3", "e4"].iter().zip(f.blocks()) {
                obj.insert((*name).into(), matrix_json(block));
            }
        }
        RealLinearMap::Split(f) => {
            obj.insert("a".into(), matrix_json(f.a()));
            obj.insert("b".into(), matrix_json(f.b()));
        }
        RealLinearMap::ConjugatePair(f) => {
            obj.insert("m".into(), matrix_json(f.m()));
            obj.insert("n".into(), matrix_json(f.n()));
        }
        RealLinearMap::Normalized(f) => {
            obj.insert("e".into(), matrix_json(f.e()));
            obj.insert("prefactor".into(), matrix_json(f.prefactor()));
        }
    }
    Value::Object(obj)
}

pub fn parse_real(v: &Value, what: &str) -> Result<f64, InputError> {
    let x = v
        .as_f64()
        .ok_or_else(|| bad(format!("{what}: expected a number")))?;
    if !x.is_finite() {
        return Err(bad(format!("{what}: number is not finite")));
    }
    Ok(x)
}

pub fn parse_complex(v: &Value, what: &str) -> Result<Complex, InputError> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => Ok(Complex::new(parse_real(re, what)?, parse_real(im, what)?)),
        _ => Err(bad(format!("{what}: expected [re, im]"))),
    }
}

pub fn parse_vector(v: &Value, what: &str) -> Result<Vec<Complex>, InputError> {
    let items = v
        .as_array()
        .ok_or_else(|| bad(format!("{what}: expected an array of [re, im]")))?;
    items.iter().map(|z| parse_complex(z, what)).collect()
}

pub fn parse_matrix(v: &Value, what: &str) -> Result<ComplexMatrix, InputError> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad(format!("{what}: expected an array of rows")))?;
    let rows: Vec<Vec<Complex>> = rows
        .iter()
        .map(|r| parse_vector(r, what))
        .collect::<Result<_, _>>()?;
    if rows.is_empty() || rows[0].is_empty() {
        return Err(bad(format!("{what}: empty matrix")));
    }
    ComplexMatrix::from_rows(&rows).map_err(|e| bad(format!("{what}: {e}")))
}

pub fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value, InputError> {
    obj.get(key)
        .ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

pub fn parse_lattice(v: &Value, tol: Tolerance) -> Result<LatticeBasis, DecodeError> {
    let n = field(v, "n")?
        .as_u64()
        .ok_or_else(|| bad("\"n\" must be a positive integer"))? as usize;
    let rows = field(v, "generators")?
        .as_array()
        .ok_or_else(|| bad("\"generators\" must be an array"))?;
    if n == 0 || rows.len() != 2 * n {
        return Err(bad(format!(
            "lattice with n = {n} needs {} generators, got {}",
            2 * n,
            rows.len()
        ))
        .into());
    }
    let mut g = ComplexMatrix::zeros(n, 2 * n);
    for (j, row) in rows.iter().enumerate() {
        let v = parse_vector(row, "generator")?;
        if v.len() != n {
            return Err(bad(format!(
                "generator {j} has {} entries, expected {n}",
                v.len()
            ))
            .into());
        }
        for (i, z) in v.into_iter().enumerate() {
            g[(i, j)] = z;
        }
    }
    Ok(LatticeBasis::from_generators(g, tol)?)
}

pub fn parse_map(v: &Value) -> Result<RealLinearMap, DecodeError> {
    let kind = field(v, "kind")?
        .as_str()
        .ok_or_else(|| bad("\"kind\" must be a string"))?;
    let m = |key: &str| parse_matrix(field(v, key)?, key);
    let map: RealLinearMap = match kind {
        "block" => BlockForm::new(m("e1")?, m("e2")?, m("e3")?, m("e4")?)?.into(),
        "split" => SplitForm::new(m("a")?, m("b")?)?.into(),
        "conjugate_pair" => ConjugatePairForm::new(m("m")?, m("n")?)?.into(),
        "normalized" => {
            let e = m("e")?;
            match v.get("prefactor") {
                Some(p) => NormalizedForm::with_prefactor(parse_matrix(p, "prefactor")?, e)?.into(),
                None => NormalizedForm::new(e)?.into(),
            }
        }
        other => return Err(bad(format!("unknown map kind \"{other}\"")).into()),
    };
    Ok(map)
}
