//! JSON (de)serialization of algebras, involutions, Osborn data, forms and
//! verdicts. All scalar values travel as canonical scalar text, so documents
//! round-trip bit-exactly.

use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, Element};
use crate::construct::InvolutiveAlgebra;
use crate::decide::{Question, Status, Verdict, Witness};
use crate::error::AlgError;
use crate::forms::QuadraticFormData;
use crate::linalg::Mat;
use crate::osborn::OsbornData;
use crate::scalar::{parse_scalar, FieldDesc, Scalar};

fn bad(msg: impl Into<String>) -> AlgError {
    AlgError::Parse(msg.into())
}

pub fn field_to_json(field: FieldDesc) -> Value {
    match field {
        FieldDesc::Rational => json!({"kind": "rational"}),
        FieldDesc::Prime(p) => json!({"kind": "prime", "p": p}),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldDesc, AlgError> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("field.kind missing"))?;
    match kind {
        "rational" => Ok(FieldDesc::Rational),
        "prime" => {
            let p = v
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("field.p missing"))?;
            let p = u32::try_from(p).map_err(|_| bad("field.p out of range"))?;
            FieldDesc::prime(p)
        }
        other => Err(bad(format!("unknown field kind {other:?}"))),
    }
}

fn scalar_vec_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(s.to_string())).collect())
}

fn scalar_vec_from_json(v: &Value, field: FieldDesc) -> Result<Vec<Scalar>, AlgError> {
    let arr = v.as_array().ok_or_else(|| bad("expected array of scalars"))?;
    arr.iter()
        .map(|s| {
            let text = s.as_str().ok_or_else(|| bad("scalar must be a string"))?;
            parse_scalar(text, field)
        })
        .collect()
}

pub fn matrix_to_json(m: &Mat) -> Value {
    Value::Array((0..m.rows).map(|i| scalar_vec_to_json(m.row(i))).collect())
}

pub fn matrix_from_json(v: &Value, field: FieldDesc) -> Result<Mat, AlgError> {
    let arr = v.as_array().ok_or_else(|| bad("matrix must be an array"))?;
    let rows: Result<Vec<Vec<Scalar>>, AlgError> =
        arr.iter().map(|r| scalar_vec_from_json(r, field)).collect();
    let rows = rows?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(bad("ragged matrix rows"));
    }
    Ok(Mat::from_rows(field, rows))
}

fn tensor_to_json(t: &[Vec<Vec<Scalar>>]) -> Value {
    Value::Array(
        t.iter()
            .map(|plane| Value::Array(plane.iter().map(|v| scalar_vec_to_json(v)).collect()))
            .collect(),
    )
}

fn tensor_from_json(v: &Value, field: FieldDesc) -> Result<Vec<Vec<Vec<Scalar>>>, AlgError> {
    let outer = v.as_array().ok_or_else(|| bad("tensor must be an array"))?;
    outer
        .iter()
        .map(|plane| {
            let rows = plane.as_array().ok_or_else(|| bad("tensor plane must be an array"))?;
            rows.iter().map(|r| scalar_vec_from_json(r, field)).collect()
        })
        .collect()
}

/// The algebra document. Optional keys: `basis_names`, `conj` (an n×n
/// involution matrix) and `osborn` (cached decomposition data).
pub fn algebra_to_json(a: &Algebra) -> Value {
    let mut doc = Map::new();
    doc.insert("field".into(), field_to_json(a.field));
    doc.insert("dim".into(), json!(a.dim));
    doc.insert("unit".into(), scalar_vec_to_json(&a.unit));
    if let Some(names) = &a.basis_names {
        doc.insert("basis_names".into(), json!(names));
    }
    doc.insert("mul".into(), tensor_to_json(&a.mul));
    Value::Object(doc)
}

pub fn involutive_to_json(x: &InvolutiveAlgebra) -> Value {
    let mut doc = algebra_to_json(&x.algebra);
    doc.as_object_mut()
        .unwrap()
        .insert("conj".into(), matrix_to_json(&x.conj));
    doc
}

pub fn algebra_from_json(v: &Value) -> Result<Algebra, AlgError> {
    let field = field_from_json(v.get("field").ok_or_else(|| bad("field missing"))?)?;
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("dim missing"))? as usize;
    let unit = scalar_vec_from_json(v.get("unit").ok_or_else(|| bad("unit missing"))?, field)?;
    let mul = tensor_from_json(v.get("mul").ok_or_else(|| bad("mul missing"))?, field)?;
    let basis_names = match v.get("basis_names") {
        None => None,
        Some(n) => {
            let arr = n.as_array().ok_or_else(|| bad("basis_names must be an array"))?;
            let names: Result<Vec<String>, AlgError> = arr
                .iter()
                .map(|s| {
                    s.as_str()
                        .map(String::from)
                        .ok_or_else(|| bad("basis name must be a string"))
                })
                .collect();
            Some(names?)
        }
    };
    Algebra::new(field, dim, mul, unit, basis_names)
}

/// Reads the optional `conj` key alongside the algebra, validating the
/// involution axioms when present.
pub fn involutive_from_json(v: &Value) -> Result<(Algebra, Option<Mat>), AlgError> {
    let a = algebra_from_json(v)?;
    match v.get("conj") {
        None => Ok((a, None)),
        Some(c) => {
            let conj = matrix_from_json(c, a.field)?;
            let x = InvolutiveAlgebra::new(a, conj)?;
            Ok((x.algebra, Some(x.conj)))
        }
    }
}

pub fn osborn_to_json(d: &OsbornData) -> Value {
    json!({
        "im_basis": Value::Array(d.im_basis.iter().map(|u| scalar_vec_to_json(u)).collect()),
        "gram": matrix_to_json(&d.gram),
        "cross": tensor_to_json(&d.cross),
    })
}

pub fn form_to_json(f: &QuadraticFormData) -> Value {
    json!({
        "field": field_to_json(f.field),
        "m": f.m,
        "gram": matrix_to_json(&f.gram),
    })
}

fn element_to_json(e: &Element) -> Value {
    scalar_vec_to_json(&e.coords)
}

pub fn element_from_json(v: &Value, field: FieldDesc) -> Result<Element, AlgError> {
    Ok(Element::new(scalar_vec_from_json(v, field)?))
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    let witness = match &v.witness {
        None => Value::Null,
        Some(Witness { a, b, ab, ba }) => json!({
            "a": element_to_json(a),
            "b": element_to_json(b),
            "ab": element_to_json(ab),
            "ba": element_to_json(ba),
        }),
    };
    let theorem = match v.method.theorem() {
        Some(name) => Value::String(name.to_string()),
        None => Value::Null,
    };
    json!({
        "question": v.question.to_string(),
        "status": v.status.to_string(),
        "method": v.method.name(),
        "witness": witness,
        "theorem": theorem,
    })
}

/// Parses the question/status/method triple of a verdict document (used by
/// tests and scripts to consume CLI output; witnesses stay as raw JSON).
pub fn verdict_summary_from_json(
    v: &Value,
) -> Result<(Question, Status, String), AlgError> {
    let get = |k: &str| {
        v.get(k)
            .and_then(Value::as_str)
            .ok_or_else(|| bad(format!("verdict.{k} missing")))
    };
    let question = match get("question")? {
        "vnf" => Question::Vnf,
        "reversible" => Question::Reversible,
        "zero-divisor-free" => Question::ZeroDivisorFree,
        other => return Err(bad(format!("unknown question {other:?}"))),
    };
    let status = match get("status")? {
        "yes" => Status::Yes,
        "no" => Status::No,
        "unknown" => Status::Unknown,
        other => return Err(bad(format!("unknown status {other:?}"))),
    };
    Ok((question, status, get("method")?.to_string()))
}
