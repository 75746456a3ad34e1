//! JSON reading and writing. Rationals are `"p/q"` strings (`"p"` when the
//! denominator is one); polynomials are coefficient arrays, lowest first.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::classify::{DiagramClass, Shape};
use crate::decompose::{Decomposition, IndecompDescriptor, PathAlias};
use crate::exactalg::{format_rational, parse_rational, RatMatrix, RatPoly, Rational};
use crate::flows::FlowAssignment;
use crate::representation::{RepError, Representation};
use crate::semigraph::{validate_diagram, DiagramRecord, SemigraphError, SubdiagramRef, TensorDiagram};
use crate::wildness::{MatrixPair, WildError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Rational(String),
    #[error("unexpected structure: {0}")]
    Structure(String),
    #[error("cannot read {path}: {reason}")]
    File { path: String, reason: String },
    #[error(transparent)]
    Semigraph(#[from] SemigraphError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Wild(#[from] WildError),
}

fn structure(msg: impl Into<String>) -> ParseError {
    ParseError::Structure(msg.into())
}

pub fn parse_json(text: &str) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))
}

/// Pretty-printed JSON with sorted object keys and a final newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn read_file(path: &Path) -> Result<String, ParseError> {
    std::fs::read_to_string(path).map_err(|e| ParseError::File {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

// scalars, matrices, polynomials

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

/// Accepts `"p/q"` strings and integer numbers.
pub fn rational_from_json(v: &Value) -> Result<Rational, ParseError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| ParseError::Rational(e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(crate::exactalg::rat(n.as_i64().unwrap())),
        other => Err(structure(format!("expected a rational, got {other}"))),
    }
}

pub fn matrix_rows_to_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(rational_to_json).collect()))
            .collect(),
    )
}

/// Matrix from a list of rows; `cols` is needed when there are no rows.
pub fn matrix_from_rows(v: &Value, cols: Option<usize>) -> Result<RatMatrix, ParseError> {
    let rows = v.as_array().ok_or_else(|| structure("matrix must be a list of rows"))?;
    let mut data = Vec::new();
    let mut width = cols;
    for row in rows {
        let row = row.as_array().ok_or_else(|| structure("matrix row must be a list"))?;
        match width {
            Some(w) if w != row.len() => return Err(structure("ragged matrix")),
            _ => width = Some(row.len()),
        }
        for x in row {
            data.push(rational_from_json(x)?);
        }
    }
    Ok(RatMatrix::from_vec(rows.len(), width.unwrap_or(0), data))
}

pub fn matrix_to_json(m: &RatMatrix) -> Value {
    json!({"rows": m.rows(), "cols": m.cols(), "entries": matrix_rows_to_json(m)})
}

pub fn matrix_from_json(v: &Value) -> Result<RatMatrix, ParseError> {
    let get = |k: &str| {
        v.get(k)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| structure(format!("matrix needs an integer {k:?}")))
    };
    let (rows, cols) = (get("rows")?, get("cols")?);
    let m = matrix_from_rows(v.get("entries").ok_or_else(|| structure("matrix needs \"entries\""))?, Some(cols))?;
    if m.rows() != rows {
        return Err(structure(format!("matrix declares {rows} rows but has {}", m.rows())));
    }
    Ok(m)
}

pub fn poly_to_json(p: &RatPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rational_to_json).collect())
}

pub fn poly_from_json(v: &Value) -> Result<RatPoly, ParseError> {
    let cs = v.as_array().ok_or_else(|| structure("polynomial must be a coefficient list"))?;
    Ok(RatPoly::new(cs.iter().map(rational_from_json).collect::<Result<_, _>>()?))
}

// diagrams

pub fn diagram_to_json(d: &TensorDiagram) -> Value {
    serde_json::to_value(d.to_record()).expect("diagram serializes")
}

pub fn diagram_from_json(v: &Value) -> Result<TensorDiagram, ParseError> {
    let record: DiagramRecord = serde_json::from_value(v.clone()).map_err(|e| structure(e.to_string()))?;
    Ok(validate_diagram(record)?)
}

// representations

pub fn rep_to_json(r: &Representation) -> Value {
    let vertices: Map<String, Value> = r
        .tensors()
        .iter()
        .map(|(v, m)| (v.clone(), matrix_to_json(m)))
        .collect();
    json!({
        "diagram": diagram_to_json(r.diagram()),
        "dims": r.dims(),
        "vertices": vertices,
    })
}

/// Reads a representation; a diagram given as a path is resolved against
/// `base`.
pub fn rep_from_json(v: &Value, base: Option<&Path>) -> Result<Representation, ParseError> {
    let diagram = match v.get("diagram") {
        Some(Value::String(p)) => {
            let path = base.map_or_else(|| Path::new(p).to_path_buf(), |b| b.join(p));
            diagram_from_json(&parse_json(&read_file(&path)?)?)?
        }
        Some(obj) => diagram_from_json(obj)?,
        None => return Err(structure("representation needs \"diagram\"")),
    };
    let dims: BTreeMap<String, usize> = serde_json::from_value(v.get("dims").cloned().unwrap_or(json!({})))
        .map_err(|e| structure(format!("dims: {e}")))?;
    let vs = v
        .get("vertices")
        .and_then(Value::as_object)
        .ok_or_else(|| structure("representation needs \"vertices\""))?;
    let tensors = vs
        .iter()
        .map(|(k, m)| Ok((k.clone(), matrix_from_json(m)?)))
        .collect::<Result<BTreeMap<_, _>, ParseError>>()?;
    Ok(Representation::new(diagram, dims, tensors)?)
}

/// Canonical re-serialization of a diagram or representation file.
pub fn fmt_roundtrip(text: &str, base: Option<&Path>) -> Result<String, ParseError> {
    let v = parse_json(text)?;
    let out = if v.get("vertices").is_some_and(Value::is_object) {
        rep_to_json(&rep_from_json(&v, base)?)
    } else {
        diagram_to_json(&diagram_from_json(&v)?)
    };
    Ok(to_canonical_string(&out))
}

// flows

pub struct FlowInput {
    pub flow: FlowAssignment,
    pub u: Vec<String>,
}

pub fn flow_from_json(v: &Value) -> Result<FlowInput, ParseError> {
    let wires = v
        .get("wires")
        .and_then(Value::as_object)
        .ok_or_else(|| structure("flow needs \"wires\""))?;
    let mut flow = FlowAssignment::new();
    for (w, z) in wires {
        let pair = z
            .as_array()
            .filter(|a| a.len() == 2)
            .and_then(|a| Some((a[0].as_f64()?, a[1].as_f64()?)))
            .ok_or_else(|| structure(format!("flow value of {w:?} must be [re, im]")))?;
        flow.insert(w.clone(), Complex64::new(pair.0, pair.1));
    }
    let u: Vec<String> = serde_json::from_value(v.get("u").cloned().unwrap_or(json!([])))
        .map_err(|e| structure(format!("u: {e}")))?;
    Ok(FlowInput { flow, u })
}

pub fn flow_to_json(f: &FlowAssignment) -> Value {
    let wires: Map<String, Value> = f.iter().map(|(w, z)| (w.clone(), json!([z.re, z.im]))).collect();
    json!({ "wires": wires })
}

// wildness pairs

pub fn pairs_from_json(v: &Value) -> Result<(MatrixPair, MatrixPair), ParseError> {
    let get = |k: &str| {
        v.get(k)
            .ok_or_else(|| structure(format!("pairs need {k:?}")))
            .and_then(|m| matrix_from_rows(m, None))
    };
    Ok((
        MatrixPair::new(get("A1")?, get("B1")?)?,
        MatrixPair::new(get("A2")?, get("B2")?)?,
    ))
}

// reports

pub fn descriptor_to_json(d: &IndecompDescriptor) -> Value {
    match d {
        IndecompDescriptor::Interval { a, b } => json!({"type": "interval", "a": a, "b": b}),
        IndecompDescriptor::Band { poly, power } => {
            json!({"type": "band", "poly": poly_to_json(poly), "power": power, "field": "Q"})
        }
        IndecompDescriptor::String { start, len } => json!({"type": "string", "start": start, "len": len}),
    }
}

pub fn descriptor_from_json(v: &Value) -> Result<IndecompDescriptor, ParseError> {
    let int = |k: &str| {
        v.get(k)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| structure(format!("descriptor needs an integer {k:?}")))
    };
    match v.get("type").and_then(Value::as_str) {
        Some("interval") => Ok(IndecompDescriptor::Interval { a: int("a")?, b: int("b")? }),
        Some("band") => Ok(IndecompDescriptor::Band {
            poly: poly_from_json(v.get("poly").ok_or_else(|| structure("band needs \"poly\""))?)?,
            power: int("power")?,
        }),
        Some("string") => Ok(IndecompDescriptor::String {
            start: int("start")?,
            len: int("len")?,
        }),
        _ => Err(structure("descriptor type must be interval, band or string")),
    }
}

fn alias_to_json(a: &PathAlias) -> Value {
    match a {
        PathAlias::V0 { i } => json!({"name": "V0", "i": i}),
        PathAlias::Vlambda { lambda } => json!({"name": "Vlambda", "lambda": rational_to_json(lambda)}),
        PathAlias::W { i } => json!({"name": "W", "i": i}),
    }
}

pub fn shape_to_json(s: Shape) -> Value {
    json!({"name": s.name(), "n": s.n()})
}

/// Multiset as a list of distinct blocks with multiplicities.
pub fn decomposition_to_json(dec: &Decomposition) -> Value {
    let mut out: Vec<Value> = Vec::new();
    let mut i = 0;
    while i < dec.blocks.len() {
        let b = &dec.blocks[i];
        let mult = dec.blocks[i..].iter().take_while(|x| *x == b).count();
        let mut v = descriptor_to_json(&b.descriptor);
        v["mult"] = json!(mult);
        if let Some(a) = &b.alias {
            v["alias"] = alias_to_json(a);
        }
        out.push(v);
        i += mult;
    }
    Value::Array(out)
}

pub fn classification_to_json(components: &[(SubdiagramRef, DiagramClass)]) -> Value {
    let list: Vec<Value> = components
        .iter()
        .map(|(c, class)| {
            let mut v = json!({
                "component": c.vertices,
                "wires": c.wires,
                "class": class.label(),
            });
            match class {
                DiagramClass::Finite(s) | DiagramClass::Tame(s) => v["shape"] = shape_to_json(*s),
                DiagramClass::Wild(w) => {
                    v["witness"] = json!({"kind": w.kind.as_str(), "vertex": w.vertex, "wires": w.wires})
                }
            }
            v
        })
        .collect();
    json!({ "components": list })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;
    use crate::semigraph::shapes;

    #[test]
    fn rationals() {
        assert_eq!(rational_to_json(&ratio(-6, 4)), json!("-3/2"));
        assert_eq!(rational_from_json(&json!("4/2")).unwrap(), ratio(2, 1));
        assert!(matches!(rational_from_json(&json!("1/0")), Err(ParseError::Rational(_))));
    }

    #[test]
    fn diagram_text_round_trip() {
        let text = r#"{"vertices":["v1","v2"],"wires":[{"id":"e1","tail":"v1","head":null},{"id":"e2","tail":"v2","head":"v1"}]}"#;
        let d = diagram_from_json(&parse_json(text).unwrap()).unwrap();
        assert_eq!(d.to_json(), text);
    }

    #[test]
    fn fmt_is_idempotent_and_sorts_keys() {
        let text = r#"{"vertices":{"v1":{"entries":[["1","2/4"],["3","4"]],"cols":2,"rows":2}},"dims":{"e1":2},"diagram":{"wires":[{"head":"v1","id":"e1","tail":"v1"}],"vertices":["v1"]}}"#;
        let once = fmt_roundtrip(text, None).unwrap();
        let twice = fmt_roundtrip(&once, None).unwrap();
        assert_eq!(once, twice);
        assert!(once.find("\"diagram\"").unwrap() < once.find("\"dims\"").unwrap());
        assert!(once.contains("\"1/2\""));
        let bad = text.replace("2/4", "1/0");
        assert!(matches!(fmt_roundtrip(&bad, None), Err(ParseError::Rational(_))));
    }

    #[test]
    fn rep_round_trip() {
        let d = shapes::cycle(2);
        let r = crate::generate::gen_random(
            &d,
            &[("e1".into(), 2), ("e2".into(), 3)].into(),
            3,
            crate::generate::GenMode::Generic,
        )
        .unwrap()
        .rep;
        assert_eq!(rep_from_json(&rep_to_json(&r), None).unwrap(), r);
    }
}
