//! JSON interchange formats for lattices, isometries, codes, shells and
//! verdicts. Integers are accepted as JSON numbers or decimal strings (for
//! values beyond the native range); exact rationals are serialized as
//! strings `"p/q"` (or `"p"` when integral).

use std::str::FromStr;
use std::sync::Arc;

use num_traits::One;
use serde_json::{json, Map, Value};

use crate::classify::Verdict;
use crate::codes::CodeZp;
use crate::error::{Error, Result};
use crate::exact::matrix::IntMatrix;
use crate::exact::{Int, Rat};
use crate::isometry::Isometry;
use crate::lattice::{CosetShell, GramLattice};

/// Parse a JSON value holding an exact integer (number or string).
pub fn value_to_int(v: &Value) -> Result<Int> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Int::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Int::from(u))
            } else {
                Err(Error::Precondition(format!(
                    "non-integer number in JSON: {n}"
                )))
            }
        }
        Value::String(s) => {
            Int::from_str(s).map_err(|e| Error::Precondition(format!("bad integer '{s}': {e}")))
        }
        other => Err(Error::Precondition(format!(
            "expected an integer, found {other}"
        ))),
    }
}

/// Serialize an exact integer, as a number when it fits.
pub fn int_to_value(v: &Int) -> Value {
    match i64::try_from(v) {
        Ok(i) => json!(i),
        Err(_) => json!(v.to_string()),
    }
}

/// Parse `"p/q"` or `"p"` (or a plain JSON integer) into a rational.
pub fn value_to_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => {
            if let Some((num, den)) = s.split_once('/') {
                let n = Int::from_str(num.trim())
                    .map_err(|e| Error::Precondition(format!("bad rational '{s}': {e}")))?;
                let d = Int::from_str(den.trim())
                    .map_err(|e| Error::Precondition(format!("bad rational '{s}': {e}")))?;
                if d == Int::from(0) {
                    return Err(Error::Precondition(format!("zero denominator in '{s}'")));
                }
                Ok(Rat::new(n, d))
            } else {
                let n = Int::from_str(s.trim())
                    .map_err(|e| Error::Precondition(format!("bad rational '{s}': {e}")))?;
                Ok(Rat::from(n))
            }
        }
        Value::Number(_) => Ok(Rat::from(value_to_int(v)?)),
        other => Err(Error::Precondition(format!(
            "expected a rational string, found {other}"
        ))),
    }
}

pub fn rat_to_value(r: &Rat) -> Value {
    if r.denom().is_one() {
        json!(r.numer().to_string())
    } else {
        json!(format!("{}/{}", r.numer(), r.denom()))
    }
}

fn matrix_from_value(v: &Value) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Precondition("matrix must be an array of rows".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| Error::Precondition("matrix row must be an array".into()))?;
        out.push(
            entries
                .iter()
                .map(value_to_int)
                .collect::<Result<Vec<Int>>>()?,
        );
    }
    Ok(IntMatrix::from_rows(out))
}

fn matrix_to_value(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| int_to_value(&m[(i, j)])).collect()))
            .collect(),
    )
}

/// Lattice JSON: `{"name": str, "gram": [[int]]}`.
pub fn parse_lattice(text: &str) -> Result<GramLattice> {
    let v: Value = serde_json::from_str(text)?;
    lattice_from_value(&v)
}

pub fn lattice_from_value(v: &Value) -> Result<GramLattice> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Precondition("lattice JSON must be an object".into()))?;
    let gram = matrix_from_value(
        obj.get("gram")
            .ok_or_else(|| Error::Precondition("lattice JSON needs a 'gram' field".into()))?,
    )?;
    let name = obj.get("name").and_then(|n| n.as_str()).map(str::to_string);
    GramLattice::new(gram, name)
}

pub fn lattice_to_value(l: &GramLattice) -> Value {
    let mut obj = Map::new();
    if let Some(name) = l.name() {
        obj.insert("name".into(), json!(name));
    }
    obj.insert("gram".into(), matrix_to_value(l.gram()));
    Value::Object(obj)
}

/// Isometry JSON:
/// `{"lattice": <name or lattice object>, "matrix": [[int]], "meta": {...}}`.
/// The `meta.claimed_class` string is carried through untrusted.
pub struct IsometryJson {
    pub isometry: Isometry,
    pub claimed_class: Option<String>,
}

pub fn parse_isometry(text: &str, fallback_lattice: Option<&GramLattice>) -> Result<IsometryJson> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Precondition("isometry JSON must be an object".into()))?;
    let lattice = match obj.get("lattice") {
        Some(Value::String(name)) => crate::codes::named::named_lattice(name)?,
        Some(inline @ Value::Object(_)) => lattice_from_value(inline)?,
        None => fallback_lattice
            .cloned()
            .ok_or_else(|| Error::Precondition("isometry JSON needs a 'lattice' field".into()))?,
        Some(other) => {
            return Err(Error::Precondition(format!(
                "'lattice' must be a name or an object, found {other}"
            )))
        }
    };
    let matrix = matrix_from_value(
        obj.get("matrix")
            .ok_or_else(|| Error::Precondition("isometry JSON needs a 'matrix' field".into()))?,
    )?;
    let claimed_class = obj
        .get("meta")
        .and_then(|m| m.get("claimed_class"))
        .and_then(|c| c.as_str())
        .map(str::to_string);
    let isometry = Isometry::new(Arc::new(lattice), matrix)?;
    Ok(IsometryJson {
        isometry,
        claimed_class,
    })
}

pub fn isometry_to_value(iso: &Isometry, claimed_class: Option<&str>) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "lattice".into(),
        match iso.lattice().name() {
            Some(name) => json!(name),
            None => lattice_to_value(iso.lattice()),
        },
    );
    obj.insert("matrix".into(), matrix_to_value(iso.matrix()));
    if let Some(c) = claimed_class {
        obj.insert("meta".into(), json!({ "claimed_class": c }));
    }
    Value::Object(obj)
}

/// Code JSON: `{"p": int, "length": int, "generators": [[int]]}`.
pub fn parse_code(text: &str) -> Result<CodeZp> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Precondition("code JSON must be an object".into()))?;
    let p = obj
        .get("p")
        .and_then(|p| p.as_u64())
        .ok_or_else(|| Error::Precondition("code JSON needs a numeric 'p'".into()))?;
    let length = obj
        .get("length")
        .and_then(|l| l.as_u64())
        .ok_or_else(|| Error::Precondition("code JSON needs a numeric 'length'".into()))?
        as usize;
    let generators = obj
        .get("generators")
        .and_then(|g| g.as_array())
        .ok_or_else(|| Error::Precondition("code JSON needs 'generators'".into()))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Precondition("generator row must be an array".into()))?
                .iter()
                .map(|v| {
                    v.as_u64()
                        .ok_or_else(|| Error::Precondition("code entries must be nonnegative".into()))
                })
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<Vec<u64>>>>()?;
    CodeZp::new(p, length, generators)
}

pub fn code_to_value(c: &CodeZp) -> Value {
    json!({
        "p": c.p(),
        "length": c.length(),
        "generators": c.generators(),
    })
}

/// Coset shell JSON: base lattice name, shift as rational strings, norm,
/// count and (optionally) the vectors with rational coordinates.
pub fn shell_to_value(shell: &CosetShell, base: Option<&str>, with_vectors: bool) -> Value {
    let mut obj = Map::new();
    if let Some(b) = base {
        obj.insert("base".into(), json!(b));
    }
    obj.insert(
        "shift".into(),
        Value::Array(shell.shift.iter().map(rat_to_value).collect()),
    );
    obj.insert("norm".into(), rat_to_value(&shell.norm));
    obj.insert("count".into(), json!(shell.count()));
    if with_vectors {
        obj.insert(
            "vectors".into(),
            Value::Array(
                shell
                    .iter_vectors()
                    .map(|v| Value::Array(v.iter().map(rat_to_value).collect()))
                    .collect(),
            ),
        );
    }
    Value::Object(obj)
}

/// Verdict JSON with a machine-readable `reasons` array.
pub fn verdict_to_value(v: &Verdict) -> Value {
    json!({
        "rootless": v.rootless,
        "completely_fixed_point_free": v.completely_fixed_point_free,
        "order": v.order,
        "rank": v.rank,
        "summary": v.summary.as_str(),
        "case_i": v.case_i.as_ref().map(|c| json!({
            "n": c.n,
            "p": c.p,
            "t": c.t,
            "feasible": c.feasible,
            "witnesses": c.witnesses,
            "forced_prime": c.forced_prime,
        })),
        "case_ii": v.case_ii.iter().map(|row| json!({
            "s": row.s,
            "m": row.m,
            "epsilon": rat_to_value(&row.epsilon),
            "epsilon_in_twist_fraction": row.epsilon_in_twist_fraction,
            "epsilon_at_most_one": row.epsilon_at_most_one,
            "subcase": row.subcase.map(|c| match c {
                crate::classify::TwistSubcase::WeightOneMinusRecip => "1-1/m",
                crate::classify::TwistSubcase::WeightOne => "1",
            }),
            "det_condition": row.det_condition,
            "admissible": row.admissible,
            "family": row.family.map(|f| f.as_str()),
        })).collect::<Vec<_>>(),
        "reasons": v.reasons.iter().map(|r| json!({
            "constraint": r.constraint,
            "values": r.values,
        })).collect::<Vec<_>>(),
        "notes": v.notes,
    })
}
