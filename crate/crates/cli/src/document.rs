//! The JSON structure file format.
//!
//! ```json
//! {
//!   "name": "example",
//!   "dimension": 2,
//!   "parameters": { "a": "1" },
//!   "brackets": [ { "i": 1, "j": 2, "coefficients": { "2": "a" } } ],
//!   "phi": [["1", "0"], ["0", "1"]],
//!   "metric": [["1", "0"], ["0", "-1"]],
//!   "J": [["0", "-1"], ["1", "0"]]
//! }
//! ```
//!
//! Basis indices are 1-based. Matrix entries and coefficients are
//! expression strings (`"-B/A"`, `"1/2"`) or JSON numbers. Matrices use the
//! column convention: column `j` holds the image of `e_j`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use homnorden_core::classify::{BracketExpr, InstantiationError, MatrixExpr, ParametricStructure};
use homnorden_core::exactnum::{parse_expr, ExprError, ParamExpr};
use homnorden_core::homalg::singular_phi_witness;
use homnorden_core::report::Witness;
use serde_json::{Map, Value};

/// Keys accepted at the top level besides the structure fields.
const METADATA_KEYS: [&str; 2] = ["description", "expect"];
const MAX_DIMENSION: u64 = 64;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("{pointer}: {source}")]
    Expr { pointer: String, source: ExprError },
    #[error("at default parameters: {0}")]
    Instantiation(#[from] InstantiationError),
    #[error("phi is not invertible: {0}")]
    SingularPhi(Witness),
}

impl LoadError {
    fn schema(pointer: &str, message: impl Into<String>) -> Self {
        LoadError::Schema { pointer: if pointer.is_empty() { "/".into() } else { pointer.into() }, message: message.into() }
    }
}

pub fn load(path: &Path) -> Result<ParametricStructure, LoadError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| LoadError::Io { path: path.display().to_string(), source })?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<ParametricStructure, LoadError> {
    let value: Value = serde_json::from_str(text).map_err(|e| LoadError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_value(&value)
}

/// Validates a parsed JSON document and checks it instantiates, with an
/// invertible `φ`, at its default parameters.
pub fn from_value(value: &Value) -> Result<ParametricStructure, LoadError> {
    let structure = read_structure(value)?;
    let defaults = structure.default_bindings()?;
    let instance = structure.instantiate(&defaults)?;
    if let Some(witness) = singular_phi_witness(&instance.algebra) {
        return Err(LoadError::SingularPhi(witness));
    }
    Ok(structure)
}

fn object<'a>(v: &'a Value, pointer: &str) -> Result<&'a Map<String, Value>, LoadError> {
    v.as_object().ok_or_else(|| LoadError::schema(pointer, "expected an object"))
}

fn index(v: &Value, pointer: &str, n: u64) -> Result<usize, LoadError> {
    match v.as_u64() {
        Some(i) if (1..=n).contains(&i) => Ok(i as usize - 1),
        _ => Err(LoadError::schema(pointer, format!("expected a basis index in 1..{}", n))),
    }
}

fn expr(v: &Value, pointer: &str) -> Result<ParamExpr, LoadError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(num) => num.to_string(),
        _ => return Err(LoadError::schema(pointer, "expected an expression string or number")),
    };
    parse_expr(&text).map_err(|source| LoadError::Expr { pointer: pointer.into(), source })
}

fn matrix(v: &Value, pointer: &str, n: usize) -> Result<MatrixExpr, LoadError> {
    let rows = v.as_array().ok_or_else(|| LoadError::schema(pointer, "expected an array of rows"))?;
    if rows.len() != n {
        return Err(LoadError::schema(pointer, format!("expected {} rows, found {}", n, rows.len())));
    }
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            let p = format!("{}/{}", pointer, r);
            let cells = row.as_array().ok_or_else(|| LoadError::schema(&p, "expected an array"))?;
            if cells.len() != n {
                return Err(LoadError::schema(&p, format!("expected {} entries, found {}", n, cells.len())));
            }
            cells.iter().enumerate().map(|(c, cell)| expr(cell, &format!("{}/{}", p, c))).collect()
        })
        .collect()
}

fn is_identifier(name: &str) -> bool {
    let mut bytes = name.bytes();
    bytes.next().is_some_and(|b| b.is_ascii_alphabetic() || b == b'_') && bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

fn read_structure(root: &Value) -> Result<ParametricStructure, LoadError> {
    let obj = object(root, "")?;
    for key in obj.keys() {
        let known = ["name", "dimension", "parameters", "brackets", "phi", "metric", "J"].contains(&key.as_str())
            || METADATA_KEYS.contains(&key.as_str());
        if !known {
            return Err(LoadError::schema(&format!("/{}", key), "unknown field"));
        }
    }
    let name = obj
        .get("name")
        .ok_or_else(|| LoadError::schema("/name", "missing field"))?
        .as_str()
        .ok_or_else(|| LoadError::schema("/name", "expected a string"))?
        .to_string();
    let dimension = match obj.get("dimension").map(Value::as_u64) {
        None => return Err(LoadError::schema("/dimension", "missing field")),
        Some(Some(d)) if (1..=MAX_DIMENSION).contains(&d) => d,
        Some(_) => return Err(LoadError::schema("/dimension", format!("expected an integer in 1..{}", MAX_DIMENSION))),
    };
    let n = dimension as usize;

    let mut parameters = BTreeMap::new();
    if let Some(p) = obj.get("parameters") {
        for (k, v) in object(p, "/parameters")? {
            let pointer = format!("/parameters/{}", k);
            if !is_identifier(k) {
                return Err(LoadError::schema(&pointer, "invalid parameter name"));
            }
            parameters.insert(k.clone(), expr(v, &pointer)?);
        }
    }

    let mut brackets = Vec::new();
    if let Some(b) = obj.get("brackets") {
        let list = b.as_array().ok_or_else(|| LoadError::schema("/brackets", "expected an array"))?;
        let mut seen = BTreeSet::new();
        for (at, entry) in list.iter().enumerate() {
            let pointer = format!("/brackets/{}", at);
            let e = object(entry, &pointer)?;
            for key in e.keys() {
                if !["i", "j", "coefficients"].contains(&key.as_str()) {
                    return Err(LoadError::schema(&format!("{}/{}", pointer, key), "unknown field"));
                }
            }
            let get = |k: &str| e.get(k).ok_or_else(|| LoadError::schema(&format!("{}/{}", pointer, k), "missing field"));
            let i = index(get("i")?, &format!("{}/i", pointer), dimension)?;
            let j = index(get("j")?, &format!("{}/j", pointer), dimension)?;
            if i == j {
                return Err(LoadError::schema(&pointer, "diagonal bracket must be zero"));
            }
            if i > j {
                return Err(LoadError::schema(&pointer, "expected i < j"));
            }
            if !seen.insert((i, j)) {
                return Err(LoadError::schema(&pointer, format!("duplicate bracket entry for [e{},e{}]", i + 1, j + 1)));
            }
            let coeff_pointer = format!("{}/coefficients", pointer);
            let mut coefficients = Vec::new();
            for (k, v) in object(get("coefficients")?, &coeff_pointer)? {
                let p = format!("{}/{}", coeff_pointer, k);
                let k = k
                    .parse::<u64>()
                    .ok()
                    .filter(|k| (1..=dimension).contains(k))
                    .ok_or_else(|| LoadError::schema(&p, format!("expected a basis index in 1..{}", n)))?;
                coefficients.push((k as usize - 1, expr(v, &p)?));
            }
            coefficients.sort_by_key(|(k, _)| *k);
            brackets.push(BracketExpr { i, j, coefficients });
        }
    }

    let phi = matrix(obj.get("phi").ok_or_else(|| LoadError::schema("/phi", "missing field"))?, "/phi", n)?;
    let metric = obj.get("metric").map(|m| matrix(m, "/metric", n)).transpose()?;
    let j = obj.get("J").map(|m| matrix(m, "/J", n)).transpose()?;

    let structure = ParametricStructure { name, dimension: n, parameters, brackets, phi, metric, j };
    for name in structure.parameter_names() {
        if !structure.parameters.contains_key(&name) {
            return Err(LoadError::schema("/parameters", format!("parameter `{}` is used but not declared", name)));
        }
    }
    Ok(structure)
}

fn matrix_value(m: &MatrixExpr) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|e| Value::String(e.to_string())).collect())).collect())
}

/// Serializes a structure back to the file format.
pub fn to_value(s: &ParametricStructure) -> Value {
    let mut obj = Map::new();
    obj.insert("name".into(), Value::String(s.name.clone()));
    obj.insert("dimension".into(), Value::from(s.dimension));
    let params: Map<String, Value> = s.parameters.iter().map(|(k, v)| (k.clone(), Value::String(v.to_string()))).collect();
    obj.insert("parameters".into(), Value::Object(params));
    let brackets = s
        .brackets
        .iter()
        .map(|b| {
            let coeffs: Map<String, Value> =
                b.coefficients.iter().map(|(k, e)| ((k + 1).to_string(), Value::String(e.to_string()))).collect();
            serde_json::json!({ "i": b.i + 1, "j": b.j + 1, "coefficients": coeffs })
        })
        .collect();
    obj.insert("brackets".into(), Value::Array(brackets));
    obj.insert("phi".into(), matrix_value(&s.phi));
    if let Some(m) = &s.metric {
        obj.insert("metric".into(), matrix_value(m));
    }
    if let Some(m) = &s.j {
        obj.insert("J".into(), matrix_value(m));
    }
    Value::Object(obj)
}

pub fn to_json(s: &ParametricStructure) -> String {
    serde_json::to_string_pretty(&to_value(s)).expect("serializable")
}
