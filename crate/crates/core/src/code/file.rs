//! JSON code files.
//!
//! ```text
//! {
//!   "name": "cnot_2_1",
//!   "D": 2,
//!   "n": 2,
//!   "k": 1,
//!   "stabilizer": [
//!     {"x": [0, 0], "z": [1, 1]}
//!   ],
//!   "logical_x": [
//!     {"x": [1, 1], "z": [0, 0]}
//!   ],
//!   "logical_z": [
//!     {"x": [0, 0], "z": [1, 0]}
//!   ]
//! }
//! ```
//!
//! With `"pauli_strings": true` (D = 2 only) the generator entries are
//! `IXYZ` strings instead. [`CodeFile::render`] is the canonical printer, so
//! files it wrote parse and re-render byte for byte.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::pauli::PauliProduct;
use crate::primefield::Prime;

use super::StabilizerCode;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCode {
    name: String,
    #[serde(rename = "D")]
    d: u64,
    n: usize,
    k: usize,
    #[serde(default)]
    pauli_strings: bool,
    stabilizer: Vec<Value>,
    logical_x: Vec<Value>,
    logical_z: Vec<Value>,
}

/// A parsed code file: the validated code plus how its generators were written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFile {
    pub code: StabilizerCode,
    pub pauli_strings: bool,
}

impl CodeFile {
    pub fn new(code: StabilizerCode) -> Self {
        CodeFile { code, pauli_strings: false }
    }

    /// Parses and validates. Syntax errors carry line/column, field errors the field path.
    pub fn parse(text: &str) -> Result<Self> {
        let file = Self::parse_unchecked(text)?;
        let report = file.code.validate();
        if report.is_valid() {
            Ok(file)
        } else {
            Err(Error::Validation(report.violations))
        }
    }

    /// Parses without checking the stabilizer axioms (shapes are still checked).
    pub fn parse_unchecked(text: &str) -> Result<Self> {
        let raw: RawCode = serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            message: strip_position(&e.to_string()),
        })?;
        let d = Prime::new(raw.d)?;
        if raw.pauli_strings && d.get() != 2 {
            return Err(Error::Parse {
                location: "pauli_strings".into(),
                message: "Pauli strings are only allowed for D = 2".into(),
            });
        }
        let conv = |field: &str, vals: &[Value]| -> Result<Vec<PauliProduct>> {
            vals.iter()
                .enumerate()
                .map(|(i, v)| generator(&format!("{field}[{i}]"), v, d, raw.n, raw.pauli_strings))
                .collect()
        };
        let stab = conv("stabilizer", &raw.stabilizer)?;
        let lx = conv("logical_x", &raw.logical_x)?;
        let lz = conv("logical_z", &raw.logical_z)?;
        let code = StabilizerCode::new(raw.name, d, raw.n, raw.k, stab, lx, lz)?;
        Ok(CodeFile { code, pauli_strings: raw.pauli_strings })
    }

    pub fn render(&self) -> String {
        let c = &self.code;
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"name\": {},", serde_json::to_string(c.name()).expect("string serializes"));
        let _ = writeln!(out, "  \"D\": {},", c.modulus());
        let _ = writeln!(out, "  \"n\": {},", c.num_carriers());
        let _ = writeln!(out, "  \"k\": {},", c.num_inputs());
        if self.pauli_strings {
            out.push_str("  \"pauli_strings\": true,\n");
        }
        let groups = [("stabilizer", c.stabilizers()), ("logical_x", c.logical_x()), ("logical_z", c.logical_z())];
        for (gi, (field, ops)) in groups.iter().enumerate() {
            let _ = write!(out, "  \"{field}\": [");
            for (i, p) in ops.iter().enumerate() {
                out.push_str(if i == 0 { "\n    " } else { ",\n    " });
                if self.pauli_strings {
                    let _ = write!(out, "\"{p}\"");
                } else {
                    let _ = write!(out, "{{\"x\": {}, \"z\": {}}}", list(p.x()), list(p.z()));
                }
            }
            out.push_str(if ops.is_empty() { "]" } else { "\n  ]" });
            out.push_str(if gi + 1 < groups.len() { ",\n" } else { "\n" });
        }
        out.push_str("}\n");
        out
    }
}

fn list(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn generator(path: &str, v: &Value, d: Prime, n: usize, strings: bool) -> Result<PauliProduct> {
    let err = |message: String| Error::Parse { location: path.to_string(), message };
    if strings {
        let s = v.as_str().ok_or_else(|| err("expected a Pauli string".into()))?;
        if s.contains('w') || s.starts_with('x') {
            return Err(err(format!("{s:?} is not an IXYZ string")));
        }
        let p = PauliProduct::parse(s, d).map_err(|e| err(e.to_string()))?;
        if p.num_qudits() != n {
            return Err(err(format!("{s:?} has {} sites, expected n = {n}", p.num_qudits())));
        }
        return Ok(p);
    }
    let obj = v.as_object().ok_or_else(|| err("expected an object {\"x\": [...], \"z\": [...]}".into()))?;
    if let Some(extra) = obj.keys().find(|k| *k != "x" && *k != "z") {
        return Err(err(format!("unknown field `{extra}`, expected `x` or `z`")));
    }
    let exps = |key: &str| -> Result<Vec<u32>> {
        let loc = format!("{path}.{key}");
        let arr = obj
            .get(key)
            .ok_or_else(|| Error::Parse { location: path.to_string(), message: format!("missing field `{key}`") })?
            .as_array()
            .ok_or_else(|| Error::Parse { location: loc.clone(), message: "expected an array".into() })?;
        if arr.len() != n {
            return Err(Error::Parse { location: loc, message: format!("{} entries, expected n = {n}", arr.len()) });
        }
        arr.iter()
            .map(|e| {
                e.as_u64().filter(|&x| x < d.get() as u64).map(|x| x as u32).ok_or_else(|| Error::Parse {
                    location: loc.clone(),
                    message: format!("{e} is not an exponent in 0..{d}"),
                })
            })
            .collect()
    };
    PauliProduct::new(d, exps("x")?, exps("z")?, 0)
}

pub fn load(path: impl AsRef<Path>) -> Result<StabilizerCode> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(CodeFile::parse(&text)?.code)
}

pub fn save(code: &StabilizerCode, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let report = code.validate();
    if !report.is_valid() {
        return Err(Error::Validation(report.violations));
    }
    std::fs::write(path, CodeFile::new(code.clone()).render())
        .map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))
}
