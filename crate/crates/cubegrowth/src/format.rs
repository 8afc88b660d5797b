//! JSON documents describing cube complexes.
//!
//! The canonical form lists cubes by dimension:
//!
//! ```json
//! {"name": "fig1",
//!  "cubes": {"0": ["x", "y"],
//!            "1": [{"id": "a", "faces": ["x", "y"]}, {"id": "b", "faces": ["y", "y"]}]}}
//! ```
//!
//! where `faces` lists `∂_{1,0}, ∂_{1,1}, …, ∂_{k,0}, ∂_{k,1}`. Square
//! complexes may instead use `vertices`, `edges` (`id`, `from`, `to`) and
//! `squares` (`id`, `faces` in the same order).

use std::collections::BTreeMap;
use std::path::Path;

use cubegrowth_core::{ComplexBuilder, ComplexError, CubeId, CubicalComplex};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("MalformedDocument: {0}")]
    MalformedDocument(String),
    #[error("{kind}: {inner}", kind = error_kind(.0), inner = .0)]
    Invalid(#[from] ComplexError),
    #[error("cannot read `{path}`: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Variant name of a complex error, used as a diagnostic prefix.
pub fn error_kind(e: &ComplexError) -> &'static str {
    match e {
        ComplexError::Empty => "Empty",
        ComplexError::EmptyLevel { .. } => "EmptyLevel",
        ComplexError::DimensionTooLarge { .. } => "DimensionTooLarge",
        ComplexError::DuplicateCube { .. } => "DuplicateCube",
        ComplexError::WrongFaceCount { .. } => "WrongFaceCount",
        ComplexError::DanglingFaceReference { .. } => "DanglingFaceReference",
        ComplexError::CubicalIdentityViolation { .. } => "CubicalIdentityViolation",
        ComplexError::Disconnected { .. } => "Disconnected",
        ComplexError::NotAVertex(_) => "NotAVertex",
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CubeEntry {
    id: String,
    faces: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Canonical {
    #[serde(default)]
    name: Option<String>,
    cubes: BTreeMap<String, Value>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeEntry {
    id: String,
    from: String,
    to: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Shorthand {
    #[serde(default)]
    name: Option<String>,
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<EdgeEntry>,
    #[serde(default)]
    squares: Vec<CubeEntry>,
}

fn malformed(msg: impl Into<String>) -> LoadError {
    LoadError::MalformedDocument(msg.into())
}

pub fn parse_complex(text: &str) -> Result<CubicalComplex, LoadError> {
    let value: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| malformed("top level must be an object"))?;
    if obj.contains_key("cubes") {
        let doc: Canonical = serde_json::from_value(value).map_err(|e| malformed(e.to_string()))?;
        from_canonical(doc)
    } else if obj.contains_key("vertices") {
        let doc: Shorthand = serde_json::from_value(value).map_err(|e| malformed(e.to_string()))?;
        from_shorthand(doc)
    } else {
        Err(malformed("expected a `cubes` or a `vertices` key"))
    }
}

fn from_canonical(doc: Canonical) -> Result<CubicalComplex, LoadError> {
    let mut levels: BTreeMap<usize, Value> = BTreeMap::new();
    for (k, v) in doc.cubes {
        let dim: usize = k.parse().map_err(|_| malformed(format!("cube level `{k}` is not a dimension")))?;
        levels.insert(dim, v);
    }
    let mut b = ComplexBuilder::new(doc.name.unwrap_or_default());
    for (dim, v) in levels {
        if dim == 0 {
            let ids: Vec<String> = serde_json::from_value(v).map_err(|e| malformed(format!("level 0: {e}")))?;
            for id in ids {
                b.vertex(id);
            }
        } else {
            let cubes: Vec<CubeEntry> =
                serde_json::from_value(v).map_err(|e| malformed(format!("level {dim}: {e}")))?;
            for c in cubes {
                b.cube(dim, c.id, c.faces);
            }
        }
    }
    Ok(b.build()?)
}

fn from_shorthand(doc: Shorthand) -> Result<CubicalComplex, LoadError> {
    let mut b = ComplexBuilder::new(doc.name.unwrap_or_default());
    for v in doc.vertices {
        b.vertex(v);
    }
    for e in doc.edges {
        b.edge(e.id, e.from, e.to);
    }
    for s in doc.squares {
        b.cube(2, s.id, s.faces);
    }
    Ok(b.build()?)
}

pub fn load_complex(path: impl AsRef<Path>) -> Result<CubicalComplex, LoadError> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.display().to_string(), source })?;
    parse_complex(&text)
}

/// The canonical document for a complex.
pub fn to_document(complex: &CubicalComplex) -> Value {
    let mut cubes = serde_json::Map::new();
    for dim in 0..=complex.dimension() {
        let level: Vec<Value> = (0..complex.count(dim))
            .map(|index| {
                let c = CubeId::new(dim, index);
                if dim == 0 {
                    Value::String(complex.cube_name(c).into())
                } else {
                    let faces = (1..=dim)
                        .flat_map(|axis| {
                            [false, true].map(|eps| complex.cube_name(complex.face(c, axis, eps)).to_string())
                        })
                        .collect();
                    serde_json::to_value(CubeEntry { id: complex.cube_name(c).into(), faces })
                        .expect("plain data serializes")
                }
            })
            .collect();
        cubes.insert(dim.to_string(), Value::Array(level));
    }
    serde_json::json!({"name": complex.name(), "cubes": cubes})
}
