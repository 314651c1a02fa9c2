//! Versioned JSON envelopes for shapes and anisotropies.
//!
//! Files carry a `"schema": "anisospec/1"` tag; readers accept a missing tag
//! and reject a mismatched one.

use crate::anisotropy::Anisotropy;
use crate::error::{Error, Result};
use crate::geometry::Membrane;
use serde_json::{json, Value};

pub const SCHEMA: &str = "anisospec/1";

fn check_schema(v: &Value) -> Result<()> {
    match v.get("schema") {
        None => Ok(()),
        Some(Value::String(s)) if s == SCHEMA => Ok(()),
        Some(other) => Err(Error::InvalidParams(format!(
            "unsupported schema tag {other}; expected \"{SCHEMA}\""
        ))),
    }
}

pub fn shape_to_json(m: &Membrane) -> Value {
    let mut v = serde_json::to_value(m).expect("membrane serializes");
    v["schema"] = json!(SCHEMA);
    v
}

pub fn shape_from_json(mut v: Value) -> Result<Membrane> {
    check_schema(&v)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove("schema");
    }
    Ok(serde_json::from_value(v)?)
}

pub fn anisotropy_to_json(h: &Anisotropy) -> Value {
    let mut v = serde_json::to_value(h).expect("anisotropy serializes");
    v["schema"] = json!(SCHEMA);
    v
}

pub fn anisotropy_from_json(mut v: Value) -> Result<Anisotropy> {
    check_schema(&v)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove("schema");
    }
    let h: Anisotropy = serde_json::from_value(v)?;
    h.validate()?;
    Ok(h)
}
