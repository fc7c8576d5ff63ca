#![allow(dead_code)]

//! Shared helpers for the CLI integration tests: a minimal JSON-schema
//! checker covering the subset the shipped schemas use, and paths to the
//! repository fixtures.

use serde_json::Value;
use std::path::{Path, PathBuf};

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn corpus_dir() -> PathBuf {
    repo_root().join("corpus")
}

pub fn corpus_path(name: &str) -> PathBuf {
    corpus_dir().join(name)
}

pub fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn load_schema(name: &str) -> Value {
    let path = repo_root().join("schemas").join(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("schema {}: {e}", path.display()));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("schema {name} parses: {e}"))
}

/// Validates `value` against the subset of JSON Schema the shipped schemas
/// use: `type`, `properties`, `required`, `additionalProperties`
/// (boolean or schema), `items`, `enum`, `minimum`, `maximum`.
pub fn validate(value: &Value, schema: &Value, path: &str) -> Result<(), String> {
    let obj = schema
        .as_object()
        .ok_or_else(|| format!("{path}: schema must be an object"))?;

    if let Some(expected) = obj.get("type").and_then(Value::as_str) {
        let ok = match expected {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "boolean" => value.is_boolean(),
            "number" => value.is_number(),
            "integer" => value.is_i64() || value.is_u64(),
            other => return Err(format!("{path}: unsupported schema type {other}")),
        };
        if !ok {
            return Err(format!("{path}: expected {expected}, got {value}"));
        }
    }

    if let Some(options) = obj.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            return Err(format!("{path}: {value} not in enum"));
        }
    }

    if let Some(min) = obj.get("minimum").and_then(Value::as_f64) {
        let v = value
            .as_f64()
            .ok_or_else(|| format!("{path}: minimum on non-number"))?;
        if v < min {
            return Err(format!("{path}: {v} below minimum {min}"));
        }
    }
    if let Some(max) = obj.get("maximum").and_then(Value::as_f64) {
        let v = value
            .as_f64()
            .ok_or_else(|| format!("{path}: maximum on non-number"))?;
        if v > max {
            return Err(format!("{path}: {v} above maximum {max}"));
        }
    }

    if let Some(map) = value.as_object() {
        if let Some(required) = obj.get("required").and_then(Value::as_array) {
            for key in required {
                let key = key.as_str().expect("required names are strings");
                if !map.contains_key(key) {
                    return Err(format!("{path}: missing required key `{key}`"));
                }
            }
        }
        let empty = serde_json::Map::new();
        let properties = obj
            .get("properties")
            .and_then(Value::as_object)
            .unwrap_or(&empty);
        for (key, item) in map {
            let child_path = format!("{path}.{key}");
            if let Some(sub) = properties.get(key) {
                validate(item, sub, &child_path)?;
            } else {
                match obj.get("additionalProperties") {
                    Some(Value::Bool(false)) => {
                        return Err(format!("{path}: unexpected key `{key}`"));
                    }
                    Some(Value::Bool(true)) | None => {}
                    Some(sub) => validate(item, sub, &child_path)?,
                }
            }
        }
    }

    if let (Some(items), Some(arr)) = (obj.get("items"), value.as_array()) {
        for (i, item) in arr.iter().enumerate() {
            validate(item, items, &format!("{path}[{i}]"))?;
        }
    }

    Ok(())
}

pub fn assert_valid(value: &Value, schema_name: &str) {
    let schema = load_schema(schema_name);
    if let Err(e) = validate(value, &schema, "$") {
        panic!("{schema_name} violation: {e}\nvalue: {value:#}");
    }
}
