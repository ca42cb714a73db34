use std::path::Path;
use std::sync::Arc;

use qgp_core::geometry::{HomoPoly, Mat3, PlaneCurve, ProjMatrix, ProjPoint};
use qgp_core::numfield::{element_in, FieldContext};
use qgp_core::Error;
use serde_json::{json, Value};

pub const DEFAULT_MAX_CONDUCTOR: u32 = 1024;

/// Exit status 2: the input could not be read or does not match the schema.
#[derive(Debug)]
pub struct InputError {
    pub message: String,
    pub file: Option<String>,
    pub field: Option<String>,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl InputError {
    pub fn new(message: impl Into<String>) -> InputError {
        InputError {
            message: message.into(),
            file: None,
            field: None,
            line: None,
            column: None,
        }
    }

    fn in_file(mut self, path: &Path) -> InputError {
        self.file = Some(path.display().to_string());
        self
    }

    pub fn from_core(e: Error) -> InputError {
        match e {
            Error::Schema { field, message } => InputError {
                field: Some(field),
                ..InputError::new(message)
            },
            other => InputError::new(other.to_string()),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {
            "kind": "input",
            "message": self.message,
            "file": self.file,
            "field": self.field,
            "line": self.line,
            "column": self.column,
        }})
    }

    pub fn render(&self) -> String {
        let mut s = String::from("input error");
        if let Some(f) = &self.file {
            s += &format!(" in {f}");
        }
        if let (Some(l), Some(c)) = (self.line, self.column) {
            s += &format!(" at line {l}, column {c}");
        }
        if let Some(f) = &self.field {
            s += &format!(" (field `{f}`)");
        }
        format!("{s}: {}", self.message)
    }
}

pub fn max_conductor() -> Result<u32, InputError> {
    match std::env::var("QGP_MAX_CONDUCTOR") {
        Err(_) => Ok(DEFAULT_MAX_CONDUCTOR),
        Ok(v) => v.trim().parse().map_err(|_| {
            InputError::new(format!(
                "QGP_MAX_CONDUCTOR must be a positive integer, got `{v}`"
            ))
        }),
    }
}

fn read_json(path: &Path) -> Result<Value, InputError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| InputError::new(e.to_string()).in_file(path))?;
    serde_json::from_str(&text).map_err(|e| {
        InputError {
            line: Some(e.line()),
            column: Some(e.column()),
            ..InputError::new(e.to_string())
        }
        .in_file(path)
    })
}

/// Reads a curve file without checking smoothness.
pub fn load_form(path: &Path) -> Result<HomoPoly, InputError> {
    let v = read_json(path)?;
    let limit = max_conductor()?;
    if let Some(n) = v.pointer("/field/conductor").and_then(Value::as_u64) {
        if n > limit as u64 {
            return Err(InputError {
                field: Some("field.conductor".into()),
                ..InputError::new(format!("conductor {n} exceeds QGP_MAX_CONDUCTOR={limit}"))
            }
            .in_file(path));
        }
    }
    HomoPoly::from_json(&v).map_err(|e| InputError::from_core(e).in_file(path))
}

/// Curve file, then smoothness. `NotSmooth` is passed through (exit 1, not 2).
pub fn load_curve(path: &Path) -> Result<Result<PlaneCurve, Error>, InputError> {
    let f = load_form(path)?;
    match PlaneCurve::new(f) {
        Err(Error::NotSmooth) => Ok(Err(Error::NotSmooth)),
        Err(e) => Err(InputError::from_core(e).in_file(path)),
        Ok(c) => Ok(Ok(c)),
    }
}

fn items<'a>(v: &'a Value, key: &str) -> Option<&'a Vec<Value>> {
    v.as_array()
        .or_else(|| v.get(key).and_then(Value::as_array))
}

fn triple(
    ctx: &Arc<FieldContext>,
    v: &Value,
    field: &str,
) -> Result<[qgp_core::numfield::FieldElement; 3], InputError> {
    let err = |e: Error| InputError::from_core(e);
    match v {
        Value::String(s) => qgp_core::numfield::parse_triple(ctx, s).map_err(|e| InputError {
            field: Some(field.into()),
            ..InputError::new(e.to_string())
        }),
        Value::Array(a) if a.len() == 3 => {
            let e0 = element_in(ctx, &a[0], &format!("{field}[0]")).map_err(err)?;
            let e1 = element_in(ctx, &a[1], &format!("{field}[1]")).map_err(err)?;
            let e2 = element_in(ctx, &a[2], &format!("{field}[2]")).map_err(err)?;
            Ok([e0, e1, e2])
        }
        _ => Err(InputError {
            field: Some(field.into()),
            ..InputError::new("expected \"x,y,z\" or an array of three elements")
        }),
    }
}

/// A bare array of points or `{"seeds": [...]}`; points as `"x,y,z"` or three elements.
pub fn load_seeds(path: &Path, ctx: &Arc<FieldContext>) -> Result<Vec<ProjPoint>, InputError> {
    let v = read_json(path)?;
    let list = items(&v, "seeds").ok_or_else(|| {
        InputError {
            field: Some("seeds".into()),
            ..InputError::new("expected an array of points")
        }
        .in_file(path)
    })?;
    list.iter()
        .enumerate()
        .map(|(i, p)| {
            let field = format!("seeds[{i}]");
            let t = triple(ctx, p, &field)?;
            ProjPoint::new(t).map_err(|e| InputError {
                field: Some(field),
                ..InputError::new(e.to_string())
            })
        })
        .collect::<Result<_, _>>()
        .map_err(|e| e.in_file(path))
}

/// A bare array of 3×3 matrices (rows) or `{"generators": [...]}`.
pub fn load_generators(
    path: &Path,
    ctx: &Arc<FieldContext>,
) -> Result<Vec<ProjMatrix>, InputError> {
    let v = read_json(path)?;
    let list = items(&v, "generators").ok_or_else(|| {
        InputError {
            field: Some("generators".into()),
            ..InputError::new("expected an array of matrices")
        }
        .in_file(path)
    })?;
    list.iter()
        .enumerate()
        .map(|(i, m)| {
            let field = format!("generators[{i}]");
            let rows = m
                .as_array()
                .filter(|r| r.len() == 3)
                .ok_or_else(|| InputError {
                    field: Some(field.clone()),
                    ..InputError::new("expected three rows")
                })?;
            let r0 = triple(ctx, &rows[0], &format!("{field}[0]"))?;
            let r1 = triple(ctx, &rows[1], &format!("{field}[1]"))?;
            let r2 = triple(ctx, &rows[2], &format!("{field}[2]"))?;
            ProjMatrix::new(Mat3::from_rows([r0, r1, r2])).map_err(|e| InputError {
                field: Some(field),
                ..InputError::new(e.to_string())
            })
        })
        .collect::<Result<_, _>>()
        .map_err(|e| e.in_file(path))
}
