use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::literal::{parse_rational, rational_str};
use super::{parse_element, FieldContext, FieldElement};
use crate::error::{Error, Result};

fn schema(field: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        field: field.to_string(),
        message: message.into(),
    }
}

/// `{"conductor": N}` plus `"lambda_sq"` when extended.
pub fn context_to_json(ctx: &FieldContext) -> Value {
    let mut v = json!({ "conductor": ctx.conductor() });
    if let Some(c) = ctx.lambda_square() {
        v["lambda_sq"] = c.to_json();
    }
    v
}

pub fn context_from_json(v: &Value, field: &str) -> Result<Arc<FieldContext>> {
    let n = v
        .get("conductor")
        .and_then(Value::as_u64)
        .filter(|&n| n >= 1 && n <= u32::MAX as u64)
        .ok_or_else(|| schema(&format!("{field}.conductor"), "expected a positive integer"))?;
    let base = FieldContext::cyclotomic(n as u32);
    match v.get("lambda_sq") {
        None | Some(Value::Null) => Ok(base),
        Some(c) => {
            let c = element_in(&base, c, &format!("{field}.lambda_sq"))?;
            FieldContext::quad_extend(&c)
        }
    }
}

/// Reads an element given either as a literal string or as an object, in a known context.
pub fn element_in(ctx: &Arc<FieldContext>, v: &Value, field: &str) -> Result<FieldElement> {
    match v {
        Value::String(s) => parse_element(ctx, s).map_err(|e| schema(field, e.to_string())),
        Value::Number(n) => {
            parse_element(ctx, &n.to_string()).map_err(|e| schema(field, e.to_string()))
        }
        Value::Object(_) => {
            let e = FieldElement::from_json(v).map_err(|e| match e {
                Error::Schema { field: f, message } => schema(&format!("{field}.{f}"), message),
                other => schema(field, other.to_string()),
            })?;
            e.lift(ctx)
                .map_err(|_| schema(field, "element lives in a different field"))
        }
        _ => Err(schema(
            field,
            "expected a literal string or an element object",
        )),
    }
}

impl FieldElement {
    pub fn to_json(&self) -> Value {
        let mut v = context_to_json(&self.ctx);
        v["coords"] = Value::Array(
            self.coords()
                .iter()
                .map(|q| Value::String(rational_str(q)))
                .collect(),
        );
        v
    }

    pub fn from_json(v: &Value) -> Result<FieldElement> {
        let ctx = context_from_json(v, "element")?;
        let coords = v
            .get("coords")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("coords", "expected an array of \"p/q\" strings"))?;
        let qs = coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                c.as_str()
                    .ok_or_else(|| schema(&format!("coords[{i}]"), "expected a string"))
                    .and_then(|s| {
                        parse_rational(s)
                            .map_err(|e| schema(&format!("coords[{i}]"), e.to_string()))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        FieldElement::from_coords(&ctx, &qs)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        FieldElement::from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let k = FieldContext::cyclotomic(12);
        let x = parse_element(&k, "1/3 - 2*z^3").unwrap();
        let v = x.to_json();
        assert_eq!(v["conductor"], 12);
        assert_eq!(v["coords"][0], "1/3");
        assert_eq!(v["coords"][3], "-2");
        let back: FieldElement = serde_json::from_value(v).unwrap();
        assert_eq!(back, x);

        let e = FieldContext::quad_extend(&FieldElement::from_int(&k, 2)).unwrap();
        let y = parse_element(&e, "z + 1/5*l").unwrap();
        let back = FieldElement::from_json(&y.to_json()).unwrap();
        assert_eq!(back, y);
    }

    #[test]
    fn schema_errors_name_the_field() {
        let err =
            FieldElement::from_json(&json!({"conductor": 4, "coords": ["1", "x"]})).unwrap_err();
        assert!(
            matches!(err, Error::Schema { ref field, .. } if field == "coords[1]"),
            "{err}"
        );
        let err = FieldElement::from_json(&json!({"conductor": 4, "coords": ["1"]})).unwrap_err();
        assert!(matches!(err, Error::Schema { .. }));
    }
}
