//! Canonical JSON emission.
//!
//! Machine-readable output has to be reproducible: the same computation must
//! serialize to the same bytes on every run, and parsing a document and
//! re-serializing it must be the identity on bytes.  `serde_json` alone does
//! not guarantee this for floating-point numbers (it prints the shortest
//! round-trippable form, which is stable but ties the byte format to the
//! serializer's float algorithm), so this module pins an explicit canonical
//! form instead:
//!
//! * object keys are emitted in ascending byte order (`BTreeMap`),
//! * floats are always printed as `{:.11e}` (12 significant digits, a fixed
//!   width that parses back to the same 12 digits for every finite `f64`),
//! * integers are printed without a fraction or exponent, so the
//!   integer/float distinction survives a parse/re-emit cycle,
//! * no insignificant whitespace.

use std::collections::BTreeMap;

use yamabe_core::Real;

/// A JSON document in canonical form.
///
/// The variants mirror the JSON data model except that numbers are split into
/// [`JsonValue::Int`] and [`JsonValue::Float`] so that re-serialization
/// preserves which kind a document used.
#[derive(Debug, Clone, PartialEq)]
pub enum JsonValue {
    Null,
    Bool(bool),
    Int(i64),
    Float(Real),
    Str(String),
    Array(Vec<JsonValue>),
    Object(BTreeMap<String, JsonValue>),
}

impl JsonValue {
    /// Convenience constructor for an object built from `(key, value)` pairs.
    pub fn object(pairs: Vec<(&str, JsonValue)>) -> JsonValue {
        JsonValue::Object(pairs.into_iter().map(|(k, v)| (k.to_owned(), v)).collect())
    }

    /// Serializes the value to its canonical byte form.
    ///
    /// # Panics
    ///
    /// Panics if the document contains a non-finite float.  All quantities the
    /// CLI reports are finite by construction (non-finite intermediate results
    /// surface as errors long before rendering), so a non-finite value here is
    /// a programming error, not an input error.
    pub fn to_canonical_string(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            JsonValue::Null => out.push_str("null"),
            JsonValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            JsonValue::Int(i) => out.push_str(&i.to_string()),
            JsonValue::Float(x) => {
                assert!(x.is_finite(), "canonical JSON cannot represent {x}");
                out.push_str(&format!("{x:.11e}"));
            }
            JsonValue::Str(s) => write_escaped(s, out),
            JsonValue::Array(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            JsonValue::Object(map) => {
                out.push('{');
                for (i, (key, value)) in map.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_escaped(key, out);
                    out.push(':');
                    value.write(out);
                }
                out.push('}');
            }
        }
    }
}

/// Writes `s` as a JSON string literal with the escapes required by RFC 8259.
fn write_escaped(s: &str, out: &mut String) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                out.push_str(&format!("\\u{:04x}", c as u32));
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

impl From<&serde_json::Value> for JsonValue {
    /// Rebuilds the canonical representation of a parsed document.
    ///
    /// `serde_json` remembers whether a number was written with integer or
    /// float syntax, which is exactly the distinction [`JsonValue`] needs to
    /// reproduce the original bytes.
    fn from(value: &serde_json::Value) -> JsonValue {
        match value {
            serde_json::Value::Null => JsonValue::Null,
            serde_json::Value::Bool(b) => JsonValue::Bool(*b),
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    JsonValue::Int(i)
                } else {
                    JsonValue::Float(n.as_f64().expect("JSON number fits in f64"))
                }
            }
            serde_json::Value::String(s) => JsonValue::Str(s.clone()),
            serde_json::Value::Array(items) => {
                JsonValue::Array(items.iter().map(JsonValue::from).collect())
            }
            serde_json::Value::Object(map) => JsonValue::Object(
                map.iter()
                    .map(|(k, v)| (k.clone(), JsonValue::from(v)))
                    .collect(),
            ),
        }
    }
}
