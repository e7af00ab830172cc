use serde::Serialize;
use serde_json::Value;
use std::io::{self, Write};

/// Compact JSON with every float written to 17 significant digits.
struct Fixed17;

impl serde_json::ser::Formatter for Fixed17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value == 0.0 {
            // keep the sign of negative zero out of the output
            return w.write_all(b"0.0000000000000000e0");
        }
        write!(w, "{value:.16e}")
    }
}

pub fn to_json_string(v: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Fixed17);
    v.serialize(&mut ser).expect("serializing a JSON value cannot fail");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// `key: value` lines for the top-level fields, nested values inline.
pub fn to_text(v: &Value) -> String {
    match v {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {}\n", to_text_inline(v))).collect(),
        other => format!("{}\n", to_text_inline(other)),
    }
}

fn to_text_inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => format!("{f}"),
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}
