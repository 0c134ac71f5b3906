use serde::Serialize;
use serde_json::{json, Value};

use crate::operators::{MassTriple, PotentialParams};
use crate::polyops::Rational;

pub const SCHEMA: &str = "qes3body/1";

/// Exact rational as `"num/den"`.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn params_json(p: &PotentialParams) -> Value {
    json!({
        "N": rational_string(&p.n_level),
        "omega": rational_string(&p.omega),
        "gamma": rational_string(&p.gamma),
        "A": rational_string(&p.a_coupling),
    })
}

pub fn masses_json(m: &MassTriple) -> Value {
    Value::Array(m.as_array().iter().map(|r| Value::String(rational_string(r))).collect())
}

/// `{"schema": ..., "command": ...}` followed by the fields of `body`.
pub fn envelope<T: Serialize>(command: &str, body: &T) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), Value::String(SCHEMA.into()));
    out.insert("command".into(), Value::String(command.into()));
    if let Ok(Value::Object(fields)) = serde_json::to_value(body) {
        out.extend(fields);
    }
    Value::Object(out)
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Float with 17 significant digits; non-finite values as `NaN`, `inf`,
/// `-inf`.
pub fn csv_float(x: f64) -> String {
    if x.is_finite() {
        format!("{:.16e}", x)
    } else {
        x.to_string()
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row<S: AsRef<str>>(fields: &[S]) -> String {
    let mut line = fields.iter().map(|f| csv_field(f.as_ref())).collect::<Vec<_>>().join(",");
    line.push_str("\r\n");
    line
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyops::{int, rat};

    #[test]
    fn formats() {
        assert_eq!(rational_string(&int(24)), "24/1");
        assert_eq!(rational_string(&rat(-6, 4)), "-3/2");
        assert_eq!(csv_float(24.0), "2.4000000000000000e1");
        assert_eq!(csv_float(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
        assert_eq!(csv_row(&["1", "2/3"]), "1,2/3\r\n");
    }
}
