use hyperstate::Complex64;
use serde_json::{json, Map, Value};

/// Rounds every float in `v` to 15 significant digits.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(0.0);
            let r: f64 = format!("{x:.14e}").parse().unwrap_or(x);
            if let Some(num) = serde_json::Number::from_f64(r) {
                *n = num;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn complex(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn complex_list(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().map(|&z| complex(z)).collect())
}

/// JSON text with rounded floats and a trailing newline.
pub fn render(mut obj: Map<String, Value>) -> String {
    let mut v = Value::Object(std::mem::take(&mut obj));
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

/// Floats in CSV cells, 15 significant digits, `.` decimal.
pub fn csv_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let r: f64 = format!("{x:.14e}").parse().unwrap_or(x);
    if r == 0.0 || (1e-4..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}
