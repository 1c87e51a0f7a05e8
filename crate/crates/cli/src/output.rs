use std::fs;
use std::io::Write;
use std::path::Path;

use rngbound::Tightness;
use serde_json::{Number, Value};

use crate::commands::Failure;

/// 17 significant digits, enough to reproduce any `f64`.
pub fn fixed(x: f64) -> String {
    format!("{x:.16e}")
}

/// Shortest decimal that parses back to `x`.
pub fn shortest(x: f64) -> String {
    format!("{x:?}")
}

pub fn json_float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    // `arbitrary_precision` keeps the literal, so re-serializing is byte-identical.
    Value::Number(fixed(x).parse::<Number>().expect("formatted float is a JSON number"))
}

pub fn json_opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, json_float)
}

pub fn json_tightness(t: Option<Tightness>) -> Value {
    match t {
        Some(Tightness::Ratio(r)) => json_float(r),
        Some(Tightness::Infinite) => Value::String("inf".into()),
        None => Value::Null,
    }
}

pub fn tightness_text(t: Option<Tightness>, float: fn(f64) -> String) -> String {
    match t {
        Some(Tightness::Ratio(r)) => float(r),
        Some(Tightness::Infinite) => "inf".into(),
        None => String::new(),
    }
}

pub fn json_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(cell);
            s.extend(std::iter::repeat_n(' ', w - cell.chars().count()));
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(&mut headers.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

pub fn csv(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 cells")
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| Failure::input(format!("stdout: {e}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_has_seventeen_significant_digits() {
        assert_eq!(fixed(0.125), "1.2500000000000000e-1");
        assert_eq!(fixed(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(fixed(0.0), "0.0000000000000000e0");
    }

    #[test]
    fn shortest_round_trips() {
        for x in [0.1, 1.0 / 3.0, 0.234375, 1e-20, 0.0] {
            assert_eq!(shortest(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(shortest(0.234375), "0.234375");
    }

    #[test]
    fn json_floats_survive_reserialization() {
        let v = serde_json::json!({ "b": json_float(0.1), "a": json_float(1.0 / 3.0) });
        let text = json_text(&v);
        let again: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json_text(&again), text);
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
    }

    #[test]
    fn table_aligns_columns() {
        let t = table(&["n", "value"], &[vec!["10".into(), "0.5".into()]]);
        assert_eq!(t, "n   value\n10  0.5\n");
    }
}
