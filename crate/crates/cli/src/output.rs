use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::Value;

/// Rounds every float to `digits` significant digits.
fn round_value(v: &mut Value, digits: i32) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("checked f64");
            if x != 0.0 && x.is_finite() {
                let scale = 10f64.powi(digits - 1 - x.abs().log10().floor() as i32);
                let rounded = (x * scale).round() / scale;
                if let Some(r) = serde_json::Number::from_f64(rounded) {
                    *n = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|x| round_value(x, digits)),
        Value::Object(map) => map.values_mut().for_each(|x| round_value(x, digits)),
        _ => {}
    }
}

pub fn render_json<T: Serialize>(value: &T, pretty: bool) -> Result<String> {
    if pretty {
        let mut v = serde_json::to_value(value)?;
        round_value(&mut v, 6);
        Ok(serde_json::to_string_pretty(&v)?)
    } else {
        Ok(serde_json::to_string(value)?)
    }
}

/// Writes to `out`, or to stdout when absent.
pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}")?;
            Ok(())
        }
    }
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// 17 significant digits, enough to recover any binary64 exactly.
pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_opt(x: Option<f64>) -> String {
    x.map(csv_float).unwrap_or_default()
}

/// `lo:hi:n` with `n` points including both ends.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else {
        bail!("grid must look like lo:hi:n, got {spec:?}");
    };
    let lo: f64 = lo.trim().parse().with_context(|| format!("grid start {lo:?}"))?;
    let hi: f64 = hi.trim().parse().with_context(|| format!("grid end {hi:?}"))?;
    let n: usize = n.trim().parse().with_context(|| format!("grid size {n:?}"))?;
    if n == 0 {
        bail!("grid needs at least one point");
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = parse_grid("0:1:5").unwrap();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_grid("0.9:2:1").unwrap(), vec![0.9]);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("a:1:3").is_err());
    }

    #[test]
    fn csv_floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, std::f64::consts::PI] {
            let s = csv_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(csv_opt(None), "");
    }

    #[test]
    fn pretty_rounds() {
        let s = render_json(&serde_json::json!({"v": 0.123456789, "n": 3}), true).unwrap();
        assert!(s.contains("0.123457"));
        let raw = render_json(&serde_json::json!({"v": 0.123456789}), false).unwrap();
        assert_eq!(raw, r#"{"v":0.123456789}"#);
    }
}
