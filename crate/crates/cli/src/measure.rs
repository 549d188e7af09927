//! Measure specs for the oracle commands.
//!
//! ```text
//! lebesgue
//! mass:theta=<v>
//! geronimus:a=<re[,im]>
//! jacobi-arc:alpha=<v>,gamma=<v>,delta=<v>
//! ```

use opuc::examples::ArcMeasureParams;
use opuc::Complex;
use opuc::oracle::MeasureSpec;

use crate::CliError;

fn bad(spec: &str, why: &str) -> CliError {
    CliError::Usage(format!("malformed measure spec `{spec}`: {why}"))
}

fn number(spec: &str, s: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| bad(spec, &format!("`{s}` is not a finite number")))
}

fn value<'a>(spec: &str, body: &'a str, key: &str) -> Result<&'a str, CliError> {
    body.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| bad(spec, &format!("expected `{key}=...`")))
}

fn keyed(spec: &str, body: &str, keys: &[&str]) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = body.split(',').collect();
    if parts.len() != keys.len() {
        return Err(bad(spec, &format!("expected keys {}", keys.join(","))));
    }
    parts
        .iter()
        .zip(keys)
        .map(|(p, k)| number(spec, value(spec, p, k)?))
        .collect()
}

/// `scale` converts user angles to radians.
pub fn parse_measure(spec: &str, scale: f64) -> Result<MeasureSpec<f64>, CliError> {
    let (kind, body) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "lebesgue" if body.is_empty() => Ok(MeasureSpec::lebesgue()),
        "mass" => {
            let t = keyed(spec, body, &["theta"])?[0];
            Ok(MeasureSpec::point_mass(t * scale))
        }
        "geronimus" => {
            let parts: Vec<&str> = value(spec, body, "a")?.split(',').collect();
            let a = match parts.as_slice() {
                [re] => Complex::new(number(spec, re)?, 0.0),
                [re, im] => Complex::new(number(spec, re)?, number(spec, im)?),
                _ => return Err(bad(spec, "expected a=<re[,im]>")),
            };
            Ok(MeasureSpec::geronimus(a)?)
        }
        "jacobi-arc" => {
            let v = keyed(spec, body, &["alpha", "gamma", "delta"])?;
            Ok(MeasureSpec::example17(ArcMeasureParams::new(v[0] * scale, v[1], v[2])?)?)
        }
        _ => Err(bad(spec, "expected lebesgue, mass:, geronimus: or jacobi-arc:")),
    }
}
