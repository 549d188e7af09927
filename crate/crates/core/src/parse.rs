//! Coefficient-spec mini-language.
//!
//! ```text
//! const:re[,im]
//! zhedanov:q=<v>
//! jacobi-arc:alpha=<v>,gamma=<v>,delta=<v>
//! perturbed:a=<re[,im]>,amp=<v>,p=<v>,sign=<plain|alt>
//! file:<path>            CSV with header `n,re,im`, rows n = 1, 2, ...
//! ```

use std::collections::HashMap;
use std::path::Path;

use num_complex::Complex;
use serde::Deserialize;

use crate::domain::{ReflectionSequence, SignPattern};
use crate::error::{OpucError, Result};
use crate::scalar::{lit, Scalar};

fn err(spec: &str, reason: impl Into<String>) -> OpucError {
    OpucError::Parse {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

fn number<T: Scalar>(spec: &str, s: &str) -> Result<T> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| err(spec, format!("`{s}` is not a number")))?;
    if !v.is_finite() {
        return Err(err(spec, format!("`{s}` is not finite")));
    }
    Ok(lit(v))
}

fn complex<T: Scalar>(spec: &str, parts: &[&str]) -> Result<Complex<T>> {
    match parts {
        [re] => Ok(Complex::new(number(spec, re)?, T::zero())),
        [re, im] => Ok(Complex::new(number(spec, re)?, number(spec, im)?)),
        _ => Err(err(spec, "expected `re` or `re,im`")),
    }
}

/// Splits `k1=v1,k2=v2,...`. A bare item after `k=v` is appended to the previous
/// value, so `a=0.5,0.1,amp=...` keeps `0.5,0.1` together.
fn keyed<'a>(spec: &str, body: &'a str, allowed: &[&str]) -> Result<HashMap<&'a str, Vec<&'a str>>> {
    let mut map: HashMap<&str, Vec<&str>> = HashMap::new();
    let mut last: Option<&str> = None;
    for item in body.split(',') {
        match item.split_once('=') {
            Some((k, v)) => {
                let k = k.trim();
                if !allowed.contains(&k) {
                    return Err(err(spec, format!("unknown key `{k}`")));
                }
                if map.insert(k, vec![v]).is_some() {
                    return Err(err(spec, format!("duplicate key `{k}`")));
                }
                last = Some(k);
            }
            None => match last {
                Some(k) => map.get_mut(k).expect("inserted above").push(item),
                None => return Err(err(spec, format!("expected key=value, got `{item}`"))),
            },
        }
    }
    for k in allowed {
        if !map.contains_key(k) {
            return Err(err(spec, format!("missing key `{k}`")));
        }
    }
    Ok(map)
}

fn scalar_key<T: Scalar>(spec: &str, map: &HashMap<&str, Vec<&str>>, key: &str) -> Result<T> {
    match map[key].as_slice() {
        [v] => number(spec, v),
        _ => Err(err(spec, format!("`{key}` takes a single real value"))),
    }
}

/// Parses a coefficient spec into a sequence.
pub fn parse_sequence<T: Scalar>(spec: &str) -> Result<ReflectionSequence<T>> {
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| err(spec, "expected `<kind>:<args>`"))?;
    match kind.trim() {
        "const" => {
            let parts: Vec<&str> = body.split(',').collect();
            ReflectionSequence::constant(complex(spec, &parts)?)
        }
        "zhedanov" => {
            let m = keyed(spec, body, &["q"])?;
            ReflectionSequence::zhedanov(scalar_key(spec, &m, "q")?)
        }
        "jacobi-arc" => {
            let m = keyed(spec, body, &["alpha", "gamma", "delta"])?;
            ReflectionSequence::jacobi_arc(
                scalar_key(spec, &m, "alpha")?,
                scalar_key(spec, &m, "gamma")?,
                scalar_key(spec, &m, "delta")?,
            )
        }
        "perturbed" => {
            let m = keyed(spec, body, &["a", "amp", "p", "sign"])?;
            let sign = match m["sign"].as_slice() {
                ["plain"] => SignPattern::Plain,
                ["alt"] => SignPattern::Alt,
                _ => return Err(err(spec, "sign must be `plain` or `alt`")),
            };
            ReflectionSequence::perturbed(
                complex(spec, &m["a"])?,
                scalar_key(spec, &m, "amp")?,
                scalar_key(spec, &m, "p")?,
                sign,
            )
        }
        "file" => read_sequence_csv(Path::new(body)),
        other => Err(err(spec, format!("unknown kind `{other}`"))),
    }
}

#[derive(Deserialize)]
struct Row {
    n: u64,
    re: f64,
    im: f64,
}

/// Reads `n,re,im` rows; `n` must run 1, 2, ... without gaps.
pub fn read_sequence_csv<T: Scalar>(path: &Path) -> Result<ReflectionSequence<T>> {
    let spec = format!("file:{}", path.display());
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| OpucError::Io(format!("{}: {e}", path.display())))?;
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["n", "re", "im"] {
        return Err(err(&spec, "header must be `n,re,im`"));
    }
    let mut values = Vec::new();
    for (i, row) in rdr.deserialize::<Row>().enumerate() {
        let row = row.map_err(|e| err(&spec, e.to_string()))?;
        if row.n != i as u64 + 1 {
            return Err(err(&spec, format!("row {} has n = {}, expected {}", i + 1, row.n, i + 1)));
        }
        if !row.re.is_finite() || !row.im.is_finite() {
            return Err(err(&spec, format!("row {} is not finite", row.n)));
        }
        values.push(Complex::new(lit(row.re), lit(row.im)));
    }
    if values.is_empty() {
        return Err(err(&spec, "no coefficients"));
    }
    ReflectionSequence::explicit(&values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    type C = Complex<f64>;

    #[test]
    fn kinds() {
        let s = parse_sequence::<f64>("const:0.5").unwrap();
        assert_eq!(s.coeff_at(3).unwrap().value(), C::new(0.5, 0.0));
        let s = parse_sequence::<f64>("const:0.3,-0.2").unwrap();
        assert_eq!(s.coeff_at(1).unwrap().value(), C::new(0.3, -0.2));
        let s = parse_sequence::<f64>("zhedanov:q=0.5").unwrap();
        assert_eq!(s.coeff_at(1).unwrap().value(), C::new(0.0, 0.0));
        let s = parse_sequence::<f64>("perturbed:a=0.5,0.1,amp=0.2,p=2,sign=alt").unwrap();
        assert!((s.coeff_at(1).unwrap().value() - C::new(0.45, 0.1)).norm() < 1e-15);
        parse_sequence::<f64>("jacobi-arc:alpha=1.0,gamma=0.3,delta=0.7").unwrap();
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "const",
            "const:abc",
            "const:1.5",
            "const:0.1,0.2,0.3",
            "zhedanov:r=0.5",
            "zhedanov:q=0.5,q=0.4",
            "perturbed:a=0.5,amp=0.1,p=2,sign=odd",
            "perturbed:a=0.5,amp=0.1,p=2",
            "wat:1",
            "const:nan",
        ] {
            assert!(parse_sequence::<f64>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn csv_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "n,re,im\n1,0.1,0.0\n2,-0.2,0.3").unwrap();
        let s = parse_sequence::<f64>(&format!("file:{}", f.path().display())).unwrap();
        assert_eq!(s.len_hint(), Some(2));
        assert_eq!(s.coeff_at(2).unwrap().value(), C::new(-0.2, 0.3));
        assert!(s.coeff_at(3).is_err());

        let mut g = tempfile::NamedTempFile::new().unwrap();
        writeln!(g, "1,0.1,0.0").unwrap();
        assert!(read_sequence_csv::<f64>(g.path()).is_err());
        let mut h = tempfile::NamedTempFile::new().unwrap();
        writeln!(h, "n,re,im\n2,0.1,0.0").unwrap();
        assert!(read_sequence_csv::<f64>(h.path()).is_err());
    }
}
