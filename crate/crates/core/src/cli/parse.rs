//! Text and JSON forms of complex numbers, points and matrices.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::{Matrix2, C64};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn real(s: &str, whole: &str) -> Result<f64> {
    s.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| parse_err(format!("not a finite number: {whole:?}")))
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` and exponent forms such as
/// `1e-3-2.5e+1i`. Whitespace is ignored.
pub fn parse_complex(text: &str) -> Result<C64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(parse_err("empty complex literal"));
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return Ok(C64::new(real(&s, text)?, 0.0));
    };
    // split at the last sign that is not the leading one or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => real(t, text)?,
    };
    let re = if re_part.is_empty() { 0.0 } else { real(re_part, text)? };
    Ok(C64::new(re, im))
}

/// A complex number in JSON: `{"re": .., "im": ..}`, `[re, im]`, a plain
/// number, or a string literal.
pub fn complex_from_json(v: &Value) -> Result<C64> {
    let num = |x: &Value| x.as_f64().ok_or_else(|| parse_err(format!("expected a number, got {x}")));
    match v {
        Value::Number(_) => Ok(C64::new(num(v)?, 0.0)),
        Value::String(s) => parse_complex(s),
        Value::Object(m) => {
            let re = m.get("re").map(num).transpose()?.unwrap_or(0.0);
            let im = m.get("im").map(num).transpose()?.unwrap_or(0.0);
            if m.keys().any(|k| k != "re" && k != "im") {
                return Err(parse_err(format!("unexpected keys in complex number {v}")));
            }
            Ok(C64::new(re, im))
        }
        Value::Array(a) if a.len() == 2 => Ok(C64::new(num(&a[0])?, num(&a[1])?)),
        _ => Err(parse_err(format!("not a complex number: {v}"))),
    }
}

pub fn complex_to_json(z: C64) -> Value {
    serde_json::json!({ "re": z.re, "im": z.im })
}

/// A point given as `(z1, z2, ...)`, a JSON array, or a JSON document with
/// `coords` (and optionally `domain`). Returns the coordinates and the
/// domain named in the document, if any.
pub fn parse_point(text: &str) -> Result<(Vec<C64>, Option<String>)> {
    let t = text.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| parse_err(format!("bad JSON point: {e}")))?;
        let coords = v
            .get("coords")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("point document needs a \"coords\" array"))?
            .iter()
            .map(complex_from_json)
            .collect::<Result<Vec<_>>>()?;
        let domain = v.get("domain").and_then(Value::as_str).map(str::to_string);
        return Ok((coords, domain));
    }
    if t.starts_with('[') {
        if let Ok(Value::Array(items)) = serde_json::from_str::<Value>(t) {
            return Ok((items.iter().map(complex_from_json).collect::<Result<_>>()?, None));
        }
    }
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
        .unwrap_or(t);
    if inner.trim().is_empty() {
        return Err(parse_err("empty point"));
    }
    Ok((inner.split(',').map(parse_complex).collect::<Result<_>>()?, None))
}

/// A 2×2 matrix as `[[a11,a12],[a21,a22]]` with complex literal entries,
/// or the same shape in JSON with any of the complex JSON forms.
pub fn parse_matrix(text: &str) -> Result<Matrix2> {
    let t = text.trim();
    let rows: Vec<Vec<C64>> = match serde_json::from_str::<Value>(t) {
        Ok(Value::Array(rows)) => rows
            .iter()
            .map(|r| match r {
                Value::Array(es) => es.iter().map(complex_from_json).collect::<Result<Vec<_>>>(),
                _ => Err(parse_err(format!("matrix row is not an array: {r}"))),
            })
            .collect::<Result<_>>()?,
        _ => {
            let s: String = t.chars().filter(|c| !c.is_whitespace()).collect();
            let body = s
                .strip_prefix("[[")
                .and_then(|r| r.strip_suffix("]]"))
                .ok_or_else(|| parse_err(format!("matrix must look like [[a,b],[c,d]], got {text:?}")))?;
            body.split("],[")
                .map(|row| row.split(',').map(parse_complex).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?
        }
    };
    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
        return Err(parse_err(format!("expected a 2x2 matrix, got {text:?}")));
    }
    Ok(Matrix2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1]))
}

pub fn matrix_to_json(m: &Matrix2) -> Value {
    serde_json::json!([
        [complex_to_json(m.a11), complex_to_json(m.a12)],
        [complex_to_json(m.a21), complex_to_json(m.a22)]
    ])
}

/// `lo:hi`.
pub fn parse_range(text: &str) -> Result<(f64, f64)> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| parse_err(format!("range must be lo:hi, got {text:?}")))?;
    let (lo, hi) = (real(lo.trim(), text)?, real(hi.trim(), text)?);
    if lo >= hi {
        return Err(parse_err(format!("empty range {text:?}")));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;

    #[test]
    fn complex_literals() {
        let cases = [
            ("0", c(0.0, 0.0)),
            ("2.5", c(2.5, 0.0)),
            ("-3", c(-3.0, 0.0)),
            ("i", c(0.0, 1.0)),
            ("-i", c(0.0, -1.0)),
            ("+i", c(0.0, 1.0)),
            ("0.5i", c(0.0, 0.5)),
            ("1-i", c(1.0, -1.0)),
            ("1 + 2i", c(1.0, 2.0)),
            ("-1.5e-3+2E+2i", c(-1.5e-3, 200.0)),
            ("1e-3i", c(0.0, 1e-3)),
            ("-2-3.25i", c(-2.0, -3.25)),
        ];
        for (s, want) in cases {
            assert_eq!(parse_complex(s).unwrap(), want, "{s}");
        }
        for bad in ["", "1+", "abc", "1+2k", "nan", "inf"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn points_in_every_form() {
        let want = vec![c(0.0, 0.0), c(0.5, 0.0), c(0.0, 1.0), c(1.0, -1.0)];
        for s in [
            "(0,0.5,i,1-i)",
            "[0, 0.5, \"i\", \"1-i\"]",
            r#"[{"re":0,"im":0},{"re":0.5},{"im":1},[1,-1]]"#,
            r#"{"domain":"f","coords":[{"re":0,"im":0},{"re":0.5,"im":0},{"re":0,"im":1},{"re":1,"im":-1}]}"#,
        ] {
            assert_eq!(parse_point(s).unwrap().0, want, "{s}");
        }
        assert_eq!(parse_point(r#"{"domain":"g2","coords":[0,0]}"#).unwrap().1.as_deref(), Some("g2"));
        assert!(parse_point("()").is_err());
        assert!(parse_point(r#"{"coords":[{"re":1,"x":2}]}"#).is_err());
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("[[0,1],[0,0]]").unwrap();
        assert_eq!(m, Matrix2::e12());
        let m = parse_matrix("[[1+i, -i], [2, 0.5i]]").unwrap();
        assert_eq!(m, Matrix2::new(c(1.0, 1.0), c(0.0, -1.0), c(2.0, 0.0), c(0.0, 0.5)));
        let j = matrix_to_json(&m).to_string();
        assert_eq!(parse_matrix(&j).unwrap(), m);
        assert!(parse_matrix("[[1,2,3],[0,0]]").is_err());
        assert!(parse_matrix("[[1,2]]").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-1.5:1.5").unwrap(), (-1.5, 1.5));
        assert!(parse_range("1:1").is_err());
        assert!(parse_range("1").is_err());
    }
}
