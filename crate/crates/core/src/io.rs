//! Text formats: band-form matrix JSON, dense CSV, right-hand sides.
//!
//! Scalars are strings in the rational grammar (`p/q`, integers, terminating
//! decimals). JSON numbers are accepted on input as a convenience.

use serde_json::{Map, Value};

use crate::dense::DenseMatrix;
use crate::error::{HeptaError, Result};
use crate::hepta::{Band, CyclicHeptaMatrix};
use crate::scalar::{Field, Rational};

fn scalar_from_json(v: &Value, field: &str, index: usize) -> Result<Rational> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => {
            return Err(HeptaError::Format(format!(
                "{field}[{index}]: expected scalar string"
            )))
        }
    };
    text.parse::<Rational>()
        .map_err(|e| HeptaError::Format(format!("{field}[{index}]: {e}")))
}

fn json_array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| HeptaError::Format(format!("{field}: expected array")))
}

/// Parses the band-form JSON object `{"n": .., "D": [..], .., "C": [..]}`.
pub fn matrix_from_json(text: &str) -> Result<CyclicHeptaMatrix<Rational>> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| HeptaError::Format(format!("matrix json: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| HeptaError::Format("matrix json: expected object".into()))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| HeptaError::Format("n: expected non-negative integer".into()))?
        as usize;
    let mut bands: [Vec<Rational>; 7] = Default::default();
    for band in Band::ALL {
        let name = band.symbol();
        let arr = json_array(
            obj.get(name)
                .ok_or_else(|| HeptaError::Format(format!("{name}: missing")))?,
            name,
        )?;
        if arr.len() != n {
            return Err(HeptaError::Format(format!(
                "{name}: length {} but n = {n}",
                arr.len()
            )));
        }
        bands[band as usize] = arr
            .iter()
            .enumerate()
            .map(|(k, v)| scalar_from_json(v, name, k + 1))
            .collect::<Result<_>>()?;
    }
    CyclicHeptaMatrix::build(n, bands)
}

/// Band-form JSON with sorted keys and canonical scalar strings.
pub fn matrix_to_json<F: Field>(h: &CyclicHeptaMatrix<F>) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), Value::from(h.n()));
    for band in Band::ALL {
        obj.insert(band.symbol().into(), scalars_to_json(h.band(band)));
    }
    Value::Object(obj)
}

pub fn scalars_to_json<F: Field>(values: &[F]) -> Value {
    Value::Array(values.iter().map(|v| Value::String(v.to_string())).collect())
}

pub fn dense_to_json<F: Field>(m: &DenseMatrix<F>) -> Value {
    Value::Array(m.rows().map(scalars_to_json).collect())
}

/// `n` lines of `n` comma-separated scalars.
pub fn dense_to_csv<F: Field>(m: &DenseMatrix<F>) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn dense_from_csv(text: &str) -> Result<DenseMatrix<Rational>> {
    let rows = csv_rows(text)?;
    let n = rows.len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(HeptaError::Format(format!(
                "row {}: {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
    }
    DenseMatrix::from_rows(rows)
}

fn csv_rows(text: &str) -> Result<Vec<Vec<Rational>>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            line.split(',')
                .enumerate()
                .map(|(j, cell)| {
                    cell.parse::<Rational>()
                        .map_err(|e| HeptaError::Format(format!("row {} column {}: {e}", i + 1, j + 1)))
                })
                .collect()
        })
        .collect()
}

/// Right-hand sides, one vector per column.
///
/// JSON: an array of scalars (one right-hand side) or an array of arrays
/// (one per right-hand side). CSV: one line per row, one column per
/// right-hand side.
pub fn rhs_from_text(text: &str) -> Result<Vec<Vec<Rational>>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let doc: Value =
            serde_json::from_str(text).map_err(|e| HeptaError::Format(format!("rhs json: {e}")))?;
        let arr = json_array(&doc, "rhs")?;
        if arr.iter().all(Value::is_array) && !arr.is_empty() {
            return arr
                .iter()
                .enumerate()
                .map(|(c, col)| {
                    let name = format!("rhs[{}]", c + 1);
                    json_array(col, &name)?
                        .iter()
                        .enumerate()
                        .map(|(k, v)| scalar_from_json(v, &name, k + 1))
                        .collect()
                })
                .collect();
        }
        return Ok(vec![arr
            .iter()
            .enumerate()
            .map(|(k, v)| scalar_from_json(v, "rhs", k + 1))
            .collect::<Result<_>>()?]);
    }
    let rows = csv_rows(text)?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(HeptaError::Format("rhs csv: ragged rows".into()));
    }
    Ok((0..width)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_json_round_trip() {
        let h = crate::random::random_instance(9, 3, crate::random::Profile::General).unwrap();
        let text = serde_json::to_string(&matrix_to_json(&h)).unwrap();
        assert_eq!(matrix_from_json(&text).unwrap(), h);
        // keys come out sorted
        assert!(text.starts_with(r#"{"A":"#));
    }

    #[test]
    fn matrix_json_errors_name_field() {
        let h = CyclicHeptaMatrix::<Rational>::identity(8).unwrap();
        let mut doc = matrix_to_json(&h);
        doc["a"][3] = Value::String("x".into());
        let err = matrix_from_json(&doc.to_string()).unwrap_err();
        assert!(err.to_string().contains("a[4]"), "{err}");

        let mut doc = matrix_to_json(&h);
        doc["C"][7] = Value::String("1".into());
        assert_eq!(
            matrix_from_json(&doc.to_string()).unwrap_err(),
            HeptaError::BandWrapViolation { band: "C", index: 8 }
        );

        let mut doc = matrix_to_json(&h);
        doc.as_object_mut().unwrap().remove("B");
        assert!(matrix_from_json(&doc.to_string()).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let h = crate::random::random_instance(8, 1, crate::random::Profile::General).unwrap();
        let csv = dense_to_csv(&h.to_dense());
        assert_eq!(dense_from_csv(&csv).unwrap(), h.to_dense());
        assert!(dense_from_csv("1,2\n3\n").is_err());
    }

    #[test]
    fn rhs_forms() {
        let one = rhs_from_text(r#"["1", "2/3", 4]"#).unwrap();
        assert_eq!(one, vec![vec![Rational::from(1), Rational::new(2, 3).unwrap(), Rational::from(4)]]);
        let two = rhs_from_text(r#"[["1","2"],["3","4"]]"#).unwrap();
        assert_eq!(two.len(), 2);
        let csv = rhs_from_text("1,3\n2,4\n").unwrap();
        assert_eq!(csv, two);
        let col = rhs_from_text("5\n-1/2\n").unwrap();
        assert_eq!(col, vec![vec![Rational::from(5), Rational::new(-1, 2).unwrap()]]);
    }
}
