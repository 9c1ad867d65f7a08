//! Matrix text format.
//!
//! ```text
//! 2
//! 1 0
//! 0 -1
//! ```
//!
//! A JSON nested array (`[[1,0],[0,-1]]`) is accepted as well. Writers emit
//! 17 significant digits so values survive a round trip.

use super::Matrix;
use crate::{Error, Result};

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let rows: Vec<Vec<f64>> =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
        return Matrix::from_rows(rows);
    }
    let mut lines = trimmed.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::Parse(format!("bad dimension line {header:?}")))?;
    let mut rows = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("row {}: bad number {tok:?}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} rows, found {}",
            rows.len()
        )));
    }
    Matrix::from_rows(rows)
}

pub fn format_matrix(m: &Matrix) -> String {
    let mut out = format!("{}\n", m.n());
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        let a = parse_matrix("2\n1 0\n0 -1\n").unwrap();
        let b = parse_matrix("[[1, 0], [0, -1]]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, Matrix::diag(&[1.0, -1.0]));
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("2\n1 0\n").is_err());
        assert!(parse_matrix("2\n1 0 3\n0 1\n").is_err());
        assert!(parse_matrix("2\n1 x\n0 1\n").is_err());
        assert!(parse_matrix("[[1, 0], [0]]").is_err());
        assert!(parse_matrix("1\nNaN\n").is_err());
    }

    #[test]
    fn round_trips_exactly() {
        let m = Matrix::from_rows(vec![
            vec![0.1, -1.0 / 3.0],
            vec![1e-300, 12345.678901234567],
        ])
        .unwrap();
        assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m);
    }
}
