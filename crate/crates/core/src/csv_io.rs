//! CSV import/export of dense matrices and vectors.
//!
//! Rows are lines, fields are comma-separated decimal literals written with
//! 15 significant digits. An optional header row is skipped on read when the
//! first line does not parse as numbers.

use ndarray::{Array1, Array2};
use std::io::Write;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: cannot parse field {field:?} as a number")]
    Parse {
        path: String,
        line: usize,
        field: String,
    },
    #[error("{path}: ragged rows (row {line} has {got} fields, expected {expected})")]
    Ragged {
        path: String,
        line: usize,
        got: usize,
        expected: usize,
    },
    #[error("{path}: non-finite value at row {line}")]
    NonFinite { path: String, line: usize },
    #[error("{path}: file contains no data rows")]
    Empty { path: String },
    #[error("{path}: expected a vector (one row or one column), got {rows}x{cols}")]
    NotAVector {
        path: String,
        rows: usize,
        cols: usize,
    },
}

fn io_err(path: &Path, source: std::io::Error) -> CsvError {
    CsvError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn parse_row(line: &str) -> Option<Vec<f64>> {
    line.split(',')
        .map(|f| f.trim().parse::<f64>().ok())
        .collect()
}

/// Read a matrix; a non-numeric first line is treated as a header.
pub fn read_matrix(path: &Path) -> Result<Array2<f64>, CsvError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut expected = None;
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match parse_row(line) {
            Some(vals) => {
                let w = *expected.get_or_insert(vals.len());
                if vals.len() != w {
                    return Err(CsvError::Ragged {
                        path: path.display().to_string(),
                        line: idx + 1,
                        got: vals.len(),
                        expected: w,
                    });
                }
                if vals.iter().any(|v| !v.is_finite()) {
                    return Err(CsvError::NonFinite {
                        path: path.display().to_string(),
                        line: idx + 1,
                    });
                }
                rows.push(vals);
            }
            None if rows.is_empty() && expected.is_none() => continue, // header
            None => {
                return Err(CsvError::Parse {
                    path: path.display().to_string(),
                    line: idx + 1,
                    field: line.to_string(),
                })
            }
        }
    }
    if rows.is_empty() {
        return Err(CsvError::Empty {
            path: path.display().to_string(),
        });
    }
    let (n, p) = (rows.len(), rows[0].len());
    let flat: Vec<f64> = rows.into_iter().flatten().collect();
    Ok(Array2::from_shape_vec((n, p), flat).expect("rectangular by construction"))
}

/// Read a vector from a one-column or one-row CSV file.
pub fn read_vector(path: &Path) -> Result<Array1<f64>, CsvError> {
    let m = read_matrix(path)?;
    if m.ncols() == 1 {
        Ok(m.column(0).to_owned())
    } else if m.nrows() == 1 {
        Ok(m.row(0).to_owned())
    } else {
        Err(CsvError::NotAVector {
            path: path.display().to_string(),
            rows: m.nrows(),
            cols: m.ncols(),
        })
    }
}

pub fn write_matrix(path: &Path, m: &Array2<f64>) -> Result<(), CsvError> {
    let mut out = Vec::with_capacity(m.nrows() * m.ncols() * 24);
    for row in m.rows() {
        let mut first = true;
        for v in row {
            if !first {
                out.push(b',');
            }
            write!(out, "{v:.15e}").expect("write to Vec cannot fail");
            first = false;
        }
        out.push(b'\n');
    }
    std::fs::write(path, out).map_err(|e| io_err(path, e))
}

pub fn write_vector(path: &Path, v: &Array1<f64>) -> Result<(), CsvError> {
    let m = v
        .view()
        .into_shape_with_order((v.len(), 1))
        .expect("column reshape");
    write_matrix(path, &m.to_owned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::arr2;

    #[test]
    fn round_trips_with_full_precision() {
        let dir = std::env::temp_dir().join("hdinfer_csv_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("m.csv");
        let m = arr2(&[[1.0 / 3.0, -2.5e-13], [6.02e23, 0.3f64.powi(7)]]);
        write_matrix(&path, &m).unwrap();
        let back = read_matrix(&path).unwrap();
        for (a, b) in m.iter().zip(back.iter()) {
            assert!((a - b).abs() <= a.abs() * 1e-14);
        }
    }

    #[test]
    fn skips_optional_header() {
        let dir = std::env::temp_dir().join("hdinfer_csv_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("h.csv");
        std::fs::write(&path, "x1,x2\n1.0,2.0\n3.0,4.0\n").unwrap();
        let m = read_matrix(&path).unwrap();
        assert_eq!(m, arr2(&[[1.0, 2.0], [3.0, 4.0]]));
    }

    #[test]
    fn vector_accepts_row_or_column() {
        let dir = std::env::temp_dir().join("hdinfer_csv_test");
        std::fs::create_dir_all(&dir).unwrap();
        let pr = dir.join("r.csv");
        std::fs::write(&pr, "1.0,2.0,3.0\n").unwrap();
        let pc = dir.join("c.csv");
        std::fs::write(&pc, "1.0\n2.0\n3.0\n").unwrap();
        assert_eq!(read_vector(&pr).unwrap(), read_vector(&pc).unwrap());
    }
}
