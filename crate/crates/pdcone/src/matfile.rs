//! Plain-text matrix files.
//!
//! The format is line-oriented and language-neutral:
//!
//! ```text
//! # optional comment lines start with '#'
//! n
//! re(0,0) im(0,0) re(0,1) im(0,1) ... re(0,n-1) im(0,n-1)
//! ...                                            (n rows total)
//! ```
//!
//! Every entry is written as an explicit (re, im) pair even when the
//! imaginary part is zero, with 17 significant decimal digits so a write
//! followed by a read reproduces the entries bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use thiserror::Error;

use crate::matcore::{ComplexMatrix, HermitianMatrix, MatError, PDMatrix};

#[derive(Debug, Error)]
pub enum MatFileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Invalid {
        path: String,
        #[source]
        source: MatError,
    },
}

fn io_err(path: &Path, source: std::io::Error) -> MatFileError {
    MatFileError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> MatFileError {
    MatFileError::Parse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Reads a matrix file into a raw complex matrix.
pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, MatFileError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut rows: Vec<(usize, &str)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        rows.push((idx + 1, line));
    }
    let Some(&(header_line, header)) = rows.first() else {
        return Err(parse_err(path, 1, "empty file: expected a dimension line"));
    };
    let dim: usize = header.parse().map_err(|_| {
        parse_err(
            path,
            header_line,
            format!("expected the matrix dimension, found '{header}'"),
        )
    })?;
    if dim == 0 {
        return Err(parse_err(path, header_line, "dimension must be positive"));
    }
    let data_rows = &rows[1..];
    if data_rows.len() != dim {
        return Err(parse_err(
            path,
            rows.last().map_or(header_line, |r| r.0),
            format!("expected {dim} data rows, found {}", data_rows.len()),
        ));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for (row_idx, &(line_no, line)) in data_rows.iter().enumerate() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 * dim {
            return Err(parse_err(
                path,
                line_no,
                format!(
                    "row {row_idx} has {} values, expected {} (re/im pairs)",
                    tokens.len(),
                    2 * dim
                ),
            ));
        }
        for col in 0..dim {
            let re: f64 = tokens[2 * col].parse().map_err(|_| {
                parse_err(
                    path,
                    line_no,
                    format!("column {}: '{}' is not a number", 2 * col, tokens[2 * col]),
                )
            })?;
            let im: f64 = tokens[2 * col + 1].parse().map_err(|_| {
                parse_err(
                    path,
                    line_no,
                    format!(
                        "column {}: '{}' is not a number",
                        2 * col + 1,
                        tokens[2 * col + 1]
                    ),
                )
            })?;
            entries.push(Complex64::new(re, im));
        }
    }
    ComplexMatrix::new(dim, entries).map_err(|source| MatFileError::Invalid {
        path: path.display().to_string(),
        source,
    })
}

/// Reads and validates a Hermitian matrix.
pub fn read_hermitian(path: &Path) -> Result<HermitianMatrix, MatFileError> {
    let raw = read_matrix(path)?;
    HermitianMatrix::new(raw).map_err(|source| MatFileError::Invalid {
        path: path.display().to_string(),
        source,
    })
}

/// Reads and validates a positive definite matrix; the error reports the
/// offending smallest eigenvalue when positivity fails.
pub fn read_pd(path: &Path) -> Result<PDMatrix, MatFileError> {
    let herm = read_hermitian(path)?;
    PDMatrix::new(herm).map_err(|source| MatFileError::Invalid {
        path: path.display().to_string(),
        source,
    })
}

/// Serializes a matrix in the file format (17 significant digits).
pub fn format_matrix(m: &ComplexMatrix) -> String {
    let n = m.dim();
    let mut out = String::new();
    let _ = writeln!(out, "{n}");
    for i in 0..n {
        for j in 0..n {
            if j > 0 {
                out.push(' ');
            }
            let z = m.get(i, j);
            let _ = write!(out, "{:.16e} {:.16e}", z.re, z.im);
        }
        out.push('\n');
    }
    out
}

/// Writes a matrix file.
pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<(), MatFileError> {
    std::fs::write(path, format_matrix(m)).map_err(|e| io_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::random_pd;

    fn temp_path(name: &str) -> std::path::PathBuf {
        let mut p = std::env::temp_dir();
        p.push(format!("pdcone-matfile-{}-{name}", std::process::id()));
        p
    }

    #[test]
    fn parses_one_by_one() {
        let p = temp_path("one.mat");
        std::fs::write(&p, "1\n2 0\n").unwrap();
        let m = read_pd(&p).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.matrix().get(0, 0), Complex64::new(2.0, 0.0));
        std::fs::remove_file(&p).ok();
    }

    #[test]
    fn parses_real_symmetric() {
        let p = temp_path("sym.mat");
        std::fs::write(&p, "2\n2 0 1 0\n1 0 2 0\n").unwrap();
        let m = read_hermitian(&p).unwrap();
        assert_eq!(m.get(0, 1), Complex64::new(1.0, 0.0));
        assert_eq!(m.get(1, 1), Complex64::new(2.0, 0.0));
        std::fs::remove_file(&p).ok();
    }

    #[test]
    fn rejects_conjugate_asymmetry() {
        let p = temp_path("bad.mat");
        // (0,1) = i and (1,0) = i; conjugate symmetry would need -i.
        std::fs::write(&p, "2\n2 0 0 1\n0 1 2 0\n").unwrap();
        let err = read_hermitian(&p).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("not Hermitian"), "{msg}");
        std::fs::remove_file(&p).ok();
    }

    #[test]
    fn reports_line_numbers() {
        let p = temp_path("short.mat");
        std::fs::write(&p, "# comment\n2\n1 0 0 0\n1 0\n").unwrap();
        let err = read_matrix(&p).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains(":4:"), "{msg}");

        std::fs::write(&p, "2\n1 0 0 0\nx 0 1 0\n").unwrap();
        let err = read_matrix(&p).unwrap_err();
        assert!(err.to_string().contains("not a number"));
        std::fs::remove_file(&p).ok();
    }

    #[test]
    fn nonpositive_reports_eigenvalue() {
        let p = temp_path("negdef.mat");
        std::fs::write(&p, "2\n-1 0 0 0\n0 0 2 0\n").unwrap();
        let err = read_pd(&p).unwrap_err();
        assert!(err.to_string().contains("not positive definite"));
        std::fs::remove_file(&p).ok();
    }

    #[test]
    fn roundtrip_is_bit_exact() {
        let p = temp_path("roundtrip.mat");
        let m = random_pd(4, 1234, 0.1, 10.0).unwrap();
        write_matrix(&p, m.matrix()).unwrap();
        let back = read_matrix(&p).unwrap();
        assert_eq!(back.entries(), m.matrix().entries());
        // And the serialized text itself is stable.
        let text1 = format_matrix(m.matrix());
        let text2 = format_matrix(back.entries().len().checked_sub(0).map(|_| &back).unwrap());
        assert_eq!(text1, text2);
        std::fs::remove_file(&p).ok();
    }

    #[test]
    fn comments_are_ignored() {
        let p = temp_path("comments.mat");
        std::fs::write(&p, "# header\n2\n# mid\n1 0 0 0\n0 0 1 0\n# tail\n").unwrap();
        let m = read_matrix(&p).unwrap();
        assert_eq!(m.dim(), 2);
        std::fs::remove_file(&p).ok();
    }
}
