//! Matrix Market coordinate format for real matrices.

use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::csr::{CsrMatrix, Symmetry};
use crate::error::{Error, Result};

/// Writes all stored entries ("general"), 1-based.
pub fn write_matrix_market(a: &CsrMatrix<f64>, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(out, "{} {} {}", a.n_rows(), a.n_cols(), a.nnz())?;
    for r in 0..a.n_rows() {
        for (c, v) in a.row(r) {
            writeln!(out, "{} {} {:.17e}", r + 1, c + 1, v)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Config { line, message: message.into() }
}

/// Reads a real coordinate matrix; "symmetric" files are expanded.
pub fn read_matrix_market(path: &Path) -> Result<CsrMatrix<f64>> {
    let reader = BufReader::new(std::fs::File::open(path)?);
    let mut lines = reader.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let header = header?.to_ascii_lowercase();
    if !header.starts_with("%%matrixmarket matrix coordinate real") {
        return Err(parse_err(1, "only real coordinate matrices are supported"));
    }
    let symmetric = header.contains("symmetric");
    let mut size = None;
    let mut triplets = Vec::new();
    for (no, line) in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        if size.is_none() {
            let dims: Vec<usize> = fields
                .iter()
                .map(|f| f.parse().map_err(|_| parse_err(no + 1, "bad size line")))
                .collect::<Result<_>>()?;
            if dims.len() != 3 {
                return Err(parse_err(no + 1, "bad size line"));
            }
            size = Some((dims[0], dims[1]));
            continue;
        }
        if fields.len() != 3 {
            return Err(parse_err(no + 1, "expected `row col value`"));
        }
        let r: usize = fields[0].parse().map_err(|_| parse_err(no + 1, "bad row index"))?;
        let c: usize = fields[1].parse().map_err(|_| parse_err(no + 1, "bad column index"))?;
        let v: f64 = fields[2].parse().map_err(|_| parse_err(no + 1, "bad value"))?;
        if r == 0 || c == 0 {
            return Err(parse_err(no + 1, "indices are 1-based"));
        }
        triplets.push((r - 1, c - 1, v));
        if symmetric && r != c {
            triplets.push((c - 1, r - 1, v));
        }
    }
    let (n_rows, n_cols) = size.ok_or_else(|| parse_err(1, "missing size line"))?;
    let tag = if symmetric { Symmetry::Symmetric } else { Symmetry::General };
    Ok(CsrMatrix::from_triplets(n_rows, n_cols, &triplets, tag))
}
