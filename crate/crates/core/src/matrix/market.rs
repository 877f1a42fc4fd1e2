//! Matrix Market coordinate files.
//!
//! Indices are 1-based on disk and 0-based in memory. Symmetric files are
//! expanded to both triangles, repeated coordinates are summed, and entries
//! whose value is zero are kept.

use std::fmt::Display;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::{Triple, TripleList};
use crate::semiring::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Field {
    Real,
    Integer,
    Pattern,
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<TripleList<f64>> {
    read_matrix_market_from(BufReader::new(File::open(path)?))
}

pub fn read_matrix_market_from(reader: impl BufRead) -> Result<TripleList<f64>> {
    let mut lines = reader.lines().enumerate();
    let parse_err = |line: usize, msg: &str| Error::Parse {
        line: line + 1,
        msg: msg.to_string(),
    };

    let (lineno, header) = match lines.next() {
        Some((n, l)) => (n, l?),
        None => return Err(parse_err(0, "empty file")),
    };
    let words: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(parse_err(lineno, "expected '%%MatrixMarket matrix ...' header"));
    }
    if words[2] != "coordinate" {
        return Err(parse_err(lineno, "only coordinate format is supported"));
    }
    let field = match words[3].as_str() {
        "real" | "double" => Field::Real,
        "integer" => Field::Integer,
        "pattern" => Field::Pattern,
        _ => return Err(parse_err(lineno, "unsupported field type")),
    };
    let symmetric = match words[4].as_str() {
        "general" => false,
        "symmetric" => true,
        _ => return Err(parse_err(lineno, "unsupported symmetry")),
    };

    let mut size: Option<(usize, usize, usize)> = None;
    let mut triples = Vec::new();
    let mut seen = 0usize;
    for (n, line) in lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let Some((nrows, ncols, _)) = size else {
            let mut dim = || -> Result<usize> {
                it.next()
                    .ok_or_else(|| parse_err(n, "short size line"))?
                    .parse()
                    .map_err(|_| parse_err(n, "bad size line"))
            };
            let (r, c, z) = (dim()?, dim()?, dim()?);
            if symmetric && r != c {
                return Err(parse_err(n, "symmetric matrix must be square"));
            }
            size = Some((r, c, z));
            triples.reserve(if symmetric { 2 * z } else { z });
            continue;
        };
        let mut index = |bound: usize| -> Result<usize> {
            let v: usize = it
                .next()
                .ok_or_else(|| parse_err(n, "missing index"))?
                .parse()
                .map_err(|_| parse_err(n, "bad index"))?;
            if v == 0 || v > bound {
                return Err(parse_err(n, "index out of declared bounds"));
            }
            Ok(v - 1)
        };
        let row = index(nrows)?;
        let col = index(ncols)?;
        let value = match field {
            Field::Pattern => 1.0,
            Field::Real | Field::Integer => it
                .next()
                .ok_or_else(|| parse_err(n, "missing value"))?
                .parse::<f64>()
                .map_err(|_| parse_err(n, "bad value"))?,
        };
        triples.push(Triple::new(row, col, value));
        if symmetric && row != col {
            triples.push(Triple::new(col, row, value));
        }
        seen += 1;
    }
    let Some((nrows, ncols, nnz)) = size else {
        return Err(parse_err(lineno, "missing size line"));
    };
    if seen != nnz {
        return Err(Error::Parse {
            line: 0,
            msg: format!("declared {nnz} entries, found {seen}"),
        });
    }
    Ok(TripleList::new(nrows, ncols, triples)?.sum_duplicates_with(|a, b| a + b))
}

pub fn write_matrix_market<T: Scalar + Display>(t: &TripleList<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_matrix_market_to(t, &mut w)?;
    w.flush()?;
    Ok(())
}

/// Writes a general real coordinate file. `f64` values use Rust's shortest
/// round-trip formatting, so reading the file back is exact.
pub fn write_matrix_market_to<T: Scalar + Display>(t: &TripleList<T>, w: &mut impl Write) -> Result<()> {
    writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(w, "{} {} {}", t.nrows(), t.ncols(), t.nnz())?;
    for tr in t.iter() {
        writeln!(w, "{} {} {}", tr.row + 1, tr.col + 1, tr.value)?;
    }
    Ok(())
}
