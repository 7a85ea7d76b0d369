//! Plain-text matrix and vector files: one row per line, entries separated
//! by spaces. Values are written in shortest round-trip form, so reading a
//! written file gives back the same bits.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

pub fn format_matrix(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        let mut first = true;
        for v in row {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Vectors are written one entry per line.
pub fn format_vector(v: &[f64]) -> String {
    let mut out = String::new();
    for x in v {
        writeln!(out, "{x}").unwrap();
    }
    out
}

/// Parses a matrix; blank lines and `#` comments are skipped and all rows
/// must have the same length.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<f64>>> {
    let rows = parse_rows(text)?;
    if let Some((first_line, first)) = rows.first() {
        for (line, row) in &rows {
            if row.len() != first.len() {
                return Err(Error::Parse {
                    line: *line,
                    msg: format!(
                        "row has {} entries, line {first_line} has {}",
                        row.len(),
                        first.len()
                    ),
                });
            }
        }
    }
    Ok(rows.into_iter().map(|(_, r)| r).collect())
}

/// Parses a vector written either one entry per line or on a single line.
pub fn parse_vector(text: &str) -> Result<Vec<f64>> {
    Ok(parse_rows(text)?.into_iter().flat_map(|(_, r)| r).collect())
}

/// Non-empty rows with their 1-based line numbers.
fn parse_rows(text: &str) -> Result<Vec<(usize, Vec<f64>)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        })
        .map(|(i, l)| {
            l.split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>().map_err(|e| Error::Parse {
                        line: i + 1,
                        msg: format!("{tok:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<f64>>>()
                .map(|row| (i + 1, row))
        })
        .collect()
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<Vec<Vec<f64>>> {
    let path = path.as_ref();
    parse_matrix(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
}

pub fn read_vector(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    parse_vector(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
