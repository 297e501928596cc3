//! Plain-text matrix format.
//!
//! ```text
//! 3
//! 0 1 3
//! 1 0 2
//! 3 2 0
//! ```
//!
//! The first line holds the number of points `n`, followed by `n` lines of `n`
//! whitespace-separated decimal numbers. Blank lines after the matrix are
//! ignored. Mirror entries that differ by at most [`SYMMETRY_TOL`] (relative
//! to `max(1, |value|)`) are replaced by their average; larger differences are
//! left in place and rejected by validation.

use std::fmt::Write as _;

use thiserror::Error;

use crate::metric::{validate, DistanceMatrix, MetricError};

pub const SYMMETRY_TOL: f64 = 1e-12;

/// Refuses headers that would allocate absurdly large buffers.
pub const MAX_POINTS: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("missing point count")]
    MissingHeader,
    #[error("invalid point count {0:?}")]
    BadHeader(String),
    #[error("point count {0} exceeds the limit of {MAX_POINTS}")]
    TooLarge(usize),
    #[error("expected {expected} rows, found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("expected {expected} entries, found {found}")]
    WrongRowLength { expected: usize, found: usize },
    #[error("invalid number {0:?}")]
    BadNumber(String),
    #[error("unexpected trailing content")]
    TrailingContent,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixFileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] MetricError),
}

/// Parses the text format into a raw, symmetrised array without checking the
/// metric axioms.
pub fn parse_raw(text: &str) -> Result<Vec<Vec<f64>>, ParseError> {
    let mut lines = text.lines().enumerate();
    let (header_idx, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or(ParseError {
            line: 1,
            kind: ParseErrorKind::MissingHeader,
        })?;
    let header_line = header_idx + 1;
    let n: usize = header.trim().parse().map_err(|_| ParseError {
        line: header_line,
        kind: ParseErrorKind::BadHeader(header.trim().to_string()),
    })?;
    if n == 0 {
        return Err(ParseError {
            line: header_line,
            kind: ParseErrorKind::BadHeader(header.trim().to_string()),
        });
    }
    if n > MAX_POINTS {
        return Err(ParseError {
            line: header_line,
            kind: ParseErrorKind::TooLarge(n),
        });
    }
    let mut rows = Vec::with_capacity(n);
    let mut last_line = header_line;
    for (idx, line) in lines.by_ref().take(n) {
        last_line = idx + 1;
        let mut row = Vec::with_capacity(n);
        for token in line.split_whitespace() {
            let value: f64 = token.parse().map_err(|_| ParseError {
                line: idx + 1,
                kind: ParseErrorKind::BadNumber(token.to_string()),
            })?;
            row.push(value);
        }
        if row.len() != n {
            return Err(ParseError {
                line: idx + 1,
                kind: ParseErrorKind::WrongRowLength {
                    expected: n,
                    found: row.len(),
                },
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(ParseError {
            line: last_line + 1,
            kind: ParseErrorKind::MissingRows {
                expected: n,
                found: rows.len(),
            },
        });
    }
    if let Some((idx, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(ParseError {
            line: idx + 1,
            kind: ParseErrorKind::TrailingContent,
        });
    }
    symmetrize(&mut rows);
    Ok(rows)
}

fn symmetrize(rows: &mut [Vec<f64>]) {
    let n = rows.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (rows[i][j], rows[j][i]);
            if a != b && (a - b).abs() <= SYMMETRY_TOL * a.abs().max(b.abs()).max(1.0) {
                let mean = 0.5 * (a + b);
                rows[i][j] = mean;
                rows[j][i] = mean;
            }
        }
    }
}

/// Parses and validates a matrix.
pub fn parse_matrix(text: &str) -> Result<DistanceMatrix, MatrixFileError> {
    Ok(validate(parse_raw(text)?)?)
}

/// Renders a matrix in the text format. Numbers use the shortest
/// representation that parses back to the same `f64`.
pub fn format_matrix(x: &DistanceMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", x.len());
    for i in 0..x.len() {
        let row: Vec<String> = x.row(i).iter().map(|v| format!("{v}")).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalesError {
    #[error("empty scale list")]
    Empty,
    #[error("invalid scale {0:?}")]
    BadNumber(String),
}

/// Parses a comma-separated list of reals such as `1,0.5,0.25`. Each item may
/// also be a ratio `p/q` or a power `b^e`, e.g. `3^-2`.
pub fn parse_scales(text: &str) -> Result<Vec<f64>, ScalesError> {
    let items: Vec<&str> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if items.is_empty() {
        return Err(ScalesError::Empty);
    }
    items.into_iter().map(parse_scale_item).collect()
}

fn parse_scale_item(item: &str) -> Result<f64, ScalesError> {
    let bad = || ScalesError::BadNumber(item.to_string());
    let number = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let value = if let Some((base, exp)) = item.split_once('^') {
        let exp: i32 = exp.trim().parse().map_err(|_| bad())?;
        number(base)?.powi(exp)
    } else if let Some((p, q)) = item.split_once('/') {
        number(p)? / number(q)?
    } else {
        number(item)?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// Formats a real with `digits` significant digits, `%g` style.
pub fn format_sig(value: f64, digits: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, value);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        format!("{mantissa}e{exp}")
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, value)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
