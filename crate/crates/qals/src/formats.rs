//! Line-oriented text formats.
//!
//! QUBO files start with a `qubo <n>` header followed by `i j value` lines
//! with `i <= j`; omitted pairs are zero and the lower triangle is filled in
//! on load. Edge-list files start with `n <count>` followed by `i j` lines.
//! In both, `#` starts a comment that runs to the end of the line.

use std::fmt::Write;

use qals_core::{graph_from_edge_list, QuboProblem, TopologyGraph};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("missing `{0} <n>` header")]
    MissingHeader(&'static str),
    #[error("malformed header, expected `{0} <n>` with n >= 1")]
    MalformedHeader(&'static str),
    #[error("expected {expected} whitespace-separated fields")]
    FieldCount { expected: usize },
    #[error("invalid integer `{0}`")]
    InvalidIndex(String),
    #[error("invalid number `{0}`")]
    InvalidValue(String),
    #[error("index ({i}, {j}) out of range for dimension {n}")]
    OutOfRange { i: usize, j: usize, n: usize },
    #[error("entry ({i}, {j}) is below the diagonal; write it as ({j}, {i})")]
    LowerTriangle { i: usize, j: usize },
    #[error("duplicate entry ({i}, {j})")]
    Duplicate { i: usize, j: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
}

/// Non-empty content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        (!fields.is_empty()).then_some((idx + 1, fields))
    })
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    keyword: &'static str,
) -> Result<usize, ParseError> {
    let (line, fields) = lines.next().ok_or(ParseError { line: 1, kind: ParseErrorKind::MissingHeader(keyword) })?;
    match fields.as_slice() {
        [k, n] if *k == keyword => match n.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(ParseError { line, kind: ParseErrorKind::MalformedHeader(keyword) }),
        },
        [k, ..] if *k == keyword => Err(ParseError { line, kind: ParseErrorKind::MalformedHeader(keyword) }),
        _ => Err(ParseError { line, kind: ParseErrorKind::MissingHeader(keyword) }),
    }
}

fn index(field: &str, line: usize) -> Result<usize, ParseError> {
    field.parse().map_err(|_| ParseError { line, kind: ParseErrorKind::InvalidIndex(field.to_string()) })
}

pub fn parse_qubo_file(text: &str) -> Result<QuboProblem, ParseError> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "qubo")?;
    let mut q = vec![0.0; n * n];
    let mut seen = vec![false; n * n];
    for (line, fields) in lines {
        let err = |kind| ParseError { line, kind };
        let [i, j, v] = fields.as_slice() else {
            return Err(err(ParseErrorKind::FieldCount { expected: 3 }));
        };
        let (i, j) = (index(i, line)?, index(j, line)?);
        let value: f64 = v.parse().map_err(|_| err(ParseErrorKind::InvalidValue(v.to_string())))?;
        if !value.is_finite() {
            return Err(err(ParseErrorKind::InvalidValue(v.to_string())));
        }
        if i >= n || j >= n {
            return Err(err(ParseErrorKind::OutOfRange { i, j, n }));
        }
        if i > j {
            return Err(err(ParseErrorKind::LowerTriangle { i, j }));
        }
        if std::mem::replace(&mut seen[i * n + j], true) {
            return Err(err(ParseErrorKind::Duplicate { i, j }));
        }
        q[i * n + j] = value;
        q[j * n + i] = value;
    }
    Ok(QuboProblem::new(n, q).expect("symmetric and finite by construction"))
}

/// Writes the upper triangle; values use the shortest representation that
/// parses back to the same `f64`.
pub fn write_qubo_file(problem: &QuboProblem) -> String {
    let n = problem.dim();
    let mut out = format!("qubo {n}\n");
    for i in 0..n {
        for j in i..n {
            let v = problem.get(i, j);
            // +0.0 is implied; -0.0 is kept so reloading is bit-exact
            if v.to_bits() != 0 {
                writeln!(out, "{i} {j} {v}").unwrap();
            }
        }
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<TopologyGraph, ParseError> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "n")?;
    let mut pairs = Vec::new();
    for (line, fields) in lines {
        let [i, j] = fields.as_slice() else {
            return Err(ParseError { line, kind: ParseErrorKind::FieldCount { expected: 2 } });
        };
        let (i, j) = (index(i, line)?, index(j, line)?);
        if i >= n || j >= n {
            return Err(ParseError { line, kind: ParseErrorKind::OutOfRange { i, j, n } });
        }
        if i == j {
            return Err(ParseError { line, kind: ParseErrorKind::SelfLoop(i) });
        }
        pairs.push((i, j));
    }
    Ok(graph_from_edge_list(n, &pairs).expect("edges validated above"))
}
