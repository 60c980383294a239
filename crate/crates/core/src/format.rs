//! File formats and report rendering.
//!
//! Family files:
//!
//! ```text
//! # ibf v1
//! n=5 d=4
//! ++0--
//! +0--+
//! ```
//!
//! Hypergraph files hold one `{v1,v2,...}` edge per line (1-based), with
//! `#` comments and blank lines ignored.

use std::io::{BufRead, Write};

use serde::Serialize;
use serde_json::Value;

use crate::coloring::Bicoloring;
use crate::edge::{Edge, Hypergraph};
use crate::error::{Error, Result};
use crate::family::{Family, Provenance};

pub const FAMILY_MAGIC: &str = "# ibf v1";

pub fn write_family<W: Write>(f: &Family, mut out: W) -> Result<()> {
    writeln!(out, "{FAMILY_MAGIC}")?;
    writeln!(out, "n={} d={}", f.n(), f.d())?;
    for x in f.colorings() {
        writeln!(out, "{x}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn family_to_string(f: &Family) -> String {
    let mut buf = Vec::new();
    write_family(f, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("family text is ascii")
}

fn parse_header(line: &str) -> Result<(usize, usize)> {
    let mut n = None;
    let mut d = None;
    for tok in line.split_whitespace() {
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad header token `{tok}`")))?;
        let val: usize = val
            .parse()
            .map_err(|_| Error::Parse(format!("bad header value `{tok}`")))?;
        match key {
            "n" => n = Some(val),
            "d" => d = Some(val),
            _ => return Err(Error::Parse(format!("unknown header key `{key}`"))),
        }
    }
    match (n, d) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::Parse(format!("header `{line}` needs n= and d="))),
    }
}

pub fn read_family<R: BufRead>(input: R) -> Result<Family> {
    let mut lines = input.lines();
    let magic = lines.next().transpose()?.unwrap_or_default();
    if magic.trim_end() != FAMILY_MAGIC {
        return Err(Error::Parse(format!(
            "expected `{FAMILY_MAGIC}`, found `{magic}`"
        )));
    }
    let header = lines
        .next()
        .transpose()?
        .ok_or_else(|| Error::Parse("missing `n=.. d=..` header".into()))?;
    let (n, d) = parse_header(&header)?;
    let mut f = Family::new(n, d)?;
    for (i, line) in lines.enumerate() {
        let line = line?;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let x: Bicoloring = line
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: {e}", i + 3)))?;
        f.push(x, Provenance::External)
            .map_err(|e| Error::Parse(format!("line {}: {e}", i + 3)))?;
    }
    Ok(f)
}

pub fn parse_family(text: &str) -> Result<Family> {
    read_family(text.as_bytes())
}

pub fn read_hypergraph<R: BufRead>(input: R, n: usize) -> Result<Hypergraph> {
    let mut edges = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let e = Edge::parse(body, n).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        edges.push(e);
    }
    Hypergraph::new(n, edges)
}

pub fn parse_hypergraph(text: &str, n: usize) -> Result<Hypergraph> {
    read_hypergraph(text.as_bytes(), n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

/// Renders a report as `key=value` lines, or as one JSON object.
pub fn render_report<T: Serialize>(report: &T, format: ReportFormat) -> String {
    let value = serde_json::to_value(report).expect("reports serialize");
    match format {
        ReportFormat::Json => value.to_string(),
        ReportFormat::Text => match value {
            Value::Object(map) => map
                .iter()
                .map(|(k, v)| format!("{k}={}", scalar(v)))
                .collect::<Vec<_>>()
                .join("\n"),
            other => scalar(&other),
        },
    }
}
