//! Certificate files.
//!
//! The first line names the kind. Payloads:
//!
//! - `embedding`: `2^n` lines `cube <mask> -> <vertex>`, masks ascending and
//!   written as `n`-digit binary numbers (most significant bit first);
//! - `blue-clique`: one line of space-separated vertex indices;
//! - `partition`: one line `S<j>: <indices>` per class, `j` from 0.

use crate::cube::CubeEmbedding;
use crate::error::{Error, Result};
use crate::graph::{CliqueWitness, Colour};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Embedding(CubeEmbedding),
    BlueClique(CliqueWitness),
    Partition(Vec<Vec<usize>>),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Embedding(_) => "embedding",
            Certificate::BlueClique(_) => "blue-clique",
            Certificate::Partition(_) => "partition",
        }
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn serialize(cert: &Certificate) -> String {
    let mut out = String::new();
    out.push_str(cert.kind());
    out.push('\n');
    match cert {
        Certificate::Embedding(e) => {
            for (x, v) in e.map.iter().enumerate() {
                if e.n == 0 {
                    let _ = writeln!(out, "cube  -> {v}");
                } else {
                    let _ = writeln!(out, "cube {x:0width$b} -> {v}", width = e.n);
                }
            }
        }
        Certificate::BlueClique(w) => {
            out.push_str(&join(&w.members));
            out.push('\n');
        }
        Certificate::Partition(parts) => {
            for (j, p) in parts.iter().enumerate() {
                if p.is_empty() {
                    let _ = writeln!(out, "S{j}:");
                } else {
                    let _ = writeln!(out, "S{j}: {}", join(p));
                }
            }
        }
    }
    out
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) || (tok.len() > 1 && tok.starts_with('0')) {
        return Err(Error::Parse { line, msg: format!("bad index {tok:?}") });
    }
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("index {tok:?} out of range") })
}

fn parse_indices(s: &str, line: usize) -> Result<Vec<usize>> {
    s.split(' ').map(|t| parse_index(t, line)).collect()
}

pub fn parse(text: &str) -> Result<Certificate> {
    let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    if !text.ends_with('\n') {
        return Err(err(0, "missing trailing newline"));
    }
    let lines: Vec<&str> = text[..text.len() - 1].split('\n').collect();
    let cert = match lines[0] {
        "embedding" => {
            let count = lines.len() - 1;
            if !count.is_power_of_two() {
                return Err(err(lines.len(), "embedding needs 2^n lines"));
            }
            let n = count.trailing_zeros() as usize;
            let mut map = Vec::with_capacity(count);
            for (x, l) in lines[1..].iter().enumerate() {
                let ln = x + 2;
                let expect = if n == 0 { String::new() } else { format!("{x:0n$b}") };
                let rest = l
                    .strip_prefix("cube ")
                    .and_then(|r| r.strip_prefix(expect.as_str()))
                    .and_then(|r| r.strip_prefix(" -> "))
                    .ok_or_else(|| err(ln, &format!("expected `cube {expect} -> <vertex>`")))?;
                map.push(parse_index(rest, ln)?);
            }
            Certificate::Embedding(CubeEmbedding::new(n, map))
        }
        "blue-clique" => {
            if lines.len() != 2 {
                return Err(err(2, "blue-clique has exactly one payload line"));
            }
            let members = parse_indices(lines[1], 2)?;
            if !members.windows(2).all(|w| w[0] < w[1]) {
                return Err(err(2, "clique members must be strictly ascending"));
            }
            Certificate::BlueClique(CliqueWitness { members, colour: Colour::Blue })
        }
        "partition" => {
            let mut parts = Vec::new();
            for (j, l) in lines[1..].iter().enumerate() {
                let ln = j + 2;
                let head = format!("S{j}:");
                let rest = l.strip_prefix(head.as_str()).ok_or_else(|| err(ln, &format!("expected `{head}`")))?;
                let members = if rest.is_empty() {
                    vec![]
                } else {
                    parse_indices(rest.strip_prefix(' ').ok_or_else(|| err(ln, "expected space"))?, ln)?
                };
                if !members.windows(2).all(|w| w[0] < w[1]) {
                    return Err(err(ln, "class members must be strictly ascending"));
                }
                parts.push(members);
            }
            Certificate::Partition(parts)
        }
        other => return Err(err(1, &format!("unknown certificate kind {other:?}"))),
    };
    Ok(cert)
}

pub fn read(path: &Path) -> Result<Certificate> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write(path: &Path, cert: &Certificate) -> Result<()> {
    std::fs::write(path, serialize(cert))?;
    Ok(())
}
