//! The CRG text format for coloured complete graphs.
//!
//! ```text
//! CRG 1
//! n <N>
//! <row 1>
//! ...
//! <row N-1>
//! ```
//!
//! Row `i` has exactly `i` characters; character `j` is the colour of the
//! edge `{i, j}`: `1` blue, `0` red. The file ends with a newline and has no
//! other whitespace.

use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph};
use std::path::Path;

pub fn serialize(g: &ColouredGraph) -> String {
    let n = g.n();
    let mut out = String::with_capacity(16 + n * n / 2 + n);
    out.push_str("CRG 1\n");
    out.push_str(&format!("n {n}\n"));
    for i in 1..n {
        for j in 0..i {
            out.push(if g.is_blue(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn parse(text: &str) -> Result<ColouredGraph> {
    let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    if !text.ends_with('\n') {
        return Err(err(0, "missing trailing newline"));
    }
    let mut lines = text[..text.len() - 1].split('\n');
    if lines.next() != Some("CRG 1") {
        return Err(err(1, "expected header `CRG 1`"));
    }
    let count = lines.next().ok_or_else(|| err(2, "missing vertex count"))?;
    let digits = count.strip_prefix("n ").ok_or_else(|| err(2, "expected `n <N>`"))?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || (digits.len() > 1 && digits.starts_with('0')) {
        return Err(err(2, "vertex count must be a plain decimal"));
    }
    let n: usize = digits.parse().map_err(|_| err(2, "vertex count out of range"))?;
    let mut g = ColouredGraph::new(n);
    for i in 1..n {
        let row = lines.next().ok_or_else(|| err(i + 2, "missing row"))?;
        if row.len() != i {
            return Err(err(i + 2, &format!("row {i} must have {i} characters")));
        }
        for (j, b) in row.bytes().enumerate() {
            match b {
                b'1' => g.set_colour(i, j, Colour::Blue),
                b'0' => {}
                _ => return Err(err(i + 2, "rows use only 0 and 1")),
            }
        }
    }
    if lines.next().is_some() {
        return Err(err(n + 2, "trailing content"));
    }
    Ok(g)
}

pub fn read(path: &Path) -> Result<ColouredGraph> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write(path: &Path, g: &ColouredGraph) -> Result<()> {
    std::fs::write(path, serialize(g))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_file() {
        let g = ColouredGraph::from_fn(3, |u, v| if u + v == 2 { Colour::Blue } else { Colour::Red });
        let text = serialize(&g);
        assert_eq!(text, "CRG 1\nn 3\n0\n10\n");
        assert_eq!(parse(&text).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["CRG 1\nn 3\n0\n10", "CRG 2\nn 1\n", "CRG 1\nn 3\n0\n1\n", "CRG 1\nn 2\n2\n", "CRG 1\nn 2\n0\n\n", "CRG 1\nn 02\n0\n", "CRG 1\nn 2\n0 \n"] {
            assert!(parse(bad).is_err(), "{bad:?}");
        }
        assert_eq!(parse("CRG 1\nn 1\n").unwrap().n(), 1);
        assert_eq!(parse("CRG 1\nn 0\n").unwrap().n(), 0);
    }
}
