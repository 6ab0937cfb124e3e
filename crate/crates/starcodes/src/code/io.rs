//! Plain-text code files: a field header line, an "n k" line, then k rows.
//!
//! Blank lines and lines starting with `#` are skipped.

use super::LinearCode;
use crate::error::{Error, Result};
use crate::field::Field;

impl LinearCode {
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n{} {}\n", self.field().header(), self.n(), self.k());
        for r in self.rows() {
            let cells: Vec<String> = r.iter().map(u32::to_string).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Content lines as (1-based line number, text).
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .collect()
}

/// Whitespace-separated tokens with their 1-based column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let base = line.as_ptr() as usize;
    line.split_whitespace().map(move |t| (t.as_ptr() as usize - base + 1, t))
}

fn parse_num<T: std::str::FromStr>(line: usize, col: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse().map_err(|_| perr(line, col, format!("expected {what}, found '{tok}'")))
}

fn parse_one(lines: &[(usize, &str)], pos: &mut usize) -> Result<LinearCode> {
    let last_line = lines.last().map_or(1, |l| l.0);
    let mut next = |what: &str| {
        let l = lines.get(*pos).copied().ok_or_else(|| perr(last_line + 1, 1, format!("missing {what}")))?;
        *pos += 1;
        Ok::<_, Error>(l)
    };
    let (hl, header) = next("field header")?;
    let field = Field::parse_header(header.trim()).map_err(|e| perr(hl, 1, e.to_string()))?;
    let (dl, dims) = next("dimension line")?;
    let toks: Vec<(usize, &str)> = tokens(dims).collect();
    if toks.len() != 2 {
        return Err(perr(dl, 1, "expected 'n k'"));
    }
    let n: usize = parse_num(dl, toks[0].0, toks[0].1, "length n")?;
    let k: usize = parse_num(dl, toks[1].0, toks[1].1, "dimension k")?;
    if k > n {
        return Err(perr(dl, toks[1].0, format!("k = {k} exceeds n = {n}")));
    }
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let (rl, row) = next(&format!("row {} of {k}", i + 1))?;
        let mut v = Vec::with_capacity(n);
        for (c, t) in tokens(row) {
            let x: u32 = parse_num(rl, c, t, "field element")?;
            if !field.contains(x) {
                return Err(perr(rl, c, format!("{x} is not an element of GF({})", field.q())));
            }
            v.push(x);
        }
        if v.len() != n {
            return Err(perr(rl, row.len() + 1, format!("expected {n} entries, found {}", v.len())));
        }
        rows.push(v);
    }
    LinearCode::from_rows(&field, n, &rows)
}

pub fn parse_code(text: &str) -> Result<LinearCode> {
    let lines = content_lines(text);
    let mut pos = 0;
    let c = parse_one(&lines, &mut pos)?;
    if let Some(&(l, _)) = lines.get(pos) {
        return Err(perr(l, 1, "trailing content after code"));
    }
    Ok(c)
}

/// Several codes written back to back.
pub fn parse_codes(text: &str) -> Result<Vec<LinearCode>> {
    let lines = content_lines(text);
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < lines.len() {
        out.push(parse_one(&lines, &mut pos)?);
    }
    Ok(out)
}
