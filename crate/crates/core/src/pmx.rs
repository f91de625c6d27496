//! The `.pmx` text format: one matrix row per line over `0`, `1`, `*`.
//! `#` starts a comment running to the end of the line; blank lines are
//! ignored; surrounding whitespace is allowed.

use crate::error::{Error, Result};
use crate::partial::{Entry, PartialMatrix, PartialRow};

pub fn parse_pmx(text: &str) -> Result<PartialMatrix> {
    let mut rows = Vec::new();
    let mut width: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let lead = body.len() - body.trim_start().len();
        let content = body.trim();
        if content.is_empty() {
            continue;
        }
        let mut entries = Vec::with_capacity(content.len());
        for (k, c) in content.chars().enumerate() {
            match Entry::from_char(c) {
                Some(e) => entries.push(e),
                None => {
                    return Err(Error::Parse {
                        line,
                        column: lead + k + 1,
                        message: format!("unexpected character {c:?}"),
                    })
                }
            }
        }
        match width {
            None => width = Some(entries.len()),
            Some(w) if w != entries.len() => {
                return Err(Error::Parse {
                    line,
                    column: lead + w.min(entries.len()) + 1,
                    message: format!("row has {} entries, expected {w}", entries.len()),
                })
            }
            Some(_) => {}
        }
        rows.push(PartialRow::from_entries(&entries));
    }
    let Some(n) = width else {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            column: 1,
            message: "no matrix rows".into(),
        });
    };
    PartialMatrix::new(n, rows)
}

pub fn emit_pmx(a: &PartialMatrix) -> String {
    let mut out = String::with_capacity(a.m() * (a.n() + 1));
    for row in a.rows() {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}
