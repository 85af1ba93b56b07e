//! Small helpers shared by the line-oriented parsers.

use crate::error::{parse_err, Result};
use std::str::FromStr;

/// Non-empty, non-comment lines with their 1-based line numbers.
/// Lines starting with `#` are comments.
pub(crate) fn content_lines(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_field<T: FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

pub(crate) fn expect_keyword(line: usize, tok: Option<&str>, keyword: &str) -> Result<()> {
    match tok {
        Some(t) if t == keyword => Ok(()),
        Some(t) => Err(parse_err(line, format!("expected `{keyword}`, found `{t}`"))),
        None => Err(parse_err(line, format!("expected `{keyword}`"))),
    }
}

pub(crate) fn expect_end<'a>(line: usize, mut toks: impl Iterator<Item = &'a str>) -> Result<()> {
    match toks.next() {
        Some(t) => Err(parse_err(line, format!("unexpected trailing token `{t}`"))),
        None => Ok(()),
    }
}
