//! Line-oriented gesture files.
//!
//! ```text
//! # comments run from '#' to end of line; blank lines are ignored
//! digraph <V> <A>
//! a <source> <target>        (A lines, arrow 0 first)
//! v <x1> ... <xd>            (V lines, vertex 0 first)
//! path <arrow> <n>           (one block per arrow, in arrow order)
//! p <x1> ... <xd>            (n lines)
//! ```
//!
//! The dimension `d` is the coordinate count of the first `v` line.
//! Numbers are written in Rust's shortest round-trip form, so formatting
//! then parsing reproduces a gesture exactly.

use std::fmt::Write;

use thiserror::Error;

use super::{Digraph, Gesture, GestureError, SampledPath};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    UnexpectedEnd(String),
    #[error(transparent)]
    Invalid(#[from] GestureError),
}

pub fn format_gesture(g: &Gesture) -> String {
    let mut out = String::new();
    let d = g.digraph();
    writeln!(out, "digraph {} {}", d.vertex_count(), d.arrow_count()).unwrap();
    for (s, t) in d.arrows() {
        writeln!(out, "a {s} {t}").unwrap();
    }
    for p in g.vertex_points() {
        write_point(&mut out, "v", p);
    }
    for (arrow, c) in g.arrow_paths().iter().enumerate() {
        writeln!(out, "path {arrow} {}", c.len()).unwrap();
        for p in c.points() {
            write_point(&mut out, "p", p);
        }
    }
    out
}

fn write_point(out: &mut String, tag: &str, p: &[f64]) {
    out.push_str(tag);
    for c in p {
        write!(out, " {c:?}").unwrap();
    }
    out.push('\n');
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_tokens(&mut self, expecting: &str) -> Result<(usize, Vec<&'a str>), TextError> {
        for (idx, raw) in self.inner.by_ref() {
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if !tokens.is_empty() {
                return Ok((idx + 1, tokens));
            }
        }
        Err(TextError::UnexpectedEnd(format!("expected {expecting}")))
    }

    fn finish(&mut self) -> Result<(), TextError> {
        match self.next_tokens("") {
            Ok((line, tokens)) => Err(syntax(line, format!("trailing content starting with {:?}", tokens[0]))),
            Err(_) => Ok(()),
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> TextError {
    TextError::Syntax { line, message: message.into() }
}

fn expect_tag(line: usize, tokens: &[&str], tag: &str, args: Option<usize>) -> Result<(), TextError> {
    if tokens[0] != tag {
        return Err(syntax(line, format!("expected '{tag}', found {:?}", tokens[0])));
    }
    if let Some(n) = args {
        if tokens.len() != n + 1 {
            return Err(syntax(line, format!("'{tag}' takes {n} values, found {}", tokens.len() - 1)));
        }
    }
    Ok(())
}

fn parse_count(line: usize, token: &str) -> Result<usize, TextError> {
    token.parse().map_err(|_| syntax(line, format!("not a count: {token:?}")))
}

fn parse_point(line: usize, tokens: &[&str], dimension: Option<usize>) -> Result<Vec<f64>, TextError> {
    let coords = &tokens[1..];
    if coords.is_empty() {
        return Err(syntax(line, "point has no coordinates"));
    }
    if let Some(d) = dimension {
        if coords.len() != d {
            return Err(syntax(line, format!("point has {} coordinates, expected {d}", coords.len())));
        }
    }
    coords
        .iter()
        .map(|t| match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(syntax(line, format!("not a finite number: {t:?}"))),
        })
        .collect()
}

/// Parses and validates a gesture file.
pub fn parse_gesture(text: &str) -> Result<Gesture, TextError> {
    let mut lines = Lines { inner: text.lines().enumerate() };

    let (line, header) = lines.next_tokens("digraph header")?;
    expect_tag(line, &header, "digraph", Some(2))?;
    let vertex_count = parse_count(line, header[1])?;
    let arrow_count = parse_count(line, header[2])?;

    let mut arrows = Vec::new();
    for _ in 0..arrow_count {
        let (line, t) = lines.next_tokens("arrow line")?;
        expect_tag(line, &t, "a", Some(2))?;
        arrows.push((parse_count(line, t[1])?, parse_count(line, t[2])?));
    }
    let digraph = Digraph::new(vertex_count, arrows)?;

    let mut vertex_points: Vec<Vec<f64>> = Vec::new();
    let mut dimension = None;
    for _ in 0..vertex_count {
        let (line, t) = lines.next_tokens("vertex line")?;
        expect_tag(line, &t, "v", None)?;
        let p = parse_point(line, &t, dimension)?;
        dimension = Some(p.len());
        vertex_points.push(p);
    }

    let mut paths = Vec::new();
    for arrow in 0..arrow_count {
        let (line, t) = lines.next_tokens("path block")?;
        expect_tag(line, &t, "path", Some(2))?;
        if parse_count(line, t[1])? != arrow {
            return Err(syntax(line, format!("expected path block for arrow {arrow}")));
        }
        let n = parse_count(line, t[2])?;
        if n < 2 {
            return Err(syntax(line, format!("a path needs at least 2 samples, got {n}")));
        }
        let mut coords = Vec::new();
        for _ in 0..n {
            let (line, t) = lines.next_tokens("path sample")?;
            expect_tag(line, &t, "p", None)?;
            coords.extend(parse_point(line, &t, dimension)?);
        }
        paths.push(SampledPath::from_flat(dimension.unwrap_or(0), coords)?);
    }
    lines.finish()?;
    Ok(Gesture::new(digraph, vertex_points, paths)?)
}
