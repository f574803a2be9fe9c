//! The `.tri` and `.cub` text formats.
//!
//! Line 1 holds the cell count; each following line holds the gluings of one
//! cell as whitespace-separated `j:g:p` tokens (target cell, target face,
//! bijection code). For `.tri` the code indexes the 24 vertex permutations in
//! lexicographic order and `-` marks an unglued face; for `.cub` it is the
//! dihedral code `0..8`. `#` starts a comment.

use std::fmt::Write;

use crate::cells::{Dihedral, Perm4};
use crate::cubulation::{CubeGluing, Cubulation};
use crate::error::ParseError;
use crate::triangulation::{TetGluing, Triangulation};

struct Token<'a> {
    line: usize,
    column: usize,
    text: &'a str,
}

/// Content lines with comments stripped, tokenized with 1-based positions.
fn content_lines(text: &str) -> Vec<(usize, Vec<Token<'_>>)> {
    let mut out = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in line
            .char_indices()
            .chain(std::iter::once((line.len(), ' ')))
        {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push(Token {
                        line: i + 1,
                        column: s + 1,
                        text: &line[s..pos],
                    });
                }
            } else if start.is_none() {
                start = Some(pos);
            }
        }
        if !tokens.is_empty() {
            out.push((i + 1, tokens));
        }
    }
    out
}

fn parse_count(lines: &[(usize, Vec<Token<'_>>)], what: &str) -> Result<usize, ParseError> {
    let Some((line, tokens)) = lines.first() else {
        return Err(ParseError::syntax(1, 1, format!("missing {what} count")));
    };
    if tokens.len() != 1 {
        let t = &tokens[1];
        return Err(ParseError::syntax(
            t.line,
            t.column,
            "count line must hold a single integer",
        ));
    }
    tokens[0].text.parse::<usize>().map_err(|_| {
        ParseError::syntax(
            *line,
            tokens[0].column,
            format!("invalid {what} count '{}'", tokens[0].text),
        )
    })
}

fn parse_triple(tok: &Token<'_>, faces: u8, codes: u8) -> Result<(usize, u8, u8), ParseError> {
    let err = |msg: String| ParseError::syntax(tok.line, tok.column, msg);
    let parts: Vec<&str> = tok.text.split(':').collect();
    if parts.len() != 3 {
        return Err(err(format!("expected 'j:g:p', found '{}'", tok.text)));
    }
    let cell = parts[0]
        .parse::<usize>()
        .map_err(|_| err(format!("invalid cell index '{}'", parts[0])))?;
    let face = parts[1]
        .parse::<u8>()
        .ok()
        .filter(|&f| f < faces)
        .ok_or_else(|| {
            err(format!(
                "face index '{}' out of range 0..{}",
                parts[1], faces
            ))
        })?;
    let code = parts[2]
        .parse::<u8>()
        .ok()
        .filter(|&c| c < codes)
        .ok_or_else(|| {
            err(format!(
                "bijection code '{}' out of range 0..{}",
                parts[2], codes
            ))
        })?;
    Ok((cell, face, code))
}

fn rows<'a, 'b>(
    lines: &'b [(usize, Vec<Token<'a>>)],
    count: usize,
    width: usize,
) -> Result<&'b [(usize, Vec<Token<'a>>)], ParseError> {
    let body = &lines[1..];
    if body.len() != count {
        let (line, col) = match body.get(count) {
            Some((l, t)) => (*l, t[0].column),
            None => (lines.last().map_or(1, |l| l.0) + 1, 1),
        };
        return Err(ParseError::syntax(
            line,
            col,
            format!("expected {count} gluing lines, found {}", body.len()),
        ));
    }
    for (line, tokens) in body {
        if tokens.len() != width {
            let col = tokens.get(width).map_or(tokens[0].column, |t| t.column);
            return Err(ParseError::syntax(
                *line,
                col,
                format!("expected {width} tokens, found {}", tokens.len()),
            ));
        }
    }
    Ok(body)
}

pub fn parse_triangulation(text: &str) -> Result<Triangulation, ParseError> {
    let lines = content_lines(text);
    let n = parse_count(&lines, "tetrahedron")?;
    let body = rows(&lines, n, 4)?;
    let mut table = Vec::with_capacity(n);
    for (_, tokens) in body {
        let mut row = [None; 4];
        for (f, tok) in tokens.iter().enumerate() {
            if tok.text == "-" {
                continue;
            }
            let (tet, face, code) = parse_triple(tok, 4, 24)?;
            let perm = Perm4::from_index(code as usize).expect("code range checked");
            row[f] = Some(TetGluing { tet, face, perm });
        }
        table.push(row);
    }
    Ok(Triangulation::new(table)?)
}

pub fn parse_cubulation(text: &str) -> Result<Cubulation, ParseError> {
    let lines = content_lines(text);
    let n = parse_count(&lines, "cube")?;
    let body = rows(&lines, n, 6)?;
    let mut table = Vec::with_capacity(n);
    for (_, tokens) in body {
        let mut row = [None; 6];
        for (f, tok) in tokens.iter().enumerate() {
            let (cube, face, code) = parse_triple(tok, 6, 8)?;
            let sym = Dihedral::new(code).expect("code range checked");
            row[f] = Some(CubeGluing { cube, face, sym });
        }
        table.push(row);
    }
    Ok(Cubulation::new(table)?)
}

/// Gluing tokens of one row of a cubulation.
pub fn cube_row_tokens(row: &[CubeGluing; 6]) -> impl Iterator<Item = String> + '_ {
    row.iter()
        .map(|g| format!("{}:{}:{}", g.cube, g.face, g.sym.code()))
}

pub fn write_cubulation(cub: &Cubulation) -> String {
    let mut out = format!("{}\n", cub.cube_count());
    for row in cub.rows() {
        let tokens: Vec<String> = cube_row_tokens(row).collect();
        let _ = writeln!(out, "{}", tokens.join(" "));
    }
    out
}

pub fn write_triangulation(tri: &Triangulation) -> String {
    let mut out = format!("{}\n", tri.tet_count());
    for row in tri.rows() {
        let tokens: Vec<String> = row
            .iter()
            .map(|g| match g {
                Some(g) => format!("{}:{}:{}", g.tet, g.face, g.perm.index()),
                None => "-".to_string(),
            })
            .collect();
        let _ = writeln!(out, "{}", tokens.join(" "));
    }
    out
}
