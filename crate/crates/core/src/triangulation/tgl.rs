//! The TGL gluing-list text format.
//!
//! ```text
//! % comment lines start with '%'
//! tets 2
//! 0 : 1 0123 1 1320 1 3210 1 3102
//! 1 : 0 0123 0 3210 0 2130 0 3021
//! ```
//!
//! The `i`-th pair on a tetrahedron line glues face `i` (opposite vertex `i`)
//! to the given tetrahedron by the given permutation, written as the images
//! of `0123`. A target of `-` marks an unglued face, which is rejected.

use std::fmt::Write as _;

use crate::error::{ParseError, TriangulationError};
use crate::perm::Perm4;

use super::{Gluing, Triangulation};

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: s + 1,
        });
    }
    out
}

pub fn parse_tgl(text: &str) -> Result<Triangulation, ParseError> {
    let mut count: Option<usize> = None;
    let mut rows: Vec<Option<[Option<Gluing>; 4]>> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim_end_matches('\r');
        if line.trim_start().starts_with('%') {
            continue;
        }
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        let Some(n) = count else {
            if toks[0].text != "tets" {
                return Err(ParseError::syntax(
                    line_no,
                    toks[0].column,
                    format!("expected `tets <n>`, found `{}`", toks[0].text),
                ));
            }
            let Some(num) = toks.get(1) else {
                return Err(ParseError::syntax(
                    line_no,
                    line.len() + 1,
                    "missing tetrahedron count",
                ));
            };
            let n: usize = num.text.parse().map_err(|_| {
                ParseError::syntax(line_no, num.column, format!("bad count `{}`", num.text))
            })?;
            if let Some(extra) = toks.get(2) {
                return Err(ParseError::syntax(line_no, extra.column, "trailing input"));
            }
            if n == 0 {
                return Err(TriangulationError::Empty.into());
            }
            count = Some(n);
            rows = vec![None; n];
            continue;
        };

        let tet_tok = &toks[0];
        let tet: usize = tet_tok.text.parse().map_err(|_| {
            ParseError::syntax(
                line_no,
                tet_tok.column,
                format!("expected tetrahedron index, found `{}`", tet_tok.text),
            )
        })?;
        if tet >= n {
            return Err(ParseError::syntax(
                line_no,
                tet_tok.column,
                format!("tetrahedron {tet} out of range (tets {n})"),
            ));
        }
        if rows[tet].is_some() {
            return Err(ParseError::syntax(
                line_no,
                tet_tok.column,
                format!("tetrahedron {tet} listed twice"),
            ));
        }
        match toks.get(1) {
            Some(t) if t.text == ":" => {}
            Some(t) => {
                return Err(ParseError::syntax(
                    line_no,
                    t.column,
                    format!("expected `:`, found `{}`", t.text),
                ))
            }
            None => return Err(ParseError::syntax(line_no, line.len() + 1, "expected `:`")),
        }
        let fields = &toks[2..];
        if fields.len() < 8 {
            return Err(ParseError::syntax(
                line_no,
                line.len() + 1,
                format!("expected 8 fields after `:`, found {}", fields.len()),
            ));
        }
        if fields.len() > 8 {
            return Err(ParseError::syntax(
                line_no,
                fields[8].column,
                "trailing input",
            ));
        }
        let mut faces = [None; 4];
        for (face, pair) in fields.chunks(2).enumerate() {
            let (target, perm) = (&pair[0], &pair[1]);
            if target.text == "-" {
                continue;
            }
            let target_tet: usize = target.text.parse().map_err(|_| {
                ParseError::syntax(
                    line_no,
                    target.column,
                    format!("expected tetrahedron index, found `{}`", target.text),
                )
            })?;
            let perm: Perm4 = perm
                .text
                .parse()
                .map_err(|e| ParseError::syntax(line_no, perm.column, format!("{e}")))?;
            faces[face] = Some(Gluing::new(target_tet, perm));
        }
        rows[tet] = Some(faces);
    }

    let Some(n) = count else {
        return Err(ParseError::syntax(
            last_line.max(1),
            1,
            "missing `tets <n>` header",
        ));
    };
    let mut gluings = Vec::with_capacity(n);
    for (t, row) in rows.into_iter().enumerate() {
        let Some(faces) = row else {
            return Err(ParseError::syntax(
                last_line + 1,
                1,
                format!("missing line for tetrahedron {t}"),
            ));
        };
        let mut glued = [Gluing::new(0, Perm4::IDENTITY); 4];
        for (f, g) in faces.into_iter().enumerate() {
            glued[f] = g.ok_or(TriangulationError::UngluedFace {
                tet: t,
                face: f as u8,
            })?;
        }
        gluings.push(glued);
    }
    Ok(Triangulation::new(gluings)?)
}

/// Canonical TGL text: header, one line per tetrahedron in order, single
/// spaces, no comments, trailing newline.
pub fn to_tgl(tri: &Triangulation) -> String {
    let mut out = String::new();
    writeln!(out, "tets {}", tri.tet_count()).unwrap();
    for (t, faces) in tri.gluings().iter().enumerate() {
        write!(out, "{t} :").unwrap();
        for g in faces {
            write!(out, " {} {}", g.tet, g.perm).unwrap();
        }
        out.push('\n');
    }
    out
}
