//! Plain-text arrangement files.
//!
//! ```text
//! # a3
//! field rational
//! line 1 -1 0
//! line 1 1 0
//! ```
//!
//! The first comment before the header, if any, is the label. Coefficients use
//! the canonical [`FieldElement`] syntax. Export writes every line in
//! canonical projective form, so `export(parse(export(a))) == export(a)`.

use std::fmt::Write as _;

use crate::arrangement::{Arrangement, MAX_LINES};
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::polygeom::ProjectiveLine;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldKind {
    Rational,
    Eisenstein,
}

impl FieldKind {
    fn as_str(self) -> &'static str {
        match self {
            FieldKind::Rational => "rational",
            FieldKind::Eisenstein => "eisenstein",
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses an arrangement file. `default_label` is used when the file has no
/// leading comment.
pub fn parse_arrangement(text: &str, default_label: &str) -> Result<Arrangement> {
    let mut label: Option<String> = None;
    let mut field: Option<FieldKind> = None;
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let n = idx + 1;
        let s = raw.trim();
        if s.is_empty() {
            continue;
        }
        if let Some(comment) = s.strip_prefix('#') {
            if field.is_none() && label.is_none() {
                label = Some(comment.trim().to_string());
            }
            continue;
        }
        let toks: Vec<&str> = s.split_whitespace().collect();
        match toks[0] {
            "field" => {
                if field.is_some() {
                    return Err(parse_err(n, "duplicate `field` header"));
                }
                field = Some(match toks.get(1..) {
                    Some(["rational"]) => FieldKind::Rational,
                    Some(["eisenstein"]) => FieldKind::Eisenstein,
                    _ => return Err(parse_err(n, "expected `field rational` or `field eisenstein`")),
                });
            }
            "line" => {
                let Some(kind) = field else {
                    return Err(parse_err(n, "`line` before the `field` header"));
                };
                if toks.len() != 4 {
                    return Err(parse_err(n, format!("expected 3 coefficients, got {}", toks.len() - 1)));
                }
                let mut c = Vec::with_capacity(3);
                for t in &toks[1..] {
                    let v: FieldElement =
                        t.parse().map_err(|_| parse_err(n, format!("bad coefficient `{t}`")))?;
                    if kind == FieldKind::Rational && !v.is_rational() {
                        return Err(parse_err(n, format!("`{t}` is not rational in a `field rational` file")));
                    }
                    c.push(v);
                }
                let [a, b, cc]: [FieldElement; 3] = c.try_into().expect("three coefficients");
                let l = ProjectiveLine::new(a, b, cc).map_err(|_| parse_err(n, "all coefficients are zero"))?;
                lines.push(l);
                if lines.len() > MAX_LINES {
                    return Err(parse_err(n, format!("more than {MAX_LINES} lines")));
                }
            }
            other => return Err(parse_err(n, format!("unknown directive `{other}`"))),
        }
    }
    if field.is_none() {
        return Err(parse_err(0, "missing `field` header"));
    }
    let label = label.filter(|l| !l.is_empty()).unwrap_or_else(|| default_label.to_string());
    Arrangement::new(label, lines)
}

/// Canonical text of an arrangement; `field rational` iff no coefficient uses `w`.
pub fn export_arrangement(a: &Arrangement) -> String {
    let rational = a.lines().iter().all(|l| l.coeffs().iter().all(FieldElement::is_rational));
    let kind = if rational { FieldKind::Rational } else { FieldKind::Eisenstein };
    let mut out = String::new();
    if !a.label().is_empty() {
        writeln!(out, "# {}", a.label()).unwrap();
    }
    writeln!(out, "field {}", kind.as_str()).unwrap();
    for l in a.lines() {
        let [x, y, z] = l.coeffs();
        writeln!(out, "line {x} {y} {z}").unwrap();
    }
    out
}
