//! Reader for the PD text format.
//!
//! Records are separated by `;` or newlines, `#` starts a comment.
//! `X a b c d`, `Xp ...`, `Xm ...` crossings, `B e1 e2 [e3 e4]` boundary,
//! `O k` crossing-free circle.

use crate::diagram::{ArcLabel, Crossing, Diagram, Sign};
use crate::error::DiagramError;

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn records(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for piece in line.split(';') {
            let mut toks = Vec::new();
            let mut i = 0;
            while i < piece.len() {
                let rest = &piece[i..];
                i += rest.len() - rest.trim_start().len();
                if i >= piece.len() {
                    break;
                }
                let end = piece[i..]
                    .find(char::is_whitespace)
                    .map_or(piece.len(), |e| i + e);
                toks.push(Token {
                    text: &piece[i..end],
                    line: li + 1,
                    column: offset + i + 1,
                });
                i = end;
            }
            if !toks.is_empty() {
                out.push(toks);
            }
            offset += piece.len() + 1;
        }
    }
    out
}

fn label(t: &Token<'_>) -> Result<ArcLabel, DiagramError> {
    match t.text.parse::<u32>() {
        Ok(v) if v > 0 => Ok(ArcLabel(v)),
        _ => Err(syntax(
            t.line,
            t.column,
            format!("expected a positive arc label, found `{}`", t.text),
        )),
    }
}

pub fn parse(text: &str) -> Result<Diagram, DiagramError> {
    let mut crossings = Vec::new();
    let mut boundary: Option<Vec<ArcLabel>> = None;
    let mut circles = Vec::new();
    for rec in records(text) {
        let head = &rec[0];
        let args = &rec[1..];
        let end_col = |r: &[Token<'_>]| {
            let last = r.last().unwrap();
            (last.line, last.column + last.text.len())
        };
        match head.text {
            "X" | "Xp" | "Xm" => {
                if args.len() != 4 {
                    let (l, c) = end_col(&rec);
                    return Err(syntax(
                        l,
                        c,
                        format!("crossing needs 4 slots, found {}", args.len()),
                    ));
                }
                let slots = [
                    label(&args[0])?,
                    label(&args[1])?,
                    label(&args[2])?,
                    label(&args[3])?,
                ];
                let sign = match head.text {
                    "Xp" => Some(Sign::Positive),
                    "Xm" => Some(Sign::Negative),
                    _ => None,
                };
                crossings.push(Crossing { slots, sign });
            }
            "B" => {
                if boundary.is_some() {
                    return Err(syntax(head.line, head.column, "duplicate boundary record"));
                }
                if args.len() != 2 && args.len() != 4 {
                    let (l, c) = end_col(&rec);
                    return Err(syntax(
                        l,
                        c,
                        format!("boundary needs 2 or 4 endpoints, found {}", args.len()),
                    ));
                }
                boundary = Some(args.iter().map(label).collect::<Result<_, _>>()?);
            }
            "O" => {
                if args.len() != 1 {
                    let (l, c) = end_col(&rec);
                    return Err(syntax(l, c, "circle record takes exactly one label"));
                }
                circles.push(label(&args[0])?);
            }
            other => {
                return Err(syntax(
                    head.line,
                    head.column,
                    format!("unknown record `{other}`"),
                ));
            }
        }
    }
    Diagram::new(crossings, boundary.unwrap_or_default(), circles)
}
