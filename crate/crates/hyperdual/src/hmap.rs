//! The line-oriented `.hmap` text format.
//!
//! ```text
//! # comment
//! name: trefoil
//! vertex: a.1+ b.1+ a.2+ b.2+
//! vertex:
//! ```

use hyperdual_core::{ArrowPresentation, Occurrence, Sign};

#[derive(Debug, thiserror::Error)]
pub enum HmapError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] hyperdual_core::Error),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> HmapError {
    HmapError::Syntax { line, column, message: message.into() }
}

fn sign_lookalike(c: char) -> Option<&'static str> {
    match c {
        '\u{2212}' => Some("U+2212 MINUS SIGN"),
        '\u{2013}' => Some("U+2013 EN DASH"),
        '\u{2014}' => Some("U+2014 EM DASH"),
        '\u{2010}' => Some("U+2010 HYPHEN"),
        '\u{2011}' => Some("U+2011 NON-BREAKING HYPHEN"),
        '\u{FE63}' => Some("U+FE63 SMALL HYPHEN-MINUS"),
        '\u{FF0D}' => Some("U+FF0D FULLWIDTH HYPHEN-MINUS"),
        '\u{FF0B}' => Some("U+FF0B FULLWIDTH PLUS SIGN"),
        _ => None,
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses one `<edge>.<index><sign>` token starting at `column`.
fn parse_occurrence(token: &str, line: usize, column: usize) -> Result<Occurrence, HmapError> {
    let chars: Vec<char> = token.chars().collect();
    let last = *chars.last().expect("tokens are non-empty");
    let sign = match last {
        '+' => Sign::Plus,
        '-' => Sign::Minus,
        c => {
            let at = column + chars.len() - 1;
            return Err(match sign_lookalike(c) {
                Some(name) => syntax(line, at, format!("sign must be ASCII `+` or `-`, found {name}")),
                None => syntax(line, at, format!("expected sign `+` or `-` at end of `{token}`")),
            });
        }
    };
    if let Some((i, c)) = chars.iter().enumerate().find_map(|(i, &c)| sign_lookalike(c).map(|n| (i, n))) {
        return Err(syntax(line, column + i, format!("sign must be ASCII `+` or `-`, found {c}")));
    }
    let body = &token[..token.len() - 1];
    let Some((edge, index)) = body.rsplit_once('.') else {
        return Err(syntax(line, column, format!("expected `<edge>.<index><sign>`, found `{token}`")));
    };
    if !is_identifier(edge) {
        return Err(syntax(line, column, format!("invalid hyperedge label `{edge}`")));
    }
    let index_col = column + edge.chars().count() + 1;
    if index.is_empty() || !index.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, index_col, format!("invalid arrow index `{index}`")));
    }
    let index: usize = index
        .parse()
        .map_err(|_| syntax(line, index_col, format!("arrow index `{index}` is too large")))?;
    if index == 0 {
        return Err(syntax(line, index_col, "arrow indices start at 1"));
    }
    Ok(Occurrence::new(edge, index, sign))
}

pub fn parse(text: &str) -> Result<ArrowPresentation, HmapError> {
    let mut name = None;
    let mut curves = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim_end().is_empty() {
            continue;
        }
        let offset = content.len() - trimmed.len();
        let col_of = |byte: usize| content[..byte].chars().count() + 1;
        let Some((key, rest)) = trimmed.split_once(':') else {
            return Err(syntax(line, col_of(offset), "expected `name:` or `vertex:`"));
        };
        let rest_start = offset + key.len() + 1;
        match key.trim_end() {
            "name" => {
                if name.is_some() {
                    return Err(syntax(line, col_of(offset), "duplicate `name:` line"));
                }
                let value = rest.trim();
                if !is_identifier(value) {
                    return Err(syntax(line, col_of(rest_start), format!("invalid name `{value}`")));
                }
                name = Some(value.to_string());
            }
            "vertex" => {
                let mut curve = Vec::new();
                let mut pos = rest_start;
                for piece in rest.split(|c: char| c.is_whitespace()) {
                    if !piece.is_empty() {
                        curve.push(parse_occurrence(piece, line, col_of(pos))?);
                    }
                    pos += piece.len() + 1;
                }
                curves.push(curve);
            }
            other => {
                return Err(syntax(line, col_of(offset), format!("unknown key `{other}`")));
            }
        }
    }
    Ok(ArrowPresentation::new(name, curves)?)
}

/// Canonically ordered text: curves sorted by their least occurrence, each
/// rotated to start there, isolated vertices last.
pub fn serialize(ap: &ArrowPresentation) -> String {
    let ap = ap.normalized();
    let mut out = String::new();
    if let Some(name) = ap.name() {
        out.push_str(&format!("name: {name}\n"));
    }
    for curve in ap.curves() {
        out.push_str("vertex:");
        for occ in curve {
            out.push_str(&format!(" {occ}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column_of(text: &str) -> (usize, usize) {
        match parse(text) {
            Err(HmapError::Syntax { line, column, .. }) => (line, column),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn parses_comments_names_and_isolated_vertices() {
        let ap = parse("# two loops\nname: pair\n\nvertex: a.1+ a.2-  # twisted\nvertex:\n").unwrap();
        assert_eq!(ap.name(), Some("pair"));
        assert_eq!(ap.curves().len(), 2);
        assert!(ap.curves()[1].is_empty());
        assert_eq!(ap.curves()[0][1], Occurrence::new("a", 2, Sign::Minus));
    }

    #[test]
    fn unicode_minus_is_pointed_out() {
        let err = parse("vertex: a.1+ a.2\u{2212}").unwrap_err().to_string();
        assert!(err.contains("U+2212"), "{err}");
        assert!(err.starts_with("line 1, column 17"), "{err}");
    }

    #[test]
    fn positions() {
        assert_eq!(column_of("vertex: a.1+\nvertex: b1+"), (2, 9));
        assert_eq!(column_of("  edge: a.1+"), (1, 3));
        assert_eq!(column_of("vertex: a.x+"), (1, 11));
        assert_eq!(column_of("vertex: 1a.1+"), (1, 9));
        assert_eq!(column_of("vertex: a.0+"), (1, 11));
    }

    #[test]
    fn structural_errors_come_from_validation() {
        assert!(matches!(parse("vertex: a.1+ a.1-"), Err(HmapError::Invalid(_))));
        assert!(matches!(parse("vertex: a.1+ a.3+"), Err(HmapError::Invalid(_))));
    }

    #[test]
    fn serialization_is_canonically_ordered() {
        let ap = parse("vertex:\nvertex: b.2+ c.1- b.1+\nvertex: a.1+\n").unwrap();
        assert_eq!(serialize(&ap), "vertex: a.1+\nvertex: b.1+ b.2+ c.1-\nvertex:\n");
        assert_eq!(serialize(&parse(&serialize(&ap)).unwrap()), serialize(&ap));
    }
}
