//! Parser for the element expressions accepted on the command line.
//!
//! An expression is either a positive word or a left fraction:
//!
//! ```text
//! WORD     := token ( ("." | whitespace) token )*
//! token    := atom name | "1" | "Delta" | "Delta_P[" atom ("," atom)* "]"
//! FRACTION := "inv(" WORD ")" ( "." WORD )?
//! ```
//!
//! Words are separated by dots or whitespace, matching the normal-form
//! printer, so every string the front end emits parses back to an equal
//! value. `Delta_P[...]` denotes the Garside element of the standard
//! parabolic submonoid generated by the listed atoms (their closure).

use garside::parabolic::{self, StandardParabolic};
use garside::{AtomId, GroupFraction, Monoid, MonoidElement};

/// A parsed expression: a monoid element or a group fraction.
#[derive(Clone, Debug)]
pub enum Expr {
    Element(MonoidElement),
    Fraction(GroupFraction),
}

/// Parse failure, carrying a byte offset into the source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub code: &'static str,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, code: &'static str, message: impl Into<String>) -> ParseError {
        ParseError {
            position,
            code,
            message: message.into(),
        }
    }
}

/// Parses a full expression, fraction syntax included.
pub fn parse_expr(m: &Monoid, text: &str) -> Result<Expr, ParseError> {
    let start = text.len() - text.trim_start().len();
    let body = text.trim();
    if let Some(rest) = body.strip_prefix("inv(") {
        let den_start = start + 4;
        let close = rest.find(')').ok_or_else(|| {
            ParseError::new(start + body.len(), "parse_error", "missing `)` after `inv(`")
        })?;
        let den = parse_word_at(m, &rest[..close], den_start)?;
        let tail = &rest[close + 1..];
        let tail_start = den_start + close + 1;
        let num = if tail.is_empty() {
            m.unit()
        } else if let Some(word) = tail.strip_prefix('.') {
            parse_word_at(m, word, tail_start + 1)?
        } else {
            return Err(ParseError::new(
                tail_start,
                "parse_error",
                format!("expected `.` or end of input after `inv(...)`, found `{tail}`"),
            ));
        };
        return Ok(Expr::Fraction(GroupFraction::reduce(m, &den, &num)));
    }
    Ok(Expr::Element(parse_word_at(m, body, start)?))
}

/// Parses `[s1,s2]` into the standard parabolic submonoid generated by the
/// listed atoms.
pub fn parse_parabolic(m: &Monoid, text: &str) -> Result<StandardParabolic, ParseError> {
    let start = text.len() - text.trim_start().len();
    parse_parabolic_at(m, text.trim(), start)
}

/// Resolves a single atom name.
pub fn parse_atom(m: &Monoid, text: &str) -> Result<AtomId, ParseError> {
    let name = text.trim();
    m.atom_id(name).ok_or_else(|| {
        ParseError::new(0, "unknown_atom", format!("unknown atom `{name}`"))
    })
}

fn parse_word_at(m: &Monoid, text: &str, base: usize) -> Result<MonoidElement, ParseError> {
    let mut acc = m.unit();
    for (token, pos) in tokens(text) {
        let factor = token_element(m, token, base + pos)?;
        acc = m.multiply(&acc, &factor);
    }
    Ok(acc)
}

/// Splits on dots and whitespace outside brackets, keeping byte offsets.
fn tokens(text: &str) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        if depth == 0 && (c == '.' || c.is_whitespace()) {
            if let Some(s) = start.take() {
                out.push((&text[s..i], s));
            }
            continue;
        }
        start.get_or_insert(i);
        match c {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((&text[s..], s));
    }
    out
}

fn token_element(m: &Monoid, token: &str, pos: usize) -> Result<MonoidElement, ParseError> {
    if token == "1" {
        return Ok(m.unit());
    }
    if token == "Delta" {
        return Ok(m.delta());
    }
    if let Some(set) = token.strip_prefix("Delta_P") {
        let p = parse_parabolic_at(m, set, pos + "Delta_P".len())?;
        return Ok(p.delta_elt(m));
    }
    if token.starts_with("inv(") {
        return Err(ParseError::new(
            pos,
            "parse_error",
            "`inv(...)` may only appear at the start of an expression",
        ));
    }
    match m.atom_id(token) {
        Some(a) => Ok(m.atom_elt(a)),
        None => Err(ParseError::new(
            pos,
            "unknown_atom",
            format!("unknown atom `{token}`"),
        )),
    }
}

fn parse_parabolic_at(
    m: &Monoid,
    text: &str,
    base: usize,
) -> Result<StandardParabolic, ParseError> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| {
            ParseError::new(
                base,
                "parse_error",
                format!("expected `[atom,...]`, found `{text}`"),
            )
        })?;
    let mut atoms = Vec::new();
    let mut offset = base + 1;
    for part in inner.split(',') {
        let name = part.trim();
        if !name.is_empty() {
            let at = offset + (part.len() - part.trim_start().len());
            match m.atom_id(name) {
                Some(a) => atoms.push(a),
                None => {
                    return Err(ParseError::new(
                        at,
                        "unknown_atom",
                        format!("unknown atom `{name}`"),
                    ))
                }
            }
        }
        offset += part.len() + 1;
    }
    Ok(parabolic::parabolic_closure(m, &atoms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use garside::presentations::artin_for_type;
    use garside::coxeter::CoxeterType;

    fn a3() -> Monoid {
        artin_for_type(&CoxeterType::A(3)).unwrap()
    }

    fn parse_word(m: &Monoid, text: &str) -> Result<MonoidElement, ParseError> {
        parse_word_at(m, text, 0)
    }

    #[test]
    fn words_parse_through_dots_and_whitespace() {
        let m = a3();
        let a = parse_word(&m, "s1.s2 s1").unwrap();
        let b = parse_word(&m, "s1 . s2 . s1").unwrap();
        assert_eq!(a, b);
        assert_eq!(m.atom_len(&a), 3);
    }

    #[test]
    fn keywords_expand_to_garside_elements() {
        let m = a3();
        let delta = parse_word(&m, "Delta").unwrap();
        assert_eq!(delta, m.delta());
        let dp = parse_word(&m, "Delta_P[s1,s2]").unwrap();
        let p = parse_parabolic(&m, "[s1, s2]").unwrap();
        assert_eq!(dp, p.delta_elt(&m));
        let mixed = parse_word(&m, "s3.Delta_P[s1,s2].1").unwrap();
        assert_eq!(mixed, m.multiply(&m.atom_elt(AtomId(2)), &dp));
    }

    #[test]
    fn fractions_reduce_on_parse() {
        let m = a3();
        match parse_expr(&m, "inv(s1.s2).s1.s3").unwrap() {
            Expr::Fraction(x) => {
                let den = parse_word(&m, "s1.s2").unwrap();
                let num = parse_word(&m, "s1.s3").unwrap();
                assert_eq!(x, GroupFraction::reduce(&m, &den, &num));
            }
            Expr::Element(_) => panic!("expected a fraction"),
        }
        match parse_expr(&m, "inv(s1).s1.s2").unwrap() {
            Expr::Fraction(x) => assert!(x.is_positive()),
            Expr::Element(_) => panic!("expected a fraction"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let m = a3();
        let err = parse_word(&m, "s1.s9").unwrap_err();
        assert_eq!(err.code, "unknown_atom");
        assert_eq!(err.position, 3);
        let err = parse_expr(&m, "inv(s1").unwrap_err();
        assert_eq!(err.code, "parse_error");
        let err = parse_expr(&m, "s1.inv(s2)").unwrap_err();
        assert_eq!(err.code, "parse_error");
        assert_eq!(err.position, 3);
    }

    #[test]
    fn empty_input_is_the_unit() {
        let m = a3();
        assert!(parse_word(&m, "").unwrap().is_unit());
        assert!(parse_word(&m, "  ").unwrap().is_unit());
        assert!(parse_word(&m, "1.1").unwrap().is_unit());
    }
}
