//! Output rendering: canonical JSON values and the plain-text forms behind
//! `--format text`. All output is deterministic for a given monoid and
//! input, so results can be pinned byte for byte.

use clap::ValueEnum;
use garside::parabolic::StandardParabolic;
use garside::{CheckReport, GroupFraction, Monoid, MonoidElement};
use serde_json::{json, Value};

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Prints one command result to standard output.
pub fn emit(format: Format, value: &Value, text: &str) {
    match format {
        Format::Json => println!("{}", to_pretty(value)),
        Format::Text => println!("{text}"),
    }
}

/// Prints one error to standard error.
pub fn emit_error(format: Format, code: &str, message: &str, position: Option<usize>) {
    match format {
        Format::Json => {
            let mut err = serde_json::Map::new();
            err.insert("code".into(), json!(code));
            err.insert("message".into(), json!(message));
            if let Some(p) = position {
                err.insert("position".into(), json!(p));
            }
            eprintln!("{}", to_pretty(&json!({ "error": err })));
        }
        Format::Text => match position {
            Some(p) => eprintln!("error[{code}] at byte {p}: {message}"),
            None => eprintln!("error[{code}]: {message}"),
        },
    }
}

pub fn to_pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialize")
}

/// An element with its normal form, both as one parseable word and factor
/// by factor.
pub fn element_json(m: &Monoid, g: &MonoidElement) -> Value {
    json!({
        "word": m.format_element(g),
        "factors": g.factors().iter().map(|&s| m.format_simple(s)).collect::<Vec<_>>(),
        "garside_length": g.garside_len(),
        "atom_length": m.atom_len(g),
    })
}

/// A reduced left fraction. The convention marker fixes which component is
/// inverted: the value denotes `den`⁻¹ `num`.
pub fn fraction_json(m: &Monoid, x: &GroupFraction) -> Value {
    json!({
        "den": m.format_element(x.den()),
        "num": m.format_element(x.num()),
        "convention": "p^-1 q",
    })
}

pub fn parabolic_json(m: &Monoid, p: &StandardParabolic) -> Value {
    json!({
        "atoms": p.atom_ids().iter().map(|&a| m.atom_name(a)).collect::<Vec<_>>(),
        "delta": m.format_simple(p.delta()),
        "central_exponent": p.central_exponent(),
    })
}

pub fn report_json(r: &CheckReport) -> Value {
    serde_json::to_value(r).expect("check reports serialize")
}

pub fn report_text(r: &CheckReport) -> String {
    let mut line = format!(
        "{} {} cases={}{}",
        if r.ok { "ok  " } else { "FAIL" },
        r.check,
        r.cases,
        if r.exhaustive { " exhaustive" } else { "" },
    );
    for failure in &r.failures {
        line.push_str("\n    ");
        line.push_str(failure);
    }
    line
}
