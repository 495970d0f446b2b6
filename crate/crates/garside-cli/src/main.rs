//! Command-line front end for the `garside` kernel.
//!
//! One invocation builds one monoid (`--spec`) and runs one command against
//! it, printing the result to standard output as JSON (default) or plain
//! text. Exit codes: 0 on success, 1 on bad input or a domain error, 2 when
//! a verification command finds a failure.

mod expr;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use garside::fractions::{conjugate_parabolics, minimal_standardizer};
use garside::oracle::{conjecture_scan, lemma_suite, oracle_agreement, AgreementBounds};
use garside::parabolic::head_p;
use garside::presentations::{
    build_named, check_factors_left_divide, check_lcm_parabolic_compatibility, check_square_free,
};
use garside::ribbon::{is_ribbon, ribbon_category_graph, ribbon_prefix, v_s_p};
use garside::{AtomId, Error, GroupFraction, Monoid, MonoidElement, ParabolicSubgroup};

use expr::{Expr, ParseError};
use render::Format;

#[derive(Parser)]
#[command(
    name = "garside",
    version,
    about = "Computations in finite-type Garside monoids and their groups",
    after_help = "Element expressions are words in the atoms joined by `.` \
                  (for example s1.s2.s1), the keywords `1` and `Delta`, \
                  `Delta_P[s1,s2]` for a parabolic Garside element, and the \
                  fraction form inv(WORD).WORD. Parabolic submonoids are \
                  written as bracketed atom lists such as [s1,s3]."
)]
struct Cli {
    /// Monoid to operate on: a JSON spec file path, inline JSON, a Coxeter
    /// type such as A3, B2 or I2(5), or dualA4 for a dual braid monoid
    #[arg(long, global = true, value_name = "SPEC")]
    spec: Option<String>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Command {
    /// Build the monoid and print a structural summary
    Build,
    /// Normal form of an expression, element or fraction
    Nf { expr: String },
    /// Greatest common divisor of two words (left divisors by default)
    Gcd {
        e1: String,
        e2: String,
        #[arg(long, value_enum, default_value_t = Side::Left)]
        side: Side,
    },
    /// Least common multiple of two words (right multiples by default)
    Lcm {
        e1: String,
        e2: String,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
    },
    /// Split a word into its maximal prefix inside a parabolic and the rest
    Head {
        #[arg(long, value_name = "P")]
        parabolic: String,
        expr: String,
    },
    /// Elementary ribbon v(s, P) extending Delta_P to Delta of P plus s
    Vsp { parabolic: String, atom: String },
    /// Certify a word as a ribbon for a parabolic
    Ribbon { parabolic: String, expr: String },
    /// Maximal ribbon prefix of a reduced word, with remainder and target
    Rp { parabolic: String, expr: String },
    /// Minimal positive element standardizing the conjugate of a parabolic
    /// subgroup
    Standardize { parabolic: String, expr: String },
    /// Invariant z of the conjugated parabolic subgroup
    Zk { parabolic: String, expr: String },
    /// Search for a ribbon carrying one parabolic onto another
    Conj { p: String, q: String },
    /// Export the part of the ribbon category reachable from a parabolic
    Graph {
        parabolic: String,
        /// Keep only edges labelled by single atoms where possible
        #[arg(long)]
        atoms_only: bool,
        /// Write the DOT text to a file instead of standard output
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run the structure checks followed by the oracle agreement run and
    /// the lemma suite; exits 2 when any check fails
    Verify {
        /// Garside-length cap for enumerated inputs
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Scan for counterexamples to the smallest-parabolic conjugacy
    /// conjecture; found witnesses are reported, not suppressed
    ConjectureScan {
        /// Garside-length cap for enumerated inputs
        #[arg(long, default_value_t = 2)]
        bound: usize,
        /// Also write the full report to a file
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

enum Outcome {
    Success,
    VerificationFailed,
}

enum CliError {
    Parse(ParseError),
    Domain(Error),
    Io(String),
    Usage(String),
}

impl CliError {
    fn code(&self) -> &str {
        match self {
            CliError::Parse(e) => e.code,
            CliError::Domain(e) => e.code(),
            CliError::Io(_) => "io_error",
            CliError::Usage(_) => "usage_error",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Parse(e) => e.message.clone(),
            CliError::Domain(e) => e.to_string(),
            CliError::Io(s) | CliError::Usage(s) => s.clone(),
        }
    }

    fn position(&self) -> Option<usize> {
        match self {
            CliError::Parse(e) => Some(e.position),
            _ => None,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> CliError {
        CliError::Parse(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(2),
        Err(e) => {
            render::emit_error(format, e.code(), &e.message(), e.position());
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let m = load_monoid(cli.spec.as_deref())?;
    let f = cli.format;
    match cli.command {
        Command::Build => cmd_build(f, &m),
        Command::Nf { expr } => cmd_nf(f, &m, &expr),
        Command::Gcd { e1, e2, side } => cmd_gcd(f, &m, &e1, &e2, side),
        Command::Lcm { e1, e2, side } => cmd_lcm(f, &m, &e1, &e2, side),
        Command::Head { parabolic, expr } => cmd_head(f, &m, &parabolic, &expr),
        Command::Vsp { parabolic, atom } => cmd_vsp(f, &m, &parabolic, &atom),
        Command::Ribbon { parabolic, expr } => cmd_ribbon(f, &m, &parabolic, &expr),
        Command::Rp { parabolic, expr } => cmd_rp(f, &m, &parabolic, &expr),
        Command::Standardize { parabolic, expr } => cmd_standardize(f, &m, &parabolic, &expr),
        Command::Zk { parabolic, expr } => cmd_zk(f, &m, &parabolic, &expr),
        Command::Conj { p, q } => cmd_conj(f, &m, &p, &q),
        Command::Graph { parabolic, atoms_only, out } => {
            cmd_graph(f, &m, &parabolic, atoms_only, out.as_deref())
        }
        Command::Verify { bound } => cmd_verify(f, &m, bound),
        Command::ConjectureScan { bound, out } => {
            cmd_conjecture_scan(f, &m, bound, out.as_deref())
        }
    }
}

fn load_monoid(spec: Option<&str>) -> Result<Monoid, CliError> {
    let text = spec.ok_or_else(|| {
        CliError::Usage(
            "pass --spec with a file path, inline JSON, or a name such as A3 or dualA4".into(),
        )
    })?;
    let source = if Path::new(text).is_file() {
        fs::read_to_string(text).map_err(|e| CliError::Io(format!("reading {text}: {e}")))?
    } else {
        text.to_string()
    };
    Ok(build_named(source.trim())?)
}

fn parse_element(m: &Monoid, text: &str) -> Result<MonoidElement, CliError> {
    match expr::parse_expr(m, text)? {
        Expr::Element(g) => Ok(g),
        Expr::Fraction(_) => Err(ParseError::new(
            0,
            "parse_error",
            "this command needs a word in the monoid, not a fraction",
        )
        .into()),
    }
}

fn parse_group(m: &Monoid, text: &str) -> Result<GroupFraction, CliError> {
    match expr::parse_expr(m, text)? {
        Expr::Element(g) => Ok(GroupFraction::from_monoid(&g)),
        Expr::Fraction(x) => Ok(x),
    }
}

/// Replaces a fraction by a positive element reaching the same conjugate of
/// every standard parabolic subgroup, by multiplying with central powers of
/// Delta until the product lands in the monoid.
fn positive_representative(m: &Monoid, x: &GroupFraction) -> MonoidElement {
    if let Some(g) = x.as_monoid() {
        return g.clone();
    }
    let step = m.lattice().delta_conj_order() as usize;
    let mut k = step;
    loop {
        let shifted =
            GroupFraction::multiply(m, x, &GroupFraction::from_monoid(&m.delta_pow(k)));
        if let Some(g) = shifted.as_monoid() {
            return g.clone();
        }
        k += step;
    }
}

fn cmd_build(f: Format, m: &Monoid) -> Result<Outcome, CliError> {
    let report = m.validate();
    let atoms: Vec<&str> = (0..m.n_atoms())
        .map(|i| m.atom_name(AtomId(i as u32)))
        .collect();
    let value = json!({
        "name": m.name(),
        "atoms": atoms,
        "simples": m.n_simples(),
        "delta": render::element_json(m, &m.delta()),
        "validation": serde_json::to_value(&report).expect("validation reports serialize"),
    });
    let text = format!(
        "name: {}\natoms: {}\nsimples: {}\ndelta: {}\nvalidation: {}",
        m.name(),
        atoms.join(" "),
        m.n_simples(),
        m.format_element(&m.delta()),
        if report.ok {
            "ok".to_string()
        } else {
            let broken = report.first_failure().expect("failed report has a failure");
            format!("failed at {}", broken.name)
        },
    );
    render::emit(f, &value, &text);
    if report.ok {
        Ok(Outcome::Success)
    } else {
        Ok(Outcome::VerificationFailed)
    }
}

fn cmd_nf(f: Format, m: &Monoid, text: &str) -> Result<Outcome, CliError> {
    match expr::parse_expr(m, text)? {
        Expr::Element(g) => {
            render::emit(f, &render::element_json(m, &g), &m.format_element(&g));
        }
        Expr::Fraction(x) => {
            render::emit(f, &render::fraction_json(m, &x), &x.format(m));
        }
    }
    Ok(Outcome::Success)
}

fn cmd_gcd(f: Format, m: &Monoid, e1: &str, e2: &str, side: Side) -> Result<Outcome, CliError> {
    let a = parse_element(m, e1)?;
    let b = parse_element(m, e2)?;
    let result = match side {
        Side::Left => m.left_gcd(&a, &b),
        Side::Right => m.right_gcd(&a, &b),
    };
    emit_sided(f, m, side, &result);
    Ok(Outcome::Success)
}

fn cmd_lcm(f: Format, m: &Monoid, e1: &str, e2: &str, side: Side) -> Result<Outcome, CliError> {
    let a = parse_element(m, e1)?;
    let b = parse_element(m, e2)?;
    let result = match side {
        Side::Left => m.left_lcm(&a, &b),
        Side::Right => m.right_lcm(&a, &b),
    };
    emit_sided(f, m, side, &result);
    Ok(Outcome::Success)
}

fn emit_sided(f: Format, m: &Monoid, side: Side, result: &MonoidElement) {
    let side_name = match side {
        Side::Left => "left",
        Side::Right => "right",
    };
    let value = json!({
        "side": side_name,
        "result": render::element_json(m, result),
    });
    render::emit(f, &value, &m.format_element(result));
}

fn cmd_head(f: Format, m: &Monoid, ptext: &str, etext: &str) -> Result<Outcome, CliError> {
    let p = expr::parse_parabolic(m, ptext)?;
    let g = parse_element(m, etext)?;
    let head = head_p(m, &p, &g);
    let tail = m
        .left_divide_exact(&head, &g)
        .expect("the parabolic head divides the element");
    let value = json!({
        "parabolic": render::parabolic_json(m, &p),
        "head": render::element_json(m, &head),
        "tail": render::element_json(m, &tail),
    });
    let text = format!(
        "head: {}\ntail: {}",
        m.format_element(&head),
        m.format_element(&tail),
    );
    render::emit(f, &value, &text);
    Ok(Outcome::Success)
}

fn cmd_vsp(f: Format, m: &Monoid, ptext: &str, atom: &str) -> Result<Outcome, CliError> {
    let p = expr::parse_parabolic(m, ptext)?;
    let s = expr::parse_atom(m, atom)?;
    let v = v_s_p(m, &p, s)?;
    let value = json!({
        "parabolic": render::parabolic_json(m, &p),
        "atom": m.atom_name(s),
        "ribbon": render::element_json(m, &v),
    });
    render::emit(f, &value, &m.format_element(&v));
    Ok(Outcome::Success)
}

fn cmd_ribbon(f: Format, m: &Monoid, ptext: &str, etext: &str) -> Result<Outcome, CliError> {
    let p = expr::parse_parabolic(m, ptext)?;
    let g = parse_element(m, etext)?;
    match is_ribbon(m, &p, &g) {
        Ok(rb) => {
            let map: serde_json::Map<String, serde_json::Value> = rb
                .atom_map()
                .iter()
                .map(|(&a, &b)| (m.atom_name(a).to_string(), json!(m.atom_name(b))))
                .collect();
            let value = json!({
                "is_ribbon": true,
                "source": render::parabolic_json(m, &p),
                "target": render::parabolic_json(m, rb.target()),
                "atom_map": map,
            });
            let mut text = format!("ribbon: yes\ntarget: {}", rb.target().label(m));
            for (&a, &b) in rb.atom_map() {
                text.push_str(&format!("\n{} -> {}", m.atom_name(a), m.atom_name(b)));
            }
            render::emit(f, &value, &text);
        }
        Err(e @ Error::Ribbon(_)) => {
            let value = json!({
                "is_ribbon": false,
                "code": e.code(),
                "reason": e.to_string(),
            });
            render::emit(f, &value, &format!("ribbon: no ({e})"));
        }
        Err(other) => return Err(other.into()),
    }
    Ok(Outcome::Success)
}

fn cmd_rp(f: Format, m: &Monoid, ptext: &str, etext: &str) -> Result<Outcome, CliError> {
    let p = expr::parse_parabolic(m, ptext)?;
    let g = parse_element(m, etext)?;
    let (prefix, remainder, target) = ribbon_prefix(m, &p, &g)?;
    let value = json!({
        "prefix": render::element_json(m, &prefix),
        "remainder": render::element_json(m, &remainder),
        "target": render::parabolic_json(m, &target),
    });
    let text = format!(
        "prefix: {}\nremainder: {}\ntarget: {}",
        m.format_element(&prefix),
        m.format_element(&remainder),
        target.label(m),
    );
    render::emit(f, &value, &text);
    Ok(Outcome::Success)
}

fn cmd_standardize(f: Format, m: &Monoid, ptext: &str, etext: &str) -> Result<Outcome, CliError> {
    let p = expr::parse_parabolic(m, ptext)?;
    let x = parse_group(m, etext)?;
    let subgroup = ParabolicSubgroup::new(m, p.clone(), x.clone());
    let b = positive_representative(m, &x);
    let (standardizer, target) = minimal_standardizer(m, &p, &b);
    let value = json!({
        "standardizer": render::element_json(m, &standardizer),
        "target": render::parabolic_json(m, &target),
        "z": render::fraction_json(m, subgroup.z()),
        "already_standard": subgroup.is_standard(),
    });
    let text = format!(
        "standardizer: {}\ntarget: {}\nalready_standard: {}",
        m.format_element(&standardizer),
        target.label(m),
        subgroup.is_standard(),
    );
    render::emit(f, &value, &text);
    Ok(Outcome::Success)
}

fn cmd_zk(f: Format, m: &Monoid, ptext: &str, etext: &str) -> Result<Outcome, CliError> {
    let p = expr::parse_parabolic(m, ptext)?;
    let x = parse_group(m, etext)?;
    let subgroup = ParabolicSubgroup::new(m, p.clone(), x);
    let value = json!({
        "parabolic": render::parabolic_json(m, &p),
        "central_exponent": p.central_exponent(),
        "z": render::fraction_json(m, subgroup.z()),
        "is_standard": subgroup.is_standard(),
    });
    let text = format!(
        "z: {}\ncentral_exponent: {}\nstandard: {}",
        subgroup.z().format(m),
        p.central_exponent(),
        subgroup.is_standard(),
    );
    render::emit(f, &value, &text);
    Ok(Outcome::Success)
}

fn cmd_conj(f: Format, m: &Monoid, ptext: &str, qtext: &str) -> Result<Outcome, CliError> {
    let p = expr::parse_parabolic(m, ptext)?;
    let q = expr::parse_parabolic(m, qtext)?;
    match conjugate_parabolics(m, &p, &q) {
        Ok(rb) => {
            let value = json!({
                "conjugate": true,
                "ribbon": render::element_json(m, rb.word()),
                "target": render::parabolic_json(m, rb.target()),
            });
            let text = format!("conjugate: yes\nribbon: {}", m.format_element(rb.word()));
            render::emit(f, &value, &text);
        }
        Err(Error::NotConjugate) => {
            render::emit(f, &json!({ "conjugate": false }), "conjugate: no");
        }
        Err(other) => return Err(other.into()),
    }
    Ok(Outcome::Success)
}

fn cmd_graph(
    f: Format,
    m: &Monoid,
    ptext: &str,
    atoms_only: bool,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let p = expr::parse_parabolic(m, ptext)?;
    let graph = ribbon_category_graph(m, &p, atoms_only)?;
    let dot = graph.to_dot(m);
    match out {
        Some(path) => {
            fs::write(path, &dot)
                .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
            let value = json!({
                "out": path.display().to_string(),
                "vertices": graph.vertices.len(),
                "edges": graph.edges.len(),
            });
            let text = format!(
                "wrote {} ({} vertices, {} edges)",
                path.display(),
                graph.vertices.len(),
                graph.edges.len(),
            );
            render::emit(f, &value, &text);
        }
        None => {
            let value = json!({
                "vertices": graph.vertices.len(),
                "edges": graph.edges.len(),
                "dot": dot,
            });
            match f {
                Format::Json => render::emit(f, &value, ""),
                Format::Text => print!("{dot}"),
            }
        }
    }
    Ok(Outcome::Success)
}

fn cmd_verify(f: Format, m: &Monoid, bound: usize) -> Result<Outcome, CliError> {
    let mut reports = vec![check_lcm_parabolic_compatibility(m)];
    if m.name().starts_with("dual") {
        reports.push(check_square_free(m));
        reports.push(check_factors_left_divide(m));
    }
    let mut agreement = AgreementBounds::for_instance(m);
    agreement.gcd_len = agreement.gcd_len.min(bound);
    agreement.lcm_len = agreement.lcm_len.min(bound);
    agreement.head_len = agreement.head_len.min(bound);
    agreement.prefix_len = agreement.prefix_len.min(bound);
    agreement.smallest_len = agreement.smallest_len.min(bound);
    reports.extend(oracle_agreement(m, &agreement));
    reports.extend(lemma_suite(m, bound));
    let ok = reports.iter().all(|r| r.ok);
    let value = json!({
        "instance": m.name(),
        "bound": bound,
        "ok": ok,
        "reports": reports.iter().map(render::report_json).collect::<Vec<_>>(),
    });
    let mut text = reports
        .iter()
        .map(render::report_text)
        .collect::<Vec<_>>()
        .join("\n");
    let passed = reports.iter().filter(|r| r.ok).count();
    text.push_str(&format!("\nverify: {passed}/{} checks passed", reports.len()));
    render::emit(f, &value, &text);
    if ok {
        Ok(Outcome::Success)
    } else {
        Ok(Outcome::VerificationFailed)
    }
}

fn cmd_conjecture_scan(
    f: Format,
    m: &Monoid,
    bound: usize,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let report = conjecture_scan(m, bound);
    let value = render::report_json(&report);
    if let Some(path) = out {
        let mut body = render::to_pretty(&value);
        body.push('\n');
        fs::write(path, body)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
    }
    let counterexamples = report.failures.len();
    let text = format!(
        "{}: {} cases, {} counterexamples{}",
        report.check,
        report.cases,
        counterexamples,
        match out {
            Some(path) => format!(", report written to {}", path.display()),
            None => String::new(),
        },
    );
    render::emit(f, &value, &text);
    Ok(Outcome::Success)
}
