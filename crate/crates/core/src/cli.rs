//! The `verma` command line: `singular`, `solve`, `verify` and `linkage`.
//!
//! Exit codes: 0 success, 1 verification false, 2 bad input or violated
//! constraint, 3 unparsable vector file, 4 not a weight vector.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::format::{json_lines, pbw_from_json, pbw_to_text, render_pbw, render_series, series_to_text, Format};
use crate::pbw::{common_weight, raise_residuals, diff_residuals, PBWVector};
use crate::rootdata::{linkage_orbit, strongly_linked_chain, Root, SimpleWord, Weight};
use crate::scalar::{parse_rational, Affine};
use crate::singvec::{constrained_symbolic_weight, singular_vector, Normalization};
use crate::weylaction::{s_alpha_closed_form, sigma_of_one};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_NOT_WEIGHT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "verma", version, about = "Singular vectors in Verma modules of sl(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the singular vector attached to a positive root.
    Singular(SingularArgs),
    /// Expand σ(1) for a word, or s_α(1) from its closed form.
    Solve(SolveArgs),
    /// Check whether a PBW vector read from JSON is singular.
    Verify(VerifyArgs),
    /// Find strong-linkage chains below a weight.
    Linkage(LinkageArgs),
}

#[derive(Args, Debug)]
struct WeightArgs {
    /// Rank parameter: the algebra is sl(n).
    #[arg(long)]
    n: usize,
    /// `symbolic`, or comma-separated rationals λ_i = (λ+ρ)(H_i).
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Read numeric coordinates as λ(H_i) instead of (λ+ρ)(H_i).
    #[arg(long)]
    unshifted: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Latex,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Latex => Format::Latex,
            OutputFormat::Text => Format::Text,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Mode {
    #[default]
    Raw,
    MonicLeading,
}

#[derive(Args, Debug)]
struct SingularArgs {
    #[command(flatten)]
    weight: WeightArgs,
    /// The root e_k - e_l as `k,l`.
    #[arg(long)]
    root: String,
    #[arg(long)]
    m: u32,
    #[arg(long, value_enum, default_value_t = Mode::Raw)]
    mode: Mode,
    /// Shorthand for `--mode monic-leading`.
    #[arg(long)]
    monic_leading: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("target").required(true).args(["word", "root"])))]
struct SolveArgs {
    #[command(flatten)]
    weight: WeightArgs,
    /// Simple reflections `i1,i2,…`; the rightmost acts first.
    #[arg(long)]
    word: Option<String>,
    /// The root e_k - e_l as `k,l`.
    #[arg(long)]
    root: Option<String>,
    /// Largest total degree kept in the off-subdiagonal variables.
    #[arg(long)]
    bound: Option<u32>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Oracle {
    /// Raising operators in U(sl(n)).
    Ug,
    /// The differential operators d_i.
    Diff,
    Both,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    weight: WeightArgs,
    /// JSON file holding the vector, or `-` for stdin.
    #[arg(long)]
    vector: String,
    #[arg(long, value_enum, default_value_t = Oracle::Both)]
    oracle: Oracle,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("target").required(true).args(["mu", "orbit"])))]
struct LinkageArgs {
    #[command(flatten)]
    weight: WeightArgs,
    /// The lower weight, in the same coordinates as `--lambda`.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// List every weight strongly linked below λ, each with one chain.
    #[arg(long)]
    orbit: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

/// A failed command: exit code plus a diagnostic for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn bad_input(message: impl Into<String>) -> Self {
        Self { code: EXIT_BAD_INPUT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::NotWeightVector | Error::ZeroVector => EXIT_NOT_WEIGHT,
            _ => EXIT_BAD_INPUT,
        };
        Self { code, message: e.to_string() }
    }
}

type Outcome = std::result::Result<(String, i32), Failure>;

enum LambdaSpec {
    Symbolic,
    Numeric(Weight),
}

fn parse_coordinates(text: &str, n: usize, unshifted: bool) -> Result<Weight, Failure> {
    let coords = text
        .split(',')
        .map(|s| parse_rational(s).map(Affine::constant))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::bad_input(e.to_string()))?;
    if coords.len() + 1 != n {
        return Err(Failure::bad_input(format!("expected {} coordinates for sl({n}), got {}", n - 1, coords.len())));
    }
    Ok(if unshifted { Weight::from_unshifted(coords) } else { Weight::new(coords) })
}

fn parse_lambda(args: &WeightArgs) -> Result<LambdaSpec, Failure> {
    if args.n < 2 {
        return Err(Failure::bad_input("n must be at least 2"));
    }
    if args.lambda.trim() == "symbolic" {
        if args.unshifted {
            return Err(Failure::bad_input("--unshifted applies to numeric weights only"));
        }
        return Ok(LambdaSpec::Symbolic);
    }
    parse_coordinates(&args.lambda, args.n, args.unshifted).map(LambdaSpec::Numeric)
}

fn parse_list(text: &str, what: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| Failure::bad_input(format!("bad {what}: {text:?}"))))
        .collect()
}

fn parse_root(text: &str, n: usize) -> Result<Root, Failure> {
    match parse_list(text, "root")?.as_slice() {
        &[k, l] => Ok(Root::new(k, l, n)?),
        _ => Err(Failure::bad_input(format!("root must be `k,l`, got {text:?}"))),
    }
}

fn cmd_singular(args: &SingularArgs) -> Outcome {
    let n = args.weight.n;
    let root = parse_root(&args.root, n.max(2))?;
    let lambda = match parse_lambda(&args.weight)? {
        LambdaSpec::Symbolic => constrained_symbolic_weight(&root, args.m, n)?,
        LambdaSpec::Numeric(w) => w,
    };
    let normalization = match (args.mode, args.monic_leading) {
        (Mode::MonicLeading, _) | (_, true) => Normalization::MonicLeading,
        _ => Normalization::Raw,
    };
    let v = singular_vector(&root, args.m, &lambda, normalization)?;
    Ok((render_pbw(&v, args.format.into()), EXIT_OK))
}

fn cmd_solve(args: &SolveArgs) -> Outcome {
    let n = args.weight.n;
    let lambda = match parse_lambda(&args.weight)? {
        LambdaSpec::Symbolic => Weight::symbolic(n),
        LambdaSpec::Numeric(w) => w,
    };
    let expansion = match (&args.word, &args.root) {
        (Some(word), _) => {
            let letters = if word.trim().is_empty() { Vec::new() } else { parse_list(word, "word")? };
            sigma_of_one(&SimpleWord::new(letters, n)?, &lambda, args.bound)?
        }
        (None, Some(root)) => s_alpha_closed_form(&parse_root(root, n)?, &lambda, args.bound)?,
        (None, None) => return Err(Failure::bad_input("one of --word or --root is required")),
    };
    let format = Format::from(args.format);
    let mut out = render_series(&expansion.series, expansion.complete, format);
    match format {
        Format::Json => {}
        Format::Text => out.push_str(&format!("\ncomplete: {}", expansion.complete)),
        Format::Latex => out.push_str(&format!("\n% complete: {}", expansion.complete)),
    }
    Ok((out, EXIT_OK))
}

fn read_vector_file(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let read = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure { code: EXIT_PARSE, message: format!("cannot read {path}: {e}") })?;
    Ok(text)
}

fn residual_line(i: usize, oracle: &str, first_nonzero: Option<String>) -> String {
    match first_nonzero {
        None => format!("i={i} {oracle}: 0"),
        Some(term) => format!("i={i} {oracle}: {term}"),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let n = args.weight.n;
    let lambda = match parse_lambda(&args.weight)? {
        LambdaSpec::Symbolic => Weight::symbolic(n),
        LambdaSpec::Numeric(w) => w,
    };
    let text = read_vector_file(&args.vector)?;
    let parsed = pbw_from_json(&text, n)?;
    let v = if lambda.is_numeric() { parsed.evaluate_at(&lambda) } else { parsed };
    let weight = common_weight(&v, &lambda)?;
    let mut lines = vec![format!("weight: {weight}")];
    let mut verdicts = Vec::new();
    if args.oracle != Oracle::Diff {
        let residuals = raise_residuals(&v, &lambda)?;
        for (offset, r) in residuals.iter().enumerate() {
            let first = r.sorted_terms().first().map(|(a, c)| pbw_to_text(&PBWVector::term(n, (*a).clone(), (*c).clone())));
            lines.push(residual_line(offset + 1, "ug", first));
        }
        verdicts.push(residuals.iter().all(PBWVector::is_zero));
    }
    if args.oracle != Oracle::Ug {
        let residuals = diff_residuals(&v, &lambda)?;
        for (offset, r) in residuals.iter().enumerate() {
            let first = r.terms().next().map(|(m, c)| {
                series_to_text(&crate::polyseries::SeriesElement::monomial(n, m.clone(), c.clone()))
            });
            lines.push(residual_line(offset + 1, "diff", first));
        }
        verdicts.push(residuals.iter().all(|r| r.is_zero()));
    }
    if verdicts.windows(2).any(|w| w[0] != w[1]) {
        lines.push("oracles disagree".into());
    }
    let singular = verdicts.iter().all(|&b| b);
    lines.push(format!("singular: {singular}"));
    Ok((lines.join("\n"), if singular { EXIT_OK } else { EXIT_FALSE }))
}

fn chain_text(chain: &[Root]) -> String {
    if chain.is_empty() {
        "(empty)".into()
    } else {
        chain.iter().map(Root::to_string).collect::<Vec<_>>().join(" ")
    }
}

fn chain_json(chain: &[Root]) -> serde_json::Value {
    chain.iter().map(|r| serde_json::Value::from(r.to_string())).collect()
}

fn weight_json(w: &Weight) -> serde_json::Value {
    w.coords().iter().map(|c| serde_json::Value::from(c.to_string())).collect()
}

fn cmd_linkage(args: &LinkageArgs) -> Outcome {
    let n = args.weight.n;
    let LambdaSpec::Numeric(lambda) = parse_lambda(&args.weight)? else {
        return Err(Failure::bad_input("linkage needs a numeric weight"));
    };
    let json = matches!(args.format, OutputFormat::Json);
    if args.orbit {
        let orbit = linkage_orbit(&lambda)?;
        let out = if json {
            let items: Vec<_> = orbit
                .iter()
                .map(|(w, chain)| serde_json::json!({"weight": weight_json(w), "chain": chain_json(chain)}))
                .collect();
            json_lines(&items)
        } else {
            orbit
                .iter()
                .map(|(w, chain)| format!("{w}: {}", chain_text(chain)))
                .collect::<Vec<_>>()
                .join("\n")
        };
        return Ok((out, EXIT_OK));
    }
    let mu_text = args.mu.as_deref().ok_or_else(|| Failure::bad_input("one of --mu or --orbit is required"))?;
    if mu_text.trim() == "symbolic" {
        return Err(Failure::bad_input("linkage needs a numeric weight"));
    }
    let mu = parse_coordinates(mu_text, n, args.weight.unshifted)?;
    let chain = strongly_linked_chain(&mu, &lambda)?;
    let out = match (json, &chain) {
        (true, Some(c)) => serde_json::json!({"chain": chain_json(c)}).to_string(),
        (true, None) => serde_json::json!({"chain": null}).to_string(),
        (false, Some(c)) => chain_text(c),
        (false, None) => "none".into(),
    };
    Ok((out, EXIT_OK))
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Singular(a) => cmd_singular(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Linkage(a) => cmd_linkage(a),
    };
    match outcome {
        Ok((payload, code)) => {
            let _ = writeln!(stdout, "{payload}");
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["verma"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn sl2_power() {
        let (code, out, _) = run_capture(&["singular", "--n", "2", "--root", "1,2", "--m", "3", "--lambda", "3"]);
        assert_eq!((code, out.trim()), (0, "E21^3 v"));
    }

    #[test]
    fn pairing_violation_names_pairing() {
        let (code, _, err) = run_capture(&["singular", "--n", "2", "--root", "1,2", "--m", "3", "--lambda", "5/2"]);
        assert_eq!(code, 2);
        assert!(err.contains("5/2"), "{err}");
    }

    #[test]
    fn unshifted_rejected_with_symbolic() {
        let (code, _, _) = run_capture(&["solve", "--n", "3", "--word", "1", "--lambda", "symbolic", "--unshifted"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn unshifted_coordinates() {
        let (code, out, _) = run_capture(&["solve", "--n", "2", "--word", "1", "--lambda", "1", "--unshifted"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("x21^2"));
    }

    #[test]
    fn floats_rejected() {
        let (code, _, _) = run_capture(&["linkage", "--n", "2", "--lambda", "0.5", "--orbit"]);
        assert_eq!(code, 2);
    }
}
