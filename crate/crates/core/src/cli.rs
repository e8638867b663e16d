//! Command-line front end. Every command prints JSON on standard output and
//! returns exit status 0 on success, 1 on a domain error and 2 on a usage
//! error.

use std::io::{BufRead, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::classify::{characteristically_simple, dual_canonical, CanonicalForm};
use crate::corpus;
use crate::duality::dual;
use crate::error::{Error, Result};
use crate::monolith::{self, RatMatrix};
use crate::padic::{self, PAdic};
use crate::predicates::{nondense_primes, predicate_vector, PrimeSet};
use crate::terms::{normalize, parse_expr, validate, Cardinal};
use crate::zpmodule::{self, ZpMatrix};

#[derive(Debug, Parser)]
#[command(name = "lcag", version, about = "Locally compact abelian group workbench")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Emit JSON (the default and only output format; accepted everywhere).
    #[arg(long, global = true)]
    pub json: bool,
    /// p-adic precision M.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Truncation window N.
    #[arg(long, global = true)]
    pub window: Option<i64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a term and print its normal form and JSON tree.
    Parse { term: String },
    /// Check the validity rules.
    Validate { term: String },
    /// Pontryagin dual.
    Dual { term: String },
    /// Structural predicates.
    Predicates { term: String },
    /// Characteristic simplicity and canonical form.
    Classify {
        term: Option<String>,
        /// Classify one term per line of FILE (`-` for standard input).
        #[arg(long, value_name = "FILE")]
        batch: Option<String>,
    },
    /// Z_p-module linear algebra.
    Zp {
        #[arg(value_enum)]
        op: ZpOp,
        #[arg(long)]
        p: u64,
        /// Rows as a JSON array of arrays of integer strings.
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        ambient: Option<usize>,
    },
    /// Run a verification scenario.
    Verify(VerifyArgs),
    /// Replay the golden corpus (or FILE).
    Corpus {
        #[arg(long)]
        file: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ZpOp {
    Triangularize,
    Pure,
    Complete,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Scenario {
    Wreath,
    Laurent,
    QpSemidirect,
    Hall,
    NoGo,
    Diagonals,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub scenario: Scenario,
    #[arg(long)]
    pub p: Option<u64>,
    /// Field size of AGL1(q).
    #[arg(long)]
    pub q: Option<usize>,
    /// Window size of the cyclic model.
    #[arg(long)]
    pub k: Option<usize>,
    /// Shift range K.
    #[arg(long)]
    pub shift_range: Option<i64>,
    /// p-adic literal `p^v * u (mod p^M)` or a rational.
    #[arg(long)]
    pub a: Option<String>,
    /// Comma-separated primes.
    #[arg(long)]
    pub primes: Option<String>,
    /// Comma-separated rationals.
    #[arg(long)]
    pub vector: Option<String>,
    /// Semicolon-separated p-adic literals or rationals.
    #[arg(long)]
    pub lambdas: Option<String>,
    /// JSON list of square matrices of rational strings.
    #[arg(long)]
    pub matrices: Option<String>,
    #[arg(long)]
    pub budget: Option<usize>,
}

fn error_json(e: &Error) -> Value {
    json!({"error": e.to_string()})
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, input: &mut dyn BufRead) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                eprint!("{text}");
            }
            return code;
        }
    };
    execute(&cli, out, input)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, input: &mut dyn BufRead) -> i32 {
    if let Command::Classify { batch: Some(path), term } = &cli.command {
        if term.is_some() {
            eprintln!("error: give either a term or --batch, not both");
            return 2;
        }
        return classify_batch(path, out, input);
    }
    let result = dispatch(cli);
    let (value, code) = match result {
        Ok((v, ok)) => (v, if ok { 0 } else { 1 }),
        Err(Error::Precondition(m)) if m.starts_with("usage:") => {
            eprintln!("{m}");
            return 2;
        }
        Err(e) => (error_json(&e), 1),
    };
    let _ = writeln!(out, "{value}");
    code
}

fn usage(msg: &str) -> Error {
    Error::Precondition(format!("usage: {msg}"))
}

fn dispatch(cli: &Cli) -> Result<(Value, bool)> {
    let g = &cli.global;
    match &cli.command {
        Command::Parse { term } => {
            let e = parse_expr(term)?;
            Ok((json!({"term": e.to_string(), "normal_form": normalize(&e).to_string(), "ast": e.to_json()}), true))
        }
        Command::Validate { term } => {
            let r = validate(&parse_expr(term)?);
            let violations: Vec<Value> =
                r.violations.iter().map(|v| json!({"path": v.path, "rule": v.rule, "message": v.message})).collect();
            Ok((json!({"valid": r.valid, "violations": violations}), true))
        }
        Command::Dual { term } => Ok((json!({"result": dual(&parse_expr(term)?)?.to_string()}), true)),
        Command::Predicates { term } => {
            let e = parse_expr(term)?;
            let mut v = serde_json::to_value(predicate_vector(&e)?).expect("serializable");
            let nd = match nondense_primes(&e)? {
                PrimeSet::Finite(ps) => json!({"finite": ps}),
                PrimeSet::CoFinite(ps) => json!({"all_except": ps}),
            };
            v["nondense_primes"] = nd;
            Ok((v, true))
        }
        Command::Classify { term, .. } => {
            let term = term.as_deref().ok_or_else(|| usage("classify needs a term or --batch"))?;
            let v = characteristically_simple(&parse_expr(term)?)?;
            Ok((v.to_json(), true))
        }
        Command::Zp { op, p, matrix, ambient } => {
            let m = g.precision.unwrap_or(zpmodule::DEFAULT_PRECISION);
            let json: Value = serde_json::from_str(matrix).map_err(|e| Error::Malformed(format!("matrix: {e}")))?;
            let sub = ZpMatrix::from_json(*p, m, *ambient, &json)?;
            let v = match op {
                ZpOp::Triangularize => zpmodule::triangular_basis(&sub)?.to_json(),
                ZpOp::Pure => json!({"pure": zpmodule::is_pure(&sub)?}),
                ZpOp::Complete => zpmodule::complete_to_summand(&sub)?.to_json(),
            };
            Ok((v, true))
        }
        Command::Verify(args) => verify(g, args),
        Command::Corpus { file } => {
            let text = match file {
                Some(f) => std::fs::read_to_string(f).map_err(|e| Error::Malformed(format!("{f}: {e}")))?,
                None => corpus::GOLDEN.to_string(),
            };
            let r = corpus::replay(&text)?;
            let ok = r.passed();
            Ok((serde_json::to_value(r).expect("serializable"), ok))
        }
    }
}

fn classify_batch(path: &str, out: &mut dyn Write, input: &mut dyn BufRead) -> i32 {
    let text = if path == "-" {
        let mut s = String::new();
        if let Err(e) = input.read_to_string(&mut s) {
            eprintln!("error: {e}");
            return 1;
        }
        s
    } else {
        match std::fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => {
                let _ = writeln!(out, "{}", json!({"error": format!("{path}: {e}")}));
                return 1;
            }
        }
    };
    for (i, line) in text.lines().enumerate() {
        let record = match parse_expr(line).and_then(|e| characteristically_simple(&e)) {
            Ok(v) => {
                let mut v = v.to_json();
                v["line"] = json!(i + 1);
                v
            }
            Err(e) => json!({"line": i + 1, "input": line, "error": e.to_string()}),
        };
        let _ = writeln!(out, "{record}");
    }
    0
}

fn parse_list<T: std::str::FromStr>(s: &str, sep: char) -> Result<Vec<T>> {
    s.split(sep)
        .map(|x| x.trim().parse().map_err(|_| Error::Malformed(format!("bad list entry {x:?}"))))
        .collect()
}

// A p-adic literal carries its own prime; a plain rational uses `p`, or 2.
fn padic_arg(p: Option<u64>, s: &str, m: u32) -> Result<PAdic> {
    if s.contains("mod") {
        let a = padic::parse_padic(s)?;
        match p {
            Some(p) if p != a.p => Err(Error::PrimeMismatch(p, a.p)),
            _ => Ok(a),
        }
    } else {
        PAdic::from_rational(p.unwrap_or(2), &padic::parse_rational(s)?, m)
    }
}

fn matrices_arg(s: &str) -> Result<Vec<RatMatrix>> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Malformed(format!("matrices: {e}")))?;
    let bad = || Error::Malformed("matrices must be a list of lists of lists".into());
    let mut out = Vec::new();
    for m in v.as_array().ok_or_else(bad)? {
        let mut rows = Vec::new();
        for r in m.as_array().ok_or_else(bad)? {
            let mut row = Vec::new();
            for x in r.as_array().ok_or_else(bad)? {
                let text = match x {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => n.to_string(),
                    _ => return Err(bad()),
                };
                row.push(padic::parse_rational(&text)?);
            }
            rows.push(row);
        }
        out.push(rows);
    }
    Ok(out)
}

fn verify(g: &GlobalOpts, a: &VerifyArgs) -> Result<(Value, bool)> {
    let seed = g.seed.unwrap_or(0);
    match a.scenario {
        Scenario::Wreath => {
            let budget = a.budget.unwrap_or(monolith::DEFAULT_BUDGET);
            let r = monolith::wreath_monolith_window(a.q.unwrap_or(4), a.k.unwrap_or(3), g.trials.unwrap_or(100), seed, budget)?;
            Ok((r.to_json(), r.target_contained))
        }
        Scenario::Laurent => {
            let r = monolith::laurent_ideal_density(a.p.unwrap_or(2), g.window.unwrap_or(16), g.trials.unwrap_or(200), seed)?;
            Ok((r.to_json(), r.target_contained))
        }
        Scenario::QpSemidirect => {
            let m = g.precision.unwrap_or(padic::DEFAULT_PRECISION);
            let x = padic_arg(a.p, a.a.as_deref().unwrap_or("1"), m)?;
            let r = monolith::qp_semidirect_monolith(a.shift_range.unwrap_or(3), &x)?;
            Ok((r.to_json(), r.target_contained))
        }
        Scenario::Hall => {
            let primes: Vec<u64> = parse_list(a.primes.as_deref().unwrap_or("2,3,5"), ',')?;
            let r = match &a.vector {
                Some(v) => {
                    let v: Vec<BigRational> =
                        v.split(',').map(padic::parse_rational).collect::<Result<Vec<_>>>()?;
                    monolith::hall_window_minimality(&primes, &v)?
                }
                None => monolith::hall_trials(&primes, g.trials.unwrap_or(50), 5, seed)?,
            };
            Ok((r.to_json(), r.target_contained))
        }
        Scenario::NoGo => {
            let ms = matrices_arg(a.matrices.as_deref().ok_or_else(|| usage("no-go needs --matrices"))?)?;
            let cert = monolith::rational_no_go(&ms)?;
            let n = ms[0].len() as u64;
            let side = CanonicalForm::RationalsSum { kappa: Cardinal::Finite(n) };
            let dual_side = dual_canonical(&side);
            let words = monolith::check_words(&cert, g.trials.unwrap_or(1000), 6, &mut monolith::trial_rng(seed, 0));
            let v = json!({
                "certificate": cert.to_json(),
                "words_checked": g.trials.unwrap_or(1000),
                "word_violation": words,
                "group": Value::Object(side.to_json()),
                "dual_group": Value::Object(dual_side.to_json()),
            });
            Ok((v, words.is_none()))
        }
        Scenario::Diagonals => {
            let m = g.precision.unwrap_or(16);
            let lambdas = a.lambdas.as_deref().unwrap_or("1;3");
            let ls = lambdas.split(';').map(|s| padic_arg(a.p, s.trim(), m)).collect::<Result<Vec<_>>>()?;
            let p = a.p.or(ls.first().map(|l| l.p)).unwrap_or(2);
            let r = monolith::diagonal_minimals(p, &ls, a.shift_range.unwrap_or(3), m)?;
            Ok((r.to_json(), r.target_contained))
        }
    }
}
