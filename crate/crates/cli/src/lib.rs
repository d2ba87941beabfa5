//! Command-line front end. `run` parses arguments, calls the library and
//! renders the result as text or JSON.

pub mod report;

use std::ffi::OsString;
use std::fs;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use socle::macaulay::{expand, macaulay_bound};
use socle::monomial::lex_ideal_for_h;
use socle::oracle::{socle_catalog, Budget};
use socle::resolution::{
    betti_identity, ek_betti, forced_socle_entry, forced_socle_entry_maximal_growth,
    possible_cancellations,
};
use socle::uniqueness::{
    compressed_gorenstein_h, decide, verify_witness, DecideOptions, Status, Witness,
};
use socle::vectors::{max_socle_for_h, min_codimension, min_h_for_socle, validate_h, validate_s};
use socle::{HVector, SocleVector};
use thiserror::Error;

use report::*;

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const NODES_ENV: &str = "SOCLE_BUDGET_NODES";
pub const SECONDS_ENV: &str = "SOCLE_BUDGET_SECONDS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] socle::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Parser, Debug)]
#[command(
    name = "socle",
    version,
    about = "Socle-vectors, lex-segment ideals and Betti numbers of artinian algebras"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Values {
    /// Integers, or @path to a file holding them (whitespace, commas or JSON).
    #[arg(required = true, allow_negative_numbers = true)]
    values: Vec<String>,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Maximum search nodes (default from SOCLE_BUDGET_NODES, else 1000000).
    #[arg(long)]
    budget: Option<u64>,
    /// Maximum search seconds (default from SOCLE_BUDGET_SECONDS, else 60).
    #[arg(long)]
    seconds: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Binomial expansion of N in base I, with its shifts.
    Expand {
        #[arg(allow_negative_numbers = true)]
        n: String,
        #[arg(allow_negative_numbers = true)]
        i: String,
    },
    /// Largest possible value in degree D+1 after H_D in degree D.
    Bound {
        #[arg(allow_negative_numbers = true)]
        h_d: String,
        #[arg(allow_negative_numbers = true)]
        d: String,
    },
    /// Entrywise minimum h-vector for a socle-vector.
    Minh(Values),
    /// Largest socle-vector for an h-vector.
    Maxsocle(Values),
    /// Smallest codimension admitting a socle-vector.
    Mincodim(Values),
    /// Lex-segment ideal of an h-vector.
    Lexideal {
        #[command(flatten)]
        values: Values,
        /// Highest degree to store (default: one past the top degree).
        #[arg(long)]
        top: Option<usize>,
    },
    /// Betti table of the lex-segment ideal and the Hilbert series check.
    Betti(Values),
    /// Shifts shared by the last two modules of the lex-segment resolution.
    Cancellations(Values),
    /// Decide whether every algebra with this h-vector has the same socle-vector.
    Unique {
        #[command(flatten)]
        values: Values,
        /// Fall back to the monomial-ideal search when no criterion applies.
        #[arg(long)]
        search: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Socle entry in degree D-1 forced by the h-vector (last value is D).
    Forced(Values),
    /// All socle-vectors of monomial ideals with this h-vector.
    Catalog {
        #[command(flatten)]
        values: Values,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// h-vector of a general sum of M powers of degree D in R variables.
    Compressed {
        #[arg(allow_negative_numbers = true)]
        m: String,
        #[arg(allow_negative_numbers = true)]
        d: String,
        #[arg(allow_negative_numbers = true)]
        r: String,
    },
    /// Re-check a stored witness.
    VerifyWitness { file: String },
}

/// Exit code and printed streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read_file(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn parse_int(token: &str) -> Result<BigInt, CliError> {
    token
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("{token:?} is not an integer")))
}

fn json_ints(v: &serde_json::Value) -> Result<Vec<BigInt>, CliError> {
    let arr = match v {
        serde_json::Value::Array(a) => a,
        serde_json::Value::Object(o) => match o.get("h").or_else(|| o.get("s")) {
            Some(serde_json::Value::Array(a)) => a,
            _ => {
                return Err(CliError::Input(
                    "expected a JSON array or an object with \"h\" or \"s\"".into(),
                ))
            }
        },
        _ => return Err(CliError::Input("expected a JSON array".into())),
    };
    arr.iter().map(|x| parse_int(&x.to_string())).collect()
}

/// Integers from the positional arguments, expanding `@path` references.
fn integers(values: &[String]) -> Result<Vec<BigInt>, CliError> {
    let mut out = Vec::new();
    for v in values {
        match v.strip_prefix('@') {
            Some(path) => {
                let text = read_file(path)?;
                let t = text.trim();
                if t.starts_with('[') || t.starts_with('{') {
                    let parsed: serde_json::Value = serde_json::from_str(t)
                        .map_err(|e| CliError::Input(format!("{path}: {e}")))?;
                    out.extend(json_ints(&parsed)?);
                } else {
                    for tok in t
                        .split(|c: char| c.is_whitespace() || c == ',')
                        .filter(|s| !s.is_empty())
                    {
                        out.push(parse_int(tok)?);
                    }
                }
            }
            None => out.push(parse_int(v)?),
        }
    }
    Ok(out)
}

fn natural(token: &str, what: &str) -> Result<BigUint, CliError> {
    parse_int(token)?
        .to_biguint()
        .ok_or_else(|| CliError::Input(format!("{what} must be non-negative, got {token}")))
}

fn small(token: &str, what: &str) -> Result<usize, CliError> {
    usize::try_from(natural(token, what)?)
        .map_err(|_| CliError::Input(format!("{what} = {token} is too large")))
}

fn h_vector(values: &[String]) -> Result<HVector, CliError> {
    Ok(validate_h(&integers(values)?).map_err(socle::Error::from)?)
}

fn socle_vector(values: &[String]) -> Result<SocleVector, CliError> {
    Ok(validate_s(&integers(values)?).map_err(socle::Error::from)?)
}

fn env_u64(name: &str) -> Result<Option<u64>, CliError> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Input(format!("{name}={v:?} is not a non-negative integer"))),
        Err(_) => Ok(None),
    }
}

fn budget(args: &BudgetArgs) -> Result<Budget, CliError> {
    let mut b = Budget::default();
    if let Some(n) = args.budget.or(env_u64(NODES_ENV)?) {
        b.max_nodes = n;
    }
    if let Some(s) = args.seconds.or(env_u64(SECONDS_ENV)?) {
        b.max_time = Duration::from_secs(s);
    }
    Ok(b)
}

struct Rendered {
    text: String,
    json: String,
    code: i32,
}

fn rendered<T: Serialize + std::fmt::Display>(report: &T, code: i32) -> Result<Rendered, CliError> {
    Ok(Rendered {
        text: report.to_string(),
        json: serde_json::to_string_pretty(report).map_err(|e| CliError::Input(e.to_string()))?
            + "\n",
        code,
    })
}

fn execute(command: &Command, seed: u64) -> Result<Rendered, CliError> {
    match command {
        Command::Expand { n, i } => {
            let n = natural(n, "N")?;
            let i = small(i, "I")?;
            if i == 0 {
                return Err(CliError::Input("I must be positive".into()));
            }
            let x = expand(&n, i);
            let shifts = [-2i64, -1, 1, 2]
                .into_iter()
                .map(|by| ShiftRow {
                    by,
                    value: x.shift(by).ok(),
                })
                .collect();
            let terms = x
                .terms()
                .iter()
                .map(|(top, bottom)| ExpansionTerm {
                    top: top.clone(),
                    bottom: *bottom,
                })
                .collect();
            rendered(
                &ExpandReport {
                    n,
                    i,
                    terms,
                    shifts,
                },
                EXIT_OK,
            )
        }
        Command::Bound { h_d, d } => {
            let h_d = natural(h_d, "H_D")?;
            let d = small(d, "D")?;
            if d == 0 {
                return Err(CliError::Input("D must be positive".into()));
            }
            let bound = macaulay_bound(&h_d, d);
            rendered(&BoundReport { h_d, d, bound }, EXIT_OK)
        }
        Command::Minh(v) => {
            let s = socle_vector(&v.values)?;
            let h = min_h_for_socle(&s);
            rendered(&MinHReport(VectorPair { s, h }), EXIT_OK)
        }
        Command::Maxsocle(v) => {
            let h = h_vector(&v.values)?;
            let s = max_socle_for_h(&h)?;
            rendered(&MaxSocleReport(VectorPair { s, h }), EXIT_OK)
        }
        Command::Mincodim(v) => {
            let s = socle_vector(&v.values)?;
            let codimension = min_codimension(&s);
            rendered(&MinCodimReport { s, codimension }, EXIT_OK)
        }
        Command::Lexideal { values, top } => {
            let h = h_vector(&values.values)?;
            let ideal = lex_ideal_for_h(&h, top.unwrap_or(h.top_degree() + 1))?;
            rendered(&LexIdealReport { h, ideal }, EXIT_OK)
        }
        Command::Betti(v) => {
            let h = h_vector(&v.values)?;
            let ideal = lex_ideal_for_h(&h, h.top_degree() + 1)?;
            let table = ek_betti(&ideal)?;
            let identity = betti_identity(&h, &table)?;
            let report = BettiReport {
                h,
                table,
                identity_holds: identity.holds(),
                residual: identity.residual,
            };
            rendered(&report, EXIT_OK)
        }
        Command::Cancellations(v) => {
            let h = h_vector(&v.values)?;
            let c = possible_cancellations(&h)?;
            let report = CancellationsReport {
                socle_degrees: c.socle_degrees(),
                r: c.r,
                shifts: c.shifts,
                h,
            };
            rendered(&report, EXIT_OK)
        }
        Command::Unique {
            values,
            search,
            budget: b,
        } => {
            let h = h_vector(&values.values)?;
            let options = DecideOptions {
                seed,
                search: if *search { Some(budget(b)?) } else { None },
                ..DecideOptions::default()
            };
            let verdict = decide(&h, &options)?;
            let verified = verdict
                .witnesses
                .iter()
                .map(|w| verify_witness(w).is_ok())
                .collect();
            let out_of_budget = verdict.status == Status::Undecided
                && verdict
                    .reasons
                    .iter()
                    .any(|r| r == "monomial-search-out-of-budget");
            let code = if out_of_budget { EXIT_BUDGET } else { EXIT_OK };
            rendered(&UniqueReport { verdict, verified }, code)
        }
        Command::Forced(v) => {
            let mut ints = integers(&v.values)?;
            let d = ints
                .pop()
                .ok_or_else(|| CliError::Input("missing degree D".into()))?;
            let d = small(&d.to_string(), "D")?;
            let h = validate_h(&ints).map_err(socle::Error::from)?;
            let report = ForcedReport {
                alpha: forced_socle_entry(&h, d)?,
                alpha_maximal_growth: forced_socle_entry_maximal_growth(&h, d)?,
                h,
                d,
            };
            rendered(&report, EXIT_OK)
        }
        Command::Catalog { values, budget: b } => {
            let h = h_vector(&values.values)?;
            let catalog = socle_catalog(&h, budget(b)?)?;
            let code = if catalog.exhaustive {
                EXIT_OK
            } else {
                EXIT_BUDGET
            };
            rendered(&CatalogReport(catalog), code)
        }
        Command::Compressed { m, d, r } => {
            let m = natural(m, "M")?;
            let d = small(d, "D")?;
            let r = small(r, "R")?;
            let h = compressed_gorenstein_h(&m, d, r)?;
            rendered(&CompressedReport { m, d, r, h }, EXIT_OK)
        }
        Command::VerifyWitness { file } => {
            let text = read_file(file)?;
            let witness: Witness =
                serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{file}: {e}")))?;
            let error = verify_witness(&witness).err().map(|e| e.to_string());
            let code = if error.is_none() {
                EXIT_OK
            } else {
                EXIT_INVALID
            };
            let verified = error.is_none();
            rendered(
                &VerifyReport {
                    witness,
                    verified,
                    error,
                },
                code,
            )
        }
    }
}

/// Runs one invocation; `argv` includes the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli.command, cli.seed) {
        Ok(r) => Outcome {
            code: r.code,
            stdout: if cli.json { r.json } else { r.text },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
