//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error, 2 on a usage error. Every
//! error is reported as a single line `error[<kind>]: <message>` on stderr.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use gci_core::certificates::{default_counterexample_params, rotated_counterexample};
use gci_core::ci::{ci_holds, cyclic_model, marginal_conclusions};
use gci_core::document::{parse_rational, parse_statement, MatrixDocument};
use gci_core::engine::{check_witness, implied_marginals, ImplicationReport, WitnessReport};
use gci_core::lattice::{basis_matrix, BasisMatrix};
use gci_core::primes::{minimal_primes, MinimalPrime};
use gci_core::RationalSymMatrix;

pub const SEED_VAR: &str = "GCI_SEED";

#[derive(Debug, Parser)]
#[command(name = "gci", version, about = "Exact Gaussian CI implication checks for cyclic models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Implied marginal independences of the cyclic model on N variables.
    Implication {
        #[arg(long)]
        n: usize,
        /// Positive definite samples used to check the exclusion certificate.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
    /// Minimal primes of the cyclic CI ideal I_N.
    Primes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Covariance matrix satisfying every cyclic statement but one.
    Counterexample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        e: Option<String>,
        /// Statement K (K _||_ K+1 | K+2) that fails; defaults to N-1.
        #[arg(long)]
        drop: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Exact verdict for one statement on a covariance matrix file.
    Check {
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long)]
        statement: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluates the cyclic model and its marginal conclusions on a matrix.
    Witness {
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long = "model-n")]
        model_n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Lattice basis matrix M_N in block layout.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Domain(gci_core::Error),
}

impl From<gci_core::Error> for CliError {
    fn from(e: gci_core::Error) -> Self {
        Self::Domain(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            Self::Io(_) | Self::Domain(_) => 1,
        }
    }

    fn line(&self) -> String {
        let (kind, msg) = match self {
            Self::Usage(m) => ("usage", m.clone()),
            Self::Io(m) => ("io", m.clone()),
            Self::Domain(e) => ("domain", e.to_string()),
        };
        let flat: Vec<&str> = msg.split_whitespace().collect();
        format!("error[{kind}]: {}", flat.join(" "))
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runs the CLI with the seed taken from `GCI_SEED`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let seed = std::env::var(SEED_VAR).ok();
    run_with_seed(args, seed.as_deref(), out, err)
}

/// Runs the CLI with an explicit `GCI_SEED` value (`None` means unset).
pub fn run_with_seed<I, S>(args: I, seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let first = e.to_string().lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            let failure = CliError::Usage(first);
            let _ = writeln!(err, "{}", failure.line());
            return failure.exit_code();
        }
    };
    match dispatch(cli.command, seed) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(failure) => {
            let _ = writeln!(err, "{}", failure.line());
            failure.exit_code()
        }
    }
}

fn parse_seed(seed: Option<&str>) -> CliResult<u64> {
    match seed {
        None => Ok(0),
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_VAR} must be a decimal integer, got `{s}`"))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn read_sigma(path: &PathBuf) -> CliResult<RationalSymMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(MatrixDocument::from_json(&text)?.to_matrix()?)
}

fn dispatch(command: Command, seed: Option<&str>) -> CliResult<String> {
    match command {
        Command::Implication { n, samples, json } => {
            let seed = parse_seed(seed)?;
            let report = implied_marginals(&cyclic_model(n)?, samples, seed)?;
            Ok(if json { to_json(&report) } else { implication_text(&report) })
        }
        Command::Primes { n, json } => {
            let basis = basis_matrix(&cyclic_model(n)?)?;
            let primes = minimal_primes(&basis)?;
            Ok(if json { to_json(&primes_json(n, &primes)) } else { primes_text(n, &primes) })
        }
        Command::Counterexample { n, a, e, drop, json } => {
            let (da, de) = default_counterexample_params(n);
            let a = a.as_deref().map(parse_rational).transpose()?.unwrap_or(da);
            let e = e.as_deref().map(parse_rational).transpose()?.unwrap_or(de);
            let drop = drop.unwrap_or(n.saturating_sub(1));
            let sigma = rotated_counterexample(n, &a, &e, drop)?;
            let failing = cyclic_model(n)?.statements()[drop - 1].to_string();
            let mut meta = serde_json::Map::new();
            meta.insert("a".into(), json!(a.to_string()));
            meta.insert("e".into(), json!(e.to_string()));
            meta.insert("drop".into(), json!(drop));
            meta.insert("failing_statement".into(), json!(failing));
            let doc = MatrixDocument::from_matrix(&sigma, Some(meta));
            Ok(if json {
                format!("{}\n", doc.to_json())
            } else {
                format!("counterexample n={n} a={a} e={e}; fails only {failing}\n{}", grid_text(&doc.entries))
            })
        }
        Command::Check { sigma, statement, json } => {
            let sigma = read_sigma(&sigma)?;
            let stmt = parse_statement(&statement)?;
            let holds = ci_holds(&sigma, &stmt)?;
            Ok(if json {
                to_json(&json!({ "statement": stmt, "holds": holds }))
            } else {
                format!("{} {stmt}\n", if holds { "HOLDS" } else { "FAILS" })
            })
        }
        Command::Witness { sigma, model_n, json } => {
            let sigma = read_sigma(&sigma)?;
            let model = cyclic_model(model_n)?;
            let report = check_witness(&sigma, &model, &marginal_conclusions(model_n)?)?;
            Ok(if json { to_json(&witness_json(&report)) } else { witness_text(&report) })
        }
        Command::Basis { n, json } => {
            let basis = basis_matrix(&cyclic_model(n)?)?;
            Ok(if json { to_json(&basis_json(&basis)) } else { basis_text(&basis) })
        }
    }
}

fn prime_json(p: &MinimalPrime) -> Value {
    json!({
        "kind": if p.is_toric() { "toric" } else { "vanishing" },
        "vanishing_vars": p.vanishing_vars,
        "residual_rows": p.residual_rows,
    })
}

fn primes_json(n: usize, primes: &[MinimalPrime]) -> Value {
    json!({ "n": n, "primes": primes.iter().map(prime_json).collect::<Vec<_>>() })
}

fn primes_text(n: usize, primes: &[MinimalPrime]) -> String {
    let mut s = format!("minimal primes of I_{n}: {}\n", primes.len());
    for p in primes {
        s.push_str(&format!("  {p}\n"));
    }
    s
}

fn implication_text(r: &ImplicationReport) -> String {
    let mut s = format!("model on n={} ({} statements)\n", r.model.n(), r.model.statements().len());
    for st in r.model.statements() {
        s.push_str(&format!("  {st}\n"));
    }
    s.push_str("components:\n");
    for p in &r.primes {
        match r.excluded.iter().find(|x| &x.prime == p) {
            Some(x) => {
                let coeffs: Vec<String> = x.certificate.lattice_coeffs.iter().map(ToString::to_string).collect();
                s.push_str(&format!(
                    "  {p}  EXCLUDED (v = [{}] . M; checked on {} PD samples, seed {})\n",
                    coeffs.join(" "),
                    r.evidence_samples,
                    r.seed
                ));
            }
            None => s.push_str(&format!("  {p}  kept\n")),
        }
    }
    s.push_str("implied:\n");
    for st in &r.implied {
        s.push_str(&format!("  {st}\n"));
    }
    if let Some(c) = &r.caveat {
        s.push_str(&format!("caveat: {c}\n"));
    }
    s
}

fn witness_json(r: &WitnessReport) -> Value {
    let mut v = serde_json::to_value(r).expect("reports serialize");
    v["verdict"] = json!(r.verdict());
    v
}

fn witness_text(r: &WitnessReport) -> String {
    let mut s = String::from("model statements:\n");
    for c in &r.model_checks {
        s.push_str(&format!("  {} {}\n", if c.holds { "HOLDS" } else { "FAILS" }, c.statement));
    }
    s.push_str("conclusions:\n");
    for c in &r.conclusion_checks {
        s.push_str(&format!("  {} {}\n", if c.holds { "HOLDS" } else { "FAILS" }, c.statement));
    }
    s.push_str(&format!("verdict: {}\n", r.verdict()));
    s
}

fn grid_text(entries: &[Vec<String>]) -> String {
    let width = entries.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut s = String::new();
    for row in entries {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        s.push_str(&cells.join("  "));
        s.push('\n');
    }
    s
}

fn basis_json(b: &BasisMatrix) -> Value {
    json!({
        "rows": b.rows(),
        "cols": b.cols(),
        "columns": b.var_order(),
        "row_labels": b.row_labels(),
        "entries": b.to_i64_rows(),
    })
}

/// Rows as signed integers with `|` between the blocks of cyclic distance
/// 0, 1 and 2, each row followed by its statement.
fn basis_text(b: &BasisMatrix) -> String {
    let n = b.n();
    let breaks = [n, 2 * n];
    let mut s = format!("# {}x{} columns: ", b.rows(), b.cols());
    let names: Vec<String> = b.var_order().iter().map(ToString::to_string).collect();
    s.push_str(&names.join(" "));
    s.push('\n');
    for (row, label) in b.to_i64_rows().iter().zip(b.row_labels()) {
        let mut cells = Vec::with_capacity(row.len() + 2);
        for (j, v) in row.iter().enumerate() {
            if breaks.contains(&j) {
                cells.push("|".to_string());
            }
            let cell = if *v > 0 { format!("+{v}") } else { v.to_string() };
            cells.push(format!("{cell:>2}"));
        }
        s.push_str(&format!("{}   # {label}\n", cells.join(" ")));
    }
    s
}
