use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qec_core::oracle::verify_all_timed;
use qec_core::{BlochVector, Limits};

mod commands;

/// Encrypted-cloning subset classifier, reducer and verifier.
#[derive(Debug, Parser)]
#[command(name = "qec", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify every subset of one family by the parity rules.
    Classify {
        /// Number of signal–noise pairs.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10))]
        n: u64,
        /// Classify H = {A} ∪ C instead of storage-only subsets.
        #[arg(long)]
        include_a: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reduce the encoded state to a subset and report its Pauli decomposition.
    Reduce {
        /// Number of signal–noise pairs.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=12))]
        n: u64,
        /// Comma-separated labels, e.g. `A,S1,N2`.
        #[arg(long)]
        keep: String,
        /// Bloch vector `x,y,z` or one of `0`, `1`, `plus`, `plus-i`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_input)]
        input: BlochVector,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the L-matrices and the Γ selection table for (n, q).
    Gamma {
        /// Number of signal–noise pairs.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=31))]
        n: u64,
        /// Number of signal qubits among the kept register qubits.
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check classifier and closed forms against brute-force reductions.
    Verify {
        /// Sweep n = 1..=max-n.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8))]
        max_n: u64,
        /// Norm and reconstruction tolerance.
        #[arg(long, default_value_t = 1e-10, allow_hyphen_values = true, value_parser = parse_tol)]
        tol: f64,
        /// Seed for the random inputs; n is added per sweep level.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Random inputs per closed-form comparison.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock duration in the report (breaks byte-stability).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A failure to report on one line; `flag` names what the user should fix.
#[derive(Debug)]
pub struct CliError {
    flag: &'static str,
    message: String,
}

impl CliError {
    pub fn new(flag: &'static str, message: impl fmt::Display) -> Self {
        Self { flag, message: message.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error: {}: {}", self.flag, self.message)
    }
}

fn parse_input(text: &str) -> Result<BlochVector, String> {
    let named = match text.trim().to_ascii_lowercase().as_str() {
        "0" => Some(BlochVector::PLUS_Z),
        "1" => Some(BlochVector::MINUS_Z),
        "plus" => Some(BlochVector::PLUS_X),
        "plus-i" => Some(BlochVector::PLUS_Y),
        _ => None,
    };
    if let Some(b) = named {
        return Ok(b);
    }
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("`{text}` is neither x,y,z nor a named state (0, 1, plus, plus-i)"));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| format!("`{p}` is not a number"))?;
    }
    BlochVector::normalized(v[0], v[1], v[2], 1e-6).map_err(|e| e.to_string())
}

fn parse_tol(text: &str) -> Result<f64, String> {
    match text.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("`{text}` is not a positive number")),
    }
}

fn limits_from_env() -> Result<Limits, CliError> {
    match std::env::var("QEC_DENSE_LIMIT") {
        Ok(v) => v
            .trim()
            .parse()
            .map(|dense_qubits| Limits { dense_qubits })
            .map_err(|_| CliError::new("QEC_DENSE_LIMIT", format!("`{v}` is not a qubit count"))),
        Err(_) => Ok(Limits::default()),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::new("--out", format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let limits = limits_from_env()?;
    match cli.command {
        Command::Classify { n, include_a, format } => {
            print!("{}", commands::classify(n as usize, include_a, format)?);
        }
        Command::Reduce { n, keep, input, format } => {
            print!("{}", commands::reduce(n as usize, &keep, &input, format, &limits)?);
        }
        Command::Gamma { n, q, format } => {
            print!("{}", commands::gamma(n as usize, q as usize, format)?);
        }
        Command::Verify { max_n, tol, seed, samples, format, out, timings } => {
            let n_max = max_n as usize;
            let report = if timings {
                verify_all_timed(n_max, tol, samples, seed, &limits)
            } else {
                qec_core::verify_all(n_max, tol, samples, seed, &limits)
            }
            .map_err(|e| CliError::new("--max-n", e))?;
            emit(&commands::render_report(&report, format)?, out.as_ref())?;
            if !report.passed() {
                eprintln!("verify: {} of {} subsets mismatched", report.meta.mismatches, report.meta.subset_count);
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            eprintln!("{}", rendered.lines().next().unwrap_or("error: invalid arguments"));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
