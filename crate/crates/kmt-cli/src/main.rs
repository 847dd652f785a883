//! `kmt`: root tables and worked examples from the command line.
//!
//! Exit status: 0 when every check passes, 1 when a check fails or a computation errors, 2 on
//! usage errors. Errors are written to stderr as a JSON object.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use kmt::demo::{run_demo, DemoError, DemoOptions, DemoReport, DEMO_NAMES};
use kmt::io::{load_datum, IoError};
use kmt::num::parse_q;
use kmt::rootdata::{enumerate_roots, RootTable};
use serde_json::json;

/// Upper bound on every height option unless KMT_MAX_HEIGHT overrides it.
const DEFAULT_MAX_HEIGHT: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "kmt", version, about = "Exact computations for split Kac-Moody groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Positive roots up to a height bound, with multiplicities.
    Roots {
        /// Datum document (TOML, or JSON with a .json extension).
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        height: u32,
    },
    /// Runs a worked example and reports its checks.
    Demo {
        /// One of: sl2-exp, free-product, density, conjugate-solve, mitzman,
        /// commutator-constants, enclosure, fixator-compare.
        name: String,
        #[arg(long)]
        n: Option<i64>,
        /// A rational such as 1/3.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        window: Option<u32>,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        height: Option<u32>,
        #[arg(long)]
        cap: Option<usize>,
    },
}

/// A problem with the invocation rather than the mathematics.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(msg.into()))
}

fn max_height() -> Result<u32> {
    match std::env::var("KMT_MAX_HEIGHT") {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("KMT_MAX_HEIGHT must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_HEIGHT),
    }
}

fn check_height(h: u32) -> Result<u32> {
    let cap = max_height()?;
    if h == 0 {
        return Err(usage("height must be positive"));
    }
    if h > cap {
        return Err(usage(format!("height {h} exceeds KMT_MAX_HEIGHT = {cap}")));
    }
    Ok(h)
}

fn roots_text(t: &RootTable) -> String {
    let mut out = format!("positive roots of height <= {}\n", t.height_bound);
    for e in &t.entries {
        let coords: Vec<String> = e.root.0.iter().map(i64::to_string).collect();
        let kind = if e.real { "real" } else { "imaginary" };
        out.push_str(&format!("({})  mult {}  {kind}\n", coords.join(", "), e.mult));
    }
    out
}

fn print_json(v: serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(&v)?);
    Ok(())
}

fn cmd_roots(format: Format, matrix: PathBuf, height: u32) -> Result<bool> {
    let h = check_height(height)?;
    let datum = load_datum(&matrix).map_err(|e| match e {
        IoError::RootData(_) | IoError::Parse(_) | IoError::Read { .. } => usage(e.to_string()),
    })?;
    let table = enumerate_roots(&datum, h).context("root enumeration failed")?;
    match format {
        Format::Json => print_json(serde_json::to_value(&table)?)?,
        Format::Text => print!("{}", roots_text(&table)),
    }
    Ok(true)
}

fn cmd_demo(format: Format, name: String, opts: DemoOptions) -> Result<bool> {
    if !DEMO_NAMES.contains(&name.as_str()) {
        return Err(usage(DemoError::UnknownDemo(name).to_string()));
    }
    if let Some(h) = opts.height {
        check_height(h)?;
    }
    let report: DemoReport = run_demo(&name, &opts).map_err(|e| match e {
        DemoError::UnknownDemo(_) | DemoError::InvalidOption(_) => usage(e.to_string()),
        other => anyhow!(other),
    })?;
    match format {
        Format::Json => print_json(serde_json::to_value(&report)?)?,
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(report.pass)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Roots { matrix, height } => cmd_roots(cli.format, matrix, height),
        Command::Demo { name, n, lambda, window, p, m, height, cap } => {
            let lambda = lambda
                .map(|s| parse_q(&s).map_err(|e| usage(format!("--lambda: {e}"))))
                .transpose()?;
            cmd_demo(cli.format, name, DemoOptions { n, lambda, window, p, m, height, cap })
        }
    }
}

fn report_error(kind: &str, message: &str) {
    eprintln!("{}", json!({ "error": { "kind": kind, "message": message } }));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version.
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report_error("usage", e.render().to_string().trim());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<UsageError>() => {
            report_error("usage", &e.to_string());
            ExitCode::from(2)
        }
        Err(e) => {
            report_error("computation", &format!("{e:#}"));
            ExitCode::from(1)
        }
    }
}
