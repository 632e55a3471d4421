use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use tridiag_core::report::{Report, Status};
use tridiag_core::suites::{run_suite, Suite, SuiteConfig};
use tridiag_core::tables::{self, RecurrenceFamily, Table, TableParams};
use tridiag_core::Rational;

/// Exact verification suites and coefficient tables for the tridiagonalized
/// hypergeometric operator.
#[derive(Debug, Parser)]
#[command(name = "tridiag", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a verification suite and print its report.
    Verify {
        /// jacobi-family, jacobi-algebra, tridiag, duality, transform, finite-reduction,
        /// wilson-identification, koornwinder, racah-wilson, su11-model, hahn or all.
        suite: String,
        #[command(flatten)]
        opts: Options,
    },
    /// Emit an exact coefficient table.
    Table {
        kind: TableKind,
        /// Family for recurrence tables.
        #[arg(long, default_value = "jacobi")]
        family: String,
        /// Preset for constants tables.
        #[arg(long, default_value = "racah-wilson")]
        preset: String,
        #[command(flatten)]
        opts: Options,
    },
    /// Recover structure constants from a concrete realization.
    Fit {
        what: FitTarget,
        #[arg(long, default_value = "racah-wilson")]
        preset: String,
        #[command(flatten)]
        opts: Options,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableKind {
    Recurrence,
    Connection,
    Constants,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FitTarget {
    Constants,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

fn rational(s: &str) -> std::result::Result<Rational, String> {
    s.parse().map_err(|e| format!("{e}; expected an integer or p/q"))
}

#[derive(Debug, Args)]
struct Options {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    alpha: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    beta: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    tau0: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    tau2: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    tau3: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    nu1: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    nu2: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    q: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    a1: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    a2: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    a3: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    a4: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    sigma1: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    sigma2: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    sigma3: Option<Rational>,
    /// Dimension parameter of the finite cases.
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Koornwinder coefficient suite only.
    #[arg(long, value_parser = rational)]
    tolerance: Option<Rational>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Options {
    fn params(&self) -> BTreeMap<String, Rational> {
        let pairs = [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("tau0", &self.tau0),
            ("tau2", &self.tau2),
            ("tau3", &self.tau3),
            ("nu1", &self.nu1),
            ("nu2", &self.nu2),
            ("q", &self.q),
            ("a1", &self.a1),
            ("a2", &self.a2),
            ("a3", &self.a3),
            ("a4", &self.a4),
            ("sigma1", &self.sigma1),
            ("sigma2", &self.sigma2),
            ("sigma3", &self.sigma3),
        ];
        pairs.into_iter().filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v))).collect()
    }

    fn table_params(&self) -> TableParams {
        TableParams { values: self.params(), nmax: self.nmax, n: self.n }
    }

    fn emit(&self, body: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
            None => io::stdout().write_all(body.as_bytes()).context("writing to standard output"),
        }
    }
}

fn render_report(r: &Report, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(r)? + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "trial", "status", "anchor", "detail"])?;
            for c in &r.checks {
                let trial = c.trial.map(|t| t.to_string()).unwrap_or_default();
                let status = serde_json::to_value(c.status)?.as_str().unwrap_or_default().to_string();
                w.write_record([c.name.as_str(), &trial, &status, &c.anchor, &c.detail])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => {
            let mut s = String::new();
            for c in &r.checks {
                let tag = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skip => "skip",
                };
                let trial = c.trial.map(|t| format!(" #{t}")).unwrap_or_default();
                s += &format!("{tag} {}{trial}: {}\n", c.name, c.detail);
            }
            s += &format!(
                "{}: {} pass, {} fail, {} skip in {} ms\n",
                r.suite, r.summary.pass, r.summary.fail, r.summary.skip, r.elapsed_ms
            );
            s
        }
    })
}

fn render_table(t: &Table, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(t)? + "\n",
        Format::Csv | Format::Text => t.to_csv(),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify { suite, opts } => {
            let suite: Suite = suite.parse()?;
            let cfg = SuiteConfig {
                params: opts.params(),
                nmax: opts.nmax,
                n: opts.n,
                tolerance: opts.tolerance.clone(),
                ..SuiteConfig::new(suite).with_trials(opts.trials, opts.seed)
            };
            let report = run_suite(&cfg)?;
            opts.emit(&render_report(&report, opts.format)?)?;
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Table { kind, family, preset, opts } => {
            let p = opts.table_params();
            let table = match kind {
                TableKind::Recurrence => tables::recurrence_table(family.parse::<RecurrenceFamily>()?, &p)?,
                TableKind::Connection => tables::connection_table(&p)?,
                TableKind::Constants => tables::constants_table(&preset, &p)?,
            };
            opts.emit(&render_table(&table, opts.format)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fit { what: FitTarget::Constants, preset, opts } => {
            let table = tables::fit_table(&preset, &opts.table_params())?;
            opts.emit(&render_table(&table, opts.format)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
