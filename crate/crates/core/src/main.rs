use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ghz_unruh::audit::{check_sum_rules, run_audit};
use ghz_unruh::boundary::find_boundary;
use ghz_unruh::config::Settings;
use ghz_unruh::figure::emit_figure_data;
use ghz_unruh::measures::Measure;
use ghz_unruh::sweep::{rows_to_csv, rows_to_json, run_sweep, write_atomic, OutputFormat};
use ghz_unruh::{Error, Result};

/// Tripartite nonlocality, entanglement and coherence of GHZ-like states
/// under the Unruh effect and amplitude damping.
#[derive(Parser)]
#[command(name = "ghz-unruh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate measures on a (beta, p) grid.
    Sweep(Common),
    /// Compare closed forms with the numeric pipeline; exit 4 on discrepancies.
    Audit(Common),
    /// Sudden-death boundary p*(beta) for S or E.
    Boundary(Common),
    /// Check the coherence sum rules at seeded random points.
    Sumrules(Common),
    /// Write gridded surfaces for one figure as beta,p,value CSV.
    Figure(Common),
}

/// Every flag mirrors a config-file key; flags win over the file.
#[derive(Args)]
struct Common {
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta_lo: Option<String>,
    #[arg(long)]
    beta_hi: Option<String>,
    #[arg(long)]
    beta_steps: Option<String>,
    #[arg(long)]
    p_lo: Option<String>,
    #[arg(long)]
    p_hi: Option<String>,
    #[arg(long)]
    p_steps: Option<String>,
    /// Scenario name (e.g. ABC_I, AB_IC_II) or a comma list, or `all`.
    #[arg(long)]
    scenario: Option<String>,
    /// Comma list of S, E, C.
    #[arg(long)]
    measures: Option<String>,
    /// numeric | closedform | both
    #[arg(long)]
    engine: Option<String>,
    /// Output file (sweep, audit, boundary, sumrules) or directory (figure).
    #[arg(long)]
    out: Option<String>,
    /// csv | json (audit and sumrules: text | json)
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    workers: Option<String>,
    /// Figure number, 1 to 7.
    #[arg(long)]
    figure: Option<String>,
    /// Grid points per axis for `figure` (at least 16).
    #[arg(long)]
    resolution: Option<String>,
}

impl Common {
    fn settings(&self) -> Result<Settings> {
        let file = match &self.config {
            Some(path) => Settings::from_file(path)?,
            None => Settings::default(),
        };
        let mut flags = Settings::default();
        let pairs = [
            ("alpha", &self.alpha),
            ("beta_lo", &self.beta_lo),
            ("beta_hi", &self.beta_hi),
            ("beta_steps", &self.beta_steps),
            ("p_lo", &self.p_lo),
            ("p_hi", &self.p_hi),
            ("p_steps", &self.p_steps),
            ("scenario", &self.scenario),
            ("measures", &self.measures),
            ("engine", &self.engine),
            ("out", &self.out),
            ("tol", &self.tol),
            ("workers", &self.workers),
            ("figure", &self.figure),
            ("resolution", &self.resolution),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                flags.set(key, v)?;
            }
        }
        Ok(file.overlay(flags))
    }

    /// Text reports accept `text` in place of `csv`.
    fn report_json(&self, settings: &Settings) -> Result<bool> {
        match self
            .format
            .as_deref()
            .map(str::to_ascii_lowercase)
            .as_deref()
        {
            None => Ok(settings.format == Some(OutputFormat::Json)),
            Some("text") | Some("csv") => Ok(false),
            Some("json") => Ok(true),
            Some(other) => Err(Error::Config(format!("unknown report format {other:?}"))),
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Sweep(c) => {
            let mut s = c.settings()?;
            if let Some(f) = &c.format {
                s.format = Some(f.parse()?);
            }
            let cfg = s.sweep_config()?;
            let rows = run_sweep(&cfg)?;
            if cfg.output.is_none() {
                let text = match cfg.format {
                    OutputFormat::Csv => rows_to_csv(&rows),
                    OutputFormat::Json => rows_to_json(&rows)?,
                };
                emit(None, &text)?;
            }
            Ok(0)
        }
        Command::Audit(c) => {
            let s = c.settings()?;
            let mut cfg = s.sweep_config()?;
            if s.scenarios.is_none() {
                cfg.scenarios = ghz_unruh::unruh::Scenario::ALL.to_vec();
            }
            let report = run_audit(&cfg, s.tol()?)?;
            let text = if c.report_json(&s)? {
                report.to_json()?
            } else {
                report.to_text()
            };
            emit(s.out.as_ref(), &text)?;
            if report.has_discrepancies() {
                eprintln!(
                    "audit: {} discrepancies above tolerance",
                    report.discrepancies.len()
                );
                return Ok(4);
            }
            Ok(0)
        }
        Command::Boundary(c) => {
            let s = c.settings()?;
            let cfg = s.sweep_config()?;
            let measures = s.measures.clone().unwrap_or_else(|| vec![Measure::S]);
            let json = c.report_json(&s)?;
            let mut results = Vec::new();
            for &scenario in &cfg.scenarios {
                for &measure in &measures {
                    results.push(find_boundary(scenario, measure, cfg.alpha, cfg.beta.steps)?);
                }
            }
            let text = if json {
                let mut t = serde_json::to_string_pretty(&results)
                    .map_err(|e| Error::Io(std::io::Error::other(e)))?;
                t.push('\n');
                t
            } else {
                let mut t = String::new();
                for (i, r) in results.iter().enumerate() {
                    let csv = r.to_csv();
                    // One header for the concatenated table.
                    t.push_str(if i == 0 {
                        &csv
                    } else {
                        csv.split_once('\n').map_or("", |x| x.1)
                    });
                }
                t
            };
            emit(s.out.as_ref(), &text)?;
            Ok(0)
        }
        Command::Sumrules(c) => {
            let s = c.settings()?;
            let report = check_sum_rules()?;
            let text = if c.report_json(&s)? {
                report.to_json()?
            } else {
                report.to_text()
            };
            emit(s.out.as_ref(), &text)?;
            Ok(if report.passed() { 0 } else { 4 })
        }
        Command::Figure(c) => {
            let s = c.settings()?;
            let cfg = s.sweep_config()?;
            let figure = s
                .figure
                .ok_or_else(|| Error::Config("figure needs --figure <1..7>".into()))?;
            let resolution = s.resolution.unwrap_or(ghz_unruh::sweep::DEFAULT_STEPS);
            let dir = s.out.clone().unwrap_or_else(|| PathBuf::from("."));
            for path in emit_figure_data(figure, cfg.alpha, resolution, &dir, cfg.workers)? {
                println!("{}", path.display());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
