//! Grid sweeps over (β, P) with either or both engines.
//!
//! Rows are produced per β row on a worker pool and merged by grid index, so
//! the output does not depend on the number of workers.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::closedform::cf_eval;
use crate::engine::{Provenance, ScenarioState};
use crate::error::{Error, Result};
use crate::measures::Measure;
use crate::unruh::Scenario;

/// Evenly spaced samples including both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl GridAxis {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Self {
        Self { lo, hi, steps }
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.steps - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }

    fn validate(&self, name: &str, min: f64, max: f64) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::Config(format!(
                "{name} needs at least 2 steps, got {}",
                self.steps
            )));
        }
        if !(self.lo <= self.hi && self.lo >= min && self.hi <= max) {
            return Err(Error::Config(format!(
                "{name} range [{}, {}] must lie within [{min}, {max}]",
                self.lo, self.hi
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineChoice {
    Numeric,
    ClosedForm,
    Both,
}

impl EngineChoice {
    pub fn engines(self) -> &'static [Provenance] {
        match self {
            EngineChoice::Numeric => &[Provenance::Numeric],
            EngineChoice::ClosedForm => &[Provenance::ClosedForm],
            EngineChoice::Both => &[Provenance::Numeric, Provenance::ClosedForm],
        }
    }
}

impl FromStr for EngineChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "numeric" => Ok(EngineChoice::Numeric),
            "closedform" | "closed-form" => Ok(EngineChoice::ClosedForm),
            "both" => Ok(EngineChoice::Both),
            _ => Err(Error::Config(format!("unknown engine {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Config(format!("unknown format {s:?}"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

pub const DEFAULT_STEPS: usize = 101;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub alpha: f64,
    pub beta: GridAxis,
    pub p: GridAxis,
    pub scenarios: Vec<Scenario>,
    pub measures: Vec<Measure>,
    pub engine: EngineChoice,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    /// Worker threads; 0 lets the pool decide.
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            alpha: std::f64::consts::FRAC_1_SQRT_2,
            beta: GridAxis::new(0.0, FRAC_PI_4, DEFAULT_STEPS),
            p: GridAxis::new(0.0, 1.0, DEFAULT_STEPS),
            scenarios: vec![Scenario::AbcI],
            measures: Measure::ALL.to_vec(),
            engine: EngineChoice::Numeric,
            output: None,
            format: OutputFormat::Csv,
            workers: 0,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::Config(format!(
                "alpha={} outside [0, 1]",
                self.alpha
            )));
        }
        self.beta.validate("beta", 0.0, FRAC_PI_4)?;
        self.p.validate("p", 0.0, 1.0)?;
        if self.scenarios.is_empty() {
            return Err(Error::Config("no scenario selected".into()));
        }
        if self.measures.is_empty() {
            return Err(Error::Config("no measure selected".into()));
        }
        Ok(())
    }
}

/// One value from one engine at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScenarioResult {
    pub scenario: Scenario,
    pub measure: Measure,
    pub engine: Provenance,
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub value: f64,
}

pub(crate) fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Every row for one β value of one scenario, ordered by (p, measure, engine).
fn beta_row(cfg: &SweepConfig, scenario: Scenario, beta: f64) -> Result<Vec<ScenarioResult>> {
    let engines = cfg.engine.engines();
    let state = if engines.contains(&Provenance::Numeric) {
        Some(ScenarioState::new(cfg.alpha, beta, scenario)?)
    } else {
        None
    };
    let mut rows = Vec::with_capacity(cfg.p.steps * cfg.measures.len() * engines.len());
    for p in cfg.p.values() {
        let numeric = state.as_ref().map(|s| s.measures(p)).transpose()?;
        for &measure in &cfg.measures {
            for &engine in engines {
                let value = match engine {
                    Provenance::Numeric => numeric
                        .expect("numeric engine selected")
                        .triple
                        .get(measure),
                    Provenance::ClosedForm => cf_eval(scenario, measure, cfg.alpha, beta, p)?,
                };
                rows.push(ScenarioResult {
                    scenario,
                    measure,
                    engine,
                    alpha: cfg.alpha,
                    beta,
                    p,
                    value,
                });
            }
        }
    }
    Ok(rows)
}

/// Evaluates the grid without writing anything.
pub fn sweep_rows(cfg: &SweepConfig) -> Result<Vec<ScenarioResult>> {
    cfg.validate()?;
    let betas = cfg.beta.values();
    let per_scenario = with_pool(cfg.workers, || {
        cfg.scenarios
            .iter()
            .map(|&scenario| {
                betas
                    .par_iter()
                    .map(|&beta| beta_row(cfg, scenario, beta))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(per_scenario.into_iter().flatten().flatten().collect())
}

/// Evaluates the grid and, if an output path is configured, writes it.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<ScenarioResult>> {
    let rows = sweep_rows(cfg)?;
    if let Some(path) = &cfg.output {
        let bytes = match cfg.format {
            OutputFormat::Csv => rows_to_csv(&rows).into_bytes(),
            OutputFormat::Json => rows_to_json(&rows)?.into_bytes(),
        };
        write_atomic(path, &bytes)?;
    }
    Ok(rows)
}

/// Lossless fixed-width float rendering (17 significant digits).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub const CSV_HEADER: &str = "scenario,measure,engine,alpha,beta,p,value";

pub fn rows_to_csv(rows: &[ScenarioResult]) -> String {
    let mut out = String::with_capacity(rows.len() * 96);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.scenario,
            r.measure,
            r.engine.as_str(),
            fmt_f64(r.alpha),
            fmt_f64(r.beta),
            fmt_f64(r.p),
            fmt_f64(r.value)
        ));
    }
    out
}

pub fn rows_to_json(rows: &[ScenarioResult]) -> Result<String> {
    let mut s =
        serde_json::to_string_pretty(rows).map_err(|e| Error::Io(std::io::Error::other(e)))?;
    s.push('\n');
    Ok(s)
}

/// Writes through a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path.file_name().ok_or_else(|| {
        Error::Io(std::io::Error::other(format!(
            "{} is not a file path",
            path.display()
        )))
    })?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn corners(measures: Vec<Measure>) -> SweepConfig {
        SweepConfig {
            beta: GridAxis::new(0.0, FRAC_PI_4, 2),
            p: GridAxis::new(0.0, 1.0, 2),
            measures,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn coherence_at_grid_corners() {
        let rows = sweep_rows(&corners(vec![Measure::C])).unwrap();
        let values: Vec<f64> = rows.iter().map(|r| r.value).collect();
        let expected = [1.0, 0.0, FRAC_1_SQRT_2, 0.0];
        assert_eq!(values.len(), 4);
        for (v, e) in values.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12, "{values:?}");
        }
        // Ordered by (β index, p index).
        assert_eq!((rows[1].beta, rows[1].p), (0.0, 1.0));
        assert_eq!((rows[2].beta, rows[2].p), (FRAC_PI_4, 0.0));
    }

    #[test]
    fn nonlocality_at_origin() {
        let rows = sweep_rows(&corners(vec![Measure::S])).unwrap();
        assert!((rows[0].value - 4.0 * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn product_state_is_classical() {
        let cfg = SweepConfig {
            alpha: 1.0,
            beta: GridAxis::new(0.0, FRAC_PI_4, 5),
            p: GridAxis::new(0.0, 1.0, 5),
            measures: vec![Measure::E, Measure::C],
            engine: EngineChoice::Both,
            ..SweepConfig::default()
        };
        for r in sweep_rows(&cfg).unwrap() {
            assert_eq!(r.value, 0.0, "{r:?}");
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = corners(vec![Measure::C]);
        cfg.p.steps = 1;
        assert!(matches!(sweep_rows(&cfg), Err(Error::Config(_))));
        let mut cfg = corners(vec![Measure::C]);
        cfg.beta.hi = 1.0;
        assert!(matches!(sweep_rows(&cfg), Err(Error::Config(_))));
        let mut cfg = corners(vec![Measure::C]);
        cfg.alpha = 1.5;
        assert!(matches!(sweep_rows(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn axis_hits_endpoints_exactly() {
        let axis = GridAxis::new(0.1, FRAC_PI_4, 7);
        let v = axis.values();
        assert_eq!(v[0], 0.1);
        assert_eq!(v[6], FRAC_PI_4);
    }

    #[test]
    fn csv_layout() {
        let rows = sweep_rows(&corners(vec![Measure::C])).unwrap();
        let csv = rows_to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&first[..3], &["ABC_I", "C", "numeric"]);
        assert_eq!(first[6].parse::<f64>().unwrap(), rows[0].value);
    }
}
