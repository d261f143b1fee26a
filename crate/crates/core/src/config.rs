//! Run settings from a flat `key = value` file and/or command-line flags.
//!
//! ```text
//! # comment
//! alpha = 0.7071067811865476
//! beta_steps = 201
//! scenario = ABC_II
//! measures = S,E
//! ```
//!
//! Keys accept `-` or `_`. Later assignments replace earlier ones, and
//! [`Settings::overlay`] lets flags replace file values.

use std::path::{Path, PathBuf};

use crate::audit::DEFAULT_AUDIT_TOL;
use crate::error::{Error, Result};
use crate::measures::Measure;
use crate::sweep::{EngineChoice, OutputFormat, SweepConfig};
use crate::unruh::Scenario;

pub const KEYS: [&str; 16] = [
    "alpha",
    "beta_lo",
    "beta_hi",
    "beta_steps",
    "p_lo",
    "p_hi",
    "p_steps",
    "scenario",
    "measures",
    "engine",
    "out",
    "format",
    "tol",
    "workers",
    "figure",
    "resolution",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub alpha: Option<f64>,
    pub beta_lo: Option<f64>,
    pub beta_hi: Option<f64>,
    pub beta_steps: Option<usize>,
    pub p_lo: Option<f64>,
    pub p_hi: Option<f64>,
    pub p_steps: Option<usize>,
    pub scenarios: Option<Vec<Scenario>>,
    pub measures: Option<Vec<Measure>>,
    pub engine: Option<EngineChoice>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub tol: Option<f64>,
    pub workers: Option<usize>,
    pub figure: Option<u8>,
    pub resolution: Option<usize>,
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse {value:?}")))
}

/// `all` or a comma-separated list of scenario names.
pub fn parse_scenarios(value: &str) -> Result<Vec<Scenario>> {
    if value.trim().eq_ignore_ascii_case("all") {
        return Ok(Scenario::ALL.to_vec());
    }
    value
        .split(',')
        .map(|s| {
            s.parse::<Scenario>()
                .map_err(|e| Error::Config(e.to_string()))
        })
        .collect()
}

impl Settings {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('-', "_").to_ascii_lowercase();
        match key.as_str() {
            "alpha" => self.alpha = Some(parse_num(&key, value)?),
            "beta_lo" => self.beta_lo = Some(parse_num(&key, value)?),
            "beta_hi" => self.beta_hi = Some(parse_num(&key, value)?),
            "beta_steps" => self.beta_steps = Some(parse_num(&key, value)?),
            "p_lo" => self.p_lo = Some(parse_num(&key, value)?),
            "p_hi" => self.p_hi = Some(parse_num(&key, value)?),
            "p_steps" => self.p_steps = Some(parse_num(&key, value)?),
            "scenario" => self.scenarios = Some(parse_scenarios(value)?),
            "measures" => self.measures = Some(Measure::parse_list(value)?),
            "engine" => self.engine = Some(value.parse()?),
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "format" => self.format = Some(value.parse()?),
            "tol" => self.tol = Some(parse_num(&key, value)?),
            "workers" => self.workers = Some(parse_num(&key, value)?),
            "figure" => self.figure = Some(parse_num(&key, value)?),
            "resolution" => self.resolution = Some(parse_num(&key, value)?),
            _ => return Err(Error::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Settings::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            s.set(k, v)
                .map_err(|e| Error::Config(format!("line {}: {e}", n + 1)))?;
        }
        Ok(s)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Fields set in `flags` replace those in `self`.
    pub fn overlay(self, flags: Settings) -> Settings {
        Settings {
            alpha: flags.alpha.or(self.alpha),
            beta_lo: flags.beta_lo.or(self.beta_lo),
            beta_hi: flags.beta_hi.or(self.beta_hi),
            beta_steps: flags.beta_steps.or(self.beta_steps),
            p_lo: flags.p_lo.or(self.p_lo),
            p_hi: flags.p_hi.or(self.p_hi),
            p_steps: flags.p_steps.or(self.p_steps),
            scenarios: flags.scenarios.or(self.scenarios),
            measures: flags.measures.or(self.measures),
            engine: flags.engine.or(self.engine),
            out: flags.out.or(self.out),
            format: flags.format.or(self.format),
            tol: flags.tol.or(self.tol),
            workers: flags.workers.or(self.workers),
            figure: flags.figure.or(self.figure),
            resolution: flags.resolution.or(self.resolution),
        }
    }

    pub fn sweep_config(&self) -> Result<SweepConfig> {
        let d = SweepConfig::default();
        let mut cfg = SweepConfig {
            alpha: self.alpha.unwrap_or(d.alpha),
            scenarios: self.scenarios.clone().unwrap_or(d.scenarios),
            measures: self.measures.clone().unwrap_or(d.measures),
            engine: self.engine.unwrap_or(d.engine),
            output: self.out.clone(),
            format: self.format.unwrap_or(d.format),
            workers: self.workers.unwrap_or(d.workers),
            ..d
        };
        cfg.beta.lo = self.beta_lo.unwrap_or(cfg.beta.lo);
        cfg.beta.hi = self.beta_hi.unwrap_or(cfg.beta.hi);
        cfg.beta.steps = self.beta_steps.unwrap_or(cfg.beta.steps);
        cfg.p.lo = self.p_lo.unwrap_or(cfg.p.lo);
        cfg.p.hi = self.p_hi.unwrap_or(cfg.p.hi);
        cfg.p.steps = self.p_steps.unwrap_or(cfg.p.steps);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn tol(&self) -> Result<f64> {
        let tol = self.tol.unwrap_or(DEFAULT_AUDIT_TOL);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::Config(format!("tol must be positive, got {tol}")));
        }
        Ok(tol)
    }
}
