//! Gridded (β, P) surfaces for figures 1 to 7.

use std::f64::consts::FRAC_PI_4;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::engine::ScenarioState;
use crate::error::{Error, Result};
use crate::measures::Measure;
use crate::sweep::{fmt_f64, with_pool, write_atomic, GridAxis};
use crate::unruh::Scenario;

pub const MIN_RESOLUTION: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigurePanel {
    pub figure: u8,
    /// `None` for single-panel figures.
    pub panel: Option<char>,
    pub scenario: Scenario,
    pub measure: Measure,
}

impl FigurePanel {
    pub fn file_name(&self) -> String {
        match self.panel {
            Some(c) => format!("fig{}{}.csv", self.figure, c),
            None => format!("fig{}.csv", self.figure),
        }
    }
}

pub fn figure_panels(figure: u8) -> Result<Vec<FigurePanel>> {
    use Measure::*;
    use Scenario::*;
    let (scenario, measures): (Scenario, &[Measure]) = match figure {
        1 => (AbcI, &[S]),
        2 => (AbcI, &[E, C]),
        3 => (AbcII, &[S, E]),
        4 => (ABiCi, &[S, E]),
        5 => (ABiCii, &[S, E]),
        6 => (ABiiCii, &[S, E]),
        7 => (ABiBii, &[S, E]),
        _ => return Err(Error::Config(format!("figure {figure} not in 1..=7"))),
    };
    Ok(measures
        .iter()
        .enumerate()
        .map(|(i, &measure)| FigurePanel {
            figure,
            panel: (measures.len() > 1).then(|| (b'a' + i as u8) as char),
            scenario,
            measure,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Surface {
    pub panel: FigurePanel,
    pub alpha: f64,
    pub betas: Vec<f64>,
    pub ps: Vec<f64>,
    /// Row-major in β: `values[i * ps.len() + j]` is at (betas[i], ps[j]).
    pub values: Vec<f64>,
}

impl Surface {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ps.len() + j]
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("beta,p,value\n");
        for (i, b) in self.betas.iter().enumerate() {
            for (j, p) in self.ps.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{}\n",
                    fmt_f64(*b),
                    fmt_f64(*p),
                    fmt_f64(self.get(i, j))
                ));
            }
        }
        out
    }
}

/// Numeric surfaces for every panel of `figure` on a `resolution`² grid.
pub fn figure_surfaces(
    figure: u8,
    alpha: f64,
    resolution: usize,
    workers: usize,
) -> Result<Vec<Surface>> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::Config(format!(
            "resolution {resolution} below minimum {MIN_RESOLUTION}"
        )));
    }
    let panels = figure_panels(figure)?;
    let betas = GridAxis::new(0.0, FRAC_PI_4, resolution).values();
    let ps = GridAxis::new(0.0, 1.0, resolution).values();
    let scenario = panels[0].scenario;

    // One pass over the grid serves all panels of the figure.
    let rows = with_pool(workers, || {
        betas
            .par_iter()
            .map(|&b| {
                let state = ScenarioState::new(alpha, b, scenario)?;
                ps.iter()
                    .map(|&p| state.measures(p).map(|m| m.triple))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
    })??;

    Ok(panels
        .into_iter()
        .map(|panel| Surface {
            panel,
            alpha,
            betas: betas.clone(),
            ps: ps.clone(),
            values: rows
                .iter()
                .flatten()
                .map(|t| t.get(panel.measure))
                .collect(),
        })
        .collect())
}

/// Writes one CSV per panel into `out_dir` and returns the paths.
pub fn emit_figure_data(
    figure: u8,
    alpha: f64,
    resolution: usize,
    out_dir: &Path,
    workers: usize,
) -> Result<Vec<PathBuf>> {
    let surfaces = figure_surfaces(figure, alpha, resolution, workers)?;
    std::fs::create_dir_all(out_dir)?;
    let mut paths = Vec::new();
    for s in surfaces {
        let path = out_dir.join(s.panel.file_name());
        write_atomic(&path, s.to_csv().as_bytes())?;
        paths.push(path);
    }
    Ok(paths)
}
