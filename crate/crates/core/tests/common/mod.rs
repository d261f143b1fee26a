#![allow(dead_code)]

use ghz_unruh::qcore::{CMatrix, DensityOperator, ModeLabel, ModeRegister};
use num_complex::Complex64;
use proptest::prelude::*;

/// Entries of a complex matrix G; ρ = G G† / tr(G G†) is a full-rank state.
pub fn ginibre(dim: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim)
}

pub fn density_from(modes: &[ModeLabel], entries: &[(f64, f64)]) -> DensityOperator {
    let reg = ModeRegister::new(modes.to_vec()).unwrap();
    let dim = reg.dim();
    let g = CMatrix::from_vec(
        dim,
        entries
            .iter()
            .map(|&(re, im)| Complex64::new(re, im))
            .collect(),
    )
    .unwrap();
    let mut rho = g.matmul(&g.adjoint());
    let tr = rho.trace().re;
    rho = rho.scaled(1.0 / tr.max(1e-12));
    DensityOperator::new(reg, rho).unwrap()
}

pub const ABC: [ModeLabel; 3] = [ModeLabel::A, ModeLabel::B, ModeLabel::C];

pub fn unit() -> impl Strategy<Value = f64> {
    0.0f64..=1.0
}

pub fn beta() -> impl Strategy<Value = f64> {
    0.0f64..=std::f64::consts::FRAC_PI_4
}
