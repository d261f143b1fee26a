//! Amplitude damping as a Kraus map on chosen modes of a register.
//!
//! Each damped qubit decays `|1⟩ → |0⟩` with probability `p`:
//!
//! ```text
//! M0 = | 1     0     |     M1 = | 0  √p |
//!      | 0  √(1−p)   |          | 0   0 |
//! ```
//!
//! Several damped modes couple to independent environments with the same `p`;
//! the map sums `K ρ K†` over every tuple of Kraus indices.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{tensor_product, CMatrix, DensityOperator, ModeLabel};

/// Decay probability `p = 1 − e^{−Γt}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingParams {
    p: f64,
}

impl DampingParams {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Parameter(format!(
                "damping probability p={p} outside [0, 1]"
            )));
        }
        Ok(Self { p })
    }

    pub fn p(self) -> f64 {
        self.p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KrausPair {
    pub m0: CMatrix,
    pub m1: CMatrix,
}

impl KrausPair {
    /// `m0†m0 + m1†m1`, which should be the identity.
    pub fn completeness(&self) -> CMatrix {
        let mut sum = self.m0.adjoint().matmul(&self.m0);
        sum.add_assign(&self.m1.adjoint().matmul(&self.m1));
        sum
    }

    fn get(&self, i: usize) -> &CMatrix {
        if i == 0 {
            &self.m0
        } else {
            &self.m1
        }
    }
}

pub fn amplitude_damping_kraus(params: DampingParams) -> KrausPair {
    let p = params.p();
    let m0 = CMatrix::from_real_diagonal(&[1.0, (1.0 - p).sqrt()]);
    let mut m1 = CMatrix::zeros(2);
    m1[(0, 1)] = Complex64::new(p.sqrt(), 0.0);
    KrausPair { m0, m1 }
}

/// Applies independent amplitude damping to every mode in `targets`.
pub fn apply_damping(
    rho: &DensityOperator,
    targets: &[ModeLabel],
    params: DampingParams,
) -> Result<DensityOperator> {
    if targets.is_empty() {
        return Err(Error::Parameter(
            "damping needs at least one target mode".into(),
        ));
    }
    let reg = rho.register();
    for (i, t) in targets.iter().enumerate() {
        if !reg.contains(*t) {
            return Err(Error::Label(format!("mode {t} not in register {reg}")));
        }
        if targets[..i].contains(t) {
            return Err(Error::Parameter(format!("mode {t} listed twice")));
        }
    }

    let kraus = amplitude_damping_kraus(params);
    let identity = CMatrix::identity(2);
    let mut out = CMatrix::zeros(reg.dim());

    // Bit j of `choice` selects the Kraus index for targets[j].
    for choice in 0..1usize << targets.len() {
        let mut op = CMatrix::identity(1);
        for mode in reg.modes() {
            let factor = match targets.iter().position(|t| t == mode) {
                Some(j) => kraus.get((choice >> j) & 1),
                None => &identity,
            };
            op = tensor_product(&op, factor)?;
        }
        out.add_assign(&op.sandwich(rho.matrix()));
    }
    DensityOperator::new(reg.clone(), out)
}
