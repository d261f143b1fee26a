//! X-state parametrization and the three quantumness measures.
//!
//! A three-qubit X-state is nonzero only on the diagonal and antidiagonal:
//! `d_i = ρ[i][i]` and `e_i = ρ[7−i][7−i]` for i = 0..4 (zero-based here),
//! with coherences `f_i = ρ[i][7−i]`.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{CMatrix, DensityOperator};

/// Off-pattern magnitude above which a matrix is rejected as non-X.
pub const X_PATTERN_TOL: f64 = 1e-12;

/// Svetlichny value separating local from genuinely tripartite nonlocal correlations.
pub const SVETLICHNY_BOUND: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    pub d: [f64; 4],
    pub e: [f64; 4],
    pub f: [Complex64; 4],
}

impl XState {
    /// Rebuilds the 8x8 matrix.
    pub fn to_matrix(&self) -> CMatrix {
        let mut m = CMatrix::zeros(8);
        for i in 0..4 {
            m[(i, i)] = Complex64::new(self.d[i], 0.0);
            m[(7 - i, 7 - i)] = Complex64::new(self.e[i], 0.0);
            m[(i, 7 - i)] = self.f[i];
            m[(7 - i, i)] = self.f[i].conj();
        }
        m
    }

    pub fn trace(&self) -> f64 {
        self.d.iter().sum::<f64>() + self.e.iter().sum::<f64>()
    }

    /// `|f_i| ≤ √(d_i e_i)` for every block, within `tol`.
    pub fn blocks_positive(&self, tol: f64) -> bool {
        (0..4).all(|i| self.f[i].norm() <= (self.d[i] * self.e[i]).max(0.0).sqrt() + tol)
    }

    /// `d₁−d₂−d₃+d₄−e₄+e₃+e₂−e₁` (one-based labels).
    pub fn svetlichny_n(&self) -> f64 {
        let [d1, d2, d3, d4] = self.d;
        let [e1, e2, e3, e4] = self.e;
        d1 - d2 - d3 + d4 - e4 + e3 + e2 - e1
    }

    pub fn max_coherence(&self) -> f64 {
        self.f.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Largest entry outside the X pattern, with its position.
fn worst_off_pattern(m: &CMatrix) -> (usize, usize, f64) {
    let mut worst = (0, 0, 0.0);
    for r in 0..8 {
        for c in 0..8 {
            if r == c || r + c == 7 {
                continue;
            }
            let mag = m[(r, c)].norm();
            if mag > worst.2 {
                worst = (r, c, mag);
            }
        }
    }
    worst
}

fn read_pattern(m: &CMatrix) -> XState {
    let mut x = XState {
        d: [0.0; 4],
        e: [0.0; 4],
        f: [Complex64::new(0.0, 0.0); 4],
    };
    for i in 0..4 {
        x.d[i] = m[(i, i)].re;
        x.e[i] = m[(7 - i, 7 - i)].re;
        x.f[i] = m[(i, 7 - i)];
    }
    x
}

fn check_three_qubits(rho: &DensityOperator) -> Result<()> {
    if rho.register().len() != 3 {
        return Err(Error::Parameter(format!(
            "X-state parametrization needs 3 modes, register is {}",
            rho.register()
        )));
    }
    Ok(())
}

/// Reads the X-state scalars; rejects matrices with off-pattern weight.
pub fn extract_xstate(rho: &DensityOperator) -> Result<XState> {
    check_three_qubits(rho)?;
    let (row, col, magnitude) = worst_off_pattern(rho.matrix());
    if magnitude > X_PATTERN_TOL {
        return Err(Error::Structure {
            row,
            col,
            magnitude,
        });
    }
    Ok(read_pattern(rho.matrix()))
}

/// X part of an arbitrary three-qubit state and the largest discarded entry.
///
/// The X part is what remains after twirling with local diagonal unitaries, so
/// entanglement and Svetlichny values computed from it are lower bounds for
/// the full state.
pub fn x_part(rho: &DensityOperator) -> Result<(XState, f64)> {
    check_three_qubits(rho)?;
    let (_, _, residual) = worst_off_pattern(rho.matrix());
    Ok((read_pattern(rho.matrix()), residual))
}

/// Svetlichny value `max(8√2 max|f_i|, 4|N|)`.
pub fn gtn(x: &XState) -> f64 {
    let f_branch = 8.0 * SQRT_2 * x.max_coherence();
    let n_branch = 4.0 * x.svetlichny_n().abs();
    f_branch.max(n_branch)
}

/// Genuine tripartite concurrence `2 max(0, max_i(|f_i| − Σ_{j≠i} √(d_j e_j)))`.
pub fn gte(x: &XState) -> f64 {
    let roots: [f64; 4] = std::array::from_fn(|j| (x.d[j] * x.e[j]).max(0.0).sqrt());
    let total: f64 = roots.iter().sum();
    let best = (0..4)
        .map(|i| x.f[i].norm() - (total - roots[i]))
        .fold(f64::NEG_INFINITY, f64::max);
    2.0 * best.max(0.0)
}

/// l1 coherence: sum of moduli of all off-diagonal entries.
pub fn coherence_l1(rho: &DensityOperator) -> f64 {
    let m = rho.matrix();
    let n = m.dim();
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += m[(r, c)].norm();
            }
        }
    }
    sum
}

/// Which of the three quantities to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    /// Svetlichny value (nonlocality).
    S,
    /// Genuine tripartite entanglement.
    E,
    /// l1 coherence.
    C,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::S, Measure::E, Measure::C];

    pub fn as_str(self) -> &'static str {
        match self {
            Measure::S => "S",
            Measure::E => "E",
            Measure::C => "C",
        }
    }

    /// Parses a comma-separated list such as `S,E,C`.
    pub fn parse_list(s: &str) -> Result<Vec<Measure>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let m = part.parse()?;
            if !out.contains(&m) {
                out.push(m);
            }
        }
        if out.is_empty() {
            return Err(Error::Config("empty measure list".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "S" => Ok(Measure::S),
            "E" => Ok(Measure::E),
            "C" => Ok(Measure::C),
            _ => Err(Error::Config(format!("unknown measure {s:?}"))),
        }
    }
}

impl Serialize for Measure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureTriple {
    pub s: f64,
    pub e_gte: f64,
    pub c: f64,
}

/// All three measures of a three-qubit X-state.
pub fn measure_triple(rho: &DensityOperator) -> Result<MeasureTriple> {
    let x = extract_xstate(rho)?;
    Ok(MeasureTriple {
        s: gtn(&x),
        e_gte: gte(&x),
        c: coherence_l1(rho),
    })
}

impl MeasureTriple {
    pub fn get(&self, m: Measure) -> f64 {
        match m {
            Measure::S => self.s,
            Measure::E => self.e_gte,
            Measure::C => self.c,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{ModeLabel, ModeRegister};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn abc(m: CMatrix) -> DensityOperator {
        let reg = ModeRegister::new(vec![ModeLabel::A, ModeLabel::B, ModeLabel::C]).unwrap();
        DensityOperator::new(reg, m).unwrap()
    }

    fn ghz_pure() -> DensityOperator {
        let mut m = CMatrix::zeros(8);
        for (r, c) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
            m[(r, c)] = Complex64::new(0.5, 0.0);
        }
        abc(m)
    }

    #[test]
    fn ghz_parameters_and_measures() {
        let rho = ghz_pure();
        let x = extract_xstate(&rho).unwrap();
        assert_eq!(x.d, [0.5, 0.0, 0.0, 0.0]);
        assert_eq!(x.e, [0.5, 0.0, 0.0, 0.0]);
        assert_eq!(x.f[0], Complex64::new(0.5, 0.0));
        assert!((gtn(&x) - 4.0 * SQRT_2).abs() < 1e-14);
        assert!((gte(&x) - 1.0).abs() < 1e-15);
        assert!((coherence_l1(&rho) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn maximally_mixed() {
        let rho = abc(CMatrix::identity(8).scaled(0.125));
        let x = extract_xstate(&rho).unwrap();
        assert_eq!(x.d, [0.125; 4]);
        assert_eq!(x.e, [0.125; 4]);
        assert_eq!(gtn(&x), 0.0);
        assert_eq!(gte(&x), 0.0);
        assert_eq!(coherence_l1(&rho), 0.0);
    }

    #[test]
    fn diagonal_states_have_no_entanglement_or_coherence() {
        let rho = abc(CMatrix::from_real_diagonal(&[
            0.3, 0.1, 0.05, 0.05, 0.1, 0.2, 0.1, 0.1,
        ]));
        let x = extract_xstate(&rho).unwrap();
        assert_eq!(gte(&x), 0.0);
        assert_eq!(coherence_l1(&rho), 0.0);
    }

    #[test]
    fn structure_error_reports_worst_entry() {
        let mut m = ghz_pure().into_matrix();
        m[(0, 3)] = Complex64::new(0.0, 0.2);
        m[(3, 0)] = Complex64::new(0.0, -0.2);
        m[(1, 2)] = Complex64::new(1e-3, 0.0);
        match extract_xstate(&abc(m.clone())) {
            Err(Error::Structure {
                row,
                col,
                magnitude,
            }) => {
                assert_eq!((row, col), (0, 3));
                assert!((magnitude - 0.2).abs() < 1e-15);
            }
            other => panic!("expected structure error, got {other:?}"),
        }
        let (x, residual) = x_part(&abc(m)).unwrap();
        assert!((residual - 0.2).abs() < 1e-15);
        assert_eq!(x.f[0], Complex64::new(0.5, 0.0));
    }

    #[test]
    fn rejects_wrong_register_size() {
        let reg = ModeRegister::new(vec![ModeLabel::A, ModeLabel::B]).unwrap();
        let rho = DensityOperator::new(reg, CMatrix::identity(4).scaled(0.25)).unwrap();
        assert!(matches!(extract_xstate(&rho), Err(Error::Parameter(_))));
    }

    #[test]
    fn maximal_acceleration_point() {
        // Case I accessible state at α=1/√2, β=π/4, no damping.
        let f1 = FRAC_1_SQRT_2 * FRAC_1_SQRT_2 * FRAC_1_SQRT_2;
        let x = XState {
            d: [0.25, 0.25, 0.0, 0.0],
            e: [0.5, 0.0, 0.0, 0.0],
            f: [
                Complex64::new(f1, 0.0),
                Complex64::default(),
                Complex64::default(),
                Complex64::default(),
            ],
        };
        // f-branch 8√2 · 1/(2√2) = 4, N-branch 4·|0.25 − 0.25 − 0.5| = 2.
        assert!((8.0 * SQRT_2 * f1 - 4.0).abs() < 1e-14);
        assert!((4.0 * x.svetlichny_n().abs() - 2.0).abs() < 1e-15);
        assert!((gtn(&x) - 4.0).abs() < 1e-14);
        assert!((gte(&x) - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((coherence_l1(&abc(x.to_matrix())) - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn gte_uses_cross_block_populations() {
        let x = XState {
            d: [0.4, 0.1, 0.0, 0.0],
            e: [0.4, 0.1, 0.0, 0.0],
            f: [
                Complex64::new(0.3, 0.0),
                Complex64::default(),
                Complex64::default(),
                Complex64::default(),
            ],
        };
        // m_1 = √(0.1·0.1) = 0.1 → E = 2(0.3 − 0.1).
        assert!((gte(&x) - 0.4).abs() < 1e-15);
        assert!(x.blocks_positive(1e-12));
        assert!((x.trace() - 1.0).abs() < 1e-15);
    }
}
