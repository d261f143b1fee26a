//! GHZ-like states seen by uniformly accelerated observers.
//!
//! An accelerated observer's mode is split into an accessible (region I) and an
//! inaccessible (region II) Rindler mode:
//!
//! ```text
//! |0⟩ → cosβ |0⟩_I |0⟩_II + sinβ |1⟩_I |1⟩_II
//! |1⟩ → |1⟩_I |0⟩_II
//! ```
//!
//! β ∈ [0, π/4] is used directly as the acceleration parameter.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qcore::{partial_trace, DensityOperator, ModeLabel, ModeRegister, PureState};

/// Acceleration angle β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnruhParams {
    beta: f64,
}

impl UnruhParams {
    pub fn new(beta: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_4).contains(&beta) {
            return Err(Error::Parameter(format!(
                "acceleration angle β={beta} outside [0, π/4]"
            )));
        }
        Ok(Self { beta })
    }

    pub fn beta(self) -> f64 {
        self.beta
    }
}

/// Amplitude α of `α|000⟩ + √(1−α²)|111⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzParams {
    alpha: f64,
}

impl GhzParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Parameter(format!(
                "GHZ amplitude α={alpha} outside [0, 1]"
            )));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(self) -> f64 {
        self.alpha
    }

    pub fn beta_amplitude(self) -> f64 {
        (1.0 - self.alpha * self.alpha).max(0.0).sqrt()
    }
}

/// Which observers accelerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    /// Charlie accelerates; Alice and Bob are inertial.
    CharlieAccelerated,
    /// Bob and Charlie accelerate; Alice is inertial.
    BobAndCharlieAccelerated,
}

/// A three-mode reduced state: the accelerating observers plus the kept
/// Rindler-mode combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scenario {
    /// Charlie accelerated, keep A, B, C_I.
    AbcI,
    /// Charlie accelerated, keep A, B, C_II.
    AbcII,
    /// Bob and Charlie accelerated, keep A, B_I, C_I.
    ABiCi,
    /// keep A, B_I, C_II.
    ABiCii,
    /// keep A, B_II, C_I.
    ABiiCi,
    /// keep A, B_II, C_II.
    ABiiCii,
    /// keep A, B_I, B_II (both of Bob's Rindler modes).
    ABiBii,
    /// keep A, C_I, C_II.
    ACiCii,
}

impl Scenario {
    pub const ALL: [Scenario; 8] = [
        Scenario::AbcI,
        Scenario::AbcII,
        Scenario::ABiCi,
        Scenario::ABiCii,
        Scenario::ABiiCi,
        Scenario::ABiiCii,
        Scenario::ABiBii,
        Scenario::ACiCii,
    ];

    pub fn case(self) -> Case {
        match self {
            Scenario::AbcI | Scenario::AbcII => Case::CharlieAccelerated,
            _ => Case::BobAndCharlieAccelerated,
        }
    }

    pub fn kept_modes(self) -> [ModeLabel; 3] {
        use ModeLabel::*;
        match self {
            Scenario::AbcI => [A, B, CI],
            Scenario::AbcII => [A, B, CII],
            Scenario::ABiCi => [A, BI, CI],
            Scenario::ABiCii => [A, BI, CII],
            Scenario::ABiiCi => [A, BII, CI],
            Scenario::ABiiCii => [A, BII, CII],
            Scenario::ABiBii => [A, BI, BII],
            Scenario::ACiCii => [A, CI, CII],
        }
    }

    /// Kept modes exposed to the damping channel: Charlie's kept mode in
    /// Case I, both non-Alice kept modes in Case II.
    pub fn damped_modes(self) -> Vec<ModeLabel> {
        let [_, x, y] = self.kept_modes();
        match self.case() {
            Case::CharlieAccelerated => vec![y],
            Case::BobAndCharlieAccelerated => vec![x, y],
        }
    }

    /// Image under exchanging Bob and Charlie.
    pub fn bob_charlie_swap(self) -> Scenario {
        match self {
            Scenario::ABiCii => Scenario::ABiiCi,
            Scenario::ABiiCi => Scenario::ABiCii,
            Scenario::ABiBii => Scenario::ACiCii,
            Scenario::ACiCii => Scenario::ABiBii,
            s => s,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scenario::AbcI => "ABC_I",
            Scenario::AbcII => "ABC_II",
            Scenario::ABiCi => "AB_IC_I",
            Scenario::ABiCii => "AB_IC_II",
            Scenario::ABiiCi => "AB_IIC_I",
            Scenario::ABiiCii => "AB_IIC_II",
            Scenario::ABiBii => "AB_IB_II",
            Scenario::ACiCii => "AC_IC_II",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Scenario {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    /// Accepts the canonical names, case-insensitively, ignoring spaces and
    /// an optional `casei/` or `caseii/` prefix.
    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_ascii_uppercase();
        let norm = norm
            .strip_prefix("CASEII/")
            .or_else(|| norm.strip_prefix("CASEI/"))
            .unwrap_or(&norm);
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == norm)
            .ok_or_else(|| Error::Config(format!("unknown scenario {s:?}")))
    }
}

pub fn build_ghz(params: GhzParams) -> PureState {
    let register =
        ModeRegister::new(vec![ModeLabel::A, ModeLabel::B, ModeLabel::C]).expect("static register");
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 8];
    amplitudes[0] = Complex64::new(params.alpha(), 0.0);
    amplitudes[7] = Complex64::new(params.beta_amplitude(), 0.0);
    PureState::from_parts_unchecked(register, amplitudes)
}

/// Splits `target` into its region I/II pair in place: the I mode takes the
/// original position and the II mode sits right after it.
pub fn unruh_expand(
    state: &PureState,
    target: ModeLabel,
    params: UnruhParams,
) -> Result<PureState> {
    let reg = state.register();
    let pos = reg
        .position(target)
        .ok_or_else(|| Error::Label(format!("mode {target} not in register {reg}")))?;
    let (mode_i, mode_ii) = target
        .rindler_pair()
        .ok_or_else(|| Error::Label(format!("mode {target} has no Rindler split")))?;

    let mut modes = reg.modes().to_vec();
    modes.splice(pos..=pos, [mode_i, mode_ii]);
    let out_reg = ModeRegister::new(modes)?;

    let n = reg.len();
    let shift = n - 1 - pos; // bit position of target, counted from the LSB
    let low_mask = (1usize << shift) - 1;
    let (sin, cos) = params.beta().sin_cos();

    let mut out = vec![Complex64::new(0.0, 0.0); out_reg.dim()];
    for (idx, &amp) in state.amplitudes().iter().enumerate() {
        if amp.re == 0.0 && amp.im == 0.0 {
            continue;
        }
        let high = idx >> (shift + 1);
        let low = idx & low_mask;
        // Index with the two new bits (I, II) inserted at the target's slot.
        let embed = |pair: usize| (((high << 2) | pair) << shift) | low;
        if idx & (1 << shift) == 0 {
            out[embed(0b00)] += amp * cos;
            out[embed(0b11)] += amp * sin;
        } else {
            out[embed(0b10)] += amp;
        }
    }
    Ok(PureState::from_parts_unchecked(out_reg, out))
}

/// The full pure state after every accelerated observer's mode is split.
pub fn scenario_pure_state(ghz: GhzParams, unruh: UnruhParams, case: Case) -> Result<PureState> {
    let psi = build_ghz(ghz);
    match case {
        Case::CharlieAccelerated => unruh_expand(&psi, ModeLabel::C, unruh),
        Case::BobAndCharlieAccelerated => {
            let psi = unruh_expand(&psi, ModeLabel::B, unruh)?;
            unruh_expand(&psi, ModeLabel::C, unruh)
        }
    }
}

/// Three-mode reduced state for `scenario`, before any damping.
pub fn scenario_reduced_state(
    ghz: GhzParams,
    unruh: UnruhParams,
    scenario: Scenario,
) -> Result<DensityOperator> {
    let psi = scenario_pure_state(ghz, unruh, scenario.case())?;
    partial_trace(&DensityOperator::from_pure(&psi), &scenario.kept_modes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::CMatrix;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_6};

    fn ghz(a: f64) -> GhzParams {
        GhzParams::new(a).unwrap()
    }

    fn beta(b: f64) -> UnruhParams {
        UnruhParams::new(b).unwrap()
    }

    #[test]
    fn parameter_ranges() {
        assert!(GhzParams::new(-0.1).is_err());
        assert!(GhzParams::new(1.01).is_err());
        assert!(UnruhParams::new(-1e-9).is_err());
        assert!(UnruhParams::new(FRAC_PI_4 + 1e-9).is_err());
        assert!(UnruhParams::new(FRAC_PI_4).is_ok());
    }

    #[test]
    fn ghz_extremes() {
        let s = build_ghz(ghz(1.0));
        assert_eq!(s.amplitude("000").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(s.amplitude("111").unwrap(), Complex64::new(0.0, 0.0));
        let s = build_ghz(ghz(0.0));
        assert_eq!(s.amplitude("111").unwrap(), Complex64::new(1.0, 0.0));
        let s = build_ghz(ghz(FRAC_1_SQRT_2));
        assert!((s.amplitude("000").unwrap().re - FRAC_1_SQRT_2).abs() < 1e-16);
        assert!((s.amplitude("111").unwrap().re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn expansion_without_acceleration_is_embedding() {
        let s = build_ghz(ghz(0.6));
        let out = unruh_expand(&s, ModeLabel::C, beta(0.0)).unwrap();
        assert_eq!(
            out.register().modes(),
            &[ModeLabel::A, ModeLabel::B, ModeLabel::CI, ModeLabel::CII]
        );
        assert!((out.amplitude("0000").unwrap().re - 0.6).abs() < 1e-16);
        assert!((out.amplitude("1110").unwrap().re - 0.8).abs() < 1e-15);
        assert_eq!(out.amplitude("0011").unwrap().norm(), 0.0);
    }

    #[test]
    fn charlie_expansion_terms() {
        let a = 0.3_f64;
        let b = 0.5_f64;
        let out = unruh_expand(&build_ghz(ghz(a)), ModeLabel::C, beta(b)).unwrap();
        let amp = |s: &str| out.amplitude(s).unwrap().re;
        assert!((amp("0000") - a * b.cos()).abs() < 1e-16);
        assert!((amp("0011") - a * b.sin()).abs() < 1e-16);
        assert!((amp("1110") - (1.0 - a * a).sqrt()).abs() < 1e-16);
        assert!((out.norm_sqr() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ghz_at_maximal_acceleration() {
        let out = unruh_expand(
            &build_ghz(ghz(FRAC_1_SQRT_2)),
            ModeLabel::C,
            beta(FRAC_PI_4),
        )
        .unwrap();
        let amp = |s: &str| out.amplitude(s).unwrap().re;
        assert!((amp("0000") - 0.5).abs() < 1e-15);
        assert!((amp("0011") - 0.5).abs() < 1e-15);
        assert!((amp("1110") - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((out.norm_sqr() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn expansion_label_errors() {
        let s = build_ghz(ghz(0.5));
        assert!(matches!(
            unruh_expand(&s, ModeLabel::A, beta(0.1)),
            Err(Error::Label(_))
        ));
        let split = unruh_expand(&s, ModeLabel::C, beta(0.1)).unwrap();
        assert!(matches!(
            unruh_expand(&split, ModeLabel::C, beta(0.1)),
            Err(Error::Label(_))
        ));
    }

    #[test]
    fn bob_then_charlie_register_layout() {
        let psi = scenario_pure_state(ghz(0.5), beta(0.3), Case::BobAndCharlieAccelerated).unwrap();
        use ModeLabel::*;
        assert_eq!(psi.register().modes(), &[A, BI, BII, CI, CII]);
        assert!((psi.norm_sqr() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn case_one_accessible_reduced_state() {
        let rho =
            scenario_reduced_state(ghz(FRAC_1_SQRT_2), beta(FRAC_PI_6), Scenario::AbcI).unwrap();
        let mut expected = CMatrix::zeros(8);
        expected[(0, 0)] = Complex64::new(0.375, 0.0);
        expected[(1, 1)] = Complex64::new(0.125, 0.0);
        expected[(7, 7)] = Complex64::new(0.5, 0.0);
        let f1 = 0.5 * FRAC_PI_6.cos();
        expected[(0, 7)] = Complex64::new(f1, 0.0);
        expected[(7, 0)] = Complex64::new(f1, 0.0);
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-15);
        assert!((f1 - 0.4330127018922193).abs() < 1e-15);
    }

    #[test]
    fn case_two_accessible_reduced_state() {
        let rho =
            scenario_reduced_state(ghz(FRAC_1_SQRT_2), beta(FRAC_PI_6), Scenario::ABiCi).unwrap();
        let m = rho.matrix();
        let re = |r, c| m[(r, c)].re;
        assert!((re(0, 0) - 0.28125).abs() < 1e-15);
        assert!((re(1, 1) - 0.09375).abs() < 1e-15);
        assert!((re(2, 2) - 0.09375).abs() < 1e-15);
        assert!((re(3, 3) - 0.03125).abs() < 1e-15);
        assert!((re(7, 7) - 0.5).abs() < 1e-15);
        assert!((re(0, 7) - 0.375).abs() < 1e-15);
    }

    #[test]
    fn no_acceleration_gives_pure_ghz() {
        let rho = scenario_reduced_state(ghz(FRAC_1_SQRT_2), beta(0.0), Scenario::AbcI).unwrap();
        let pure = DensityOperator::from_pure(&build_ghz(ghz(FRAC_1_SQRT_2)));
        assert!(rho.matrix().max_abs_diff(pure.matrix()) < 1e-15);
        assert_eq!(rho.matrix()[(1, 1)].norm(), 0.0);
    }

    #[test]
    fn scenario_names_round_trip() {
        for s in Scenario::ALL {
            assert_eq!(s.name().parse::<Scenario>().unwrap(), s);
        }
        assert_eq!(
            "caseii/ab_i c_i".parse::<Scenario>().unwrap(),
            Scenario::ABiCi
        );
        assert!("ABC".parse::<Scenario>().is_err());
    }

    #[test]
    fn swap_is_involution() {
        for s in Scenario::ALL {
            assert_eq!(s.bob_charlie_swap().bob_charlie_swap(), s);
            assert_eq!(s.bob_charlie_swap().case(), s.case());
        }
    }
}
