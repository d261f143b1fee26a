//! Dense complex linear algebra over labeled qubit registers.
//!
//! Basis ordering is big-endian over the register: the first mode is the most
//! significant bit, so a three-mode register enumerates `|000⟩, |001⟩, …, |111⟩`.

use std::fmt;
use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest register handled by the dense kernels (128 x 128 operators).
pub const MAX_MODES: usize = 7;

const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModeLabel {
    A,
    B,
    C,
    #[serde(rename = "B_I")]
    BI,
    #[serde(rename = "B_II")]
    BII,
    #[serde(rename = "C_I")]
    CI,
    #[serde(rename = "C_II")]
    CII,
}

impl ModeLabel {
    /// The (region I, region II) pair an inertial mode splits into, if any.
    pub fn rindler_pair(self) -> Option<(ModeLabel, ModeLabel)> {
        match self {
            ModeLabel::B => Some((ModeLabel::BI, ModeLabel::BII)),
            ModeLabel::C => Some((ModeLabel::CI, ModeLabel::CII)),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModeLabel::A => "A",
            ModeLabel::B => "B",
            ModeLabel::C => "C",
            ModeLabel::BI => "B_I",
            ModeLabel::BII => "B_II",
            ModeLabel::CI => "C_I",
            ModeLabel::CII => "C_II",
        }
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ordered, duplicate-free list of modes fixing the tensor-factor order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModeRegister {
    modes: Vec<ModeLabel>,
}

impl ModeRegister {
    pub fn new(modes: Vec<ModeLabel>) -> Result<Self> {
        if modes.len() > MAX_MODES {
            return Err(Error::Size {
                modes: modes.len(),
                max: MAX_MODES,
            });
        }
        for (i, m) in modes.iter().enumerate() {
            if modes[..i].contains(m) {
                return Err(Error::Label(format!("duplicate mode {m} in register")));
            }
        }
        Ok(Self { modes })
    }

    pub fn modes(&self) -> &[ModeLabel] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn dim(&self) -> usize {
        1 << self.modes.len()
    }

    pub fn position(&self, label: ModeLabel) -> Option<usize> {
        self.modes.iter().position(|&m| m == label)
    }

    pub fn contains(&self, label: ModeLabel) -> bool {
        self.position(label).is_some()
    }

    /// Bit mask selecting `label` inside a basis index.
    pub fn bit(&self, label: ModeLabel) -> Option<usize> {
        self.position(label)
            .map(|pos| 1 << (self.modes.len() - 1 - pos))
    }

    /// Concatenation `self ⊗ other`.
    pub fn join(&self, other: &ModeRegister) -> Result<ModeRegister> {
        let mut modes = self.modes.clone();
        modes.extend_from_slice(&other.modes);
        ModeRegister::new(modes)
    }
}

impl fmt::Display for ModeRegister {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.modes {
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major real entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Parameter(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(Self {
            dim,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        })
    }

    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::Parameter(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    /// Outer product `|v⟩⟨v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for (i, a) in v.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                m[(i, j)] = a * b.conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for (k, a) in row.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `self · rho · self†`.
    pub fn sandwich(&self, rho: &CMatrix) -> CMatrix {
        self.matmul(rho).matmul(&self.adjoint())
    }

    pub fn add_assign(&mut self, rhs: &CMatrix) {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }

    pub fn scaled(&self, s: f64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// `½(M + M†)`.
    pub fn hermitized(&self) -> CMatrix {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        out
    }

    /// Largest elementwise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "comparison dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest elementwise deviation from Hermiticity.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let h = self.hermitized();
        let m = DMatrix::from_row_slice(self.dim, self.dim, &h.data);
        let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

/// Kronecker product with `a` as the more significant factor.
pub fn tensor_product(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    for m in [a, b] {
        if !m.dim.is_power_of_two() {
            return Err(Error::Parameter(format!(
                "dimension {} is not a power of two",
                m.dim
            )));
        }
    }
    let dim = a.dim * b.dim;
    let modes = dim.trailing_zeros() as usize;
    if modes > MAX_MODES {
        return Err(Error::Size {
            modes,
            max: MAX_MODES,
        });
    }
    let mut out = CMatrix::zeros(dim);
    for ar in 0..a.dim {
        for ac in 0..a.dim {
            let x = a[(ar, ac)];
            if x.re == 0.0 && x.im == 0.0 {
                continue;
            }
            for br in 0..b.dim {
                for bc in 0..b.dim {
                    out[(ar * b.dim + br, ac * b.dim + bc)] = x * b[(br, bc)];
                }
            }
        }
    }
    Ok(out)
}

/// Normalized pure state over a register.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    register: ModeRegister,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(register: ModeRegister, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != register.dim() {
            return Err(Error::Parameter(format!(
                "register {register} needs {} amplitudes, got {}",
                register.dim(),
                amplitudes.len()
            )));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Parameter(format!(
                "state norm² is {norm}, expected 1"
            )));
        }
        Ok(Self {
            register,
            amplitudes,
        })
    }

    /// Builds a state from `(bitstring, amplitude)` terms; unlisted strings are zero.
    pub fn from_terms(register: ModeRegister, terms: &[(&str, Complex64)]) -> Result<Self> {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); register.dim()];
        for &(bits, amp) in terms {
            let idx = basis_index(&register, bits)?;
            amplitudes[idx] += amp;
        }
        Self::new(register, amplitudes)
    }

    pub fn register(&self) -> &ModeRegister {
        &self.register
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, bits: &str) -> Result<Complex64> {
        Ok(self.amplitudes[basis_index(&self.register, bits)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub(crate) fn from_parts_unchecked(register: ModeRegister, amplitudes: Vec<Complex64>) -> Self {
        Self {
            register,
            amplitudes,
        }
    }
}

fn basis_index(register: &ModeRegister, bits: &str) -> Result<usize> {
    if bits.len() != register.len() {
        return Err(Error::Parameter(format!(
            "bitstring {bits:?} does not match register {register}"
        )));
    }
    bits.chars().try_fold(0usize, |acc, ch| match ch {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::Parameter(format!("invalid bit {ch:?} in {bits:?}"))),
    })
}

/// Dense operator tagged with its register. Construction only checks the
/// shape; use [`validate_density`] for the physical invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    register: ModeRegister,
    matrix: CMatrix,
}

impl DensityOperator {
    pub fn new(register: ModeRegister, matrix: CMatrix) -> Result<Self> {
        if matrix.dim() != register.dim() {
            return Err(Error::Parameter(format!(
                "register {register} needs a {0}x{0} matrix, got {1}x{1}",
                register.dim(),
                matrix.dim()
            )));
        }
        Ok(Self { register, matrix })
    }

    pub fn from_pure(state: &PureState) -> Self {
        Self {
            register: state.register.clone(),
            matrix: CMatrix::outer(&state.amplitudes),
        }
    }

    pub fn register(&self) -> &ModeRegister {
        &self.register
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// `self ⊗ other` with concatenated registers.
    pub fn tensor(&self, other: &DensityOperator) -> Result<DensityOperator> {
        let register = self.register.join(&other.register)?;
        let matrix = tensor_product(&self.matrix, &other.matrix)?;
        Ok(DensityOperator { register, matrix })
    }
}

/// Traces out every mode not in `keep`. The result keeps the original mode order.
pub fn partial_trace(rho: &DensityOperator, keep: &[ModeLabel]) -> Result<DensityOperator> {
    if keep.is_empty() {
        return Err(Error::Parameter(
            "partial trace must keep at least one mode".into(),
        ));
    }
    let reg = rho.register();
    if let Some(&missing) = keep.iter().find(|&&m| !reg.contains(m)) {
        return Err(Error::Label(format!(
            "mode {missing} not in register {reg}"
        )));
    }

    let n = reg.len();
    let mut kept_bits = Vec::new();
    let mut traced_bits = Vec::new();
    let mut kept_modes = Vec::new();
    for (pos, &m) in reg.modes().iter().enumerate() {
        let bit = 1usize << (n - 1 - pos);
        if keep.contains(&m) {
            kept_bits.push(bit);
            kept_modes.push(m);
        } else {
            traced_bits.push(bit);
        }
    }
    let out_reg = ModeRegister::new(kept_modes)?;

    // Scatter a compact index into the full index space, most significant first.
    let scatter = |compact: usize, bits: &[usize]| -> usize {
        let k = bits.len();
        bits.iter()
            .enumerate()
            .filter(|&(i, _)| compact & (1 << (k - 1 - i)) != 0)
            .fold(0, |acc, (_, &b)| acc | b)
    };
    let kept_idx: Vec<usize> = (0..1 << kept_bits.len())
        .map(|c| scatter(c, &kept_bits))
        .collect();
    let traced_idx: Vec<usize> = (0..1 << traced_bits.len())
        .map(|c| scatter(c, &traced_bits))
        .collect();

    let m = rho.matrix();
    let out_dim = kept_idx.len();
    let mut out = CMatrix::zeros(out_dim);
    for (r, &kr) in kept_idx.iter().enumerate() {
        for (c, &kc) in kept_idx.iter().enumerate() {
            out[(r, c)] = traced_idx.iter().map(|&t| m[(kr | t, kc | t)]).sum();
        }
    }
    DensityOperator::new(out_reg, out)
}

/// Outcome of checking Hermiticity, unit trace and positivity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationReport {
    pub hermiticity_deviation: f64,
    pub trace_deviation: f64,
    pub min_eigenvalue: f64,
    pub tol: f64,
    pub hermitian: bool,
    pub unit_trace: bool,
    pub positive: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.hermitian && self.unit_trace && self.positive
    }
}

/// Positivity is judged against `-POSITIVITY_TOL` independently of `tol`.
pub const POSITIVITY_TOL: f64 = 1e-10;

pub fn validate_density(rho: &DensityOperator, tol: f64) -> ValidationReport {
    let m = rho.matrix();
    let hermiticity_deviation = m.hermiticity_deviation();
    let trace_deviation = (m.trace() - Complex64::new(1.0, 0.0)).norm();
    let min_eigenvalue = m
        .hermitian_eigenvalues()
        .first()
        .copied()
        .unwrap_or(f64::NAN);
    ValidationReport {
        hermiticity_deviation,
        trace_deviation,
        min_eigenvalue,
        tol,
        hermitian: hermiticity_deviation <= tol,
        unit_trace: trace_deviation <= tol,
        positive: min_eigenvalue >= -POSITIVITY_TOL.max(tol),
    }
}
