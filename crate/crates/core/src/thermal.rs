//! High-temperature thermal initial states and the error bound they imply.
//!
//! With Zeeman terms only, the thermal state of `n` qubits is
//! `prod_i e^{-alpha_i sigma_z^(i)} / (2 cosh alpha_i)`, and to first order
//! `I/N - rho_dev` with the traceless deviation operator
//! `rho_dev = sum_i alpha_i sigma_z^(i) / N`. Qubit `i` (1-based) is bit
//! `i - 1` of the computational basis index.
//!
//! For any preparatory unitary and equal priors the discrimination error
//! satisfies
//!
//! ```text
//! p_error >= (1 - N/(N-1) ||rho_dev||_1) / 2 >= (1 - eps) / 2,   eps = N n alpha_1 / (N - 1)
//! ```

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityOperator};

/// Largest `n` for which dense `N x N` thermal matrices are built.
pub const EXPLICIT_CAP: u32 = 10;

/// Largest `n` for which the exact deviation norm enumerates `2^n` sign patterns.
pub const SIGN_PATTERN_CAP: u32 = 20;

/// Required value of `eps` for an ensemble advantage over classical sampling.
pub fn advantage_threshold() -> f64 {
    0.75_f64.sqrt()
}

/// Per-qubit polarizations `alpha_i = hbar omega_i / 2kT`.
///
/// Couplings `J_ij` (Hz) can be recorded but never enter any computation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThermalConfig {
    alphas: Vec<f64>,
    couplings: Option<Vec<Vec<f64>>>,
}

impl ThermalConfig {
    pub fn new(alphas: Vec<f64>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one qubit is required".into(),
            ));
        }
        if let Some(a) = alphas.iter().find(|a| !a.is_finite() || **a < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "polarization {a} must be finite and nonnegative"
            )));
        }
        Ok(Self {
            alphas,
            couplings: None,
        })
    }

    /// `n` qubits sharing polarization `alpha`.
    pub fn uniform(n: usize, alpha: f64) -> Result<Self> {
        Self::new(vec![alpha; n])
    }

    pub fn with_couplings(mut self, couplings: Vec<Vec<f64>>) -> Result<Self> {
        let n = self.n();
        if couplings.len() != n || couplings.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("couplings must be {n}x{n}")));
        }
        self.couplings = Some(couplings);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn couplings(&self) -> Option<&[Vec<f64>]> {
        self.couplings.as_deref()
    }

    /// Polarizations in descending order, so `sorted_desc()[0] = alpha_1`.
    pub fn sorted_desc(&self) -> Vec<f64> {
        let mut a = self.alphas.clone();
        a.sort_by(|x, y| y.total_cmp(x));
        a
    }

    pub fn alpha1(&self) -> f64 {
        self.alphas.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThermalMode {
    Linearized,
    Exact,
}

fn qubits_within(cfg: &ThermalConfig, cap: u32) -> Result<u32> {
    let n = cfg.n();
    if n > cap as usize {
        return Err(Error::Capacity {
            n: n as u32,
            cap,
            count: format!("2^{n} basis states"),
        });
    }
    Ok(n as u32)
}

/// Diagonal of `rho_dev`: entry `x` is `sum_i alpha_i (-1)^{x_i} / N`.
pub fn deviation_diagonal(cfg: &ThermalConfig) -> Result<Vec<f64>> {
    let n = qubits_within(cfg, SIGN_PATTERN_CAP)?;
    let dim = 1usize << n;
    Ok((0..dim)
        .map(|x| {
            cfg.alphas
                .iter()
                .enumerate()
                .map(|(i, a)| if x >> i & 1 == 0 { *a } else { -a })
                .sum::<f64>()
                / dim as f64
        })
        .collect())
}

/// `rho_dev` as a dense diagonal matrix (`n <= EXPLICIT_CAP`).
pub fn deviation_operator(cfg: &ThermalConfig) -> Result<ComplexMatrix> {
    qubits_within(cfg, EXPLICIT_CAP)?;
    Ok(ComplexMatrix::from_real_diagonal(&deviation_diagonal(cfg)?))
}

/// Thermal initial state, either `I/N - rho_dev` or the exact uncoupled
/// Boltzmann state.
pub fn thermal_state(cfg: &ThermalConfig, mode: ThermalMode) -> Result<DensityOperator> {
    let n = qubits_within(cfg, EXPLICIT_CAP)?;
    let dim = 1usize << n;
    let diag: Vec<f64> = match mode {
        ThermalMode::Linearized => {
            let n_alpha1 = cfg.n() as f64 * cfg.alpha1();
            if n_alpha1 >= 1.0 {
                return Err(Error::NotAState { n_alpha1 });
            }
            deviation_diagonal(cfg)?
                .into_iter()
                .map(|d| 1.0 / dim as f64 - d)
                .collect()
        }
        ThermalMode::Exact => (0..dim)
            .map(|x| {
                cfg.alphas
                    .iter()
                    .enumerate()
                    .map(|(i, a)| {
                        let s = if x >> i & 1 == 0 { 1.0 } else { -1.0 };
                        (-a * s).exp() / (2.0 * a.cosh())
                    })
                    .product()
            })
            .collect(),
    };
    DensityOperator::new(ComplexMatrix::from_real_diagonal(&diag))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeviationNorm {
    /// `sum over sign patterns |sum_i s_i alpha_i| / N`; `None` above [`SIGN_PATTERN_CAP`].
    pub exact: Option<f64>,
    /// `n alpha_1`
    pub bound: f64,
}

/// Trace norm of `rho_dev`, exactly where feasible, plus the bound `n alpha_1`.
pub fn deviation_trace_norm(cfg: &ThermalConfig) -> DeviationNorm {
    let bound = cfg.n() as f64 * cfg.alpha1();
    let exact = deviation_diagonal(cfg)
        .ok()
        .map(|d| d.iter().map(|v| v.abs()).sum());
    DeviationNorm { exact, bound }
}

/// `N / (N - 1)` for `N = 2^n`.
fn dimension_ratio(n: u64) -> f64 {
    let inv = 0.5_f64.powi(n.min(2048) as i32);
    1.0 / (1.0 - inv)
}

/// `eps = N n alpha_1 / (N - 1)`
pub fn epsilon(n: u64, alpha1: f64) -> f64 {
    dimension_ratio(n) * n as f64 * alpha1
}

/// `(1 - eps) / 2`, clamped to `[0, 1/2]`.
pub fn p_error_lower_from_epsilon(eps: f64) -> f64 {
    (0.5 * (1.0 - eps)).clamp(0.0, 0.5)
}

/// Minimum qubit count for an ensemble advantage, or `Overflow` when it does
/// not fit in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitRequirement {
    Qubits(u64),
    Overflow,
}

impl Serialize for QubitRequirement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            QubitRequirement::Qubits(n) => serializer.serialize_u64(*n),
            QubitRequirement::Overflow => serializer.serialize_str("overflow"),
        }
    }
}

/// Smallest `n` with `n > sqrt(3/4) (N-1)/N / alpha_1`.
pub fn min_qubits_for_advantage(alpha1: f64) -> Result<QubitRequirement> {
    if !(alpha1.is_finite() && alpha1 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha1 must be positive and finite, got {alpha1}"
        )));
    }
    let c = advantage_threshold();
    for n in 1..=64u64 {
        if n as f64 > c / (dimension_ratio(n) * alpha1) {
            return Ok(QubitRequirement::Qubits(n));
        }
    }
    // (N-1)/N is exactly 1 in f64 from here on
    let limit = c / alpha1;
    if limit >= u64::MAX as f64 {
        return Ok(QubitRequirement::Overflow);
    }
    Ok(QubitRequirement::Qubits(limit.floor() as u64 + 1))
}

#[derive(Debug, Clone, Serialize)]
pub struct ThermalBoundReport {
    pub n: usize,
    pub alpha1: f64,
    pub dev_trace_norm_exact: Option<f64>,
    /// `n alpha_1`
    pub dev_trace_norm_bound: f64,
    pub epsilon: f64,
    /// `(1 - eps) / 2`, clamped at 0.
    pub p_error_lower: f64,
    /// `(1 - N/(N-1) ||rho_dev||_1) / 2`, when the exact norm is available.
    pub p_error_lower_exact: Option<f64>,
    pub advantage: bool,
    pub n_required: QubitRequirement,
    pub couplings_ignored: bool,
}

/// Lower bound on the equal-prior discrimination error for thermal inputs.
pub fn error_lower_bound(cfg: &ThermalConfig) -> ThermalBoundReport {
    let n = cfg.n();
    let alpha1 = cfg.alpha1();
    let norm = deviation_trace_norm(cfg);
    let eps = epsilon(n as u64, alpha1);
    let ratio = dimension_ratio(n as u64);
    let n_required = if alpha1 > 0.0 {
        min_qubits_for_advantage(alpha1).expect("alpha1 is positive")
    } else {
        QubitRequirement::Overflow
    };
    ThermalBoundReport {
        n,
        alpha1,
        dev_trace_norm_exact: norm.exact,
        dev_trace_norm_bound: norm.bound,
        epsilon: eps,
        p_error_lower: p_error_lower_from_epsilon(eps),
        p_error_lower_exact: norm
            .exact
            .map(|e| (0.5 * (1.0 - ratio * e)).clamp(0.0, 0.5)),
        advantage: eps > advantage_threshold(),
        n_required,
        couplings_ignored: cfg.couplings.is_some(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: u64,
    pub epsilon: f64,
    pub p_error_lower: f64,
    pub advantage: bool,
}

/// `eps` and the error bound for `n = start, start + step, ...` up to `end`
/// inclusive, with every qubit at polarization `alpha1`.
pub fn sweep(alpha1: f64, start: u64, end: u64, step: u64) -> Result<Vec<SweepRow>> {
    if !(alpha1.is_finite() && alpha1 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha1 must be positive and finite, got {alpha1}"
        )));
    }
    if start == 0 || step == 0 || start > end {
        return Err(Error::InvalidParameter(format!(
            "invalid sweep range {start}:{end}:{step}"
        )));
    }
    Ok((start..=end)
        .step_by(step as usize)
        .map(|n| {
            let eps = epsilon(n, alpha1);
            SweepRow {
                n,
                epsilon: eps,
                p_error_lower: p_error_lower_from_epsilon(eps),
                advantage: eps > advantage_threshold(),
            }
        })
        .collect())
}
