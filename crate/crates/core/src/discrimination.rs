//! Minimum-error discrimination between the constant-class and
//! balanced-class channel outputs.
//!
//! With priors `p_const`, `p_bal` and a two-outcome POVM the error
//! probability is
//!
//! ```text
//! p_error = p_const Tr[rho_bal pi_const] + p_bal Tr[rho_const pi_bal]
//! ```
//!
//! and its minimum over all POVMs is `(1 - || p_const rho_const - p_bal rho_bal ||_1) / 2`.
//! The priors in the first expression are kept exactly as written, with
//! `p_const` weighting the `rho_bal` term. The two expressions therefore
//! coincide for equal priors only; for unequal priors the minimum of
//! [`povm_error`] is `(1 - || p_bal rho_const - p_const rho_bal ||_1) / 2`.
//! The error vanishes exactly when the initial state is a pure state whose
//! computational-basis amplitudes all have magnitude `1/sqrt(N)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::channels::{channel_balanced_closed, channel_constant};
use crate::error::{Error, Result};
use crate::linalg::{
    check_dim, dephase, hermitian_eig, hermitian_eigenvalues, trace_norm, ComplexMatrix,
    DensityOperator, StateVector, DEFAULT_TOL,
};
use crate::oracle::{apply_oracle_density, FunctionClass, OracleFunction};

/// Eigenvalues above this count toward the rank of the initial state.
pub const RANK_TOL: f64 = 1e-9;

/// Eigenvalues of `p_const rho_const - p_bal rho_bal` at or above `-ZERO_EIGEN_TOL`
/// are assigned to `pi_const`.
pub const ZERO_EIGEN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct DiscriminationProblem {
    pub rho_const: DensityOperator,
    pub rho_bal: DensityOperator,
    pub p_const: f64,
    pub p_bal: f64,
}

impl DiscriminationProblem {
    pub fn new(
        rho_const: DensityOperator,
        rho_bal: DensityOperator,
        p_const: f64,
        p_bal: f64,
    ) -> Result<Self> {
        check_dim(rho_const.dim(), rho_bal.dim())?;
        if !(p_const >= 0.0 && p_bal >= 0.0) || (p_const + p_bal - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::InvalidParameter(format!(
                "priors ({p_const}, {p_bal}) are not a probability distribution"
            )));
        }
        Ok(Self {
            rho_const,
            rho_bal,
            p_const,
            p_bal,
        })
    }

    /// Sends `rho0` through both class channels (balanced in closed form).
    pub fn from_initial_state(rho0: &DensityOperator, p_const: f64, p_bal: f64) -> Result<Self> {
        Self::new(
            channel_constant(rho0),
            channel_balanced_closed(rho0)?,
            p_const,
            p_bal,
        )
    }

    pub fn dim(&self) -> usize {
        self.rho_const.dim()
    }

    /// `p_const rho_const - p_bal rho_bal`
    pub fn helstrom_operator(&self) -> ComplexMatrix {
        &self.rho_const.matrix().scale(self.p_const) - &self.rho_bal.matrix().scale(self.p_bal)
    }
}

/// Two-outcome POVM `{pi_const, pi_bal}`.
#[derive(Debug, Clone, Serialize)]
pub struct Povm2 {
    pub pi_const: ComplexMatrix,
    pub pi_bal: ComplexMatrix,
}

impl Povm2 {
    pub fn new(pi_const: ComplexMatrix, pi_bal: ComplexMatrix) -> Result<Self> {
        Self::with_tol(pi_const, pi_bal, DEFAULT_TOL)
    }

    pub fn with_tol(pi_const: ComplexMatrix, pi_bal: ComplexMatrix, tol: f64) -> Result<Self> {
        check_dim(pi_const.dim(), pi_bal.dim())?;
        for (name, e) in [("pi_const", &pi_const), ("pi_bal", &pi_bal)] {
            let ev = hermitian_eigenvalues(e)
                .map_err(|err| Error::PovmElement(format!("{name}: {err}")))?;
            let (hi, lo) = (ev[0], ev[ev.len() - 1]);
            if lo < -tol || hi > 1.0 + tol {
                return Err(Error::PovmElement(format!(
                    "{name} has eigenvalues outside [0, 1]: [{lo}, {hi}]"
                )));
            }
        }
        let residual = (&pi_const + &pi_bal).max_abs_diff(&ComplexMatrix::identity(pi_const.dim()));
        if residual > tol {
            return Err(Error::PovmIncomplete { residual });
        }
        Ok(Self { pi_const, pi_bal })
    }

    /// `{P, I - P}` for a projector or effect `P`.
    pub fn from_const_effect(pi_const: ComplexMatrix) -> Result<Self> {
        let pi_bal = &ComplexMatrix::identity(pi_const.dim()) - &pi_const;
        Self::new(pi_const, pi_bal)
    }

    pub fn dim(&self) -> usize {
        self.pi_const.dim()
    }
}

/// `Tr[A B]`
fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    let n = a.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Minimum error probability over all two-outcome measurements.
pub fn helstrom_error(prob: &DiscriminationProblem) -> f64 {
    let norm = trace_norm(&prob.helstrom_operator());
    (0.5 * (1.0 - norm)).clamp(0.0, 0.5)
}

/// Error probability of a given POVM, `p_const Tr[rho_bal pi_const] + p_bal Tr[rho_const pi_bal]`.
pub fn povm_error(prob: &DiscriminationProblem, povm: &Povm2) -> Result<f64> {
    check_dim(prob.dim(), povm.dim())?;
    let wrong_const = trace_product(prob.rho_bal.matrix(), &povm.pi_const).re;
    let wrong_bal = trace_product(prob.rho_const.matrix(), &povm.pi_bal).re;
    Ok(prob.p_const * wrong_const + prob.p_bal * wrong_bal)
}

/// Measurement achieving the minimum error: `pi_const` projects onto the
/// nonnegative eigenspace of `p_const rho_const - p_bal rho_bal`.
pub fn helstrom_povm(prob: &DiscriminationProblem) -> Povm2 {
    let delta = prob.helstrom_operator();
    let eig = hermitian_eig(&delta).expect("difference of Hermitian operators");
    let dim = prob.dim();
    let mut pi_const = ComplexMatrix::zeros(dim);
    for (lambda, v) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
        if *lambda >= -ZERO_EIGEN_TOL {
            pi_const = &pi_const + &v.projector();
        }
    }
    let pi_bal = &ComplexMatrix::identity(dim) - &pi_const;
    Povm2 { pi_const, pi_bal }
}

/// `{|psi><psi|, I - |psi><psi|}`, the certainty measurement for an optimal pure state.
pub fn pure_state_povm(psi: &StateVector) -> Povm2 {
    let p = psi.projector();
    let pi_bal = &ComplexMatrix::identity(psi.dim()) - &p;
    Povm2 {
        pi_const: p,
        pi_bal,
    }
}

/// True iff `a b = b a = 0` entrywise within the default tolerance.
pub fn orthogonal_support(a: &DensityOperator, b: &DensityOperator) -> bool {
    orthogonal_support_with_tol(a, b, DEFAULT_TOL)
}

pub fn orthogonal_support_with_tol(a: &DensityOperator, b: &DensityOperator, tol: f64) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    a.matrix().matmul(b.matrix()).max_abs() <= tol && b.matrix().matmul(a.matrix()).max_abs() <= tol
}

/// Spectral data of the initial state used by the certainty analysis.
#[derive(Debug, Clone, Serialize)]
pub struct EigenSummary {
    /// Number of eigenvalues of `rho0` above [`RANK_TOL`].
    pub rank: usize,
    /// The nonzero eigenvalues `r_j`, descending.
    pub r: Vec<f64>,
    /// `lambda_j = <phi_j| dephase(rho0) |phi_j>` on the same eigenvectors.
    pub lambda: Vec<f64>,
    /// `max_j |lambda_j - r_j / N|`
    pub lambda_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertaintyReport {
    /// `max |[rho0, Lambda]|`
    pub commutator_norm: f64,
    /// `max |N Lambda rho0 - rho0^2|`
    pub cond2_residual: f64,
    pub certain: bool,
    pub eigen_summary: EigenSummary,
}

/// Checks `[rho0, Lambda] = 0` and `N Lambda rho0 = rho0^2` with
/// `Lambda = dephase(rho0)`.
pub fn certainty_conditions(rho0: &DensityOperator) -> CertaintyReport {
    certainty_conditions_with_tol(rho0, DEFAULT_TOL)
}

pub fn certainty_conditions_with_tol(rho0: &DensityOperator, tol: f64) -> CertaintyReport {
    let dim = rho0.dim();
    let rho = rho0.matrix();
    let lambda_op = dephase(rho0);
    let lam = lambda_op.matrix();

    let commutator_norm = rho.commutator(lam).max_abs();
    let cond2_residual = (&lam.matmul(rho).scale(dim as f64) - &rho.matmul(rho)).max_abs();

    let eig = hermitian_eig(rho).expect("density operators are Hermitian");
    let rank = eig.eigenvalues.iter().filter(|&&l| l > RANK_TOL).count();
    let r: Vec<f64> = eig.eigenvalues[..rank].to_vec();
    let lambda: Vec<f64> = eig.eigenvectors[..rank]
        .iter()
        .map(|phi| {
            phi.amplitudes()
                .iter()
                .enumerate()
                .map(|(x, a)| a.norm_sqr() * lam[(x, x)].re)
                .sum()
        })
        .collect();
    let lambda_residual = r
        .iter()
        .zip(&lambda)
        .map(|(rj, lj)| (lj - rj / dim as f64).abs())
        .fold(0.0, f64::max);

    CertaintyReport {
        commutator_norm,
        cond2_residual,
        certain: commutator_norm <= tol && cond2_residual <= tol,
        eigen_summary: EigenSummary {
            rank,
            r,
            lambda,
            lambda_residual,
        },
    }
}

/// `(1/sqrt N) sum_x e^{i theta_x} |x>`
pub fn optimal_state(n: u32, phases: &[f64]) -> Result<StateVector> {
    if n == 0 || n > crate::oracle::MAX_TABLE_QUBITS {
        return Err(Error::InvalidParameter(format!(
            "unsupported qubit count {n}"
        )));
    }
    let dim = 1usize << n;
    check_dim(dim, phases.len())?;
    let amp = 1.0 / (dim as f64).sqrt();
    StateVector::new(
        phases
            .iter()
            .map(|&t| Complex64::from_polar(amp, t))
            .collect(),
    )
}

/// `sum_x |phi(x)|^4`, which is at least `1/N` for any normalized state.
pub fn fourth_moment(state: &StateVector) -> f64 {
    state
        .amplitudes()
        .iter()
        .map(|a| a.norm_sqr().powi(2))
        .sum()
}

/// Born probabilities of the two outcomes after one oracle call.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutcomeProbabilities {
    pub constant: f64,
    pub balanced: f64,
}

impl OutcomeProbabilities {
    /// Probability of the outcome matching `class`.
    pub fn correct_for(&self, class: FunctionClass) -> Option<f64> {
        match class {
            FunctionClass::Constant => Some(self.constant),
            FunctionClass::Balanced => Some(self.balanced),
            FunctionClass::Neither => None,
        }
    }
}

/// Applies `U_f` once to `rho0` and measures `povm`.
pub fn run_dj(
    rho0: &DensityOperator,
    f: &OracleFunction,
    povm: &Povm2,
) -> Result<OutcomeProbabilities> {
    if f.classify() == FunctionClass::Neither {
        return Err(Error::NotPromise);
    }
    check_dim(rho0.dim(), povm.dim())?;
    let rho_f = apply_oracle_density(f, rho0)?;
    Ok(OutcomeProbabilities {
        constant: trace_product(rho_f.matrix(), &povm.pi_const).re,
        balanced: trace_product(rho_f.matrix(), &povm.pi_bal).re,
    })
}
