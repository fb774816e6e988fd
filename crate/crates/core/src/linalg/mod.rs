//! Dense complex linear algebra: matrices, state vectors, density operators,
//! the Hermitian eigensolver, the trace norm and the computational-basis
//! dephasing map.

mod eigen;
mod matrix;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use eigen::{hermitian_eig, hermitian_eig_with_tol, hermitian_eigenvalues, HermitianEigen};
pub use matrix::ComplexMatrix;

use crate::error::{Error, Result};

/// Default validation tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Normalized vector of complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::with_tol(amplitudes, DEFAULT_TOL)
    }

    pub fn with_tol(amplitudes: Vec<Complex64>, tol: f64) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Shape(
                "state vector must have at least one amplitude".into(),
            ));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr.is_nan() || (norm_sqr - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if amplitudes.is_empty() || norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized {
                norm_sqr: norm * norm,
            });
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub(crate) fn from_raw(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    /// Computational basis state `|index>`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    /// Equal-weight superposition of all basis states with zero phases.
    pub fn uniform(dim: usize) -> Self {
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Self {
            amplitudes: vec![a; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|self><self|`
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }
}

impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.amplitudes.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<[f64; 2]> = Vec::deserialize(deserializer)?;
        StateVector::new(
            pairs
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
        .map_err(D::Error::custom)
    }
}

/// Positive semidefinite, unit-trace Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tol(matrix, DEFAULT_TOL)
    }

    pub fn with_tol(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        validate_density(&matrix, tol)?;
        Ok(Self { matrix })
    }

    /// Skips validation. Only for outputs of maps proven to preserve states.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn pure(state: &StateVector) -> Self {
        Self {
            matrix: state.projector(),
        }
    }

    /// `I / N`
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `Tr[rho^2]`
    pub fn purity(&self) -> f64 {
        self.matrix.matmul(&self.matrix).trace().re
    }

    /// Convex combination `a * self + (1 - a) * other`.
    pub fn mix(&self, other: &Self, a: f64) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::InvalidParameter(format!(
                "mixing weight {a} outside [0, 1]"
            )));
        }
        Ok(Self {
            matrix: &self.matrix.scale(a) + &other.matrix.scale(1.0 - a),
        })
    }
}

impl Serialize for DensityOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DensityOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let m = ComplexMatrix::deserialize(deserializer)?;
        DensityOperator::new(m).map_err(D::Error::custom)
    }
}

fn validate_density(m: &ComplexMatrix, tol: f64) -> Result<()> {
    let max_asymmetry = m.hermitian_defect();
    if max_asymmetry.is_nan() || max_asymmetry > tol {
        return Err(Error::NotHermitian { max_asymmetry });
    }
    let trace = m.trace().re;
    if trace.is_nan() || (trace - 1.0).abs() > tol {
        return Err(Error::TraceNotUnit { trace });
    }
    let min_eigenvalue = if m.is_diagonal() {
        m.diagonal()
            .iter()
            .map(|z| z.re)
            .fold(f64::INFINITY, f64::min)
    } else {
        *hermitian_eig_with_tol(m, tol)?
            .eigenvalues
            .last()
            .expect("dimension is at least 1")
    };
    if min_eigenvalue < -tol {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    Ok(())
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Sum of singular values.
///
/// Hermitian inputs (within [`DEFAULT_TOL`]) use `sum |lambda_i|`; anything else
/// goes through the eigenvalues of `A^dagger A`.
pub fn trace_norm(a: &ComplexMatrix) -> f64 {
    if a.is_hermitian(DEFAULT_TOL) {
        if a.is_diagonal() {
            return a.diagonal().iter().map(|z| z.re.abs()).sum();
        }
        let e = hermitian_eig_with_tol(a, DEFAULT_TOL).expect("checked Hermitian");
        e.eigenvalues.iter().map(|l| l.abs()).sum()
    } else {
        let gram = a.adjoint().matmul(a);
        let e = hermitian_eig_with_tol(&gram, f64::INFINITY).expect("Gram matrix is Hermitian");
        e.eigenvalues.iter().map(|l| l.max(0.0).sqrt()).sum()
    }
}

/// `sum_x P_x rho P_x`: the computational-basis diagonal of `rho`.
pub fn dephase(rho: &DensityOperator) -> DensityOperator {
    DensityOperator::from_trusted(rho.matrix().diagonal_part())
}
