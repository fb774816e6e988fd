//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Each rotation first removes the phase of the pivot `A[p][q]` with a
//! diagonal unitary and then applies a real Givens rotation that annihilates
//! it. Sweeps repeat until the off-diagonal Frobenius mass is negligible
//! relative to the whole matrix. At the sizes used here (N <= 16 for every
//! discrimination path) this converges in well under ten sweeps.

use num_complex::Complex64;

use super::{ComplexMatrix, StateVector, DEFAULT_TOL};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (descending) with their orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<StateVector>,
}

impl HermitianEigen {
    /// `sum_j lambda_j |v_j><v_j|`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let dim = self.eigenvalues.len();
        let mut out = ComplexMatrix::zeros(dim);
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            out = &out + &v.projector().scale(*lambda);
        }
        out
    }
}

/// Eigendecomposition of a Hermitian matrix, validated at the default tolerance.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEigen> {
    hermitian_eig_with_tol(a, DEFAULT_TOL)
}

pub fn hermitian_eig_with_tol(a: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    let max_asymmetry = a.hermitian_defect();
    if max_asymmetry > tol {
        return Err(Error::NotHermitian { max_asymmetry });
    }
    let (values, vectors) = jacobi(a);
    Ok(sorted(values, vectors))
}

/// Eigenvalues only, descending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eig(a).map(|e| e.eigenvalues)
}

/// Runs the sweeps on the Hermitian part of `a`. Returns the diagonal and the
/// accumulated rotation matrix whose columns are the eigenvectors.
fn jacobi(a: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = a.dim();
    // symmetrize so tiny input asymmetries do not stall convergence
    let mut m = (a + &a.adjoint()).scale(0.5);
    let mut v = ComplexMatrix::identity(n);

    if m.is_diagonal() {
        return ((0..n).map(|i| m[(i, i)].re).collect(), v);
    }

    let total: f64 = m.as_slice().iter().map(|z| z.norm_sqr()).sum();
    let scale = f64::EPSILON * n as f64;
    let threshold = scale * scale * total.max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum();
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    ((0..n).map(|i| m[(i, i)].re).collect(), v)
}

fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // phase that makes the pivot real
    let phase = (apq / mag).conj();

    // J restricted to (p, q): [[c, s], [-s * phase, c * phase]]
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = phase * (-s);
    let jqq = phase * c;

    let n = m.dim();
    // M <- M J (columns p, q)
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * jpp + mkq * jqp;
        m[(k, q)] = mkp * jpq + mkq * jqq;
    }
    // M <- J^dagger M (rows p, q)
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = jpp.conj() * mpk + jqp.conj() * mqk;
        m[(q, k)] = jpq.conj() * mpk + jqq.conj() * mqk;
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)].im = 0.0;
    m[(q, q)].im = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

fn sorted(values: Vec<f64>, vectors: ComplexMatrix) -> HermitianEigen {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let eigenvalues = order.iter().map(|&j| values[j]).collect();
    let eigenvectors = order
        .iter()
        .map(|&j| StateVector::from_raw((0..n).map(|i| vectors[(i, j)]).collect()))
        .collect();
    HermitianEigen {
        eigenvalues,
        eigenvectors,
    }
}
