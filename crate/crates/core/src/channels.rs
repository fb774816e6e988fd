//! Class-averaged oracle channels `rho -> sum_f p_f U_f rho U_f^dagger`.
//!
//! Constant functions act trivially. For balanced functions with uniform
//! weights the enumeration collapses to
//!
//! ```text
//! rho_bal = (N * dephase(rho) - rho) / (N - 1)
//! ```
//!
//! i.e. the diagonal survives and every coherence is scaled by `-1/(N-1)`.
//! The brute-force path enumerates every balanced function instead and is
//! the only path that accepts non-uniform weights.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityOperator, DEFAULT_TOL};
use crate::oracle::{balanced_count, BalancedFunctions, DEFAULT_ENUMERATION_CAP};

/// Functions per parallel work unit. Fixed so that the summation order, and
/// therefore the result, never depends on the thread count.
const CHUNK: u128 = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelMethod {
    Closed,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Weights {
    /// `p_f = 1/B`
    Uniform {
        probability: f64,
    },
    Custom {
        min: f64,
        max: f64,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ChannelReport {
    pub output: DensityOperator,
    pub method: ChannelMethod,
    pub functions_used: u128,
    pub weights: Weights,
}

/// Output of the constant-class channel, which is `rho` itself.
pub fn channel_constant(rho: &DensityOperator) -> DensityOperator {
    rho.clone()
}

fn qubits_of(dim: usize) -> Result<u32> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::Shape(format!(
            "oracle channels need dimension 2^n with n >= 1, got {dim}"
        )));
    }
    Ok(dim.trailing_zeros())
}

/// Closed form of the uniformly weighted balanced channel.
pub fn channel_balanced_closed(rho: &DensityOperator) -> Result<DensityOperator> {
    let dim = rho.dim();
    qubits_of(dim)?;
    let factor = -1.0 / (dim as f64 - 1.0);
    let mut out = rho.matrix().clone();
    for x in 0..dim {
        for y in 0..dim {
            if x != y {
                out[(x, y)] *= factor;
            }
        }
    }
    Ok(DensityOperator::from_trusted(out))
}

pub fn channel_balanced_closed_report(rho: &DensityOperator) -> Result<ChannelReport> {
    let n = qubits_of(rho.dim())?;
    let b = balanced_count(n).unwrap_or(u128::MAX);
    Ok(ChannelReport {
        output: channel_balanced_closed(rho)?,
        method: ChannelMethod::Closed,
        functions_used: b,
        weights: Weights::Uniform {
            probability: 1.0 / b as f64,
        },
    })
}

/// Balanced channel by explicit enumeration at `n <= DEFAULT_ENUMERATION_CAP`.
///
/// `weights`, when given, holds one probability per balanced function in
/// enumeration order.
pub fn channel_balanced_bruteforce(
    rho: &DensityOperator,
    weights: Option<&[f64]>,
) -> Result<ChannelReport> {
    channel_balanced_bruteforce_with_cap(rho, weights, DEFAULT_ENUMERATION_CAP)
}

pub fn channel_balanced_bruteforce_with_cap(
    rho: &DensityOperator,
    weights: Option<&[f64]>,
    cap: u32,
) -> Result<ChannelReport> {
    let n = qubits_of(rho.dim())?;
    // validates the cap before any counting
    BalancedFunctions::starting_at(n, 0, cap)?;
    let b = balanced_count(n).expect("within cap");

    let weights_desc = match weights {
        None => Weights::Uniform {
            probability: 1.0 / b as f64,
        },
        Some(w) => validate_weights(w, b)?,
    };

    let chunks = b.div_ceil(CHUNK);
    let partials: Vec<Accumulator> = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<Accumulator> {
            let start = c * CHUNK;
            let len = CHUNK.min(b - start) as usize;
            let mut acc = Accumulator::new(rho.dim());
            let funcs = BalancedFunctions::starting_at(n, start, cap)?;
            for (i, f) in funcs.take(len).enumerate() {
                let p = match weights {
                    None => 1.0 / b as f64,
                    Some(w) => w[start as usize + i],
                };
                if p != 0.0 {
                    acc.add_conjugated(rho.matrix(), &f.sign_mask(), p);
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;

    let mut total = Accumulator::new(rho.dim());
    for part in &partials {
        total.merge(part);
    }

    Ok(ChannelReport {
        output: DensityOperator::from_trusted(total.into_matrix()),
        method: ChannelMethod::BruteForce,
        functions_used: b,
        weights: weights_desc,
    })
}

fn validate_weights(w: &[f64], b: u128) -> Result<Weights> {
    if w.len() as u128 != b {
        return Err(Error::InvalidWeights(format!(
            "expected {b} weights (one per balanced function), got {}",
            w.len()
        )));
    }
    if let Some(bad) = w.iter().find(|p| !p.is_finite() || **p < 0.0) {
        return Err(Error::InvalidWeights(format!(
            "weight {bad} is not a probability"
        )));
    }
    let sum: f64 = w.iter().sum();
    if (sum - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::InvalidWeights(format!(
            "weights sum to {sum}, expected 1"
        )));
    }
    Ok(Weights::Custom {
        min: w.iter().copied().fold(f64::INFINITY, f64::min),
        max: w.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

/// Neumaier-compensated running sums of the real and imaginary parts of
/// every matrix entry.
struct Accumulator {
    dim: usize,
    re: Vec<Neumaier>,
    im: Vec<Neumaier>,
}

#[derive(Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl Accumulator {
    fn new(dim: usize) -> Self {
        Self {
            dim,
            re: vec![Neumaier::default(); dim * dim],
            im: vec![Neumaier::default(); dim * dim],
        }
    }

    /// Adds `p * U rho U^dagger` with `U = diag(signs)`.
    fn add_conjugated(&mut self, rho: &ComplexMatrix, signs: &[f64], p: f64) {
        let src = rho.as_slice();
        for x in 0..self.dim {
            for y in 0..self.dim {
                let k = x * self.dim + y;
                let s = p * signs[x] * signs[y];
                self.re[k].add(s * src[k].re);
                self.im[k].add(s * src[k].im);
            }
        }
    }

    fn merge(&mut self, other: &Self) {
        for (a, b) in self.re.iter_mut().zip(&other.re) {
            a.add(b.sum);
            a.add(b.comp);
        }
        for (a, b) in self.im.iter_mut().zip(&other.im) {
            a.add(b.sum);
            a.add(b.comp);
        }
    }

    fn into_matrix(self) -> ComplexMatrix {
        let data = self
            .re
            .iter()
            .zip(&self.im)
            .map(|(r, i)| num_complex::Complex64::new(r.value(), i.value()))
            .collect();
        ComplexMatrix::from_row_major(self.dim, data).expect("square accumulator")
    }
}
