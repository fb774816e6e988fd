//! Classical baseline for the promise problem.
//!
//! The deterministic strategy queries `k` distinct arguments and answers
//! "balanced" on any disagreement, "constant" otherwise. With equal class
//! priors and a uniformly chosen function inside each class it fails only
//! on balanced functions that happen to agree on every query:
//!
//! ```text
//! P(success) = 1/2 + 1/2 (1 - P_allequal),
//! P_allequal = 2 C(N-k, N/2-k) / C(N, N/2)  (k <= N/2), 0 otherwise.
//! ```
//!
//! By symmetry the query positions do not matter, so the first `k`
//! arguments are used.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::subsets::binomial;

/// Largest `n` for the exact rational probability.
pub const EXACT_CAP: u32 = 6;

/// Largest `n` for which [`classical_report`] tabulates every `k`.
pub const REPORT_CAP: u32 = 16;

fn arguments(n: u32) -> Result<u64> {
    if n == 0 || n > 62 {
        return Err(Error::InvalidParameter(format!(
            "qubit count must be in 1..=62, got {n}"
        )));
    }
    Ok(1u64 << n)
}

fn check_k(n_args: u64, k: u64) -> Result<()> {
    if k == 0 || k > n_args {
        return Err(Error::InvalidParameter(format!(
            "query count {k} outside 1..={n_args}"
        )));
    }
    Ok(())
}

/// `N/2 + 1`: queries after which the answer is certain.
pub fn worst_case_queries(n: u32) -> Result<u64> {
    Ok(arguments(n)? / 2 + 1)
}

/// Success probability after `k` distinct queries.
pub fn classical_success_probability(n: u32, k: u64) -> Result<f64> {
    let big_n = arguments(n)?;
    check_k(big_n, k)?;
    let half = big_n / 2;
    let all_equal = if k > half {
        0.0
    } else {
        // C(N-k, N/2-k) / C(N, N/2) = prod_{i<k} (N/2 - i) / (N - i)
        2.0 * (0..k)
            .map(|i| (half - i) as f64 / (big_n - i) as f64)
            .product::<f64>()
    };
    Ok(0.5 + 0.5 * (1.0 - all_equal))
}

/// The same probability as an exact fraction (`n <= EXACT_CAP`).
pub fn classical_success_probability_exact(n: u32, k: u64) -> Result<Ratio<u128>> {
    if n > EXACT_CAP {
        return Err(Error::InvalidParameter(format!(
            "exact probabilities are limited to n <= {EXACT_CAP}"
        )));
    }
    let big_n = arguments(n)?;
    check_k(big_n, k)?;
    let half = big_n / 2;
    let b = binomial(big_n, half).expect("fits for n <= EXACT_CAP");
    let all_equal = if k > half {
        Ratio::from_integer(0)
    } else {
        let agree = binomial(big_n - k, half - k).expect("smaller than B");
        Ratio::new(2 * agree, b)
    };
    let half_r = Ratio::new(1u128, 2);
    Ok(half_r + half_r * (Ratio::from_integer(1) - all_equal))
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassicalReport {
    pub n: u32,
    pub worst_case_queries: u64,
    /// `(k, P(success))` for `k = 1 ..= N/2 + 1`; the probability stays 1 beyond.
    pub success_by_k: Vec<(u64, f64)>,
}

pub fn classical_report(n: u32) -> Result<ClassicalReport> {
    if n > REPORT_CAP {
        return Err(Error::InvalidParameter(format!(
            "tabulation is limited to n <= {REPORT_CAP}"
        )));
    }
    let worst = worst_case_queries(n)?;
    let success_by_k = (1..=worst)
        .map(|k| classical_success_probability(n, k).map(|p| (k, p)))
        .collect::<Result<_>>()?;
    Ok(ClassicalReport {
        n,
        worst_case_queries: worst,
        success_by_k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_case() {
        assert_eq!(worst_case_queries(1).unwrap(), 2);
        assert_eq!(worst_case_queries(2).unwrap(), 3);
        assert_eq!(worst_case_queries(10).unwrap(), 513);
        assert!(worst_case_queries(0).is_err());
    }

    #[test]
    fn examples() {
        assert_eq!(classical_success_probability(1, 1).unwrap(), 0.5);
        assert_eq!(
            classical_success_probability_exact(1, 1).unwrap(),
            Ratio::new(1, 2)
        );
        assert_eq!(
            classical_success_probability_exact(2, 2).unwrap(),
            Ratio::new(5, 6)
        );
        assert!((classical_success_probability(2, 2).unwrap() - 5.0 / 6.0).abs() < 1e-15);
        for n in 1..=8 {
            let k = worst_case_queries(n).unwrap();
            assert_eq!(classical_success_probability(n, k).unwrap(), 1.0);
            // beyond n = 5 the shortfall at k = N/2 is below f64 resolution
            if n <= 5 {
                assert!(classical_success_probability(n, k - 1).unwrap() < 1.0);
            }
        }
    }

    #[test]
    fn float_matches_exact() {
        for n in 1..=EXACT_CAP {
            for k in 1..=(1u64 << n) {
                let exact = classical_success_probability_exact(n, k).unwrap();
                let approx = *exact.numer() as f64 / *exact.denom() as f64;
                assert!((classical_success_probability(n, k).unwrap() - approx).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn k_range() {
        assert!(classical_success_probability(2, 0).is_err());
        assert!(classical_success_probability(2, 5).is_err());
        assert!(classical_success_probability_exact(7, 1).is_err());
    }

    #[test]
    fn report_is_monotone() {
        let rep = classical_report(4).unwrap();
        assert_eq!(rep.success_by_k.len(), 9);
        assert!(rep.success_by_k.windows(2).all(|w| w[0].1 <= w[1].1));
        assert_eq!(rep.success_by_k.last().unwrap(), &(9, 1.0));
    }
}
