//! Boolean oracle functions `f: {0,1}^n -> {0,1}`, their promise classes,
//! enumeration of every balanced function and the phase-oracle action
//! `U_f |x> = (-1)^f(x) |x>`.

pub mod subsets;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{check_dim, ComplexMatrix, DensityOperator, StateVector};
use subsets::{binomial, Combinations};

/// Default largest `n` for which balanced functions are enumerated.
pub const DEFAULT_ENUMERATION_CAP: u32 = 4;

/// Largest `n` for which a truth table is materialized.
pub const MAX_TABLE_QUBITS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionClass {
    Constant,
    Balanced,
    /// Violates the promise. Only [`OracleFunction::classify`] produces this.
    Neither,
}

impl fmt::Display for FunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctionClass::Constant => "constant",
            FunctionClass::Balanced => "balanced",
            FunctionClass::Neither => "neither",
        })
    }
}

/// Truth table of `f` on `N = 2^n` arguments; `table[x] = f(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OracleFunction {
    n: u32,
    table: Vec<bool>,
}

impl OracleFunction {
    pub fn new(n: u32, table: Vec<bool>) -> Result<Self> {
        check_qubits(n)?;
        check_dim(1usize << n, table.len())?;
        Ok(Self { n, table })
    }

    pub fn constant(n: u32, value: bool) -> Result<Self> {
        check_qubits(n)?;
        Ok(Self {
            n,
            table: vec![value; 1 << n],
        })
    }

    /// The function that returns 1 exactly on `ones`.
    pub fn from_ones(n: u32, ones: &[usize]) -> Result<Self> {
        check_qubits(n)?;
        let len = 1usize << n;
        let mut table = vec![false; len];
        for &x in ones {
            if x >= len {
                return Err(Error::InvalidParameter(format!(
                    "argument {x} outside 0..{len}"
                )));
            }
            table[x] = true;
        }
        Ok(Self { n, table })
    }

    pub fn from_fn(n: u32, f: impl Fn(usize) -> bool) -> Result<Self> {
        check_qubits(n)?;
        Ok(Self {
            n,
            table: (0..1usize << n).map(f).collect(),
        })
    }

    /// Parses a hex-packed truth table, least significant bit = `f(0)`.
    /// Bits at positions `>= 2^n` must be zero.
    pub fn from_hex(n: u32, hex: &str) -> Result<Self> {
        check_qubits(n)?;
        let len = 1usize << n;
        let digits = hex.trim();
        let digits = digits
            .strip_prefix("0x")
            .or_else(|| digits.strip_prefix("0X"))
            .unwrap_or(digits);
        if digits.is_empty() {
            return Err(Error::Parse("empty truth table".into()));
        }
        let mut table = vec![false; len];
        for (pos, ch) in digits.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {ch:?} in truth table")))?;
            for bit in 0..4 {
                if nibble >> bit & 1 == 1 {
                    let x = pos * 4 + bit;
                    if x >= len {
                        return Err(Error::Parse(format!(
                            "truth table {hex:?} sets bit {x}, but n = {n} has only {len} arguments"
                        )));
                    }
                    table[x] = true;
                }
            }
        }
        Ok(Self { n, table })
    }

    /// Hex-packed truth table in whole bytes, most significant byte first.
    pub fn to_hex(&self) -> String {
        let bytes = self.table.len().div_ceil(8);
        let mut out = String::with_capacity(2 * bytes);
        for b in (0..bytes).rev() {
            let mut byte = 0u8;
            for bit in 0..8 {
                if self.table.get(8 * b + bit).copied().unwrap_or(false) {
                    byte |= 1 << bit;
                }
            }
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `N = 2^n`
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn value(&self, x: usize) -> bool {
        self.table[x]
    }

    /// `(-1)^f(x)`
    pub fn sign(&self, x: usize) -> f64 {
        if self.table[x] {
            -1.0
        } else {
            1.0
        }
    }

    pub fn sign_mask(&self) -> Vec<f64> {
        (0..self.len()).map(|x| self.sign(x)).collect()
    }

    pub fn count_ones(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }

    pub fn classify(&self) -> FunctionClass {
        let ones = self.count_ones();
        if ones == 0 || ones == self.len() {
            FunctionClass::Constant
        } else if 2 * ones == self.len() {
            FunctionClass::Balanced
        } else {
            FunctionClass::Neither
        }
    }

    /// `U_f` as an explicit diagonal matrix. Only for tests and display; the
    /// oracle is applied as a sign mask everywhere else.
    pub fn unitary(&self) -> ComplexMatrix {
        ComplexMatrix::from_real_diagonal(&self.sign_mask())
    }
}

impl fmt::Display for OracleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_hex())
    }
}

#[derive(Serialize, Deserialize)]
struct OracleFunctionRepr {
    n: u32,
    table: String,
}

impl Serialize for OracleFunction {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        OracleFunctionRepr {
            n: self.n,
            table: self.to_hex(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OracleFunction {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let repr = OracleFunctionRepr::deserialize(deserializer)?;
        OracleFunction::from_hex(repr.n, &repr.table).map_err(serde::de::Error::custom)
    }
}

fn check_qubits(n: u32) -> Result<()> {
    if n == 0 || n > MAX_TABLE_QUBITS {
        return Err(Error::InvalidParameter(format!(
            "qubit count must be in 1..={MAX_TABLE_QUBITS}, got {n}"
        )));
    }
    Ok(())
}

/// `B = C(N, N/2)` for `N = 2^n`, or `None` if it does not fit in `u128`.
pub fn balanced_count(n: u32) -> Option<u128> {
    if n >= 64 {
        return None;
    }
    let big_n = 1u64 << n;
    binomial(big_n, big_n / 2)
}

fn capacity_check(n: u32, cap: u32) -> Result<()> {
    if n > cap {
        let count = match balanced_count(n) {
            Some(b) => b.to_string(),
            None => format!("C(2^{n}, 2^{})", n - 1),
        };
        return Err(Error::Capacity { n, cap, count });
    }
    check_qubits(n)
}

/// Streaming iterator over every balanced function for a given `n`, in
/// lexicographic order of the set of arguments mapped to 1.
#[derive(Debug, Clone)]
pub struct BalancedFunctions {
    n: u32,
    inner: Combinations,
}

impl BalancedFunctions {
    /// Resumes the sequence at position `rank`.
    pub fn starting_at(n: u32, rank: u128, cap: u32) -> Result<Self> {
        capacity_check(n, cap)?;
        let len = 1usize << n;
        Ok(Self {
            n,
            inner: Combinations::starting_at(len, len / 2, rank),
        })
    }
}

impl Iterator for BalancedFunctions {
    type Item = OracleFunction;

    fn next(&mut self) -> Option<OracleFunction> {
        let ones = self.inner.next()?;
        Some(OracleFunction::from_ones(self.n, &ones).expect("indices are in range"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

/// Every balanced function at `n <= DEFAULT_ENUMERATION_CAP`.
pub fn enumerate_balanced(n: u32) -> Result<BalancedFunctions> {
    enumerate_balanced_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_balanced_with_cap(n: u32, cap: u32) -> Result<BalancedFunctions> {
    BalancedFunctions::starting_at(n, 0, cap)
}

/// The all-zeros function followed by the all-ones function.
pub fn enumerate_constant(n: u32) -> Result<[OracleFunction; 2]> {
    Ok([
        OracleFunction::constant(n, false)?,
        OracleFunction::constant(n, true)?,
    ])
}

/// `U_f |psi>`: amplitude `x` picks up `(-1)^f(x)`.
pub fn apply_oracle(f: &OracleFunction, state: &StateVector) -> Result<StateVector> {
    check_dim(f.len(), state.dim())?;
    let out = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(x, a)| if f.value(x) { -a } else { *a })
        .collect();
    Ok(StateVector::from_raw(out))
}

/// `U_f rho U_f^dagger`: entry `(x, y)` picks up `(-1)^(f(x) + f(y))`.
pub fn apply_oracle_density(f: &OracleFunction, rho: &DensityOperator) -> Result<DensityOperator> {
    check_dim(f.len(), rho.dim())?;
    Ok(DensityOperator::from_trusted(conjugate_by_signs(
        rho.matrix(),
        &f.sign_mask(),
    )))
}

pub(crate) fn conjugate_by_signs(m: &ComplexMatrix, signs: &[f64]) -> ComplexMatrix {
    let n = m.dim();
    let mut out = m.clone();
    for x in 0..n {
        for y in 0..n {
            if signs[x] != signs[y] {
                out[(x, y)] = -m[(x, y)];
            }
        }
    }
    out
}

/// `sum over balanced f of (-1)^(f(x) + f(y))`, by enumeration.
pub fn balanced_pair_sum(n: u32, x: usize, y: usize) -> Result<i128> {
    let counts = pair_value_counts(n, x, y)?;
    let same = counts[0][0] + counts[1][1];
    let differ = counts[0][1] + counts[1][0];
    Ok(same as i128 - differ as i128)
}

/// Number of balanced functions with `(f(x), f(y)) = (a, b)`, indexed
/// `[a][b]`, by enumeration.
pub fn pair_value_counts(n: u32, x: usize, y: usize) -> Result<[[u64; 2]; 2]> {
    let funcs = enumerate_balanced(n)?;
    let len = 1usize << n;
    for v in [x, y] {
        if v >= len {
            return Err(Error::InvalidParameter(format!(
                "argument {v} outside 0..{len}"
            )));
        }
    }
    let mut counts = [[0u64; 2]; 2];
    for f in funcs {
        counts[f.value(x) as usize][f.value(y) as usize] += 1;
    }
    Ok(counts)
}
