//! Parsing of `--state` specifications.

use std::fs;
use std::path::Path;

use oracle_disc::discrimination::optimal_state;
use oracle_disc::linalg::{ComplexMatrix, DensityOperator, StateVector};
use oracle_disc::sampling;
use oracle_disc::thermal::{thermal_state, ThermalConfig, ThermalMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::ThermalModeArg;
use crate::error::{usage, CliError, Result};

/// Largest qubit count for commands that diagonalize dense `2^n x 2^n` matrices.
pub const MAX_DENSE_QUBITS: u32 = 8;

pub struct Prepared {
    pub rho0: DensityOperator,
    /// Present when the input is a pure state.
    pub pure: Option<StateVector>,
    pub thermal: Option<ThermalConfig>,
}

pub struct StateOptions {
    pub tol: f64,
    pub seed: u64,
    pub thermal_mode: ThermalModeArg,
}

pub fn check_qubits(n: u32) -> Result<usize> {
    if n == 0 || n > MAX_DENSE_QUBITS {
        return Err(usage(format!(
            "qubit count must be in 1..={MAX_DENSE_QUBITS}, got {n}"
        )));
    }
    Ok(1usize << n)
}

fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| usage(format!("not a number: {t:?}")))
        })
        .collect()
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: Path::new(path).to_path_buf(),
        source,
    })
}

/// Inline list if every item parses as a number, otherwise a file holding a
/// JSON array or separated numbers.
fn phases(arg: &str) -> Result<Vec<f64>> {
    if let Ok(list) = parse_list(arg) {
        if !list.is_empty() {
            return Ok(list);
        }
    }
    let text = read(arg)?;
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(&text).map_err(|source| CliError::Json {
            context: arg.to_string(),
            source,
        });
    }
    parse_list(&text)
}

fn pure(psi: StateVector) -> Prepared {
    Prepared {
        rho0: DensityOperator::pure(&psi),
        pure: Some(psi),
        thermal: None,
    }
}

pub fn prepare(n: u32, spec: &str, opts: &StateOptions) -> Result<Prepared> {
    let dim = check_qubits(n)?;
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    match (kind, arg) {
        ("uniform", "") => Ok(pure(StateVector::uniform(dim))),
        ("phases", a) if !a.is_empty() => Ok(pure(optimal_state(n, &phases(a)?)?)),
        ("mixed", "maximal") => Ok(Prepared {
            rho0: DensityOperator::maximally_mixed(dim),
            pure: None,
            thermal: None,
        }),
        ("thermal", a) if !a.is_empty() => {
            let cfg = ThermalConfig::new(parse_list(a)?)?;
            if cfg.n() != n as usize {
                return Err(usage(format!(
                    "thermal state lists {} polarizations for {n} qubits",
                    cfg.n()
                )));
            }
            let mode = match opts.thermal_mode {
                ThermalModeArg::Linearized => ThermalMode::Linearized,
                ThermalModeArg::Exact => ThermalMode::Exact,
            };
            Ok(Prepared {
                rho0: thermal_state(&cfg, mode)?,
                pure: None,
                thermal: Some(cfg),
            })
        }
        ("file", path) if !path.is_empty() => {
            let m: ComplexMatrix =
                serde_json::from_str(&read(path)?).map_err(|source| CliError::Json {
                    context: path.to_string(),
                    source,
                })?;
            if m.dim() != dim {
                return Err(usage(format!(
                    "{path}: expected a {dim}x{dim} matrix, found {0}x{0}",
                    m.dim()
                )));
            }
            Ok(Prepared {
                rho0: DensityOperator::with_tol(m, opts.tol)?,
                pure: None,
                thermal: None,
            })
        }
        ("random", "pure") => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            Ok(pure(sampling::random_pure_state(&mut rng, dim)))
        }
        ("random", "mixed") => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            Ok(Prepared {
                rho0: sampling::random_density(&mut rng, dim),
                pure: None,
                thermal: None,
            })
        }
        _ => Err(usage(format!("unrecognized state specification {spec:?}"))),
    }
}
