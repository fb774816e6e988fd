use oracle_disc::channels::channel_balanced_bruteforce;
use oracle_disc::classical::{
    classical_report, classical_success_probability, classical_success_probability_exact,
    worst_case_queries, ClassicalReport, EXACT_CAP,
};
use oracle_disc::discrimination::{
    certainty_conditions_with_tol, helstrom_error, helstrom_povm, povm_error, pure_state_povm,
    run_dj, CertaintyReport, DiscriminationProblem, Povm2,
};
use oracle_disc::linalg::{ComplexMatrix, DensityOperator};
use oracle_disc::oracle::{
    balanced_count, balanced_pair_sum, enumerate_balanced, enumerate_constant, pair_value_counts,
    subsets::binomial, FunctionClass, OracleFunction, DEFAULT_ENUMERATION_CAP,
};
use oracle_disc::thermal::{
    error_lower_bound, min_qubits_for_advantage, sweep, QubitRequirement, SweepRow,
    ThermalBoundReport, ThermalConfig,
};
use oracle_disc::SCHEMA_VERSION;
use serde::Serialize;

use crate::args::{ClassicalArgs, DiscriminateArgs, EnumerateArgs, RunArgs, ThermalBoundArgs};
use crate::error::{usage, CliError, Result};
use crate::state::{self, StateOptions};

/// Largest `n` accepted by `run --all`.
pub const RUN_ALL_CAP: u32 = 3;

pub enum Body {
    Json(String),
    Csv(String),
}

pub struct Output {
    pub body: Body,
    /// The report was produced but describes a function outside the promise.
    pub outside_promise: bool,
}

impl Output {
    fn json<T: Serialize>(report: &T) -> Result<Self> {
        let mut text = serde_json::to_string_pretty(report).map_err(|source| CliError::Json {
            context: "serializing report".into(),
            source,
        })?;
        text.push('\n');
        Ok(Self {
            body: Body::Json(text),
            outside_promise: false,
        })
    }
}

#[derive(Serialize)]
struct Summary {
    trace: f64,
    purity: f64,
    diagonal: Vec<f64>,
    /// Largest off-diagonal magnitude.
    max_coherence: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<ComplexMatrix>,
}

fn summarize(rho: &DensityOperator, full: bool) -> Summary {
    let m = rho.matrix();
    Summary {
        trace: m.trace().re,
        purity: rho.purity(),
        diagonal: m.diagonal().iter().map(|d| d.re).collect(),
        max_coherence: (m - &m.diagonal_part()).max_abs(),
        matrix: full.then(|| m.clone()),
    }
}

#[derive(Serialize)]
struct BruteForceCheck {
    functions_used: u128,
    max_deviation: f64,
}

#[derive(Serialize)]
struct DiscriminateReport<'a> {
    schema_version: &'static str,
    command: &'static str,
    n: u32,
    state: &'a str,
    p_const: f64,
    p_bal: f64,
    rho_const: Summary,
    rho_bal: Summary,
    helstrom_error: f64,
    povm: Povm2,
    povm_error: f64,
    certainty: CertaintyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    bruteforce: Option<BruteForceCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    thermal_bound: Option<ThermalBoundReport>,
}

pub fn discriminate(args: &DiscriminateArgs, tol: f64, seed: u64) -> Result<Output> {
    let prepared = state::prepare(
        args.n,
        &args.state,
        &StateOptions {
            tol,
            seed,
            thermal_mode: args.thermal_mode,
        },
    )?;
    let rho0 = &prepared.rho0;
    let prob = DiscriminationProblem::from_initial_state(rho0, args.p_const, 1.0 - args.p_const)?;
    let bruteforce = if args.bruteforce {
        let report = channel_balanced_bruteforce(rho0, None)?;
        Some(BruteForceCheck {
            functions_used: report.functions_used,
            max_deviation: report.output.matrix().max_abs_diff(prob.rho_bal.matrix()),
        })
    } else {
        None
    };
    let povm = helstrom_povm(&prob);
    Output::json(&DiscriminateReport {
        schema_version: SCHEMA_VERSION,
        command: "discriminate",
        n: args.n,
        state: &args.state,
        p_const: prob.p_const,
        p_bal: prob.p_bal,
        rho_const: summarize(&prob.rho_const, args.full),
        rho_bal: summarize(&prob.rho_bal, args.full),
        helstrom_error: helstrom_error(&prob),
        povm_error: povm_error(&prob, &povm)?,
        povm,
        certainty: certainty_conditions_with_tol(rho0, tol),
        bruteforce,
        thermal_bound: prepared.thermal.as_ref().map(error_lower_bound),
    })
}

#[derive(Serialize)]
struct MinQubitsReport {
    schema_version: &'static str,
    command: &'static str,
    alpha1: f64,
    min_qubits: QubitRequirement,
}

#[derive(Serialize)]
struct SweepReport {
    schema_version: &'static str,
    command: &'static str,
    alpha1: f64,
    rows: Vec<SweepRow>,
}

#[derive(Serialize)]
struct BoundReport {
    schema_version: &'static str,
    command: &'static str,
    #[serde(flatten)]
    report: ThermalBoundReport,
}

fn parse_range(text: &str) -> Result<(u64, u64, u64)> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || usage(format!("sweep range must be start:end:step, got {text:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    Ok((num(parts[0])?, num(parts[1])?, num(parts[2])?))
}

fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| usage(format!("writing CSV: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV of numbers and booleans is UTF-8"))
}

pub fn thermal_bound(args: &ThermalBoundArgs) -> Result<Output> {
    let cfg = match (&args.alphas, args.alpha1) {
        (Some(alphas), _) => ThermalConfig::new(alphas.clone())?,
        (None, Some(a)) => {
            if a.is_nan() || a <= 0.0 {
                return Err(usage(format!("--alpha1 must be positive, got {a}")));
            }
            if args.min_qubits {
                return Output::json(&MinQubitsReport {
                    schema_version: SCHEMA_VERSION,
                    command: "thermal-bound",
                    alpha1: a,
                    min_qubits: min_qubits_for_advantage(a)?,
                });
            }
            if let Some(range) = &args.sweep {
                let (start, end, step) = parse_range(range)?;
                let rows = sweep(a, start, end, step)?;
                if args.csv {
                    return Ok(Output {
                        body: Body::Csv(sweep_csv(&rows)?),
                        outside_promise: false,
                    });
                }
                return Output::json(&SweepReport {
                    schema_version: SCHEMA_VERSION,
                    command: "thermal-bound",
                    alpha1: a,
                    rows,
                });
            }
            if args.n == 0 {
                return Err(usage("qubit count must be positive"));
            }
            ThermalConfig::uniform(args.n, a)?
        }
        (None, None) => return Err(usage("one of --alphas or --alpha1 is required")),
    };
    Output::json(&BoundReport {
        schema_version: SCHEMA_VERSION,
        command: "thermal-bound",
        report: error_lower_bound(&cfg),
    })
}

#[derive(Serialize)]
struct PairReport {
    x: usize,
    y: usize,
    sum: i128,
    /// `B` when `x = y`, otherwise `-B/(N-1)`.
    closed_form: i128,
}

#[derive(Serialize)]
struct CountRow {
    f_x: u8,
    f_y: u8,
    count: u64,
    expected: u64,
}

#[derive(Serialize)]
struct TableReport {
    x: usize,
    y: usize,
    rows: Vec<CountRow>,
}

#[derive(Serialize)]
struct EnumerateReport {
    schema_version: &'static str,
    command: &'static str,
    n: u32,
    balanced_count: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair: Option<PairReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<TableReport>,
}

pub fn enumerate(args: &EnumerateArgs) -> Result<Output> {
    let n = args.n;
    if n == 0 || n > DEFAULT_ENUMERATION_CAP {
        return Err(usage(format!(
            "qubit count must be in 1..={DEFAULT_ENUMERATION_CAP}, got {n}"
        )));
    }
    let big_n = 1usize << n;
    let b = balanced_count(n).expect("small n");
    let (x, y) = match args.pair.as_deref() {
        Some(&[x, y]) => (x, y),
        _ => (0, 1),
    };
    let pair = match args.pair {
        Some(_) => {
            let closed_form = if x == y {
                b as i128
            } else {
                -(b as i128) / (big_n as i128 - 1)
            };
            Some(PairReport {
                x,
                y,
                sum: balanced_pair_sum(n, x, y)?,
                closed_form,
            })
        }
        None => None,
    };
    let table = if args.table {
        if x == y {
            return Err(usage("the value table needs two distinct arguments"));
        }
        let counts = pair_value_counts(n, x, y)?;
        let half = big_n as u64 / 2;
        let same = binomial(big_n as u64 - 2, half).expect("small n") as u64;
        let differ = binomial(big_n as u64 - 2, half - 1).expect("small n") as u64;
        let rows = [(0u8, 0u8), (0, 1), (1, 0), (1, 1)]
            .into_iter()
            .map(|(fx, fy)| CountRow {
                f_x: fx,
                f_y: fy,
                count: counts[fx as usize][fy as usize],
                expected: if fx == fy { same } else { differ },
            })
            .collect();
        Some(TableReport { x, y, rows })
    } else {
        None
    };
    Output::json(&EnumerateReport {
        schema_version: SCHEMA_VERSION,
        command: "enumerate",
        n,
        balanced_count: b,
        pair,
        table,
    })
}

#[derive(Serialize)]
struct FunctionResult {
    function: OracleFunction,
    class: FunctionClass,
    p_constant: Option<f64>,
    p_balanced: Option<f64>,
    /// Probability of the outcome naming the true class.
    p_correct: Option<f64>,
    /// `p_correct` is 1 within the tolerance.
    certain: Option<bool>,
}

#[derive(Serialize)]
struct RunReport<'a> {
    schema_version: &'static str,
    command: &'static str,
    n: u32,
    state: &'a str,
    /// `state_projector` for pure inputs meeting the certainty conditions, otherwise `helstrom`.
    povm: &'static str,
    results: Vec<FunctionResult>,
    all_certain: bool,
}

pub fn run(args: &RunArgs, tol: f64, seed: u64) -> Result<Output> {
    let prepared = state::prepare(
        args.n,
        &args.state,
        &StateOptions {
            tol,
            seed,
            thermal_mode: args.thermal_mode,
        },
    )?;
    let functions: Vec<OracleFunction> = if args.all {
        if args.n > RUN_ALL_CAP {
            return Err(usage(format!("--all is limited to n <= {RUN_ALL_CAP}")));
        }
        let mut all: Vec<OracleFunction> = enumerate_constant(args.n)?.into();
        all.extend(enumerate_balanced(args.n)?);
        all
    } else {
        let hex = args
            .function
            .as_deref()
            .ok_or_else(|| usage("give -f <hex> or --all"))?;
        vec![OracleFunction::from_hex(args.n, hex)?]
    };

    let rho0 = &prepared.rho0;
    let certain = certainty_conditions_with_tol(rho0, tol).certain;
    let (povm_name, povm) = match &prepared.pure {
        Some(psi) if certain => ("state_projector", pure_state_povm(psi)),
        _ => (
            "helstrom",
            helstrom_povm(&DiscriminationProblem::from_initial_state(rho0, 0.5, 0.5)?),
        ),
    };

    let mut results = Vec::with_capacity(functions.len());
    let mut outside_promise = false;
    for f in functions {
        let class = f.classify();
        let result = if class == FunctionClass::Neither {
            outside_promise = true;
            FunctionResult {
                function: f,
                class,
                p_constant: None,
                p_balanced: None,
                p_correct: None,
                certain: None,
            }
        } else {
            let p = run_dj(rho0, &f, &povm)?;
            let correct = p.correct_for(class).expect("promise class");
            FunctionResult {
                function: f,
                class,
                p_constant: Some(p.constant),
                p_balanced: Some(p.balanced),
                p_correct: Some(correct),
                certain: Some((1.0 - correct).abs() <= tol),
            }
        };
        results.push(result);
    }
    let all_certain = results.iter().all(|r| r.certain == Some(true));
    let mut out = Output::json(&RunReport {
        schema_version: SCHEMA_VERSION,
        command: "run",
        n: args.n,
        state: &args.state,
        povm: povm_name,
        results,
        all_certain,
    })?;
    out.outside_promise = outside_promise;
    Ok(out)
}

#[derive(Serialize)]
struct ClassicalSingle {
    n: u32,
    worst_case_queries: u64,
    k: u64,
    success_probability: f64,
    /// Exact value as `numerator/denominator`, for small `n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum ClassicalBody {
    Single(ClassicalSingle),
    Table(ClassicalReport),
}

#[derive(Serialize)]
struct ClassicalOutput {
    schema_version: &'static str,
    command: &'static str,
    #[serde(flatten)]
    body: ClassicalBody,
}

pub fn classical(args: &ClassicalArgs) -> Result<Output> {
    let body = match args.k {
        Some(k) => ClassicalBody::Single(ClassicalSingle {
            n: args.n,
            worst_case_queries: worst_case_queries(args.n)?,
            k,
            success_probability: classical_success_probability(args.n, k)?,
            exact: if args.n <= EXACT_CAP {
                let r = classical_success_probability_exact(args.n, k)?;
                Some(format!("{}/{}", r.numer(), r.denom()))
            } else {
                None
            },
        }),
        None => ClassicalBody::Table(classical_report(args.n)?),
    };
    Output::json(&ClassicalOutput {
        schema_version: SCHEMA_VERSION,
        command: "classical",
        body,
    })
}
