//! Command-line front end for the semi-invariant calculator.
//!
//! Exit codes: 0 on success, 1 on a computation/contract failure, 2 on a
//! usage error (including malformed partition or tuple input). All output
//! is deterministic for fixed inputs and seeds; `--json` output parses
//! and re-renders byte-identically.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use matinv_core::bounds::{
    bounds_table, gamma_value, lower_bound_witness, universal_upper_bound, upper_bound,
    BoundRow, BoundSource,
};
use matinv_core::cache::RowCache;
use matinv_core::error::Error as CoreError;
use matinv_core::graded::{graded_dim_with, DimAlgorithm};
use matinv_core::hilbert::{
    format_denominator, format_numerator, hilbert_numerator, PalindromeMode,
};
use matinv_core::invariant::{
    f_stacked, fundamental_polynomial, invariance_check, null_cone_test_3, MatrixTuple,
    NullConeWitness,
};
use matinv_core::kronecker::{isotypic_decomposition, kronecker_coefficient, kronecker_row};
use matinv_core::{parse_partition, CharEngine, Partition};

#[derive(Parser)]
#[command(
    name = "matinv",
    version,
    about = "Exact calculator for the graded ring of SL_n x SL_n matrix semi-invariants: \
             graded dimensions, Kronecker coefficients, Hilbert series numerators, \
             degree bounds, explicit invariants, and null-cone tests"
)]
struct Cli {
    /// Directory for the persistent character-row cache
    #[arg(long, global = true, env = "MATINV_CACHE")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

fn partition_arg(text: &str) -> Result<Partition, String> {
    parse_partition(text).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PalindromeArg {
    Auto,
    On,
    Off,
}

impl From<PalindromeArg> for PalindromeMode {
    fn from(arg: PalindromeArg) -> Self {
        match arg {
            PalindromeArg::Auto => PalindromeMode::Auto,
            PalindromeArg::On => PalindromeMode::On,
            PalindromeArg::Off => PalindromeMode::Off,
        }
    }
}

#[derive(Args)]
struct TupleInput {
    /// Path to a matrix-tuple JSON file
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the degree k*n graded piece of the invariant ring
    Dim {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        /// Use the tensor-square decomposition route instead of the fast path
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Schur-functor multiplicities of the degree k*n graded piece
    Isotypic {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        json: bool,
    },
    /// One Kronecker coefficient a(lambda, mu, nu)
    Kronecker {
        #[arg(long, value_parser = partition_arg)]
        lambda: Partition,
        #[arg(long, value_parser = partition_arg)]
        mu: Partition,
        #[arg(long, value_parser = partition_arg)]
        nu: Partition,
        #[arg(long)]
        json: bool,
    },
    /// Full tensor-square decomposition of lambda (x) mu
    KroneckerRow {
        #[arg(long, value_parser = partition_arg)]
        lambda: Partition,
        #[arg(long, value_parser = partition_arg)]
        mu: Partition,
        #[arg(long)]
        json: bool,
    },
    /// Hilbert series numerator over the universal denominator (1-t)^r
    Hilbert {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = PalindromeArg::Auto)]
        assume_palindrome: PalindromeArg,
        /// Also print the series coefficients up to this order
        #[arg(long)]
        expand: Option<u32>,
        /// Present in the unrenormalized variable (t -> t^n)
        #[arg(long)]
        unnormalized: bool,
        #[arg(long)]
        json: bool,
    },
    /// Generating-degree upper bounds (n = 3)
    Bounds {
        #[arg(long)]
        n: u32,
        #[arg(long, conflicts_with = "table")]
        m: Option<u32>,
        /// Print the whole m = 1..9 table plus the universal bound
        #[arg(long)]
        table: bool,
        #[arg(long)]
        json: bool,
    },
    /// Smallest degree whose invariants cut out the null cone (n = 3)
    Gamma {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        json: bool,
    },
    /// Combinatorial lower-bound witness for the generating degree
    LowerBound {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Null-cone membership of a matrix tuple (n = 3)
    Nullcone {
        #[command(flatten)]
        tuple: TupleInput,
        #[arg(long)]
        json: bool,
    },
    /// The stacked-column invariant f of an n^2-tuple
    InvariantF {
        #[command(flatten)]
        tuple: TupleInput,
        #[arg(long)]
        json: bool,
    },
    /// Exact invariance of every implemented invariant along random
    /// special-linear orbits
    CheckInvariance {
        #[command(flatten)]
        tuple: TupleInput,
        #[arg(long, default_value_t = 5)]
        trials: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Coefficients of det(t_1 X_1 + ... + t_m X_m)
    Fundamental {
        #[command(flatten)]
        tuple: TupleInput,
        #[arg(long)]
        json: bool,
    },
    /// Persistent cache administration
    Cache {
        /// Cache directory (defaults to --cache-dir / MATINV_CACHE)
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, conflicts_with = "clear")]
        stats: bool,
        #[arg(long)]
        clear: bool,
    },
}

enum CliError {
    Usage(String),
    Computation(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Computation(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Computation(m) => m,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::Parse(_) => CliError::Usage(err.to_string()),
            _ => CliError::Computation(err.to_string()),
        }
    }
}

fn main() {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("error: {}", err.message());
            std::process::exit(err.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut engine = CharEngine::new();
    if let Some(dir) = &cli.cache_dir {
        engine = engine.with_cache(RowCache::new(dir));
    }
    match cli.command {
        Command::Dim {
            n,
            m,
            k,
            oracle,
            json,
        } => {
            let algorithm = if oracle {
                DimAlgorithm::Oracle
            } else {
                DimAlgorithm::Fast
            };
            let dim = graded_dim_with(&engine, n, m, k, algorithm)?;
            if json {
                print_json(json!({
                    "schema_version": 1,
                    "n": n,
                    "m": m,
                    "k": k,
                    "algorithm": if oracle { "oracle" } else { "fast" },
                    "dimension": dim.to_string(),
                }));
            } else {
                println!("{dim}");
            }
        }
        Command::Isotypic { n, m, k, json } => {
            let decomposition = isotypic_decomposition(&engine, n, m, k)?;
            if json {
                let entries: Vec<Value> = decomposition
                    .iter()
                    .map(|(nu, a)| {
                        json!({
                            "partition": nu.parts(),
                            "multiplicity": a.to_string(),
                        })
                    })
                    .collect();
                print_json(json!({
                    "schema_version": 1,
                    "n": n,
                    "m": m,
                    "k": k,
                    "entries": entries,
                }));
            } else {
                for (nu, a) in &decomposition {
                    println!("{nu}: {a}");
                }
            }
        }
        Command::Kronecker {
            lambda,
            mu,
            nu,
            json,
        } => {
            let coefficient = kronecker_coefficient(&engine, &lambda, &mu, &nu)?;
            if json {
                print_json(json!({
                    "schema_version": 1,
                    "lambda": lambda.parts(),
                    "mu": mu.parts(),
                    "nu": nu.parts(),
                    "coefficient": coefficient.to_string(),
                }));
            } else {
                println!("{coefficient}");
            }
        }
        Command::KroneckerRow { lambda, mu, json } => {
            let row = kronecker_row(&engine, &lambda, &mu)?;
            if json {
                let entries: Vec<Value> = row
                    .iter()
                    .map(|(nu, a)| {
                        json!({
                            "partition": nu.parts(),
                            "multiplicity": a.to_string(),
                        })
                    })
                    .collect();
                print_json(json!({
                    "schema_version": 1,
                    "lambda": lambda.parts(),
                    "mu": mu.parts(),
                    "entries": entries,
                }));
            } else {
                for (nu, a) in &row {
                    println!("{nu}: {a}");
                }
            }
        }
        Command::Hilbert {
            n,
            m,
            assume_palindrome,
            expand,
            unnormalized,
            json,
        } => {
            let report = hilbert_numerator(&engine, n, m, assume_palindrome.into())?;
            let scale = if unnormalized { n } else { 1 };
            let expansion = expand.map(|order| report.expand(order));
            if json {
                let mut value =
                    serde_json::to_value(&report).expect("report serializes");
                if let Some(series) = &expansion {
                    let coefficients: Vec<String> =
                        series.iter().map(|c| c.to_string()).collect();
                    value
                        .as_object_mut()
                        .expect("report is an object")
                        .insert("expansion".into(), json!(coefficients));
                }
                print_json(value);
            } else {
                let variable = if unnormalized {
                    format!("t^{n}")
                } else {
                    "t".into()
                };
                println!(
                    "H(R({n},{m})) = P({variable}) / {}",
                    format_denominator(report.krull_dim, scale)
                );
                println!(
                    "P({variable}) = {}",
                    format_numerator(&report.numerator, scale)
                );
                println!("numerator degree: {}", report.numerator_degree);
                println!(
                    "palindromic: {} ({})",
                    if report.palindromic { "yes" } else { "no" },
                    if report.assumed_palindrome {
                        "assumed"
                    } else {
                        "verified"
                    }
                );
                if let Some(series) = &expansion {
                    let rendered: Vec<String> = if unnormalized {
                        interleave_zeros(series, n)
                    } else {
                        series.iter().map(|c| c.to_string()).collect()
                    };
                    println!("expansion: {}", rendered.join(", "));
                }
            }
        }
        Command::Bounds { n, m, table, json } => {
            let single = if table { None } else { m };
            if let Some(m) = single {
                let row = upper_bound(n, m)?;
                if json {
                    let mut value = serde_json::to_value(row).expect("row serializes");
                    value
                        .as_object_mut()
                        .expect("row is an object")
                        .insert("schema_version".into(), json!(1));
                    print_json(value);
                } else {
                    println!("{} ({})", row.bound, describe_source(&row));
                }
            } else {
                let rows = bounds_table(n)?;
                let universal = universal_upper_bound(n)?;
                if json {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|r| serde_json::to_value(r).expect("row serializes"))
                        .collect();
                    print_json(json!({
                        "schema_version": 1,
                        "n": n,
                        "rows": rows,
                        "universal_upper_bound": universal,
                    }));
                } else {
                    println!("m   bound   source");
                    for row in &rows {
                        println!("{:<3} {:<7} {}", row.m, row.bound, describe_source(row));
                    }
                    println!("universal upper bound: {universal}");
                }
            }
        }
        Command::Gamma { n, m, json } => {
            let report = gamma_value(n, m)?;
            if json {
                let mut value = serde_json::to_value(report).expect("report serializes");
                value
                    .as_object_mut()
                    .expect("report is an object")
                    .insert("schema_version".into(), json!(1));
                print_json(value);
            } else if report.inferred {
                println!("{} (inferred)", report.value);
            } else {
                println!("{}", report.value);
            }
        }
        Command::LowerBound { n, json } => {
            let witness = lower_bound_witness(&engine, n)?;
            if json {
                let mut value =
                    serde_json::to_value(&witness).expect("witness serializes");
                value
                    .as_object_mut()
                    .expect("witness is an object")
                    .insert("schema_version".into(), json!(1));
                print_json(value);
            } else {
                println!("lower bound: {}", witness.value);
                let parts: Vec<String> = witness
                    .entries
                    .iter()
                    .map(|e| format!("k={}: {}", e.k, e.coefficient))
                    .collect();
                println!("column multiplicities: {}", parts.join(", "));
                println!("verified: {}", if witness.verified { "yes" } else { "no" });
            }
        }
        Command::Nullcone { tuple, json } => {
            let tuple = load_tuple(&tuple.input)?;
            let verdict = null_cone_test_3(&tuple)?;
            if json {
                let mut value =
                    serde_json::to_value(&verdict).expect("verdict serializes");
                value
                    .as_object_mut()
                    .expect("verdict is an object")
                    .insert("schema_version".into(), json!(1));
                print_json(value);
            } else {
                println!(
                    "in null cone: {}",
                    if verdict.in_null_cone { "yes" } else { "no" }
                );
                match &verdict.witness {
                    Some(NullConeWitness::DetCoefficient { exponent, value }) => {
                        println!("witness: det coefficient t^{exponent:?} = {value}")
                    }
                    Some(NullConeWitness::GInvariant { i, j, k, value }) => {
                        println!("witness: g[{i},{j},{k}] = {value}")
                    }
                    None => {}
                }
            }
        }
        Command::InvariantF { tuple, json } => {
            let tuple = load_tuple(&tuple.input)?;
            let value = f_stacked(&tuple)?;
            if json {
                print_json(json!({
                    "schema_version": 1,
                    "n": tuple.n(),
                    "m": tuple.m(),
                    "value": value.to_string(),
                }));
            } else {
                println!("{value}");
            }
        }
        Command::CheckInvariance {
            tuple,
            trials,
            seed,
            json,
        } => {
            let tuple = load_tuple(&tuple.input)?;
            let report = invariance_check(&tuple, trials, seed)?;
            if json {
                let mut value =
                    serde_json::to_value(&report).expect("report serializes");
                value
                    .as_object_mut()
                    .expect("report is an object")
                    .insert("schema_version".into(), json!(1));
                print_json(value);
            } else {
                for check in &report.checks {
                    if check.passed {
                        println!("ok   {}", check.invariant);
                    } else {
                        println!(
                            "FAIL {} (trial {})",
                            check.invariant,
                            check.failed_trial.unwrap_or(0)
                        );
                    }
                }
                println!(
                    "all invariants exactly equal across {} trials: {}",
                    report.trials,
                    if report.all_passed { "yes" } else { "no" }
                );
            }
            if !report.all_passed {
                return Err(CliError::Computation(
                    "invariance check failed; this indicates an implementation bug".into(),
                ));
            }
        }
        Command::Fundamental { tuple, json } => {
            let tuple = load_tuple(&tuple.input)?;
            let poly = fundamental_polynomial(&tuple);
            if json {
                let coefficients: Vec<Value> = poly
                    .coefficients()
                    .iter()
                    .map(|(exponent, value)| {
                        json!({
                            "exponent": exponent,
                            "value": value.to_string(),
                        })
                    })
                    .collect();
                print_json(json!({
                    "schema_version": 1,
                    "n": tuple.n(),
                    "m": tuple.m(),
                    "degree": poly.degree(),
                    "coefficients": coefficients,
                }));
            } else if poly.is_zero() {
                println!("0 (the zero polynomial)");
            } else {
                for (exponent, value) in poly.coefficients() {
                    println!("t^{exponent:?}: {value}");
                }
            }
        }
        Command::Cache { dir, stats, clear } => {
            let dir = dir.or(cli.cache_dir).ok_or_else(|| {
                CliError::Usage("cache needs --dir, --cache-dir, or MATINV_CACHE".into())
            })?;
            let cache = RowCache::new(&dir);
            if clear {
                let removed = cache
                    .clear()
                    .map_err(|e| CliError::Computation(format!("cache clear: {e}")))?;
                println!("removed: {removed}");
            } else if stats {
                let stats = cache
                    .stats()
                    .map_err(|e| CliError::Computation(format!("cache stats: {e}")))?;
                println!("files: {}", stats.files);
                println!("bytes: {}", stats.bytes);
            } else {
                return Err(CliError::Usage(
                    "cache needs one of --stats or --clear".into(),
                ));
            }
        }
    }
    Ok(())
}

fn describe_source(row: &BoundRow) -> String {
    match row.source {
        BoundSource::Literature => {
            if let Some(generic) = row.generic {
                format!("literature (generic formula: {generic})")
            } else {
                "literature".into()
            }
        }
        BoundSource::SetA => format!(
            "degree 3+6 set (A={}, B={})",
            row.set_a.unwrap_or(0),
            row.set_b.unwrap_or(0)
        ),
        BoundSource::SetB => format!(
            "degree-6 hsop (A={}, B={})",
            row.set_a.unwrap_or(0),
            row.set_b.unwrap_or(0)
        ),
    }
}

fn interleave_zeros(series: &[BigInt], n: u32) -> Vec<String> {
    let mut out = Vec::new();
    for (k, c) in series.iter().enumerate() {
        if k > 0 {
            for _ in 1..n {
                out.push("0".into());
            }
        }
        out.push(c.to_string());
    }
    out
}

fn load_tuple(path: &Path) -> Result<MatrixTuple, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    MatrixTuple::from_json(&text).map_err(CliError::from)
}

fn print_json(value: Value) {
    println!("{value}");
}
