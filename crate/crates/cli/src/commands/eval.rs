use std::path::PathBuf;

use badsci::eval::{
    beta_exact_with_limit, Strategy, ABSOLUTE_MAX_EXHAUSTIVE_N, DEFAULT_MAX_EXHAUSTIVE_N,
};
use badsci::mc::beta_monte_carlo;
use badsci::{io, Result};
use clap::Args;
use serde::Serialize;

#[derive(Args)]
pub struct EvalArgs {
    /// Matrix file, plain text or JSON envelope.
    pub matrix: PathBuf,

    /// Exhaustive evaluation (the default).
    #[arg(long, conflicts_with = "mc")]
    pub exact: bool,

    /// Monte Carlo with this many samples instead of exhaustive enumeration.
    #[arg(long, value_name = "SAMPLES")]
    pub mc: Option<u64>,

    /// Enumeration strategy for exact evaluation.
    #[arg(long, value_parser = ["naive", "gray"], default_value = "gray")]
    pub strategy: String,

    /// Enumerate the full cube instead of one antipodal half.
    #[arg(long)]
    pub no_halving: bool,

    /// RNG seed for Monte Carlo sampling.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Lift the exhaustive dimension guard.
    #[arg(long)]
    pub force: bool,
}

#[derive(Serialize)]
struct EvalReport<'a> {
    command: &'static str,
    path: &'a str,
    n: usize,
    name: Option<&'a str>,
    beta: f64,
    method: &'static str,
    n_samples: u64,
    std_error: f64,
    row_norm_max_deviation: f64,
    strategy: &'a str,
    halving: bool,
    seed: Option<u64>,
    threads: usize,
}

pub fn run(args: EvalArgs, threads: usize, json: bool) -> Result<i32> {
    let loaded = io::read_matrix(&args.matrix)?;
    let m = &loaded.matrix;

    let (est, seed) = match args.mc {
        Some(samples) => (beta_monte_carlo(m, samples, args.seed)?, Some(args.seed)),
        None => {
            let strategy = if args.strategy == "naive" {
                Strategy::Naive
            } else {
                Strategy::GrayCode
            };
            let limit = if args.force {
                ABSOLUTE_MAX_EXHAUSTIVE_N
            } else {
                DEFAULT_MAX_EXHAUSTIVE_N
            };
            (
                beta_exact_with_limit(m, strategy, !args.no_halving, limit)?,
                None,
            )
        }
    };

    let method = match est.method {
        badsci::Method::ExactNaive => "exact_naive",
        badsci::Method::ExactGray => "exact_gray",
        badsci::Method::MonteCarlo => "monte_carlo",
    };

    if json {
        let report = EvalReport {
            command: "eval",
            path: &args.matrix.display().to_string(),
            n: m.n(),
            name: loaded.name.as_deref(),
            beta: est.value,
            method,
            n_samples: est.n_samples,
            std_error: est.std_error,
            row_norm_max_deviation: m.max_row_norm_deviation(),
            strategy: &args.strategy,
            halving: !args.no_halving,
            seed,
            threads,
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    } else {
        let name = loaded
            .name
            .as_deref()
            .map(|s| format!(", name = {s}"))
            .unwrap_or_default();
        println!("matrix: {} (n = {}{name})", args.matrix.display(), m.n());
        println!(
            "row norms: max |norm - 1| = {:e}",
            m.max_row_norm_deviation()
        );
        println!("beta = {}", est.value);
        println!("method = {method}");
        println!("cube points = {}", est.n_samples);
        println!("std_error = {}", est.std_error);
    }
    Ok(0)
}
