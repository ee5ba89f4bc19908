use std::time::Instant;

use badsci::constructions::random_sign_matrix;
use badsci::eval::{beta_exact_with_limit, Strategy, ABSOLUTE_MAX_EXHAUSTIVE_N};
use badsci::{Error, Result};
use clap::Args;
use serde::Serialize;

#[derive(Args)]
pub struct BenchArgs {
    /// Matrix dimension to enumerate.
    #[arg(long, default_value_t = 20)]
    pub n: usize,

    /// Thread counts to sweep for the Gray-code kernel.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub thread_list: Vec<usize>,

    /// Seed of the random sign matrix being enumerated.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Serialize)]
struct BenchReport {
    n: usize,
    vertices: u64,
    naive_seconds: f64,
    naive_vertices_per_second: f64,
    gray: Vec<GrayTiming>,
    speedup_single_thread: f64,
}

#[derive(Serialize)]
struct GrayTiming {
    threads: usize,
    seconds: f64,
    vertices_per_second: f64,
}

pub fn run(args: BenchArgs, _threads: usize, json: bool) -> Result<i32> {
    if args.n < 1 || args.n > 30 {
        return Err(Error::DomainError("bench supports 1 <= n <= 30".into()));
    }
    let m = random_sign_matrix(args.n, args.seed);
    // Antipodal halving on: this is the default evaluation path.
    let vertices = 1u64 << (args.n - 1);

    let time_run = |strategy: Strategy, threads: usize| -> Result<(f64, f64)> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        let start = Instant::now();
        let est =
            pool.install(|| beta_exact_with_limit(&m, strategy, true, ABSOLUTE_MAX_EXHAUSTIVE_N))?;
        let secs = start.elapsed().as_secs_f64();
        Ok((secs, est.value))
    };

    let (naive_secs, naive_beta) = time_run(Strategy::Naive, 1)?;
    let mut gray = Vec::new();
    let mut gray_single = f64::NAN;
    for &threads in &args.thread_list {
        let (secs, beta) = time_run(Strategy::GrayCode, threads)?;
        if (beta - naive_beta).abs() > 1e-9 {
            return Err(Error::DomainError(format!(
                "strategies disagree: naive {naive_beta} vs gray {beta}"
            )));
        }
        if threads == 1 {
            gray_single = secs;
        }
        gray.push(GrayTiming {
            threads,
            seconds: secs,
            vertices_per_second: vertices as f64 / secs,
        });
    }
    if gray_single.is_nan() {
        gray_single = gray.first().map(|g| g.seconds).unwrap_or(f64::NAN);
    }

    let report = BenchReport {
        n: args.n,
        vertices,
        naive_seconds: naive_secs,
        naive_vertices_per_second: vertices as f64 / naive_secs,
        gray,
        speedup_single_thread: naive_secs / gray_single,
    };

    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    } else {
        println!(
            "n = {}, {} vertices enumerated (antipodal halving)",
            report.n, report.vertices
        );
        println!(
            "naive:     {:>10.4}s  {:>14.0} vertices/s",
            report.naive_seconds, report.naive_vertices_per_second
        );
        for g in &report.gray {
            println!(
                "gray x{:<2}:  {:>10.4}s  {:>14.0} vertices/s",
                g.threads, g.seconds, g.vertices_per_second
            );
        }
        println!(
            "speedup (gray vs naive, 1 thread): {:.2}x",
            report.speedup_single_thread
        );
    }
    Ok(0)
}
