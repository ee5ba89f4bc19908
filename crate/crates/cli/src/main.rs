//! `badsci` — evaluate, construct, search and bound row-normalized matrices
//! that maximize the average largest coordinate of sign-vector images.
//!
//! Exit codes: 0 success, 2 bad input file or flags, 3 dimension over the
//! exhaustive limit without `--force`, 4 every search restart failed,
//! 5 unknown catalog entry.

mod commands;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "badsci",
    version,
    about = "how dishonest can a battery of fair tests be?"
)]
struct Cli {
    /// Worker threads (default: BADSCI_THREADS or available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the objective for a matrix file (text or JSON).
    Eval(commands::eval::EvalArgs),
    /// Recompute the best catalog value for each n in 2..=8.
    Table,
    /// Multi-restart stochastic hill climb.
    Search(commands::search::SearchArgs),
    /// List catalog entries or export one to a matrix file.
    Catalog(commands::catalog::CatalogArgs),
    /// Emit a CSV grid of exact binomial, subgaussian and Gaussian tails.
    Bounds(commands::bounds::BoundsArgs),
    /// Time naive vs Gray-code enumeration.
    Bench(commands::bench::BenchArgs),
}

fn exit_code(err: &badsci::Error) -> i32 {
    use badsci::Error::*;
    match err {
        Parse { .. }
        | RaggedRow { .. }
        | NonFinite { .. }
        | Io { .. }
        | DimensionMismatch { .. } => 2,
        DimensionTooLarge { .. } => 3,
        UnknownEntry(_) => 5,
        _ => 1,
    }
}

/// Die quietly on a closed pipe (`badsci catalog | head`) instead of
/// panicking in println!.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() {
    reset_sigpipe();
    let cli = Cli::parse();
    let threads = cli
        .threads
        .or_else(|| {
            std::env::var("BADSCI_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
        });
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");

    let json = cli.json;
    let result = pool.install(|| match cli.command {
        Command::Eval(args) => commands::eval::run(args, threads, json),
        Command::Table => commands::table::run(json),
        Command::Search(args) => commands::search::run(args, threads, json),
        Command::Catalog(args) => commands::catalog::run(args, json),
        Command::Bounds(args) => commands::bounds::run(args),
        Command::Bench(args) => commands::bench::run(args, threads, json),
    });

    match result {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code(&err));
        }
    }
}
