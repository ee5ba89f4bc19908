use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use badsci::search::{run_restarts, EvaluatorKind, Objective, SearchConfig, TracePoint};
use badsci::surd::recognize_surd;
use badsci::{io, Error, Result, TestMatrix};
use clap::Args;
use serde::Serialize;

#[derive(Args)]
pub struct SearchArgs {
    /// Matrix dimension.
    #[arg(long)]
    pub n: usize,

    /// Independent seed-and-climb restarts.
    #[arg(long, default_value_t = 20)]
    pub restarts: usize,

    /// Base seed; restart i uses seed + i.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Evaluation budget per restart.
    #[arg(long, default_value_t = 100_000)]
    pub evals: u64,

    /// Initial perturbation scale.
    #[arg(long, default_value_t = 0.05)]
    pub eps_init: f64,

    /// Step-size decay factor in (0, 1).
    #[arg(long, default_value_t = 0.5)]
    pub eps_decay: f64,

    /// Consecutive rejections before a decay step.
    #[arg(long, default_value_t = 200)]
    pub stall: usize,

    /// Stop once the step size falls below this.
    #[arg(long, default_value_t = 1e-5)]
    pub eps_min: f64,

    /// Orthogonal matrices sampled to pick each restart's start point.
    #[arg(long, default_value_t = 100)]
    pub ortho_seeds: usize,

    /// Score candidates on a fixed batch of this many Monte Carlo samples
    /// instead of exhaustive enumeration.
    #[arg(long, value_name = "SAMPLES")]
    pub mc: Option<u64>,

    /// Minimize the objective instead of maximizing it.
    #[arg(long)]
    pub minimize: bool,

    /// Output directory for matrix, report, trace and manifest files.
    #[arg(long, default_value = "search-out")]
    pub out: PathBuf,
}

#[derive(Serialize)]
struct SearchReport<'a> {
    command: &'static str,
    library_version: &'static str,
    config: &'a SearchConfig,
    restarts: usize,
    restarts_failed: usize,
    best_restart_index: usize,
    best_restart_seed: u64,
    terminated_by: badsci::search::Termination,
    evals_used: u64,
    beta: badsci::BetaEstimate,
    beta_surd: Option<String>,
    matrix_rows: Vec<Vec<f64>>,
    matrix_surd_annotations: Vec<Vec<Option<String>>>,
    trace: &'a [TracePoint],
    wall_clock_seconds: f64,
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'static str,
    library_version: &'static str,
    config: &'a SearchConfig,
    restarts: usize,
    threads: usize,
    wall_clock_seconds: f64,
    outputs: Vec<String>,
}

fn surd_annotations(m: &TestMatrix) -> Vec<Vec<Option<String>>> {
    m.rows()
        .map(|row| {
            row.iter()
                .map(|&v| recognize_surd(v).map(|f| f.to_string()))
                .collect()
        })
        .collect()
}

pub fn run(args: SearchArgs, threads: usize, json: bool) -> Result<i32> {
    if args.n < 1 {
        return Err(Error::DomainError("--n must be at least 1".into()));
    }
    let mut config = SearchConfig::new(args.n, args.seed);
    config.eval_budget = args.evals;
    config.epsilon_init = args.eps_init;
    config.epsilon_decay = args.eps_decay;
    config.stall_threshold = args.stall;
    config.epsilon_min = args.eps_min;
    config.n_orthogonal_seeds = args.ortho_seeds;
    if let Some(n_samples) = args.mc {
        config.evaluator = EvaluatorKind::MonteCarloFixedSample { n_samples };
    }
    if args.minimize {
        config.objective = Objective::Minimize;
    }
    config.validate()?;

    let started = Instant::now();
    let outcome = run_restarts(&config, args.restarts);
    let wall = started.elapsed().as_secs_f64();

    for (index, err) in &outcome.failures {
        eprintln!("restart {index} failed: {err}");
    }
    let Some(best) = outcome.best(config.objective) else {
        eprintln!("error: all {} restarts failed", args.restarts);
        return Ok(4);
    };

    fs::create_dir_all(&args.out).map_err(|source| Error::Io {
        path: args.out.clone(),
        source,
    })?;
    let write = |name: &str, body: String| -> Result<()> {
        let path = args.out.join(name);
        fs::write(&path, body).map_err(|source| Error::Io { path, source })
    };

    let result = &best.result;
    let beta_surd = recognize_surd(result.best_beta.value).map(|f| f.to_string());

    write("best_matrix.txt", io::matrix_to_text(&result.best_matrix))?;
    write(
        "best_matrix.json",
        io::matrix_to_json(&result.best_matrix, None, beta_surd.as_deref()),
    )?;

    let mut trace_csv = String::from("eval_index,beta\n");
    for point in &result.trace {
        trace_csv.push_str(&format!("{},{}\n", point.eval_index, point.beta));
    }
    write("trace.csv", trace_csv)?;

    let report = SearchReport {
        command: "search",
        library_version: env!("CARGO_PKG_VERSION"),
        config: &config,
        restarts: args.restarts,
        restarts_failed: outcome.failures.len(),
        best_restart_index: best.restart_index,
        best_restart_seed: best.seed,
        terminated_by: result.terminated_by,
        evals_used: result.evals_used,
        beta: result.best_beta,
        beta_surd: beta_surd.clone(),
        matrix_rows: result.best_matrix.to_rows(),
        matrix_surd_annotations: surd_annotations(&result.best_matrix),
        trace: &result.trace,
        wall_clock_seconds: wall,
    };
    let report_json = serde_json::to_string_pretty(&report).expect("serializable");
    write("report.json", report_json.clone() + "\n")?;

    let manifest = Manifest {
        command: "search",
        library_version: env!("CARGO_PKG_VERSION"),
        config: &config,
        restarts: args.restarts,
        threads,
        wall_clock_seconds: wall,
        outputs: vec![
            "best_matrix.txt".into(),
            "best_matrix.json".into(),
            "report.json".into(),
            "trace.csv".into(),
        ],
    };
    write(
        "manifest.json",
        serde_json::to_string_pretty(&manifest).expect("serializable") + "\n",
    )?;

    if json {
        println!("{report_json}");
    } else {
        println!(
            "best of {} restarts (restart {}): beta = {}{}",
            args.restarts,
            best.restart_index,
            result.best_beta.value,
            beta_surd
                .as_deref()
                .map(|s| format!(" ~ {s}"))
                .unwrap_or_default()
        );
        println!(
            "terminated by {:?} after {} evaluations; outputs in {}",
            result.terminated_by,
            result.evals_used,
            args.out.display()
        );
    }
    Ok(0)
}
