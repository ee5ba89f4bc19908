use std::fs;
use std::path::PathBuf;

use badsci::bounds::{binomial_linf_tail, gaussian_tail_lower, hoeffding_tail};
use badsci::{Error, Result};
use clap::Args;

#[derive(Args)]
pub struct BoundsArgs {
    /// Named grid; `default` is n = powers of two 4..=1024 by t = 0.5..4.0.
    #[arg(long, value_parser = ["default"])]
    pub grid: Option<String>,

    /// Dimensions, comma-separated (default: powers of two 4..=1024).
    #[arg(long, value_delimiter = ',')]
    pub n_list: Option<Vec<u64>>,

    /// Thresholds t, comma-separated (default: 0.5,1.0,...,4.0).
    #[arg(long, value_delimiter = ',', conflicts_with = "eps_list")]
    pub t_list: Option<Vec<f64>>,

    /// Epsilon grid instead of thresholds: rows use t = sqrt((2-eps) ln n).
    #[arg(long, value_delimiter = ',')]
    pub eps_list: Option<Vec<f64>>,

    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: BoundsArgs) -> Result<i32> {
    if args.grid.is_some() && (args.n_list.is_some() || args.t_list.is_some()) {
        return Err(Error::DomainError(
            "--grid picks the built-in grid; drop --n-list/--t-list or drop --grid".into(),
        ));
    }
    let ns = args
        .n_list
        .unwrap_or_else(|| (2..=10).map(|e| 1u64 << e).collect());

    let mut csv = String::new();
    if let Some(eps_list) = args.eps_list {
        csv.push_str("n,eps,binomial_exact,hoeffding,gaussian_lower\n");
        for &n in &ns {
            for &eps in &eps_list {
                if !(eps > 0.0 && eps < 2.0) {
                    return Err(Error::DomainError(format!(
                        "eps must lie in (0, 2), got {eps}"
                    )));
                }
                let t = ((2.0 - eps) * (n as f64).ln()).sqrt();
                let exact = binomial_linf_tail(n, t)?;
                let lower = if t > 0.0 { gaussian_tail_lower(t) } else { 0.5 };
                csv.push_str(&format!(
                    "{n},{eps},{exact},{},{lower}\n",
                    hoeffding_tail(t, false)
                ));
            }
        }
    } else {
        let ts = args
            .t_list
            .unwrap_or_else(|| (1..=8).map(|i| 0.5 * i as f64).collect());
        csv.push_str("n,t,binomial_exact,hoeffding,gaussian_lower\n");
        for &n in &ns {
            for &t in &ts {
                if t < 0.0 {
                    return Err(Error::DomainError(format!("t must be >= 0, got {t}")));
                }
                let exact = binomial_linf_tail(n, t)?;
                let lower = if t > 0.0 { gaussian_tail_lower(t) } else { 0.5 };
                csv.push_str(&format!(
                    "{n},{t},{exact},{},{lower}\n",
                    hoeffding_tail(t, false)
                ));
            }
        }
    }

    match args.out {
        Some(path) => {
            fs::write(&path, csv).map_err(|source| Error::Io { path, source })?;
        }
        None => print!("{csv}"),
    }
    Ok(0)
}
