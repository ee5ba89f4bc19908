use std::path::PathBuf;

use badsci::constructions::{catalog, catalog_entries};
use badsci::{io, Result};
use clap::Args;
use serde::Serialize;

#[derive(Args)]
pub struct CatalogArgs {
    /// List all entries (the default action).
    #[arg(long)]
    pub list: bool,

    /// Export one entry: --export NAME PATH (.json gets the envelope).
    #[arg(long, num_args = 2, value_names = ["NAME", "PATH"])]
    pub export: Option<Vec<String>>,
}

#[derive(Serialize)]
struct ListRow {
    name: &'static str,
    n: usize,
    beta: f64,
    closed_form: &'static str,
    source: &'static str,
}

pub fn run(args: CatalogArgs, json: bool) -> Result<i32> {
    if let Some(export) = args.export {
        let entry = catalog(&export[0])?;
        let path = PathBuf::from(&export[1]);
        io::write_matrix(
            &path,
            &entry.matrix,
            Some(entry.name),
            Some(entry.beta_closed_form),
        )?;
        println!(
            "wrote {} ({}x{}) to {}",
            entry.name,
            entry.matrix.n(),
            entry.matrix.n(),
            path.display()
        );
        return Ok(0);
    }

    let rows: Vec<ListRow> = catalog_entries()
        .iter()
        .map(|e| ListRow {
            name: e.name,
            n: e.matrix.n(),
            beta: e.beta_value,
            closed_form: e.beta_closed_form,
            source: e.citation,
        })
        .collect();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&rows).expect("serializable")
        );
    } else {
        println!(
            "{:<14} {:>2}  {:<20} {:<28} source",
            "name", "n", "beta", "closed form"
        );
        for r in &rows {
            println!(
                "{:<14} {:>2}  {:<20.16} {:<28} {}",
                r.name, r.n, r.beta, r.closed_form, r.source
            );
        }
    }
    Ok(0)
}
