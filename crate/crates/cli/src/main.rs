mod cli;
mod jobs;
mod render;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::Parser;

use cli::{Cli, Command};

/// Rendered output and whether the run counts as a success.
fn run(cli: &Cli) -> Result<(String, bool)> {
    let f = cli.format;
    Ok(match &cli.command {
        Command::Cohomology { model, max_degree, by_weight } => {
            (render::cohomology(&jobs::cohomology(model, *max_degree, *by_weight)?, f)?, true)
        }
        Command::Euler { model, w_max, character } => (render::series(&jobs::euler(model, *w_max, *character)?, f)?, true),
        Command::Series { space, kind, r, max_exp } => (render::series(&jobs::series(space, *kind, *r, *max_exp)?, f)?, true),
        Command::Invariants {
            model,
            subgroup,
            isotypic,
            max_degree,
            by_weight,
        } => (
            render::cohomology(&jobs::invariants(model, subgroup, *isotypic, *max_degree, *by_weight)?, f)?,
            true,
        ),
        Command::Table1 => {
            let cols = jobs::table1()?;
            let ok = cols.iter().all(|c| c.matches() == c.expected.len());
            (render::table1(&cols, f)?, ok)
        }
        Command::Verify { model, max_degree } => {
            let (meta, report) = jobs::verify(model, *max_degree)?;
            (render::verify(&meta, &report, f)?, report.passed())
        }
    })
}

fn setup_threads(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        if n == 0 {
            bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let head: Vec<&str> = msg
                .lines()
                .map(str::trim)
                .take_while(|l| !l.is_empty() && !l.starts_with("Usage:"))
                .collect();
            eprintln!("cdgacalc: error: {}", head.join(" ").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    let result = setup_threads(cli.threads).and_then(|_| run(&cli));
    match result {
        Ok((out, ok)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("cdgacalc: error: {msg}");
            ExitCode::from(2)
        }
    }
}
