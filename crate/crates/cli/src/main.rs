use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fcgp_cli::args::{Cli, Command, OutputFormat};
use fcgp_cli::experiment::{run_experiment, write_repro};
use fcgp_cli::generate::run_generate;
use fcgp_cli::record::{csv_string, json_string};
use fcgp_cli::solve::{read_graph, run_solve};
use fcgp_cli::{thread_count, CliError};
use fcgp_core::subexp::tree_decomposition_heuristic;

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let io = |e| CliError::io("<stdout>", e);
    match cli.command {
        Command::Solve(args) => {
            let rec = fcgp_cli::with_threads(thread_count(), || run_solve(&args))??;
            let text = match args.out {
                OutputFormat::Json => json_string(&rec),
                OutputFormat::Csv => csv_string(&[rec], None)?,
            };
            out.write_all(text.as_bytes()).map_err(io)?;
        }
        Command::Generate(args) => {
            let (edges, meta) = run_generate(&args)?;
            writeln!(out, "{}\n{}", edges.display(), meta.display()).map_err(io)?;
        }
        Command::Experiment(args) => {
            let result = run_experiment(&args, thread_count())?;
            out.write_all(csv_string(&result.records, Some(&result.summary))?.as_bytes())
                .map_err(io)?;
            if !result.violations.is_empty() {
                for p in write_repro(&args, &result)? {
                    eprintln!("repro: {}", p.display());
                }
                return Err(CliError::Violations {
                    count: result.summary.violations,
                    dir: args.repro_dir.display().to_string(),
                });
            }
        }
        Command::Decompose(args) => {
            let graph = read_graph(&args.graph)?;
            let td = tree_decomposition_heuristic(&graph);
            td.validate(&graph)?;
            writeln!(out, "# width {}", td.width()).map_err(io)?;
            out.write_all(td.dump().as_bytes()).map_err(io)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fcgp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
