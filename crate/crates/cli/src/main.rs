mod compare;
mod failure;
mod output;
mod run;
mod scenario;
mod stability;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use alpha_hs::reference_cases::{build_example, ExampleId};
use clap::{Parser, Subcommand};

use crate::compare::CompareOptions;
use crate::failure::Failure;
use crate::output::{ensure_dir, Format};
use crate::run::RunOptions;
use crate::scenario::Scenario;
use crate::stability::StabilityOptions;

/// Exact simulation and metric reports for α-dissipative Hunter–Saxton
/// solutions with piecewise-linear data.
#[derive(Parser)]
#[command(name = "alpha-hs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a scenario and write snapshots, a characteristics trace and
    /// an energy table.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        /// Comma-separated evaluation times.
        #[arg(long, value_delimiter = ',', required = true)]
        times: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        alpha_override: Option<f64>,
        /// `csv` adds node tables next to the JSON snapshots.
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, default_value = "exact")]
        solver: String,
    },
    /// Distances and bounds between two scenarios over time.
    Compare {
        #[arg(long, num_args = 2, required = true)]
        scenario: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        times: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        alpha_override: Option<f64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, default_value = "exact")]
        solver: String,
        /// JSON array of relabellings to try in the d_F upper bound.
        #[arg(long)]
        candidates: Option<PathBuf>,
    },
    /// Check a scenario against the state-set conditions.
    Validate {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        alpha_override: Option<f64>,
    },
    /// Write the worked examples as explicit scenario files.
    ExportExamples {
        #[arg(long)]
        out: PathBuf,
    },
    /// Check d(t) ≤ e^t d(0) over seeded random pairs.
    Stability {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        times: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn validate(path: &Path, alpha_override: Option<f64>) -> Result<(), Failure> {
    let loaded = scenario::load(&scenario::read(path)?, alpha_override)?;
    print!("{}", loaded.describe());
    if loaded.is_valid() {
        Ok(())
    } else {
        Err(Failure::Validation(format!("{} does not describe an admissible state", path.display())))
    }
}

fn export_examples(out: &Path) -> Result<(), Failure> {
    ensure_dir(out)?;
    let mut variants: Vec<(String, ExampleId, Option<f64>)> =
        ExampleId::ALL.iter().map(|&id| (id.as_str().to_string(), id, None)).collect();
    variants.push(("ex_4_2_alpha_1".into(), ExampleId::RampWithConcentration, Some(1.0)));
    for (name, id, alpha) in variants {
        let ex = build_example(id, alpha).map_err(Failure::internal)?;
        let lagrangian = out.join(format!("{name}.json"));
        let eulerian = out.join(format!("{name}_eulerian.json"));
        Scenario::from_lagrangian(&ex.lagrangian, None).write(&lagrangian)?;
        Scenario::from_eulerian(&ex.eulerian, None).write(&eulerian)?;
        println!("{}\n{}", lagrangian.display(), eulerian.display());
    }
    Ok(())
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Run { scenario, times, out, alpha_override, format, solver } => {
            let opts = RunOptions { scenario: &scenario, times: &times, out: &out, alpha_override, format, solver: &solver };
            print!("{}", run::run(&opts)?);
        }
        Command::Compare { scenario, times, out, alpha_override, format, solver, candidates } => {
            let opts = CompareOptions {
                scenarios: [&scenario[0], &scenario[1]],
                times: &times,
                out: &out,
                alpha_override,
                format,
                solver: &solver,
                candidates: candidates.as_deref(),
            };
            print!("{}", compare::compare(&opts)?.1);
        }
        Command::Validate { scenario, alpha_override } => validate(&scenario, alpha_override)?,
        Command::ExportExamples { out } => export_examples(&out)?,
        Command::Stability { seed, pairs, times, out, format } => {
            let opts = StabilityOptions { seed, pairs, times: &times, out: out.as_deref(), format };
            let (rows, summary) = stability::stability(&opts)?;
            print!("{summary}");
            let bad = rows.iter().filter(|r| !r.ok).count();
            if bad > 0 {
                return Err(Failure::Validation(format!("{bad} pair-times exceed e^t d(0)")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
