//! Command-line front end for the sweeps and the self-check.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qutrit_lab::sweep::{defaults, run_sweep, SweepConfig, SweepFamily};
use qutrit_lab::validate::run_validate;
use qutrit_lab::Error;

#[derive(Parser)]
#[command(name = "qutrit-lab", version, about = "Two-qutrit entanglement and nonlocality under collective dephasing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep τ for the ρ(α, β) family: negativity, PT minimum, Bell value.
    Family(FamilyArgs),
    /// Sweep τ for an ensemble of Haar-random pure states.
    Random(RandomArgs),
    /// Sweep the DFS-aligned Bell expectation (closed form and numeric).
    Bell(FamilyArgs),
    /// Run the built-in cross-checks.
    Validate,
}

#[derive(Args)]
struct Grid {
    #[arg(long, default_value_t = defaults::TAU_MAX)]
    tau_max: f64,
    #[arg(long, default_value_t = defaults::STEPS)]
    steps: usize,
    #[arg(long = "npt-tol", default_value_t = defaults::NPT_TOLERANCE)]
    npt_tolerance: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, default_value_t = defaults::ALPHA)]
    alpha: f64,
    #[arg(long, default_value_t = defaults::BETA)]
    beta: f64,
    #[command(flatten)]
    grid: Grid,
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long, default_value_t = defaults::SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = defaults::SEED)]
    seed: u64,
    #[command(flatten)]
    grid: Grid,
}

fn config(family: SweepFamily, grid: Grid) -> SweepConfig {
    let mut c = SweepConfig::new(family, grid.out);
    c.tau_max = grid.tau_max;
    c.steps = grid.steps;
    c.npt_tolerance = grid.npt_tolerance;
    c
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match cli.command {
        Command::Validate => {
            let report = run_validate();
            println!("{report}");
            return if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
        Command::Family(args) => {
            let mut c = config(SweepFamily::Family, args.grid);
            (c.alpha, c.beta) = (args.alpha, args.beta);
            c
        }
        Command::Bell(args) => {
            let mut c = config(SweepFamily::Bell, args.grid);
            (c.alpha, c.beta) = (args.alpha, args.beta);
            c
        }
        Command::Random(args) => {
            let mut c = config(SweepFamily::Random, args.grid);
            c.n_samples = args.samples;
            c.seed = args.seed;
            c
        }
    };

    match run_sweep(&config) {
        Ok(out) => {
            println!(
                "wrote {} rows to {} (manifest {})",
                out.records.len(),
                out.csv_path.display(),
                out.manifest_path.display()
            );
            ExitCode::SUCCESS
        }
        Err(err @ Error::InvalidParameter { .. }) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
