//! The library route to what the `qutrit-lab` binary writes: a CSV sweep and
//! its JSON manifest.
//!
//! cargo run --example sweep_to_csv [out_dir]

use std::path::PathBuf;

use qutrit_lab::sweep::{run_sweep, SweepConfig, SweepFamily};

pub fn run() -> qutrit_lab::Result<()> {
    let dir = std::env::args().nth(1).map_or_else(std::env::temp_dir, PathBuf::from);
    for family in [SweepFamily::Family, SweepFamily::Bell] {
        let mut config = SweepConfig::new(family, dir.join(format!("{family:?}.csv").to_lowercase()));
        config.beta = 0.65;
        config.steps = 41;
        config.tau_max = 2.0;
        let out = run_sweep(&config)?;
        println!("{} rows -> {}", out.records.len(), out.csv_path.display());
        println!("manifest summary: {}", out.manifest.summary);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
