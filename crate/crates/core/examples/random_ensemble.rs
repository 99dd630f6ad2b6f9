//! Haar-random pure states under the channel. Every sample stays NPT, but
//! negativity of a generic state is not monotone in τ and need not have
//! settled by τ = 8.
//!
//! cargo run --release --example random_ensemble [samples seed]

use qutrit_lab::sweep::{random_records, SweepConfig, SweepFamily};

pub fn run() -> qutrit_lab::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let mut config = SweepConfig::new(SweepFamily::Random, "unused.csv");
    if let [samples, seed] = args[..] {
        config.n_samples = samples as usize;
        config.seed = seed;
    }
    config.steps = 101;
    let records = random_records(&config)?;

    let (mut all_npt, mut monotone, mut settled) = (0, 0, 0);
    println!("sample  N(0)      N(8)      N(10)     min PT eig (worst)");
    for s in 0..config.n_samples {
        let curve: Vec<_> = records.iter().filter(|r| r.sample_id == s).collect();
        let n = |t: f64| curve.iter().find(|r| (r.tau - t).abs() < 1e-9).map_or(f64::NAN, |r| r.negativity);
        let worst = curve.iter().map(|r| r.min_pt_eigenvalue).fold(f64::NEG_INFINITY, f64::max);
        all_npt += curve.iter().all(|r| r.is_npt) as usize;
        monotone += curve.windows(2).all(|w| w[1].negativity <= w[0].negativity + 1e-10) as usize;
        settled += ((n(10.0) - n(8.0)).abs() < 1e-3) as usize;
        if s < 10 {
            println!("{s:<6}  {:.6}  {:.6}  {:.6}  {worst:.3e}", n(0.0), n(8.0), n(10.0));
        }
    }
    let k = config.n_samples;
    println!("\nseed {}: NPT throughout {all_npt}/{k}, monotone {monotone}/{k}, settled by tau = 8 {settled}/{k}", config.seed);
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
