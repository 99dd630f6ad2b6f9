//! Three routes to the same channel: Kraus operators, the elementwise mask,
//! and a Monte Carlo average over random collective phase kicks. Also shows
//! that a local `S_z ⊗ 1 + 1 ⊗ S_z` generator does not produce the mask.
//!
//! cargo run --release --example channel_cross_check [n_trajectories]

use qutrit_lab::channel::{
    apply_channel, dephasing_mask, kraus_set, trajectory_oracle_with, ChannelMode, DephasingGenerator, Tau,
};
use qutrit_lab::qcore::max_abs_diff;
use qutrit_lab::states::{haar_random_pure, RandomEnsembleSpec};

pub fn run() -> qutrit_lab::Result<()> {
    let n_traj = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50_000);
    let rho = haar_random_pure(&RandomEnsembleSpec { n_samples: 1, seed: 3 })?[0].projector();

    println!("tau    gamma    completeness  kraus-vs-mask");
    for t in [0.0, 0.5, 1.0, 2.0, 5.0] {
        let tau = Tau::new(t)?;
        let k = kraus_set(tau);
        let a = apply_channel(&rho, tau, ChannelMode::Analytic);
        let b = apply_channel(&rho, tau, ChannelMode::Kraus);
        println!(
            "{t:<5}  {:.5}  {:.1e}       {:.1e}",
            qutrit_lab::channel::gamma(tau),
            k.completeness_deviation(),
            max_abs_diff(a.matrix(), b.matrix())
        );
    }

    let tau = Tau::new(1.0)?;
    let mask = dephasing_mask(tau);
    println!("\nmask factors at tau = 1, row |00>: {:?}", mask.factors().row(0).iter().map(|f| format!("{f:.4}")).collect::<Vec<_>>());

    let exact = apply_channel(&rho, tau, ChannelMode::Analytic);
    for generator in [DephasingGenerator::Collective, DephasingGenerator::LocalSum] {
        let mc = trajectory_oracle_with(&rho, tau, n_traj, 1, generator)?;
        println!(
            "{generator:?} generator, eigenvalues {:?}: max deviation {:.2e} over {n_traj} trajectories",
            generator.eigenvalues(),
            max_abs_diff(exact.matrix(), mc.matrix())
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
