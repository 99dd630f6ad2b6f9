//! The nine maximally entangled Weyl states, their orthonormality, and which
//! of them the collective dephasing channel leaves untouched.
//!
//! cargo run --example weyl_basis

use qutrit_lab::channel::{apply_channel, ChannelMode, Tau};
use qutrit_lab::entanglement::negativity;
use qutrit_lab::qcore::{dfs_state, max_abs_diff, max_entangled_state, psi00};
use qutrit_lab::WeylLabel;

pub fn run() -> qutrit_lab::Result<()> {
    let tau = Tau::new(5.0)?;
    println!("label   N(0)      N(5)      drift at tau = 5");
    for label in WeylLabel::all() {
        let rho = max_entangled_state(label).projector();
        let out = apply_channel(&rho, tau, ChannelMode::Analytic);
        println!(
            "({}, {})  {:.6}  {:.6}  {:.2e}",
            label.m(),
            label.n(),
            negativity(&rho),
            negativity(&out),
            max_abs_diff(rho.matrix(), out.matrix())
        );
    }

    let labels: Vec<_> = WeylLabel::all().collect();
    let mut worst = 0.0_f64;
    for a in &labels {
        for b in &labels {
            let overlap = max_entangled_state(*a).inner(&max_entangled_state(*b)).norm();
            worst = worst.max(if a == b { (overlap - 1.0).abs() } else { overlap });
        }
    }
    println!("\nGram matrix deviation from identity: {worst:.1e}");
    println!(
        "|Psi00> vs DFS state overlap: {:.3}",
        psi00().inner(&dfs_state()).norm()
    );
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
