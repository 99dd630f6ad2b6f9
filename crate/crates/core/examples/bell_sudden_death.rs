//! CGLMP violation of the evolved family, measured with the Bell operator
//! rotated onto the decoherence-free state. Depending on β the violation
//! persists, never occurs, or disappears at a finite τ.
//!
//! cargo run --example bell_sudden_death

use qutrit_lab::channel::Tau;
use qutrit_lab::nonlocality::{
    analytic_bell_expectation, death_time_by_bisection, dfs_bell_operator, nonlocality_verdict,
};
use qutrit_lab::states::{evolved_rho_alpha_beta, FamilyParams};

pub fn run() -> qutrit_lab::Result<()> {
    let op = dfs_bell_operator();
    println!("alpha  beta   <B>(0)   <B>(inf)  regime               death time   bisection");
    for (a, b) in [(0.999, 0.5), (0.999, 0.6), (0.999, 0.65), (0.999, 0.7), (0.95, 0.62), (0.5, 0.9)] {
        let p = FamilyParams::new(a, b)?;
        let v = nonlocality_verdict(p);
        let bis = death_time_by_bisection(p, 100.0, 1e-12);
        println!(
            "{a:<5}  {b:<5}  {:.5}  {:.5}   {:<19}  {:<11}  {}",
            v.expectation_at_zero,
            v.asymptote,
            format!("{:?}", v.regime),
            v.death_time.map_or("-".into(), |t| format!("{t:.8}")),
            bis.map_or("-".into(), |t| format!("{t:.8}")),
        );
    }

    let p = FamilyParams::new(0.999, 0.65)?;
    println!("\ntau    closed form  Tr(B rho)");
    for t in [0.0, 0.1, 0.2, 0.3, 0.354, 0.4, 1.0] {
        let tau = Tau::new(t)?;
        println!(
            "{t:<5}  {:.10}  {:.10}",
            analytic_bell_expectation(p, tau),
            op.expectation(&evolved_rho_alpha_beta(p, tau))
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
