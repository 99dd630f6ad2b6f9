//! Entanglement freezing in the ρ(α, β) family: negativity barely moves, one
//! partial-transpose eigenvalue is exactly time independent, and the family
//! is NPT for every β once α exceeds a fixed boundary.
//!
//! cargo run --example freezing_family [alpha beta]

use qutrit_lab::channel::Tau;
use qutrit_lab::entanglement::{
    analytic_negative_eigenvalue, invariant_eigenvalue_check, npt_alpha_boundary, pt_report,
};
use qutrit_lab::states::{evolved_rho_alpha_beta, FamilyParams};

pub fn run() -> qutrit_lab::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (alpha, beta) = match args[..] {
        [a, b] => (a, b),
        _ => (0.999, 0.999),
    };
    let params = FamilyParams::new(alpha, beta)?;

    println!("rho({alpha}, {beta})");
    println!("tau    negativity        min PT eigenvalue");
    for t in [0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0] {
        let r = pt_report(&evolved_rho_alpha_beta(params, Tau::new(t)?));
        println!("{t:<5}  {:.12}  {:.12}", r.negativity, r.min_eigenvalue);
    }

    let taus: Vec<Tau> = (0..=20).map(|k| Tau::new(0.5 * k as f64)).collect::<Result<_, _>>()?;
    let inv = invariant_eigenvalue_check(params, &taus)?;
    println!(
        "\nclosed-form PT eigenvalue {:.12}, present at every tau: {} (max deviation {:.1e})",
        analytic_negative_eigenvalue(params),
        inv.holds,
        inv.max_deviation
    );
    println!("NPT for every beta once alpha > {:.7}", npt_alpha_boundary());
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
