//! CGLMP expectation on the maximally entangled state, on the μ and ν
//! families, and on isotropic states.
//!
//! cargo run --example cglmp_optimal_states

use qutrit_lab::nonlocality::{
    bell_mu, bell_nu, bell_operator, isotropic_nonlocality_threshold, max_entangled_violation,
    maximize_bell_mu, maximize_bell_nu, optimal_mu, QUOTED_OPTIMAL_NU,
};
use qutrit_lab::qcore::psi00;
use qutrit_lab::states::{isotropic, psi_mu};

pub fn run() -> qutrit_lab::Result<()> {
    let b = bell_operator();
    println!("<B> on |Psi00>: {:.10} (closed form {:.10})", b.expectation(&psi00().projector()), max_entangled_violation());

    let (mu, val) = maximize_bell_mu();
    println!("mu family: max {val:.6} at mu = {mu:.6} (closed form {:.8})", optimal_mu());
    println!("  check against the operator: {:.6}", b.expectation(&psi_mu(mu)?.projector()));
    for m in [0.0, 0.5, 1.0, 1.5] {
        println!("  mu = {m:<4}  <B> = {:.6}", bell_mu(m)?);
    }

    let (nu, val) = maximize_bell_nu();
    println!("nu family: max {val:.6} at nu = {nu:.6}; at nu = {QUOTED_OPTIMAL_NU} the value is {:.6}", bell_nu(QUOTED_OPTIMAL_NU)?);

    let threshold = isotropic_nonlocality_threshold();
    println!("isotropic states violate for alpha > {threshold:.7}");
    for a in [0.6, threshold, 0.8, 1.0] {
        println!("  alpha = {a:.4}  <B> = {:.6}", b.expectation(&isotropic(a)?));
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
