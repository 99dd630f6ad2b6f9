//! Realignment (CCNR) alongside the PPT test on the evolved family.
//!
//! cargo run --example realignment

use qutrit_lab::channel::Tau;
use qutrit_lab::entanglement::{ccnr_entangled, pt_report};
use qutrit_lab::states::{evolved_rho_alpha_beta, isotropic, FamilyParams};

pub fn run() -> qutrit_lab::Result<()> {
    println!("alpha  beta  tau   ||R(rho)||_1  CCNR   PPT");
    for (a, b) in [(0.999, 0.999), (0.5, 0.2), (0.3, 0.0), (0.2, 0.0), (0.0, 0.3)] {
        let p = FamilyParams::new(a, b)?;
        for t in [0.0, 3.0] {
            let rho = evolved_rho_alpha_beta(p, Tau::new(t)?);
            let c = ccnr_entangled(&rho);
            println!(
                "{a:<5}  {b:<4}  {t:<4}  {:.6}      {:<5}  {}",
                c.value,
                if c.entangled { "ent" } else { "-" },
                if pt_report(&rho).is_npt { "NPT" } else { "PPT" }
            );
        }
    }
    let c = ccnr_entangled(&isotropic(0.25)?);
    println!("\nisotropic alpha = 0.25 sits at the CCNR boundary: {:.12}", c.value);
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
