//! Two-qutrit (3⊗3) states under collective dephasing.
//!
//! The crate evolves 9×9 density matrices through a collective dephasing
//! channel and measures what survives: negativity and the partial-transpose
//! spectrum, the realignment (CCNR) test, and the CGLMP Bell expectation.
//!
//! Module map:
//!
//! - [`qcore`]: dense 3- and 9-dimensional complex linear algebra, density
//!   matrices, Weyl operators and the maximally entangled basis.
//! - [`channel`]: the dephasing channel in Kraus and elementwise form, plus a
//!   stochastic-trajectory estimator used to cross-check both.
//! - [`states`]: isotropic states, the `ρ(α, β)` mixture, the μ/ν families and
//!   Haar-random pure states.
//! - [`entanglement`]: negativity, PT spectra, the closed-form negative
//!   eigenvalue and the realignment test.
//! - [`nonlocality`]: the CGLMP Bell operator, its DFS-aligned conjugate and
//!   the sudden-death analysis.
//! - [`sweep`]: deterministic τ sweeps written as CSV with a JSON manifest.
//! - [`validate`]: the bundled self-check report.
//!
//! Basis ordering is `|ab⟩ ↦ 3a + b`, i.e. `|00⟩, |01⟩, …, |22⟩`.

pub mod channel;
pub mod entanglement;
mod error;
pub mod nonlocality;
pub mod optimize;
pub mod qcore;
pub mod states;
pub mod sweep;
pub mod validate;

#[cfg(test)]
pub(crate) mod test_support;

pub use error::{Error, Result};
pub use qcore::{DensityMatrix, Mat3, Mat9, PureState, Vec9, WeylLabel};
