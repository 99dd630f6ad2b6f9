//! CGLMP nonlocality for the qutrit pair.
//!
//! [`bell_operator`] is the explicit 9×9 CGLMP operator optimized for
//! `|Ψ₀₀⟩`; its classical bound is 2. [`dfs_bell_operator`] is the same
//! operator rotated so that its optimal state is the decoherence-free
//! `(|02⟩ + |10⟩ + |21⟩)/√3`.

use num_complex::Complex64;
use serde::Serialize;

use crate::channel::Tau;
use crate::optimize::{bisect, golden_section_max};
use crate::qcore::{cyclic_shift, expectation, hermitian_eigenvalues, tensor_product, DensityMatrix, Mat3, Mat9, DIM};
use crate::states::{evolved_rho_alpha_beta, isotropic, psi_mu, psi_nu, FamilyParams};
use crate::Result;

/// Local-realistic bound; equality does not count as a violation.
pub const CLASSICAL_BOUND: f64 = 2.0;

/// Optimum of the ν-family as quoted in the literature. Kept for comparison
/// with [`maximize_bell_nu`]; the closed form peaks elsewhere.
pub const QUOTED_OPTIMAL_NU: f64 = 0.617;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BellKind {
    Standard,
    DfsConjugated,
    Conjugated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BellOperator {
    matrix: Mat9,
    kind: BellKind,
}

impl BellOperator {
    pub fn matrix(&self) -> &Mat9 {
        &self.matrix
    }

    pub fn kind(&self) -> BellKind {
        self.kind
    }

    pub fn expectation(&self, rho: &DensityMatrix) -> f64 {
        expectation(&self.matrix, rho)
    }

    /// Ascending eigenvalues.
    pub fn spectrum(&self) -> [f64; DIM] {
        hermitian_eigenvalues(&self.matrix).expect("Bell operators are Hermitian")
    }

    /// `(U ⊗ I) B (U† ⊗ I)` or `(I ⊗ U) B (I ⊗ U†)`.
    pub fn conjugated(&self, u: &Mat3, side: Subsystem) -> BellOperator {
        let local = match side {
            Subsystem::A => tensor_product(u, &Mat3::identity()),
            Subsystem::B => tensor_product(&Mat3::identity(), u),
        };
        BellOperator {
            matrix: local * self.matrix * local.adjoint(),
            kind: BellKind::Conjugated,
        }
    }
}

pub fn bell_operator() -> BellOperator {
    let two = Complex64::from(2.0);
    let c = Complex64::from(2.0 / 3f64.sqrt());
    let mut m = Mat9::zeros();
    m[(0, 8)] = two;
    m[(8, 0)] = two;
    for (i, j) in [(0, 4), (1, 5), (3, 7), (4, 8)] {
        m[(i, j)] = c;
        m[(j, i)] = c;
    }
    BellOperator {
        matrix: m,
        kind: BellKind::Standard,
    }
}

/// The Bell operator aligned with the DFS state.
///
/// The rotation acts on qutrit B with the inverse shift `|k⟩ ↦ |k−1⟩`, which
/// takes `|Ψ₀₀⟩` to the DFS state. The equivalent A-side rotation by the
/// forward shift gives the same optimal state but a different operator, one
/// whose expectation on the evolved family does not decay.
pub fn dfs_bell_operator() -> BellOperator {
    let inverse_shift = cyclic_shift().adjoint();
    BellOperator {
        kind: BellKind::DfsConjugated,
        ..bell_operator().conjugated(&inverse_shift, Subsystem::B)
    }
}

/// `4(3 + 2√3)/9`, the violation achieved by a maximally entangled pair.
pub fn max_entangled_violation() -> f64 {
    4.0 * (3.0 + 2.0 * 3f64.sqrt()) / 9.0
}

/// `9/(2(3 + 2√3))`: the weight of a maximally entangled state below which
/// its mixture with white noise stops violating.
pub fn isotropic_nonlocality_threshold() -> f64 {
    9.0 / (2.0 * (3.0 + 2.0 * 3f64.sqrt()))
}

/// Same threshold located numerically on `⟨B⟩` of the isotropic state.
pub fn isotropic_threshold_by_bisection(tol: f64) -> f64 {
    let b = bell_operator();
    bisect(
        |a| b.expectation(&isotropic(a).expect("alpha in [0, 1]")) - CLASSICAL_BOUND,
        0.0,
        1.0,
        tol,
    )
    .expect("expectation crosses the bound on [0, 1]")
}

/// `⟨B̃⟩` on the evolved family:
/// `(4/9)(√3 α(1−β) e^{−2τ} + (3 + 2√3) β)`.
pub fn analytic_bell_expectation(params: FamilyParams, tau: Tau) -> f64 {
    let (a, b) = (params.alpha(), params.beta());
    let s3 = 3f64.sqrt();
    4.0 / 9.0 * (s3 * a * (1.0 - b) * (-2.0 * tau.value()).exp() + (3.0 + 2.0 * s3) * b)
}

/// `⟨B⟩` on the μ-state: `(12 + 8√3 μ)/(6 + 3μ²)`.
pub fn bell_mu(mu: f64) -> Result<f64> {
    psi_mu(mu)?;
    Ok((12.0 + 8.0 * 3f64.sqrt() * mu) / (6.0 + 3.0 * mu * mu))
}

/// `⟨B⟩` on the ν-state: `4ν(√3 ν + (3 + √3)√(1 − 2ν²))/3`.
pub fn bell_nu(nu: f64) -> Result<f64> {
    psi_nu(nu)?;
    let s3 = 3f64.sqrt();
    let tail = (1.0 - 2.0 * nu * nu).max(0.0).sqrt();
    Ok(4.0 * nu * (s3 * nu + (3.0 + s3) * tail) / 3.0)
}

/// `(√11 − √3)/2`.
pub fn optimal_mu() -> f64 {
    (11f64.sqrt() - 3f64.sqrt()) / 2.0
}

/// Golden-section maximum of [`bell_mu`] over `[0, 2]`; `(μ, ⟨B⟩)`.
pub fn maximize_bell_mu() -> (f64, f64) {
    golden_section_max(|m| bell_mu(m).expect("mu >= 0"), 0.0, 2.0, 1e-10)
}

/// Golden-section maximum of [`bell_nu`] over `[0, 1/√2]`; `(ν, ⟨B⟩)`.
pub fn maximize_bell_nu() -> (f64, f64) {
    golden_section_max(
        |n| bell_nu(n).expect("nu in range"),
        0.0,
        std::f64::consts::FRAC_1_SQRT_2,
        1e-10,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    AlwaysLocal,
    ViolatesThenDies,
    AlwaysNonlocal,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NonlocalityVerdict {
    pub expectation_at_zero: f64,
    /// `τ → ∞` limit of `⟨B̃⟩`.
    pub asymptote: f64,
    /// First `τ` where `⟨B̃⟩` reaches the bound. `+∞` when the asymptote sits
    /// exactly on the bound.
    pub death_time: Option<f64>,
    pub regime: Regime,
}

/// Classifies the time dependence of `⟨B̃⟩` on the evolved family and inverts
/// the closed form for the time the violation disappears.
pub fn nonlocality_verdict(params: FamilyParams) -> NonlocalityVerdict {
    let (a, b) = (params.alpha(), params.beta());
    let s3 = 3f64.sqrt();
    let expectation_at_zero = analytic_bell_expectation(params, Tau::ZERO);
    let asymptote = 4.0 / 9.0 * (3.0 + 2.0 * s3) * b;

    let (regime, death_time) = if asymptote > CLASSICAL_BOUND {
        (Regime::AlwaysNonlocal, None)
    } else if expectation_at_zero > CLASSICAL_BOUND {
        // e^{−2τ*} = x*
        let x = (4.5 - (3.0 + 2.0 * s3) * b) / (s3 * a * (1.0 - b));
        let t = if x > 0.0 { -0.5 * x.ln() } else { f64::INFINITY };
        (Regime::ViolatesThenDies, Some(t))
    } else {
        (Regime::AlwaysLocal, None)
    };

    NonlocalityVerdict {
        expectation_at_zero,
        asymptote,
        death_time,
        regime,
    }
}

/// Death time from bisection on the numeric `Tr(B̃ ρ(τ))`, bracketed on
/// `[0, tau_max]`. `None` when there is no crossing in the bracket.
pub fn death_time_by_bisection(params: FamilyParams, tau_max: f64, tol: f64) -> Option<f64> {
    let b = dfs_bell_operator();
    let excess = |t: f64| {
        b.expectation(&evolved_rho_alpha_beta(params, Tau::new(t).expect("t >= 0"))) - CLASSICAL_BOUND
    };
    if excess(0.0) <= 0.0 {
        return None;
    }
    bisect(excess, 0.0, tau_max, tol)
}
