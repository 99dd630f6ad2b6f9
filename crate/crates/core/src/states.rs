//! State families: isotropic states, the `ρ(α, β)` mixture with the DFS
//! state, the μ/ν pure states used for CGLMP, and Haar-random pure states.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{apply_channel, ChannelMode, Tau};
use crate::qcore::{dfs_state, ket, psi00, DensityMatrix, PureState, Vec9};
use crate::{Error, Result};

/// Mixing weights: `α` for the isotropic part, `β` for the DFS state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FamilyParams {
    alpha: f64,
    beta: f64,
}

impl FamilyParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        unit_interval("alpha", alpha)?;
        unit_interval("beta", beta)?;
        Ok(FamilyParams { alpha, beta })
    }

    pub fn alpha(self) -> f64 {
        self.alpha
    }

    pub fn beta(self) -> f64 {
        self.beta
    }
}

fn unit_interval(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::param(name, value, "must lie in [0, 1]"))
    }
}

/// `α|Ψ₀₀⟩⟨Ψ₀₀| + (1 − α) I₉/9`.
pub fn isotropic(alpha: f64) -> Result<DensityMatrix> {
    unit_interval("alpha", alpha)?;
    psi00()
        .projector()
        .mix(alpha, &DensityMatrix::maximally_mixed())
}

/// `β|DFS⟩⟨DFS| + (1 − β) isotropic(α)`.
pub fn rho_alpha_beta(params: FamilyParams) -> DensityMatrix {
    dfs_state()
        .projector()
        .mix(params.beta, &isotropic(params.alpha).expect("validated alpha"))
        .expect("validated beta")
}

/// Time evolution of `ρ(α, β)`: only the isotropic part decays.
pub fn evolved_rho_alpha_beta(params: FamilyParams, tau: Tau) -> DensityMatrix {
    let iso = isotropic(params.alpha).expect("validated alpha");
    let iso_t = apply_channel(&iso, tau, ChannelMode::Analytic);
    dfs_state()
        .projector()
        .mix(params.beta, &iso_t)
        .expect("validated beta")
}

/// `(|00⟩ + μ|11⟩ + |22⟩)/√(2 + μ²)`.
pub fn psi_mu(mu: f64) -> Result<PureState> {
    if !mu.is_finite() || mu < 0.0 {
        return Err(Error::param("mu", mu, "must be finite and non-negative"));
    }
    let norm = (2.0 + mu * mu).sqrt();
    let v = (ket(0, 0) + ket(1, 1) * Complex64::from(mu) + ket(2, 2)) / Complex64::from(norm);
    PureState::normalize(v)
}

/// `ν(|00⟩ + |11⟩) + √(1 − 2ν²)|22⟩` for `0 ≤ ν ≤ 1/√2`.
pub fn psi_nu(nu: f64) -> Result<PureState> {
    if !(0.0..=std::f64::consts::FRAC_1_SQRT_2).contains(&nu) {
        return Err(Error::param("nu", nu, "must lie in [0, 1/sqrt(2)]"));
    }
    let tail = (1.0 - 2.0 * nu * nu).max(0.0).sqrt();
    let v = (ket(0, 0) + ket(1, 1)) * Complex64::from(nu) + ket(2, 2) * Complex64::from(tail);
    PureState::normalize(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RandomEnsembleSpec {
    pub n_samples: usize,
    pub seed: u64,
}

/// Haar-distributed pure states: nine i.i.d. standard complex Gaussians,
/// normalized. Sample `i` draws from ChaCha8 stream `i` of `seed`, so the
/// ensemble is independent of worker count and of `n_samples`.
pub fn haar_random_pure(spec: &RandomEnsembleSpec) -> Result<Vec<PureState>> {
    if spec.n_samples == 0 {
        return Err(Error::param("n_samples", 0.0, "must be at least 1"));
    }
    (0..spec.n_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            rng.set_stream(i as u64);
            let v = Vec9::from_fn(|_, _| {
                Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
            });
            PureState::normalize(v)
        })
        .collect()
}
