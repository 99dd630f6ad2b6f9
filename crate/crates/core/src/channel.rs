//! Collective dephasing of two qutrits.
//!
//! Time enters only through the dimensionless `τ = Γt` and the decay factor
//! `γ = e^{−τ/2}`. Three equivalent routes are provided:
//!
//! - the operator-sum form with three diagonal Kraus operators,
//! - the elementwise form `ρ_ij(τ) = M_ij(τ) ρ_ij(0)` (production path),
//! - a Monte Carlo average over random collective phase kicks, used only to
//!   cross-check the other two.
//!
//! Basis indices `{1, 2, 3, 5, 6, 7}` span the decoherence-free block, as does
//! the `(4, 8)` coherence.

use nalgebra::SMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::qcore::{DensityMatrix, Mat9, DIM};
use crate::{Error, Result};

/// Dimensionless time `τ = Γt`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, serde::Serialize)]
pub struct Tau(f64);

impl Tau {
    pub const ZERO: Tau = Tau(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::param("tau", value, "must be finite and non-negative"));
        }
        Ok(Tau(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl std::ops::Add for Tau {
    type Output = Tau;

    fn add(self, rhs: Tau) -> Tau {
        Tau(self.0 + rhs.0)
    }
}

/// `γ = e^{−τ/2}`.
pub fn gamma(tau: Tau) -> f64 {
    (-0.5 * tau.0).exp()
}

/// The three diagonal Kraus operators `D₁, D₂, D₃`, stored by their diagonals.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausSet {
    diagonals: [[f64; DIM]; 3],
}

impl KrausSet {
    pub fn diagonals(&self) -> &[[f64; DIM]; 3] {
        &self.diagonals
    }

    pub fn operators(&self) -> [Mat9; 3] {
        self.diagonals.map(|d| {
            Mat9::from_fn(|i, j| if i == j { Complex64::from(d[i]) } else { Complex64::default() })
        })
    }

    /// `‖Σ_k D_k† D_k − I‖_max`.
    pub fn completeness_deviation(&self) -> f64 {
        let sum: Mat9 = self.operators().iter().map(|d| d.adjoint() * d).sum();
        crate::qcore::max_abs_diff(&sum, &Mat9::identity())
    }

    /// `Σ_k D_k† ρ D_k`.
    pub fn apply(&self, rho: &Mat9) -> Mat9 {
        self.operators().iter().map(|d| d.adjoint() * rho * d).sum()
    }
}

pub fn kraus_set(tau: Tau) -> KrausSet {
    let g = gamma(tau);
    let g2 = g * g;
    let w1 = (1.0 - g2).sqrt();
    let w2 = -g2 * (1.0 - g2).sqrt();
    let w3 = (1.0 - g2) * (1.0 + g2).sqrt();
    KrausSet {
        diagonals: [
            [g, 1.0, 1.0, 1.0, g, 1.0, 1.0, 1.0, g],
            [w1, 0.0, 0.0, 0.0, w2, 0.0, 0.0, 0.0, w2],
            [0.0, 0.0, 0.0, 0.0, w3, 0.0, 0.0, 0.0, w3],
        ],
    }
}

/// Power of `γ` multiplying each density-matrix entry.
const GAMMA_POWER: [[i32; DIM]; DIM] = [
    [0, 1, 1, 1, 4, 1, 1, 1, 4],
    [1, 0, 0, 0, 1, 0, 0, 0, 1],
    [1, 0, 0, 0, 1, 0, 0, 0, 1],
    [1, 0, 0, 0, 1, 0, 0, 0, 1],
    [4, 1, 1, 1, 0, 1, 1, 1, 0],
    [1, 0, 0, 0, 1, 0, 0, 0, 1],
    [1, 0, 0, 0, 1, 0, 0, 0, 1],
    [1, 0, 0, 0, 1, 0, 0, 0, 1],
    [4, 1, 1, 1, 0, 1, 1, 1, 0],
];

/// Elementwise decay factors of the channel at a fixed `τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct DephasingMask(SMatrix<f64, DIM, DIM>);

impl DephasingMask {
    pub fn factors(&self) -> &SMatrix<f64, DIM, DIM> {
        &self.0
    }

    pub fn factor(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn apply(&self, rho: &Mat9) -> Mat9 {
        rho.zip_map(&self.0, |z, f| z * f)
    }
}

pub fn dephasing_mask(tau: Tau) -> DephasingMask {
    let g = gamma(tau);
    DephasingMask(SMatrix::from_fn(|i, j| match GAMMA_POWER[i][j] {
        0 => 1.0,
        p => g.powi(p),
    }))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChannelMode {
    Kraus,
    #[default]
    Analytic,
}

pub fn apply_channel(rho: &DensityMatrix, tau: Tau, mode: ChannelMode) -> DensityMatrix {
    let out = match mode {
        ChannelMode::Kraus => kraus_set(tau).apply(rho.matrix()),
        ChannelMode::Analytic => dephasing_mask(tau).apply(rho.matrix()),
    };
    DensityMatrix::from_trusted(out)
}

/// Diagonal generator of the random collective phase `U = exp(iφG/2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DephasingGenerator {
    /// `G = diag(2, 0, 0, 0, −2, 0, 0, 0, −2)`: reproduces the elementwise
    /// channel on every entry.
    #[default]
    Collective,
    /// `S_z^A + S_z^B` with `S_z = diag(1, −1, −1)`. Agrees with the channel
    /// on the `{|00⟩, |11⟩, |22⟩}` block only.
    LocalSum,
}

impl DephasingGenerator {
    pub fn eigenvalues(self) -> [i32; DIM] {
        match self {
            DephasingGenerator::Collective => [2, 0, 0, 0, -2, 0, 0, 0, -2],
            DephasingGenerator::LocalSum => {
                const SZ: [i32; 3] = [1, -1, -1];
                std::array::from_fn(|idx| SZ[idx / 3] + SZ[idx % 3])
            }
        }
    }
}

/// Variance of the accumulated phase `φ` per unit `τ`. With a generator gap
/// of 2 this gives `E[e^{iφ}] = e^{−τ/2} = γ`.
pub const PHASE_VARIANCE_PER_TAU: f64 = 1.0;

/// Trajectories per RNG stream. Stream `b` covers trajectories
/// `[b·BLOCK, (b+1)·BLOCK)`, so the estimate does not depend on thread count.
pub const TRAJECTORY_BLOCK: usize = 4096;

// Generator gaps span −4..=4; sums for negative gaps are conjugates.
const MAX_GAP: usize = 4;

/// Monte Carlo estimate of the channel from random collective phase kicks.
pub fn trajectory_oracle(
    rho: &DensityMatrix,
    tau: Tau,
    n_traj: usize,
    seed: u64,
) -> Result<DensityMatrix> {
    trajectory_oracle_with(rho, tau, n_traj, seed, DephasingGenerator::Collective)
}

pub fn trajectory_oracle_with(
    rho: &DensityMatrix,
    tau: Tau,
    n_traj: usize,
    seed: u64,
    generator: DephasingGenerator,
) -> Result<DensityMatrix> {
    if n_traj == 0 {
        return Err(Error::param("n_traj", 0.0, "must be at least 1"));
    }
    let sigma = (PHASE_VARIANCE_PER_TAU * tau.value()).sqrt();
    let n_blocks = n_traj.div_ceil(TRAJECTORY_BLOCK);

    let block_sums: Vec<[Complex64; MAX_GAP + 1]> = (0..n_blocks)
        .into_par_iter()
        .map(|block| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(block as u64);
            let count = TRAJECTORY_BLOCK.min(n_traj - block * TRAJECTORY_BLOCK);
            let mut sums = [Complex64::default(); MAX_GAP + 1];
            for _ in 0..count {
                let z: f64 = StandardNormal.sample(&mut rng);
                let phi = sigma * z;
                sums[0] += Complex64::from(1.0);
                for (gap, s) in sums.iter_mut().enumerate().skip(1) {
                    *s += Complex64::cis(0.5 * phi * gap as f64);
                }
            }
            sums
        })
        .collect();

    let totals = pairwise_sum(&block_sums);
    let n = n_traj as f64;
    let g = generator.eigenvalues();
    let r = rho.matrix();
    let out = Mat9::from_fn(|i, j| {
        let gap = g[i] - g[j];
        let avg = totals[gap.unsigned_abs() as usize] / n;
        let avg = if gap < 0 { avg.conj() } else { avg };
        r[(i, j)] * avg
    });
    Ok(DensityMatrix::from_trusted(out))
}

fn pairwise_sum<const K: usize>(parts: &[[Complex64; K]]) -> [Complex64; K] {
    match parts {
        [] => [Complex64::default(); K],
        [single] => *single,
        _ => {
            let (lo, hi) = parts.split_at(parts.len() / 2);
            let (a, b) = (pairwise_sum(lo), pairwise_sum(hi));
            std::array::from_fn(|k| a[k] + b[k])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{dfs_state, max_abs_diff, max_entangled_state, psi00, WeylLabel};
    use crate::test_support::random_density;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const DFS: [usize; 6] = [1, 2, 3, 5, 6, 7];

    fn tau(v: f64) -> Tau {
        Tau::new(v).unwrap()
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(Tau::ZERO), 1.0);
        assert_abs_diff_eq!(gamma(tau(2.0 * 2f64.ln())), 0.5, epsilon = 1e-15);
        assert!(gamma(tau(50.0)) < 1e-10);
        assert!(gamma(tau(1.0)) > gamma(tau(1.1)));
        assert!(Tau::new(-0.1).is_err());
        assert!(Tau::new(f64::INFINITY).is_err());
    }

    #[test]
    fn kraus_at_zero_is_identity() {
        let k = kraus_set(Tau::ZERO);
        assert_eq!(k.diagonals()[0], [1.0; 9]);
        assert_eq!(k.diagonals()[1], [0.0; 9]);
        assert_eq!(k.diagonals()[2], [0.0; 9]);
    }

    #[test]
    fn kraus_at_half_gamma() {
        let k = kraus_set(tau(2.0 * 2f64.ln()));
        let d = k.diagonals();
        assert_abs_diff_eq!(d[1][0], 3f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d[1][4], -3f64.sqrt() / 8.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d[2][4], 0.75 * 1.25f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(d[2][4], 0.838525, epsilon = 1e-6);
    }

    #[test]
    fn kraus_completeness_on_grid() {
        for step in 0..=100 {
            assert!(kraus_set(tau(step as f64 * 0.1)).completeness_deviation() <= 1e-14);
        }
    }

    #[test]
    fn mask_structure() {
        assert!(dephasing_mask(Tau::ZERO).factors().iter().all(|&f| f == 1.0));
        let m = dephasing_mask(tau(2.0 * 2f64.ln()));
        assert_abs_diff_eq!(m.factor(0, 4), 1.0 / 16.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.factor(8, 0), 1.0 / 16.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.factor(0, 1), 0.5, epsilon = 1e-15);
        for t in [0.3, 4.0, 20.0] {
            let m = dephasing_mask(tau(t));
            assert_eq!(m.factor(4, 8), 1.0);
            assert_eq!(m.factors(), &m.factors().transpose());
            for i in 0..9 {
                assert_eq!(m.factor(i, i), 1.0);
            }
            for &i in &DFS {
                for &j in &DFS {
                    assert_eq!(m.factor(i, j), 1.0);
                }
            }
            assert!(m.factors().iter().all(|&f| (0.0..=1.0).contains(&f)));
        }
    }

    #[test]
    fn channel_at_zero_is_identity() {
        let rho = random_density(3);
        for mode in [ChannelMode::Kraus, ChannelMode::Analytic] {
            assert!(max_abs_diff(apply_channel(&rho, Tau::ZERO, mode).matrix(), rho.matrix()) <= 1e-15);
        }
    }

    #[test]
    fn dfs_state_is_invariant() {
        let p = dfs_state().projector();
        for t in [0.5, 3.0, 10.0] {
            for mode in [ChannelMode::Kraus, ChannelMode::Analytic] {
                assert!(max_abs_diff(apply_channel(&p, tau(t), mode).matrix(), p.matrix()) <= 1e-14);
            }
        }
    }

    #[test]
    fn psi00_at_half_gamma() {
        let p = psi00().projector();
        let out = apply_channel(&p, tau(2.0 * 2f64.ln()), ChannelMode::Analytic);
        let m = out.matrix();
        let third = 1.0 / 3.0;
        assert_abs_diff_eq!(m[(0, 4)].re, third / 16.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(0, 8)].re, third / 16.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(4, 8)].re, third, epsilon = 1e-15);
        for i in 0..9 {
            let want = if [0, 4, 8].contains(&i) { third } else { 0.0 };
            assert_abs_diff_eq!(m[(i, i)].re, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn only_m_nonzero_weyl_states_are_protected() {
        for label in WeylLabel::all() {
            let p = max_entangled_state(label).projector();
            let dev = max_abs_diff(apply_channel(&p, tau(5.0), ChannelMode::Analytic).matrix(), p.matrix());
            if label.m() != 0 {
                assert!(dev <= 1e-14, "{label:?}");
            } else {
                assert!(dev > 0.1, "{label:?}");
            }
        }
    }

    #[test]
    fn oracle_rejects_zero_trajectories() {
        assert!(trajectory_oracle(&psi00().projector(), tau(1.0), 0, 1).is_err());
    }

    #[test]
    fn oracle_keeps_diagonal_exactly() {
        let mut m = Mat9::zeros();
        let weights = [0.1, 0.2, 0.05, 0.05, 0.3, 0.1, 0.05, 0.1, 0.05];
        for (i, w) in weights.iter().enumerate() {
            m[(i, i)] = Complex64::from(*w);
        }
        let rho = DensityMatrix::new(m).unwrap();
        for seed in [0, 7, 99] {
            let out = trajectory_oracle(&rho, tau(2.5), 1000, seed).unwrap();
            assert_eq!(out.matrix(), rho.matrix());
        }
    }

    #[test]
    fn oracle_is_deterministic() {
        let rho = random_density(5);
        let a = trajectory_oracle(&rho, tau(1.0), 10_000, 42).unwrap();
        let b = trajectory_oracle(&rho, tau(1.0), 10_000, 42).unwrap();
        assert_eq!(a, b);
        let c = trajectory_oracle(&rho, tau(1.0), 10_000, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn oracle_matches_channel_on_generic_state() {
        let rho = random_density(8);
        let exact = apply_channel(&rho, tau(1.0), ChannelMode::Analytic);
        let mc = trajectory_oracle(&rho, tau(1.0), 100_000, 1).unwrap();
        assert!(max_abs_diff(exact.matrix(), mc.matrix()) <= 1e-2);
    }

    #[test]
    fn local_sum_generator_disagrees_off_the_diagonal_block() {
        // Entry (1,5) is protected in the channel but dephased by S_z^A + S_z^B.
        let g = DephasingGenerator::LocalSum.eigenvalues();
        assert_eq!(g, [2, 0, 0, 0, -2, -2, 0, -2, -2]);
        assert_ne!(g[1], g[5]);
        assert_eq!(dephasing_mask(tau(3.0)).factor(1, 5), 1.0);

        // On |Ψ₀₀⟩ both generators give the same estimate.
        let p = psi00().projector();
        let a = trajectory_oracle_with(&p, tau(1.0), 5000, 3, DephasingGenerator::Collective).unwrap();
        let b = trajectory_oracle_with(&p, tau(1.0), 5000, 3, DephasingGenerator::LocalSum).unwrap();
        assert_eq!(a, b);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn kraus_and_mask_agree(seed in any::<u64>(), step in 0u32..=100) {
            let rho = random_density(seed);
            let t = tau(step as f64 * 0.1);
            let k = apply_channel(&rho, t, ChannelMode::Kraus);
            let a = apply_channel(&rho, t, ChannelMode::Analytic);
            prop_assert!(max_abs_diff(k.matrix(), a.matrix()) <= 1e-12);
            prop_assert!((a.matrix().trace().re - 1.0).abs() <= 1e-12);
            prop_assert!(DensityMatrix::new(*k.matrix()).is_ok());
        }

        #[test]
        fn channel_is_a_semigroup(seed in any::<u64>(), t1 in 0.0f64..5.0, t2 in 0.0f64..5.0) {
            let rho = random_density(seed);
            let two_step = apply_channel(&apply_channel(&rho, tau(t1), ChannelMode::Analytic), tau(t2), ChannelMode::Analytic);
            let one_step = apply_channel(&rho, tau(t1) + tau(t2), ChannelMode::Analytic);
            prop_assert!(max_abs_diff(two_step.matrix(), one_step.matrix()) <= 1e-12);
        }

        #[test]
        fn oracle_independent_of_thread_count(seed in any::<u64>()) {
            let rho = random_density(seed);
            let n = 3 * TRAJECTORY_BLOCK + 17;
            let many = trajectory_oracle(&rho, tau(0.7), n, seed).unwrap();
            let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
            let single = pool.install(|| trajectory_oracle(&rho, tau(0.7), n, seed).unwrap());
            prop_assert_eq!(many, single);
        }
    }
}
