//! Random operators for unit tests.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::qcore::{tensor_product, DensityMatrix, Mat3, Mat9};

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Full-rank Ginibre state `G G† / Tr(G G†)`.
pub fn random_density(seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = Mat9::from_fn(|_, _| gaussian(&mut rng));
    let m = g * g.adjoint();
    let m = m / m.trace();
    DensityMatrix::new((m + m.adjoint()) * Complex64::from(0.5)).unwrap()
}

fn random_qutrit_density(rng: &mut ChaCha8Rng) -> Mat3 {
    let g = Mat3::from_fn(|_, _| gaussian(rng));
    let m = g * g.adjoint();
    let m = m / m.trace();
    (m + m.adjoint()) * Complex64::from(0.5)
}

pub fn random_product_density(seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_qutrit_density(&mut rng);
    let b = random_qutrit_density(&mut rng);
    DensityMatrix::new(tensor_product(&a, &b)).unwrap()
}
