//! Dense linear algebra for a pair of qutrits.
//!
//! Everything is statically sized: single-qutrit operators are [`Mat3`],
//! two-qutrit operators are [`Mat9`]. The composite basis is ordered
//! `|ab⟩ ↦ 3a + b` with `a` the first (A) qutrit.

use std::f64::consts::PI;

use nalgebra::{SMatrix, SVector, SymmetricEigen};
use num_complex::Complex64;

use crate::{Error, Result};

pub type Mat3 = SMatrix<Complex64, 3, 3>;
pub type Mat9 = SMatrix<Complex64, 9, 9>;
pub type Vec9 = SVector<Complex64, 9>;

/// Local dimension of each subsystem.
pub const QUTRIT: usize = 3;
/// Dimension of the composite space.
pub const DIM: usize = 9;

/// Maximum `|ρ_ij − conj(ρ_ji)|` accepted for a density matrix.
pub const DENSITY_HERMITIAN_TOL: f64 = 1e-12;
/// Maximum `|Tr ρ − 1|` accepted for a density matrix.
pub const DENSITY_TRACE_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted for a density matrix.
pub const DENSITY_PSD_TOL: f64 = -1e-10;
/// Maximum `|⟨ψ|ψ⟩ − 1|` accepted for a pure state.
pub const PURE_NORM_TOL: f64 = 1e-12;
/// Hermiticity tolerance for the eigensolver input.
pub const EIGEN_HERMITIAN_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
pub fn basis_index(a: usize, b: usize) -> usize {
    QUTRIT * a + b
}

/// Computational basis vector `|ab⟩`.
pub fn ket(a: usize, b: usize) -> Vec9 {
    let mut v = Vec9::zeros();
    v[basis_index(a, b)] = ONE;
    v
}

pub fn max_hermitian_deviation<const N: usize>(m: &SMatrix<Complex64, N, N>) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..N {
        for j in i..N {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `max_ij |a_ij − b_ij|`.
pub fn max_abs_diff<const N: usize>(a: &SMatrix<Complex64, N, N>, b: &SMatrix<Complex64, N, N>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `‖U†U − I‖_max`.
pub fn unitarity_deviation<const N: usize>(u: &SMatrix<Complex64, N, N>) -> f64 {
    max_abs_diff(&(u.adjoint() * u), &SMatrix::identity())
}

fn is_finite<const N: usize>(m: &SMatrix<Complex64, N, N>) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Kronecker product `a ⊗ b` in the `|ab⟩ ↦ 3a + b` convention.
pub fn tensor_product(a: &Mat3, b: &Mat3) -> Mat9 {
    Mat9::from_fn(|row, col| {
        let (i, k) = (row / QUTRIT, row % QUTRIT);
        let (j, l) = (col / QUTRIT, col % QUTRIT);
        a[(i, j)] * b[(k, l)]
    })
}

/// Transposes the B indices: `(ρ^{T_B})_{(ab),(a'b')} = ρ_{(ab'),(a'b)}`.
pub fn partial_transpose_b(m: &Mat9) -> Mat9 {
    Mat9::from_fn(|row, col| {
        let (a, b) = (row / QUTRIT, row % QUTRIT);
        let (ap, bp) = (col / QUTRIT, col % QUTRIT);
        m[(basis_index(a, bp), basis_index(ap, b))]
    })
}

/// Realignment: `R_{(aa'),(bb')} = ρ_{(ab),(a'b')}`.
pub fn realign(m: &Mat9) -> Mat9 {
    Mat9::from_fn(|row, col| {
        let (a, ap) = (row / QUTRIT, row % QUTRIT);
        let (b, bp) = (col / QUTRIT, col % QUTRIT);
        m[(basis_index(a, b), basis_index(ap, bp))]
    })
}

/// Reduced operator on A: `Tr_B m`.
pub fn partial_trace_b(m: &Mat9) -> Mat3 {
    Mat3::from_fn(|a, ap| {
        (0..QUTRIT)
            .map(|b| m[(basis_index(a, b), basis_index(ap, b))])
            .sum()
    })
}

/// Sum of singular values.
pub fn trace_norm(m: &Mat9) -> f64 {
    m.singular_values().iter().sum()
}

/// Eigendecomposition of a Hermitian 9×9 matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: [f64; DIM],
    /// Column `i` is the eigenvector for `values[i]`.
    pub vectors: Mat9,
}

impl HermitianEigen {
    pub fn reconstruct(&self) -> Mat9 {
        let mut out = Mat9::zeros();
        for (i, &lambda) in self.values.iter().enumerate() {
            let v = self.vectors.column(i);
            out += v * v.adjoint() * Complex64::from(lambda);
        }
        out
    }
}

pub fn hermitian_eigen(m: &Mat9) -> Result<HermitianEigen> {
    if !is_finite(m) {
        return Err(Error::NonFinite);
    }
    let deviation = max_hermitian_deviation(m);
    if deviation > EIGEN_HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    let sym = (m + m.adjoint()) * Complex64::from(0.5);
    let eig = SymmetricEigen::new(sym);

    let mut order: [usize; DIM] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let values = order.map(|i| eig.eigenvalues[i]);
    let vectors = Mat9::from_fn(|r, c| eig.eigenvectors[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

pub fn hermitian_eigenvalues(m: &Mat9) -> Result<[f64; DIM]> {
    hermitian_eigen(m).map(|e| e.values)
}

/// `Re Tr(op · ρ)` for a Hermitian observable.
pub fn expectation(op: &Mat9, rho: &DensityMatrix) -> f64 {
    let r = rho.matrix();
    let mut acc = ZERO;
    for i in 0..DIM {
        for j in 0..DIM {
            acc += op[(i, j)] * r[(j, i)];
        }
    }
    debug_assert!(
        acc.im.abs() <= 1e-11,
        "expectation of a Hermitian operator has imaginary part {}",
        acc.im
    );
    acc.re
}

/// A 9×9 Hermitian, unit-trace, positive semidefinite operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(Mat9);

impl DensityMatrix {
    pub fn new(m: Mat9) -> Result<Self> {
        Self::check(&m)?;
        Ok(DensityMatrix(m))
    }

    /// Wraps a matrix produced by a trace- and positivity-preserving
    /// construction. Invariants are re-checked in debug builds only.
    pub(crate) fn from_trusted(m: Mat9) -> Self {
        debug_assert!(Self::check(&m).is_ok(), "{:?}", Self::check(&m));
        DensityMatrix(m)
    }

    fn check(m: &Mat9) -> Result<()> {
        if !is_finite(m) {
            return Err(Error::NonFinite);
        }
        let deviation = max_hermitian_deviation(m);
        if deviation > DENSITY_HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = m.trace();
        if (trace - ONE).norm() > DENSITY_TRACE_TOL {
            return Err(Error::NotUnitTrace { trace: trace.re });
        }
        let min_eigenvalue = hermitian_eigenvalues(m)?[0];
        if min_eigenvalue < DENSITY_PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(())
    }

    /// `I₉ / 9`.
    pub fn maximally_mixed() -> Self {
        DensityMatrix(Mat9::identity() / Complex64::from(DIM as f64))
    }

    pub fn product(a: &Mat3, b: &Mat3) -> Result<Self> {
        Self::new(tensor_product(a, b))
    }

    pub fn matrix(&self) -> &Mat9 {
        &self.0
    }

    pub fn into_matrix(self) -> Mat9 {
        self.0
    }

    /// `w·self + (1 − w)·other`.
    pub fn mix(&self, weight: f64, other: &DensityMatrix) -> Result<Self> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::param("weight", weight, "must lie in [0, 1]"));
        }
        Ok(DensityMatrix(
            self.0 * Complex64::from(weight) + other.0 * Complex64::from(1.0 - weight),
        ))
    }

    pub fn reduced_a(&self) -> Mat3 {
        partial_trace_b(&self.0)
    }

    /// `Tr(ρ_A²)`.
    pub fn reduced_purity(&self) -> f64 {
        let ra = self.reduced_a();
        (ra * ra).trace().re
    }
}

impl From<&PureState> for DensityMatrix {
    fn from(psi: &PureState) -> Self {
        psi.projector()
    }
}

/// A normalized two-qutrit state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState(Vec9);

impl PureState {
    pub fn new(amplitudes: Vec9) -> Result<Self> {
        let norm_sqr = amplitudes.norm_squared();
        if !norm_sqr.is_finite() {
            return Err(Error::NonFinite);
        }
        if (norm_sqr - 1.0).abs() > PURE_NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(PureState(amplitudes))
    }

    /// Scales a nonzero vector to unit norm.
    pub fn normalize(v: Vec9) -> Result<Self> {
        let norm = v.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NotNormalized {
                norm_sqr: norm * norm,
            });
        }
        Ok(PureState(v / Complex64::from(norm)))
    }

    pub fn amplitudes(&self) -> &Vec9 {
        &self.0
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.0.dotc(&other.0)
    }

    /// True when `|⟨self|other⟩| = 1` within `tol`.
    pub fn equals_up_to_phase(&self, other: &PureState, tol: f64) -> bool {
        (self.inner(other).norm() - 1.0).abs() <= tol
    }

    /// Applies a unitary and renormalizes away rounding drift.
    pub fn transformed(&self, u: &Mat9) -> Result<Self> {
        Self::normalize(u * self.0)
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix(self.0 * self.0.adjoint())
    }
}

/// Index pair `(m, n) ∈ Z₃ × Z₃` labelling Weyl operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeylLabel {
    m: u8,
    n: u8,
}

impl WeylLabel {
    pub fn new(m: i64, n: i64) -> Self {
        WeylLabel {
            m: m.rem_euclid(3) as u8,
            n: n.rem_euclid(3) as u8,
        }
    }

    pub fn m(self) -> usize {
        self.m as usize
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    /// All nine labels, `m`-major.
    pub fn all() -> impl Iterator<Item = WeylLabel> {
        (0..3).flat_map(|m| (0..3).map(move |n| WeylLabel::new(m, n)))
    }
}

/// `W_(m,n) = Σ_k e^{2πi kn/3} |k⟩⟨k+m|`.
pub fn weyl_operator(label: WeylLabel) -> Mat3 {
    let mut w = Mat3::zeros();
    for k in 0..QUTRIT {
        let phase = 2.0 * PI * (k * label.n()) as f64 / 3.0;
        w[(k, (k + label.m()) % QUTRIT)] = if (k * label.n()).is_multiple_of(QUTRIT) {
            ONE
        } else {
            Complex64::from_polar(1.0, phase)
        };
    }
    w
}

/// `X|k⟩ = |k+1 mod 3⟩`.
pub fn cyclic_shift() -> Mat3 {
    let mut x = Mat3::zeros();
    for k in 0..QUTRIT {
        x[((k + 1) % QUTRIT, k)] = ONE;
    }
    x
}

/// `(|00⟩ + |11⟩ + |22⟩)/√3`.
pub fn psi00() -> PureState {
    let amp = Complex64::from(1.0 / 3f64.sqrt());
    PureState((0..QUTRIT).map(|k| ket(k, k) * amp).sum())
}

/// `(|02⟩ + |10⟩ + |21⟩)/√3`, the maximally entangled state inside the
/// decoherence-free block. Pinned by amplitudes rather than a Weyl label.
pub fn dfs_state() -> PureState {
    let amp = Complex64::from(1.0 / 3f64.sqrt());
    PureState((ket(0, 2) + ket(1, 0) + ket(2, 1)) * amp)
}

/// `(W_label ⊗ I)|Ψ₀₀⟩`.
pub fn max_entangled_state(label: WeylLabel) -> PureState {
    let op = tensor_product(&weyl_operator(label), &Mat3::identity());
    // Unitary on a unit vector; no renormalization needed.
    PureState(op * psi00().0)
}
