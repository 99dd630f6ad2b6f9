//! Entanglement diagnostics based on the partial transpose and realignment.
//!
//! Negativity is `N(ρ) = Σ |λᵢ|` over the negative eigenvalues of `ρ^{T_B}`,
//! so a maximally entangled qutrit pair has `N = 1`.

use serde::Serialize;

use crate::channel::Tau;
use crate::optimize::{bisect, golden_section_max};
use crate::qcore::{hermitian_eigenvalues, partial_transpose_b, realign, trace_norm, DensityMatrix, DIM};
use crate::states::{evolved_rho_alpha_beta, FamilyParams};
use crate::{Error, Result};

/// An eigenvalue below `-NPT_TOLERANCE` marks the state NPT.
pub const NPT_TOLERANCE: f64 = 1e-10;
/// Match tolerance between a numeric PT eigenvalue and the closed form.
pub const INVARIANT_EIGENVALUE_TOL: f64 = 1e-10;
/// Realignment trace norm must exceed `1 + CCNR_TOLERANCE`.
pub const CCNR_TOLERANCE: f64 = 1e-10;

fn pt_eigenvalues(rho: &DensityMatrix) -> [f64; DIM] {
    hermitian_eigenvalues(&partial_transpose_b(rho.matrix()))
        .expect("partial transpose of a density matrix is Hermitian")
}

fn negative_part(eigenvalues: &[f64]) -> f64 {
    eigenvalues.iter().map(|&l| (-l).max(0.0)).sum()
}

pub fn negativity(rho: &DensityMatrix) -> f64 {
    negative_part(&pt_eigenvalues(rho))
}

/// `(‖ρ^{T_B}‖₁ − 1)/2`, the singular-value route to the same number.
pub fn negativity_from_trace_norm(rho: &DensityMatrix) -> f64 {
    0.5 * (trace_norm(&partial_transpose_b(rho.matrix())) - 1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PtSpectrumReport {
    /// Ascending.
    pub eigenvalues: [f64; DIM],
    pub negativity: f64,
    pub is_npt: bool,
    pub min_eigenvalue: f64,
}

pub fn pt_report(rho: &DensityMatrix) -> PtSpectrumReport {
    pt_report_with_tolerance(rho, NPT_TOLERANCE)
}

pub fn pt_report_with_tolerance(rho: &DensityMatrix, npt_tolerance: f64) -> PtSpectrumReport {
    let eigenvalues = pt_eigenvalues(rho);
    let min_eigenvalue = eigenvalues[0];
    PtSpectrumReport {
        eigenvalues,
        negativity: negative_part(&eigenvalues),
        is_npt: min_eigenvalue < -npt_tolerance,
        min_eigenvalue,
    }
}

/// Closed form of the threefold-degenerate negative PT eigenvalue of `ρ(α, β)`
/// at `τ = 0`:
/// `(1/9)[(1−α)(1−β) − 3√(α²(1−β)² − αβ(1−β) + β²)]`.
pub fn analytic_negative_eigenvalue(params: FamilyParams) -> f64 {
    eq_negative_eigenvalue(params.alpha(), params.beta())
}

fn eq_negative_eigenvalue(alpha: f64, beta: f64) -> f64 {
    let ob = 1.0 - beta;
    let radicand = alpha * alpha * ob * ob - alpha * beta * ob + beta * beta;
    ((1.0 - alpha) * ob - 3.0 * radicand.max(0.0).sqrt()) / 9.0
}

/// Number of entries of `eigenvalues` within `tol` of `target`.
pub fn matching_eigenvalue_count(eigenvalues: &[f64], target: f64, tol: f64) -> usize {
    eigenvalues.iter().filter(|&&l| (l - target).abs() <= tol).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InvariantEigenvalue {
    /// Some PT eigenvalue matched the closed form at every time point.
    pub holds: bool,
    /// The closed-form value that was tracked.
    pub witness: f64,
    /// Worst distance from the closed form to the nearest PT eigenvalue.
    pub max_deviation: f64,
}

/// Checks that one PT eigenvalue of the evolved `ρ(α, β)` stays pinned to the
/// closed-form value at every requested time.
pub fn invariant_eigenvalue_check(params: FamilyParams, taus: &[Tau]) -> Result<InvariantEigenvalue> {
    if taus.len() < 2 {
        return Err(Error::param("taus", taus.len() as f64, "need at least two time points"));
    }
    let witness = analytic_negative_eigenvalue(params);
    let max_deviation = taus
        .iter()
        .map(|&t| {
            pt_eigenvalues(&evolved_rho_alpha_beta(params, t))
                .iter()
                .map(|l| (l - witness).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    Ok(InvariantEigenvalue {
        holds: max_deviation <= INVARIANT_EIGENVALUE_TOL,
        witness,
        max_deviation,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CcnrReport {
    /// `‖R(ρ)‖₁`.
    pub value: f64,
    pub entangled: bool,
}

/// Realignment (computable cross-norm) test. A trace norm above 1 certifies
/// entanglement; a value at or below 1 is inconclusive.
pub fn ccnr_entangled(rho: &DensityMatrix) -> CcnrReport {
    let value = trace_norm(&realign(rho.matrix()));
    CcnrReport {
        value,
        entangled: value > 1.0 + CCNR_TOLERANCE,
    }
}

/// Smallest `α` for which `ρ(α, β)` is NPT at every `β ∈ [0, 1]`, i.e. where
/// `max_β` of the closed-form eigenvalue crosses zero.
pub fn npt_alpha_boundary() -> f64 {
    bisect(max_over_beta, 0.2, 0.5, 1e-13).expect("sign change on [0.2, 0.5]")
}

fn max_over_beta(alpha: f64) -> f64 {
    // coarse scan, then golden-section refine around the best cell
    const CELLS: usize = 400;
    let step = 1.0 / CELLS as f64;
    let best = (0..=CELLS)
        .max_by(|&i, &j| {
            eq_negative_eigenvalue(alpha, i as f64 * step).total_cmp(&eq_negative_eigenvalue(alpha, j as f64 * step))
        })
        .unwrap();
    let lo = (best as f64 - 1.0).max(0.0) * step;
    let hi = (best as f64 + 1.0).min(CELLS as f64) * step;
    let (_, refined) = golden_section_max(|b| eq_negative_eigenvalue(alpha, b), lo, hi, 1e-12);
    refined.max(eq_negative_eigenvalue(alpha, best as f64 * step))
}
