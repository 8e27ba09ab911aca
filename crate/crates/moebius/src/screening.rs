//! Necessary conditions for an eigenvalue of `M_1` to be Courant-sharp.
//!
//! Three filters are applied in order:
//!
//! 1. multiplicity: inside a cluster only the first label can be sharp;
//! 2. counting cutoff: combining the lower bound `N(λ) ≥ πλ/4 − 2√λ + 1`
//!    with `N(λ_k) ≤ k−1` and the Faber-Krahn inequality forces
//!    `P(√λ_k) ≥ 0` for the quadratic `P(x) = (π/j₀₁² − π/4)x² + 2x − 2`,
//!    which is negative for `x ≥ 8`; hence `λ_k < 64`;
//! 3. Faber-Krahn ratio: for `k ≥ 4`, a sharp eigenvalue needs
//!    `k ≤ λ_k·π/j₀₁²`.
//!
//! `j₀₁` is the first positive zero of the order-zero Bessel function. It is
//! stored as a hardcoded constant and cross-validated against a bisection
//! root of the power-series evaluation, so no special-function dependency is
//! needed.

use crate::spectrum::{eigenvalue_at_label, SpectrumTable};
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScreeningError {
    #[error("spectrum table is empty")]
    EmptyTable,
    #[error("table covers λ ≤ {covered}, screening needs λ ≤ {needed}")]
    TableTooShort { covered: f64, needed: f64 },
    #[error("stored j01 = {stored} disagrees with the bisection root {computed} beyond {tol}")]
    BesselConstantMismatch {
        stored: f64,
        computed: f64,
        tol: f64,
    },
}

/// First positive zero of `J₀`, to 16 significant digits.
pub const J01: f64 = 2.404825557695773;

/// The Bessel constant used by the Faber-Krahn ratio, wrapped so a tampered
/// value can be injected for fault tests and validated against an
/// independent root computation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BesselConstant {
    pub j01: f64,
}

impl Default for BesselConstant {
    fn default() -> Self {
        BesselConstant { j01: J01 }
    }
}

impl BesselConstant {
    pub fn new(j01: f64) -> Self {
        BesselConstant { j01 }
    }

    /// Check the stored value against the series/bisection root on the
    /// bracket 2 ≤ x ≤ 3.
    pub fn validate(&self, tol: f64) -> Result<(), ScreeningError> {
        let computed = j01_by_bisection();
        if (self.j01 - computed).abs() > tol {
            return Err(ScreeningError::BesselConstantMismatch {
                stored: self.j01,
                computed,
                tol,
            });
        }
        Ok(())
    }
}

/// `J₀(x)` by its power series `Σ (−1)^k (x/2)^{2k} / (k!)²`.
///
/// Converges quickly for the |x| ≤ 3 range needed here.
pub fn bessel_j0_series(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=40u32 {
        term *= -q / ((k * k) as f64);
        sum += term;
        if term.abs() < 1e-19 {
            break;
        }
    }
    sum
}

/// Root of `J₀` on [2, 3] by 60 bisection steps.
pub fn j01_by_bisection() -> f64 {
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    // J0(2) > 0 > J0(3).
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if bessel_j0_series(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The screening quadratic `P(x) = (π/j₀₁² − π/4)x² + 2x − 2`.
pub fn screening_quadratic(x: f64, j01: BesselConstant) -> f64 {
    let a = PI / (j01.j01 * j01.j01) - PI / 4.0;
    a * x * x + 2.0 * x - 2.0
}

/// Cutoff data derived from the quadratic: any Courant-sharp eigenvalue
/// satisfies `P(√λ) ≥ 0`, and `P` is negative from its positive root on.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WeylCutoff {
    /// `λ` bound actually used by the pipeline: square of the root rounded
    /// up to the next integer (8² = 64).
    pub cutoff: f64,
    /// Exact positive root of `P`, for diagnostics.
    pub quadratic_root: f64,
}

/// Compute the cutoff `64 = 8²` together with the exact root of `P`.
pub fn weyl_cutoff(j01: BesselConstant) -> WeylCutoff {
    let a = PI / (j01.j01 * j01.j01) - PI / 4.0;
    // a < 0: the larger root is (−2 − √(4 + 8a)) / (2a).
    let disc = 4.0 + 8.0 * a;
    let root = (-2.0 - disc.sqrt()) / (2.0 * a);
    let cutoff = root.ceil() * root.ceil();
    WeylCutoff {
        cutoff,
        quadratic_root: root,
    }
}

/// Labels that survive the multiplicity rule: label 1 and every first label
/// of a cluster (`λ_{k−1} < λ_k`).
pub fn multiplicity_filter(table: &SpectrumTable) -> Vec<usize> {
    table.clusters.iter().map(|c| c.first_label).collect()
}

/// `λ·π/j₀₁²`; the Faber-Krahn test for `k ≥ 4` is `k ≤ ratio`.
pub fn faber_krahn_ratio(lambda: f64, j01: BesselConstant) -> f64 {
    lambda * PI / (j01.j01 * j01.j01)
}

/// Full screening report over a table covering at least `λ ≤ 65`.
#[derive(Debug, Clone, Serialize)]
pub struct ScreeningReport {
    pub candidates_after_multiplicity: Vec<usize>,
    pub below_weyl_cutoff: Vec<usize>,
    pub fk_ratios: BTreeMap<usize, f64>,
    pub weyl_cutoff: f64,
    pub quadratic_root: f64,
    pub survivors: Vec<usize>,
}

/// Apply all three filters with the standard Bessel constant.
pub fn screen(table: &SpectrumTable) -> Result<ScreeningReport, ScreeningError> {
    screen_with(table, BesselConstant::default())
}

/// Apply all three filters with an explicit Bessel constant.
///
/// Survivors are the multiplicity-filter labels `k` with `λ_k` below the
/// cutoff and, for `k ≥ 4`, `k ≤ λ_k·π/j₀₁²`. Labels 1–3 are exempt from
/// the ratio test, whose hypothesis requires at least 4 nodal domains.
pub fn screen_with(
    table: &SpectrumTable,
    j01: BesselConstant,
) -> Result<ScreeningReport, ScreeningError> {
    if table.clusters.is_empty() {
        return Err(ScreeningError::EmptyTable);
    }
    if table.lambda_max < 65.0 {
        return Err(ScreeningError::TableTooShort {
            covered: table.lambda_max,
            needed: 65.0,
        });
    }

    let candidates = multiplicity_filter(table);
    let cut = weyl_cutoff(j01);
    let mut fk_ratios = BTreeMap::new();
    let mut below = Vec::new();
    let mut survivors = Vec::new();
    for &k in &candidates {
        let lambda = eigenvalue_at_label(table, k).expect("label from the same table");
        let ratio = faber_krahn_ratio(lambda, j01);
        if k >= 4 {
            fk_ratios.insert(k, ratio);
        }
        if lambda < cut.cutoff {
            below.push(k);
            if k < 4 || (k as f64) <= ratio {
                survivors.push(k);
            }
        }
    }
    Ok(ScreeningReport {
        candidates_after_multiplicity: candidates,
        below_weyl_cutoff: below,
        fk_ratios,
        weyl_cutoff: cut.cutoff,
        quadratic_root: cut.quadratic_root,
        survivors,
    })
}
