//! Bifurcation angles of the family nodal patterns.
//!
//! For the (2,3) family the boundary behaviour on `{x = π}` is governed by
//! `f(β,y) = (3/2)·sin(2y+β)/sin(3y)` whose unique critical point `y_β` in
//! `(0, π/3)` solves `g(β,y) = 0` with
//! `g(β,y) = 2 cos(2y+β) sin(3y) − 3 cos(3y) sin(2y+β)`. Writing
//! `h(t) = t(5+3t⁴)/(2(1+5t²))`, the zero set of `g` is exactly
//! `cot β = h(cot y)`; since `h` is an increasing bijection of ℝ the root is
//! unique and bracketable. The infimum `m_β = f(β, y_β)` then fixes the
//! bifurcation angle through `cot θ_β = m_β`.
//!
//! For the (1,2) family the analogues are `cot³ y_β = cot β` and
//! `cot θ_β = 2 sin(y_β+β)/sin(2y_β)`.

use crate::eigenfunction::Family;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BifurcationError {
    #[error("beta = {beta} outside the open interval ({lo}, {hi}) for this family")]
    BetaOutOfRange { beta: f64, lo: f64, hi: f64 },
    #[error("f(β, y) has a pole at y = {pole} (requested y = {y})")]
    AtPole { y: f64, pole: f64 },
    #[error("family {0:?} has no bifurcation data")]
    UnsupportedFamily(&'static str),
}

/// `h(t) = t(5 + 3t⁴) / (2(1 + 5t²))`, an odd increasing bijection of ℝ.
pub fn h(t: f64) -> f64 {
    0.5 * t * (5.0 + 3.0 * t.powi(4)) / (1.0 + 5.0 * t * t)
}

/// `h'(t) = (5/2)(3t²−1)²(t²+1)/(1+5t²)² ≥ 0`.
pub fn h_prime(t: f64) -> f64 {
    let q = 3.0 * t * t - 1.0;
    2.5 * q * q * (t * t + 1.0) / (1.0 + 5.0 * t * t).powi(2)
}

/// `ℓ(t) = 2t³(5+t²)/(3+5t⁴)`; the zero set of `g` is `tan β = ℓ(tan y)`,
/// giving the small-angle growth `β ∼ (10/3)·y³`.
pub fn ell(t: f64) -> f64 {
    2.0 * t.powi(3) * (5.0 + t * t) / (3.0 + 5.0 * t.powi(4))
}

const F_POLES: [f64; 4] = [0.0, PI / 3.0, 2.0 * PI / 3.0, PI];

/// `f(β,y) = (3/2)·sin(2y+β)/sin(3y)`, with poles at multiples of `π/3`.
pub fn f(beta: f64, y: f64) -> Result<f64, BifurcationError> {
    for pole in F_POLES {
        if (y - pole).abs() < 1e-12 {
            return Err(BifurcationError::AtPole { y, pole });
        }
    }
    Ok(1.5 * (2.0 * y + beta).sin() / (3.0 * y).sin())
}

/// `g(β,y) = 2 cos(2y+β) sin(3y) − 3 cos(3y) sin(2y+β)`; satisfies
/// `∂_y f = 3g / (2 sin²(3y))`.
pub fn g(beta: f64, y: f64) -> f64 {
    2.0 * (2.0 * y + beta).cos() * (3.0 * y).sin() - 3.0 * (3.0 * y).cos() * (2.0 * y + beta).sin()
}

// ∂_y g = 5 sin(3y) sin(2y+β), used for the Newton polish.
fn g_prime(beta: f64, y: f64) -> f64 {
    5.0 * (3.0 * y).sin() * (2.0 * y + beta).sin()
}

/// Solved bifurcation data for one `β`.
#[derive(Debug, Clone, Serialize)]
pub struct BifurcationResult {
    pub family: String,
    pub beta: f64,
    pub y_beta: f64,
    /// Infimum of `f(β,·)` at `y_β`; populated for the (2,3) family, and
    /// carrying `cot θ_β` for the (1,2) family.
    pub m_beta: Option<f64>,
    pub theta_beta: f64,
    /// cot θ_β, exposed so tabulated comparisons stay exact.
    pub cot_theta_beta: f64,
    /// Residuals of the two defining equations at the returned values.
    pub residuals: (f64, f64),
    /// Set when `y_β` is within 1e-6 of a degenerate endpoint.
    pub near_degenerate: bool,
}

fn beta_interval(family: Family) -> Result<(f64, f64), BifurcationError> {
    match family {
        Family::TwoThree => Ok((0.0, PI / 3.0)),
        Family::OneTwo => Ok((0.0, PI / 2.0)),
        Family::General { .. } => Err(BifurcationError::UnsupportedFamily("general")),
    }
}

/// Unique `y_β` of the family's defining equation, by 100 bisection steps on
/// the monotone bracket followed by 3 Newton polish steps.
pub fn solve_y_beta(family: Family, beta: f64) -> Result<f64, BifurcationError> {
    let (lo_b, hi_b) = beta_interval(family)?;
    if !(beta > lo_b && beta < hi_b) {
        return Err(BifurcationError::BetaOutOfRange {
            beta,
            lo: lo_b,
            hi: hi_b,
        });
    }
    match family {
        Family::TwoThree => {
            // cot β = h(cot y): h(cot ·) decreases on (0, π/3), so bisect on
            // the sign of h(cot y) − cot β.
            let target = beta.tan().recip();
            let eps = 1e-10;
            let (mut lo, mut hi) = (eps, PI / 3.0 - eps);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if h(mid.tan().recip()) > target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let mut y = 0.5 * (lo + hi);
            for _ in 0..3 {
                let d = g_prime(beta, y);
                if d.abs() > 1e-14 {
                    y -= g(beta, y) / d;
                }
            }
            Ok(y.clamp(eps, PI / 3.0 - eps))
        }
        Family::OneTwo => {
            // cot³ y = cot β has the closed form tan y = cbrt(tan β).
            Ok(beta.tan().cbrt().atan())
        }
        Family::General { .. } => unreachable!(),
    }
}

/// Full bifurcation data `(y_β, m_β, θ_β)` with residuals.
pub fn solve_theta_beta(family: Family, beta: f64) -> Result<BifurcationResult, BifurcationError> {
    let y = solve_y_beta(family, beta)?;
    match family {
        Family::TwoThree => {
            let m = 1.5 * (2.0 * y + beta).sin() / (3.0 * y).sin();
            let theta = m.recip().atan(); // arccot on (0, ∞)
            let r1 = g(beta, y);
            let r2 = 2.0 * theta.cos() * (3.0 * y).sin() - 3.0 * theta.sin() * (2.0 * y + beta).sin();
            Ok(BifurcationResult {
                family: "2,3".into(),
                beta,
                y_beta: y,
                m_beta: Some(m),
                theta_beta: theta,
                cot_theta_beta: m,
                residuals: (r1, r2),
                near_degenerate: y < 1e-6 || PI / 3.0 - y < 1e-6,
            })
        }
        Family::OneTwo => {
            let cot_theta = 2.0 * (y + beta).sin() / (2.0 * y).sin();
            let theta = cot_theta.recip().atan();
            let r1 = y.tan().recip().powi(3) - beta.tan().recip();
            let r2 = cot_theta * (2.0 * y).sin() - 2.0 * (y + beta).sin();
            Ok(BifurcationResult {
                family: "1,2".into(),
                beta,
                y_beta: y,
                m_beta: Some(cot_theta),
                theta_beta: theta,
                cot_theta_beta: cot_theta,
                residuals: (r1, r2),
                near_degenerate: y < 1e-6 || PI / 2.0 - y < 1e-6,
            })
        }
        Family::General { .. } => unreachable!(),
    }
}
