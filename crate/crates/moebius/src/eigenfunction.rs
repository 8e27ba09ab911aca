//! Eigenfunctions of the square Möbius strip as explicit trigonometric
//! combinations.
//!
//! Every Dirichlet eigenfunction of `M_1` handled here is a finite sum of
//! modes `c · sin(mx) · {cos|sin}(ny)` with `m + n` odd. Evaluation and all
//! partial derivatives are closed-form; differentiating a mode multiplies by
//! the frequency and rotates the trigonometric phase by `π/2`.
//!
//! The 4-dimensional eigenspaces spanned by a pair `(m, n)` reduce, up to
//! isometry, to the two-parameter family
//! `Φ_{β,θ}(x,y) = cos θ sin(mx) sin(ny) + sin θ sin(nx) sin(my + β)`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

const TWO_PI: f64 = 2.0 * PI;
/// Coefficients below this (relative to the largest one) are pruned after
/// trigonometric expansion so mode lists stay canonical.
const PRUNE_TOL: f64 = 1e-15;

#[derive(Debug, Error)]
pub enum EigenfunctionError {
    #[error("mode ({m},{n}) is not admissible on the Möbius strip: m+n must be odd, m ≥ 1")]
    InadmissibleMode { m: u32, n: u32 },
    #[error("family pair ({m},{n}) must have m ≠ n and m+n odd")]
    BadFamilyPair { m: u32, n: u32 },
    #[error("spec has no nonzero coefficient")]
    DegenerateSpec,
    #[error("derivative order {order} exceeds the supported total order 4")]
    UnsupportedOrder { order: u32 },
    #[error("stern perturbation must be nonnegative, got {0}")]
    NegativeStern(f64),
}

/// Which trigonometric factor multiplies `sin(mx)` in the y-variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrigKind {
    #[serde(rename = "cos")]
    Cosine,
    #[serde(rename = "sin")]
    Sine,
}

/// One mode `coefficient · sin(m x) · {cos|sin}(n y)`.
///
/// For `n = 0` only the cosine kind is meaningful (the y-factor is the
/// constant 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrigMode {
    pub m: u32,
    pub n: u32,
    pub kind: TrigKind,
    #[serde(rename = "c")]
    pub coefficient: f64,
}

impl TrigMode {
    fn admissible(&self) -> bool {
        self.m >= 1 && !(self.m + self.n).is_multiple_of(2) && !(self.n == 0 && self.kind == TrigKind::Sine)
    }

    /// Value of the mode's y-factor with `oy` derivatives applied.
    /// Differentiation shifts the phase by `π/2` per order.
    fn y_factor(&self, y: f64, oy: u32) -> f64 {
        let n = self.n as f64;
        if self.n == 0 {
            return if oy == 0 { 1.0 } else { 0.0 };
        }
        let phase = n * y + oy as f64 * PI / 2.0;
        let amp = n.powi(oy as i32);
        match self.kind {
            TrigKind::Sine => amp * phase.sin(),
            TrigKind::Cosine => amp * phase.cos(),
        }
    }

    fn x_factor(&self, x: f64, ox: u32) -> f64 {
        let m = self.m as f64;
        m.powi(ox as i32) * (m * x + ox as f64 * PI / 2.0).sin()
    }
}

/// A finite mode combination with its common eigenvalue `m² + n²`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenfunctionSpec {
    pub modes: Vec<TrigMode>,
    pub eigenvalue: f64,
}

/// The two analysed eigenspace families plus the general pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Pair (1,2): the 4-dimensional second eigenspace, eigenvalue 5.
    OneTwo,
    /// Pair (2,3): the 4-dimensional eigenspace at eigenvalue 13.
    TwoThree,
    /// Any admissible pair (m,n) with m+n odd, m ≠ n.
    General { m: u32, n: u32 },
}

impl Family {
    pub fn pair(&self) -> (u32, u32) {
        match *self {
            Family::OneTwo => (1, 2),
            Family::TwoThree => (2, 3),
            Family::General { m, n } => (m, n),
        }
    }

    /// Canonical β interval length: translating by `π/n` shifts β by the
    /// same amount and moves the nodal set by an isometry, so β reduces to
    /// `(0, π/n]`.
    pub fn beta_period(&self) -> f64 {
        let (_, n) = self.pair();
        PI / n as f64
    }
}

/// Parameters `(β, θ)` of a family eigenfunction
/// `cos θ sin(mx) sin(ny) + sin θ sin(nx) sin(my + β)`.
#[derive(Debug, Clone, Copy)]
pub struct FamilyParams {
    pub family: Family,
    pub beta: f64,
    pub theta: f64,
}

impl FamilyParams {
    pub fn new(family: Family, beta: f64, theta: f64) -> Self {
        FamilyParams {
            family,
            beta,
            theta,
        }
    }

    pub fn spec(&self) -> Result<EigenfunctionSpec, EigenfunctionError> {
        let (m, n) = self.family.pair();
        family_to_spec(self, m, n)
    }
}

/// Expand `cos θ sin(mx) sin(ny) + sin θ sin(nx) sin(my + β)` into the real
/// mode basis, using `sin(my+β) = cos β sin(my) + sin β cos(my)`.
pub fn family_to_spec(
    params: &FamilyParams,
    m: u32,
    n: u32,
) -> Result<EigenfunctionSpec, EigenfunctionError> {
    if m == n || m < 1 || n < 1 || (m + n).is_multiple_of(2) {
        return Err(EigenfunctionError::BadFamilyPair { m, n });
    }
    let (beta, theta) = (params.beta, params.theta);
    let modes = vec![
        TrigMode {
            m,
            n,
            kind: TrigKind::Sine,
            coefficient: theta.cos(),
        },
        TrigMode {
            m: n,
            n: m,
            kind: TrigKind::Sine,
            coefficient: theta.sin() * beta.cos(),
        },
        TrigMode {
            m: n,
            n: m,
            kind: TrigKind::Cosine,
            coefficient: theta.sin() * beta.sin(),
        },
    ];
    EigenfunctionSpec::new(modes)
}

impl EigenfunctionSpec {
    /// Build a spec from raw modes; prunes negligible coefficients, merges
    /// duplicates and checks admissibility and the shared eigenvalue.
    pub fn new(modes: Vec<TrigMode>) -> Result<Self, EigenfunctionError> {
        let mut merged: Vec<TrigMode> = Vec::new();
        for mode in modes {
            if !mode.admissible() {
                return Err(EigenfunctionError::InadmissibleMode {
                    m: mode.m,
                    n: mode.n,
                });
            }
            if let Some(existing) = merged
                .iter_mut()
                .find(|e| e.m == mode.m && e.n == mode.n && e.kind == mode.kind)
            {
                existing.coefficient += mode.coefficient;
            } else {
                merged.push(mode);
            }
        }
        let max_c = merged
            .iter()
            .map(|m| m.coefficient.abs())
            .fold(0.0, f64::max);
        if max_c == 0.0 {
            return Err(EigenfunctionError::DegenerateSpec);
        }
        merged.retain(|m| m.coefficient.abs() > PRUNE_TOL * max_c);
        merged.sort_by_key(|m| (m.m, m.n, m.kind == TrigKind::Sine));

        let ev = {
            let p = &merged[0];
            (p.m * p.m + p.n * p.n) as f64
        };
        for p in &merged {
            debug_assert_eq!((p.m * p.m + p.n * p.n) as f64, ev, "modes must share λ");
        }
        Ok(EigenfunctionSpec {
            modes: merged,
            eigenvalue: ev,
        })
    }

    /// A single pure mode `sin(mx)` (odd `m`).
    pub fn pure_sine_x(m: u32) -> Result<Self, EigenfunctionError> {
        Self::new(vec![TrigMode {
            m,
            n: 0,
            kind: TrigKind::Cosine,
            coefficient: 1.0,
        }])
    }

    /// Pointwise evaluation; vanishes at `x ∈ {0, π}` and is invariant under
    /// the deck transformation `(x,y) ↦ (π−x, y+π)`.
    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        self.modes
            .iter()
            .map(|m| m.coefficient * m.x_factor(x, 0) * m.y_factor(y, 0))
            .sum()
    }

    /// Exact partial derivative `∂_x^ox ∂_y^oy Φ`, total order ≤ 4.
    pub fn partial_derivative(
        &self,
        x: f64,
        y: f64,
        order_x: u32,
        order_y: u32,
    ) -> Result<f64, EigenfunctionError> {
        let total = order_x + order_y;
        if total > 4 {
            return Err(EigenfunctionError::UnsupportedOrder { order: total });
        }
        Ok(self
            .modes
            .iter()
            .map(|m| m.coefficient * m.x_factor(x, order_x) * m.y_factor(y, order_y))
            .sum())
    }

    /// Scale for deciding whether a derivative of given orders "vanishes":
    /// the sum of `|c| · m^ox · n^oy` over modes.
    pub fn derivative_scale(&self, order_x: u32, order_y: u32) -> f64 {
        self.modes
            .iter()
            .map(|m| {
                // 0^0 = 1 covers the constant y-factor of n = 0 modes.
                m.coefficient.abs()
                    * (m.m as f64).powi(order_x as i32)
                    * (m.n as f64).powi(order_y as i32)
            })
            .sum()
    }

    /// Spec of `(x,y) ↦ Φ(x, y − t)`: the nodal set translates by `+t`.
    ///
    /// `t` is reduced modulo `2π` first, so a full period returns the spec
    /// unchanged.
    pub fn translated(&self, t: f64) -> EigenfunctionSpec {
        let t = t.rem_euclid(TWO_PI);
        if t == 0.0 {
            return self.clone();
        }
        let mut modes: Vec<TrigMode> = Vec::new();
        for mode in &self.modes {
            let nt = mode.n as f64 * t;
            let (c, s) = (nt.cos(), nt.sin());
            match mode.kind {
                // sin(n(y−t)) = cos(nt) sin(ny) − sin(nt) cos(ny)
                TrigKind::Sine => {
                    modes.push(TrigMode {
                        coefficient: mode.coefficient * c,
                        ..*mode
                    });
                    modes.push(TrigMode {
                        kind: TrigKind::Cosine,
                        coefficient: -mode.coefficient * s,
                        ..*mode
                    });
                }
                // cos(n(y−t)) = cos(nt) cos(ny) + sin(nt) sin(ny)
                TrigKind::Cosine => {
                    modes.push(TrigMode {
                        coefficient: mode.coefficient * c,
                        ..*mode
                    });
                    if mode.n > 0 {
                        modes.push(TrigMode {
                            kind: TrigKind::Sine,
                            coefficient: mode.coefficient * s,
                            ..*mode
                        });
                    }
                }
            }
        }
        EigenfunctionSpec::new(modes).expect("translation preserves admissibility")
    }

    /// Largest absolute coefficient, a natural amplitude scale.
    pub fn coefficient_scale(&self) -> f64 {
        self.modes
            .iter()
            .map(|m| m.coefficient.abs())
            .fold(0.0, f64::max)
    }
}

/// The checkerboard product `P_β(x,y) = sin(2x) sin(3y) sin(3x) sin(2y+β)`.
///
/// The nodal set of any `Φ_{β,θ}` of the (2,3) family stays inside
/// `{P_β ≤ 0}`; the positivity region is forbidden.
pub fn checkerboard_value(beta: f64, x: f64, y: f64) -> f64 {
    (2.0 * x).sin() * (3.0 * y).sin() * (3.0 * x).sin() * (2.0 * y + beta).sin()
}

/// Stern-type combination `sin(x) sin(2ry) + (1+ε) sin(2rx) sin(y)`, an
/// eigenfunction at `1 + 4r²` that keeps exactly two nodal domains for small
/// positive `ε`. `ε = 0` is allowed but degenerate (the symmetric case).
pub fn stern_spec(r: u32, epsilon: f64) -> Result<EigenfunctionSpec, EigenfunctionError> {
    if epsilon < 0.0 {
        return Err(EigenfunctionError::NegativeStern(epsilon));
    }
    EigenfunctionSpec::new(vec![
        TrigMode {
            m: 1,
            n: 2 * r,
            kind: TrigKind::Sine,
            coefficient: 1.0,
        },
        TrigMode {
            m: 2 * r,
            n: 1,
            kind: TrigKind::Sine,
            coefficient: 1.0 + epsilon,
        },
    ])
}
