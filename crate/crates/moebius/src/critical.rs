//! Critical zeros of family eigenfunctions and their orders.
//!
//! A critical zero is a point where the eigenfunction and its gradient both
//! vanish; its order is the first derivative order that does not. For the
//! analysed families the classification is completely explicit:
//!
//! * interior critical zeros only exist when the horizontal line `{y = β}`
//!   is nodal (β at an endpoint of its canonical interval, or θ decomposed),
//!   they lie on that line and always have order 2 (four nodal semi-arcs);
//! * boundary critical zeros on `{x = ξ}`, ξ ∈ {0, π}, are the zeros of
//!   `y ↦ ∂_x Φ(ξ, y)`, i.e. of `cot θ + cos(ξ)·f(β,y)`; a zero has order
//!   ≥ 3 exactly when `g(β,y)` vanishes as well, and order 4 (never more)
//!   when additionally `sin(ny) sin(my+β) = 0`.
//!
//! On the branch of `f` containing its interior minimum the root pair can
//! collide (at `θ = θ_β`), so that stretch is root-solved per monotone
//! branch with the minimum `y_β` as a bracket endpoint; everywhere else the
//! zeros are simple and well separated and a dense sign scan plus bisection
//! and Newton polish is used.

use crate::bifurcation::{solve_theta_beta, BifurcationError};
use crate::eigenfunction::{EigenfunctionSpec, EigenfunctionError, Family, FamilyParams};
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CriticalError {
    #[error("theta = {0} outside [0, π/2]")]
    ThetaOutOfRange(f64),
    #[error("beta = {beta} outside the canonical interval [0, {period}] for this family")]
    BetaOutOfRange { beta: f64, period: f64 },
    #[error("critical-zero search is only implemented for the (1,2) and (2,3) families")]
    UnsupportedFamily,
    #[error("point ({x}, {y}) is not a critical zero: |Φ| = {value}, |∇Φ| = {grad}")]
    NotCritical { x: f64, y: f64, value: f64, grad: f64 },
    #[error("no derivative up to order 4 is nonvanishing at ({x}, {y})")]
    ClassificationFailed { x: f64, y: f64 },
    #[error("root refinement failed on [{lo}, {hi}]")]
    RootRefinementFailed { lo: f64, hi: f64 },
    #[error(transparent)]
    Eigenfunction(#[from] EigenfunctionError),
    #[error(transparent)]
    Bifurcation(#[from] BifurcationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroKind {
    Interior,
    Boundary,
}

/// A located critical zero with its order and local arc counts.
#[derive(Debug, Clone, Serialize)]
pub struct CriticalZero {
    pub x: f64,
    pub y: f64,
    pub kind: ZeroKind,
    pub order: u8,
    /// Nodal semi-arcs at an interior zero (2·order).
    pub nu: Option<u32>,
    /// Nodal semi-arcs hitting the boundary (order − 1).
    pub rho: Option<u32>,
    /// Marks a root that landed on a branch endpoint within tolerance.
    pub degenerate: bool,
    pub residuals: BTreeMap<String, f64>,
}

const THETA_EDGE_TOL: f64 = 1e-9;
const BETA_EDGE_TOL: f64 = 1e-9;
// Wide enough to absorb the flat-root smear around high-order zeros.
const DEDUP_TOL: f64 = 1e-5;

fn beta_period(family: Family) -> Result<f64, CriticalError> {
    match family {
        Family::OneTwo => Ok(PI / 2.0),
        Family::TwoThree => Ok(PI / 3.0),
        Family::General { .. } => Err(CriticalError::UnsupportedFamily),
    }
}

fn validate(params: &FamilyParams) -> Result<f64, CriticalError> {
    let period = beta_period(params.family)?;
    if !(0.0..=PI / 2.0 + THETA_EDGE_TOL).contains(&params.theta) {
        return Err(CriticalError::ThetaOutOfRange(params.theta));
    }
    if !(-BETA_EDGE_TOL..=period + BETA_EDGE_TOL).contains(&params.beta) {
        return Err(CriticalError::BetaOutOfRange {
            beta: params.beta,
            period,
        });
    }
    Ok(period)
}

/// Locate all interior critical zeros of the family eigenfunction.
///
/// For β strictly inside its interval and θ strictly inside (0, π/2) the
/// list is empty. When the line `{y = β}` is nodal (β at an endpoint) the
/// zeros are the sign changes of `x ↦ ∂_y Φ(x, β)`; in the decomposed cases
/// θ ∈ {0, π/2} they are the grid crossings of the product nodal set.
pub fn find_interior_critical_zeros(
    params: &FamilyParams,
) -> Result<Vec<CriticalZero>, CriticalError> {
    let period = validate(params)?;
    let spec = params.spec()?;
    let (m, n) = params.family.pair();

    if params.theta <= THETA_EDGE_TOL {
        // Φ = sin(mx)·sin(ny): crossings of {sin(mx)=0} with {sin(ny)=0}.
        let xs: Vec<f64> = (1..m).map(|j| j as f64 * PI / m as f64).collect();
        let ys: Vec<f64> = (0..n).map(|k| k as f64 * PI / n as f64).collect();
        return cross_points(&spec, &xs, &ys);
    }
    if params.theta >= PI / 2.0 - THETA_EDGE_TOL {
        // Φ = sin(nx)·sin(my+β).
        let xs: Vec<f64> = (1..n).map(|j| j as f64 * PI / n as f64).collect();
        let ys = decomposed_y_zeros(m, params.beta);
        return cross_points(&spec, &xs, &ys);
    }

    let near_zero = params.beta <= BETA_EDGE_TOL;
    let near_period = params.beta >= period - BETA_EDGE_TOL;
    if !near_zero && !near_period {
        return Ok(Vec::new());
    }

    // The nodal line {y = β}; critical zeros are where the normal
    // derivative vanishes along it.
    let eta = if near_zero { 0.0 } else { period };
    let profile = |x: f64| spec.partial_derivative(x, eta, 0, 1).unwrap();
    let roots = scan_roots(&profile, 0.0, PI, 2048)?;
    let mut zeros = Vec::new();
    for x in roots {
        if !(1e-7..=PI - 1e-7).contains(&x) {
            continue; // boundary endpoints belong to the boundary list
        }
        zeros.push(classify_interior(&spec, x, eta)?);
    }
    Ok(zeros)
}

fn decomposed_y_zeros(m: u32, beta: f64) -> Vec<f64> {
    // sin(my + β) = 0 with y in [0, π).
    let mut ys = Vec::new();
    for k in 0..=(m as i64 + 1) {
        let y = (k as f64 * PI - beta) / m as f64;
        if (-1e-12..PI - 1e-12).contains(&y) {
            ys.push(y.max(0.0));
        }
    }
    ys
}

fn cross_points(
    spec: &EigenfunctionSpec,
    xs: &[f64],
    ys: &[f64],
) -> Result<Vec<CriticalZero>, CriticalError> {
    let mut zeros = Vec::new();
    for &x in xs {
        for &y in ys {
            zeros.push(classify_interior(spec, x, y)?);
        }
    }
    Ok(zeros)
}

/// Locate all boundary critical zeros on `{x = 0}` and `{x = π}`.
pub fn find_boundary_critical_zeros(
    params: &FamilyParams,
) -> Result<Vec<CriticalZero>, CriticalError> {
    let period = validate(params)?;
    let spec = params.spec()?;
    let (m, n) = params.family.pair();

    let mut zeros: Vec<(f64, f64, bool)> = Vec::new();
    // At an edge β the rectangle corners are critical zeros and root scans
    // can land anywhere inside their flat (high-order) neighbourhood; snap
    // such roots onto the corner so deduplication sees them.
    let mut corner_snap = 1e-9;

    if params.theta <= THETA_EDGE_TOL {
        for xi in [0.0, PI] {
            for k in 0..n {
                zeros.push((xi, k as f64 * PI / n as f64, false));
            }
        }
    } else if params.theta >= PI / 2.0 - THETA_EDGE_TOL {
        for xi in [0.0, PI] {
            for y in decomposed_y_zeros(m, params.beta) {
                zeros.push((xi, y, false));
            }
        }
    } else {
        let near_zero = params.beta <= BETA_EDGE_TOL;
        let near_period = params.beta >= period - BETA_EDGE_TOL;
        if near_zero {
            zeros.push((0.0, 0.0, false));
            zeros.push((PI, 0.0, false));
            corner_snap = 1e-4;
        } else if near_period {
            zeros.push((0.0, period, false));
            zeros.push((PI, period, false));
        }

        let interior_beta = !near_zero && !near_period;
        for xi in [0.0, PI] {
            let psi = |y: f64| spec.partial_derivative(xi, y, 1, 0).unwrap();
            if interior_beta && xi == PI {
                // The branch of f with the interior minimum lives on
                // (0, period); split the bracket at y_β so the colliding
                // root pair near θ_β is still found.
                let bif = solve_theta_beta(params.family, params.beta)?;
                let m_beta = bif.cot_theta_beta;
                let cot_theta = params.theta.tan().recip();
                if (cot_theta - m_beta).abs() <= 1e-9 * (1.0 + m_beta) {
                    // Double root at the branch endpoint itself.
                    zeros.push((xi, bif.y_beta, true));
                } else if cot_theta > m_beta {
                    for y in bisect_root(&psi, 1e-12, bif.y_beta)
                        .into_iter()
                        .chain(bisect_root(&psi, bif.y_beta, period - 1e-12))
                    {
                        let degenerate = (y - bif.y_beta).abs() < DEDUP_TOL;
                        zeros.push((xi, y, degenerate));
                    }
                }
                for y in scan_roots(&psi, period, PI, 4096)? {
                    zeros.push((xi, y, false));
                }
            } else {
                for y in scan_roots(&psi, 0.0, PI, 8192)? {
                    zeros.push((xi, y, false));
                }
            }
        }
    }

    // Deduplicate (scan roots can converge onto the special endpoints) and
    // canonicalize y into [0, π), corners first: (ξ, π) ~ (π−ξ, 0).
    let mut out: Vec<CriticalZero> = Vec::new();
    for (xi, y, degenerate) in zeros {
        let (xi, y, snapped) = if y >= PI - corner_snap {
            (PI - xi, 0.0, y > PI - corner_snap + 1e-12 && y < PI - 1e-12)
        } else if y <= corner_snap {
            (xi, 0.0, y > 1e-12)
        } else {
            (xi, y, false)
        };
        if out
            .iter()
            .any(|z| (z.x - xi).abs() < 1e-9 && (z.y - y).abs() < DEDUP_TOL)
        {
            continue;
        }
        let mut zero = classify_boundary(&spec, xi, y)?;
        zero.degenerate = degenerate || snapped;
        out.push(zero);
    }
    out.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    Ok(out)
}

/// Classify a confirmed critical zero by the derivative ladder.
pub fn classify_order(params: &FamilyParams, x: f64, y: f64) -> Result<CriticalZero, CriticalError> {
    validate(params)?;
    let spec = params.spec()?;
    if x <= 1e-12 || x >= PI - 1e-12 {
        classify_boundary(&spec, if x <= 1e-12 { 0.0 } else { PI }, y)
    } else {
        classify_interior(&spec, x, y)
    }
}

fn vanish_tol(spec: &EigenfunctionSpec, ox: u32, oy: u32) -> f64 {
    1e-8 * (1.0 + spec.derivative_scale(ox, oy))
}

fn check_critical(
    spec: &EigenfunctionSpec,
    x: f64,
    y: f64,
    boundary: bool,
) -> Result<(), CriticalError> {
    let value = spec.evaluate(x, y).abs();
    let dx = spec.partial_derivative(x, y, 1, 0).unwrap();
    let dy = spec.partial_derivative(x, y, 0, 1).unwrap();
    // On the boundary the tangential derivative ∂_y vanishes identically
    // with Φ, so only ∂_x carries information there.
    let grad = if boundary { dx.abs() } else { dx.hypot(dy) };
    if value > 1e-10 * (1.0 + spec.coefficient_scale()) || grad > vanish_tol(spec, 1, 1) {
        return Err(CriticalError::NotCritical { x, y, value, grad });
    }
    Ok(())
}

fn classify_interior(
    spec: &EigenfunctionSpec,
    x: f64,
    y: f64,
) -> Result<CriticalZero, CriticalError> {
    check_critical(spec, x, y, false)?;
    let mut residuals = BTreeMap::new();
    let dxx = spec.partial_derivative(x, y, 2, 0).unwrap();
    let dxy = spec.partial_derivative(x, y, 1, 1).unwrap();
    let dyy = spec.partial_derivative(x, y, 0, 2).unwrap();
    residuals.insert("phi".into(), spec.evaluate(x, y));
    residuals.insert("d_xx".into(), dxx);
    residuals.insert("d_xy".into(), dxy);
    residuals.insert("d_yy".into(), dyy);
    let tol = vanish_tol(spec, 1, 1);
    if dxx.abs() <= tol && dxy.abs() <= tol && dyy.abs() <= tol {
        return Err(CriticalError::ClassificationFailed { x, y });
    }
    Ok(CriticalZero {
        x,
        y,
        kind: ZeroKind::Interior,
        order: 2,
        nu: Some(4),
        rho: None,
        degenerate: false,
        residuals,
    })
}

fn classify_boundary(
    spec: &EigenfunctionSpec,
    xi: f64,
    y: f64,
) -> Result<CriticalZero, CriticalError> {
    check_critical(spec, xi, y, true)?;
    let mut residuals = BTreeMap::new();
    let d = |ox, oy| spec.partial_derivative(xi, y, ox, oy).unwrap();
    let d_x = d(1, 0);
    let d_xy = d(1, 1);
    let d_x3 = d(3, 0);
    let d_xy2 = d(1, 2);
    let d_x3y = d(3, 1);
    let d_xy3 = d(1, 3);
    residuals.insert("d_x".into(), d_x);
    residuals.insert("d_xy".into(), d_xy);
    residuals.insert("d_x3".into(), d_x3);
    residuals.insert("d_xy2".into(), d_xy2);
    residuals.insert("d_x3y".into(), d_x3y);
    residuals.insert("d_xy3".into(), d_xy3);

    let order = if d_xy.abs() > vanish_tol(spec, 1, 1) {
        2
    } else if d_x3.abs() > vanish_tol(spec, 3, 0) || d_xy2.abs() > vanish_tol(spec, 1, 2) {
        3
    } else if d_x3y.abs() > vanish_tol(spec, 3, 1) || d_xy3.abs() > vanish_tol(spec, 1, 3) {
        4
    } else {
        return Err(CriticalError::ClassificationFailed { x: xi, y });
    };
    Ok(CriticalZero {
        x: xi,
        y,
        kind: ZeroKind::Boundary,
        order,
        nu: None,
        rho: Some(order as u32 - 1),
        degenerate: false,
        residuals,
    })
}

/// Sign-scan `func` on `n` intervals of `[lo, hi]` and bisect each change.
/// Roots at the endpoints themselves are not reported.
fn scan_roots<F: Fn(f64) -> f64>(
    func: &F,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Vec<f64>, CriticalError> {
    let mut roots = Vec::new();
    let step = (hi - lo) / n as f64;
    let mut prev_x = lo;
    let mut prev_v = func(lo);
    for i in 1..=n {
        let x = lo + step * i as f64;
        let v = func(x);
        if prev_v == 0.0 && prev_x > lo {
            roots.push(prev_x);
        } else if prev_v * v < 0.0 {
            if let Some(r) = bisect_root(func, prev_x, x) {
                roots.push(r);
            } else {
                return Err(CriticalError::RootRefinementFailed { lo: prev_x, hi: x });
            }
        }
        prev_x = x;
        prev_v = v;
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < DEDUP_TOL);
    Ok(roots)
}

/// Bisection (80 steps) on a sign change, with a short Newton polish.
fn bisect_root<F: Fn(f64) -> f64>(func: &F, mut lo: f64, mut hi: f64) -> Option<f64> {
    let (flo, fhi) = (func(lo), func(hi));
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo * fhi > 0.0 {
        return None;
    }
    let mut fl = flo;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let fm = func(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fl * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            fl = fm;
        }
    }
    let mut x = 0.5 * (lo + hi);
    let h = 1e-7;
    for _ in 0..3 {
        let d = (func(x + h) - func(x - h)) / (2.0 * h);
        if d.abs() > 1e-14 {
            let next = x - func(x) / d;
            if next > lo - 1e-9 && next < hi + 1e-9 {
                x = next;
            }
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bifurcation::solve_theta_beta;
    use crate::eigenfunction::Family;

    fn params23(beta: f64, theta: f64) -> FamilyParams {
        FamilyParams::new(Family::TwoThree, beta, theta)
    }

    #[test]
    fn generic_parameters_have_no_interior_zeros() {
        let zeros = find_interior_critical_zeros(&params23(PI / 4.0, 0.3)).unwrap();
        assert!(zeros.is_empty());
    }

    #[test]
    fn edge_beta_zeros_lie_on_the_nodal_line() {
        for theta in [0.3, 1.0, 1.4] {
            let zeros = find_interior_critical_zeros(&params23(0.0, theta)).unwrap();
            assert!(!zeros.is_empty());
            for z in &zeros {
                assert!(z.y.abs() < 1e-10, "zero off the line: {z:?}");
                assert_eq!(z.order, 2);
                assert_eq!(z.nu, Some(4));
            }
            // One zero below the symmetric angle, two above.
            let expected = if theta > PI / 4.0 { 2 } else { 1 };
            assert_eq!(zeros.len(), expected, "theta={theta}");
        }
    }

    #[test]
    fn decomposed_theta_zero_has_three_crossings() {
        let zeros = find_interior_critical_zeros(&params23(0.9, 0.0)).unwrap();
        assert_eq!(zeros.len(), 3);
        for z in &zeros {
            assert!((z.x - PI / 2.0).abs() < 1e-12);
            assert_eq!(z.nu, Some(4));
        }
        let ys: Vec<f64> = zeros.iter().map(|z| z.y).collect();
        for (got, want) in ys.iter().zip([0.0, PI / 3.0, 2.0 * PI / 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn decomposed_theta_half_pi_has_four_crossings() {
        let zeros = find_interior_critical_zeros(&params23(0.7, PI / 2.0)).unwrap();
        assert_eq!(zeros.len(), 4);
    }

    #[test]
    fn order_four_zero_at_edge_beta_symmetric_theta() {
        let z = classify_order(&params23(PI / 3.0, PI / 4.0), PI, PI / 3.0).unwrap();
        assert_eq!(z.order, 4);
        assert_eq!(z.rho, Some(3));

        let zeros = find_boundary_critical_zeros(&params23(PI / 3.0, PI / 4.0)).unwrap();
        let at_corner = zeros
            .iter()
            .find(|z| (z.x - PI).abs() < 1e-9 && (z.y - PI / 3.0).abs() < 1e-7)
            .expect("corner zero present");
        assert_eq!(at_corner.order, 4);
    }

    #[test]
    fn order_three_zero_at_bifurcation_angle() {
        for i in [2, 7, 11] {
            let beta = PI / 3.0 * i as f64 / 13.0;
            let bif = solve_theta_beta(Family::TwoThree, beta).unwrap();
            let zeros =
                find_boundary_critical_zeros(&params23(beta, bif.theta_beta)).unwrap();
            let z = zeros
                .iter()
                .find(|z| (z.x - PI).abs() < 1e-9 && (z.y - bif.y_beta).abs() < 1e-6)
                .expect("order-3 zero at (π, y_β)");
            assert_eq!(z.order, 3, "β={beta}");
            assert_eq!(z.rho, Some(2));
            assert!(z.degenerate, "root at the branch endpoint is flagged");
        }
        // Away from the bifurcation angle nothing is degenerate.
        let zeros = find_boundary_critical_zeros(&params23(0.5, 0.3)).unwrap();
        assert!(zeros.iter().all(|z| !z.degenerate));
    }

    #[test]
    fn boundary_zero_count_follows_the_trichotomy() {
        let beta = 0.5;
        let bif = solve_theta_beta(Family::TwoThree, beta).unwrap();
        let count_in_first_interval = |theta: f64| {
            find_boundary_critical_zeros(&params23(beta, theta))
                .unwrap()
                .iter()
                .filter(|z| (z.x - PI).abs() < 1e-9 && z.y > 0.0 && z.y < PI / 3.0)
                .count()
        };
        // cot θ < m_β (θ above the bifurcation angle): no zeros.
        assert_eq!(count_in_first_interval(bif.theta_beta + 0.2), 0);
        // cot θ = m_β: exactly the order-3 zero.
        assert_eq!(count_in_first_interval(bif.theta_beta), 1);
        // cot θ > m_β: two order-2 zeros.
        assert_eq!(count_in_first_interval(bif.theta_beta - 0.2), 2);
    }

    #[test]
    fn generic_boundary_zeros_have_order_two_and_known_count() {
        let beta = 0.6;
        let bif = solve_theta_beta(Family::TwoThree, beta).unwrap();
        // Above θ_β: two zeros on each boundary component.
        let zeros = find_boundary_critical_zeros(&params23(beta, bif.theta_beta + 0.15)).unwrap();
        assert_eq!(zeros.iter().filter(|z| z.x == 0.0).count(), 2);
        assert_eq!(zeros.iter().filter(|z| (z.x - PI).abs() < 1e-9).count(), 2);
        for z in &zeros {
            assert_eq!(z.order, 2);
        }
        // Below θ_β: two extra zeros on {x = π}.
        let zeros = find_boundary_critical_zeros(&params23(beta, bif.theta_beta - 0.15)).unwrap();
        assert_eq!(zeros.iter().filter(|z| (z.x - PI).abs() < 1e-9).count(), 4);
    }

    #[test]
    fn every_zero_satisfies_the_critical_equations() {
        let configs = [
            params23(0.4, 0.9),
            params23(0.0, 0.7),
            params23(PI / 3.0, 1.2),
            FamilyParams::new(Family::OneTwo, 0.8, 0.5),
            FamilyParams::new(Family::OneTwo, PI / 2.0, 1.0),
        ];
        for p in &configs {
            let spec = p.spec().unwrap();
            let all: Vec<CriticalZero> = find_interior_critical_zeros(p)
                .unwrap()
                .into_iter()
                .chain(find_boundary_critical_zeros(p).unwrap())
                .collect();
            for z in &all {
                assert!(spec.evaluate(z.x, z.y).abs() < 1e-9);
                assert!(spec.partial_derivative(z.x, z.y, 1, 0).unwrap().abs() < 1e-6);
            }
        }
    }

    #[test]
    fn reflection_symmetry_of_zero_sets() {
        // Zeros of Φ_{β+π,θ} are the {x = π/2} reflections of those of
        // Φ_{β,θ}; verified through the β ↦ period−β mirror which composes
        // the reflection with a translation for these families.
        let beta = 0.41;
        let theta = 0.95;
        let z1 = find_boundary_critical_zeros(&params23(beta, theta)).unwrap();
        let z2 = find_boundary_critical_zeros(&params23(PI / 3.0 - beta, theta)).unwrap();
        assert_eq!(z1.len(), z2.len());
    }

    #[test]
    fn one_two_family_boundary_zeros() {
        // Above θ_β the (1,2) nodal set is one curve: one endpoint on each
        // boundary part.
        let beta = 0.8;
        let bif = solve_theta_beta(Family::OneTwo, beta).unwrap();
        let p = FamilyParams::new(Family::OneTwo, beta, bif.theta_beta + 0.2);
        let zeros = find_boundary_critical_zeros(&p).unwrap();
        assert_eq!(zeros.len(), 2);
        // At θ_β an order-3 zero appears at (π, y_β).
        let p = FamilyParams::new(Family::OneTwo, beta, bif.theta_beta);
        let zeros = find_boundary_critical_zeros(&p).unwrap();
        let z = zeros
            .iter()
            .find(|z| (z.x - PI).abs() < 1e-9 && (z.y - bif.y_beta).abs() < 1e-6)
            .expect("order-3 zero");
        assert_eq!(z.order, 3);
        // Below θ_β: two curves, four order-2 endpoints.
        let p = FamilyParams::new(Family::OneTwo, beta, bif.theta_beta - 0.2);
        let zeros = find_boundary_critical_zeros(&p).unwrap();
        assert_eq!(zeros.len(), 4);
        assert!(zeros.iter().all(|z| z.order == 2));
    }

    #[test]
    fn one_two_edge_beta_order_four() {
        // β = π/2, θ = π/4: the nodal line y = π/2 meets a closed curve at
        // (π, π/2), a boundary critical zero of order 4.
        let p = FamilyParams::new(Family::OneTwo, PI / 2.0, PI / 4.0);
        let z = classify_order(&p, PI, PI / 2.0).unwrap();
        assert_eq!(z.order, 4);
        assert_eq!(z.rho, Some(3));
        let zeros = find_boundary_critical_zeros(&p).unwrap();
        assert!(zeros
            .iter()
            .any(|z| (z.x - PI).abs() < 1e-9 && (z.y - PI / 2.0).abs() < 1e-7 && z.order == 4));
        // The other end of the line is a plain order-2 zero.
        let z0 = classify_order(&p, 0.0, PI / 2.0).unwrap();
        assert_eq!(z0.order, 2);
    }

    #[test]
    fn non_critical_points_are_rejected() {
        let p = params23(0.5, 0.8);
        assert!(matches!(
            classify_order(&p, PI, 0.9),
            Err(CriticalError::NotCritical { .. })
        ));
    }
}
