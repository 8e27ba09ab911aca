//! End-to-end reproduction of the Courant-sharp classification for the
//! square Möbius strip: the only Courant-sharp Dirichlet eigenvalues are
//! the first and the second.
//!
//! The run chains every stage with hard assertions:
//!
//! 1. the first 14 eigenvalue clusters (λ ≤ 65) match the known table;
//! 2. the Bessel constant validates against its series/bisection root, and
//!    screening leaves exactly the labels {1, 2, 7};
//! 3. the simple eigenfunction `sin 3x` of λ₆ has 2 nodal domains (an
//!    independent exclusion of label 6);
//! 4. a sweep of the λ₇ eigenspace family never exceeds 6 nodal domains,
//!    with the expected 6/4/3 pattern, so λ₇ (label 7) is not sharp;
//! 5. labels 1 and 2 are sharp by the Courant theorem itself.

use crate::eigenfunction::{EigenfunctionSpec, Family, FamilyParams};
use crate::nodal::analyze_stable;
use crate::screening::{screen_with, BesselConstant};
use crate::spectrum::enumerate_spectrum;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Serialize)]
pub struct StageResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub stages: Vec<StageResult>,
    pub courant_sharp: Vec<usize>,
    pub max_family_domains: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct ReproduceConfig {
    pub resolution: usize,
    pub zero_tol: f64,
    pub j01: BesselConstant,
    /// Interior grid size per axis for the λ₇ family sweep.
    pub sweep: usize,
}

impl Default for ReproduceConfig {
    fn default() -> Self {
        ReproduceConfig {
            resolution: crate::nodal::DEFAULT_RESOLUTION,
            zero_tol: crate::nodal::DEFAULT_ZERO_TOL,
            j01: BesselConstant::default(),
            sweep: 5,
        }
    }
}

/// One reference row: (value, modes, multiplicity, first label, last label).
pub type ClusterRow = (f64, &'static [(u32, u32)], usize, usize, usize);

/// The 14 clusters with λ ≤ 65.
pub const KNOWN_CLUSTERS: [ClusterRow; 14] = [
    (1.0, &[(1, 0)], 1, 1, 1),
    (5.0, &[(1, 2), (2, 1)], 4, 2, 5),
    (9.0, &[(3, 0)], 1, 6, 6),
    (13.0, &[(2, 3), (3, 2)], 4, 7, 10),
    (17.0, &[(1, 4), (4, 1)], 4, 11, 14),
    (25.0, &[(3, 4), (4, 3), (5, 0)], 5, 15, 19),
    (29.0, &[(2, 5), (5, 2)], 4, 20, 23),
    (37.0, &[(1, 6), (6, 1)], 4, 24, 27),
    (41.0, &[(4, 5), (5, 4)], 4, 28, 31),
    (45.0, &[(3, 6), (6, 3)], 4, 32, 35),
    (49.0, &[(7, 0)], 1, 36, 36),
    (53.0, &[(2, 7), (7, 2)], 4, 37, 40),
    (61.0, &[(5, 6), (6, 5)], 4, 41, 44),
    (65.0, &[(1, 8), (8, 1), (4, 7), (7, 4)], 8, 45, 52),
];

fn stage(stages: &mut Vec<StageResult>, name: &str, pass: bool, detail: String) -> bool {
    stages.push(StageResult {
        name: name.to_string(),
        pass,
        detail,
    });
    pass
}

/// Run the full reproduction; never panics, reports failures per stage.
pub fn reproduce_theorem(config: &ReproduceConfig) -> TheoremReport {
    let mut stages = Vec::new();
    let mut all = true;

    // Stage 1: spectrum table.
    let table = enumerate_spectrum(1.0, 65.0).expect("valid parameters");
    let mut table_ok = table.clusters.len() == KNOWN_CLUSTERS.len();
    if table_ok {
        for (c, k) in table.clusters.iter().zip(KNOWN_CLUSTERS.iter()) {
            let modes: Vec<(u32, u32)> = c.modes.iter().map(|p| (p.m, p.n)).collect();
            table_ok &= c.value == k.0
                && modes == k.1
                && c.multiplicity == k.2
                && c.first_label == k.3
                && c.last_label == k.4;
        }
    }
    all &= stage(
        &mut stages,
        "spectrum-table",
        table_ok,
        format!("{} clusters up to λ = 65", table.clusters.len()),
    );

    // Stage 2: Bessel constant + screening.
    let j01_ok = config.j01.validate(1e-9).is_ok();
    let screen_result = screen_with(&table, config.j01);
    let (survivors, screen_ok) = match &screen_result {
        Ok(report) => (
            report.survivors.clone(),
            report.survivors == vec![1, 2, 7] && report.weyl_cutoff == 64.0,
        ),
        Err(_) => (Vec::new(), false),
    };
    all &= stage(
        &mut stages,
        "screening",
        j01_ok && screen_ok,
        format!("j01 validated: {j01_ok}; survivors {survivors:?}"),
    );

    // Stage 3: λ₆'s eigenfunction sin 3x has two nodal domains.
    let sin3x = EigenfunctionSpec::pure_sine_x(3).expect("admissible");
    let lambda6_count = analyze_stable(&sin3x, config.resolution.min(400), config.zero_tol)
        .map(|a| a.domains.count);
    let lambda6_ok = lambda6_count.as_ref().is_ok_and(|&c| c == 2);
    all &= stage(
        &mut stages,
        "lambda6-nodal",
        lambda6_ok,
        format!("sin 3x domain count: {lambda6_count:?}"),
    );

    // Stage 4: λ₇ family sweep peaks at 6 nodal domains.
    let mut max_count = 0usize;
    let mut sweep_ok = true;
    let mut sweep_detail = String::new();
    let run_config = |beta: f64, theta: f64, expected: usize,
                          max_count: &mut usize,
                          sweep_ok: &mut bool,
                          sweep_detail: &mut String| {
        let spec = FamilyParams::new(Family::TwoThree, beta, theta)
            .spec()
            .expect("admissible family");
        match analyze_stable(&spec, config.resolution, config.zero_tol) {
            Ok(a) => {
                *max_count = (*max_count).max(a.domains.count);
                if a.domains.count != expected {
                    *sweep_ok = false;
                    sweep_detail.push_str(&format!(
                        "count {} ≠ {expected} at (β,θ)=({beta:.4},{theta:.4}); ",
                        a.domains.count
                    ));
                }
            }
            Err(e) => {
                *sweep_ok = false;
                sweep_detail.push_str(&format!("analysis failed at ({beta:.4},{theta:.4}): {e}; "));
            }
        }
    };
    // Decomposed angles: 6 domains.
    for (beta, theta) in [(0.4, 0.0), (PI / 5.0, PI / 2.0)] {
        run_config(beta, theta, 6, &mut max_count, &mut sweep_ok, &mut sweep_detail);
    }
    // Edge β with interior θ: 4 domains.
    for beta in [0.0, PI / 3.0] {
        for theta in [0.2, PI / 4.0, 1.2] {
            run_config(beta, theta, 4, &mut max_count, &mut sweep_ok, &mut sweep_detail);
        }
    }
    // Interior grid avoiding the bifurcation angle: 3 domains.
    for bi in 0..config.sweep {
        let beta = (bi as f64 + 0.5) * (PI / 3.0) / config.sweep as f64;
        let theta_beta = crate::bifurcation::solve_theta_beta(Family::TwoThree, beta)
            .map(|r| r.theta_beta)
            .unwrap_or(PI / 4.0);
        for ti in 0..config.sweep {
            let mut theta = (ti as f64 + 0.5) * (PI / 2.0) / config.sweep as f64;
            if (theta - theta_beta).abs() < 0.02 {
                theta += 0.04;
            }
            run_config(beta, theta, 3, &mut max_count, &mut sweep_ok, &mut sweep_detail);
        }
    }
    sweep_ok &= max_count == 6;
    all &= stage(
        &mut stages,
        "lambda7-family-sweep",
        sweep_ok,
        if sweep_detail.is_empty() {
            format!("max nodal count {max_count} over the eigenspace family (bound 6 < 7)")
        } else {
            sweep_detail
        },
    );

    let courant_sharp = if all { vec![1, 2] } else { Vec::new() };
    let pass = all;
    stage(
        &mut stages,
        "conclusion",
        pass,
        if pass {
            "Courant-sharp Dirichlet eigenvalues: {λ1, λ2}".to_string()
        } else {
            "reproduction failed; see stages".to_string()
        },
    );

    TheoremReport {
        stages,
        courant_sharp,
        max_family_domains: max_count,
        pass,
    }
}
