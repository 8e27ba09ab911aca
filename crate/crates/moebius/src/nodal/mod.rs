//! Nodal-domain analysis on the Möbius quotient by adaptive sign grids.
//!
//! The fundamental rectangle `(0,π) × [0,π)` is covered by `nx × ny` cells.
//! Cell sign samples sit at cell centers so no lattice point ever lands on
//! the Dirichlet boundary or exactly on the seam; a cell is put in the
//! *zero band* (and belongs to no domain) when the function is relatively
//! tiny at its center or changes sign over its corners. Domains are the
//! 4-neighbor connected components of equal-sign cells, with the seam
//! identification `(x, 0) ~ (π−x, π)` gluing bottom row `i` to top row
//! `nx−1−i`.
//!
//! Orientability is decided on the cylinder double cover (`y` period `2π`):
//! the preimage of a domain has two components exactly when the domain is
//! orientable, one when it is a one-sided band.

pub mod curves;

pub use curves::{extract_curves, CurveGraph, Polyline};

use crate::eigenfunction::{checkerboard_value, EigenfunctionSpec};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NodalError {
    #[error("grid must be at least 16×16, got {nx}×{ny}")]
    TooCoarse { nx: usize, ny: usize },
    #[error("zero tolerance must be positive, got {0}")]
    BadZeroTol(f64),
    #[error("nodal-domain count did not stabilise under refinement: counts {counts:?} at resolutions {resolutions:?}")]
    NonConvergence {
        resolutions: Vec<usize>,
        counts: Vec<usize>,
    },
    #[error("domain {label} lifts to {components} components in the double cover (expected 1 or 2)")]
    BadCoverComponents { label: u32, components: usize },
    #[error("curve extraction: open polyline ends away from boundary and seam at ({x}, {y})")]
    DanglingCurve { x: f64, y: f64 },
    #[error("domain count {count} exceeds the Courant bound {bound}")]
    CourantViolation { count: usize, bound: usize },
}

/// Sampled sign field over the fundamental rectangle.
#[derive(Debug, Clone)]
pub struct SignGrid {
    pub nx: usize,
    pub ny: usize,
    /// Center values, row-major `j·nx + i`.
    values: Vec<f64>,
    /// +1, −1, or 0 for zero-band cells.
    signs: Vec<i8>,
    pub zero_tol: f64,
    pub tol_abs: f64,
    pub max_abs: f64,
    pub refinement_depth: u32,
}

impl SignGrid {
    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    #[inline]
    pub fn sign(&self, i: usize, j: usize) -> i8 {
        self.signs[self.idx(i, j)]
    }

    #[inline]
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[self.idx(i, j)]
    }

    pub fn dx(&self) -> f64 {
        PI / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        PI / self.ny as f64
    }

    /// Center of cell `(i, j)`.
    pub fn center(&self, i: usize, j: usize) -> (f64, f64) {
        ((i as f64 + 0.5) * self.dx(), (j as f64 + 0.5) * self.dy())
    }

    /// Index bijection at the seam: bottom cell `i` glues to top cell
    /// `nx−1−i`. An involution.
    pub fn seam_partner(&self, i: usize) -> usize {
        self.nx - 1 - i
    }

    pub fn zero_band_cells(&self) -> usize {
        self.signs.iter().filter(|&&s| s == 0).count()
    }

    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dy()
    }
}

/// Evaluate `spec` on the tensor grid `xs × ys`, row-major over `ys`.
/// Separable modes make this a sum of rank-one products.
fn sample_separable(spec: &EigenfunctionSpec, xs: &[f64], ys: &[f64]) -> Vec<f64> {
    use crate::eigenfunction::TrigKind;
    let mode_tabs: Vec<(Vec<f64>, Vec<f64>)> = spec
        .modes
        .iter()
        .map(|m| {
            let sx: Vec<f64> = xs.iter().map(|&x| (m.m as f64 * x).sin()).collect();
            let ty: Vec<f64> = ys
                .iter()
                .map(|&y| {
                    let arg = m.n as f64 * y;
                    m.coefficient
                        * match m.kind {
                            TrigKind::Sine => arg.sin(),
                            TrigKind::Cosine => arg.cos(),
                        }
                })
                .collect();
            (sx, ty)
        })
        .collect();

    let nx = xs.len();
    let mut field = vec![0.0f64; nx * ys.len()];
    field
        .par_chunks_mut(nx)
        .enumerate()
        .for_each(|(j, row)| {
            for (sx, ty) in &mode_tabs {
                let c = ty[j];
                if c != 0.0 {
                    for (r, s) in row.iter_mut().zip(sx) {
                        *r += c * s;
                    }
                }
            }
        });
    field
}

/// Sample the sign grid of `spec` at `nx × ny` cells.
pub fn sample_grid(
    spec: &EigenfunctionSpec,
    nx: usize,
    ny: usize,
    zero_tol: f64,
) -> Result<SignGrid, NodalError> {
    if nx < 16 || ny < 16 {
        return Err(NodalError::TooCoarse { nx, ny });
    }
    if zero_tol.is_nan() || zero_tol <= 0.0 {
        return Err(NodalError::BadZeroTol(zero_tol));
    }
    let dx = PI / nx as f64;
    let dy = PI / ny as f64;
    let cxs: Vec<f64> = (0..nx).map(|i| (i as f64 + 0.5) * dx).collect();
    let cys: Vec<f64> = (0..ny).map(|j| (j as f64 + 0.5) * dy).collect();
    let gxs: Vec<f64> = (0..=nx).map(|i| i as f64 * dx).collect();
    let gys: Vec<f64> = (0..=ny).map(|j| j as f64 * dy).collect();

    let centers = sample_separable(spec, &cxs, &cys);
    let corners = sample_separable(spec, &gxs, &gys);

    let max_abs = centers
        .iter()
        .chain(&corners)
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let tol_abs = zero_tol * max_abs;

    let signs: Vec<i8> = (0..ny)
        .into_par_iter()
        .flat_map_iter(|j| {
            let centers = &centers;
            let corners = &corners;
            (0..nx).map(move |i| {
                let c = centers[j * nx + i];
                if c.abs() <= tol_abs {
                    return 0;
                }
                // Corner signs with a dead zone: an exact Dirichlet zero on
                // the boundary columns does not by itself create a band.
                let cs = [
                    corners[j * (nx + 1) + i],
                    corners[j * (nx + 1) + i + 1],
                    corners[(j + 1) * (nx + 1) + i],
                    corners[(j + 1) * (nx + 1) + i + 1],
                ];
                let has_pos = cs.iter().any(|&v| v > tol_abs);
                let has_neg = cs.iter().any(|&v| v < -tol_abs);
                if has_pos && has_neg {
                    0
                } else if c > 0.0 {
                    1
                } else {
                    -1
                }
            })
        })
        .collect();

    Ok(SignGrid {
        nx,
        ny,
        values: centers,
        signs,
        zero_tol,
        tol_abs,
        max_abs,
        refinement_depth: 0,
    })
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

/// Connected components of equal-sign cells.
#[derive(Debug, Clone, Serialize)]
pub struct NodalDomainSet {
    pub count: usize,
    /// Per-cell domain label, `None` for zero-band cells.
    #[serde(skip)]
    pub labels: Vec<Option<u32>>,
    /// Cell-area estimate per domain.
    pub areas: Vec<f64>,
    /// Filled by [`orientability`].
    pub orientable: Option<Vec<bool>>,
}

impl NodalDomainSet {
    /// Verify the Courant bound `count ≤ k` for an eigenvalue label `k`.
    pub fn check_courant(&self, label: usize) -> Result<(), NodalError> {
        if self.count > label {
            return Err(NodalError::CourantViolation {
                count: self.count,
                bound: label,
            });
        }
        Ok(())
    }
}

/// Union-find over same-sign 4-neighbor cells with seam gluing.
pub fn count_nodal_domains(grid: &SignGrid) -> NodalDomainSet {
    let (nx, ny) = (grid.nx, grid.ny);
    let mut uf = UnionFind::new(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let s = grid.sign(i, j);
            if s == 0 {
                continue;
            }
            let id = grid.idx(i, j) as u32;
            if i + 1 < nx && grid.sign(i + 1, j) == s {
                uf.union(id, grid.idx(i + 1, j) as u32);
            }
            if j + 1 < ny && grid.sign(i, j + 1) == s {
                uf.union(id, grid.idx(i, j + 1) as u32);
            }
            if j == 0 {
                let p = grid.seam_partner(i);
                if grid.sign(p, ny - 1) == s {
                    uf.union(id, grid.idx(p, ny - 1) as u32);
                }
            }
        }
    }

    let mut label_of_root: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    let mut labels = vec![None; nx * ny];
    let mut cell_counts: Vec<usize> = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            if grid.sign(i, j) == 0 {
                continue;
            }
            let root = uf.find(grid.idx(i, j) as u32);
            let next = cell_counts.len() as u32;
            let label = *label_of_root.entry(root).or_insert_with(|| {
                cell_counts.push(0);
                next
            });
            cell_counts[label as usize] += 1;
            labels[grid.idx(i, j)] = Some(label);
        }
    }
    let area = grid.cell_area();
    NodalDomainSet {
        count: cell_counts.len(),
        labels,
        areas: cell_counts.iter().map(|&c| c as f64 * area).collect(),
        orientable: None,
    }
}

/// Orientability of each domain via the cylinder double cover.
///
/// The cover stacks a second copy of the rectangle, related by the deck
/// transformation `(x,y) ↦ (π−x, y+π)`, and closes up periodically in `y`.
/// A domain is orientable iff its preimage splits into two components.
pub fn orientability(
    grid: &SignGrid,
    domains: &mut NodalDomainSet,
) -> Result<Vec<bool>, NodalError> {
    let (nx, ny) = (grid.nx, grid.ny);
    let ny2 = 2 * ny;
    // Base cell of a double-cover cell.
    let base = |i: usize, j: usize| -> usize {
        if j < ny {
            grid.idx(i, j)
        } else {
            grid.idx(nx - 1 - i, j - ny)
        }
    };
    let sign = |i: usize, j: usize| -> i8 { grid.signs[base(i, j)] };

    let mut uf = UnionFind::new(nx * ny2);
    let id = |i: usize, j: usize| (j * nx + i) as u32;
    for j in 0..ny2 {
        for i in 0..nx {
            let s = sign(i, j);
            if s == 0 {
                continue;
            }
            if i + 1 < nx && sign(i + 1, j) == s {
                uf.union(id(i, j), id(i + 1, j));
            }
            let ju = (j + 1) % ny2; // periodic in y on the cylinder
            if sign(i, ju) == s {
                uf.union(id(i, j), id(i, ju));
            }
        }
    }

    let mut components: Vec<std::collections::HashSet<u32>> =
        vec![std::collections::HashSet::new(); domains.count];
    for j in 0..ny2 {
        for i in 0..nx {
            if sign(i, j) == 0 {
                continue;
            }
            if let Some(label) = domains.labels[base(i, j)] {
                components[label as usize].insert(uf.find(id(i, j)));
            }
        }
    }

    let mut orientable = Vec::with_capacity(domains.count);
    for (label, roots) in components.iter().enumerate() {
        match roots.len() {
            2 => orientable.push(true),
            1 => orientable.push(false),
            n => {
                return Err(NodalError::BadCoverComponents {
                    label: label as u32,
                    components: n,
                })
            }
        }
    }
    domains.orientable = Some(orientable.clone());
    Ok(orientable)
}

/// A stability-checked nodal analysis: the returned grid is the fine one.
#[derive(Debug)]
pub struct NodalAnalysis {
    pub grid: SignGrid,
    pub domains: NodalDomainSet,
    /// Base resolution requested; the grid is sampled at twice this.
    pub resolution: usize,
    pub refinement_depth: u32,
}

pub const DEFAULT_RESOLUTION: usize = 800;
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// Count nodal domains with a refinement-stability check: the count at `n`
/// must agree with the count at `2n`, refining dyadically up to 3 times
/// before failing loudly.
pub fn analyze_stable(
    spec: &EigenfunctionSpec,
    resolution: usize,
    zero_tol: f64,
) -> Result<NodalAnalysis, NodalError> {
    let mut n = resolution;
    let mut prev_count = count_nodal_domains(&sample_grid(spec, n, n, zero_tol)?).count;
    let mut tried_res = Vec::new();
    let mut tried_counts = Vec::new();
    for depth in 0..=3u32 {
        let fine = sample_grid(spec, 2 * n, 2 * n, zero_tol)?;
        let mut fine_domains = count_nodal_domains(&fine);
        tried_res.push(n);
        tried_counts.push(prev_count);
        if fine_domains.count == prev_count {
            orientability(&fine, &mut fine_domains)?;
            let mut grid = fine;
            grid.refinement_depth = depth;
            return Ok(NodalAnalysis {
                grid,
                domains: fine_domains,
                resolution: n,
                refinement_depth: depth,
            });
        }
        n *= 2;
        prev_count = fine_domains.count;
    }
    tried_res.push(n);
    tried_counts.push(prev_count);
    Err(NodalError::NonConvergence {
        resolutions: tried_res,
        counts: tried_counts,
    })
}

/// Check that no extracted curve component sits inside a single white
/// checkerboard rectangle of `P_β` (which would be an enclosed loop in a
/// region where the first Dirichlet eigenvalue is already too large).
///
/// Returns the offending components' bounding cells, empty when the check
/// passes.
pub fn no_enclosed_loop_violations(
    curves: &CurveGraph,
    beta: f64,
) -> Vec<(usize, usize, usize)> {
    // Grid lines of the checkerboard: zeros of sin 2x, sin 3x in x and of
    // sin 3y, sin(2y+β) in y.
    let mut x_cuts = vec![0.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, PI];
    x_cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut y_cuts = vec![0.0, PI / 3.0, 2.0 * PI / 3.0, PI];
    for k in 0..=2 {
        let y = (k as f64 * PI - beta) / 2.0;
        if (0.0..PI).contains(&y) {
            y_cuts.push(y);
        }
    }
    y_cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    y_cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

    let eps = 1e-6;
    let bin = |cuts: &[f64], v: f64| -> Option<usize> {
        // None when the value touches a cut line.
        for (k, w) in cuts.windows(2).enumerate() {
            if v > w[0] + eps && v < w[1] - eps {
                return Some(k);
            }
        }
        None
    };

    let mut violations = Vec::new();
    for (pid, poly) in curves.polylines.iter().enumerate() {
        let mut cell: Option<(usize, usize)> = None;
        let mut contained = true;
        for &(x, y) in &poly.points {
            let y = y.rem_euclid(PI);
            match (bin(&x_cuts, x), bin(&y_cuts, y)) {
                (Some(bx), Some(by)) => match cell {
                    None => cell = Some((bx, by)),
                    Some(c) if c == (bx, by) => {}
                    _ => {
                        contained = false;
                        break;
                    }
                },
                // Touching a grid line means the curve reaches a cell wall.
                _ => {
                    contained = false;
                    break;
                }
            }
        }
        if contained {
            if let Some((bx, by)) = cell {
                violations.push((pid, bx, by));
            }
        }
    }
    violations
}

/// Convenience wrapper: true when the curve graph passes the enclosed-loop
/// exclusion for the (2,3) family at the given β.
pub fn no_enclosed_loop_check(curves: &CurveGraph, beta: f64) -> bool {
    no_enclosed_loop_violations(curves, beta).is_empty()
}

/// Largest `P_β` value over the zero-band cell centers of a (2,3)-family
/// grid (−∞ if the band is empty).
///
/// The nodal set lies in `{P_β ≤ 0}`, so band centers can exceed zero only
/// by the discretization slack: they sit within one cell diagonal of the
/// nodal set and `|∇P_β| ≤ 5√2`, so the excess is at most about `10·Δ`.
pub fn max_checkerboard_on_band(grid: &SignGrid, beta: f64) -> f64 {
    let mut worst = f64::NEG_INFINITY;
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            if grid.sign(i, j) == 0 {
                let (x, y) = grid.center(i, j);
                worst = worst.max(checkerboard_value(beta, x, y));
            }
        }
    }
    worst
}
