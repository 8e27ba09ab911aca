//! Figures: nodal plots in the fundamental rectangle (SVG) and 3-D meshes
//! of the strip embedded by
//!
//! `F(w,v) = (w cos v, (R + w sin v) cos 2v, (R + w sin v) sin 2v)`,
//!
//! with `w = x − π/2 ∈ (−π/2, π/2)` and `v = y ∈ [0, π]`. `F` is a
//! diffeomorphism onto its image for `R > π/2`; it is not conformal (angle
//! distortion at critical zeros is expected in the 3-D views) but
//! `∂_u F ⊥ ∂_v F`. Meshes are welded along the seam `F(w, 0) = F(−w, π)`
//! and written as plain OBJ text, nodal curves as a sidecar OBJ of
//! polylines.

use crate::nodal::CurveGraph;
use crate::nodal::NodalDomainSet;
use crate::nodal::SignGrid;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("embedding radius R = {0} must exceed π/2")]
    RadiusTooSmall(f64),
    #[error("mesh needs at least 8 samples per direction, got {u} × {v}")]
    TooFewSamples { u: usize, v: usize },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Colors and line styles for fundamental-domain plots.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PlotStyle {
    /// 24-bit RGB for the nodal curves.
    pub nodal_color: u32,
    /// 24-bit RGB for the Dirichlet boundary.
    pub boundary_color: u32,
    /// Dash the seam when it is not part of the nodal set.
    pub dashed_seam: bool,
    pub domain_labels: bool,
}

impl Default for PlotStyle {
    fn default() -> Self {
        PlotStyle {
            nodal_color: 0xff0000,
            boundary_color: 0x0000ff,
            dashed_seam: true,
            domain_labels: false,
        }
    }
}

fn color(c: u32) -> String {
    format!("#{:06x}", c & 0xffffff)
}

/// Parameters of the 3-D embedding.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EmbeddingParams {
    pub r: f64,
    pub u_samples: usize,
    pub v_samples: usize,
}

impl Default for EmbeddingParams {
    fn default() -> Self {
        EmbeddingParams {
            r: 3.0,
            u_samples: 256,
            v_samples: 256,
        }
    }
}

impl EmbeddingParams {
    pub fn validate(&self) -> Result<(), RenderError> {
        if self.r <= PI / 2.0 {
            return Err(RenderError::RadiusTooSmall(self.r));
        }
        if self.u_samples < 8 || self.v_samples < 8 {
            return Err(RenderError::TooFewSamples {
                u: self.u_samples,
                v: self.v_samples,
            });
        }
        Ok(())
    }
}

/// The embedding map at `(w, v)`, `w ∈ (−π/2, π/2)`, `v ∈ [0, π]`.
pub fn embed_point(params: &EmbeddingParams, w: f64, v: f64) -> Result<[f64; 3], RenderError> {
    if params.r <= PI / 2.0 {
        return Err(RenderError::RadiusTooSmall(params.r));
    }
    let ring = params.r + w * v.sin();
    Ok([w * v.cos(), ring * (2.0 * v).cos(), ring * (2.0 * v).sin()])
}

/// Map a strip point `(x, y)` through the embedding.
pub fn embed_strip_point(params: &EmbeddingParams, x: f64, y: f64) -> Result<[f64; 3], RenderError> {
    embed_point(params, x - PI / 2.0, y)
}

const SVG_SCALE: f64 = 160.0;
const SVG_MARGIN: f64 = 20.0;

fn svg_xy(x: f64, y: f64) -> (f64, f64) {
    // y grows upward in the strip, downward in SVG.
    (
        SVG_MARGIN + x * SVG_SCALE,
        SVG_MARGIN + (PI - y) * SVG_SCALE,
    )
}

/// Write the fundamental-domain figure: boundary, seam, nodal polylines,
/// optional domain labels at area centroids.
pub fn plot_fundamental_domain(
    curves: &CurveGraph,
    style: &PlotStyle,
    domains: Option<(&SignGrid, &NodalDomainSet)>,
    path: &Path,
) -> Result<(), RenderError> {
    let size = 2.0 * SVG_MARGIN + PI * SVG_SCALE;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size:.0}\" height=\"{size:.0}\" viewBox=\"0 0 {size:.0} {size:.0}\">"
    );
    let _ = writeln!(
        svg,
        "  <desc>fundamental domain (0,π)×[0,π], seam (x,0)~(π−x,π); embedding map is not conformal</desc>"
    );

    // Dirichlet boundary: the vertical sides.
    for x in [0.0, PI] {
        let (x0, y0) = svg_xy(x, 0.0);
        let (x1, y1) = svg_xy(x, PI);
        let _ = writeln!(
            svg,
            "  <line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y1:.2}\" stroke=\"{}\" stroke-width=\"2\"/>",
            color(style.boundary_color)
        );
    }

    // Seam (drawn twice: y = 0 and y = π), dashed when not nodal.
    let seam_is_nodal = curves
        .polylines
        .iter()
        .flat_map(|p| &p.points)
        .filter(|p| p.1 < 2.0 * curves.dy || p.1 > PI - 2.0 * curves.dy)
        .count()
        > (0.5 * PI / curves.dx) as usize;
    if style.dashed_seam && !seam_is_nodal {
        for y in [0.0, PI] {
            let (x0, y0) = svg_xy(0.0, y);
            let (x1, y1) = svg_xy(PI, y);
            let _ = writeln!(
                svg,
                "  <line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y1:.2}\" stroke=\"black\" stroke-dasharray=\"6 4\" stroke-width=\"1\"/>"
            );
        }
    }

    // Nodal polylines, split where they wrap through the seam.
    for poly in &curves.polylines {
        let mut run: Vec<(f64, f64)> = Vec::new();
        for &(x, y) in &poly.points {
            if let Some(&(_, py)) = run.last() {
                if (y - py).abs() > 4.0 * curves.dy {
                    emit_polyline(&mut svg, &run, style.nodal_color);
                    run.clear();
                }
            }
            run.push((x, y));
        }
        emit_polyline(&mut svg, &run, style.nodal_color);
    }

    // Domain labels at cell centroids.
    if style.domain_labels {
        if let Some((grid, domains)) = domains {
            let mut sums: Vec<(f64, f64, usize)> = vec![(0.0, 0.0, 0); domains.count];
            for j in 0..grid.ny {
                for i in 0..grid.nx {
                    if let Some(l) = domains.labels[grid.idx(i, j)] {
                        let (x, y) = grid.center(i, j);
                        let s = &mut sums[l as usize];
                        s.0 += x;
                        s.1 += y;
                        s.2 += 1;
                    }
                }
            }
            for (label, (sx, sy, n)) in sums.iter().enumerate() {
                if *n == 0 {
                    continue;
                }
                let (tx, ty) = svg_xy(sx / *n as f64, sy / *n as f64);
                let _ = writeln!(
                    svg,
                    "  <text x=\"{tx:.1}\" y=\"{ty:.1}\" font-size=\"16\" text-anchor=\"middle\">{}</text>",
                    label + 1
                );
            }
        }
    }

    let _ = writeln!(svg, "</svg>");
    write_atomic(path, svg.as_bytes())
}

fn emit_polyline(svg: &mut String, run: &[(f64, f64)], rgb: u32) {
    if run.len() < 2 {
        return;
    }
    let pts: Vec<String> = run
        .iter()
        .map(|&(x, y)| {
            let (sx, sy) = svg_xy(x, y);
            format!("{sx:.2},{sy:.2}")
        })
        .collect();
    let _ = writeln!(
        svg,
        "  <polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>",
        color(rgb),
        pts.join(" ")
    );
}

/// Welded triangle mesh of the embedded strip.
#[derive(Debug)]
pub struct StripMesh {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
}

impl StripMesh {
    /// Euler characteristic V − E + F of the welded mesh; 0 for the strip.
    pub fn euler_characteristic(&self) -> i64 {
        let mut edges = std::collections::HashSet::new();
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        self.vertices.len() as i64 - edges.len() as i64 + self.triangles.len() as i64
    }

    /// Boundary edges (edges used by exactly one triangle) grouped into
    /// closed loops; returns the loop count.
    pub fn boundary_loops(&self) -> usize {
        let mut use_count = std::collections::HashMap::new();
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                *use_count.entry((a.min(b), a.max(b))).or_insert(0usize) += 1;
            }
        }
        let mut adj: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
        for (&(a, b), &c) in &use_count {
            if c == 1 {
                adj.entry(a).or_default().push(b);
                adj.entry(b).or_default().push(a);
            }
        }
        let mut seen = std::collections::HashSet::new();
        let mut loops = 0;
        for &start in adj.keys() {
            if seen.contains(&start) {
                continue;
            }
            loops += 1;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !seen.insert(v) {
                    continue;
                }
                stack.extend(adj[&v].iter().copied());
            }
        }
        loops
    }
}

/// Build the welded mesh of `F(M_1)`.
pub fn build_mesh(params: &EmbeddingParams) -> Result<StripMesh, RenderError> {
    params.validate()?;
    let (nu, nv) = (params.u_samples, params.v_samples);
    // Vertex (i, j): w = −π/2 + i·π/nu, v = j·π/nv; row nv is welded onto
    // row 0 with the reversal i ↦ nu − i.
    let vid = |i: usize, j: usize| -> usize {
        if j == nv {
            (nu - i) * nv
        } else {
            i * nv + j
        }
    };
    let mut vertices = vec![[0.0; 3]; (nu + 1) * nv];
    for i in 0..=nu {
        let w = -PI / 2.0 + i as f64 * PI / nu as f64;
        for j in 0..nv {
            let v = j as f64 * PI / nv as f64;
            vertices[i * nv + j] = embed_point(params, w, v)?;
        }
    }
    let mut triangles = Vec::with_capacity(2 * nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            let (a, b, c, d) = (vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1));
            triangles.push([a, b, c]);
            triangles.push([a, c, d]);
        }
    }
    Ok(StripMesh {
        vertices,
        triangles,
    })
}

/// Export the welded strip mesh as OBJ; when curves are given, write them
/// as a sidecar OBJ of polylines mapped through the embedding.
pub fn export_mesh(
    params: &EmbeddingParams,
    curves: Option<&CurveGraph>,
    path: &Path,
) -> Result<StripMesh, RenderError> {
    let mesh = build_mesh(params)?;
    let mut obj = String::new();
    let _ = writeln!(obj, "# flat Moebius strip, seam-welded, R = {}", params.r);
    for v in &mesh.vertices {
        let _ = writeln!(obj, "v {:.9} {:.9} {:.9}", v[0], v[1], v[2]);
    }
    for t in &mesh.triangles {
        let _ = writeln!(obj, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
    }
    write_atomic(path, obj.as_bytes())?;

    if let Some(curves) = curves {
        let mut side = String::new();
        let _ = writeln!(side, "# nodal curves on the embedded strip");
        let mut next_vertex = 1usize;
        for poly in &curves.polylines {
            let mut ids = Vec::new();
            for &(x, y) in &poly.points {
                let p = embed_strip_point(params, x, y)?;
                let _ = writeln!(side, "v {:.9} {:.9} {:.9}", p[0], p[1], p[2]);
                ids.push(next_vertex);
                next_vertex += 1;
            }
            if ids.len() >= 2 {
                let line: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
                let _ = writeln!(side, "l {}", line.join(" "));
            }
        }
        let sidecar = path.with_extension("curves.obj");
        write_atomic(&sidecar, side.as_bytes())?;
    }
    Ok(mesh)
}

/// The soul circle `w = 0` mapped through the embedding as a closed loop.
pub fn soul_loop(params: &EmbeddingParams, samples: usize) -> Result<Vec<[f64; 3]>, RenderError> {
    params.validate()?;
    let mut pts = Vec::with_capacity(samples + 1);
    for k in 0..=samples {
        let v = k as f64 * PI / samples as f64;
        pts.push(embed_point(params, 0.0, v)?);
    }
    Ok(pts)
}

/// Atomic write: temp file in the same directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), RenderError> {
    let tmp = path.with_extension("tmp~");
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_basics() {
        let p = EmbeddingParams::default();
        let origin = embed_point(&p, 0.0, 0.0).unwrap();
        assert_eq!(origin, [0.0, 3.0, 0.0]);
        // w = 0 traces the circle of radius R.
        for k in 0..24 {
            let v = k as f64 * PI / 24.0;
            let q = embed_point(&p, 0.0, v).unwrap();
            assert!(q[0].abs() < 1e-15);
            assert!((q[1].hypot(q[2]) - p.r).abs() < 1e-12);
        }
        assert!(embed_point(&EmbeddingParams { r: 1.0, ..p }, 0.0, 0.0).is_err());
    }

    #[test]
    fn seam_closure_identity() {
        let p = EmbeddingParams::default();
        for k in 0..=32 {
            let w = -PI / 2.0 + k as f64 * PI / 32.0;
            let a = embed_point(&p, w, 0.0).unwrap();
            let b = embed_point(&p, -w, PI).unwrap();
            for c in 0..3 {
                assert!((a[c] - b[c]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn tangent_vectors_are_orthogonal() {
        let p = EmbeddingParams::default();
        let h = 1e-6;
        let mut state = 5u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..30 {
            let w = -PI / 2.0 + PI * next();
            let v = PI * next();
            let f = |w: f64, v: f64| embed_point(&p, w, v).unwrap();
            let a = f(w + h, v);
            let b = f(w - h, v);
            let c = f(w, v + h);
            let d = f(w, v - h);
            let du: Vec<f64> = (0..3).map(|i| (a[i] - b[i]) / (2.0 * h)).collect();
            let dv: Vec<f64> = (0..3).map(|i| (c[i] - d[i]) / (2.0 * h)).collect();
            let dot: f64 = du.iter().zip(&dv).map(|(u, v)| u * v).sum();
            assert!(dot.abs() < 1e-6, "∂u·∂v = {dot} at ({w},{v})");
        }
    }

    #[test]
    fn welded_mesh_is_a_moebius_strip() {
        let params = EmbeddingParams {
            u_samples: 24,
            v_samples: 32,
            ..Default::default()
        };
        let mesh = build_mesh(&params).unwrap();
        assert_eq!(mesh.euler_characteristic(), 0);
        assert_eq!(mesh.boundary_loops(), 1);
    }

    #[test]
    fn soul_is_closed() {
        let p = EmbeddingParams::default();
        let pts = soul_loop(&p, 64).unwrap();
        let first = pts.first().unwrap();
        let last = pts.last().unwrap();
        for c in 0..3 {
            assert!((first[c] - last[c]).abs() < 1e-12);
        }
    }

    #[test]
    fn plain_strip_plot_has_boundary_but_no_nodal_lines() {
        use crate::eigenfunction::EigenfunctionSpec;
        use crate::nodal::{extract_curves, sample_grid};
        let dir = std::env::temp_dir().join("moebius-render-sine");
        std::fs::create_dir_all(&dir).unwrap();
        let spec = EigenfunctionSpec::pure_sine_x(1).unwrap();
        let grid = sample_grid(&spec, 64, 64, 1e-9).unwrap();
        let curves = extract_curves(&spec, &grid).unwrap();
        let path = dir.join("sine.svg");
        plot_fundamental_domain(&curves, &PlotStyle::default(), None, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("#0000ff"), "boundary drawn");
        assert!(!text.contains("#ff0000"), "no nodal polylines");
        assert!(text.contains("stroke-dasharray"), "seam dashed when not nodal");
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn svg_and_obj_files_appear() {
        use crate::eigenfunction::{Family, FamilyParams};
        use crate::nodal::{count_nodal_domains, extract_curves, sample_grid};
        let dir = std::env::temp_dir().join("moebius-render-test");
        std::fs::create_dir_all(&dir).unwrap();
        let spec = FamilyParams::new(Family::TwoThree, 0.5, 0.9)
            .spec()
            .unwrap();
        let grid = sample_grid(&spec, 128, 128, 1e-9).unwrap();
        let domains = count_nodal_domains(&grid);
        let curves = extract_curves(&spec, &grid).unwrap();
        let svg_path = dir.join("nodal.svg");
        let style = PlotStyle {
            domain_labels: true,
            ..Default::default()
        };
        plot_fundamental_domain(&curves, &style, Some((&grid, &domains)), &svg_path).unwrap();
        let text = std::fs::read_to_string(&svg_path).unwrap();
        assert!(text.contains("<svg"), "svg written");
        assert!(text.contains("#ff0000"));

        let obj_path = dir.join("strip.obj");
        let params = EmbeddingParams {
            u_samples: 16,
            v_samples: 16,
            ..Default::default()
        };
        export_mesh(&params, Some(&curves), &obj_path).unwrap();
        let obj = std::fs::read_to_string(&obj_path).unwrap();
        assert!(obj.starts_with("# flat Moebius strip"));
        assert!(std::fs::metadata(obj_path.with_extension("curves.obj")).is_ok());
        std::fs::remove_dir_all(&dir).ok();
    }
}
