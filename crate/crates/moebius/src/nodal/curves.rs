//! Level-curve extraction on the quotient by marching squares.
//!
//! The marching lattice is the grid of cell centers, so no lattice point
//! lies on the Dirichlet boundary (where the function vanishes identically)
//! or exactly on the seam. The seam is handled by one extra row of cells
//! whose top corners are the deck images of the bottom corner row; the
//! crossing nodes on the two identified corner rows share identity, so
//! curves continue across the seam exactly, with the x-reversal built in.
//!
//! Within a cell, crossings are linearly interpolated on the edges; the two
//! ambiguous corner configurations are resolved by evaluating the function
//! at the cell center. Every crossing node has degree ≤ 2, so the segment
//! graph decomposes into open chains (which must end on the scan border
//! next to the Dirichlet boundary, and are extended onto it) and closed
//! loops.

use super::{NodalError, SignGrid};
use crate::eigenfunction::EigenfunctionSpec;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;

/// One extracted curve.
#[derive(Debug, Clone, Serialize)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
    /// True when an endpoint was extended onto `x = 0` or `x = π`.
    pub hits_boundary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    BoundaryHit,
    Junction,
    SeamCrossing,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveVertex {
    pub x: f64,
    pub y: f64,
    pub kind: VertexKind,
}

/// The extracted nodal curves with their quotient topology.
#[derive(Debug, Clone, Serialize)]
pub struct CurveGraph {
    pub polylines: Vec<Polyline>,
    /// Merged component id per polyline (curves crossing at a critical zero
    /// belong to one component).
    pub component_of: Vec<usize>,
    pub components: usize,
    /// Connected components of the boundary circle: always 1.
    pub b0: usize,
    /// Connected components of (nodal set ∪ boundary).
    pub b1: usize,
    pub vertices: Vec<CurveVertex>,
    pub dx: f64,
    pub dy: f64,
}

/// Distance on the quotient: compare against the deck images of `b`.
pub fn moebius_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    let d = |p: (f64, f64), q: (f64, f64)| ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt();
    d(a, b)
        .min(d(a, (PI - b.0, b.1 + PI)))
        .min(d(a, (PI - b.0, b.1 - PI)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum EdgeKind {
    Horizontal,
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct NodeKey {
    kind: EdgeKind,
    i: usize,
    j: usize,
}

struct Lattice<'a> {
    grid: &'a SignGrid,
}

impl<'a> Lattice<'a> {
    fn nx(&self) -> usize {
        self.grid.nx
    }

    fn ny(&self) -> usize {
        self.grid.ny
    }

    /// Corner value; row `ny` is the seam image of row 0.
    fn val(&self, i: usize, j: usize) -> f64 {
        if j == self.ny() {
            self.grid.value(self.nx() - 1 - i, 0)
        } else {
            self.grid.value(i, j)
        }
    }

    fn pos(&self, i: usize, j: usize) -> (f64, f64) {
        (
            (i as f64 + 0.5) * self.grid.dx(),
            (j as f64 + 0.5) * self.grid.dy(),
        )
    }

    /// Canonical node: the top seam row H-edges are the mirrored bottom ones.
    fn canon(&self, key: NodeKey) -> NodeKey {
        if key.kind == EdgeKind::Horizontal && key.j == self.ny() {
            NodeKey {
                kind: EdgeKind::Horizontal,
                i: self.nx() - 2 - key.i,
                j: 0,
            }
        } else {
            key
        }
    }

    /// Crossing position on a canonical edge, canonicalized into the
    /// fundamental domain (`y ∈ [0, π)`).
    fn crossing(&self, key: NodeKey) -> (f64, f64) {
        let (p0, p1, v0, v1) = match key.kind {
            EdgeKind::Horizontal => (
                self.pos(key.i, key.j),
                self.pos(key.i + 1, key.j),
                self.val(key.i, key.j),
                self.val(key.i + 1, key.j),
            ),
            EdgeKind::Vertical => (
                self.pos(key.i, key.j),
                (self.pos(key.i, key.j).0, self.pos(key.i, key.j).1 + self.grid.dy()),
                self.val(key.i, key.j),
                self.val(key.i, key.j + 1),
            ),
        };
        let t = if v0 == v1 { 0.5 } else { v0 / (v0 - v1) };
        let t = t.clamp(0.0, 1.0);
        let (mut x, mut y) = (p0.0 + t * (p1.0 - p0.0), p0.1 + t * (p1.1 - p0.1));
        if y >= PI {
            x = PI - x;
            y -= PI;
        }
        (x, y)
    }
}

/// Extract the zero level set of `spec` from a sampled grid.
pub fn extract_curves(spec: &EigenfunctionSpec, grid: &SignGrid) -> Result<CurveGraph, NodalError> {
    let lat = Lattice { grid };
    let (nx, ny) = (lat.nx(), lat.ny());
    let (dx, dy) = (grid.dx(), grid.dy());

    // Collect marching-squares segments between edge-crossing nodes.
    let mut adjacency: HashMap<NodeKey, Vec<NodeKey>> = HashMap::new();
    let mut add_segment = |a: NodeKey, b: NodeKey| {
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    };

    for j in 0..ny {
        for i in 0..nx - 1 {
            let v = [
                lat.val(i, j),
                lat.val(i + 1, j),
                lat.val(i + 1, j + 1),
                lat.val(i, j + 1),
            ];
            let s = [v[0] > 0.0, v[1] > 0.0, v[2] > 0.0, v[3] > 0.0];
            if s.iter().all(|&b| b) || s.iter().all(|&b| !b) {
                continue;
            }
            let bottom = lat.canon(NodeKey { kind: EdgeKind::Horizontal, i, j });
            let top = lat.canon(NodeKey { kind: EdgeKind::Horizontal, i, j: j + 1 });
            let left = NodeKey { kind: EdgeKind::Vertical, i, j };
            let right = NodeKey { kind: EdgeKind::Vertical, i: i + 1, j };

            let crossed_bottom = s[0] != s[1];
            let crossed_right = s[1] != s[2];
            let crossed_top = s[3] != s[2];
            let crossed_left = s[0] != s[3];
            let crossings =
                [crossed_bottom, crossed_right, crossed_top, crossed_left]
                    .iter()
                    .filter(|&&c| c)
                    .count();
            match crossings {
                2 => {
                    let mut ends = [bottom, right, top, left]
                        .into_iter()
                        .zip([crossed_bottom, crossed_right, crossed_top, crossed_left])
                        .filter(|(_, c)| *c)
                        .map(|(e, _)| e);
                    let a = ends.next().unwrap();
                    let b = ends.next().unwrap();
                    add_segment(a, b);
                }
                4 => {
                    // Saddle cell: resolve with the true value at the center.
                    let cx = (i as f64 + 1.0) * dx;
                    let cy = (j as f64 + 1.0) * dy;
                    let center = spec.evaluate(cx, cy);
                    if (center > 0.0) == s[0] {
                        // Center joins the v00/v11 diagonal.
                        add_segment(bottom, right);
                        add_segment(top, left);
                    } else {
                        add_segment(bottom, left);
                        add_segment(top, right);
                    }
                }
                _ => unreachable!("odd crossing count in a marching cell"),
            }
        }
    }

    // Walk chains from degree-1 nodes, then leftover cycles.
    let mut visited: HashMap<NodeKey, bool> = adjacency.keys().map(|&k| (k, false)).collect();
    let mut polylines: Vec<Polyline> = Vec::new();
    let mut vertices: Vec<CurveVertex> = Vec::new();

    let on_scan_border =
        |k: &NodeKey| k.kind == EdgeKind::Vertical && (k.i == 0 || k.i == nx - 1);

    let walk = |start: NodeKey,
                    visited: &mut HashMap<NodeKey, bool>,
                    adjacency: &HashMap<NodeKey, Vec<NodeKey>>|
     -> Vec<NodeKey> {
        let mut chain = vec![start];
        visited.insert(start, true);
        let mut prev = start;
        let mut cur = start;
        loop {
            let next = adjacency[&cur]
                .iter()
                .find(|&&n| n != prev && !visited[&n])
                .copied();
            match next {
                Some(n) => {
                    chain.push(n);
                    visited.insert(n, true);
                    prev = cur;
                    cur = n;
                }
                None => break,
            }
        }
        chain
    };

    let mut keys: Vec<NodeKey> = adjacency.keys().copied().collect();
    keys.sort_by_key(|k| (k.j, k.i, k.kind == EdgeKind::Vertical));

    for pass in 0..2 {
        for &start in &keys {
            if visited[&start] {
                continue;
            }
            let degree = adjacency[&start].len();
            if pass == 0 && degree != 1 {
                continue;
            }
            let chain = walk(start, &mut visited, &adjacency);
            let closed = degree == 2
                && chain.len() > 2
                && adjacency[chain.last().unwrap()].contains(&chain[0]);
            let mut points: Vec<(f64, f64)> = chain.iter().map(|&k| lat.crossing(k)).collect();
            if closed {
                points.push(points[0]);
            }

            let mut hits_boundary = false;
            if !closed {
                for (endpoint, at_start) in [(chain[0], true), (*chain.last().unwrap(), false)] {
                    let (x, y) = lat.crossing(endpoint);
                    if on_scan_border(&endpoint) {
                        hits_boundary = true;
                        // Seam canonicalization may have mirrored the point,
                        // so extend to whichever boundary is half a cell away.
                        let bx = if x < PI / 2.0 { 0.0 } else { PI };
                        if at_start {
                            points.insert(0, (bx, y));
                        } else {
                            points.push((bx, y));
                        }
                        vertices.push(CurveVertex {
                            x: bx,
                            y,
                            kind: VertexKind::BoundaryHit,
                        });
                    } else {
                        return Err(NodalError::DanglingCurve { x, y });
                    }
                }
            }
            for w in points.windows(2) {
                if (w[0].1 - w[1].1).abs() > 4.0 * dy {
                    vertices.push(CurveVertex {
                        x: w[0].0,
                        y: w[0].1,
                        kind: VertexKind::SeamCrossing,
                    });
                }
            }
            polylines.push(Polyline {
                points,
                closed,
                hits_boundary,
            });
        }
    }

    // Merge polylines that pass within the junction radius of each other:
    // curves meeting at critical zeros belong to one connected component.
    let merge_radius_cells = 2i64;
    let mut uf: Vec<usize> = (0..polylines.len()).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let bucket_of = |p: (f64, f64)| -> (i64, i64) {
        (
            ((p.0 / dx).floor() as i64).clamp(0, nx as i64 - 1),
            ((p.1.rem_euclid(PI) / dy).floor() as i64).clamp(0, ny as i64 - 1),
        )
    };
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (pid, poly) in polylines.iter().enumerate() {
        for &p in &poly.points {
            buckets.entry(bucket_of(p)).or_default().push(pid);
        }
    }
    let neighbors = |b: (i64, i64)| -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for di in -merge_radius_cells..=merge_radius_cells {
            for dj in -merge_radius_cells..=merge_radius_cells {
                let i = b.0 + di;
                let j = b.1 + dj;
                // Wrap through the seam with the x-reversal.
                if j < 0 {
                    out.push((nx as i64 - 1 - i, j + ny as i64));
                } else if j >= ny as i64 {
                    out.push((nx as i64 - 1 - i, j - ny as i64));
                } else {
                    out.push((i, j));
                }
            }
        }
        out
    };
    for (&b, pids) in &buckets {
        for nb in neighbors(b) {
            if let Some(others) = buckets.get(&nb) {
                for &a in pids {
                    for &c in others {
                        let (ra, rc) = (find(&mut uf, a), find(&mut uf, c));
                        if ra != rc {
                            uf[ra] = rc;
                        }
                    }
                }
            }
        }
    }

    let mut component_of = vec![0usize; polylines.len()];
    let mut component_ids: HashMap<usize, usize> = HashMap::new();
    for (pid, slot) in component_of.iter_mut().enumerate() {
        let root = find(&mut uf, pid);
        let next = component_ids.len();
        *slot = *component_ids.entry(root).or_insert(next);
    }
    let components = component_ids.len();

    // b1: the boundary circle is one component; every curve component that
    // touches it merges in, the rest stand alone.
    let mut touches = vec![false; components];
    for (pid, poly) in polylines.iter().enumerate() {
        if poly.hits_boundary {
            touches[component_of[pid]] = true;
        }
    }
    let b1 = 1 + touches.iter().filter(|t| !**t).count();

    let mut graph = CurveGraph {
        polylines,
        component_of,
        components,
        b0: 1,
        b1,
        vertices,
        dx,
        dy,
    };
    for (x, y) in graph.detect_junctions() {
        graph.vertices.push(CurveVertex {
            x,
            y,
            kind: VertexKind::Junction,
        });
    }
    Ok(graph)
}

impl CurveGraph {
    /// Number of curve strands crossing the circle of the given radius
    /// around a point: each nodal semi-arc at the point crosses once.
    pub fn incidence_count(&self, x: f64, y: f64, radius: f64) -> usize {
        // Canonicalize through the seam: (x, y+π) ~ (π−x, y).
        let mut center = (x, y);
        while center.1 >= PI {
            center = (PI - center.0, center.1 - PI);
        }
        while center.1 < 0.0 {
            center = (PI - center.0, center.1 + PI);
        }
        let mut crossings = 0;
        for poly in &self.polylines {
            for w in poly.points.windows(2) {
                let ain = moebius_distance(w[0], center) < radius;
                let bin = moebius_distance(w[1], center) < radius;
                if ain != bin {
                    crossings += 1;
                }
            }
        }
        crossings
    }

    /// Detect interior junction points: locations where two distinct curve
    /// strands pass through neighbouring cells. Strands of one polyline
    /// count when their sample indices are far apart (a self-crossing).
    pub fn detect_junctions(&self) -> Vec<(f64, f64)> {
        let mut candidates: Vec<(f64, f64)> = Vec::new();
        let bucket_of = |p: (f64, f64)| -> (i64, i64) {
            (
                (p.0 / self.dx).floor() as i64,
                (p.1.rem_euclid(PI) / self.dy).floor() as i64,
            )
        };
        let mut buckets: HashMap<(i64, i64), Vec<(usize, usize)>> = HashMap::new();
        for (pid, poly) in self.polylines.iter().enumerate() {
            for (k, &p) in poly.points.iter().enumerate() {
                buckets.entry(bucket_of(p)).or_default().push((pid, k));
            }
        }
        let ny = (PI / self.dy).round() as i64;
        let nx = (PI / self.dx).round() as i64;
        for (&b, entries) in &buckets {
            let mut near: Vec<(usize, usize)> = Vec::new();
            for di in -1..=1i64 {
                for dj in -1..=1i64 {
                    let (mut i, mut j) = (b.0 + di, b.1 + dj);
                    if j < 0 {
                        i = nx - 1 - i;
                        j += ny;
                    } else if j >= ny {
                        i = nx - 1 - i;
                        j -= ny;
                    }
                    if let Some(v) = buckets.get(&(i, j)) {
                        near.extend_from_slice(v);
                    }
                }
            }
            for &(pid, k) in entries {
                for &(qid, l) in &near {
                    let self_crossing = pid == qid && {
                        let len = self.polylines[pid].points.len();
                        let gap = k.abs_diff(l);
                        let gap = if self.polylines[pid].closed {
                            gap.min(len - 1 - gap)
                        } else {
                            gap
                        };
                        gap > 8
                    };
                    if pid < qid || self_crossing {
                        let p = self.polylines[pid].points[k];
                        let q = self.polylines[qid].points[l];
                        if moebius_distance(p, q) < 1.5 * self.dx.max(self.dy) {
                            candidates.push(p);
                        }
                    }
                }
            }
        }
        // Keep junctions away from the Dirichlet boundary (those belong to
        // boundary critical zeros) and cluster the rest.
        let margin = 4.0 * self.dx;
        candidates.retain(|p| p.0 > margin && p.0 < PI - margin);
        cluster_points(candidates, 4.0 * self.dx.max(self.dy))
    }

    /// Cluster open endpoints lying on the boundary; each cluster is a
    /// boundary critical zero candidate.
    pub fn boundary_endpoint_clusters(&self) -> Vec<(f64, f64)> {
        let mut endpoints = Vec::new();
        for poly in &self.polylines {
            if poly.closed {
                continue;
            }
            for &p in [poly.points.first(), poly.points.last()].iter().flatten() {
                if p.0 < 1e-9 || p.0 > PI - 1e-9 {
                    endpoints.push(*p);
                }
            }
        }
        cluster_points(endpoints, 4.0 * self.dx.max(self.dy))
    }
}

fn cluster_points(points: Vec<(f64, f64)>, radius: f64) -> Vec<(f64, f64)> {
    let mut clusters: Vec<Vec<(f64, f64)>> = Vec::new();
    for p in points {
        match clusters
            .iter_mut()
            .find(|c| c.iter().any(|&q| moebius_distance(p, q) < radius))
        {
            Some(c) => c.push(p),
            None => clusters.push(vec![p]),
        }
    }
    clusters
        .into_iter()
        .map(|c| {
            // Centroid of the cluster, using the first point's chart.
            let anchor = c[0];
            let (mut sx, mut sy) = (0.0, 0.0);
            for q in &c {
                // Pull each point into the anchor's chart before averaging.
                let q = if (q.1 - anchor.1).abs() > PI / 2.0 {
                    (PI - q.0, if q.1 > anchor.1 { q.1 - PI } else { q.1 + PI })
                } else {
                    *q
                };
                sx += q.0;
                sy += q.1;
            }
            (sx / c.len() as f64, sy / c.len() as f64)
        })
        .collect()
}
