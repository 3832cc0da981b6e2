//! Depth-bounded search for closed geodesics of length at most 2π on a
//! spherical cone surface.
//!
//! Cells are developed one after another into the unit sphere. A geodesic
//! avoiding vertices is a great circle crossing the developed sides in order,
//! so a crossing sequence is feasible exactly when the set of admissible
//! great-circle poles is non-empty; it closes up when the holonomy of the cell
//! chain fixes one of those poles. Geodesics through vertices are assembled
//! from vertex-to-vertex segments whose turning angles are at least π on both
//! sides.

use std::f64::consts::PI;

use nalgebra::{Matrix3, SymmetricEigen};
use serde::Serialize;

use crate::minkowski::Vec3;
use crate::spherical::{walk, wrap_2pi};

use super::polygon::{Development, SphericalPolygon};
use super::surface::ConeMetricSurface;

const TAU: f64 = 2.0 * PI;
/// Slack on the `≤ 2π` length comparison.
pub const LENGTH_TOL: f64 = 1e-9;
/// Slack on the `≥ π` angle criterion at vertices.
pub const ANGLE_TOL: f64 = 1e-9;
/// Default cap on search nodes before the result becomes inconclusive.
pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

const REGION_EPS: f64 = 1e-10;
/// Poles must clear every constraint by this much; regions of zero width
/// (great circles through a vertex) are thereby discarded.
const CLIP_MARGIN: f64 = 1e-12;
const WEDGE_EPS: f64 = 1e-12;
const ENDPOINT_EPS: f64 = 1e-10;
const COINCIDENT: f64 = 1e-9;
const DEGENERATE_SAMPLES: usize = 33;
const MAX_LOOP_SEGMENTS: usize = 24;

/// Outcome of the closed-geodesic search.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GeodesicCheck {
    /// No closed geodesic of length ≤ 2π crosses at most `depth` cells.
    /// `complete` is set when no branch was cut by the depth limit.
    Certified { depth: usize, complete: bool, nodes: u64 },
    Refuted { witness: GeodesicWitness },
    InconclusiveAtDepth { depth: usize, nodes: u64 },
}

impl GeodesicCheck {
    pub fn is_certified(&self) -> bool {
        matches!(self, GeodesicCheck::Certified { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, GeodesicCheck::Refuted { .. })
    }
}

/// A closed geodesic of length ≤ 2π.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeodesicWitness {
    /// Crosses the listed `[cell, side]` pairs in order and misses all
    /// vertices. `pole` is the pole of the great circle in the development
    /// that puts corner 0 of the first cell at `(0,0,1)` with side 0 leaving
    /// along `(1,0,0)`.
    AvoidingVertices { crossings: Vec<[usize; 2]>, pole: [f64; 3], length: f64 },
    /// Vertex-to-vertex segments; angles are measured counter-clockwise from
    /// the start of each vertex's corner rotation.
    ThroughVertices { segments: Vec<Segment>, length: f64 },
}

impl GeodesicWitness {
    pub fn length(&self) -> f64 {
        match self {
            GeodesicWitness::AvoidingVertices { length, .. } | GeodesicWitness::ThroughVertices { length, .. } => *length,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Segment {
    pub from_vertex: usize,
    pub departure_angle: f64,
    pub to_vertex: usize,
    /// Direction at `to_vertex` pointing back along the segment.
    pub arrival_angle: f64,
    pub length: f64,
    pub crossings: Vec<[usize; 2]>,
}

/// Runs both searches with the default node budget.
pub fn search_closed_geodesics(q: &ConeMetricSurface, max_depth: usize) -> GeodesicCheck {
    search_closed_geodesics_with_budget(q, max_depth, DEFAULT_NODE_BUDGET)
}

pub fn search_closed_geodesics_with_budget(q: &ConeMetricSurface, max_depth: usize, budget: u64) -> GeodesicCheck {
    let mut s = Search { q, max_depth, budget, nodes: 0, exhausted: false, truncated: false };
    if let Some(w) = s.avoiding_vertices() {
        return GeodesicCheck::Refuted { witness: w };
    }
    let conns = s.connections();
    if let Some(w) = s.vertex_loop(&conns) {
        return GeodesicCheck::Refuted { witness: w };
    }
    if s.exhausted {
        GeodesicCheck::InconclusiveAtDepth { depth: max_depth, nodes: s.nodes }
    } else {
        GeodesicCheck::Certified { depth: max_depth, complete: !s.truncated, nodes: s.nodes }
    }
}

#[derive(Debug, Clone, Copy)]
struct Arc {
    a: Vec3,
    b: Vec3,
    pole: Vec3,
    len: f64,
}

impl Arc {
    fn of(dev: &Development, poly: &SphericalPolygon, i: usize) -> Self {
        let n = poly.len();
        Self { a: dev.corners[i], b: dev.corners[(i + 1) % n], pole: dev.side_pole(i), len: poly.sides()[i] }
    }

    /// Arc parameter of a point on the carrying great circle, in `(−π, π]`.
    fn param(&self, x: &Vec3) -> f64 {
        self.pole.dot(&self.a.cross(x)).atan2(self.a.dot(x))
    }

    fn contains(&self, x: &Vec3, eps: f64) -> bool {
        let mut t = self.param(x);
        if t < -eps {
            t += TAU;
        }
        t >= -eps && t <= self.len + eps
    }

    fn contains_strictly(&self, x: &Vec3) -> bool {
        let mut t = self.param(x);
        if t < 0.0 {
            t += TAU;
        }
        t > ENDPOINT_EPS && t < self.len - ENDPOINT_EPS
    }

    fn point_distance(&self, p: &Vec3) -> f64 {
        let proj = p - self.pole * self.pole.dot(p);
        if proj.norm() > 1e-14 && self.contains(&proj.normalize(), 0.0) {
            return (self.pole.dot(p).clamp(-1.0, 1.0)).asin().abs();
        }
        arc(p, &self.a).min(arc(p, &self.b))
    }

    /// Where the great circle with pole `n` meets the arc's interior.
    fn crossing(&self, n: &Vec3) -> Option<Vec3> {
        let c = n.cross(&self.pole);
        let m = c.norm();
        if m < 1e-14 {
            return None;
        }
        let x = c / m;
        [x, -x].into_iter().find(|y| self.contains_strictly(y))
    }
}

fn arc(a: &Vec3, b: &Vec3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

fn arc_distance(p: &Arc, q: &Arc) -> f64 {
    let c = p.pole.cross(&q.pole);
    if c.norm() > 1e-14 {
        let x = c.normalize();
        if [x, -x].iter().any(|y| p.contains(y, 1e-12) && q.contains(y, 1e-12)) {
            return 0.0;
        }
    }
    let d = p.point_distance(&q.a).min(p.point_distance(&q.b)).min(q.point_distance(&p.a)).min(q.point_distance(&p.b));
    (d - 1e-12).max(0.0)
}

/// Set of great-circle poles `n` with `c·n ≥ 0` for every constraint `c`.
#[derive(Debug, Clone)]
struct PoleRegion {
    constraints: Vec<Vec3>,
    /// Vertices once the constraints span R³ (the region is then a convex polygon).
    poly: Option<Vec<Vec3>>,
}

impl PoleRegion {
    fn full() -> Self {
        Self { constraints: Vec::new(), poly: None }
    }

    fn add(&self, c: Vec3) -> Option<Self> {
        let c = c.normalize();
        let mut constraints = self.constraints.clone();
        constraints.push(c);
        let poly = match &self.poly {
            Some(p) => Some(clip(p, &c)?),
            None => {
                let (vals, vecs) = gram_eigen(&constraints);
                if vals[0] > 1e-10 * vals[2] {
                    let mut p = polygon_from_constraints(&constraints)?;
                    for c in &constraints {
                        p = clip(&p, c)?;
                    }
                    Some(p)
                } else {
                    if !open_region_nonempty(&constraints, &vecs.column(0).into_owned(), vals[1] > 1e-10 * vals[2]) {
                        return None;
                    }
                    None
                }
            }
        };
        Some(Self { constraints, poly })
    }

    fn satisfied_by(&self, n: &Vec3) -> bool {
        self.constraints.iter().all(|c| c.dot(n) >= -COINCIDENT)
    }

    /// A pole strictly inside the region.
    fn representative(&self) -> Option<Vec3> {
        if let Some(p) = &self.poly {
            return Some(p.iter().sum::<Vec3>().normalize());
        }
        let (vals, vecs) = gram_eigen(&self.constraints);
        if vals[1] <= 1e-10 * vals[2] {
            return self.constraints.first().copied();
        }
        let w: Vec3 = vecs.column(0).into_owned();
        let (e1, e2) = plane_basis(&w);
        let (lo, hi) = angular_span(&self.constraints, &e1, &e2)?;
        let mid = 0.5 * (lo + hi);
        Some(e1 * mid.cos() + e2 * mid.sin())
    }
}

/// Eigenvalues (ascending) and eigenvectors of `Σ c cᵀ`.
fn gram_eigen(cs: &[Vec3]) -> (Vec3, Matrix3<f64>) {
    let m: Matrix3<f64> = cs.iter().map(|c| c * c.transpose()).sum();
    let eig = SymmetricEigen::new(m);
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let vals = Vec3::new(eig.eigenvalues[idx[0]], eig.eigenvalues[idx[1]], eig.eigenvalues[idx[2]]);
    let vecs = Matrix3::from_columns(&[
        eig.eigenvectors.column(idx[0]).into_owned(),
        eig.eigenvectors.column(idx[1]).into_owned(),
        eig.eigenvectors.column(idx[2]).into_owned(),
    ]);
    (vals, vecs)
}

fn plane_basis(w: &Vec3) -> (Vec3, Vec3) {
    let seed = if w.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
    let e1 = (seed - w * w.dot(&seed)).normalize();
    (e1, w.cross(&e1))
}

/// For coplanar constraints: the arc of in-plane directions they all accept,
/// as `(lo, hi)` in the basis angle, provided it has positive width.
fn angular_span(cs: &[Vec3], e1: &Vec3, e2: &Vec3) -> Option<(f64, f64)> {
    let mut angles: Vec<f64> = cs.iter().map(|c| c.dot(e2).atan2(c.dot(e1))).collect();
    angles.sort_by(f64::total_cmp);
    let k = angles.len();
    let (mut best_gap, mut start) = (-1.0, 0);
    for i in 0..k {
        let gap = if i + 1 < k { angles[i + 1] - angles[i] } else { angles[0] + TAU - angles[k - 1] };
        if gap > best_gap {
            best_gap = gap;
            start = (i + 1) % k;
        }
    }
    // all constraint directions lie in an arc of width TAU − gap starting at angles[start]
    let width = TAU - best_gap;
    if width >= PI - REGION_EPS {
        return None;
    }
    let a_min = angles[start];
    let a_max = a_min + width;
    Some((a_max - PI / 2.0, a_min + PI / 2.0))
}

fn open_region_nonempty(cs: &[Vec3], w: &Vec3, rank2: bool) -> bool {
    if !rank2 {
        let c0 = cs[0];
        return cs.iter().all(|c| c.dot(&c0) > 0.0);
    }
    let (e1, e2) = plane_basis(w);
    angular_span(cs, &e1, &e2).is_some()
}

fn polygon_from_constraints(cs: &[Vec3]) -> Option<Vec<Vec3>> {
    let mut verts: Vec<Vec3> = Vec::new();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            let x = cs[i].cross(&cs[j]);
            if x.norm() < 1e-12 {
                continue;
            }
            let x = x.normalize();
            for y in [x, -x] {
                if cs.iter().all(|c| c.dot(&y) >= -1e-12) && !verts.iter().any(|v| (v - y).norm() < 1e-12) {
                    verts.push(y);
                }
            }
        }
    }
    order_polygon(verts)
}

fn order_polygon(verts: Vec<Vec3>) -> Option<Vec<Vec3>> {
    if verts.len() < 3 {
        return None;
    }
    let m = verts.iter().sum::<Vec3>();
    if m.norm() < 1e-12 {
        return None;
    }
    let m = m.normalize();
    if verts.iter().map(|v| arc(v, &m)).fold(0.0, f64::max) < REGION_EPS {
        return None;
    }
    let (e1, e2) = plane_basis(&m);
    let mut vs = verts;
    vs.sort_by(|a, b| a.dot(&e2).atan2(a.dot(&e1)).total_cmp(&b.dot(&e2).atan2(b.dot(&e1))));
    Some(vs)
}

/// Keeps the part of a convex spherical polygon with `c·n ≥ 0`.
fn clip(poly: &[Vec3], c: &Vec3) -> Option<Vec<Vec3>> {
    let k = poly.len();
    let s: Vec<f64> = poly.iter().map(|v| c.dot(v) - CLIP_MARGIN).collect();
    if s.iter().all(|&x| x >= 0.0) {
        return Some(poly.to_vec());
    }
    let mut out = Vec::with_capacity(k + 1);
    for i in 0..k {
        let j = (i + 1) % k;
        if s[i] >= 0.0 {
            out.push(poly[i]);
        }
        if (s[i] >= 0.0) != (s[j] >= 0.0) {
            let w = poly[j] * s[i].abs() + poly[i] * s[j].abs();
            if w.norm() > 1e-15 {
                out.push(w.normalize());
            }
        }
    }
    if out.len() < 3 {
        return None;
    }
    let m = out.iter().sum::<Vec3>();
    if m.norm() < 1e-12 || out.iter().map(|v| arc(v, &m.normalize())).fold(0.0, f64::max) < REGION_EPS {
        return None;
    }
    Some(out)
}

fn frame(dev: &Development) -> Matrix3<f64> {
    let (p, t) = (dev.corners[0], dev.tangents[0]);
    Matrix3::from_columns(&[p, t, p.cross(&t)])
}

struct Search<'a> {
    q: &'a ConeMetricSurface,
    max_depth: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    truncated: bool,
}

/// Start of a vertex-avoiding search: first exit `(cell, side)`.
struct SmoothStart {
    cell: usize,
    side: usize,
    gluing: usize,
    frame: Matrix3<f64>,
}

/// Vertex segment under construction: the ray `cos s·v + sin s·(cos φ·t + sin φ·l)`.
struct Ray {
    v: Vec3,
    t: Vec3,
    l: Vec3,
    corner: usize,
    from: usize,
    offset: f64,
}

/// Sweep around surface vertex `vertex` by consecutive crossed sides that all
/// end there. A great circle winds once around a point off it per 2π of
/// length, so a sweep past `2πk` costs at least `2πk` of length after the run
/// started, where the length bound was `start_lb`.
#[derive(Debug, Clone, Copy)]
struct Winding {
    vertex: usize,
    sweep: f64,
    start_lb: f64,
}

impl Winding {
    fn bound(&self) -> f64 {
        let turns = ((self.sweep - ANGLE_TOL) / TAU).floor().max(0.0);
        self.start_lb + TAU * turns
    }
}

#[derive(Debug, Clone)]
struct Connection {
    from: usize,
    out_angle: f64,
    to: usize,
    in_angle: f64,
    length: f64,
    crossings: Vec<[usize; 2]>,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
        }
        self.exhausted
    }

    /// Windings after leaving `cell` through `exit`, having entered through
    /// `entered` with windings `prev`.
    fn advance_windings(&self, cell: usize, entered: Option<usize>, exit: usize, prev: &[Winding], lb_entry: f64) -> Vec<Winding> {
        let poly = self.q.cell(cell);
        let n = poly.len();
        let mut out = Vec::with_capacity(2);
        for k in [exit, (exit + 1) % n] {
            let vertex = self.q.corner_vertex(cell, k);
            let shared = entered.is_some_and(|e| k == e || k == (e + 1) % n);
            let carried = if shared {
                prev.iter()
                    .filter(|w| w.vertex == vertex)
                    .min_by(|a, b| a.bound().total_cmp(&b.bound()))
                    .map(|w| Winding { vertex, sweep: w.sweep + poly.angles()[k], start_lb: w.start_lb })
            } else {
                None
            };
            out.push(carried.unwrap_or(Winding { vertex, sweep: 0.0, start_lb: lb_entry }));
        }
        out
    }

    fn unfold(&self, cell: usize, dev: &Development, side: usize) -> (usize, Development, usize) {
        let poly = self.q.cell(cell);
        let n = poly.len();
        let (_, t_end) = walk(&dev.corners[side], &dev.tangents[side], poly.sides()[side]);
        let (_, other) = self.q.partner(cell, side);
        let next = self.q.cell(other.cell).develop(other.side, dev.corners[(side + 1) % n], -t_end);
        (other.cell, next, other.side)
    }

    fn avoiding_vertices(&mut self) -> Option<GeodesicWitness> {
        for c in 0..self.q.num_cells() {
            let poly = self.q.cell(c);
            let dev = poly.develop(0, Vec3::z(), Vec3::x());
            for i in 0..poly.len() {
                let n = poly.len();
                let Some(region) = PoleRegion::full().add(dev.corners[(i + 1) % n]).and_then(|r| r.add(-dev.corners[i]))
                else {
                    continue;
                };
                let start = SmoothStart { cell: c, side: i, gluing: self.q.partner(c, i).0, frame: frame(&dev) };
                let mut arcs = vec![Arc::of(&dev, poly, i)];
                let mut lbs = vec![0.0];
                let mut windings = vec![self.advance_windings(c, None, i, &[], 0.0)];
                let mut crossings = vec![[c, i]];
                let (nc, nd, ne) = self.unfold(c, &dev, i);
                if self.max_depth == 0 {
                    self.truncated = true;
                    continue;
                }
                if let Some(w) = self.smooth_dfs(&start, nc, &nd, ne, &region, &mut arcs, &mut lbs, &mut windings, &mut crossings, 1) {
                    return Some(w);
                }
                if self.exhausted {
                    return None;
                }
            }
        }
        None
    }

    #[allow(clippy::too_many_arguments)]
    fn smooth_dfs(
        &mut self,
        start: &SmoothStart,
        cell: usize,
        dev: &Development,
        entered: usize,
        region: &PoleRegion,
        arcs: &mut Vec<Arc>,
        lbs: &mut Vec<f64>,
        windings: &mut Vec<Vec<Winding>>,
        crossings: &mut Vec<[usize; 2]>,
        depth: usize,
    ) -> Option<GeodesicWitness> {
        if self.tick() {
            return None;
        }
        let poly = self.q.cell(cell);
        let n = poly.len();
        for s in 0..n {
            if s == entered || self.q.partner(cell, s).0 < start.gluing {
                continue;
            }
            let Some(r) = region.add(dev.corners[(s + 1) % n]).and_then(|r| r.add(-dev.corners[s])) else {
                continue;
            };
            let a = Arc::of(dev, poly, s);
            let lb = arcs.iter().zip(lbs.iter()).map(|(p, l)| l + arc_distance(p, &a)).fold(0.0, f64::max);
            let wind = self.advance_windings(cell, Some(entered), s, windings.last().map_or(&[][..], |w| w), *lbs.last().unwrap_or(&0.0));
            let lb = wind.iter().map(Winding::bound).fold(lb, f64::max);
            if lb > TAU + LENGTH_TOL {
                continue;
            }
            arcs.push(a);
            lbs.push(lb);
            windings.push(wind);
            crossings.push([cell, s]);
            if cell == start.cell && s == start.side {
                if let Some(w) = self.close_smooth(start, dev, &r, arcs, crossings) {
                    return Some(w);
                }
            }
            if depth < self.max_depth {
                let (nc, nd, ne) = self.unfold(cell, dev, s);
                if let Some(w) = self.smooth_dfs(start, nc, &nd, ne, &r, arcs, lbs, windings, crossings, depth + 1) {
                    return Some(w);
                }
            } else {
                self.truncated = true;
            }
            arcs.pop();
            lbs.pop();
            windings.pop();
            crossings.pop();
            if self.exhausted {
                return None;
            }
        }
        None
    }

    fn close_smooth(
        &self,
        start: &SmoothStart,
        dev: &Development,
        region: &PoleRegion,
        arcs: &[Arc],
        crossings: &[[usize; 2]],
    ) -> Option<GeodesicWitness> {
        let h = frame(dev) * start.frame.transpose();
        let defect = h - Matrix3::identity();
        let candidates: Vec<Vec3> = if defect.norm() < 1e-9 {
            region.representative().into_iter().collect()
        } else {
            let svd = defect.svd(false, true);
            let vt = svd.v_t?;
            let k = (0..3).min_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]))?;
            let u: Vec3 = vt.row(k).transpose().normalize();
            vec![u, -u]
        };
        for n in candidates {
            if !region.satisfied_by(&n) {
                continue;
            }
            let Some(length) = trace_closed(&n, arcs) else { continue };
            if length <= TAU + LENGTH_TOL {
                // drop the repeated closing crossing
                let crossings = crossings[..crossings.len() - 1].to_vec();
                return Some(GeodesicWitness::AvoidingVertices { crossings, pole: [n.x, n.y, n.z], length });
            }
        }
        None
    }

    fn connections(&mut self) -> Vec<Connection> {
        let mut out = Vec::new();
        for c in 0..self.q.num_cells() {
            let poly = self.q.cell(c);
            for k in 0..poly.len() {
                if self.exhausted {
                    return out;
                }
                let dev = poly.develop(k, Vec3::z(), Vec3::x());
                let ray = Ray {
                    v: Vec3::z(),
                    t: Vec3::x(),
                    l: Vec3::y(),
                    corner: k,
                    from: self.q.corner_vertex(c, k),
                    offset: self.q.corner_offset(c, k),
                };
                let mut arcs = Vec::new();
                let mut lbs = Vec::new();
                let mut windings = Vec::new();
                let mut crossings = Vec::new();
                let wedge = (0.0, poly.angles()[k]);
                self.ray_dfs(&ray, c, &dev, None, wedge, &mut arcs, &mut lbs, &mut windings, &mut crossings, 0, &mut out);
            }
        }
        dedup_connections(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn ray_dfs(
        &mut self,
        ray: &Ray,
        cell: usize,
        dev: &Development,
        entered: Option<usize>,
        wedge: (f64, f64),
        arcs: &mut Vec<Arc>,
        lbs: &mut Vec<f64>,
        windings: &mut Vec<Vec<Winding>>,
        crossings: &mut Vec<[usize; 2]>,
        depth: usize,
        out: &mut Vec<Connection>,
    ) {
        if self.tick() {
            return;
        }
        let poly = self.q.cell(cell);
        let n = poly.len();
        let at_start = depth == 0;
        let degenerate = |x: &Vec3| (x - ray.v).norm() < COINCIDENT || (x + ray.v).norm() < COINCIDENT;
        for m in 0..n {
            if at_start && m == ray.corner {
                continue;
            }
            if let Some(e) = entered {
                if m == e || m == (e + 1) % n {
                    continue;
                }
            }
            let qm = dev.corners[m];
            if (qm + ray.v).norm() < COINCIDENT || (qm - ray.v).norm() < COINCIDENT {
                let s = if (qm + ray.v).norm() < COINCIDENT { PI } else { TAU };
                for phi in degenerate_samples(ray, dev, poly, m, s, wedge) {
                    if let Some(c) = self.verify_ray(ray, phi, cell, dev, m, Some(s), arcs, crossings) {
                        out.push(c);
                    }
                }
                continue;
            }
            let phi0 = qm.dot(&ray.l).atan2(qm.dot(&ray.t));
            for phi in [phi0, phi0 + PI, phi0 - PI] {
                if phi >= wedge.0 - WEDGE_EPS && phi <= wedge.1 + WEDGE_EPS {
                    let phi = phi.clamp(wedge.0, wedge.1);
                    if let Some(c) = self.verify_ray(ray, phi, cell, dev, m, None, arcs, crossings) {
                        out.push(c);
                    }
                }
            }
        }
        for s in 0..n {
            if Some(s) == entered || (at_start && (s == ray.corner || s == (ray.corner + n - 1) % n)) {
                continue;
            }
            let (a, b) = (dev.corners[s], dev.corners[(s + 1) % n]);
            if degenerate(&a) || degenerate(&b) {
                continue;
            }
            let Some(w) = clip_wedge(ray, wedge, &b).and_then(|w| clip_wedge(ray, w, &(-a))) else {
                continue;
            };
            let arc_s = Arc::of(dev, poly, s);
            let lb = arcs
                .iter()
                .zip(lbs.iter())
                .map(|(p, l)| l + arc_distance(p, &arc_s))
                .fold(arc_s.point_distance(&ray.v), f64::max);
            let wind = self.advance_windings(cell, entered, s, windings.last().map_or(&[][..], |w| w), *lbs.last().unwrap_or(&0.0));
            let lb = wind.iter().map(Winding::bound).fold(lb, f64::max);
            if lb > TAU + LENGTH_TOL {
                continue;
            }
            if depth >= self.max_depth {
                self.truncated = true;
                continue;
            }
            let (nc, nd, ne) = self.unfold(cell, dev, s);
            arcs.push(arc_s);
            lbs.push(lb);
            windings.push(wind);
            crossings.push([cell, s]);
            self.ray_dfs(ray, nc, &nd, Some(ne), w, arcs, lbs, windings, crossings, depth + 1, out);
            arcs.pop();
            lbs.pop();
            windings.pop();
            crossings.pop();
            if self.exhausted {
                return;
            }
        }
    }

    /// Checks that the ray at angle `phi` crosses `arcs` in order and then
    /// reaches corner `m` of the current cell from inside it.
    #[allow(clippy::too_many_arguments)]
    fn verify_ray(
        &self,
        ray: &Ray,
        phi: f64,
        cell: usize,
        dev: &Development,
        m: usize,
        fixed_s: Option<f64>,
        arcs: &[Arc],
        crossings: &[[usize; 2]],
    ) -> Option<Connection> {
        let d = ray.t * phi.cos() + ray.l * phi.sin();
        let nvec = ray.v.cross(&d);
        let param = |x: &Vec3| wrap_2pi(x.dot(&d).atan2(x.dot(&ray.v)));
        let mut last = 0.0;
        for a in arcs {
            let x = a.crossing(&nvec)?;
            let s = param(&x);
            if s <= last + 1e-12 {
                return None;
            }
            last = s;
        }
        let qm = dev.corners[m];
        let s = match fixed_s {
            Some(s) => s,
            None => {
                if nvec.dot(&qm).abs() > COINCIDENT {
                    return None;
                }
                param(&qm)
            }
        };
        if s <= last + 1e-12 || s > TAU + LENGTH_TOL {
            return None;
        }
        let back = ray.v * s.sin() - d * s.cos();
        let (tm, nm) = (dev.tangents[m], dev.corners[m].cross(&dev.tangents[m]));
        let psi = back.dot(&nm).atan2(back.dot(&tm));
        let am = self.q.cell(cell).angles()[m];
        let psi = if psi < -ANGLE_TOL { psi + TAU } else { psi };
        if psi < -ANGLE_TOL || psi > am + ANGLE_TOL {
            return None;
        }
        Some(Connection {
            from: ray.from,
            out_angle: ray.offset + phi,
            to: self.q.corner_vertex(cell, m),
            in_angle: self.q.corner_offset(cell, m) + psi.clamp(0.0, am),
            length: s,
            crossings: crossings.to_vec(),
        })
    }

    fn vertex_loop(&mut self, conns: &[Connection]) -> Option<GeodesicWitness> {
        let cone = self.q.cone_angles();
        let mut by_from: Vec<Vec<usize>> = vec![Vec::new(); self.q.num_vertices()];
        for (i, c) in conns.iter().enumerate() {
            by_from[c.from].push(i);
        }
        let mut path = Vec::new();
        for i0 in 0..conns.len() {
            if conns[i0].length > TAU + LENGTH_TOL {
                continue;
            }
            path.clear();
            path.push(i0);
            if self.loop_dfs(conns, &by_from, cone, &mut path, conns[i0].length) {
                let segments = path
                    .iter()
                    .map(|&i| {
                        let c = &conns[i];
                        Segment {
                            from_vertex: c.from,
                            departure_angle: c.out_angle,
                            to_vertex: c.to,
                            arrival_angle: c.in_angle,
                            length: c.length,
                            crossings: c.crossings.clone(),
                        }
                    })
                    .collect();
                let length = path.iter().map(|&i| conns[i].length).sum();
                return Some(GeodesicWitness::ThroughVertices { segments, length });
            }
            if self.exhausted {
                return None;
            }
        }
        None
    }

    fn loop_dfs(
        &mut self,
        conns: &[Connection],
        by_from: &[Vec<usize>],
        cone: &[f64],
        path: &mut Vec<usize>,
        total: f64,
    ) -> bool {
        if self.tick() {
            return false;
        }
        let first = &conns[path[0]];
        let last = &conns[*path.last().unwrap()];
        let w = last.to;
        if w == first.from && junction_ok(last.in_angle, first.out_angle, cone[w]) {
            return true;
        }
        if path.len() >= MAX_LOOP_SEGMENTS {
            return false;
        }
        for &k in &by_from[w] {
            if k <= path[0] {
                continue;
            }
            let c = &conns[k];
            if total + c.length > TAU + LENGTH_TOL || !junction_ok(last.in_angle, c.out_angle, cone[w]) {
                continue;
            }
            path.push(k);
            if self.loop_dfs(conns, by_from, cone, path, total + c.length) {
                return true;
            }
            path.pop();
        }
        false
    }
}

/// Both angles between the arriving and departing directions are at least π.
fn junction_ok(arrive: f64, depart: f64, cone: f64) -> bool {
    let gap = (depart - arrive).rem_euclid(cone);
    gap >= PI - ANGLE_TOL && cone - gap >= PI - ANGLE_TOL
}

/// Restricts the ray wedge to angles whose great-circle pole `n(φ)` has `n·x ≥ 0`.
fn clip_wedge(ray: &Ray, wedge: (f64, f64), x: &Vec3) -> Option<(f64, f64)> {
    // n(φ) = cos φ·(v×t) + sin φ·(v×l) = cos φ·l − sin φ·t
    let (cn, sn) = (ray.l.dot(x), -ray.t.dot(x));
    if cn.hypot(sn) < 1e-14 {
        return Some(wedge);
    }
    let beta = sn.atan2(cn);
    let mut best: Option<(f64, f64)> = None;
    for j in -2..=2 {
        let c = beta + TAU * j as f64;
        let lo = wedge.0.max(c - PI / 2.0);
        let hi = wedge.1.min(c + PI / 2.0);
        if hi - lo >= WEDGE_EPS && best.is_none_or(|b| hi - lo > b.1 - b.0) {
            best = Some((lo, hi));
        }
    }
    best
}

/// Ray angles reaching a corner that coincides with `±v` in the development,
/// arriving inside its sector: a uniform sample plus the sector boundaries.
fn degenerate_samples(ray: &Ray, dev: &Development, poly: &SphericalPolygon, m: usize, s: f64, wedge: (f64, f64)) -> Vec<f64> {
    let (tm, nm) = (dev.tangents[m], dev.corners[m].cross(&dev.tangents[m]));
    let am = poly.angles()[m];
    let psi = |phi: f64| {
        let d = ray.t * phi.cos() + ray.l * phi.sin();
        let back = ray.v * s.sin() - d * s.cos();
        wrap_2pi(back.dot(&nm).atan2(back.dot(&tm)))
    };
    let mut phis: Vec<f64> = (0..DEGENERATE_SAMPLES)
        .map(|i| wedge.0 + (wedge.1 - wedge.0) * i as f64 / (DEGENERATE_SAMPLES - 1) as f64)
        .collect();
    let p0 = psi(wedge.0);
    for target in [0.0, am] {
        for sign in [1.0, -1.0] {
            for j in -1..=1 {
                let phi = wedge.0 + sign * (target - p0) + TAU * j as f64;
                if phi >= wedge.0 && phi <= wedge.1 {
                    let e = (psi(phi) - target).abs();
                    if e.min(TAU - e) < 1e-9 {
                        phis.push(phi);
                    }
                }
            }
        }
    }
    phis
}

fn dedup_connections(mut v: Vec<Connection>) -> Vec<Connection> {
    v.sort_by(|a, b| {
        (a.from, a.to)
            .cmp(&(b.from, b.to))
            .then(a.out_angle.total_cmp(&b.out_angle))
            .then(a.length.total_cmp(&b.length))
    });
    let mut out: Vec<Connection> = Vec::with_capacity(v.len());
    for c in v {
        if let Some(p) = out.last() {
            if p.from == c.from
                && p.to == c.to
                && (p.out_angle - c.out_angle).abs() < 1e-9
                && (p.in_angle - c.in_angle).abs() < 1e-9
                && (p.length - c.length).abs() < 1e-9
            {
                continue;
            }
        }
        out.push(c);
    }
    out
}

/// Length of the closed great-circle chain with pole `n` crossing `arcs`,
/// the last arc being the holonomy image of the first.
fn trace_closed(n: &Vec3, arcs: &[Arc]) -> Option<f64> {
    let pts: Vec<Vec3> = arcs.iter().map(|a| a.crossing(n)).collect::<Option<_>>()?;
    let mut total = 0.0;
    for w in pts.windows(2) {
        let step = wrap_2pi(n.dot(&w[0].cross(&w[1])).atan2(w[0].dot(&w[1])));
        if step > PI + 1e-9 {
            return None;
        }
        total += step;
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::surface::{octant_sphere, pillow, suspension};

    #[test]
    fn round_sphere_refuted_with_length_two_pi() {
        let q = octant_sphere().unwrap();
        match search_closed_geodesics(&q, 3 * q.num_cells()) {
            GeodesicCheck::Refuted { witness } => assert!((witness.length() - TAU).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn suspension_refuted_through_cone_points() {
        let q = suspension(4, 0.6 * PI).unwrap();
        match search_closed_geodesics(&q, 12) {
            GeodesicCheck::Refuted { witness } => {
                assert!((witness.length() - TAU).abs() < 1e-9);
                assert!(matches!(witness, GeodesicWitness::ThroughVertices { .. }));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pillow_has_short_geodesics() {
        let t = SphericalPolygon::new(vec![PI / 2.0; 3], vec![PI / 2.0; 3]).unwrap();
        let q = pillow(&t).unwrap();
        assert!(search_closed_geodesics(&q, 6).is_refuted());
    }

    #[test]
    fn pole_region_clipping() {
        let r = PoleRegion::full().add(Vec3::x()).unwrap().add(Vec3::y()).unwrap().add(Vec3::z()).unwrap();
        let p = r.poly.as_ref().unwrap();
        assert_eq!(p.len(), 3);
        assert!(r.add(-Vec3::new(1.0, 1.0, 1.0)).is_none());
        let r2 = r.add(Vec3::new(1.0, -0.5, 0.0)).unwrap();
        assert!(r2.satisfied_by(&r2.representative().unwrap()));
        assert!(PoleRegion::full().add(Vec3::x()).unwrap().add(-Vec3::x()).is_none());
    }
}
