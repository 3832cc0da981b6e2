//! Convex polyhedra in H³ cut out by half-spaces, and their metric quantities.
//!
//! A half-space is stored by its outward unit de Sitter normal `n` and is the
//! set `{x : ⟨x,n⟩ ≤ 0}`; in Klein coordinates this is `a·n⃗ ≤ n₀`. Vertices
//! are found in the Klein chart and may lie inside the ball (finite), on the
//! sphere at infinity (ideal) or beyond it (hyperinfinite).

use std::f64::consts::PI;

use nalgebra::{Matrix3, Matrix4xX, Vector3};

use crate::combinatorics::AbstractPolyhedron;
use crate::error::{Error, Result};
use crate::minkowski::{DSPoint, HPoint, LorentzTransform, MinkowskiVec4, Vec3};
use crate::polar::SphericalPolygon;

/// Width of the band `|‖a‖ − 1| ≤ ε` classified as ideal.
pub const EPS_IDEAL: f64 = 1e-7;
/// Slack allowed in half-space inequalities at vertices (Klein chart).
pub const FEASIBILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSpace {
    pub n: DSPoint,
}

impl HalfSpace {
    pub fn new(n: DSPoint) -> Self {
        Self { n }
    }

    /// The Klein half-space `a·normal ≤ offset`. The plane must meet the ball.
    pub fn from_klein(normal: Vec3, offset: f64) -> Result<Self> {
        Ok(Self { n: DSPoint::from_spacelike(MinkowskiVec4::from_parts(offset, normal))? })
    }

    /// Unit Euclidean normal and signed offset of the bounding plane in the Klein chart.
    pub fn klein_plane(&self) -> (Vec3, f64) {
        let s = self.n.spatial();
        let r = s.norm();
        (s / r, self.n.x0() / r)
    }

    pub fn contains(&self, x: &HPoint, tol: f64) -> bool {
        x.v().inner(self.n.v()) <= tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexClass {
    Finite,
    Ideal,
    Hyperinfinite,
}

impl VertexClass {
    pub fn of_klein(a: &Vec3) -> Self {
        let r = a.norm();
        if r < 1.0 - EPS_IDEAL {
            VertexClass::Finite
        } else if r <= 1.0 + EPS_IDEAL {
            VertexClass::Ideal
        } else {
            VertexClass::Hyperinfinite
        }
    }
}

/// Length of an edge: finite, infinite (an ideal endpoint) or undefined
/// (a hyperinfinite endpoint).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeLength {
    Finite(f64),
    Infinite,
    Undefined,
}

impl EdgeLength {
    pub fn value(&self) -> Option<f64> {
        match self {
            EdgeLength::Finite(l) => Some(*l),
            EdgeLength::Infinite => Some(f64::INFINITY),
            EdgeLength::Undefined => None,
        }
    }
}

/// Total turning of a closed polygonal curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Turning {
    pub total: f64,
    /// The curve lies on a single geodesic.
    pub collinear: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolyhedronH3 {
    halfspaces: Vec<HalfSpace>,
    /// Half-space index bounding each face.
    face_halfspace: Vec<usize>,
    combinatorics: AbstractPolyhedron,
    klein: Vec<Vec3>,
    classes: Vec<VertexClass>,
}

/// Intersects half-spaces and extracts the combinatorics.
///
/// Half-spaces that do not support a face are kept but marked redundant
/// (see [`ConvexPolyhedronH3::redundant_halfspaces`]).
pub fn build_from_halfspaces(hs: &[HalfSpace]) -> Result<ConvexPolyhedronH3> {
    if hs.len() < 4 {
        return Err(Error::DegeneratePolyhedron(format!("need at least 4 half-spaces, got {}", hs.len())));
    }
    let planes: Vec<(Vec3, f64)> = hs.iter().map(HalfSpace::klein_plane).collect();
    let m = planes.len();
    if let Some(dir) = recession_direction(&planes) {
        return Err(Error::DegeneratePolyhedron(format!(
            "intersection is unbounded in the Klein chart along ({:.6}, {:.6}, {:.6})",
            dir.x, dir.y, dir.z
        )));
    }
    let feasible = |a: &Vec3| planes.iter().all(|(u, d)| a.dot(u) - d <= FEASIBILITY_TOL * (1.0 + a.norm()));
    let mut verts: Vec<Vec3> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let mat = Matrix3::from_rows(&[planes[i].0.transpose(), planes[j].0.transpose(), planes[k].0.transpose()]);
                if mat.determinant().abs() < 1e-12 {
                    continue;
                }
                let Some(inv) = mat.try_inverse() else { continue };
                let a = inv * Vector3::new(planes[i].1, planes[j].1, planes[k].1);
                if feasible(&a) && !verts.iter().any(|v| (v - a).norm() <= 1e-9 * (1.0 + a.norm())) {
                    verts.push(a);
                }
            }
        }
    }
    if verts.len() < 4 {
        return Err(Error::DegeneratePolyhedron(format!("only {} vertices found", verts.len())));
    }
    let on = |l: usize, a: &Vec3| (a.dot(&planes[l].0) - planes[l].1).abs() <= FEASIBILITY_TOL * (1.0 + a.norm());

    let mut face_halfspace = Vec::new();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut seen_sets: Vec<Vec<usize>> = Vec::new();
    for l in 0..m {
        let inc: Vec<usize> = (0..verts.len()).filter(|&v| on(l, &verts[v])).collect();
        if inc.len() < 3 || seen_sets.contains(&inc) {
            continue;
        }
        let c = inc.iter().map(|&v| verts[v]).sum::<Vec3>() / inc.len() as f64;
        let u = planes[l].0;
        let Some(e1) = inc.iter().map(|&v| verts[v] - c).find(|d| d.norm() > 1e-12).map(|d| d.normalize()) else {
            continue;
        };
        let e2 = u.cross(&e1);
        let ang = |v: usize| {
            let d = verts[v] - c;
            d.dot(&e2).atan2(d.dot(&e1))
        };
        let spread = inc.iter().map(|&v| (verts[v] - c).dot(&e2).abs()).fold(0.0, f64::max);
        if spread < 1e-12 {
            continue;
        }
        let mut ordered = inc.clone();
        ordered.sort_by(|&a, &b| ang(a).total_cmp(&ang(b)));
        seen_sets.push(inc);
        face_halfspace.push(l);
        cycles.push(ordered);
    }
    let combinatorics = AbstractPolyhedron::from_face_cycles(verts.len(), &cycles)
        .map_err(|e| Error::DegeneratePolyhedron(format!("face structure: {e}")))?;
    let report = combinatorics.validate();
    if !report.passed() {
        let failed: Vec<&str> = report.conditions.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        return Err(Error::DegeneratePolyhedron(format!("combinatorics fail {failed:?}")));
    }
    let centroid = verts.iter().sum::<Vec3>() / verts.len() as f64;
    let meets_ball = planes.iter().all(|(_, d)| *d > 0.0)
        || centroid.norm() < 1.0
        || verts.iter().any(|v| v.norm() < 1.0 - EPS_IDEAL)
        || cycles.iter().any(|f| (f.iter().map(|&v| verts[v]).sum::<Vec3>() / f.len() as f64).norm() < 1.0);
    if !meets_ball {
        return Err(Error::DegeneratePolyhedron("interior does not meet the Klein ball".into()));
    }
    let classes = verts.iter().map(VertexClass::of_klein).collect();
    Ok(ConvexPolyhedronH3 { halfspaces: hs.to_vec(), face_halfspace, combinatorics, klein: verts, classes })
}

/// A direction along which `{a : a·u ≤ d}` is unbounded, if any.
fn recession_direction(planes: &[(Vec3, f64)]) -> Option<Vec3> {
    let ok = |dir: &Vec3| planes.iter().all(|(u, _)| u.dot(dir) <= 1e-12);
    let mut cands: Vec<Vec3> = Vec::new();
    for i in 0..planes.len() {
        cands.push(-planes[i].0);
        for j in i + 1..planes.len() {
            let c = planes[i].0.cross(&planes[j].0);
            if c.norm() > 1e-12 {
                cands.push(c.normalize());
                cands.push(-c.normalize());
            }
        }
    }
    cands.into_iter().find(ok)
}

impl ConvexPolyhedronH3 {
    pub fn combinatorics(&self) -> &AbstractPolyhedron {
        &self.combinatorics
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn num_vertices(&self) -> usize {
        self.klein.len()
    }

    pub fn klein_vertices(&self) -> &[Vec3] {
        &self.klein
    }

    pub fn vertex_classes(&self) -> &[VertexClass] {
        &self.classes
    }

    pub fn vertex_class(&self, v: usize) -> VertexClass {
        self.classes[v]
    }

    pub fn is_compact(&self) -> bool {
        self.classes.iter().all(|c| *c == VertexClass::Finite)
    }

    pub fn is_ideal(&self) -> bool {
        self.classes.iter().all(|c| *c == VertexClass::Ideal)
    }

    pub fn has_hyperinfinite(&self) -> bool {
        self.classes.contains(&VertexClass::Hyperinfinite)
    }

    /// Half-spaces not supporting any face.
    pub fn redundant_halfspaces(&self) -> Vec<usize> {
        (0..self.halfspaces.len()).filter(|l| !self.face_halfspace.contains(l)).collect()
    }

    pub fn face_halfspace(&self, f: usize) -> usize {
        self.face_halfspace[f]
    }

    /// Outward unit normal of face `f`.
    pub fn face_normal(&self, f: usize) -> DSPoint {
        self.halfspaces[self.face_halfspace[f]].n
    }

    /// Hyperboloid point of a finite vertex.
    pub fn vertex_point(&self, v: usize) -> Result<HPoint> {
        let a = self.klein[v];
        if self.classes[v] != VertexClass::Finite {
            return Err(Error::NotFinitePoint(a.norm()));
        }
        HPoint::from_timelike(MinkowskiVec4::from_parts(1.0, a))
    }

    /// Interior dihedral angle `θ` at edge `e`, `cos θ = −⟨n₁,n₂⟩`.
    pub fn dihedral_angle(&self, e: usize) -> Result<f64> {
        let (l, r) = self.combinatorics.edge_faces(e);
        let c = -self.face_normal(l).v().inner(self.face_normal(r).v());
        if !(c.abs() < 1.0) {
            return Err(Error::NoDihedral(l, r));
        }
        Ok(c.acos())
    }

    pub fn exterior_dihedral_angle(&self, e: usize) -> Result<f64> {
        Ok(PI - self.dihedral_angle(e)?)
    }

    pub fn edge_length(&self, e: usize) -> EdgeLength {
        let [a, b] = self.combinatorics.edge(e);
        match (self.classes[a], self.classes[b]) {
            (VertexClass::Hyperinfinite, _) | (_, VertexClass::Hyperinfinite) => EdgeLength::Undefined,
            (VertexClass::Ideal, _) | (_, VertexClass::Ideal) => EdgeLength::Infinite,
            _ => {
                let (p, q) = (self.vertex_point(a).unwrap(), self.vertex_point(b).unwrap());
                EdgeLength::Finite(crate::minkowski::hyperbolic_distance(&p, &q).unwrap_or(f64::NAN))
            }
        }
    }

    /// Interior angle of face `f` at vertex `v`; zero at an ideal vertex.
    pub fn face_angle(&self, f: usize, v: usize) -> Result<f64> {
        let cyc = self.combinatorics.face_vertices(f);
        let n = cyc.len();
        let i = cyc
            .iter()
            .position(|&x| x == v)
            .ok_or_else(|| Error::InvalidInput(format!("vertex {v} is not on face {f}")))?;
        match self.classes[v] {
            VertexClass::Ideal => return Ok(0.0),
            VertexClass::Hyperinfinite => {
                return Err(Error::NotFinitePoint(self.klein[v].norm()));
            }
            VertexClass::Finite => {}
        }
        let p = self.vertex_point(v)?;
        let prev = self.klein[cyc[(i + n - 1) % n]];
        let next = self.klein[cyc[(i + 1) % n]];
        let t1 = klein_tangent(&p, &self.klein[v], &prev);
        let t2 = klein_tangent(&p, &self.klein[v], &next);
        Ok(tangent_angle(&t1, &t2))
    }

    /// Area by angle defect, `Σ(π − θᵢ) − 2π`. Requires a compact face.
    pub fn face_area(&self, f: usize) -> Result<f64> {
        let cyc = self.combinatorics.face_vertices(f);
        let mut s = 0.0;
        for &v in &cyc {
            if self.classes[v] != VertexClass::Finite {
                return Err(Error::Unsupported(format!("face {f} is not compact")));
            }
            s += PI - self.face_angle(f, v)?;
        }
        Ok(s - 2.0 * PI)
    }

    /// Link of a finite vertex: side `k` is the face angle of the face
    /// between edges `k` and `k+1` of the star, corner `k` carries the
    /// dihedral angle of edge `k`.
    pub fn vertex_link(&self, v: usize) -> Result<SphericalPolygon> {
        if self.classes[v] != VertexClass::Finite {
            return Err(Error::NotFinitePoint(self.klein[v].norm()));
        }
        let star = self.combinatorics.vertex_star(v);
        let d = star.len();
        let mut sides = Vec::with_capacity(d);
        let mut angles = Vec::with_capacity(d);
        for k in 0..d {
            sides.push(self.face_angle(star[(k + 1) % d].0, v)?);
            angles.push(self.dihedral_angle(star[k].1)?);
        }
        SphericalPolygon::new(sides, angles)
    }

    /// Image under a Lorentz transform, with the same combinatorics.
    pub fn apply(&self, a: &LorentzTransform) -> Result<Self> {
        let halfspaces = self.halfspaces.iter().map(|h| HalfSpace::new(a.apply_ds(&h.n))).collect();
        let mut klein = Vec::with_capacity(self.klein.len());
        for p in &self.klein {
            let w = a.apply(&MinkowskiVec4::from_parts(1.0, *p));
            if w.x0 <= 1e-12 {
                return Err(Error::ProjectiveInfinity);
            }
            klein.push(w.x / w.x0);
        }
        let classes = klein.iter().map(VertexClass::of_klein).collect();
        Ok(Self {
            halfspaces,
            face_halfspace: self.face_halfspace.clone(),
            combinatorics: self.combinatorics.clone(),
            klein,
            classes,
        })
    }

    /// Finite edge lengths in edge order; `None` if any edge is not finite.
    pub fn edge_lengths(&self) -> Option<Vec<f64>> {
        (0..self.combinatorics.num_edges())
            .map(|e| match self.edge_length(e) {
                EdgeLength::Finite(l) => Some(l),
                _ => None,
            })
            .collect()
    }

    pub fn dihedral_angles(&self) -> Result<Vec<f64>> {
        (0..self.combinatorics.num_edges()).map(|e| self.dihedral_angle(e)).collect()
    }
}

/// Unit tangent at `p` (Klein coordinates `a`) toward the point with Klein coordinates `b`.
fn klein_tangent(p: &HPoint, a: &Vec3, b: &Vec3) -> MinkowskiVec4 {
    let w = MinkowskiVec4::from_parts(0.0, b - a);
    let t = w + *p.v() * w.inner(p.v());
    t.scale(1.0 / t.norm_sq().max(0.0).sqrt())
}

/// Angle between two unit spacelike tangents at the same point.
fn tangent_angle(t1: &MinkowskiVec4, t2: &MinkowskiVec4) -> f64 {
    t1.inner(t2).clamp(-1.0, 1.0).acos()
}

/// Unit tangent at `p` toward `q`.
fn tangent_to(p: &HPoint, q: &HPoint) -> Option<MinkowskiVec4> {
    let t = *q.v() + *p.v() * q.v().inner(p.v());
    let n = t.norm_sq();
    (n > 1e-24).then(|| t.scale(1.0 / n.sqrt()))
}

/// Sum of exterior angles `π − θᵢ` over the vertices of a closed polygon.
pub fn total_turning(curve: &[HPoint]) -> Result<Turning> {
    let n = curve.len();
    if n < 3 {
        return Err(Error::DegenerateCurve(format!("need at least 3 points, got {n}")));
    }
    let mut total = 0.0;
    for i in 0..n {
        let p = &curve[i];
        let (a, b) = (&curve[(i + n - 1) % n], &curve[(i + 1) % n]);
        let (Some(t1), Some(t2)) = (tangent_to(p, a), tangent_to(p, b)) else {
            return Err(Error::DegenerateCurve(format!("repeated point at index {i}")));
        };
        total += PI - tangent_angle(&t1, &t2);
    }
    let mut m = Matrix4xX::zeros(n);
    for (j, p) in curve.iter().enumerate() {
        m.set_column(j, &p.v().to_vector4());
    }
    let sv = m.singular_values();
    let collinear = sv.len() < 3 || sv[2] <= 1e-9 * sv[0];
    Ok(Turning { total, collinear })
}

/// Klein half-spaces `±xᵢ ≤ r` cut out a cube centred at the origin.
/// Compact for `r < 1/√3`, ideal at `r = 1/√3`, hyperinfinite above.
pub fn cube_halfspaces(r: f64) -> Result<Vec<HalfSpace>> {
    let mut hs = Vec::new();
    for i in 0..3 {
        for s in [1.0, -1.0] {
            let mut u = Vec3::zeros();
            u[i] = s;
            hs.push(HalfSpace::from_klein(u, r)?);
        }
    }
    Ok(hs)
}

/// Klein half-spaces `u·a ≤ r` for the four directions `u` of a regular tetrahedron's face normals.
pub fn tetrahedron_halfspaces(r: f64) -> Result<Vec<HalfSpace>> {
    let s = 1.0 / 3f64.sqrt();
    [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]
        .iter()
        .map(|d| HalfSpace::from_klein(-Vec3::new(d[0], d[1], d[2]) * s, r))
        .collect()
}

/// Klein half-spaces `u·a ≤ r` with `u = (±1,±1,±1)/√3`: an octahedron with
/// vertices `(±ρ,0,0), …`, `ρ = r√3`; ideal at `r = 1/√3`.
pub fn octahedron_halfspaces(r: f64) -> Result<Vec<HalfSpace>> {
    let s = 1.0 / 3f64.sqrt();
    let mut hs = Vec::new();
    for x in [1.0, -1.0] {
        for y in [1.0, -1.0] {
            for z in [1.0, -1.0] {
                hs.push(HalfSpace::from_klein(Vec3::new(x, y, z) * s, r)?);
            }
        }
    }
    Ok(hs)
}
