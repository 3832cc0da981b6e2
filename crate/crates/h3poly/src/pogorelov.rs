//! The map `Φ: H³ × H³ → R³ × R³`, `Φ(x, y) = (2x⃗/(x₀+y₀), 2y⃗/(x₀+y₀))`,
//! and the pairs of hyperbolic prisms it produces with equal edge lengths
//! but different dihedral angles.
//!
//! `Φ` is injective with image `{‖a‖ + ‖b‖ < 2}`. Every Lorentz transform
//! `A` induces a Euclidean isometry `B` with `Φ(x, Ax) = (y, By)`.
//! So two Euclidean polyhedra with the same labels and equal edge lengths
//! pull back to two hyperbolic ones with equal edge lengths.

use nalgebra::{Matrix3, Matrix4, Vector4};
use serde::Serialize;

use crate::combinatorics::{corpus, isomorphisms, AbstractPolyhedron};
use crate::error::{Error, Result};
use crate::hpolyhedron::{build_from_halfspaces, ConvexPolyhedronH3, HalfSpace};
use crate::minkowski::{DSPoint, HPoint, LorentzTransform, MinkowskiVec4, Vec3};

/// Largest residual `|⟨x, n⟩|` accepted when fitting a plane through the
/// preimages of a face.
pub const PLANE_FIT_TOL: f64 = 1e-8;

pub fn phi(x: &HPoint, y: &HPoint) -> (Vec3, Vec3) {
    let s = x.x0() + y.x0();
    (2.0 * x.spatial() / s, 2.0 * y.spatial() / s)
}

/// `(s² − 4)(d² − 4)` in terms of `‖a‖, ‖b‖`; positive on the image of `Φ`.
fn domain_f(a: &Vec3, b: &Vec3) -> f64 {
    let (a2, b2) = (a.norm_squared(), b.norm_squared());
    (a2 - b2).powi(2) - 8.0 * (a2 + b2 - 2.0)
}

/// Inverse of [`phi`]: `x = (4 + a² − b², 4a⃗)/√f`, `y = (4 + b² − a², 4b⃗)/√f`.
pub fn phi_inverse(a: &Vec3, b: &Vec3) -> Result<(HPoint, HPoint)> {
    let f = domain_f(a, b);
    let (a2, b2) = (a.norm_squared(), b.norm_squared());
    if !(f > 0.0) || 4.0 + a2 - b2 <= 0.0 || 4.0 + b2 - a2 <= 0.0 {
        return Err(Error::OutsideDomain(f));
    }
    let r = f.sqrt();
    let x = MinkowskiVec4::from_parts((4.0 + a2 - b2) / r, 4.0 * a / r);
    let y = MinkowskiVec4::from_parts((4.0 + b2 - a2) / r, 4.0 * b / r);
    Ok((HPoint::from_timelike(x)?, HPoint::from_timelike(y)?))
}

/// `p ↦ d + r·p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclideanIsometry {
    pub d: Vec3,
    pub r: Matrix3<f64>,
}

impl EuclideanIsometry {
    pub fn apply(&self, p: &Vec3) -> Vec3 {
        self.d + self.r * p
    }

    /// `‖RᵀR − I‖` (max entry).
    pub fn orthogonality_defect(&self) -> f64 {
        (self.r.transpose() * self.r - Matrix3::identity()).abs().max()
    }
}

/// The isometry `B` with `Φ(x, Ax) = (y, By)` for all `x`:
/// `D_i = 2A_{i0}/(1+A₀₀)`, `R_ij = A_ij − A_{i0}A_{0j}/(1+A₀₀)`.
/// `R` has the determinant sign of the spatial part of `A`.
pub fn induced_isometry(a: &LorentzTransform) -> EuclideanIsometry {
    let m = a.matrix();
    let k = 1.0 + m[(0, 0)];
    let d = Vec3::new(m[(1, 0)], m[(2, 0)], m[(3, 0)]) * (2.0 / k);
    let r = Matrix3::from_fn(|i, j| m[(i + 1, j + 1)] - m[(i + 1, 0)] * m[(0, j + 1)] / k);
    EuclideanIsometry { d, r }
}

/// A sheared triangular prism with three vertical edges of length `a`, four
/// edges of length `b` from the z-axis edge, and two of length `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrismParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub u: f64,
}

impl PrismParams {
    pub fn new(a: f64, b: f64, c: f64, u: f64) -> Result<Self> {
        let p = Self { a, b, c, u };
        if !(a > 0.0 && b > 0.0 && c > 0.0 && u.is_finite()) {
            return Err(Error::Precondition("a, b, c must be positive and u finite".into()));
        }
        if !(p.depth_sq() > 0.0) {
            return Err(Error::Precondition(format!("u² = {} must be below b² − c²/4 = {}", u * u, b * b - c * c / 4.0)));
        }
        if let Some((i, v)) = p.vertices().iter().enumerate().find(|(_, v)| v.norm() >= 1.0) {
            return Err(Error::Precondition(format!("vertex {i} at distance {} leaves the unit ball", v.norm())));
        }
        Ok(p)
    }

    fn depth_sq(&self) -> f64 {
        self.b * self.b - self.c * self.c / 4.0 - self.u * self.u
    }

    /// `(0,0,0), (0,0,a), (h, ±c/2, u), (h, ±c/2, u + a)` with
    /// `h = √(b² − c²/4 − u²)`, in that order.
    pub fn vertices(&self) -> [Vec3; 6] {
        let h = self.depth_sq().max(0.0).sqrt();
        let (a, c, u) = (self.a, self.c, self.u);
        [
            Vec3::zeros(),
            Vec3::new(0.0, 0.0, a),
            Vec3::new(h, c / 2.0, u),
            Vec3::new(h, -c / 2.0, u),
            Vec3::new(h, c / 2.0, u + a),
            Vec3::new(h, -c / 2.0, u + a),
        ]
    }
}

/// Labelled Euclidean polyhedron.
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanPolyhedron {
    pub vertices: Vec<Vec3>,
    pub combinatorics: AbstractPolyhedron,
}

impl EuclideanPolyhedron {
    pub fn edge_lengths(&self) -> Vec<f64> {
        self.combinatorics.edges().iter().map(|&[s, t]| (self.vertices[s] - self.vertices[t]).norm()).collect()
    }
}

pub fn prism_euclidean(p: &PrismParams) -> Result<EuclideanPolyhedron> {
    let p = PrismParams::new(p.a, p.b, p.c, p.u)?;
    let vertices = p.vertices().to_vec();
    let combinatorics = corpus::from_convex_points(&vertices);
    if combinatorics.num_faces() != 5 || combinatorics.num_edges() != 9 {
        return Err(Error::Internal("prism hull is not a triangular prism".into()));
    }
    Ok(EuclideanPolyhedron { vertices, combinatorics })
}

/// Two hyperbolic prisms with equal edge lengths.
#[derive(Debug, Clone)]
pub struct PogorelovPair {
    pub first: ConvexPolyhedronH3,
    pub second: ConvexPolyhedronH3,
    /// Preimages of the six prism vertices, in prism order.
    pub first_points: Vec<HPoint>,
    pub second_points: Vec<HPoint>,
    /// Prism label of each vertex of `first` and `second`.
    pub first_labels: Vec<usize>,
    pub second_labels: Vec<usize>,
}

impl PogorelovPair {
    /// Edge index pairs `(e in first, e′ in second)` joining the same labels.
    pub fn matched_edges(&self) -> Vec<(usize, usize)> {
        let key = |p: &ConvexPolyhedronH3, labels: &[usize], e: usize| {
            let [s, t] = p.combinatorics().edge(e);
            (labels[s].min(labels[t]), labels[s].max(labels[t]))
        };
        let c2 = self.second.combinatorics();
        (0..self.first.combinatorics().num_edges())
            .filter_map(|e| {
                let k = key(&self.first, &self.first_labels, e);
                (0..c2.num_edges()).find(|&g| key(&self.second, &self.second_labels, g) == k).map(|g| (e, g))
            })
            .collect()
    }
}

/// Pulls the prisms with shear `u` and `v` back through `Φ⁻¹` vertex by vertex
/// and builds both hyperbolic polyhedra from planes fitted through the faces.
///
/// Both outputs share one vertex, edge and face numbering. Fails if a face
/// does not pull back to a plane, or either result is not convex.
pub fn counterexample_pair(a: f64, b: f64, c: f64, u: f64, v: f64) -> Result<PogorelovPair> {
    let pu = prism_euclidean(&PrismParams::new(a, b, c, u)?)?;
    let pv = prism_euclidean(&PrismParams::new(a, b, c, v)?)?;
    let mut xs = Vec::with_capacity(6);
    let mut ys = Vec::with_capacity(6);
    for (p, q) in pu.vertices.iter().zip(&pv.vertices) {
        let (x, y) = phi_inverse(p, q)?;
        xs.push(x);
        ys.push(y);
    }
    let combo = &pu.combinatorics;
    let first = polyhedron_through(combo, &xs)?;
    let second = polyhedron_through(combo, &ys)?;
    let first_labels = labels(&first, &xs)?;
    let second_labels = labels(&second, &ys)?;
    if u != v && are_congruent(&first, &second, 1e-9) {
        return Err(Error::Internal("preimages of non-congruent prisms are congruent".into()));
    }
    Ok(PogorelovPair { first, second, first_points: xs, second_points: ys, first_labels, second_labels })
}

/// For each vertex of `p`, the index of the point it coincides with.
fn labels(p: &ConvexPolyhedronH3, pts: &[HPoint]) -> Result<Vec<usize>> {
    p.klein_vertices()
        .iter()
        .map(|k| {
            pts.iter()
                .position(|x| (x.spatial() / x.x0() - k).norm() < 1e-9)
                .ok_or_else(|| Error::Internal("rebuilt vertex matches no prism vertex".into()))
        })
        .collect()
}

/// Builds the polyhedron with the faces of `combo` through the given points,
/// fitting one hyperbolic plane per face.
fn polyhedron_through(combo: &AbstractPolyhedron, pts: &[HPoint]) -> Result<ConvexPolyhedronH3> {
    let mut hs = Vec::with_capacity(combo.num_faces());
    for f in 0..combo.num_faces() {
        let on = combo.face_vertices(f);
        // rows η·x so that row·n = ⟨x, n⟩
        let eta_x = |i: usize| {
            let x = pts[i].v();
            Vector4::new(-x.x0, x.x.x, x.x.y, x.x.z)
        };
        let rows: Vec<Vector4<f64>> = on.iter().map(|&i| eta_x(i)).collect();
        let mut m = Matrix4::zeros();
        for r in &rows {
            m += r * r.transpose();
        }
        let eig = m.symmetric_eigen();
        let k = (0..4).min_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j])).expect("four eigenvalues");
        let mut n: Vector4<f64> = eig.eigenvectors.column(k).into_owned();
        let residual = rows.iter().map(|r| r.dot(&n).abs()).fold(0.0, f64::max);
        if residual > PLANE_FIT_TOL {
            return Err(Error::ConvexityFailure { vertex: on[0], detail: format!("face {f} is not planar (residual {residual:e})") });
        }
        let off: Vec<usize> = (0..pts.len()).filter(|i| !on.contains(i)).collect();
        // outward: the other vertices satisfy ⟨x, n⟩ < 0
        if off.iter().map(|&i| eta_x(i).dot(&n)).sum::<f64>() > 0.0 {
            n = -n;
        }
        for &i in &off {
            let val = eta_x(i).dot(&n);
            if val > -PLANE_FIT_TOL {
                return Err(Error::ConvexityFailure { vertex: i, detail: format!("vertex on the wrong side of face {f} ({val:e})") });
            }
        }
        let ds = DSPoint::from_spacelike(MinkowskiVec4::new(n[0], n[1], n[2], n[3]))?;
        hs.push(HalfSpace::new(ds));
    }
    let poly = build_from_halfspaces(&hs)?;
    if poly.num_vertices() != pts.len() || !poly.is_compact() {
        return Err(Error::Internal("rebuilt polyhedron has the wrong vertices".into()));
    }
    Ok(poly)
}

/// True iff some combinatorial isomorphism, orientation-reversing ones
/// included, is realized by a Lorentz transform moving every vertex within
/// `tol` of its image. Only compact polyhedra are compared; anything else
/// returns false.
pub fn are_congruent(p1: &ConvexPolyhedronH3, p2: &ConvexPolyhedronH3, tol: f64) -> bool {
    if !p1.is_compact() || !p2.is_compact() {
        return false;
    }
    let col = |p: &ConvexPolyhedronH3, v: usize| p.vertex_point(v).map(|h| h.v().to_vector4());
    let Ok(x1) = (0..p1.num_vertices()).map(|v| col(p1, v)).collect::<Result<Vec<_>>>() else { return false };
    let Ok(x2) = (0..p2.num_vertices()).map(|v| col(p2, v)).collect::<Result<Vec<_>>>() else { return false };
    let Some(frame) = spanning_frame(&x1) else { return false };
    let src = Matrix4::from_columns(&frame.map(|i| x1[i]));
    let Some(src_inv) = src.try_inverse() else { return false };
    for iso in isomorphisms(p1.combinatorics(), p2.combinatorics(), true) {
        let dst = Matrix4::from_columns(&frame.map(|i| x2[iso.vertex_map[i]]));
        let Ok(a) = LorentzTransform::new(dst * src_inv) else { continue };
        if x1.iter().enumerate().all(|(i, x)| (a.matrix() * x - x2[iso.vertex_map[i]]).norm() <= tol) {
            return true;
        }
    }
    false
}

/// Four vertex indices whose vectors are as independent as greedy choice
/// allows.
fn spanning_frame(xs: &[Vector4<f64>]) -> Option<[usize; 4]> {
    let mut chosen: Vec<usize> = Vec::with_capacity(4);
    let mut basis: Vec<Vector4<f64>> = Vec::with_capacity(4);
    for _ in 0..4 {
        let (best, resid) = xs
            .iter()
            .enumerate()
            .filter(|(i, _)| !chosen.contains(i))
            .map(|(i, x)| {
                let mut r = *x;
                for b in &basis {
                    r -= b * b.dot(&r);
                }
                (i, r)
            })
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))?;
        if resid.norm() < 1e-12 {
            return None;
        }
        chosen.push(best);
        basis.push(resid.normalize());
    }
    Some([chosen[0], chosen[1], chosen[2], chosen[3]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpolyhedron::cube_halfspaces;
    use crate::minkowski::hyperbolic_distance;

    #[test]
    fn apex_pair() {
        let (a, b) = phi(&HPoint::origin(), &HPoint::origin());
        assert_eq!((a, b), (Vec3::zeros(), Vec3::zeros()));
        assert_eq!(domain_f(&Vec3::zeros(), &Vec3::zeros()), 16.0);
        let (x, y) = phi_inverse(&Vec3::zeros(), &Vec3::zeros()).unwrap();
        assert_eq!((x, y), (HPoint::origin(), HPoint::origin()));
    }

    #[test]
    fn diagonal_is_klein_projection() {
        let x = HPoint::from_timelike(MinkowskiVec4::new(2.0, 0.3, -1.0, 0.7)).unwrap();
        let (a, b) = phi(&x, &x);
        let k = x.spatial() / x.x0();
        assert!((a - k).norm() < 1e-15 && (b - k).norm() < 1e-15);
    }

    #[test]
    fn outside_domain_rejected() {
        assert!(matches!(phi_inverse(&Vec3::new(1.5, 0.0, 0.0), &Vec3::new(0.0, 0.6, 0.0)), Err(Error::OutsideDomain(_))));
        assert!(phi_inverse(&Vec3::new(3.0, 0.0, 0.0), &Vec3::new(0.0, 3.0, 0.0)).is_err());
    }

    #[test]
    fn boost_isometry_is_translation() {
        let t: f64 = 0.8;
        let iso = induced_isometry(&LorentzTransform::boost(Vec3::x(), t).unwrap());
        assert!((iso.d - Vec3::new(2.0 * (t / 2.0).tanh(), 0.0, 0.0)).norm() < 1e-14);
        assert!((iso.r - Matrix3::identity()).abs().max() < 1e-14);
    }

    #[test]
    fn canonical_prism_edges() {
        let e = prism_euclidean(&PrismParams::new(0.1, 0.1, 0.1, 0.05).unwrap()).unwrap();
        for l in e.edge_lengths() {
            assert!((l - 0.1).abs() < 1e-15);
        }
        assert!(PrismParams::new(0.1, 0.1, 0.1, 0.1).is_err());
    }

    #[test]
    fn canonical_pair() {
        let pair = counterexample_pair(0.1, 0.1, 0.1, 0.0, 0.05).unwrap();
        let matched = pair.matched_edges();
        assert_eq!(matched.len(), 9);
        let (l1, l2) = (pair.first.edge_lengths().unwrap(), pair.second.edge_lengths().unwrap());
        for &(e, g) in &matched {
            assert!((l1[e] - l2[g]).abs() < 1e-10, "{} vs {}", l1[e], l2[g]);
        }
        let (d1, d2) = (pair.first.dihedral_angles().unwrap(), pair.second.dihedral_angles().unwrap());
        let gap = matched.iter().map(|&(e, g)| (d1[e] - d2[g]).abs()).fold(0.0, f64::max);
        assert!(gap > 1e-3, "{gap}");
        assert!(!are_congruent(&pair.first, &pair.second, 1e-9));
    }

    #[test]
    fn equal_shear_gives_congruent_pair() {
        let pair = counterexample_pair(0.1, 0.1, 0.1, 0.02, 0.02).unwrap();
        assert!(are_congruent(&pair.first, &pair.second, 1e-9));
        for (x, y) in pair.first_points.iter().zip(&pair.second_points) {
            assert!(hyperbolic_distance(x, y).unwrap() < 1e-9);
        }
    }

    #[test]
    fn congruence_under_motion_and_mirror() {
        let p = build_from_halfspaces(&cube_halfspaces(0.4).unwrap()).unwrap();
        let a = LorentzTransform::boost(Vec3::new(1.0, 2.0, -0.5), 0.7).unwrap();
        assert!(are_congruent(&p, &p.apply(&a).unwrap(), 1e-9));
        let m = LorentzTransform::reflection(Vec3::new(0.3, 1.0, 0.2)).unwrap();
        assert!(are_congruent(&p, &p.apply(&m).unwrap(), 1e-9));
        let q = build_from_halfspaces(&cube_halfspaces(0.45).unwrap()).unwrap();
        assert!(!are_congruent(&p, &q, 1e-9));
    }
}
