//! Standard convex solids, built from coordinates by a brute-force hull.

use std::collections::BTreeSet;

use nalgebra::Vector3;

use super::AbstractPolyhedron;

/// Faces of the convex hull of `points` as vertex cycles, counter-clockwise
/// seen from outside. Cubic in the number of points; for small inputs only.
/// Points must be in convex position with a 3-dimensional hull.
pub fn convex_hull_faces(points: &[Vector3<f64>]) -> Vec<Vec<usize>> {
    let n = points.len();
    let scale = points.iter().map(|p| p.norm()).fold(1.0, f64::max);
    let tol = 1e-9 * scale;
    let mut seen = BTreeSet::new();
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let normal = (points[j] - points[i]).cross(&(points[k] - points[i]));
                if normal.norm() < tol {
                    continue;
                }
                let normal = normal.normalize();
                let side: Vec<f64> = points.iter().map(|p| (p - points[i]).dot(&normal)).collect();
                let outward = if side.iter().all(|&s| s <= tol) {
                    normal
                } else if side.iter().all(|&s| s >= -tol) {
                    -normal
                } else {
                    continue;
                };
                let on: Vec<usize> = (0..n).filter(|&m| side[m].abs() <= tol).collect();
                if !seen.insert(on.clone()) {
                    continue;
                }
                let c = on.iter().map(|&m| points[m]).sum::<Vector3<f64>>() / on.len() as f64;
                let u = (points[on[0]] - c).normalize();
                let w = outward.cross(&u);
                let mut ordered = on.clone();
                ordered.sort_by(|&a, &b| {
                    let ang = |m: usize| {
                        let d = points[m] - c;
                        d.dot(&w).atan2(d.dot(&u))
                    };
                    ang(a).total_cmp(&ang(b))
                });
                faces.push(ordered);
            }
        }
    }
    faces
}

/// Combinatorics of the convex hull of `points`.
pub fn from_convex_points(points: &[Vector3<f64>]) -> AbstractPolyhedron {
    AbstractPolyhedron::from_face_cycles(points.len(), &convex_hull_faces(points))
        .expect("hull faces reference existing vertices")
}

pub fn tetrahedron_points() -> Vec<Vector3<f64>> {
    vec![
        Vector3::new(1.0, 1.0, 1.0),
        Vector3::new(1.0, -1.0, -1.0),
        Vector3::new(-1.0, 1.0, -1.0),
        Vector3::new(-1.0, -1.0, 1.0),
    ]
}

pub fn cube_points() -> Vec<Vector3<f64>> {
    let mut v = Vec::new();
    for &x in &[-1.0, 1.0] {
        for &y in &[-1.0, 1.0] {
            for &z in &[-1.0, 1.0] {
                v.push(Vector3::new(x, y, z));
            }
        }
    }
    v
}

pub fn octahedron_points() -> Vec<Vector3<f64>> {
    let mut v = Vec::new();
    for i in 0..3 {
        for &s in &[1.0, -1.0] {
            let mut p = Vector3::zeros();
            p[i] = s;
            v.push(p);
        }
    }
    v
}

pub fn triangular_prism_points() -> Vec<Vector3<f64>> {
    let mut v = Vec::new();
    for &z in &[-1.0, 1.0] {
        for k in 0..3 {
            let t = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            v.push(Vector3::new(t.cos(), t.sin(), z));
        }
    }
    v
}

pub fn dodecahedron_points() -> Vec<Vector3<f64>> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v = cube_points();
    for &a in &[-1.0, 1.0] {
        for &b in &[-1.0, 1.0] {
            v.push(Vector3::new(0.0, a / phi, b * phi));
            v.push(Vector3::new(a / phi, b * phi, 0.0));
            v.push(Vector3::new(a * phi, 0.0, b / phi));
        }
    }
    v
}

pub fn icosahedron_points() -> Vec<Vector3<f64>> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v = Vec::new();
    for &a in &[-1.0, 1.0] {
        for &b in &[-1.0, 1.0] {
            v.push(Vector3::new(0.0, a, b * phi));
            v.push(Vector3::new(a, b * phi, 0.0));
            v.push(Vector3::new(a * phi, 0.0, b));
        }
    }
    v
}

pub fn square_pyramid_points() -> Vec<Vector3<f64>> {
    vec![
        Vector3::new(1.0, 0.0, 0.0),
        Vector3::new(0.0, 1.0, 0.0),
        Vector3::new(-1.0, 0.0, 0.0),
        Vector3::new(0.0, -1.0, 0.0),
        Vector3::new(0.0, 0.0, 1.0),
    ]
}

pub fn tetrahedron() -> AbstractPolyhedron {
    from_convex_points(&tetrahedron_points())
}

pub fn cube() -> AbstractPolyhedron {
    from_convex_points(&cube_points())
}

pub fn octahedron() -> AbstractPolyhedron {
    from_convex_points(&octahedron_points())
}

pub fn triangular_prism() -> AbstractPolyhedron {
    from_convex_points(&triangular_prism_points())
}

pub fn dodecahedron() -> AbstractPolyhedron {
    from_convex_points(&dodecahedron_points())
}

pub fn icosahedron() -> AbstractPolyhedron {
    from_convex_points(&icosahedron_points())
}

pub fn square_pyramid() -> AbstractPolyhedron {
    from_convex_points(&square_pyramid_points())
}
