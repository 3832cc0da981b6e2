//! Spherical trigonometry on the unit sphere S².

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::minkowski::Vec3;

/// Angle opposite side `a` in a spherical triangle with sides `a, b, c`.
///
/// Solves `cos a = cos b cos c + sin b sin c cos α` for `α`.
pub fn spherical_angle_from_sides(a: f64, b: f64, c: f64) -> Result<f64> {
    let in_range = |s: f64| s > 0.0 && s < PI;
    if !(in_range(a) && in_range(b) && in_range(c))
        || a >= b + c
        || b >= a + c
        || c >= a + b
        || a + b + c >= 2.0 * PI
    {
        return Err(Error::InvalidTriangle(a, b, c));
    }
    let cos_alpha = (a.cos() - b.cos() * c.cos()) / (b.sin() * c.sin());
    Ok(cos_alpha.clamp(-1.0, 1.0).acos())
}

/// Side opposite `alpha` from the two adjacent sides (forward law of cosines).
pub fn spherical_side_from_angle(alpha: f64, b: f64, c: f64) -> f64 {
    (b.cos() * c.cos() + b.sin() * c.sin() * alpha.cos()).clamp(-1.0, 1.0).acos()
}

/// Turning `τ = π − ℓ` of a geodesic crossing a lune of interior angle `π − α`
/// at angle `β` to one of its boundary circles, where
/// `cos ℓ = −cos²β + sin²β·cos(π−α)`.
pub fn spherical_turning_in_lune(alpha: f64, beta: f64) -> f64 {
    let cos_l = -beta.cos().powi(2) + beta.sin().powi(2) * (PI - alpha).cos();
    PI - cos_l.clamp(-1.0, 1.0).acos()
}

/// Great-circle distance between unit vectors.
pub fn arc_angle(a: &Vec3, b: &Vec3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Point at distance `s` from `p` along unit tangent `t`, and the transported tangent.
pub fn walk(p: &Vec3, t: &Vec3, s: f64) -> (Vec3, Vec3) {
    let (sn, cs) = s.sin_cos();
    (p * cs + t * sn, -p * sn + t * cs)
}

/// Rotates tangent `t` at `p` to the left (counter-clockwise seen from outside) by `angle`.
pub fn turn_left(p: &Vec3, t: &Vec3, angle: f64) -> Vec3 {
    let (sn, cs) = angle.sin_cos();
    t * cs + p.cross(t) * sn
}

/// Unit tangent at `p` pointing toward `q`, or `None` when `q = ±p`.
pub fn tangent_toward(p: &Vec3, q: &Vec3) -> Option<Vec3> {
    let t = q - p * p.dot(q);
    let n = t.norm();
    (n > 1e-14).then(|| t / n)
}

/// Reduces an angle to `[0, 2π)`.
pub fn wrap_2pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0 * PI);
    if r >= 2.0 * PI {
        0.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octant() {
        let a = spherical_angle_from_sides(PI / 2.0, PI / 2.0, PI / 2.0).unwrap();
        assert!((a - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn infeasible_triangles_rejected() {
        assert!(spherical_angle_from_sides(2.0, 0.5, 0.5).is_err());
        assert!(spherical_angle_from_sides(3.0, 3.0, 3.0).is_err());
        assert!(spherical_angle_from_sides(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn lune_turning_limits() {
        for &alpha in &[0.1, 1.0, 2.5] {
            assert!((spherical_turning_in_lune(alpha, PI / 2.0) - alpha).abs() < 1e-12);
        }
        for &beta in &[0.2, 1.4, 3.0] {
            assert!(spherical_turning_in_lune(0.0, beta).abs() < 1e-7);
        }
    }

    #[test]
    fn walking_a_quarter_circle() {
        let (p, t) = walk(&Vec3::x(), &Vec3::y(), PI / 2.0);
        assert!((p - Vec3::y()).norm() < 1e-15);
        assert!((t + Vec3::x()).norm() < 1e-15);
        let l = turn_left(&Vec3::z(), &Vec3::x(), PI / 2.0);
        assert!((l - Vec3::y()).norm() < 1e-15);
    }
}
