//! Conversions among the hyperboloid, Klein, Poincaré and upper half-space
//! models of H³, and the projective (exterior) model of de Sitter space.
//!
//! The upper half-space model is normalized so that the Poincaré origin maps
//! to `(0,0,1)` and the Poincaré north pole `(0,0,1)` goes to infinity.

use crate::error::{Error, Result};
use crate::minkowski::{DSPoint, HPoint, MinkowskiVec4, Vec3};

/// Tolerance on `|n₀|` below which a de Sitter point has no exterior image.
pub const PROJECTIVE_INFINITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KleinPoint(pub Vec3);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExteriorPoint(pub Vec3);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincarePoint(pub Vec3);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperHalfPoint(pub Vec3);

impl KleinPoint {
    pub fn new(a: Vec3) -> Result<Self> {
        let r = a.norm();
        if !(r < 1.0) {
            return Err(Error::NotFinitePoint(r));
        }
        Ok(Self(a))
    }
}

impl PoincarePoint {
    pub fn new(p: Vec3) -> Result<Self> {
        let r = p.norm();
        if !(r < 1.0) {
            return Err(Error::NotFinitePoint(r));
        }
        Ok(Self(p))
    }
}

impl UpperHalfPoint {
    pub fn new(h: Vec3) -> Result<Self> {
        if !(h[2] > 0.0) || !h.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidInput(format!("height {} is not positive", h[2])));
        }
        Ok(Self(h))
    }
}

/// `ρ(x) = x⃗ / x₀`.
pub fn to_klein(p: &HPoint) -> KleinPoint {
    KleinPoint(p.spatial() / p.x0())
}

/// `(1, a) / √(1 − ‖a‖²)`.
pub fn from_klein(a: &KleinPoint) -> Result<HPoint> {
    let r2 = a.0.norm_squared();
    if !(r2 < 1.0) {
        return Err(Error::NotFinitePoint(r2.sqrt()));
    }
    let s = 1.0 / (1.0 - r2).sqrt();
    HPoint::new(MinkowskiVec4::from_parts(s, a.0 * s))
}

pub fn klein_to_poincare(a: &KleinPoint) -> PoincarePoint {
    PoincarePoint(a.0 / (1.0 + (1.0 - a.0.norm_squared()).max(0.0).sqrt()))
}

pub fn poincare_to_klein(p: &PoincarePoint) -> KleinPoint {
    KleinPoint(p.0 * (2.0 / (1.0 + p.0.norm_squared())))
}

pub fn poincare_to_upper_half(p: &PoincarePoint) -> Result<UpperHalfPoint> {
    let x = p.0;
    let d = x[0] * x[0] + x[1] * x[1] + (1.0 - x[2]) * (1.0 - x[2]);
    let h = Vec3::new(2.0 * x[0], 2.0 * x[1], 1.0 - x.norm_squared()) / d;
    UpperHalfPoint::new(h)
}

pub fn upper_half_to_poincare(h: &UpperHalfPoint) -> PoincarePoint {
    let y = h.0;
    let e = y[0] * y[0] + y[1] * y[1] + (1.0 + y[2]) * (1.0 + y[2]);
    PoincarePoint(Vec3::new(2.0 * y[0], 2.0 * y[1], y.norm_squared() - 1.0) / e)
}

pub fn hyperboloid_to_poincare(p: &HPoint) -> PoincarePoint {
    PoincarePoint(p.spatial() / (1.0 + p.x0()))
}

pub fn poincare_to_hyperboloid(p: &PoincarePoint) -> Result<HPoint> {
    let r2 = p.0.norm_squared();
    if !(r2 < 1.0) {
        return Err(Error::NotFinitePoint(r2.sqrt()));
    }
    let d = 1.0 - r2;
    HPoint::new(MinkowskiVec4::from_parts((1.0 + r2) / d, p.0 * (2.0 / d)))
}

/// Distance in the Klein model.
pub fn klein_distance(a: &KleinPoint, b: &KleinPoint) -> f64 {
    let c = (1.0 - a.0.dot(&b.0)) / ((1.0 - a.0.norm_squared()) * (1.0 - b.0.norm_squared())).sqrt();
    c.max(1.0).acosh()
}

/// Distance in the Poincaré model.
pub fn poincare_distance(p: &PoincarePoint, q: &PoincarePoint) -> f64 {
    let num = 2.0 * (p.0 - q.0).norm_squared();
    let den = (1.0 - p.0.norm_squared()) * (1.0 - q.0.norm_squared());
    let x = num / den;
    // acosh(1 + x) = 2 asinh(sqrt(x/2))
    2.0 * (x / 2.0).sqrt().asinh()
}

/// Distance in the upper half-space model.
pub fn upper_half_distance(h: &UpperHalfPoint, k: &UpperHalfPoint) -> f64 {
    let x = (h.0 - k.0).norm_squared() / (2.0 * h.0[2] * k.0[2]);
    2.0 * (x / 2.0).sqrt().asinh()
}

/// Projective image `n⃗ / n₀` of a de Sitter point in the exterior of the ball.
pub fn desitter_to_exterior(n: &DSPoint) -> Result<ExteriorPoint> {
    if n.x0().abs() <= PROJECTIVE_INFINITY_TOL {
        return Err(Error::ProjectiveInfinity);
    }
    Ok(ExteriorPoint(n.spatial() / n.x0()))
}

/// Inverse of [`desitter_to_exterior`], choosing the representative with `n₀ > 0`.
pub fn exterior_to_desitter(e: &ExteriorPoint) -> Result<DSPoint> {
    let r2 = e.0.norm_squared();
    if !(r2 > 1.0) {
        return Err(Error::InvalidInput(format!("exterior point has norm {} ≤ 1", r2.sqrt())));
    }
    DSPoint::from_spacelike(MinkowskiVec4::from_parts(1.0, e.0))
}

/// The plane `{x ∈ H³ : ⟨x,n⟩ = 0}` dual to a de Sitter point, with its Klein realization
/// `{a : a·n⃗ = n₀}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualPlane {
    pub normal: DSPoint,
}

impl DualPlane {
    pub fn klein_normal(&self) -> Vec3 {
        self.normal.spatial()
    }

    pub fn klein_offset(&self) -> f64 {
        self.normal.x0()
    }

    /// Membership residual `⟨x,n⟩` in the hyperboloid model.
    pub fn residual(&self, x: &HPoint) -> f64 {
        x.v().inner(self.normal.v())
    }

    pub fn contains(&self, x: &HPoint, tol: f64) -> bool {
        self.residual(x).abs() <= tol
    }

    /// Residual of the Klein-model equation `a·n⃗ − n₀`.
    pub fn klein_residual(&self, a: &Vec3) -> f64 {
        a.dot(&self.klein_normal()) - self.klein_offset()
    }
}

pub fn dual_plane(n: &DSPoint) -> DualPlane {
    DualPlane { normal: *n }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apex_and_boosts() {
        assert_eq!(to_klein(&HPoint::origin()).0, Vec3::zeros());
        let t: f64 = 0.8;
        let p = HPoint::new(MinkowskiVec4::new(t.cosh(), t.sinh(), 0.0, 0.0)).unwrap();
        assert!((to_klein(&p).0 - Vec3::new(t.tanh(), 0.0, 0.0)).norm() < 1e-15);
        let q = from_klein(&KleinPoint(Vec3::new(1f64.tanh(), 0.0, 0.0))).unwrap();
        assert!((q.x0() - 1f64.cosh()).abs() < 1e-14);
        assert!((q.spatial()[0] - 1f64.sinh()).abs() < 1e-14);
    }

    #[test]
    fn klein_rejects_boundary() {
        assert!(from_klein(&KleinPoint(Vec3::new(1.0, 0.0, 0.0))).is_err());
        assert!(KleinPoint::new(Vec3::new(0.0, 1.2, 0.0)).is_err());
    }

    #[test]
    fn half_space_normalization() {
        let h = poincare_to_upper_half(&PoincarePoint(Vec3::zeros())).unwrap();
        assert_eq!(h.0, Vec3::new(0.0, 0.0, 1.0));
        let back = upper_half_to_poincare(&h);
        assert!(back.0.norm() < 1e-16);
    }

    #[test]
    fn exterior_point_of_scaled_normal() {
        let n = DSPoint::from_spacelike(MinkowskiVec4::new(1.0, 2.0, 0.0, 0.0)).unwrap();
        let e = desitter_to_exterior(&n).unwrap();
        assert!((e.0 - Vec3::new(2.0, 0.0, 0.0)).norm() < 1e-15);
        let n0 = DSPoint::new(MinkowskiVec4::new(0.0, 1.0, 0.0, 0.0)).unwrap();
        assert_eq!(desitter_to_exterior(&n0), Err(Error::ProjectiveInfinity));
    }

    #[test]
    fn coordinate_plane_through_origin() {
        let p = dual_plane(&DSPoint::new(MinkowskiVec4::new(0.0, 1.0, 0.0, 0.0)).unwrap());
        assert_eq!(p.klein_offset(), 0.0);
        assert_eq!(p.klein_normal(), Vec3::x());
    }
}
