//! Linear algebra in Minkowski space E³₁ with signature (−,+,+,+).
//!
//! Index 0 is timelike everywhere. The hyperboloid model of H³ is the upper
//! sheet `⟨x,x⟩ = −1, x₀ > 0`; de Sitter space is the quadric `⟨x,x⟩ = +1`
//! and parameterizes oriented hyperbolic planes.
//!
//! | constant | value | used for |
//! |---|---|---|
//! | [`EPS_QUADRIC`] | 1e−9 | invariant checks on quadric points and Lorentz matrices |
//! | [`RENORMALIZE_TOL`] | 1e−6 | constructors project onto the quadric within this residual |
//! | [`ACOSH_CLAMP`] | 1e−12 | arccosh arguments this far below 1 are clamped |

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix3, Matrix4, Rotation3, Vector3, Vector4};

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

pub const EPS_QUADRIC: f64 = 1e-9;
pub const RENORMALIZE_TOL: f64 = 1e-6;
pub const ACOSH_CLAMP: f64 = 1e-12;

/// A vector of E³₁, `(x₀, x⃗)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiVec4 {
    pub x0: f64,
    pub x: Vec3,
}

impl MinkowskiVec4 {
    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { x0, x: Vec3::new(x1, x2, x3) }
    }

    pub fn from_parts(x0: f64, x: Vec3) -> Self {
        Self { x0, x }
    }

    pub fn from_vector4(v: &Vector4<f64>) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn to_vector4(&self) -> Vector4<f64> {
        Vector4::new(self.x0, self.x[0], self.x[1], self.x[2])
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.x0, self.x[0], self.x[1], self.x[2]]
    }

    pub fn inner(&self, other: &Self) -> f64 {
        minkowski_inner(self, other)
    }

    pub fn norm_sq(&self) -> f64 {
        minkowski_inner(self, self)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { x0: self.x0 * s, x: self.x * s }
    }

    pub fn is_finite(&self) -> bool {
        self.x0.is_finite() && self.x.iter().all(|c| c.is_finite())
    }
}

impl Add for MinkowskiVec4 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { x0: self.x0 + o.x0, x: self.x + o.x }
    }
}

impl Sub for MinkowskiVec4 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { x0: self.x0 - o.x0, x: self.x - o.x }
    }
}

impl Neg for MinkowskiVec4 {
    type Output = Self;
    fn neg(self) -> Self {
        Self { x0: -self.x0, x: -self.x }
    }
}

impl Mul<f64> for MinkowskiVec4 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

/// `⟨a,b⟩ = −a₀b₀ + a⃗·b⃗`.
pub fn minkowski_inner(a: &MinkowskiVec4, b: &MinkowskiVec4) -> f64 {
    -a.x0 * b.x0 + a.x.dot(&b.x)
}

/// A point of H³ on the upper hyperboloid sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint(MinkowskiVec4);

impl HPoint {
    /// Accepts `v` within [`RENORMALIZE_TOL`] of the upper sheet and projects it exactly.
    pub fn new(v: MinkowskiVec4) -> Result<Self> {
        let r = v.norm_sq();
        if !v.is_finite() || v.x0 <= 0.0 || (r + 1.0).abs() > RENORMALIZE_TOL {
            return Err(Error::OffQuadric { residual: r + 1.0 });
        }
        Ok(Self(v.scale(1.0 / (-r).sqrt())))
    }

    /// Normalizes any future-pointing timelike vector.
    pub fn from_timelike(v: MinkowskiVec4) -> Result<Self> {
        let r = v.norm_sq();
        if !v.is_finite() || v.x0 <= 0.0 || r >= 0.0 {
            return Err(Error::InvalidInput("vector is not future timelike".into()));
        }
        Ok(Self(v.scale(1.0 / (-r).sqrt())))
    }

    /// The apex `(1,0,0,0)`.
    pub fn origin() -> Self {
        Self(MinkowskiVec4::new(1.0, 0.0, 0.0, 0.0))
    }

    pub fn v(&self) -> &MinkowskiVec4 {
        &self.0
    }

    pub fn x0(&self) -> f64 {
        self.0.x0
    }

    pub fn spatial(&self) -> Vec3 {
        self.0.x
    }

    pub fn quadric_residual(&self) -> f64 {
        (self.0.norm_sq() + 1.0).abs()
    }
}

impl TryFrom<MinkowskiVec4> for HPoint {
    type Error = Error;
    fn try_from(v: MinkowskiVec4) -> Result<Self> {
        Self::new(v)
    }
}

impl From<HPoint> for MinkowskiVec4 {
    fn from(p: HPoint) -> Self {
        p.0
    }
}

/// A point of de Sitter space, i.e. an oriented plane of H³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DSPoint(MinkowskiVec4);

impl DSPoint {
    pub fn new(v: MinkowskiVec4) -> Result<Self> {
        let r = v.norm_sq();
        if !v.is_finite() || (r - 1.0).abs() > RENORMALIZE_TOL {
            return Err(Error::OffQuadric { residual: r - 1.0 });
        }
        Ok(Self(v.scale(1.0 / r.sqrt())))
    }

    /// Normalizes any spacelike vector.
    pub fn from_spacelike(v: MinkowskiVec4) -> Result<Self> {
        let r = v.norm_sq();
        if !v.is_finite() || r <= 0.0 {
            return Err(Error::InvalidInput("vector is not spacelike".into()));
        }
        Ok(Self(v.scale(1.0 / r.sqrt())))
    }

    pub fn v(&self) -> &MinkowskiVec4 {
        &self.0
    }

    pub fn x0(&self) -> f64 {
        self.0.x0
    }

    pub fn spatial(&self) -> Vec3 {
        self.0.x
    }

    pub fn quadric_residual(&self) -> f64 {
        (self.0.norm_sq() - 1.0).abs()
    }
}

impl TryFrom<MinkowskiVec4> for DSPoint {
    type Error = Error;
    fn try_from(v: MinkowskiVec4) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DSPoint> for MinkowskiVec4 {
    fn from(p: DSPoint) -> Self {
        p.0
    }
}

/// `d(p,q) = arccosh(−⟨p,q⟩)`.
///
/// Near the diagonal the equivalent form `2·asinh(‖p−q‖/2)` is used, where
/// `‖p−q‖² = ⟨p−q,p−q⟩`, since arccosh loses half the digits close to 1.
pub fn hyperbolic_distance(p: &HPoint, q: &HPoint) -> Result<f64> {
    let c = -p.v().inner(q.v());
    let tol = ACOSH_CLAMP * p.x0().max(q.x0()).powi(2).max(1.0);
    if !(c >= 1.0 - tol) {
        return Err(Error::InvalidInput(format!(
            "-<p,q> = {c} is below 1; inputs are off the hyperboloid"
        )));
    }
    if c < 2.0 {
        let d = *p.v() - *q.v();
        let chord = d.norm_sq().max(0.0).sqrt();
        Ok(2.0 * (chord / 2.0).asinh())
    } else {
        Ok(c.acosh())
    }
}

/// `arccosh` with arguments in `[1 − ACOSH_CLAMP, 1)` clamped to 1.
pub fn clamped_acosh(c: f64) -> Result<f64> {
    if c >= 1.0 {
        Ok(c.acosh())
    } else if c >= 1.0 - ACOSH_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::InvalidInput(format!("arccosh argument {c} < 1")))
    }
}

fn eta() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(-1.0, 1.0, 1.0, 1.0))
}

/// A linear map preserving the Minkowski form and the upper hyperboloid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzTransform {
    m: Matrix4<f64>,
}

impl LorentzTransform {
    /// Checks `AᵀηA = η` entrywise to [`EPS_QUADRIC`] and `A₀₀ ≥ 1`.
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::NotLorentz("non-finite entry".into()));
        }
        let e = eta();
        let dev = (m.transpose() * e * m - e).abs().max();
        if dev > EPS_QUADRIC {
            return Err(Error::NotLorentz(format!("|AᵀηA − η| = {dev:e}")));
        }
        if m[(0, 0)] < 1.0 - EPS_QUADRIC {
            return Err(Error::NotLorentz(format!("A00 = {} < 1", m[(0, 0)])));
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self { m: Matrix4::identity() }
    }

    /// Boost of the given rapidity along a spatial direction.
    pub fn boost(direction: Vec3, rapidity: f64) -> Result<Self> {
        let n = direction.norm();
        if !(n > 0.0) || !rapidity.is_finite() {
            return Err(Error::InvalidInput("boost needs a nonzero direction".into()));
        }
        let u = direction / n;
        let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
        let mut m = Matrix4::identity();
        m[(0, 0)] = ch;
        for i in 0..3 {
            m[(0, i + 1)] = sh * u[i];
            m[(i + 1, 0)] = sh * u[i];
            for j in 0..3 {
                m[(i + 1, j + 1)] += (ch - 1.0) * u[i] * u[j];
            }
        }
        Ok(Self { m })
    }

    /// Spatial block given by an orthogonal 3×3 matrix (reflections allowed).
    pub fn spatial(r: Matrix3<f64>) -> Result<Self> {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(1, 1).copy_from(&r);
        Self::new(m)
    }

    pub fn rotation(r: Rotation3<f64>) -> Self {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(1, 1).copy_from(r.matrix());
        Self { m }
    }

    /// Reflection in the plane of H³ orthogonal to a spatial unit direction through the apex.
    pub fn reflection(direction: Vec3) -> Result<Self> {
        let n = direction.norm();
        if !(n > 0.0) {
            return Err(Error::InvalidInput("reflection needs a nonzero direction".into()));
        }
        let u = direction / n;
        Self::spatial(Matrix3::identity() - 2.0 * u * u.transpose())
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.m[(i, j)]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { m: self.m * other.m }
    }

    /// `A⁻¹ = η Aᵀ η`.
    pub fn inverse(&self) -> Self {
        let e = eta();
        Self { m: e * self.m.transpose() * e }
    }

    pub fn apply(&self, v: &MinkowskiVec4) -> MinkowskiVec4 {
        MinkowskiVec4::from_vector4(&(self.m * v.to_vector4()))
    }

    pub fn apply_h(&self, p: &HPoint) -> HPoint {
        // Exact projection keeps long chains of transforms on the quadric.
        HPoint::from_timelike(self.apply(p.v())).expect("Lorentz image of a point of H^3")
    }

    pub fn apply_ds(&self, n: &DSPoint) -> DSPoint {
        DSPoint::from_spacelike(self.apply(n.v())).expect("Lorentz image of a de Sitter point")
    }

    /// Largest entry of `AᵀηA − η`.
    pub fn form_defect(&self) -> f64 {
        let e = eta();
        (self.m.transpose() * e * self.m - e).abs().max()
    }
}

pub fn apply_lorentz(a: &LorentzTransform, p: &MinkowskiVec4) -> MinkowskiVec4 {
    a.apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn inner_product_examples() {
        let e0 = MinkowskiVec4::new(1.0, 0.0, 0.0, 0.0);
        let e1 = MinkowskiVec4::new(0.0, 1.0, 0.0, 0.0);
        assert_eq!(minkowski_inner(&e0, &e0), -1.0);
        assert_eq!(minkowski_inner(&e0, &e1), 0.0);
        let p = MinkowskiVec4::new(1f64.cosh(), 1f64.sinh(), 0.0, 0.0);
        assert!((minkowski_inner(&p, &e0) + 1.5430806348152437).abs() < 1e-15);
    }

    #[test]
    fn distance_of_unit_boost() {
        let p = HPoint::new(MinkowskiVec4::new(1f64.cosh(), 1f64.sinh(), 0.0, 0.0)).unwrap();
        let o = HPoint::origin();
        assert!((hyperbolic_distance(&p, &o).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(hyperbolic_distance(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn constructors_renormalize_or_reject() {
        let near = MinkowskiVec4::new(1.0 + 1e-8, 0.0, 0.0, 0.0);
        let p = HPoint::new(near).unwrap();
        assert!(p.quadric_residual() < 1e-15);
        assert!(HPoint::new(MinkowskiVec4::new(2.0, 0.0, 0.0, 0.0)).is_err());
        assert!(HPoint::new(MinkowskiVec4::new(-1.0, 0.0, 0.0, 0.0)).is_err());
        assert!(DSPoint::new(MinkowskiVec4::new(0.0, 1.0, 0.0, 0.0)).is_ok());
        assert!(DSPoint::new(MinkowskiVec4::new(0.0, 1.1, 0.0, 0.0)).is_err());
    }

    #[test]
    fn boost_of_apex() {
        let t = 0.7;
        let a = LorentzTransform::boost(Vec3::x(), t).unwrap();
        let img = a.apply(HPoint::origin().v());
        assert!((img.x0 - t.cosh()).abs() < 1e-15);
        assert!((img.x[0] - t.sinh()).abs() < 1e-15);
        assert!(LorentzTransform::new(*a.matrix()).is_ok());
    }

    #[test]
    fn rejects_time_reversal() {
        let m = Matrix4::from_diagonal(&Vector4::new(-1.0, 1.0, 1.0, 1.0));
        assert!(LorentzTransform::new(m).is_err());
        let m = Matrix4::from_diagonal(&Vector4::new(1.0, 2.0, 1.0, 1.0));
        assert!(LorentzTransform::new(m).is_err());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let a = LorentzTransform::boost(Vec3::new(1.0, 2.0, -1.0), 1.3)
            .unwrap()
            .compose(&LorentzTransform::rotation(Rotation3::from_scaled_axis(Vec3::new(0.3, 0.1, PI / 3.0))));
        let id = a.compose(&a.inverse());
        assert!((id.matrix() - Matrix4::identity()).abs().max() < 1e-12);
    }
}
