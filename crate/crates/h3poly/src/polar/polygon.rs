use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::minkowski::Vec3;
use crate::spherical::{turn_left, walk};

/// Tolerance used when comparing spherical lengths and angles to π, 2π.
pub const SPHERICAL_TOL: f64 = 1e-9;

/// A spherical polygon stored intrinsically.
///
/// Side `i` runs from corner `i` to corner `i+1`; `angles[i]` is the interior
/// angle at corner `i`. Corners are listed counter-clockwise, so the interior
/// lies to the left of each side.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalPolygon {
    sides: Vec<f64>,
    angles: Vec<f64>,
}

/// A placement of a polygon on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct Development {
    /// Corner positions.
    pub corners: Vec<Vec3>,
    /// Unit tangent at corner `i` along side `i`.
    pub tangents: Vec<Vec3>,
}

impl Development {
    /// Pole of the great circle carrying side `i`; the polygon lies on its positive side.
    pub fn side_pole(&self, i: usize) -> Vec3 {
        self.corners[i].cross(&self.tangents[i])
    }
}

impl SphericalPolygon {
    /// Requires matching lengths (at least 2), sides in `(0, π]` and angles in `(0, 2π)`.
    pub fn new(sides: Vec<f64>, angles: Vec<f64>) -> Result<Self> {
        if sides.len() != angles.len() || sides.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "polygon needs equally many sides and angles (at least 2), got {} and {}",
                sides.len(),
                angles.len()
            )));
        }
        if let Some(s) = sides.iter().find(|&&s| !(s > 0.0 && s <= PI + SPHERICAL_TOL)) {
            return Err(Error::InvalidInput(format!("side length {s} outside (0, π]")));
        }
        if let Some(a) = angles.iter().find(|&&a| !(a > 0.0 && a < 2.0 * PI)) {
            return Err(Error::InvalidInput(format!("angle {a} outside (0, 2π)")));
        }
        Ok(Self { sides, angles })
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn sides(&self) -> &[f64] {
        &self.sides
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn perimeter(&self) -> f64 {
        self.sides.iter().sum()
    }

    /// Area from the angle excess, `Σ angles − (n − 2)π`.
    pub fn area(&self) -> f64 {
        self.angles.iter().sum::<f64>() - (self.len() as f64 - 2.0) * PI
    }

    pub fn is_convex(&self) -> bool {
        self.angles.iter().all(|&a| a <= PI + SPHERICAL_TOL) && self.sides.iter().all(|&s| s <= PI + SPHERICAL_TOL)
    }

    /// All angles π and perimeter 2π, within `tol`.
    pub fn is_hemisphere(&self, tol: f64) -> bool {
        self.angles.iter().all(|&a| (a - PI).abs() <= tol) && (self.perimeter() - 2.0 * PI).abs() <= tol
    }

    /// Places corner `start` at `p` with side `start` leaving along `heading`.
    pub fn develop(&self, start: usize, p: Vec3, heading: Vec3) -> Development {
        let n = self.len();
        let mut corners = vec![Vec3::zeros(); n];
        let mut tangents = vec![Vec3::zeros(); n];
        let (mut cp, mut ct) = (p, heading);
        for m in 0..n {
            let i = (start + m) % n;
            corners[i] = cp;
            tangents[i] = ct;
            let (np, nt) = walk(&cp, &ct, self.sides[i]);
            let j = (i + 1) % n;
            cp = np;
            ct = turn_left(&np, &nt, PI - self.angles[j]);
        }
        Development { corners, tangents }
    }

    /// How far the development fails to close up, plus any negative area.
    ///
    /// Zero (to rounding) exactly when the sides and angles describe a convex
    /// spherical polygon.
    pub fn realization_defect(&self) -> f64 {
        let (p, t) = (Vec3::z(), Vec3::x());
        let n = self.len();
        let d = self.develop(0, p, t);
        let (ep, et) = walk(&d.corners[n - 1], &d.tangents[n - 1], self.sides[n - 1]);
        let et = turn_left(&ep, &et, PI - self.angles[0]);
        let area = self.area();
        let area_defect = if area > 0.0 && area <= 2.0 * PI + SPHERICAL_TOL { 0.0 } else { area.abs() + 1.0 };
        (ep - p).norm() + (et - t).norm() + area_defect
    }
}

/// The polar polygon: corner `i` of the result is the pole of side `−i` of `p`.
///
/// With this indexing `polar(polar(p)) = p` exactly: sides become
/// `π − angles[−i]` and angles become `π − sides[−i]`.
pub fn spherical_polar_polygon(p: &SphericalPolygon) -> Result<SphericalPolygon> {
    if !p.is_convex() || p.angles.iter().any(|&a| a >= PI) || p.sides.iter().any(|&s| s >= PI) {
        return Err(Error::InvalidInput("polar needs a strictly convex polygon".into()));
    }
    let n = p.len();
    let sides = (0..n).map(|i| PI - p.angles[(n - i) % n]).collect();
    let angles = (0..n).map(|i| PI - p.sides[(n - i) % n]).collect();
    SphericalPolygon::new(sides, angles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spherical::spherical_angle_from_sides;

    fn triangle(a: f64, b: f64, c: f64) -> SphericalPolygon {
        // side i runs corner i → i+1; angle at corner i is opposite side i+1
        let s = [a, b, c];
        let angles = (0..3).map(|i| spherical_angle_from_sides(s[(i + 1) % 3], s[i], s[(i + 2) % 3]).unwrap()).collect();
        SphericalPolygon::new(s.to_vec(), angles).unwrap()
    }

    #[test]
    fn octant_is_self_polar_and_closes() {
        let o = triangle(PI / 2.0, PI / 2.0, PI / 2.0);
        assert!(o.realization_defect() < 1e-14);
        let p = spherical_polar_polygon(&o).unwrap();
        for (x, y) in p.sides().iter().zip(o.sides()) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn equilateral_polar_angle() {
        let l = 1.1;
        let t = triangle(l, l, l);
        let p = spherical_polar_polygon(&t).unwrap();
        for &a in p.angles() {
            assert!((a - (PI - l)).abs() < 1e-15);
        }
        // the polar's angles also follow from its sides by the law of cosines
        let s = p.sides()[0];
        let a = spherical_angle_from_sides(s, s, s).unwrap();
        assert!((a - (PI - l)).abs() < 1e-12);
    }

    #[test]
    fn scalene_triangle_closes_and_perturbed_does_not() {
        let t = triangle(0.9, 1.3, 1.7);
        assert!(t.realization_defect() < 1e-13);
        let mut angles = t.angles().to_vec();
        angles[1] += 0.01;
        let bad = SphericalPolygon::new(t.sides().to_vec(), angles).unwrap();
        assert!(bad.realization_defect() > 1e-4);
    }

    #[test]
    fn hemisphere_and_lune() {
        let h = SphericalPolygon::new(vec![PI / 2.0; 4], vec![PI; 4]).unwrap();
        assert!(h.is_hemisphere(1e-12));
        assert!(h.realization_defect() < 1e-14);
        let lune = SphericalPolygon::new(vec![PI, PI], vec![0.6 * PI, 0.6 * PI]).unwrap();
        assert!(lune.realization_defect() < 1e-14);
        assert!((lune.area() - 1.2 * PI).abs() < 1e-14);
    }
}
