//! Gauss images as spherical cone metrics, and the admissibility tests on them.
//!
//! A [`ConeMetricSurface`] is a set of intrinsic spherical polygons glued
//! along equal-length sides. The Gauss image of a compact polyhedron is such
//! a surface; [`check_admissible`] tests the four conditions that
//! characterize those images, and [`check_ideally_admissible`] the hemisphere
//! variant for ideal polyhedra.

mod gauss;
pub mod geodesic;
mod ideal;
mod polygon;
mod surface;

use std::f64::consts::PI;

use serde::Serialize;
use serde_json::json;

use crate::report::{Condition, Report, Verdict};

pub use gauss::{gauss_image, GaussImage};
pub use geodesic::{search_closed_geodesics, GeodesicCheck, GeodesicWitness, Segment};
pub use ideal::{check_ideally_admissible, t_expansion, t_expansion_centres};
pub use polygon::{spherical_polar_polygon, Development, SphericalPolygon, SPHERICAL_TOL};
pub use surface::{octant_sphere, pillow, surface_from_complex, suspension, ConeMetricSurface, SideRef, GLUING_TOL};

/// Result of [`check_admissible`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub sphere_check: Condition,
    pub curvature_check: Condition,
    pub cone_angle_check: Condition,
    pub geodesic_check: GeodesicCheck,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.sphere_check.pass && self.curvature_check.pass && self.cone_angle_check.pass && self.geodesic_check.is_certified()
    }

    /// Flattens into the common report shape. The verdict is inconclusive
    /// when only the geodesic search failed to finish.
    pub fn to_report(&self) -> Report {
        let geo = match &self.geodesic_check {
            GeodesicCheck::Certified { .. } => Condition::with("closed-geodesics", true, Some(json!(self.geodesic_check))),
            _ => Condition::with("closed-geodesics", false, Some(json!(self.geodesic_check))),
        };
        let first_three = self.sphere_check.pass && self.curvature_check.pass && self.cone_angle_check.pass;
        let verdict = match (&self.geodesic_check, first_three) {
            (GeodesicCheck::Certified { .. }, true) => Verdict::Pass,
            (GeodesicCheck::InconclusiveAtDepth { .. }, true) => Verdict::Inconclusive,
            _ => Verdict::Fail,
        };
        Report {
            verdict,
            conditions: vec![self.sphere_check.clone(), self.curvature_check.clone(), self.cone_angle_check.clone(), geo],
            metrics: None,
        }
    }
}

/// Default search depth: three times the number of cells.
pub fn default_depth(q: &ConeMetricSurface) -> usize {
    3 * q.num_cells()
}

/// Tests sphere topology, that every cell is a genuine spherical polygon,
/// that every cone angle exceeds 2π, and searches for closed geodesics of
/// length at most 2π crossing up to `max_depth` cells.
///
/// The search only runs when the surface is a sphere with realizable cells;
/// otherwise the geodesic check is reported inconclusive at depth 0.
pub fn check_admissible(q: &ConeMetricSurface, max_depth: usize) -> AdmissibilityReport {
    let sphere_check = Condition::with(
        "sphere",
        q.is_sphere(),
        (!q.is_sphere()).then(|| json!({"euler_characteristic": q.euler_characteristic(), "connected": q.is_connected()})),
    );
    let bad_cells: Vec<_> = (0..q.num_cells())
        .filter_map(|c| {
            let d = q.cell(c).realization_defect();
            (d > SPHERICAL_TOL).then(|| json!({"cell": c, "defect": d}))
        })
        .collect();
    let curvature_check = Condition::with("piecewise-spherical", bad_cells.is_empty(), (!bad_cells.is_empty()).then(|| json!(bad_cells)));
    let small: Vec<_> = q
        .cone_angles()
        .iter()
        .enumerate()
        .filter(|(_, &a)| a < 2.0 * PI - SPHERICAL_TOL)
        .map(|(v, &a)| json!({"vertex": v, "angle": a}))
        .collect();
    let cone_angle_check = Condition::with("cone-angles", small.is_empty(), (!small.is_empty()).then(|| json!(small)));
    let geodesic_check = if sphere_check.pass && curvature_check.pass {
        search_closed_geodesics(q, max_depth)
    } else {
        GeodesicCheck::InconclusiveAtDepth { depth: 0, nodes: 0 }
    };
    AdmissibilityReport { sphere_check, curvature_check, cone_angle_check, geodesic_check }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpolyhedron::{build_from_halfspaces, cube_halfspaces, octahedron_halfspaces, tetrahedron_halfspaces};

    #[test]
    fn tetrahedron_gauss_image_identities() {
        let p = build_from_halfspaces(&tetrahedron_halfspaces(0.2).unwrap()).unwrap();
        assert!(p.is_compact());
        let g = gauss_image(&p).unwrap();
        let q = &g.surface;
        assert_eq!((q.num_cells(), q.num_vertices()), (4, 4));
        for f in 0..4 {
            let cone = q.cone_angles()[g.face_vertex[f]];
            assert!((cone - 2.0 * PI - p.face_area(f).unwrap()).abs() < 1e-9);
        }
        let r = check_admissible(q, default_depth(q));
        assert!(r.is_admissible(), "{r:?}");
    }

    #[test]
    fn cube_gauss_image_certified() {
        let p = build_from_halfspaces(&cube_halfspaces(0.4).unwrap()).unwrap();
        let q = gauss_image(&p).unwrap().surface;
        let r = check_admissible(&q, default_depth(&q));
        assert!(r.is_admissible(), "{r:?}");
    }

    #[test]
    fn ideal_octahedron_pipeline() {
        let p = build_from_halfspaces(&octahedron_halfspaces(1.0 / 3f64.sqrt()).unwrap()).unwrap();
        let q = gauss_image(&p).unwrap().surface;
        for c in q.cells() {
            assert!((c.perimeter() - 2.0 * PI).abs() < 1e-9);
        }
        assert!(check_ideally_admissible(&q).passed());
        let qt = t_expansion(&q, 0.1).unwrap();
        for v in t_expansion_centres(&q, &qt) {
            assert!((qt.cone_angles()[v] - 2.2 * PI).abs() < 1e-12);
        }
        let r = check_admissible(&qt, default_depth(&qt));
        assert!(r.is_admissible(), "{r:?}");
        let bound = PI / q.longest_edge() - 1.0;
        assert!(t_expansion(&q, bound).is_err());
    }

    #[test]
    fn pillow_fails_cone_angles() {
        let t = SphericalPolygon::new(vec![PI / 2.0; 3], vec![PI / 2.0; 3]).unwrap();
        let r = check_admissible(&pillow(&t).unwrap(), 6);
        assert!(!r.cone_angle_check.pass);
    }
}
