use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::hpolyhedron::ConvexPolyhedronH3;

use super::polygon::SphericalPolygon;
use super::surface::{ConeMetricSurface, SideRef};

/// The Gauss image of a polyhedron with its correspondence maps.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussImage {
    pub surface: ConeMetricSurface,
    /// Surface vertex dual to each face of the polyhedron.
    pub face_vertex: Vec<usize>,
    /// Gluing dual to each edge of the polyhedron (same index).
    pub edge_gluing: Vec<usize>,
}

/// Glues the polars of the vertex links.
///
/// The cell for vertex `v` has corner `k` dual to face `f_k` of the star of
/// `v` and side `k` dual to edge `e_k`; side lengths are exterior dihedral
/// angles and corner angles are `π` minus face angles. Ideal vertices give
/// hemispheres.
pub fn gauss_image(p: &ConvexPolyhedronH3) -> Result<GaussImage> {
    if p.has_hyperinfinite() {
        return Err(Error::Unsupported("Gauss image of a polyhedron with hyperinfinite vertices".into()));
    }
    let combo = p.combinatorics();
    let stars = combo.vertex_stars();
    let mut cells = Vec::with_capacity(stars.len());
    let mut occ: Vec<Vec<SideRef>> = vec![Vec::new(); combo.num_edges()];
    for (v, star) in stars.iter().enumerate() {
        let mut sides = Vec::with_capacity(star.len());
        let mut angles = Vec::with_capacity(star.len());
        for (k, &(f, e)) in star.iter().enumerate() {
            sides.push(p.exterior_dihedral_angle(e)?);
            angles.push(PI - p.face_angle(f, v)?);
            occ[e].push(SideRef::new(v, k));
        }
        cells.push(SphericalPolygon::new(sides, angles)?);
    }
    let gluings: Vec<[SideRef; 2]> = occ
        .into_iter()
        .map(|o| <[SideRef; 2]>::try_from(o).map_err(|_| Error::Internal("edge not in two vertex stars".into())))
        .collect::<Result<_>>()?;
    let surface = ConeMetricSurface::new(cells, gluings)?;
    let mut face_vertex = vec![usize::MAX; combo.num_faces()];
    for (v, star) in stars.iter().enumerate() {
        for (k, &(f, _)) in star.iter().enumerate() {
            face_vertex[f] = surface.corner_vertex(v, k);
        }
    }
    Ok(GaussImage { surface, face_vertex, edge_gluing: (0..combo.num_edges()).collect() })
}
