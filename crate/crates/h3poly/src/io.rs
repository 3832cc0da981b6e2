//! JSON file formats.
//!
//! * polyhedron: `{"vertices": [id], "edges": [{"id", "tail", "head"}], "faces": [{"id", "boundary": [±edge-id]}]}`
//! * half-spaces: `[{"n0", "n1", "n2", "n3"}]`, de Sitter normals in ambient coordinates
//! * angle assignment: `{"edge-id": radians}`
//! * cone metric: `{"cells": [{"sides", "angles"}], "gluings": [[cell, side, cell, side]]}`
//!
//! Parse errors carry the line and column reported by `serde_json`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::andreev::AngleAssignment;
use crate::combinatorics::{AbstractPolyhedron, EdgeRecord, FaceRecord};
use crate::error::{Error, Result};
use crate::hpolyhedron::HalfSpace;
use crate::minkowski::{DSPoint, MinkowskiVec4};
use crate::polar::{ConeMetricSurface, SideRef, SphericalPolygon};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub id: u64,
    pub tail: u64,
    pub head: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceJson {
    pub id: u64,
    pub boundary: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyhedronJson {
    pub vertices: Vec<u64>,
    pub edges: Vec<EdgeJson>,
    pub faces: Vec<FaceJson>,
}

impl PolyhedronJson {
    pub fn to_polyhedron(&self) -> Result<AbstractPolyhedron> {
        let edges: Vec<EdgeRecord> = self.edges.iter().map(|e| EdgeRecord { id: e.id, tail: e.tail, head: e.head }).collect();
        let faces: Vec<FaceRecord> = self.faces.iter().map(|f| FaceRecord { id: f.id, boundary: f.boundary.clone() }).collect();
        AbstractPolyhedron::from_records(&self.vertices, &edges, &faces)
    }
}

impl From<&AbstractPolyhedron> for PolyhedronJson {
    fn from(p: &AbstractPolyhedron) -> Self {
        let edges = (0..p.num_edges())
            .map(|e| {
                let [t, h] = p.edge(e);
                EdgeJson { id: p.edge_id(e), tail: p.vertex_id(t), head: p.vertex_id(h) }
            })
            .collect();
        let faces = (0..p.num_faces())
            .map(|f| FaceJson {
                id: p.face_id(f),
                boundary: p
                    .face(f)
                    .iter()
                    .map(|s| {
                        let id = p.edge_id(s.edge) as i64;
                        if s.forward {
                            id
                        } else {
                            -id
                        }
                    })
                    .collect(),
            })
            .collect();
        Self { vertices: p.vertex_ids().to_vec(), edges, faces }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfSpaceJson {
    pub n0: f64,
    pub n1: f64,
    pub n2: f64,
    pub n3: f64,
}

impl HalfSpaceJson {
    pub fn to_halfspace(&self) -> Result<HalfSpace> {
        Ok(HalfSpace::new(DSPoint::from_spacelike(MinkowskiVec4::new(self.n0, self.n1, self.n2, self.n3))?))
    }
}

impl From<&HalfSpace> for HalfSpaceJson {
    fn from(h: &HalfSpace) -> Self {
        let [n0, n1, n2, n3] = h.n.v().to_array();
        Self { n0, n1, n2, n3 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellJson {
    pub sides: Vec<f64>,
    pub angles: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeMetricJson {
    pub cells: Vec<CellJson>,
    pub gluings: Vec<[usize; 4]>,
}

impl ConeMetricJson {
    pub fn to_surface(&self) -> Result<ConeMetricSurface> {
        let cells = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                SphericalPolygon::new(c.sides.clone(), c.angles.clone()).map_err(|e| Error::InvalidInput(format!("cell {i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let gluings = self.gluings.iter().map(|&[a, s, b, t]| [SideRef::new(a, s), SideRef::new(b, t)]).collect();
        ConeMetricSurface::new(cells, gluings)
    }
}

impl From<&ConeMetricSurface> for ConeMetricJson {
    fn from(q: &ConeMetricSurface) -> Self {
        Self {
            cells: q.cells().iter().map(|c| CellJson { sides: c.sides().to_vec(), angles: c.angles().to_vec() }).collect(),
            gluings: q.gluings().iter().map(|[a, b]| [a.cell, a.side, b.cell, b.side]).collect(),
        }
    }
}

fn parse<T: DeserializeOwned>(what: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("{what}: {e}")))
}

pub fn parse_polyhedron(text: &str) -> Result<AbstractPolyhedron> {
    parse::<PolyhedronJson>("polyhedron", text)?.to_polyhedron()
}

pub fn parse_halfspaces(text: &str) -> Result<Vec<HalfSpace>> {
    parse::<Vec<HalfSpaceJson>>("half-spaces", text)?
        .iter()
        .enumerate()
        .map(|(i, h)| h.to_halfspace().map_err(|e| Error::InvalidInput(format!("half-space {i}: {e}"))))
        .collect()
}

pub fn parse_angles(text: &str) -> Result<AngleAssignment> {
    parse("angle assignment", text)
}

pub fn parse_cone_metric(text: &str) -> Result<ConeMetricSurface> {
    parse::<ConeMetricJson>("cone metric", text)?.to_surface()
}
