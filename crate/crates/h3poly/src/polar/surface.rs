use std::f64::consts::PI;

use crate::combinatorics::{AbstractPolyhedron, SignedEdge};
use crate::error::{Error, Result};

use super::polygon::{SphericalPolygon, SPHERICAL_TOL};

/// Tolerance on the length mismatch of glued sides.
pub const GLUING_TOL: f64 = 1e-9;

/// Side `side` of cell `cell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SideRef {
    pub cell: usize,
    pub side: usize,
}

impl SideRef {
    pub fn new(cell: usize, side: usize) -> Self {
        Self { cell, side }
    }
}

/// Spherical polygons glued isometrically along their sides.
///
/// Gluing `(A,i) ↔ (B,j)` reverses direction: corner `i` of `A` meets corner
/// `j+1` of `B`. Vertices of the glued complex are numbered in order of first
/// appearance when scanning cells and corners in index order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeMetricSurface {
    cells: Vec<SphericalPolygon>,
    gluings: Vec<[SideRef; 2]>,
    partner: Vec<Vec<(usize, SideRef)>>,
    corner_vertex: Vec<Vec<usize>>,
    rotation: Vec<Vec<(usize, usize)>>,
    corner_offset: Vec<Vec<f64>>,
    cone_angle: Vec<f64>,
}

impl ConeMetricSurface {
    pub fn new(cells: Vec<SphericalPolygon>, gluings: Vec<[SideRef; 2]>) -> Result<Self> {
        let mut partner: Vec<Vec<Option<(usize, SideRef)>>> = cells.iter().map(|c| vec![None; c.len()]).collect();
        for (g, pair) in gluings.iter().enumerate() {
            for s in pair {
                if s.cell >= cells.len() || s.side >= cells[s.cell].len() {
                    return Err(Error::InvalidSurface(format!("gluing {g} references missing side {}:{}", s.cell, s.side)));
                }
            }
            let [a, b] = *pair;
            if a == b {
                return Err(Error::InvalidSurface(format!("gluing {g} glues side {}:{} to itself", a.cell, a.side)));
            }
            let (la, lb) = (cells[a.cell].sides()[a.side], cells[b.cell].sides()[b.side]);
            if (la - lb).abs() > GLUING_TOL {
                return Err(Error::InvalidSurface(format!(
                    "gluing {g} joins sides of lengths {la} and {lb}"
                )));
            }
            for (s, t) in [(a, b), (b, a)] {
                if partner[s.cell][s.side].replace((g, t)).is_some() {
                    return Err(Error::InvalidSurface(format!("side {}:{} is glued twice", s.cell, s.side)));
                }
            }
        }
        let partner: Vec<Vec<(usize, SideRef)>> = partner
            .into_iter()
            .enumerate()
            .map(|(c, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(i, p)| p.ok_or_else(|| Error::InvalidSurface(format!("side {c}:{i} is not glued"))))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;

        let mut corner_vertex: Vec<Vec<usize>> = cells.iter().map(|c| vec![usize::MAX; c.len()]).collect();
        let mut corner_offset: Vec<Vec<f64>> = cells.iter().map(|c| vec![0.0; c.len()]).collect();
        let mut rotation = Vec::new();
        let mut cone_angle = Vec::new();
        for c in 0..cells.len() {
            for i in 0..cells[c].len() {
                if corner_vertex[c][i] != usize::MAX {
                    continue;
                }
                let v = rotation.len();
                let mut cyc = Vec::new();
                let mut total = 0.0;
                let (mut d, mut j) = (c, i);
                while corner_vertex[d][j] == usize::MAX {
                    corner_vertex[d][j] = v;
                    corner_offset[d][j] = total;
                    total += cells[d].angles()[j];
                    cyc.push((d, j));
                    let n = cells[d].len();
                    let next = partner[d][(j + n - 1) % n].1;
                    (d, j) = (next.cell, next.side);
                }
                rotation.push(cyc);
                cone_angle.push(total);
            }
        }
        Ok(Self { cells, gluings, partner, corner_vertex, rotation, corner_offset, cone_angle })
    }

    pub fn cells(&self) -> &[SphericalPolygon] {
        &self.cells
    }

    pub fn cell(&self, c: usize) -> &SphericalPolygon {
        &self.cells[c]
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn gluings(&self) -> &[[SideRef; 2]] {
        &self.gluings
    }

    pub fn num_gluings(&self) -> usize {
        self.gluings.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.rotation.len()
    }

    /// Gluing index and opposite side for side `s` of cell `c`.
    pub fn partner(&self, c: usize, s: usize) -> (usize, SideRef) {
        self.partner[c][s]
    }

    pub fn corner_vertex(&self, c: usize, k: usize) -> usize {
        self.corner_vertex[c][k]
    }

    /// Corners at vertex `v` in counter-clockwise order.
    pub fn rotation(&self, v: usize) -> &[(usize, usize)] {
        &self.rotation[v]
    }

    /// Angle from the start of the rotation at the corner's vertex to the
    /// first side (side `k`) of corner `k` of cell `c`.
    pub fn corner_offset(&self, c: usize, k: usize) -> f64 {
        self.corner_offset[c][k]
    }

    /// Total angle at each vertex.
    pub fn cone_angles(&self) -> &[f64] {
        &self.cone_angle
    }

    /// Vertices whose angle differs from 2π, with their angles.
    pub fn cone_points(&self) -> Vec<(usize, f64)> {
        self.cone_angle
            .iter()
            .enumerate()
            .filter(|(_, a)| (*a - 2.0 * PI).abs() > SPHERICAL_TOL)
            .map(|(v, a)| (v, *a))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_gluings() as i64 + self.num_cells() as i64
    }

    pub fn is_connected(&self) -> bool {
        if self.cells.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.cells.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for &(_, o) in &self.partner[c] {
                if !std::mem::replace(&mut seen[o.cell], true) {
                    stack.push(o.cell);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_sphere(&self) -> bool {
        self.is_connected() && self.euler_characteristic() == 2
    }

    /// The cell complex as an abstract polyhedron: one face per cell, one edge
    /// per gluing (oriented along its first side), one vertex per vertex.
    pub fn to_abstract_polyhedron(&self) -> Result<AbstractPolyhedron> {
        let edges: Vec<[usize; 2]> = self
            .gluings
            .iter()
            .map(|[a, _]| {
                let n = self.cells[a.cell].len();
                [self.corner_vertex[a.cell][a.side], self.corner_vertex[a.cell][(a.side + 1) % n]]
            })
            .collect();
        let faces = (0..self.cells.len())
            .map(|c| {
                (0..self.cells[c].len())
                    .map(|s| {
                        let g = self.partner[c][s].0;
                        SignedEdge::new(g, self.gluings[g][0] == SideRef::new(c, s))
                    })
                    .collect()
            })
            .collect();
        AbstractPolyhedron::from_indices(self.num_vertices(), edges, faces)
    }

    /// Largest development closure defect over all cells.
    pub fn max_realization_defect(&self) -> f64 {
        self.cells.iter().map(|c| c.realization_defect()).fold(0.0, f64::max)
    }

    /// Longest side over all cells.
    pub fn longest_edge(&self) -> f64 {
        self.cells.iter().flat_map(|c| c.sides().iter().copied()).fold(0.0, f64::max)
    }
}

/// Two copies of a spherical triangle glued along all three sides.
pub fn pillow(t: &SphericalPolygon) -> Result<ConeMetricSurface> {
    if t.len() != 3 {
        return Err(Error::InvalidInput("pillow needs a triangle".into()));
    }
    let rev = SphericalPolygon::new(
        vec![t.sides()[2], t.sides()[1], t.sides()[0]],
        vec![t.angles()[0], t.angles()[2], t.angles()[1]],
    )?;
    // side i of the mirror copy is side 2−i of the original
    let gluings = (0..3).map(|i| [SideRef::new(0, i), SideRef::new(1, 2 - i)]).collect();
    ConeMetricSurface::new(vec![t.clone(), rev], gluings)
}

/// `k` lunes of angle `2π·excess/k` each, glued cyclically: a sphere with two
/// antipodal cone points of angle `excess`.
pub fn suspension(k: usize, angle: f64) -> Result<ConeMetricSurface> {
    let lune = SphericalPolygon::new(vec![PI, PI], vec![angle, angle])?;
    let gluings = (0..k).map(|c| [SideRef::new(c, 0), SideRef::new((c + 1) % k, 1)]).collect();
    ConeMetricSurface::new(vec![lune; k], gluings)
}

/// The round sphere as eight octant triangles.
pub fn octant_sphere() -> Result<ConeMetricSurface> {
    let tri = SphericalPolygon::new(vec![PI / 2.0; 3], vec![PI / 2.0; 3])?;
    let combo = crate::combinatorics::corpus::octahedron();
    surface_from_complex(&combo, |_| tri.clone())
}

/// Glues one cell per face of `p` along the edges of `p`. Side `k` of the cell
/// for face `f` is the `k`-th edge of `f`.
pub fn surface_from_complex(
    p: &AbstractPolyhedron,
    mut cell: impl FnMut(usize) -> SphericalPolygon,
) -> Result<ConeMetricSurface> {
    let mut occ: Vec<Vec<SideRef>> = vec![Vec::new(); p.num_edges()];
    for (f, b) in p.faces().iter().enumerate() {
        for (k, s) in b.iter().enumerate() {
            occ[s.edge].push(SideRef::new(f, k));
        }
    }
    let gluings = occ
        .into_iter()
        .enumerate()
        .map(|(e, o)| {
            <[SideRef; 2]>::try_from(o).map_err(|_| Error::InvalidSurface(format!("edge {e} is not in exactly two faces")))
        })
        .collect::<Result<_>>()?;
    let cells = (0..p.num_faces()).map(&mut cell).collect();
    ConeMetricSurface::new(cells, gluings)
}
