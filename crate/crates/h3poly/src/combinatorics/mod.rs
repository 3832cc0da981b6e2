//! Combinatorial polyhedra as chain complexes.
//!
//! An [`AbstractPolyhedron`] stores vertices, oriented edges `(tail, head)` and
//! faces as cyclic sequences of signed edges. The boundary map sends a face to
//! the signed sum of its edges and an edge to `head − tail`; `validate` checks
//! `d² = 0`, that every edge appears in two faces with opposite signs, `χ = 2`
//! and the Steinitz criterion.
//!
//! Faces are oriented counter-clockwise seen from outside, so a face lies to
//! the left of each edge it traverses forward.
//!
//! Raw construction only checks references; operations that need a genuine
//! polyhedron (`poincare_dual`, `stellate`, ...) validate first.

pub mod corpus;
pub mod graph;
mod iso;

use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;

use crate::error::{Error, Result};
use crate::report::{Condition, Report};
pub use graph::{is_steinitz, steinitz_verdict, Graph, SteinitzVerdict};
pub use iso::Isomorphism;

/// An edge traversed forward (`tail → head`) or backward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedEdge {
    pub edge: usize,
    pub forward: bool,
}

impl SignedEdge {
    pub fn new(edge: usize, forward: bool) -> Self {
        Self { edge, forward }
    }

    pub fn reversed(self) -> Self {
        Self { edge: self.edge, forward: !self.forward }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractPolyhedron {
    vertex_ids: Vec<u64>,
    edges: Vec<[usize; 2]>,
    edge_ids: Vec<u64>,
    faces: Vec<Vec<SignedEdge>>,
    face_ids: Vec<u64>,
}

/// Raw edge record keyed by external ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeRecord {
    pub id: u64,
    pub tail: u64,
    pub head: u64,
}

/// Raw face record keyed by external ids; boundary entries are `±edge-id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceRecord {
    pub id: u64,
    pub boundary: Vec<i64>,
}

impl AbstractPolyhedron {
    /// Builds from external ids. Edge ids must be positive so that `±id` is unambiguous.
    pub fn from_records(vertex_ids: &[u64], edges: &[EdgeRecord], faces: &[FaceRecord]) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidCombinatorics(m));
        let mut vindex = BTreeMap::new();
        for (i, &v) in vertex_ids.iter().enumerate() {
            if vindex.insert(v, i).is_some() {
                return bad(format!("duplicate vertex id {v}"));
            }
        }
        let mut eindex = BTreeMap::new();
        let mut es = Vec::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            if e.id == 0 || e.id > i64::MAX as u64 {
                return bad(format!("edge id {} must be a positive integer", e.id));
            }
            if eindex.insert(e.id, i).is_some() {
                return bad(format!("duplicate edge id {}", e.id));
            }
            let (Some(&t), Some(&h)) = (vindex.get(&e.tail), vindex.get(&e.head)) else {
                return bad(format!("edge {} references an unknown vertex", e.id));
            };
            if t == h {
                return bad(format!("edge {} is a loop", e.id));
            }
            es.push([t, h]);
        }
        let mut fids = BTreeSet::new();
        let mut fs = Vec::with_capacity(faces.len());
        for f in faces {
            if !fids.insert(f.id) {
                return bad(format!("duplicate face id {}", f.id));
            }
            if f.boundary.is_empty() {
                return bad(format!("face {} has an empty boundary", f.id));
            }
            let mut b = Vec::with_capacity(f.boundary.len());
            for &s in &f.boundary {
                let Some(&e) = eindex.get(&s.unsigned_abs()) else {
                    return bad(format!("face {} references unknown edge {}", f.id, s.unsigned_abs()));
                };
                b.push(SignedEdge::new(e, s > 0));
            }
            fs.push(b);
        }
        Ok(Self {
            vertex_ids: vertex_ids.to_vec(),
            edges: es,
            edge_ids: edges.iter().map(|e| e.id).collect(),
            faces: fs,
            face_ids: faces.iter().map(|f| f.id).collect(),
        })
    }

    /// Builds from dense indices; ids become `0..V`, `1..=E`, `0..F`.
    pub fn from_indices(num_vertices: usize, edges: Vec<[usize; 2]>, faces: Vec<Vec<SignedEdge>>) -> Result<Self> {
        for (i, e) in edges.iter().enumerate() {
            if e[0] >= num_vertices || e[1] >= num_vertices || e[0] == e[1] {
                return Err(Error::InvalidCombinatorics(format!("edge {i} has invalid endpoints")));
            }
        }
        for (i, f) in faces.iter().enumerate() {
            if f.is_empty() || f.iter().any(|s| s.edge >= edges.len()) {
                return Err(Error::InvalidCombinatorics(format!("face {i} has an invalid boundary")));
            }
        }
        Ok(Self {
            vertex_ids: (0..num_vertices as u64).collect(),
            edge_ids: (1..=edges.len() as u64).collect(),
            face_ids: (0..faces.len() as u64).collect(),
            edges,
            faces,
        })
    }

    /// Builds from faces given as cyclic vertex lists, creating one edge per
    /// unordered vertex pair in order of first appearance.
    pub fn from_face_cycles(num_vertices: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut edge_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut edges: Vec<[usize; 2]> = Vec::new();
        let mut faces = Vec::with_capacity(cycles.len());
        for cyc in cycles {
            let mut b = Vec::with_capacity(cyc.len());
            for i in 0..cyc.len() {
                let (u, v) = (cyc[i], cyc[(i + 1) % cyc.len()]);
                let e = *edge_of.entry((u.min(v), u.max(v))).or_insert_with(|| {
                    edges.push([u, v]);
                    edges.len() - 1
                });
                b.push(SignedEdge::new(e, edges[e] == [u, v]));
            }
            faces.push(b);
        }
        Self::from_indices(num_vertices, edges, faces)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    pub fn vertex_id(&self, v: usize) -> u64 {
        self.vertex_ids[v]
    }

    pub fn edge_id(&self, e: usize) -> u64 {
        self.edge_ids[e]
    }

    pub fn face_id(&self, f: usize) -> u64 {
        self.face_ids[f]
    }

    pub fn vertex_ids(&self) -> &[u64] {
        &self.vertex_ids
    }

    pub fn edge_ids(&self) -> &[u64] {
        &self.edge_ids
    }

    pub fn face_ids(&self) -> &[u64] {
        &self.face_ids
    }

    pub fn edge_index(&self, id: u64) -> Option<usize> {
        self.edge_ids.iter().position(|&x| x == id)
    }

    /// `[tail, head]`.
    pub fn edge(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn face(&self, f: usize) -> &[SignedEdge] {
        &self.faces[f]
    }

    pub fn faces(&self) -> &[Vec<SignedEdge>] {
        &self.faces
    }

    pub fn start_vertex(&self, s: SignedEdge) -> usize {
        let [t, h] = self.edges[s.edge];
        if s.forward {
            t
        } else {
            h
        }
    }

    pub fn end_vertex(&self, s: SignedEdge) -> usize {
        self.start_vertex(s.reversed())
    }

    /// Vertices of a face in boundary order (start vertex of each signed edge).
    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        self.faces[f].iter().map(|&s| self.start_vertex(s)).collect()
    }

    pub fn vertex_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e[0] == v || e[1] == v).count()
    }

    /// The 1-skeleton, or an error if it has repeated edges.
    pub fn skeleton(&self) -> Result<Graph> {
        let pairs: Vec<_> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(self.num_vertices(), &pairs)
    }

    /// Faces containing each edge with the sign of the occurrence.
    fn occurrences(&self) -> Vec<Vec<(usize, usize)>> {
        let mut occ = vec![Vec::new(); self.edges.len()];
        for (f, b) in self.faces.iter().enumerate() {
            for (i, s) in b.iter().enumerate() {
                occ[s.edge].push((f, i));
            }
        }
        occ
    }

    /// Checks every invariant and reports offending cells by id.
    pub fn validate(&self) -> Report {
        let mut conds = Vec::new();

        let mut bad_cycles = Vec::new();
        for (f, b) in self.faces.iter().enumerate() {
            let n = b.len();
            let closed = (0..n).all(|i| self.end_vertex(b[i]) == self.start_vertex(b[(i + 1) % n]));
            let verts: BTreeSet<_> = b.iter().map(|&s| self.start_vertex(s)).collect();
            if !closed || verts.len() != n || n < 3 {
                bad_cycles.push(self.face_ids[f]);
            }
        }
        conds.push(if bad_cycles.is_empty() {
            Condition::pass("face-cycles")
        } else {
            Condition::fail("face-cycles", json!({ "faces": bad_cycles }))
        });

        let mut bad_d2 = Vec::new();
        for (f, b) in self.faces.iter().enumerate() {
            let mut coeff: BTreeMap<usize, i64> = BTreeMap::new();
            for s in b {
                let sign = if s.forward { 1 } else { -1 };
                let [t, h] = self.edges[s.edge];
                *coeff.entry(h).or_default() += sign;
                *coeff.entry(t).or_default() -= sign;
            }
            if coeff.values().any(|&c| c != 0) {
                bad_d2.push(self.face_ids[f]);
            }
        }
        conds.push(if bad_d2.is_empty() {
            Condition::pass("d-squared-zero")
        } else {
            Condition::fail("d-squared-zero", json!({ "faces": bad_d2 }))
        });

        let occ = self.occurrences();
        let mut bad_edges = Vec::new();
        for (e, o) in occ.iter().enumerate() {
            let ok = o.len() == 2 && self.faces[o[0].0][o[0].1].forward != self.faces[o[1].0][o[1].1].forward;
            if !ok {
                bad_edges.push(self.edge_ids[e]);
            }
        }
        conds.push(if bad_edges.is_empty() {
            Condition::pass("edge-in-two-faces")
        } else {
            Condition::fail("edge-in-two-faces", json!({ "edges": bad_edges }))
        });

        let chi = self.euler_characteristic();
        conds.push(if chi == 2 {
            Condition::pass("euler-characteristic")
        } else {
            Condition::fail("euler-characteristic", json!({ "chi": chi }))
        });

        conds.push(match self.skeleton() {
            Err(e) => Condition::fail("steinitz", json!({ "reason": e.to_string() })),
            Ok(g) => match steinitz_verdict(&g) {
                SteinitzVerdict::Polyhedral => Condition::pass("steinitz"),
                SteinitzVerdict::NonPlanar => Condition::fail("steinitz", json!({ "reason": "non-planar" })),
                SteinitzVerdict::NotThreeConnected { separating_set } => {
                    let ids: Vec<u64> = separating_set.iter().map(|&v| self.vertex_ids[v]).collect();
                    Condition::fail("steinitz", json!({ "reason": "not 3-connected", "separating_vertices": ids }))
                }
            },
        });
        Report::from_conditions(conds)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.passed() {
            Ok(())
        } else {
            let failed: Vec<_> = r.conditions.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
            Err(Error::InvalidCombinatorics(format!("failed checks: {}", failed.join(", "))))
        }
    }

    /// For a valid polyhedron: the face where the edge runs forward and the
    /// face where it runs backward (left and right of `tail → head`).
    pub fn edge_faces(&self, e: usize) -> (usize, usize) {
        let mut left = usize::MAX;
        let mut right = usize::MAX;
        for (f, b) in self.faces.iter().enumerate() {
            for s in b {
                if s.edge == e {
                    if s.forward {
                        left = f;
                    } else {
                        right = f;
                    }
                }
            }
        }
        (left, right)
    }

    /// Faces and edges around a vertex of a valid polyhedron, counter-clockwise
    /// seen from outside: entry `k` is `(f_k, e_k)` where `e_k` separates `f_k`
    /// from `f_{k+1}`.
    pub fn vertex_star(&self, v: usize) -> Vec<(usize, usize)> {
        let occ = self.occurrences();
        self.vertex_star_with(v, &occ)
    }

    fn vertex_star_with(&self, v: usize, occ: &[Vec<(usize, usize)>]) -> Vec<(usize, usize)> {
        // Incoming edge of face f at v: the signed edge before the one starting at v.
        let incoming = |f: usize| -> Option<usize> {
            let b = &self.faces[f];
            let i = b.iter().position(|&s| self.start_vertex(s) == v)?;
            Some(b[(i + b.len() - 1) % b.len()].edge)
        };
        let Some(f0) = (0..self.faces.len()).find(|&f| incoming(f).is_some()) else {
            return Vec::new();
        };
        let mut star = Vec::new();
        let mut f = f0;
        loop {
            let e = incoming(f).expect("face contains the vertex");
            star.push((f, e));
            let next = occ[e].iter().map(|&(g, _)| g).find(|&g| g != f).expect("edge has two faces");
            f = next;
            if f == f0 || star.len() > self.faces.len() {
                break;
            }
        }
        star
    }

    pub fn vertex_stars(&self) -> Vec<Vec<(usize, usize)>> {
        let occ = self.occurrences();
        (0..self.num_vertices()).map(|v| self.vertex_star_with(v, &occ)).collect()
    }

    /// Same cells with every face traversed the other way (the mirror image).
    pub fn reversed(&self) -> Self {
        let mut r = self.clone();
        for b in &mut r.faces {
            b.reverse();
            for s in b.iter_mut() {
                *s = s.reversed();
            }
        }
        r
    }
}

/// Faces become vertices, edges stay edges, vertices become faces.
///
/// The dual edge of `e` runs from the face left of `e` to the face right of it,
/// and the dual face of `v` lists the faces around `v` counter-clockwise.
pub fn poincare_dual(p: &AbstractPolyhedron) -> Result<AbstractPolyhedron> {
    p.require_valid()?;
    let edges: Vec<[usize; 2]> = (0..p.num_edges())
        .map(|e| {
            let (l, r) = p.edge_faces(e);
            [l, r]
        })
        .collect();
    let faces: Vec<Vec<SignedEdge>> = p
        .vertex_stars()
        .into_iter()
        .map(|star| star.into_iter().map(|(f, e)| SignedEdge::new(e, edges[e][0] == f)).collect())
        .collect();
    Ok(AbstractPolyhedron {
        vertex_ids: p.face_ids.clone(),
        edges,
        edge_ids: p.edge_ids.clone(),
        faces,
        face_ids: p.vertex_ids.clone(),
    })
}

/// Cones every face to a new apex vertex.
///
/// New vertices, edges and faces receive fresh ids above the existing maxima.
pub fn stellate(p: &AbstractPolyhedron) -> Result<AbstractPolyhedron> {
    p.require_valid()?;
    let v0 = p.num_vertices();
    let mut edges = p.edges.clone();
    let mut faces = Vec::new();
    for (f, b) in p.faces.iter().enumerate() {
        let apex = v0 + f;
        let first_spoke = edges.len();
        let n = b.len();
        for &s in b {
            edges.push([apex, p.start_vertex(s)]);
        }
        for k in 0..n {
            faces.push(vec![
                b[k],
                SignedEdge::new(first_spoke + (k + 1) % n, false),
                SignedEdge::new(first_spoke + k, true),
            ]);
        }
    }
    let max_v = p.vertex_ids.iter().copied().max().unwrap_or(0);
    let max_e = p.edge_ids.iter().copied().max().unwrap_or(0);
    let mut vertex_ids = p.vertex_ids.clone();
    vertex_ids.extend((0..p.num_faces() as u64).map(|f| max_v + 1 + f));
    let mut edge_ids = p.edge_ids.clone();
    edge_ids.extend((0..(edges.len() - p.num_edges()) as u64).map(|k| max_e + 1 + k));
    Ok(AbstractPolyhedron {
        vertex_ids,
        edges,
        edge_ids,
        face_ids: (0..faces.len() as u64).collect(),
        faces,
    })
}

/// Necessary condition for the stellation of `p` to be inscribable: `V > F`.
///
/// Returns `(false, reason)` when the stellation certainly cannot be inscribed;
/// `true` only means this criterion does not exclude it.
pub fn stellation_inscribable_necessary(p: &AbstractPolyhedron) -> (bool, String) {
    let (v, f) = (p.num_vertices(), p.num_faces());
    if v <= f {
        (false, format!("V = {v} ≤ F = {f}: the stellation cannot be inscribed in a sphere"))
    } else {
        (true, format!("V = {v} > F = {f}: not excluded by the vertex/face count"))
    }
}

/// All combinatorial isomorphisms `p → q`, optionally including orientation-reversing ones.
pub fn isomorphisms(p: &AbstractPolyhedron, q: &AbstractPolyhedron, reflections: bool) -> Vec<Isomorphism> {
    iso::isomorphisms(p, q, reflections, usize::MAX)
}

/// Whether `p` and `q` are combinatorially isomorphic (reflections allowed).
pub fn are_isomorphic(p: &AbstractPolyhedron, q: &AbstractPolyhedron) -> bool {
    !iso::isomorphisms(p, q, true, 1).is_empty()
}
