//! Dihedral-angle assignments on abstract polyhedra and the conditions that
//! make them realizable by compact hyperbolic polyhedra with non-obtuse angles.
//!
//! [`check_andreev`] tests an assignment directly on the combinatorics.
//! [`dual_andreev_metric`] builds the polar cone metric from one spherical
//! triangle per vertex, and [`check_dual_andreev`] tests that metric.
//!
//! Strict inequalities are compared against [`STRICT_TOL`]; a value within
//! the tolerance of equality fails and is flagged `"boundary": true`.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::combinatorics::AbstractPolyhedron;
use crate::error::{Error, Result};
use crate::polar::{surface_from_complex, ConeMetricSurface, SphericalPolygon};
use crate::report::{Condition, Report, Verdict};
use crate::spherical::spherical_angle_from_sides;

pub const STRICT_TOL: f64 = 1e-12;

/// Interior dihedral angle per edge id.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AngleAssignment {
    pub angles: BTreeMap<u64, f64>,
}

impl AngleAssignment {
    /// The same angle on every edge of `p`.
    pub fn uniform(p: &AbstractPolyhedron, angle: f64) -> Self {
        Self { angles: p.edge_ids().iter().map(|&id| (id, angle)).collect() }
    }

    /// Angles indexed by edge index of `p`. Fails on missing, extra or
    /// non-finite entries.
    pub fn resolve(&self, p: &AbstractPolyhedron) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(p.num_edges());
        for &id in p.edge_ids() {
            match self.angles.get(&id) {
                Some(a) if a.is_finite() => out.push(*a),
                Some(a) => return Err(Error::InvalidInput(format!("angle {a} on edge {id} is not finite"))),
                None => return Err(Error::InvalidInput(format!("no angle for edge {id}"))),
            }
        }
        if let Some(extra) = self.angles.keys().find(|id| p.edge_index(**id).is_none()) {
            return Err(Error::InvalidInput(format!("angle given for unknown edge {extra}")));
        }
        Ok(out)
    }
}

/// A cyclic sequence of edge-adjacent faces, no three of which share a vertex.
/// `edges[i]` separates `faces[i]` from `faces[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrismaticElement {
    pub faces: Vec<usize>,
    pub edges: Vec<usize>,
}

impl PrismaticElement {
    pub fn angle_sum(&self, angles: &[f64]) -> f64 {
        self.edges.iter().map(|&e| angles[e]).sum()
    }

    fn witness(&self, p: &AbstractPolyhedron, sum: f64, bound: f64) -> Value {
        json!({
            "faces": self.faces.iter().map(|&f| p.face_id(f)).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&e| p.edge_id(e)).collect::<Vec<_>>(),
            "sum": sum,
            "boundary": (sum - bound).abs() <= STRICT_TOL,
        })
    }
}

/// All `k`-prismatic elements of a valid polyhedron, each listed once,
/// starting at its smallest face.
pub fn prismatic_elements(p: &AbstractPolyhedron, k: usize) -> Vec<PrismaticElement> {
    let nf = p.num_faces();
    let mut between: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in 0..p.num_edges() {
        let (l, r) = p.edge_faces(e);
        if l < nf && r < nf {
            between.insert((l.min(r), l.max(r)), e);
        }
    }
    let mut adj = vec![Vec::new(); nf];
    for &(a, b) in between.keys() {
        adj[a].push(b);
        adj[b].push(a);
    }
    let verts: Vec<BTreeSet<usize>> = (0..nf).map(|f| p.face_vertices(f).into_iter().collect()).collect();
    let share_point = |a: usize, b: usize, c: usize| verts[a].iter().any(|v| verts[b].contains(v) && verts[c].contains(v));

    let mut out = Vec::new();
    let mut path = Vec::with_capacity(k);
    fn extend(
        path: &mut Vec<usize>,
        k: usize,
        adj: &[Vec<usize>],
        ok: &dyn Fn(&[usize], usize) -> bool,
        found: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().expect("path starts non-empty");
        if path.len() == k {
            if adj[last].contains(&path[0]) && path[1] < path[k - 1] {
                found.push(path.clone());
            }
            return;
        }
        for &g in &adj[last] {
            if g > path[0] && !path.contains(&g) && ok(path, g) {
                path.push(g);
                extend(path, k, adj, ok, found);
                path.pop();
            }
        }
    }
    let ok = |path: &[usize], g: usize| {
        for i in 0..path.len() {
            for j in i + 1..path.len() {
                if share_point(path[i], path[j], g) {
                    return false;
                }
            }
        }
        true
    };
    if k < 3 {
        return out;
    }
    let mut found = Vec::new();
    for f in 0..nf {
        path.clear();
        path.push(f);
        extend(&mut path, k, &adj, &ok, &mut found);
    }
    for faces in found {
        let edges = (0..k)
            .map(|i| {
                let (a, b) = (faces[i], faces[(i + 1) % k]);
                between[&(a.min(b), a.max(b))]
            })
            .collect();
        out.push(PrismaticElement { faces, edges });
    }
    out
}

/// Edges at each vertex, in star order.
fn vertex_edges(p: &AbstractPolyhedron) -> Vec<Vec<usize>> {
    p.vertex_stars().iter().map(|s| s.iter().map(|&(_, e)| e).collect()).collect()
}

/// Quadrilateral faces all of whose four outgoing edges carry angle π/2.
/// In the polar metric this is a vertex with four triangles whose opposite
/// sides all have length π/2, so its cone angle is exactly 2π.
fn right_angled_quads(p: &AbstractPolyhedron, angles: &[f64]) -> Vec<usize> {
    let edges_at = vertex_edges(p);
    (0..p.num_faces())
        .filter(|&f| {
            let b = p.face(f);
            if b.len() != 4 {
                return false;
            }
            let on_face: BTreeSet<usize> = b.iter().map(|s| s.edge).collect();
            p.face_vertices(f).iter().all(|&v| {
                let out: Vec<usize> = edges_at[v].iter().copied().filter(|e| !on_face.contains(e)).collect();
                out.len() == 1 && (angles[out[0]] - FRAC_PI_2).abs() <= STRICT_TOL
            })
        })
        .collect()
}

/// Tests an angle assignment against the realizability conditions: trivalent
/// vertices, angles in `(0, π/2]`, vertex sums above π, 3- and 4-prismatic
/// sums below π and 2π, and no quadrilateral face surrounded by right angles.
///
/// The verdict is `Accept` when every condition passes. Tetrahedra are out
/// of scope.
pub fn check_andreev(p: &AbstractPolyhedron, a: &AngleAssignment) -> Result<Report> {
    p.require_valid()?;
    if p.num_faces() == 4 {
        return Err(Error::OutOfScope("the tetrahedron is excluded".into()));
    }
    let angles = a.resolve(p)?;
    let edges_at = vertex_edges(p);
    let mut conds = Vec::with_capacity(6);

    let high: Vec<_> = (0..p.num_vertices())
        .filter(|&v| edges_at[v].len() != 3)
        .map(|v| json!({"vertex": p.vertex_id(v), "degree": edges_at[v].len()}))
        .collect();
    conds.push(Condition::with("trivalent", high.is_empty(), (!high.is_empty()).then(|| json!(high))));

    let bad: Vec<_> = angles
        .iter()
        .enumerate()
        .filter(|(_, &x)| !(x > 0.0 && x <= FRAC_PI_2 + STRICT_TOL))
        .map(|(e, &x)| json!({"edge": p.edge_id(e), "angle": x}))
        .collect();
    conds.push(Condition::with("angle-range", bad.is_empty(), (!bad.is_empty()).then(|| json!(bad))));

    let low: Vec<_> = (0..p.num_vertices())
        .filter(|&v| edges_at[v].len() == 3)
        .filter_map(|v| {
            let sum: f64 = edges_at[v].iter().map(|&e| angles[e]).sum();
            (sum <= PI + STRICT_TOL).then(|| json!({"vertex": p.vertex_id(v), "sum": sum, "boundary": (sum - PI).abs() <= STRICT_TOL}))
        })
        .collect();
    conds.push(Condition::with("vertex-sums", low.is_empty(), (!low.is_empty()).then(|| json!(low))));

    for (k, bound, name) in [(3, PI, "3-prismatic"), (4, 2.0 * PI, "4-prismatic")] {
        let viol: Vec<_> = prismatic_elements(p, k)
            .iter()
            .filter_map(|el| {
                let sum = el.angle_sum(&angles);
                (sum >= bound - STRICT_TOL).then(|| el.witness(p, sum, bound))
            })
            .collect();
        conds.push(Condition::with(name, viol.is_empty(), (!viol.is_empty()).then(|| json!(viol))));
    }

    let quads = right_angled_quads(p, &angles);
    conds.push(Condition::with(
        "forbidden-4-star",
        quads.is_empty(),
        (!quads.is_empty()).then(|| json!(quads.iter().map(|&f| json!({"face": p.face_id(f)})).collect::<Vec<_>>())),
    ));

    let verdict = if conds.iter().all(|c| c.pass) { Verdict::Accept } else { Verdict::Reject };
    Ok(Report { verdict, conditions: conds, metrics: None })
}

/// The polar metric of an assignment: one spherical triangle per vertex with
/// side `π − α` on each incident edge, glued along edges. Cell `v` follows
/// the star of vertex `v`; its corner `k` sits at face `f_k`.
pub fn dual_andreev_metric(p: &AbstractPolyhedron, a: &AngleAssignment) -> Result<ConeMetricSurface> {
    p.require_valid()?;
    let angles = a.resolve(p)?;
    let stars = p.vertex_stars();
    if let Some(v) = (0..p.num_vertices()).find(|&v| stars[v].len() != 3) {
        return Err(Error::Precondition(format!("vertex {} is not trivalent", p.vertex_id(v))));
    }
    if let Some(e) = (0..p.num_edges()).find(|&e| !(angles[e] > 0.0 && angles[e] <= FRAC_PI_2 + STRICT_TOL)) {
        return Err(Error::Precondition(format!("angle on edge {} is outside (0, π/2]", p.edge_id(e))));
    }
    let mut cells = Vec::with_capacity(stars.len());
    for (v, star) in stars.iter().enumerate() {
        let sides: Vec<f64> = star.iter().map(|&(_, e)| PI - angles[e]).collect();
        // corner k lies between sides k-1 and k
        let corner = |k: usize| spherical_angle_from_sides(sides[(k + 1) % 3], sides[(k + 2) % 3], sides[k]);
        let tri = (0..3)
            .map(corner)
            .collect::<Result<Vec<f64>>>()
            .and_then(|angs| SphericalPolygon::new(sides.clone(), angs))
            .map_err(|e| Error::InvalidInput(format!("vertex {}: {e}", p.vertex_id(v))))?;
        cells.push(tri);
    }
    let dual = crate::combinatorics::poincare_dual(p)?;
    // The dual's face for vertex v lists the same edges as the star of v.
    let mut order = Vec::with_capacity(stars.len());
    for (v, star) in stars.iter().enumerate() {
        let b = dual.face(v);
        let shift = b.iter().position(|s| s.edge == star[0].1);
        let aligned = shift.filter(|&sh| (0..3).all(|i| b[(sh + i) % 3].edge == star[i].1));
        order.push(aligned.ok_or_else(|| Error::Internal("dual face does not follow the vertex star".into()))?);
    }
    surface_from_complex(&dual, |v| rotate(&cells[v], order[v]))
}

/// Renumbers so that old side `shift` becomes side 0.
fn rotate(c: &SphericalPolygon, shift: usize) -> SphericalPolygon {
    let n = c.len();
    // new side i = old side (i - shift); same for corners
    let back = |i: usize| (i + n - shift % n) % n;
    let sides = (0..n).map(|i| c.sides()[back(i)]).collect();
    let angles = (0..n).map(|i| c.angles()[back(i)]).collect();
    SphericalPolygon::new(sides, angles).expect("rotation keeps a valid polygon")
}

/// Edges leaving each corner in rotation order, as gluing indices: entry `j`
/// is the gluing crossed after corner `j` of the rotation at `w`.
fn gluings_around(q: &ConeMetricSurface, w: usize) -> Vec<usize> {
    q.rotation(w)
        .iter()
        .map(|&(c, k)| {
            let n = q.cell(c).len();
            q.partner(c, (k + n - 1) % n).0
        })
        .collect()
}

/// Tests a triangulated polar metric: triangles with sides in `[π/2, π)`,
/// every geodesic 1-skeleton cycle of three or four edges longer than 2π,
/// and no vertex surrounded by exactly four triangles whose opposite sides
/// have length π/2.
///
/// A 1-skeleton cycle is geodesic unless, at some vertex on it, one of the
/// two sides contains a single triangle.
pub fn check_dual_andreev(q: &ConeMetricSurface) -> Report {
    let mut conds = Vec::with_capacity(3);

    let bad: Vec<_> = (0..q.num_cells())
        .filter(|&c| {
            let cell = q.cell(c);
            cell.len() != 3 || cell.sides().iter().any(|&s| !(FRAC_PI_2 - STRICT_TOL..PI).contains(&s))
        })
        .map(|c| json!({"cell": c, "sides": q.cell(c).sides()}))
        .collect();
    conds.push(Condition::with("triangulation", bad.is_empty(), (!bad.is_empty()).then(|| json!(bad))));

    let short: Vec<_> = short_geodesic_cycles(q)
        .into_iter()
        .map(|(gs, len)| json!({"gluings": gs, "length": len, "boundary": (len - 2.0 * PI).abs() <= STRICT_TOL}))
        .collect();
    conds.push(Condition::with("short-geodesic-cycles", short.is_empty(), (!short.is_empty()).then(|| json!(short))));

    let stars: Vec<_> = (0..q.num_vertices())
        .filter(|&w| {
            let rot = q.rotation(w);
            rot.len() == 4
                && rot.iter().all(|&(c, k)| {
                    let cell = q.cell(c);
                    cell.len() == 3 && (cell.sides()[(k + 1) % 3] - FRAC_PI_2).abs() <= STRICT_TOL
                })
        })
        .map(|w| json!({"vertex": w, "cone_angle": q.cone_angles()[w]}))
        .collect();
    conds.push(Condition::with("forbidden-4-star", stars.is_empty(), (!stars.is_empty()).then(|| json!(stars))));

    Report::from_conditions(conds)
}

/// Simple cycles of three or four gluings that are geodesic and have length
/// at most `2π + STRICT_TOL`.
fn short_geodesic_cycles(q: &ConeMetricSurface) -> Vec<(Vec<usize>, f64)> {
    let nv = q.num_vertices();
    let ends: Vec<[usize; 2]> = q
        .gluings()
        .iter()
        .map(|[a, _]| {
            let n = q.cell(a.cell).len();
            [q.corner_vertex(a.cell, a.side), q.corner_vertex(a.cell, (a.side + 1) % n)]
        })
        .collect();
    let length = |g: usize| {
        let a = q.gluings()[g][0];
        q.cell(a.cell).sides()[a.side]
    };
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (g, &[u, w]) in ends.iter().enumerate() {
        if u != w {
            adj[u].push((w, g));
            adj[w].push((u, g));
        }
    }
    let around: Vec<Vec<usize>> = (0..nv).map(|w| gluings_around(q, w)).collect();
    let single_triangle_side = |w: usize, g_in: usize, g_out: usize| {
        let seq = &around[w];
        let m = seq.len();
        match (seq.iter().position(|&g| g == g_in), seq.iter().position(|&g| g == g_out)) {
            (Some(i), Some(j)) => {
                let d = (j + m - i) % m;
                d == 1 || m - d == 1
            }
            _ => true,
        }
    };

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in 0..nv {
        // paths start → ... of 2 or 3 edges then back to start
        let mut stack: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![start], Vec::new())];
        while let Some((vs, gs)) = stack.pop() {
            let last = *vs.last().expect("non-empty");
            for &(w, g) in &adj[last] {
                if gs.contains(&g) {
                    continue;
                }
                if w == start && gs.len() >= 2 {
                    let mut cyc = gs.clone();
                    cyc.push(g);
                    let mut key = cyc.clone();
                    key.sort_unstable();
                    if !seen.insert(key) {
                        continue;
                    }
                    let k = cyc.len();
                    let geodesic = (0..k).all(|i| {
                        let v = if i == 0 { start } else { vs[i] };
                        !single_triangle_side(v, cyc[(i + k - 1) % k], cyc[i])
                    });
                    let len: f64 = cyc.iter().map(|&g| length(g)).sum();
                    if geodesic && len <= 2.0 * PI + STRICT_TOL {
                        out.push((cyc, len));
                    }
                    continue;
                }
                if w <= start || vs.contains(&w) || gs.len() >= 3 {
                    continue;
                }
                let mut vs2 = vs.clone();
                vs2.push(w);
                let mut gs2 = gs.clone();
                gs2.push(g);
                stack.push((vs2, gs2));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::corpus;
    use crate::polar::{check_admissible, octant_sphere, GeodesicCheck};

    /// Independent enumeration: ordered k-tuples of distinct faces, cyclic
    /// adjacency by shared edge, no common vertex among any three, reduced
    /// modulo rotation and reflection.
    fn brute_prismatic(p: &AbstractPolyhedron, k: usize) -> BTreeSet<Vec<usize>> {
        let nf = p.num_faces();
        let fe: Vec<BTreeSet<usize>> = (0..nf).map(|f| p.face(f).iter().map(|s| s.edge).collect()).collect();
        let fv: Vec<BTreeSet<usize>> = (0..nf).map(|f| p.face_vertices(f).into_iter().collect()).collect();
        let mut out = BTreeSet::new();
        let mut idx = vec![0usize; k];
        loop {
            let distinct = (0..k).all(|i| (i + 1..k).all(|j| idx[i] != idx[j]));
            let cyclic = (0..k).all(|i| fe[idx[i]].intersection(&fe[idx[(i + 1) % k]]).next().is_some());
            let free = (0..k).all(|i| {
                (i + 1..k).all(|j| (j + 1..k).all(|l| !fv[idx[i]].iter().any(|v| fv[idx[j]].contains(v) && fv[idx[l]].contains(v))))
            });
            if distinct && cyclic && free {
                let mut best: Option<Vec<usize>> = None;
                for r in 0..k {
                    for dir in [1, k - 1] {
                        let c: Vec<usize> = (0..k).map(|i| idx[(r + i * dir) % k]).collect();
                        if best.as_ref().is_none_or(|b| c < *b) {
                            best = Some(c);
                        }
                    }
                }
                out.insert(best.expect("k > 0"));
            }
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                idx[i] += 1;
                if idx[i] < nf {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    fn listed(p: &AbstractPolyhedron, k: usize) -> BTreeSet<Vec<usize>> {
        prismatic_elements(p, k).into_iter().map(|e| e.faces).collect()
    }

    #[test]
    fn prismatic_counts_match_brute_force() {
        for (p, k, n) in [
            (corpus::cube(), 4, 3),
            (corpus::cube(), 3, 0),
            (corpus::triangular_prism(), 3, 1),
            (corpus::dodecahedron(), 3, 0),
            (corpus::dodecahedron(), 4, 0),
        ] {
            let got = listed(&p, k);
            assert_eq!(got, brute_prismatic(&p, k));
            assert_eq!(got.len(), n);
        }
        assert_eq!(listed(&corpus::octahedron(), 4), brute_prismatic(&corpus::octahedron(), 4));
    }

    #[test]
    fn right_angled_dodecahedron_accepted() {
        let p = corpus::dodecahedron();
        let r = check_andreev(&p, &AngleAssignment::uniform(&p, FRAC_PI_2)).unwrap();
        assert_eq!(r.verdict, Verdict::Accept);
        assert!(r.conditions.iter().all(|c| c.pass));
        assert_eq!(r.conditions.len(), 6);
    }

    #[test]
    fn right_angled_cube_rejected_at_boundary() {
        let p = corpus::cube();
        let r = check_andreev(&p, &AngleAssignment::uniform(&p, FRAC_PI_2)).unwrap();
        assert_eq!(r.verdict, Verdict::Reject);
        let c = r.condition("4-prismatic").unwrap();
        assert!(!c.pass);
        let w = &c.witness.as_ref().unwrap()[0];
        assert!((w["sum"].as_f64().unwrap() - 2.0 * PI).abs() < 1e-15);
        assert_eq!(w["boundary"], json!(true));
        assert!(!r.condition("forbidden-4-star").unwrap().pass);
    }

    #[test]
    fn vertex_sum_equal_to_pi_rejected() {
        let p = corpus::triangular_prism();
        let mut a = AngleAssignment::uniform(&p, 1.2);
        let edges = &vertex_edges(&p)[0];
        for &e in edges {
            a.angles.insert(p.edge_id(e), PI / 3.0);
        }
        let r = check_andreev(&p, &a).unwrap();
        let c = r.condition("vertex-sums").unwrap();
        assert!(!c.pass);
        assert_eq!(c.witness.as_ref().unwrap()[0]["vertex"], json!(p.vertex_id(0)));
    }

    #[test]
    fn tetrahedron_out_of_scope_and_octahedron_not_trivalent() {
        let t = corpus::tetrahedron();
        assert!(matches!(check_andreev(&t, &AngleAssignment::uniform(&t, 1.0)), Err(Error::OutOfScope(_))));
        let o = corpus::octahedron();
        let r = check_andreev(&o, &AngleAssignment::uniform(&o, 1.0)).unwrap();
        assert!(!r.condition("trivalent").unwrap().pass);
    }

    #[test]
    fn assignment_must_cover_edges() {
        let p = corpus::cube();
        let mut a = AngleAssignment::uniform(&p, 1.0);
        a.angles.remove(&p.edge_id(0));
        assert!(check_andreev(&p, &a).is_err());
        let mut a = AngleAssignment::uniform(&p, 1.0);
        a.angles.insert(9999, 1.0);
        assert!(check_andreev(&p, &a).is_err());
    }

    #[test]
    fn right_angles_give_octants() {
        let p = corpus::dodecahedron();
        let q = dual_andreev_metric(&p, &AngleAssignment::uniform(&p, FRAC_PI_2)).unwrap();
        assert_eq!(q.num_cells(), p.num_vertices());
        assert_eq!(q.num_vertices(), p.num_faces());
        for c in q.cells() {
            for (&s, &a) in c.sides().iter().zip(c.angles()) {
                assert!((s - FRAC_PI_2).abs() < 1e-15 && (a - FRAC_PI_2).abs() < 1e-12);
            }
        }
        for &a in q.cone_angles() {
            assert!((a - 2.5 * PI).abs() < 1e-12);
        }
        assert!(check_dual_andreev(&q).passed());
        assert!(matches!(check_admissible(&q, 2 * q.num_cells()).geodesic_check, GeodesicCheck::Certified { .. }));
    }

    #[test]
    fn cube_metric_fails_both_dual_conditions() {
        let p = corpus::cube();
        let q = dual_andreev_metric(&p, &AngleAssignment::uniform(&p, FRAC_PI_2)).unwrap();
        let r = check_dual_andreev(&q);
        assert!(!r.condition("forbidden-4-star").unwrap().pass);
        assert!(!r.condition("short-geodesic-cycles").unwrap().pass);
    }

    #[test]
    fn octant_sphere_is_the_forbidden_star() {
        let r = check_dual_andreev(&octant_sphere().unwrap());
        let c = r.condition("forbidden-4-star").unwrap();
        assert_eq!(c.witness.as_ref().unwrap().as_array().unwrap().len(), 6);
        let cyc = r.condition("short-geodesic-cycles").unwrap();
        assert!(cyc.witness.as_ref().unwrap().as_array().unwrap().iter().all(|w| w["boundary"] == json!(true)));
    }

    #[test]
    fn facial_triangles_are_not_geodesic() {
        let p = corpus::dodecahedron();
        let a = AngleAssignment::uniform(&p, 1.4);
        let q = dual_andreev_metric(&p, &a).unwrap();
        // every triangle has perimeter 3(π − 1.4) < 2π but is not geodesic
        assert!(short_geodesic_cycles(&q).is_empty());
    }
}
