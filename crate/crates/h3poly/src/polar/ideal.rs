use std::f64::consts::PI;

use serde_json::json;

use crate::error::{Error, Result};
use crate::report::{Condition, Report};

use super::polygon::{SphericalPolygon, SPHERICAL_TOL};
use super::surface::{ConeMetricSurface, SideRef};

/// Hemisphere-cell conditions: sphere topology, polyhedral cell complex,
/// hemisphere cells, gluing lengths in `(0, π)`, and every simple 1-skeleton
/// cycle not bounding a cell longer than 2π.
pub fn check_ideally_admissible(q: &ConeMetricSurface) -> Report {
    let mut conds = Vec::new();
    conds.push(Condition::with(
        "sphere",
        q.is_sphere(),
        (!q.is_sphere()).then(|| json!({"euler_characteristic": q.euler_characteristic(), "connected": q.is_connected()})),
    ));

    let polyhedral = match q.to_abstract_polyhedron() {
        Ok(p) => {
            let r = p.validate();
            let failed: Vec<&str> = r.conditions.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
            Condition::with("polyhedral-complex", failed.is_empty(), (!failed.is_empty()).then(|| json!({"failed": failed})))
        }
        Err(e) => Condition::fail("polyhedral-complex", json!(e.to_string())),
    };
    conds.push(polyhedral);

    let bad_cells: Vec<usize> = (0..q.num_cells()).filter(|&c| !q.cell(c).is_hemisphere(SPHERICAL_TOL)).collect();
    conds.push(Condition::with("hemisphere-cells", bad_cells.is_empty(), (!bad_cells.is_empty()).then(|| json!({"cells": bad_cells}))));

    let bad_gluings: Vec<usize> = q
        .gluings()
        .iter()
        .enumerate()
        .filter(|(_, [a, _])| {
            let l = q.cell(a.cell).sides()[a.side];
            !(l > 0.0 && l < PI - SPHERICAL_TOL)
        })
        .map(|(g, _)| g)
        .collect();
    conds.push(Condition::with(
        "gluing-lengths",
        bad_gluings.is_empty(),
        (!bad_gluings.is_empty()).then(|| json!({"gluings": bad_gluings})),
    ));

    let short = short_nonfacial_cycle(q);
    conds.push(Condition::with(
        "non-facial-cycles",
        short.is_none(),
        short.map(|(gs, len)| json!({"gluings": gs, "length": len})),
    ));
    Report::from_conditions(conds)
}

/// A simple 1-skeleton cycle of length ≤ 2π that is not a cell boundary.
fn short_nonfacial_cycle(q: &ConeMetricSurface) -> Option<(Vec<usize>, f64)> {
    let nv = q.num_vertices();
    let mut adj: Vec<Vec<(usize, usize, f64)>> = vec![Vec::new(); nv];
    for (g, [a, _]) in q.gluings().iter().enumerate() {
        let n = q.cell(a.cell).len();
        let (u, w) = (q.corner_vertex(a.cell, a.side), q.corner_vertex(a.cell, (a.side + 1) % n));
        let len = q.cell(a.cell).sides()[a.side];
        adj[u].push((w, g, len));
        if u != w {
            adj[w].push((u, g, len));
        }
    }
    let mut facial: Vec<Vec<usize>> = (0..q.num_cells())
        .map(|c| {
            let mut gs: Vec<usize> = (0..q.cell(c).len()).map(|s| q.partner(c, s).0).collect();
            gs.sort_unstable();
            gs
        })
        .collect();
    facial.sort();
    let limit = 2.0 * PI + SPHERICAL_TOL;

    struct Walk<'a> {
        adj: &'a [Vec<(usize, usize, f64)>],
        facial: &'a [Vec<usize>],
        limit: f64,
        start: usize,
        on_path: Vec<bool>,
        edges: Vec<usize>,
    }
    impl Walk<'_> {
        fn go(&mut self, v: usize, len: f64) -> Option<(Vec<usize>, f64)> {
            for &(w, g, l) in &self.adj[v] {
                if self.edges.contains(&g) || len + l > self.limit {
                    continue;
                }
                if w == self.start {
                    let mut key = self.edges.clone();
                    key.push(g);
                    key.sort_unstable();
                    if self.facial.binary_search(&key).is_err() {
                        let mut cyc = self.edges.clone();
                        cyc.push(g);
                        return Some((cyc, len + l));
                    }
                    continue;
                }
                if w < self.start || self.on_path[w] {
                    continue;
                }
                self.on_path[w] = true;
                self.edges.push(g);
                let r = self.go(w, len + l);
                self.edges.pop();
                self.on_path[w] = false;
                if r.is_some() {
                    return r;
                }
            }
            None
        }
    }
    for s in 0..nv {
        let mut walk = Walk { adj: &adj, facial: &facial, limit, start: s, on_path: vec![false; nv], edges: Vec::new() };
        walk.on_path[s] = true;
        if let Some(r) = walk.go(s, 0.0) {
            return Some(r);
        }
    }
    None
}

/// Replaces every hemisphere cell by a fan of triangles over its centre,
/// stretching each boundary side by `1 + t`.
///
/// Triangle `i` of cell `c` has corners `[v_i, v_{i+1}, centre]`, sides
/// `[ℓ_i(1+t), π/2, π/2]` and angles `[π/2, π/2, ℓ_i(1+t)]`. Triangles are
/// numbered cell by cell, so the fan of cell `c` starts at the sum of the
/// side counts of the earlier cells.
pub fn t_expansion(q: &ConeMetricSurface, t: f64) -> Result<ConeMetricSurface> {
    let report = check_ideally_admissible(q);
    if !report.passed() {
        let failed: Vec<&str> = report.conditions.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        return Err(Error::Precondition(format!("surface is not ideally admissible: {failed:?}")));
    }
    let e1 = q.longest_edge();
    let upper = PI / e1 - 1.0;
    if !(t > 0.0 && t < upper) {
        return Err(Error::Precondition(format!("t = {t} outside (0, {upper})")));
    }
    let mut first = Vec::with_capacity(q.num_cells());
    let mut cells = Vec::new();
    for c in 0..q.num_cells() {
        first.push(cells.len());
        for &l in q.cell(c).sides() {
            let b = l * (1.0 + t);
            cells.push(SphericalPolygon::new(vec![b, PI / 2.0, PI / 2.0], vec![PI / 2.0, PI / 2.0, b])?);
        }
    }
    let mut gluings = Vec::new();
    for [a, b] in q.gluings() {
        gluings.push([SideRef::new(first[a.cell] + a.side, 0), SideRef::new(first[b.cell] + b.side, 0)]);
    }
    for c in 0..q.num_cells() {
        let n = q.cell(c).len();
        for i in 0..n {
            gluings.push([SideRef::new(first[c] + i, 1), SideRef::new(first[c] + (i + 1) % n, 2)]);
        }
    }
    ConeMetricSurface::new(cells, gluings)
}

/// Vertices of a t-expansion that sit at the old cell centres.
pub fn t_expansion_centres(q: &ConeMetricSurface, expanded: &ConeMetricSurface) -> Vec<usize> {
    let mut first = 0;
    let mut out = Vec::with_capacity(q.num_cells());
    for c in 0..q.num_cells() {
        out.push(expanded.corner_vertex(first, 2));
        first += q.cell(c).len();
    }
    out
}
