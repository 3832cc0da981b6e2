//! Isomorphism search by rooting a flag (face, position) and propagating
//! along face successors and edge twins.

use std::collections::VecDeque;

use super::AbstractPolyhedron;

/// Index maps of a combinatorial isomorphism `p → q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub face_map: Vec<usize>,
    pub orientation_reversing: bool,
}

type Dart = (usize, usize);

struct Darts {
    twin: Vec<Vec<Dart>>,
}

impl Darts {
    fn new(p: &AbstractPolyhedron) -> Option<Self> {
        let mut occ = vec![Vec::new(); p.num_edges()];
        for (f, b) in p.faces().iter().enumerate() {
            for (i, s) in b.iter().enumerate() {
                occ[s.edge].push((f, i));
            }
        }
        if occ.iter().any(|o| o.len() != 2) {
            return None;
        }
        let twin = p
            .faces()
            .iter()
            .enumerate()
            .map(|(f, b)| {
                b.iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let o = &occ[s.edge];
                        if o[0] == (f, i) {
                            o[1]
                        } else {
                            o[0]
                        }
                    })
                    .collect()
            })
            .collect();
        Some(Self { twin })
    }
}

pub(super) fn isomorphisms(
    p: &AbstractPolyhedron,
    q: &AbstractPolyhedron,
    reflections: bool,
    limit: usize,
) -> Vec<Isomorphism> {
    let mut out = Vec::new();
    if p.num_vertices() != q.num_vertices()
        || p.num_edges() != q.num_edges()
        || p.num_faces() != q.num_faces()
        || p.num_faces() == 0
    {
        return out;
    }
    let Some(dp) = Darts::new(p) else { return out };
    let qr = q.reversed();
    let mut targets = vec![(q, false)];
    if reflections {
        targets.push((&qr, true));
    }
    for (target, reversing) in targets {
        let Some(dq) = Darts::new(target) else { continue };
        for g in 0..target.num_faces() {
            if target.face(g).len() != p.face(0).len() {
                continue;
            }
            for j in 0..target.face(g).len() {
                if let Some(iso) = extend(p, &dp, target, &dq, (0, 0), (g, j), reversing) {
                    if !out.contains(&iso) {
                        out.push(iso);
                        if out.len() >= limit {
                            return out;
                        }
                    }
                }
            }
        }
    }
    out
}

fn extend(
    p: &AbstractPolyhedron,
    dp: &Darts,
    q: &AbstractPolyhedron,
    dq: &Darts,
    root_p: Dart,
    root_q: Dart,
    reversing: bool,
) -> Option<Isomorphism> {
    let mut dart_map: Vec<Vec<Option<Dart>>> = p.faces().iter().map(|b| vec![None; b.len()]).collect();
    let mut vertex_map = vec![usize::MAX; p.num_vertices()];
    let mut edge_map = vec![usize::MAX; p.num_edges()];
    let mut face_map = vec![usize::MAX; p.num_faces()];
    let mut queue = VecDeque::from([(root_p, root_q)]);
    dart_map[root_p.0][root_p.1] = Some(root_q);
    let mut assign = |a: Dart, b: Dart, queue: &mut VecDeque<(Dart, Dart)>| -> bool {
        match dart_map[a.0][a.1] {
            Some(x) => x == b,
            None => {
                dart_map[a.0][a.1] = Some(b);
                queue.push_back((a, b));
                true
            }
        }
    };
    while let Some((a, b)) = queue.pop_front() {
        let (lp, lq) = (p.face(a.0).len(), q.face(b.0).len());
        if lp != lq {
            return None;
        }
        let sa = p.face(a.0)[a.1];
        let sb = q.face(b.0)[b.1];
        for (map, x, y) in [
            (&mut vertex_map, p.start_vertex(sa), q.start_vertex(sb)),
            (&mut edge_map, sa.edge, sb.edge),
            (&mut face_map, a.0, b.0),
        ] {
            if map[x] == usize::MAX {
                map[x] = y;
            } else if map[x] != y {
                return None;
            }
        }
        let next_a = (a.0, (a.1 + 1) % lp);
        let next_b = (b.0, (b.1 + 1) % lq);
        if !assign(next_a, next_b, &mut queue) {
            return None;
        }
        let ta = dp.twin[a.0][a.1];
        let tb = dq.twin[b.0][b.1];
        if !assign(ta, tb, &mut queue) {
            return None;
        }
    }
    let bijective = |m: &[usize], n: usize| {
        let mut seen = vec![false; n];
        m.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
    };
    if !bijective(&vertex_map, q.num_vertices()) || !bijective(&edge_map, q.num_edges()) || !bijective(&face_map, q.num_faces())
    {
        return None;
    }
    Some(Isomorphism { vertex_map, edge_map, face_map, orientation_reversing: reversing })
}
