//! Simple undirected graphs and the polyhedral-graph (Steinitz) test.
//!
//! Planarity uses the path-embedding algorithm of Demoucron, Malgrange and
//! Pertuiset on 2-connected input. 3-connectivity is decided by removing every
//! vertex and every vertex pair, which is fine for graphs of up to about 10³
//! vertices.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Rejects loops, repeated edges and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidInput(format!("repeated edge ({u},{v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Self { adj, edges: seen.into_iter().collect() })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::new(n, &edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).expect("path graph is simple")
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Connectivity of the graph with `removed` vertices deleted.
    pub fn connected_without(&self, removed: &[usize]) -> bool {
        let n = self.adj.len();
        let mut gone = vec![false; n];
        for &r in removed {
            gone[r] = true;
        }
        let Some(start) = (0..n).find(|&v| !gone[v]) else {
            return true;
        };
        let mut seen = gone.clone();
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n - removed.iter().collect::<BTreeSet<_>>().len()
    }

    /// A set of at most two vertices whose removal disconnects the graph, if any.
    /// Graphs with fewer than four vertices are never 3-connected; for them the
    /// witness is the whole vertex set.
    pub fn separating_set(&self) -> Option<Vec<usize>> {
        let n = self.adj.len();
        if n < 4 {
            return Some((0..n).collect());
        }
        if !self.connected_without(&[]) {
            return Some(Vec::new());
        }
        for a in 0..n {
            if !self.connected_without(&[a]) {
                return Some(vec![a]);
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if !self.connected_without(&[a, b]) {
                    return Some(vec![a, b]);
                }
            }
        }
        None
    }

    pub fn is_three_connected(&self) -> bool {
        self.separating_set().is_none()
    }
}

/// Outcome of the Steinitz test with the reason for failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SteinitzVerdict {
    Polyhedral,
    NotThreeConnected { separating_set: Vec<usize> },
    NonPlanar,
}

pub fn steinitz_verdict(g: &Graph) -> SteinitzVerdict {
    if let Some(s) = g.separating_set() {
        return SteinitzVerdict::NotThreeConnected { separating_set: s };
    }
    let n = g.num_vertices();
    if g.num_edges() > 3 * n - 6 || !planar_biconnected(g) {
        return SteinitzVerdict::NonPlanar;
    }
    SteinitzVerdict::Polyhedral
}

/// True iff `g` is planar and 3-connected, i.e. the graph of a convex polyhedron.
pub fn is_steinitz(g: &Graph) -> bool {
    steinitz_verdict(g) == SteinitzVerdict::Polyhedral
}

/// Planarity of a 2-connected graph by incremental path embedding.
fn planar_biconnected(g: &Graph) -> bool {
    let n = g.num_vertices();
    let Some(cycle) = find_cycle(g) else {
        return true;
    };
    let mut on = vec![false; n];
    let mut embedded: BTreeSet<(usize, usize)> = BTreeSet::new();
    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    for i in 0..cycle.len() {
        on[cycle[i]] = true;
        embedded.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut faces = vec![cycle.clone(), cycle];

    while embedded.len() < g.num_edges() {
        let fragments = fragments(g, &on, &embedded);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment remains");
        let path = fragment_path(g, &fragments[fi], &on);
        for w in path.windows(2) {
            embedded.insert(key(w[0], w[1]));
        }
        for &v in &path {
            on[v] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
    true
}

struct Fragment {
    attachments: Vec<usize>,
    /// Non-embedded vertices of the fragment; empty for a single chord.
    interior: Vec<usize>,
}

fn fragments(g: &Graph, on: &[bool], embedded: &BTreeSet<(usize, usize)>) -> Vec<Fragment> {
    let n = g.num_vertices();
    let mut out = Vec::new();
    for &(u, v) in g.edges() {
        if on[u] && on[v] && !embedded.contains(&(u, v)) {
            out.push(Fragment { attachments: vec![u, v], interior: Vec::new() });
        }
    }
    let mut comp = vec![usize::MAX; n];
    for s in 0..n {
        if on[s] || comp[s] != usize::MAX {
            continue;
        }
        let mut interior = vec![s];
        let mut attachments = BTreeSet::new();
        comp[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if on[w] {
                    attachments.insert(w);
                } else if comp[w] == usize::MAX {
                    comp[w] = s;
                    interior.push(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment { attachments: attachments.into_iter().collect(), interior });
    }
    out
}

/// A path between two distinct attachments through the fragment interior.
fn fragment_path(g: &Graph, frag: &Fragment, on: &[bool]) -> Vec<usize> {
    if frag.interior.is_empty() {
        return frag.attachments.clone();
    }
    let inside: BTreeSet<usize> = frag.interior.iter().copied().collect();
    let a = frag.attachments[0];
    // BFS from `a` through interior vertices until another attachment is reached.
    let mut parent = std::collections::BTreeMap::new();
    let mut queue = VecDeque::new();
    for &w in g.neighbors(a) {
        if inside.contains(&w) && !parent.contains_key(&w) {
            parent.insert(w, a);
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if on[w] && w != a {
                let mut path = vec![w, u];
                let mut cur = u;
                while let Some(&p) = parent.get(&cur) {
                    path.push(p);
                    if p == a {
                        break;
                    }
                    cur = p;
                }
                path.reverse();
                return path;
            }
            if inside.contains(&w) && !parent.contains_key(&w) {
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragments of a 2-connected graph have two attachments")
}

fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a1 = path[0];
    let a2 = *path.last().unwrap();
    let n = face.len();
    let i1 = face.iter().position(|&v| v == a1).unwrap();
    let i2 = face.iter().position(|&v| v == a2).unwrap();
    let inner = &path[1..path.len() - 1];
    let mut f1 = Vec::new();
    let mut i = i1;
    loop {
        f1.push(face[i]);
        if i == i2 {
            break;
        }
        i = (i + 1) % n;
    }
    f1.extend(inner.iter().rev());
    let mut f2 = Vec::new();
    let mut i = i2;
    loop {
        f2.push(face[i]);
        if i == i1 {
            break;
        }
        i = (i + 1) % n;
    }
    f2.extend(inner.iter());
    (f1, f2)
}

fn find_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.num_vertices();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
            if *idx < g.neighbors(u).len() {
                let w = g.neighbors(u)[*idx];
                *idx += 1;
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    stack.push((w, 0));
                } else if w != parent[u] && depth[w] < depth[u] {
                    let mut cycle = vec![u];
                    let mut cur = u;
                    while cur != w {
                        cur = parent[cur];
                        cycle.push(cur);
                    }
                    return Some(cycle);
                }
            } else {
                stack.pop();
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Graph {
        let e = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)];
        Graph::new(8, &e).unwrap()
    }

    #[test]
    fn cube_is_polyhedral() {
        assert!(is_steinitz(&cube()));
    }

    #[test]
    fn k5_and_k33_are_not_planar() {
        assert_eq!(steinitz_verdict(&Graph::complete(5)), SteinitzVerdict::NonPlanar);
        let k33: Vec<_> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
        let g = Graph::new(6, &k33).unwrap();
        assert!(g.is_three_connected());
        assert_eq!(steinitz_verdict(&g), SteinitzVerdict::NonPlanar);
    }

    #[test]
    fn k4_yes_path_no() {
        assert!(is_steinitz(&Graph::complete(4)));
        assert!(!is_steinitz(&Graph::path(6)));
    }

    #[test]
    fn petersen_is_not_planar() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        let g = Graph::new(10, &e).unwrap();
        assert!(g.is_three_connected());
        assert!(!is_steinitz(&g));
    }

    #[test]
    fn wheel_is_polyhedral_and_two_connected_prism_pair_is_not() {
        let mut e: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        e.extend((0..6).map(|i| (i, 6)));
        assert!(is_steinitz(&Graph::new(7, &e).unwrap()));
        // Two squares sharing an edge: 2-connected only.
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 2)]).unwrap();
        assert!(matches!(steinitz_verdict(&g), SteinitzVerdict::NotThreeConnected { .. }));
    }

    #[test]
    fn rejects_non_simple() {
        assert!(Graph::new(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(2, &[(1, 1)]).is_err());
    }
}
