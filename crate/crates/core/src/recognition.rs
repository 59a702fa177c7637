//! Promise checks (triangles, induced P7), odd-cycle anchors and blown-up C7
//! recognition.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{tree_cycle, Bipartiteness, Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Triangle,
    InducedP7,
    StructureBreach,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::Triangle => "triangle",
            ViolationKind::InducedP7 => "induced-p7",
            ViolationKind::StructureBreach => "structure-breach",
        })
    }
}

/// Evidence that an input lies outside the {P7, triangle}-free class, or that
/// a structural check failed without a directly constructible witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromiseViolation {
    pub kind: ViolationKind,
    pub vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl PromiseViolation {
    pub fn triangle(a: usize, b: usize, c: usize) -> Self {
        PromiseViolation { kind: ViolationKind::Triangle, vertices: vec![a, b, c], note: String::new() }
    }

    pub fn induced_p7(path: Vec<usize>) -> Self {
        PromiseViolation { kind: ViolationKind::InducedP7, vertices: path, note: String::new() }
    }

    pub fn breach(note: impl Into<String>, vertices: Vec<usize>) -> Self {
        PromiseViolation { kind: ViolationKind::StructureBreach, vertices, note: note.into() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// Checks the witness against `g`: a triangle must have three mutual edges,
    /// an induced P7 exactly its six path edges.
    pub fn verify(&self, g: &Graph) -> bool {
        match self.kind {
            ViolationKind::Triangle => match self.vertices[..] {
                [a, b, c] => {
                    a.max(b).max(c) < g.n() && g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)
                }
                _ => false,
            },
            ViolationKind::InducedP7 => self.vertices.len() == 7 && is_induced_path(g, &self.vertices),
            ViolationKind::StructureBreach => !self.note.is_empty(),
        }
    }

    /// Rewrites vertex ids through `map` (component-local to global ids).
    pub fn relabel(mut self, map: &[usize]) -> Self {
        for v in &mut self.vertices {
            *v = map[*v];
        }
        self
    }
}

/// True iff `path` lists distinct vertices inducing exactly a path in that order.
pub fn is_induced_path(g: &Graph, path: &[usize]) -> bool {
    if path.iter().any(|&v| v >= g.n()) {
        return false;
    }
    for i in 0..path.len() {
        for j in i + 1..path.len() {
            if path[i] == path[j] || g.has_edge(path[i], path[j]) != (j == i + 1) {
                return false;
            }
        }
    }
    true
}

/// Turns a candidate walk into a witness: an induced path on at least seven
/// vertices yields its first seven, a triangle among the given vertices
/// yields that triangle, anything else a breach carrying `note`.
pub(crate) fn witness_from_path(g: &Graph, path: &[usize], note: &str) -> PromiseViolation {
    if path.len() >= 7 && is_induced_path(g, path) {
        return PromiseViolation::induced_p7(path[..7].to_vec());
    }
    for i in 0..path.len() {
        for j in i + 1..path.len() {
            for k in j + 1..path.len() {
                let (a, b, c) = (path[i], path[j], path[k]);
                if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                    return PromiseViolation::triangle(a, b, c);
                }
            }
        }
    }
    PromiseViolation::breach(note, path.to_vec())
}

/// Lexicographically smallest triangle `(a, b, c)` with `a < b < c`.
pub fn find_triangle(g: &Graph) -> Option<(usize, usize, usize)> {
    for u in 0..g.n() {
        let nu = g.neighbour_set(u);
        for &v in g.neighbours(u).iter().filter(|&&v| v > u) {
            if let Some(w) = nu.first_common_after(&g.neighbour_set(v), v) {
                return Some((u, v, w));
            }
        }
    }
    None
}

/// Depth-first search for an induced path on `target` vertices, extending
/// only at the right end. `blocked` holds every vertex already on the path or
/// adjacent to a path vertex other than the last one.
fn extend_induced(
    g: &Graph,
    path: &mut Vec<usize>,
    blocked: &mut VertexSet,
    target: usize,
) -> bool {
    if path.len() == target {
        return true;
    }
    let last = *path.last().unwrap();
    let mut cands = g.neighbour_set(last).into_owned();
    cands.difference_with(blocked);
    if cands.is_empty() {
        return false;
    }
    // After stepping past `last`, its whole neighbourhood becomes blocked.
    let before = blocked.clone();
    blocked.union_with(&g.neighbour_set(last));
    blocked.insert(last);
    for x in cands.iter() {
        path.push(x);
        if extend_induced(g, path, blocked, target) {
            return true;
        }
        path.pop();
    }
    *blocked = before;
    false
}

fn find_induced_path_raw(g: &Graph, target: usize) -> Option<Vec<usize>> {
    for s in 0..g.n() {
        let mut path = vec![s];
        let mut blocked = VertexSet::new(g.n());
        blocked.insert(s);
        if extend_induced(g, &mut path, &mut blocked, target) {
            return Some(path);
        }
    }
    None
}

/// An induced P7 in vertex order, if one exists.
///
/// Two false twins never lie on a common induced P7, so the search runs on
/// one representative per twin class; this makes blow-ups cheap to check.
pub fn find_induced_p7(g: &Graph) -> Option<Vec<usize>> {
    let reps: Vec<usize> = false_twin_classes(g).iter().map(|c| c.first().unwrap()).collect();
    if reps.len() == g.n() {
        return find_induced_path_raw(g, 7);
    }
    let q = g.induced(&reps);
    find_induced_path_raw(&q, 7).map(|p| p.into_iter().map(|v| reps[v]).collect())
}

/// An induced P7 that uses the edge `uv`, if one exists. Any induced P7 that
/// appears when `uv` is inserted must contain it, which keeps incremental
/// generators cheap.
pub fn find_induced_p7_through(g: &Graph, u: usize, v: usize) -> Option<Vec<usize>> {
    debug_assert!(g.has_edge(u, v));
    let mut path = VecDeque::from([u, v]);
    if grow_both(g, &mut path, true) {
        Some(path.into_iter().collect())
    } else {
        None
    }
}

fn grow_both(g: &Graph, path: &mut VecDeque<usize>, right_phase: bool) -> bool {
    if path.len() == 7 {
        return true;
    }
    let fits = |path: &VecDeque<usize>, x: usize, end: usize| {
        !path.contains(&x) && path.iter().all(|&p| p == end || !g.has_edge(p, x))
    };
    if right_phase {
        let end = *path.back().unwrap();
        for &x in g.neighbours(end) {
            if fits(path, x, end) {
                path.push_back(x);
                if grow_both(g, path, true) {
                    return true;
                }
                path.pop_back();
            }
        }
    }
    let end = *path.front().unwrap();
    for &x in g.neighbours(end) {
        if fits(path, x, end) {
            path.push_front(x);
            if grow_both(g, path, false) {
                return true;
            }
            path.pop_front();
        }
    }
    false
}

/// A minimum-length odd cycle in cyclic order, or `None` for bipartite graphs.
///
/// The cycle starts at the smallest vertex lying on any shortest odd cycle and
/// follows breadth-first parents (first discoverer, neighbours ascending).
pub fn shortest_odd_cycle(g: &Graph) -> Option<Vec<usize>> {
    if let Bipartiteness::Bipartite(..) = g.bipartite_check() {
        return None;
    }
    if let Some((a, b, c)) = find_triangle(g) {
        return Some(vec![a, b, c]);
    }
    let n = g.n();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        // Triangle-free, so depth 2 (a five-cycle) cannot be beaten.
        if matches!(best, Some((2, _))) {
            break;
        }
        let limit = best.as_ref().map_or(usize::MAX, |(d, _)| *d);
        let mut touched = vec![root];
        dist[root] = 0;
        let mut layer = vec![root];
        let mut depth = 0;
        let mut found = None;
        while !layer.is_empty() && depth + 1 < limit && found.is_none() {
            let mut next = Vec::new();
            for &u in &layer {
                for &w in g.neighbours(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = depth + 1;
                        parent[w] = u;
                        touched.push(w);
                        next.push(w);
                    }
                }
            }
            depth += 1;
            'scan: for &u in &next {
                for &w in g.neighbours(u) {
                    if dist[w] == depth && w > u {
                        found = Some((u, w));
                        break 'scan;
                    }
                }
            }
            layer = next;
        }
        if let Some((u, w)) = found {
            best = Some((depth, tree_cycle(u, w, &parent, &dist)));
        }
        for v in touched {
            dist[v] = usize::MAX;
        }
    }
    best.map(|(_, mut cycle)| {
        // `tree_cycle` runs u -> root -> w; rotate so the root comes first.
        let pos = cycle.iter().position(|&v| v == *cycle.iter().min().unwrap()).unwrap();
        cycle.rotate_left(pos);
        if cycle.len() > 2 && cycle[cycle.len() - 1] < cycle[1] {
            cycle[1..].reverse();
        }
        cycle
    })
}

/// Classes of vertices with identical neighbourhoods, ordered by smallest member.
pub fn false_twin_classes(g: &Graph) -> Vec<VertexSet> {
    let mut by_nbhd: HashMap<&[usize], usize> = HashMap::new();
    let mut classes: Vec<VertexSet> = Vec::new();
    for v in 0..g.n() {
        let idx = *by_nbhd.entry(g.neighbours(v)).or_insert_with(|| {
            classes.push(VertexSet::new(g.n()));
            classes.len() - 1
        });
        classes[idx].insert(v);
    }
    classes
}

/// A graph obtained from C7 by replacing each cycle vertex with a stable class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinDecomposition {
    /// Cyclically ordered classes; consecutive classes are completely joined.
    pub classes: Vec<VertexSet>,
    /// The anchor cycle vertex in each class.
    pub representatives: Vec<usize>,
}

impl TwinDecomposition {
    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(v))
    }
}

/// Recognises `g` as a blown-up C7 around the induced seven-cycle `c7`.
///
/// Requires `g` connected with no odd cycle shorter than seven. Failures carry
/// a triangle or induced-P7 witness when one can be read off directly.
pub fn recognize_blownup_c7(g: &Graph, c7: &[usize]) -> Result<TwinDecomposition, PromiseViolation> {
    assert_eq!(c7.len(), 7);
    let n = g.n();
    let at = |i: usize| c7[i % 7];
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in c7.iter().enumerate() {
        pos[v] = i;
    }
    let mut classes = vec![VertexSet::new(n); 7];
    let mut class_of = vec![usize::MAX; n];
    for (i, &v) in c7.iter().enumerate() {
        classes[i].insert(v);
        class_of[v] = i;
    }
    let mut dist = vec![usize::MAX; n];
    let mut queue: VecDeque<usize> = c7.iter().copied().collect();
    for &v in c7 {
        dist[v] = 0;
    }
    let mut order = Vec::new();
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbours(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    if let Some(v) = (0..n).find(|&v| dist[v] == usize::MAX) {
        return Err(PromiseViolation::breach("graph is not connected", vec![v]));
    }

    for &x in order.iter().filter(|&&x| dist[x] == 1) {
        let mut on: Vec<usize> = g.neighbours(x).iter().filter(|&&w| pos[w] != usize::MAX).map(|&w| pos[w]).collect();
        on.sort_unstable();
        for (k, &a) in on.iter().enumerate() {
            for &b in &on[k + 1..] {
                let gap = (b - a).min(7 - (b - a));
                if gap == 1 {
                    return Err(PromiseViolation::triangle(x, c7[a], c7[b]));
                }
            }
        }
        match on[..] {
            [i] => {
                let path: Vec<usize> = std::iter::once(x).chain((0..6).map(|s| at(i + s))).collect();
                return Err(witness_from_path(g, &path, "vertex with a single cycle neighbour"));
            }
            [a, b] if (b - a) == 2 || (b - a) == 5 => {
                let i = if b - a == 2 { a + 1 } else { (b + 1) % 7 };
                classes[i].insert(x);
                class_of[x] = i;
            }
            _ => {
                return Err(PromiseViolation::breach(
                    "internal: cycle neighbours at distance three close a five-cycle",
                    std::iter::once(x).chain(on.iter().map(|&i| c7[i])).collect(),
                ));
            }
        }
    }
    if let Some(&x) = order.iter().find(|&&x| dist[x] >= 2) {
        let y = *g.neighbours(x).iter().find(|&&y| dist[y] == dist[x] - 1).unwrap();
        if dist[y] == 1 {
            let i = class_of[y];
            let path: Vec<usize> = [x, y].into_iter().chain((1..6).map(|s| at(i + s))).collect();
            return Err(witness_from_path(g, &path, "vertex outside the blown-up classes"));
        }
        return Err(PromiseViolation::breach("vertex outside the blown-up classes", vec![x, y]));
    }

    for (u, w) in g.edges() {
        let (i, j) = (class_of[u], class_of[w]);
        let gap = (i + 7 - j) % 7;
        match gap.min(7 - gap) {
            0 => return Err(PromiseViolation::triangle(u, w, at(i + 6))),
            1 => {}
            2 => {
                let mid = if (j + 7 - i) % 7 == 2 { at(i + 1) } else { at(j + 1) };
                return Err(PromiseViolation::triangle(u, w, mid));
            }
            _ => {
                return Err(PromiseViolation::breach(
                    "internal: edge between classes at distance three closes a five-cycle",
                    vec![u, w],
                ))
            }
        }
    }
    for i in 0..7 {
        let j = (i + 1) % 7;
        for x in classes[i].iter() {
            for y in classes[j].iter() {
                if !g.has_edge(x, y) {
                    let path = vec![x, at(i + 6), at(i + 5), at(i + 4), at(i + 3), at(i + 2), y];
                    return Err(witness_from_path(g, &path, "consecutive classes not completely joined"));
                }
            }
        }
    }
    Ok(TwinDecomposition { classes, representatives: c7.to_vec() })
}

/// Ok iff `g` is triangle-free and P7-free; otherwise a verified witness.
pub fn check_promise(g: &Graph) -> Result<(), PromiseViolation> {
    if let Some((a, b, c)) = find_triangle(g) {
        return Err(PromiseViolation::triangle(a, b, c));
    }
    if let Some(p) = find_induced_p7(g) {
        return Err(PromiseViolation::induced_p7(p));
    }
    Ok(())
}
