//! Decomposition of a connected graph around an induced five-cycle `C`.
//!
//! Every neighbour of `C` lies in one of ten stable sets: `T_i` (adjacent to
//! exactly `c_{i-1}` and `c_{i+1}`) or `D_i` (adjacent to exactly `c_i`).
//! `S` is `C` together with these sets and `W` is the set of vertices isolated
//! in `G - S`. Construction validates the structure that the colouring
//! engine relies on and reports a triangle or induced P7 when it fails.
//!
//! Indices are 0-based and taken modulo 5.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::{Graph, VertexSet};
use crate::recognition::{shortest_odd_cycle, witness_from_path, PromiseViolation};

#[inline]
pub(crate) fn md(i: usize) -> usize {
    i % 5
}

/// A non-trivial component of `G - S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentInfo {
    pub vertices: VertexSet,
    /// Stable bipartition `(U_1, U_2)`.
    pub sides: (VertexSet, VertexSet),
    /// Common neighbourhood in `S` of each side.
    pub side_nbhd: (VertexSet, VertexSet),
    /// Neighbourhood of the whole component in each `T_i`.
    pub t_nbhd: Vec<VertexSet>,
}

/// A non-trivial component of `G[W ∪ D_i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WdComponent {
    pub index: usize,
    pub vertices: VertexSet,
    pub w_side: VertexSet,
    pub d_side: VertexSet,
    /// Common `T_i`-neighbourhood of the `W` side and of the `D_i` side.
    pub w_t_nbhd: VertexSet,
    pub d_t_nbhd: VertexSet,
}

impl WdComponent {
    pub fn t_nbhd(&self) -> VertexSet {
        let mut s = self.w_t_nbhd.clone();
        s.union_with(&self.d_t_nbhd);
        s
    }
}

/// Inclusion chain of component neighbourhoods inside `T_i`.
///
/// `levels[0] = {v0}`, `levels[1..=r]` are the distinct non-empty
/// neighbourhoods in increasing order and `levels[r + 1] = T_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub index: usize,
    pub v0: usize,
    pub levels: Vec<VertexSet>,
    pub r: usize,
}

impl Chain {
    /// `N_{k+1} \ N_k`, the candidates for the witness vertex at level `k`.
    pub fn step(&self, k: usize) -> VertexSet {
        let mut s = self.levels[k + 1].clone();
        s.difference_with(&self.levels[k]);
        s
    }
}

#[derive(Debug, Clone)]
pub struct Skeleton {
    /// Anchor cycle `c_0 .. c_4` in cyclic order.
    pub c: [usize; 5],
    pub t: Vec<VertexSet>,
    pub d: Vec<VertexSet>,
    pub s: VertexSet,
    pub w: VertexSet,
    pub components: Vec<ComponentInfo>,
    pub wd: Vec<Vec<WdComponent>>,
    /// One chain per non-empty `T_i`.
    pub chains: Vec<Option<Chain>>,
    /// For each vertex: `Some(i)` if it lies in `T_i`.
    t_index: Vec<Option<usize>>,
}

impl Skeleton {
    pub fn t_index(&self, v: usize) -> Option<usize> {
        self.t_index[v]
    }

    pub fn chain(&self, i: usize) -> Option<&Chain> {
        self.chains[i].as_ref()
    }

    pub fn report(&self, label: impl Fn(usize) -> usize) -> SkeletonReport {
        let ids = |s: &VertexSet| s.iter().map(&label).collect::<Vec<_>>();
        SkeletonReport {
            cycle: self.c.iter().map(|&v| label(v)).collect(),
            t: self.t.iter().map(ids).collect(),
            d: self.d.iter().map(ids).collect(),
            w: ids(&self.w),
            components: self
                .components
                .iter()
                .map(|c| ComponentReport {
                    sides: [ids(&c.sides.0), ids(&c.sides.1)],
                    side_nbhd: [ids(&c.side_nbhd.0), ids(&c.side_nbhd.1)],
                })
                .collect(),
            wd_components: self
                .wd
                .iter()
                .flatten()
                .map(|c| WdReport { index: c.index + 1, w_side: ids(&c.w_side), d_side: ids(&c.d_side) })
                .collect(),
            chains: self
                .chains
                .iter()
                .flatten()
                .map(|ch| ChainReport {
                    index: ch.index + 1,
                    v0: label(ch.v0),
                    r: ch.r,
                    levels: ch.levels.iter().map(ids).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SkeletonReport {
    pub cycle: Vec<usize>,
    pub t: Vec<Vec<usize>>,
    pub d: Vec<Vec<usize>>,
    pub w: Vec<usize>,
    pub components: Vec<ComponentReport>,
    pub wd_components: Vec<WdReport>,
    pub chains: Vec<ChainReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub sides: [Vec<usize>; 2],
    pub side_nbhd: [Vec<usize>; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct WdReport {
    pub index: usize,
    pub w_side: Vec<usize>,
    pub d_side: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub index: usize,
    pub v0: usize,
    pub r: usize,
    pub levels: Vec<Vec<usize>>,
}

/// Builds and validates the decomposition around `c5`, including the
/// `G[W ∪ D_i]` components and all chains.
pub fn build_skeleton(g: &Graph, c5: &[usize]) -> Result<Skeleton, PromiseViolation> {
    let n = g.n();
    let c: [usize; 5] = c5.try_into().expect("anchor must have five vertices");
    for i in 0..5 {
        for j in i + 1..5 {
            let consecutive = j == i + 1 || (i == 0 && j == 4);
            if g.has_edge(c[i], c[j]) != consecutive {
                return Err(PromiseViolation::breach("anchor is not an induced five-cycle", c.to_vec()));
            }
        }
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in c.iter().enumerate() {
        pos[v] = i;
    }

    let mut t = vec![VertexSet::new(n); 5];
    let mut d = vec![VertexSet::new(n); 5];
    let mut t_index = vec![None; n];
    let mut d_index = vec![None; n];
    for x in (0..n).filter(|&x| pos[x] == usize::MAX) {
        let mut on: Vec<usize> = g.neighbours(x).iter().filter(|&&w| pos[w] != usize::MAX).map(|&w| pos[w]).collect();
        on.sort_unstable();
        match on[..] {
            [] => {}
            [i] => {
                d[i].insert(x);
                d_index[x] = Some(i);
            }
            [a, b] if b - a == 2 || b - a == 3 => {
                let i = if b - a == 2 { a + 1 } else { md(b + 1) };
                t[i].insert(x);
                t_index[x] = Some(i);
            }
            _ => {
                let consecutive = on.iter().flat_map(|&a| on.iter().map(move |&b| (a, b))).find(|&(a, b)| b == md(a + 1));
                return Err(match consecutive {
                    Some((a, b)) => PromiseViolation::triangle(x, c[a], c[b]),
                    None => PromiseViolation::breach("illegal neighbourhood on the anchor cycle", vec![x]),
                });
            }
        }
    }
    for (x, y) in g.edges() {
        if let (Some(i), Some(j)) = (t_index[x], t_index[y]) {
            if i == j {
                return Err(PromiseViolation::triangle(x, y, c[md(i + 4)]));
            }
        }
        if let (Some(i), Some(j)) = (d_index[x], d_index[y]) {
            if i == j {
                return Err(PromiseViolation::triangle(x, y, c[i]));
            }
        }
    }

    let mut s = VertexSet::from_iter(n, c.iter().copied());
    for i in 0..5 {
        s.union_with(&t[i]);
        s.union_with(&d[i]);
    }
    let mut t_all = VertexSet::new(n);
    for ti in &t {
        t_all.union_with(ti);
    }

    let ctx = Ctx { g, c, t: &t, d: &d, s: &s, t_index: &t_index, d_index: &d_index };
    let mut w = VertexSet::new(n);
    let mut components = Vec::new();
    for comp in components_within(g, &|v| !s.contains(v)) {
        if comp.len() == 1 {
            w.insert(comp[0]);
        } else {
            components.push(ctx.component_info(&comp, &t_all)?);
        }
    }

    ctx.check_no_consecutive_d(&w)?;
    let mut wd = Vec::with_capacity(5);
    for i in 0..5 {
        wd.push(ctx.wd_components(&w, i)?);
    }
    let mut sk = Skeleton { c, t, d, s, w, components, wd, chains: vec![None; 5], t_index };
    for i in 0..5 {
        if !sk.t[i].is_empty() {
            sk.chains[i] = Some(build_chain(g, &sk, i)?);
        }
    }
    Ok(sk)
}

/// Non-trivial components of `G[W ∪ D_i]` of an existing skeleton.
pub fn wd_components(g: &Graph, sk: &Skeleton, i: usize) -> Result<Vec<WdComponent>, PromiseViolation> {
    let d_index: Vec<Option<usize>> = (0..g.n()).map(|v| (0..5).find(|&j| sk.d[j].contains(v))).collect();
    let ctx = Ctx { g, c: sk.c, t: &sk.t, d: &sk.d, s: &sk.s, t_index: &sk.t_index, d_index: &d_index };
    ctx.check_no_consecutive_d(&sk.w)?;
    ctx.wd_components(&sk.w, i)
}

/// The inclusion chain of `T_i`-neighbourhoods of non-trivial components of
/// `G - S` and `G[W ∪ D_i]`. Requires `T_i` non-empty.
pub fn build_chain(g: &Graph, sk: &Skeleton, i: usize) -> Result<Chain, PromiseViolation> {
    let ti = &sk.t[i];
    assert!(!ti.is_empty(), "chain requested for empty T_{i}");
    let mut found: Vec<(VertexSet, &VertexSet)> = Vec::new();
    let candidates = sk
        .components
        .iter()
        .map(|m| (m.t_nbhd[i].clone(), &m.vertices))
        .chain(sk.wd[i].iter().map(|m| (m.t_nbhd(), &m.vertices)));
    for (nb, verts) in candidates {
        if !nb.is_empty() && !found.iter().any(|(f, _)| *f == nb) {
            found.push((nb, verts));
        }
    }
    found.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.to_vec().cmp(&b.0.to_vec())));
    for pair in found.windows(2) {
        let ((a, m1), (b, m2)) = (&pair[0], &pair[1]);
        if !a.is_subset(b) {
            return Err(crossing_witness(g, sk, i, (a, m1), (b, m2)));
        }
    }
    let v0 = found.first().map_or_else(|| ti.first().unwrap(), |(f, _)| f.first().unwrap());
    let mut levels = vec![VertexSet::from_iter(g.n(), [v0])];
    levels.extend(found.iter().map(|(f, _)| f.clone()));
    levels.push(ti.clone());
    Ok(Chain { index: i, v0, r: found.len(), levels })
}

/// Two components whose `T_i`-neighbourhoods `a`, `b` cross give the path
/// `x y z c_{i+1} u v w` with `u ∈ a \ b` and `z ∈ b \ a`.
fn crossing_witness(
    g: &Graph,
    sk: &Skeleton,
    i: usize,
    (a, m1): (&VertexSet, &VertexSet),
    (b, m2): (&VertexSet, &VertexSet),
) -> PromiseViolation {
    let pick = |own: &VertexSet, other: &VertexSet, m: &VertexSet| -> Option<[usize; 3]> {
        for u in own.iter().filter(|&u| !other.contains(u)) {
            for v in m.iter().filter(|&v| g.has_edge(u, v)) {
                if let Some(&w) = g.neighbours(v).iter().find(|&&w| m.contains(w)) {
                    return Some([u, v, w]);
                }
            }
        }
        None
    };
    match (pick(a, b, m1), pick(b, a, m2)) {
        (Some([u, v, w]), Some([z, y, x])) => {
            let path = [x, y, z, sk.c[md(i + 1)], u, v, w];
            witness_from_path(g, &path, "component neighbourhoods in T are not nested")
        }
        _ => PromiseViolation::breach("component neighbourhoods in T are not nested", a.iter().chain(b.iter()).collect()),
    }
}

struct Ctx<'a> {
    g: &'a Graph,
    c: [usize; 5],
    t: &'a [VertexSet],
    d: &'a [VertexSet],
    s: &'a VertexSet,
    t_index: &'a [Option<usize>],
    d_index: &'a [Option<usize>],
}

impl Ctx<'_> {
    fn cyc(&self, i: usize) -> usize {
        self.c[md(i)]
    }

    fn component_info(&self, comp: &[usize], t_all: &VertexSet) -> Result<ComponentInfo, PromiseViolation> {
        let g = self.g;
        let n = g.n();
        let vertices = VertexSet::from_iter(n, comp.iter().copied());
        let inside = |v: usize| vertices.contains(v);

        // No vertex of a non-trivial component sees any D_i.
        for &x in comp {
            let y = *g.neighbours(x).iter().find(|&&y| inside(y)).unwrap();
            if let Some(&u) = g.neighbours(x).iter().find(|&&u| self.d_index[u].is_some()) {
                let i = self.d_index[u].unwrap();
                if g.has_edge(y, u) {
                    return Err(PromiseViolation::triangle(x, y, u));
                }
                let path = [y, x, u, self.cyc(i), self.cyc(i + 1), self.cyc(i + 2), self.cyc(i + 3)];
                return Err(witness_from_path(g, &path, "component edge next to a D vertex"));
            }
        }

        let mut side = vec![u8::MAX; n];
        side[comp[0]] = 0;
        let mut queue = VecDeque::from([comp[0]]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbours(u).iter().filter(|&&w| inside(w)) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return Err(self.odd_cycle_witness(&vertices));
                }
            }
        }

        // Ends of every induced P3 inside the component see the same T-vertices.
        let t_of = |v: usize| {
            let mut s = g.neighbour_set(v).into_owned();
            s.intersect_with(t_all);
            s
        };
        for &y in comp {
            let nb: Vec<usize> = g.neighbours(y).iter().copied().filter(|&x| inside(x)).collect();
            let x = nb[0];
            let tx = t_of(x);
            for &z in &nb[1..] {
                if g.has_edge(x, z) {
                    return Err(PromiseViolation::triangle(x, y, z));
                }
                let tz = t_of(z);
                if tz != tx {
                    return Err(self.p3_witness((x, &tx), y, (z, &tz), "component P3 ends see different T-vertices"));
                }
            }
        }

        let mut u1 = VertexSet::new(n);
        let mut u2 = VertexSet::new(n);
        for &v in comp {
            if side[v] == 0 { u1.insert(v) } else { u2.insert(v) };
        }
        let s_of = |v: usize| {
            let mut s = g.neighbour_set(v).into_owned();
            s.intersect_with(self.s);
            s
        };
        let n1 = s_of(u1.first().unwrap());
        let n2 = s_of(u2.first().unwrap());
        for (side_set, nb) in [(&u1, &n1), (&u2, &n2)] {
            if let Some(v) = side_set.iter().find(|&v| s_of(v) != *nb) {
                return Err(PromiseViolation::breach("component side without a common S-neighbourhood", vec![v]));
            }
        }
        let mut common = n1.clone();
        common.intersect_with(&n2);
        if let Some(sv) = common.first() {
            let x = u1.first().unwrap();
            let y = *g.neighbours(x).iter().find(|&&y| u2.contains(y)).unwrap();
            return Err(PromiseViolation::triangle(x, y, sv));
        }
        if n1.is_empty() && n2.is_empty() {
            return Err(PromiseViolation::breach("component has no neighbour in S", comp.to_vec()));
        }
        let mut both = n1.clone();
        both.union_with(&n2);
        let t_nbhd = self
            .t
            .iter()
            .map(|ti| {
                let mut s = both.clone();
                s.intersect_with(ti);
                s
            })
            .collect();
        Ok(ComponentInfo { vertices, sides: (u1, u2), side_nbhd: (n1, n2), t_nbhd })
    }

    /// For an induced P3 `x y z` whose ends differ on some `u ∈ T_i`, the
    /// path `z y x u c_{i+1} c_{i+2} c_{i+3}` (or a triangle on `x y u`).
    fn p3_witness(&self, x: (usize, &VertexSet), y: usize, z: (usize, &VertexSet), note: &str) -> PromiseViolation {
        let g = self.g;
        let only_x = x.1.iter().find(|&u| !z.1.contains(u));
        let ((x, _), (z, _), u) = match only_x {
            Some(u) => (x, z, u),
            None => (z, x, z.1.iter().find(|&u| !x.1.contains(u)).unwrap()),
        };
        if g.has_edge(y, u) {
            return PromiseViolation::triangle(x, y, u);
        }
        let i = self.t_index[u].unwrap();
        let path = [z, y, x, u, self.cyc(i + 1), self.cyc(i + 2), self.cyc(i + 3)];
        witness_from_path(g, &path, note)
    }

    /// An odd cycle inside `G - S`, joined to `C` by a shortest path, yields
    /// a long induced path.
    fn odd_cycle_witness(&self, vertices: &VertexSet) -> PromiseViolation {
        let g = self.g;
        let local: Vec<usize> = vertices.to_vec();
        let sub = g.induced(&local);
        let cycle: Vec<usize> = shortest_odd_cycle(&sub).unwrap().into_iter().map(|v| local[v]).collect();
        let on_cycle = VertexSet::from_iter(g.n(), cycle.iter().copied());
        // Breadth-first search from the cycle through G - S until S is reached.
        let mut parent = vec![usize::MAX; g.n()];
        let mut seen = on_cycle.clone();
        let mut queue: VecDeque<usize> = cycle.iter().copied().collect();
        let mut hit = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for &w in g.neighbours(u) {
                if self.s.contains(w) {
                    hit = Some((u, w));
                    break 'bfs;
                }
                if !seen.contains(w) {
                    seen.insert(w);
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        let note = "odd cycle outside S";
        let Some((last, sv)) = hit else {
            return PromiseViolation::breach(note, cycle);
        };
        let mut inner = vec![last];
        while parent[*inner.last().unwrap()] != usize::MAX {
            inner.push(parent[*inner.last().unwrap()]);
        }
        inner.reverse();
        let anchor = inner[0];
        let j = cycle.iter().position(|&v| v == anchor).unwrap();
        let len = cycle.len();
        let tails: Vec<[usize; 3]> = match (self.t_index[sv], self.d_index[sv]) {
            (Some(a), _) => vec![
                [self.cyc(a + 1), self.cyc(a + 2), self.cyc(a + 3)],
                [self.cyc(a + 4), self.cyc(a + 3), self.cyc(a + 2)],
            ],
            (_, Some(a)) => vec![
                [self.cyc(a), self.cyc(a + 1), self.cyc(a + 2)],
                [self.cyc(a), self.cyc(a + 4), self.cyc(a + 3)],
            ],
            _ => vec![],
        };
        let mut fallback = Vec::new();
        for head in [[cycle[(j + 2) % len], cycle[(j + 1) % len]], [cycle[(j + len - 2) % len], cycle[(j + len - 1) % len]]] {
            for tail in &tails {
                let path: Vec<usize> = head.iter().chain(&inner).chain([&sv]).chain(tail.iter()).copied().collect();
                let wit = witness_from_path(g, &path, note);
                if wit.kind != crate::recognition::ViolationKind::StructureBreach {
                    return wit;
                }
                fallback = path;
            }
        }
        PromiseViolation::breach(note, fallback)
    }

    /// No vertex of `W` sees both `D_i` and `D_{i+1}`.
    fn check_no_consecutive_d(&self, w: &VertexSet) -> Result<(), PromiseViolation> {
        let g = self.g;
        for x in w.iter() {
            for &a in g.neighbours(x) {
                let Some(i) = self.d_index[a] else { continue };
                if let Some(&b) = g.neighbours(x).iter().find(|&&b| self.d_index[b] == Some(md(i + 1))) {
                    if g.has_edge(a, b) {
                        return Err(PromiseViolation::triangle(a, x, b));
                    }
                    let path = [a, x, b, self.cyc(i + 1), self.cyc(i + 2), self.cyc(i + 3), self.cyc(i + 4)];
                    return Err(witness_from_path(g, &path, "W vertex next to consecutive D sets"));
                }
            }
        }
        Ok(())
    }

    fn wd_components(&self, w: &VertexSet, i: usize) -> Result<Vec<WdComponent>, PromiseViolation> {
        let g = self.g;
        let n = g.n();
        let member = |v: usize| w.contains(v) || self.d[i].contains(v);
        let t_of = |v: usize| {
            let mut s = g.neighbour_set(v).into_owned();
            s.intersect_with(&self.t[i]);
            s
        };
        let mut out = Vec::new();
        for comp in components_within(g, &member) {
            if comp.len() == 1 {
                continue;
            }
            for &y in &comp {
                let nb: Vec<usize> = g.neighbours(y).iter().copied().filter(|&x| member(x)).collect();
                let x = nb[0];
                let tx = t_of(x);
                for &z in &nb[1..] {
                    let tz = t_of(z);
                    if tz != tx {
                        return Err(self.p3_witness((x, &tx), y, (z, &tz), "W-D component P3 ends see different T-vertices"));
                    }
                }
            }
            let vertices = VertexSet::from_iter(n, comp.iter().copied());
            let w_side = VertexSet::from_iter(n, comp.iter().copied().filter(|&v| w.contains(v)));
            let d_side = VertexSet::from_iter(n, comp.iter().copied().filter(|&v| !w.contains(v)));
            let w_t_nbhd = t_of(w_side.first().unwrap());
            let d_t_nbhd = t_of(d_side.first().unwrap());
            out.push(WdComponent { index: i, vertices, w_side, d_side, w_t_nbhd, d_t_nbhd });
        }
        Ok(out)
    }
}

/// Connected components of the subgraph induced by vertices satisfying
/// `keep`, each sorted, in order of smallest member.
fn components_within(g: &Graph, keep: &dyn Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] || !keep(s) {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            let u = comp[k];
            k += 1;
            for &w in g.neighbours(u) {
                if !seen[w] && keep(w) {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognition::ViolationKind;

    /// C5 on 0..5 plus extra vertices attached by `edges`.
    fn c5_plus(extra: usize, edges: &[(usize, usize)]) -> Graph {
        let mut all: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        all.extend_from_slice(edges);
        Graph::new(5 + extra, &all).unwrap()
    }

    #[test]
    fn classifies_t_and_d() {
        // Labels c1..c5 are 1-based; here c1 = 0, c3 = 2.
        let g = c5_plus(1, &[(5, 0), (5, 2)]);
        let sk = build_skeleton(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(sk.t[1].to_vec(), vec![5]);

        let g = c5_plus(1, &[(5, 0)]);
        let sk = build_skeleton(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(sk.d[0].to_vec(), vec![5]);
    }

    #[test]
    fn consecutive_cycle_neighbours_form_triangle() {
        let g = c5_plus(1, &[(5, 0), (5, 1)]);
        let err = build_skeleton(&g, &[0, 1, 2, 3, 4]).unwrap_err();
        assert_eq!(err, PromiseViolation::triangle(5, 0, 1));
    }

    #[test]
    fn wd_component_single_edge() {
        // d ∈ D_0, w adjacent only to d.
        let g = c5_plus(2, &[(5, 0), (6, 5)]);
        let sk = build_skeleton(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(sk.w.to_vec(), vec![6]);
        let comps = wd_components(&g, &sk, 0).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].vertices.to_vec(), vec![5, 6]);
        assert!(wd_components(&g, &sk, 1).unwrap().is_empty());
    }

    #[test]
    fn w_between_consecutive_d_sets() {
        // d ∈ D_0, d' ∈ D_1, w adjacent to both.
        let g = c5_plus(3, &[(5, 0), (6, 1), (7, 5), (7, 6)]);
        let err = build_skeleton(&g, &[0, 1, 2, 3, 4]).unwrap_err();
        assert_eq!(err.kind, ViolationKind::InducedP7);
        assert_eq!(err.vertices, vec![5, 7, 6, 1, 2, 3, 4]);
        assert!(err.verify(&g));
    }

    #[test]
    fn no_w_vertices() {
        let g = c5_plus(0, &[]);
        let sk = build_skeleton(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert!(sk.w.is_empty());
        for i in 0..5 {
            assert!(wd_components(&g, &sk, i).unwrap().is_empty());
        }
    }

    #[test]
    fn degenerate_chain() {
        // T_1 = {5, 6, 7} (neighbours of c_0 and c_2), no components.
        let g = c5_plus(3, &[(5, 0), (5, 2), (6, 0), (6, 2), (7, 0), (7, 2)]);
        let sk = build_skeleton(&g, &[0, 1, 2, 3, 4]).unwrap();
        let ch = sk.chain(1).unwrap();
        assert_eq!(ch.r, 0);
        assert_eq!(ch.v0, 5);
        assert_eq!(ch.levels.iter().map(VertexSet::to_vec).collect::<Vec<_>>(), vec![vec![5], vec![5, 6, 7]]);
    }

    #[test]
    fn nested_chain() {
        // T_1 = {5, 6, 7}; component {8, 9} sees {5}; component {10, 11} sees {5, 6}.
        let mut edges = vec![(5, 0), (5, 2), (6, 0), (6, 2), (7, 0), (7, 2)];
        edges.extend([(8, 9), (8, 5), (10, 11), (10, 5), (10, 6)]);
        let g = c5_plus(7, &edges);
        crate::recognition::check_promise(&g).unwrap();
        let sk = build_skeleton(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(sk.components.len(), 2);
        let ch = sk.chain(1).unwrap();
        assert_eq!(ch.r, 2);
        assert_eq!(ch.v0, 5);
        let levels: Vec<_> = ch.levels.iter().map(VertexSet::to_vec).collect();
        assert_eq!(levels, vec![vec![5], vec![5], vec![5, 6], vec![5, 6, 7]]);
    }

    #[test]
    fn crossing_chain_gives_p7() {
        // Components {8, 9} and {10, 11} see t = 5 and t' = 6 respectively.
        let mut edges = vec![(5, 0), (5, 2), (6, 0), (6, 2)];
        edges.extend([(8, 9), (8, 5), (10, 11), (10, 6)]);
        let g = c5_plus(7, &edges);
        assert_eq!(crate::recognition::check_promise(&g).unwrap_err().kind, ViolationKind::InducedP7);
        let err = build_skeleton(&g, &[0, 1, 2, 3, 4]).unwrap_err();
        assert_eq!(err.kind, ViolationKind::InducedP7);
        assert!(err.verify(&g));
    }

    #[test]
    fn odd_cycle_outside_s() {
        // A five-cycle on 6..11 hanging off D_0 by a path.
        let mut edges = vec![(5, 0), (11, 5)];
        edges.extend((0..5).map(|i| (6 + i, 6 + (i + 1) % 5)));
        edges.push((11, 6));
        let g = c5_plus(7, &edges);
        let err = build_skeleton(&g, &[0, 1, 2, 3, 4]).unwrap_err();
        assert_ne!(err.kind, ViolationKind::StructureBreach, "{err:?}");
        assert!(err.verify(&g));
    }
}
