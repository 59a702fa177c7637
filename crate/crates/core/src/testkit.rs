//! Brute-force oracle, exhaustive colouring enumeration, named graphs and
//! seeded generators of {P7, triangle}-free instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{verify_colouring, Colour, ColourMask};
use crate::graph::Graph;
use crate::recognition::{find_induced_p7_through, find_triangle};

pub mod named {
    //! Small fixed graphs.

    use crate::graph::Graph;

    pub fn empty(n: usize) -> Graph {
        Graph::new(n, &[]).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::new(n, &edges).unwrap()
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i+5`.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::new(10, &edges).unwrap()
    }

    /// Mycielskian of C5: cycle `0..5`, shadows `5..10` (shadow `5+i` sees the
    /// cycle neighbours of `i`), apex `10` joined to every shadow.
    pub fn grotzsch() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            let (prev, next) = ((i + 4) % 5, (i + 1) % 5);
            edges.push((i, next));
            edges.push((5 + i, prev));
            edges.push((5 + i, next));
            edges.push((5 + i, 10));
        }
        Graph::new(11, &edges).unwrap()
    }

    /// Cycle of stable classes with the given sizes, consecutive classes
    /// completely joined. Class `i` occupies a contiguous id range.
    pub fn blowup_cycle(sizes: &[usize]) -> Graph {
        let k = sizes.len();
        assert!(k >= 3 && sizes.iter().all(|&s| s > 0));
        let mut start = vec![0];
        for &s in sizes {
            start.push(start.last().unwrap() + s);
        }
        let mut edges = Vec::new();
        for i in 0..k {
            let j = (i + 1) % k;
            for u in start[i]..start[i + 1] {
                for v in start[j]..start[j + 1] {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(start[k], &edges).unwrap()
    }
}

/// Backtracking list-colouring oracle: most-constrained vertex first, with
/// forward deletion of the chosen colour from neighbours' lists.
pub fn oracle_solve(g: &Graph, lists: &[ColourMask]) -> Option<Vec<Colour>> {
    let n = g.n();
    let mut masks = lists.to_vec();
    let mut f = vec![0 as Colour; n];
    if masks.iter().any(|m| m.is_empty()) {
        return None;
    }
    fn rec(g: &Graph, masks: &mut Vec<ColourMask>, f: &mut Vec<Colour>) -> bool {
        let pick = (0..g.n()).filter(|&v| f[v] == 0).min_by_key(|&v| (masks[v].len(), std::cmp::Reverse(g.degree(v)), v));
        let Some(v) = pick else { return true };
        for c in masks[v].colours() {
            let touched: Vec<usize> =
                g.neighbours(v).iter().copied().filter(|&w| f[w] == 0 && masks[w].contains(c)).collect();
            if touched.iter().any(|&w| masks[w].len() == 1) {
                continue;
            }
            for &w in &touched {
                masks[w] = masks[w].without(c);
            }
            f[v] = c;
            if rec(g, masks, f) {
                return true;
            }
            f[v] = 0;
            for &w in &touched {
                masks[w] = masks[w].with(c);
            }
        }
        false
    }
    if rec(g, &mut masks, &mut f) {
        debug_assert!(verify_colouring(g, lists, &f));
        Some(f)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TestkitError {
    #[error("exhaustive enumeration is limited to 16 vertices, got {0}")]
    SizeGuard(usize),
    #[error("gave up after {0} rejected insertions")]
    RejectionBudgetExceeded(usize),
    #[error("generator needs {need} vertices, got {got}")]
    TooSmall { need: usize, got: usize },
}

pub const ENUMERATION_LIMIT: usize = 16;

/// Every proper list-colouring, in lexicographic order of the colour vector.
pub fn enumerate_colourings(g: &Graph, lists: &[ColourMask]) -> Result<Vec<Vec<Colour>>, TestkitError> {
    if g.n() > ENUMERATION_LIMIT {
        return Err(TestkitError::SizeGuard(g.n()));
    }
    let mut out = Vec::new();
    let mut f = vec![0 as Colour; g.n()];
    fn rec(g: &Graph, lists: &[ColourMask], v: usize, f: &mut Vec<Colour>, out: &mut Vec<Vec<Colour>>) {
        if v == g.n() {
            out.push(f.clone());
            return;
        }
        for c in lists[v].colours() {
            if g.neighbours(v).iter().all(|&w| w > v || f[w] != c) {
                f[v] = c;
                rec(g, lists, v + 1, f, out);
            }
        }
        f[v] = 0;
    }
    rec(g, lists, 0, &mut f, &mut out);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    BlownupC5,
    BlownupC7,
    SkeletonBuilt,
    RandomRejection,
}

impl GenKind {
    pub const ALL: [GenKind; 4] = [GenKind::BlownupC5, GenKind::BlownupC7, GenKind::SkeletonBuilt, GenKind::RandomRejection];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::BlownupC5 => "blownup_c5",
            GenKind::BlownupC7 => "blownup_c7",
            GenKind::SkeletonBuilt => "skeleton_built",
            GenKind::RandomRejection => "random_rejection",
        }
    }
}

impl std::str::FromStr for GenKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        GenKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown generator kind `{s}`"))
    }
}

/// How lists are attached to a generated graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ListSpec {
    Full,
    /// Each vertex keeps the full list with probability `full`, otherwise
    /// gets a uniformly random non-empty list.
    Random { full: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    /// Vertex count; ignored by blow-ups when `class_sizes` is given.
    pub n: usize,
    pub seed: u64,
    /// Explicit class sizes for the blow-up kinds.
    pub class_sizes: Option<Vec<usize>>,
    /// Edge probability for extra edges (skeleton_built) or target edge
    /// fraction (random_rejection).
    pub density: f64,
    pub lists: ListSpec,
    /// Rejected insertions allowed for random_rejection.
    pub budget: usize,
}

impl GenSpec {
    pub fn new(kind: GenKind, n: usize, seed: u64) -> Self {
        GenSpec { kind, n, seed, class_sizes: None, density: 0.3, lists: ListSpec::Full, budget: 10_000 }
    }

    pub fn with_lists(mut self, lists: ListSpec) -> Self {
        self.lists = lists;
        self
    }

    pub fn with_sizes(mut self, sizes: Vec<usize>) -> Self {
        self.n = sizes.iter().sum();
        self.class_sizes = Some(sizes);
        self
    }

    pub fn with_density(mut self, density: f64) -> Self {
        self.density = density;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub lists: Vec<ColourMask>,
}

pub fn generate(spec: &GenSpec) -> Result<Instance, TestkitError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let graph = match spec.kind {
        GenKind::BlownupC5 => blowup(&mut rng, spec, 5)?,
        GenKind::BlownupC7 => blowup(&mut rng, spec, 7)?,
        GenKind::SkeletonBuilt => skeleton_built(&mut rng, spec)?,
        GenKind::RandomRejection => random_rejection(&mut rng, spec)?,
    };
    let lists = match spec.lists {
        ListSpec::Full => vec![ColourMask::FULL; graph.n()],
        ListSpec::Random { full } => random_lists(&mut rng, graph.n(), full),
    };
    Ok(Instance { graph, lists })
}

pub fn random_lists(rng: &mut impl Rng, n: usize, full: f64) -> Vec<ColourMask> {
    (0..n)
        .map(|_| if rng.gen_bool(full) { ColourMask::FULL } else { ColourMask::from_bits(rng.gen_range(1..=7)) })
        .collect()
}

/// Random split of `n` into `k` positive parts.
fn random_sizes(rng: &mut impl Rng, n: usize, k: usize) -> Vec<usize> {
    let mut sizes = vec![1; k];
    for _ in k..n {
        sizes[rng.gen_range(0..k)] += 1;
    }
    sizes
}

fn relabel(rng: &mut impl Rng, g: &Graph) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::new(g.n(), &edges).unwrap()
}

fn blowup(rng: &mut ChaCha8Rng, spec: &GenSpec, k: usize) -> Result<Graph, TestkitError> {
    let sizes = match &spec.class_sizes {
        Some(s) => s.clone(),
        None => {
            if spec.n < k {
                return Err(TestkitError::TooSmall { need: k, got: spec.n });
            }
            random_sizes(rng, spec.n, k)
        }
    };
    Ok(relabel(rng, &named::blowup_cycle(&sizes)))
}

/// Adjacency under construction; insertions are kept only if the graph stays
/// triangle-free and P7-free.
struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<bool>>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder { n, edges: Vec::new(), adj: vec![vec![false; n]; n] }
    }

    fn graph(&self) -> Graph {
        Graph::new(self.n, &self.edges).unwrap()
    }

    /// Inserts `uv` if that creates neither a triangle nor an induced P7.
    fn try_add(&mut self, u: usize, v: usize) -> bool {
        if u == v || self.adj[u][v] || (0..self.n).any(|w| self.adj[u][w] && self.adj[v][w]) {
            return false;
        }
        self.edges.push((u, v));
        if find_induced_p7_through(&self.graph(), u, v).is_some() {
            self.edges.pop();
            return false;
        }
        self.adj[u][v] = true;
        self.adj[v][u] = true;
        true
    }
}

/// A five-cycle with vertices attached as `T`, `D` or outside vertices, then
/// random extra edges; every insertion is filtered to keep the promise.
fn skeleton_built(rng: &mut ChaCha8Rng, spec: &GenSpec) -> Result<Graph, TestkitError> {
    let n = spec.n;
    if n < 5 {
        return Err(TestkitError::TooSmall { need: 5, got: n });
    }
    let mut b = Builder::new(n);
    for i in 0..5 {
        b.try_add(i, (i + 1) % 5);
    }
    for x in 5..n {
        let i = rng.gen_range(0..5);
        match rng.gen_range(0..10) {
            0..=4 => {
                b.try_add(x, (i + 4) % 5);
                b.try_add(x, (i + 1) % 5);
            }
            5..=6 => {
                b.try_add(x, i);
            }
            _ => {
                // Outside the cycle's neighbourhood: hang off earlier
                // non-cycle vertices, so the graph stays connected.
                let mut earlier: Vec<usize> = (5..x).collect();
                earlier.shuffle(rng);
                let want = 1 + rng.gen_bool(0.3) as usize;
                let mut got = 0;
                for y in earlier {
                    if got == want {
                        break;
                    }
                    got += b.try_add(x, y) as usize;
                }
            }
        }
        if !b.adj[x].iter().any(|&e| e) {
            let mut earlier: Vec<usize> = (0..x).collect();
            earlier.shuffle(rng);
            earlier.into_iter().find(|&y| b.try_add(x, y));
        }
    }
    for u in 5..n {
        for v in u + 1..n {
            if rng.gen_bool(spec.density.clamp(0.0, 1.0)) {
                b.try_add(u, v);
            }
        }
    }
    Ok(relabel(rng, &b.graph()))
}

/// Random order of all pairs, inserted while the graph stays triangle-free
/// and P7-free, until the target edge count is reached.
fn random_rejection(rng: &mut ChaCha8Rng, spec: &GenSpec) -> Result<Graph, TestkitError> {
    let n = spec.n;
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let target = (spec.density.clamp(0.0, 1.0) * pairs.len() as f64).round() as usize;
    let mut b = Builder::new(n);
    let mut rejected = 0;
    for (u, v) in pairs {
        if b.edges.len() >= target {
            break;
        }
        if !b.try_add(u, v) {
            rejected += 1;
            if rejected > spec.budget {
                return Err(TestkitError::RejectionBudgetExceeded(spec.budget));
            }
        }
    }
    Ok(b.graph())
}

/// Adds edges or a pendant path to a promise instance so that it contains a
/// triangle or an induced P7.
pub fn inject_violation(g: &Graph, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.n();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    match rng.gen_range(0..3) {
        0 if n >= 3 => {
            // Close a triangle on three random vertices.
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(&mut rng);
            for (a, b) in [(vs[0], vs[1]), (vs[1], vs[2]), (vs[0], vs[2])] {
                if !g.has_edge(a, b) {
                    edges.push((a, b));
                }
            }
            return Graph::new(n, &edges).unwrap();
        }
        2 if n >= 3 => {
            // Random insertions until a triangle or an induced P7 appears.
            let mut cur = g.clone();
            for _ in 0..n * n {
                let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if u == v || cur.has_edge(u, v) {
                    continue;
                }
                edges.push((u, v));
                cur = Graph::new(n, &edges).unwrap();
                if find_triangle(&cur).is_some() || find_induced_p7_through(&cur, u, v).is_some() {
                    return cur;
                }
            }
            edges = g.edges().collect();
        }
        _ => {}
    }
    // Pendant path of six new vertices on a random vertex.
    let mut prev = if n > 0 { rng.gen_range(0..n) } else { 0 };
    let start = if n > 0 { n } else { 1 };
    for i in 0..6 {
        edges.push((prev, start + i));
        prev = start + i;
    }
    Graph::new(start + 6, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognition::check_promise;

    #[test]
    fn oracle_examples() {
        let c5 = named::cycle(5);
        let f = oracle_solve(&c5, &[ColourMask::FULL; 5]).unwrap();
        assert!(verify_colouring(&c5, &[ColourMask::FULL; 5], &f));
        assert_eq!(oracle_solve(&c5, &[ColourMask::from_bits(0b011); 5]), None);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_colourings(&named::complete(2), &[ColourMask::FULL; 2]).unwrap().len(), 6);
        assert_eq!(enumerate_colourings(&named::cycle(5), &[ColourMask::FULL; 5]).unwrap().len(), 30);
        assert_eq!(enumerate_colourings(&named::empty(1), &[ColourMask::single(2)]).unwrap(), vec![vec![2]]);
        // Path on n vertices: 3 * 2^(n-1).
        assert_eq!(enumerate_colourings(&named::path(6), &[ColourMask::FULL; 6]).unwrap().len(), 96);
        assert_eq!(
            enumerate_colourings(&named::empty(17), &[ColourMask::FULL; 17]),
            Err(TestkitError::SizeGuard(17))
        );
    }

    #[test]
    fn grotzsch_needs_four_colours() {
        let g = named::grotzsch();
        assert_eq!(oracle_solve(&g, &[ColourMask::FULL; 11]), None);
        assert!(find_triangle(&g).is_none());
    }

    #[test]
    fn generators_respect_the_promise() {
        for kind in GenKind::ALL {
            for seed in 0..15 {
                let spec = GenSpec::new(kind, 18, seed).with_lists(ListSpec::Random { full: 0.5 });
                let inst = generate(&spec).unwrap();
                assert_eq!(inst.graph.n(), 18);
                assert_eq!(check_promise(&inst.graph), Ok(()), "{kind:?} seed {seed}");
            }
        }
    }

    #[test]
    fn generation_is_reproducible() {
        for kind in GenKind::ALL {
            let spec = GenSpec::new(kind, 20, 7).with_lists(ListSpec::Random { full: 0.3 });
            assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        }
    }

    #[test]
    fn blowup_sizes() {
        let inst = generate(&GenSpec::new(GenKind::BlownupC7, 0, 1).with_sizes(vec![2; 7])).unwrap();
        assert_eq!(inst.graph.n(), 14);
        assert_eq!(inst.graph.edge_count(), 28);
    }

    #[test]
    fn rejection_budget() {
        let mut spec = GenSpec::new(GenKind::RandomRejection, 30, 3).with_density(1.0);
        spec.budget = 5;
        assert_eq!(generate(&spec), Err(TestkitError::RejectionBudgetExceeded(5)));
    }

    #[test]
    fn injected_violations_break_the_promise() {
        for seed in 0..30 {
            let g = generate(&GenSpec::new(GenKind::SkeletonBuilt, 12, seed)).unwrap().graph;
            let bad = inject_violation(&g, seed);
            let w = check_promise(&bad).unwrap_err();
            assert!(w.verify(&bad));
        }
    }
}
