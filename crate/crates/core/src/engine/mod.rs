//! The solver: anchor dispatch, branch search with propagation, safe-vertex
//! elimination and 2-SAT leaves.

pub mod branch;
pub mod lists;
pub mod residual;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{Bipartiteness, Graph};
use crate::recognition::{check_promise, recognize_blownup_c7, shortest_odd_cycle, PromiseViolation};
use crate::skeleton::{build_skeleton, Skeleton};

pub use branch::{
    apply_and_propagate, apply_branch, branch_count_formula, branch_seeds, enumerate_c5_colourings, palette_analysis,
    BranchDescriptor, BranchSpace, Choice, DCase, Palettes, TCase, TPalette,
};
pub use lists::{Cause, Colour, ColourMask, Conflict, ListState, TrailEntry};
pub use residual::{colour_blownup_c7, residual_to_2sat, PreconditionBreach, Residual};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Assume the promise; violations are reported only when stumbled upon.
    #[default]
    Trust,
    /// Run the full promise check before solving.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub mode: Mode,
    /// Worker threads for the cycle-colouring search; 1 runs sequentially.
    pub threads: usize,
    /// Hand a node to 2-SAT as soon as no vertex has a full list, instead of
    /// descending to a complete branch first.
    pub early_leaf: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { mode: Mode::Trust, threads: 1, early_leaf: true }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    /// Case choices applied during branch search.
    pub branches: u64,
    /// Search leaves that reached 2-SAT without a conflict.
    pub survived: u64,
    pub propagations: u64,
    pub sat_instances: u64,
    /// Set when a bipartite component needed the exponential fallback.
    pub fallback_used: bool,
    pub millis: u64,
}

impl Stats {
    fn absorb(&mut self, o: &Stats) {
        self.branches += o.branches;
        self.survived += o.survived;
        self.propagations += o.propagations;
        self.sat_instances += o.sat_instances;
        self.fallback_used |= o.fallback_used;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Colour of each vertex.
    Colouring(Vec<Colour>),
    Uncolourable,
    InvalidInput(PromiseViolation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub stats: Stats,
}

impl Outcome {
    pub fn is_colourable(&self) -> Option<bool> {
        match self.verdict {
            Verdict::Colouring(_) => Some(true),
            Verdict::Uncolourable => Some(false),
            Verdict::InvalidInput(_) => None,
        }
    }
}

/// `f(v) ∈ L(v)` everywhere and no edge is monochromatic.
pub fn verify_colouring(g: &Graph, lists: &[ColourMask], f: &[Colour]) -> bool {
    f.len() == g.n()
        && lists.len() == g.n()
        && (0..g.n()).all(|v| lists[v].contains(f[v]))
        && g.edges().all(|(u, v)| f[u] != f[v])
}

type Found = Result<Option<Vec<Colour>>, PromiseViolation>;

pub fn solve(g: &Graph, lists: &[ColourMask], opts: &SolveOptions) -> Outcome {
    assert_eq!(lists.len(), g.n(), "one list per vertex");
    let start = Instant::now();
    let mut stats = Stats::default();
    let verdict = solve_inner(g, lists, opts, &mut stats);
    if let Verdict::Colouring(f) = &verdict {
        assert!(verify_colouring(g, lists, f), "solver produced an invalid colouring");
    }
    stats.millis = start.elapsed().as_millis() as u64;
    Outcome { verdict, stats }
}

fn solve_inner(g: &Graph, lists: &[ColourMask], opts: &SolveOptions, stats: &mut Stats) -> Verdict {
    if opts.mode == Mode::Verify {
        if let Err(w) = check_promise(g) {
            return Verdict::InvalidInput(w);
        }
    }
    if lists.iter().any(|m| m.is_empty()) {
        return Verdict::Uncolourable;
    }
    let mut f = vec![0 as Colour; g.n()];
    for comp in g.connected_components() {
        let verts = comp.to_vec();
        let sub = g.induced(&verts);
        let sub_lists: Vec<ColourMask> = verts.iter().map(|&v| lists[v]).collect();
        match solve_component(&sub, &sub_lists, opts, stats) {
            Ok(Some(local)) => {
                for (i, &v) in verts.iter().enumerate() {
                    f[v] = local[i];
                }
            }
            Ok(None) => return Verdict::Uncolourable,
            Err(w) => return Verdict::InvalidInput(w.relabel(&verts)),
        }
    }
    Verdict::Colouring(f)
}

fn solve_component(g: &Graph, lists: &[ColourMask], opts: &SolveOptions, stats: &mut Stats) -> Found {
    if let Bipartiteness::Bipartite(a, _) = g.bipartite_check() {
        if lists.iter().all(|m| m.is_full()) {
            return Ok(Some((0..g.n()).map(|v| if a.contains(v) { 1 } else { 2 }).collect()));
        }
        let mut st = ListState::new(lists.to_vec());
        let r = st.propagate(g);
        stats.propagations += st.propagations();
        if r.is_err() {
            return Ok(None);
        }
        return Ok(backtrack(g, st, stats));
    }
    let cycle = shortest_odd_cycle(g).expect("non-bipartite graph has an odd cycle");
    match cycle.len() {
        3 => Err(PromiseViolation::triangle(cycle[0], cycle[1], cycle[2])),
        5 => {
            let sk = build_skeleton(g, &cycle)?;
            skeleton_search(g, lists, &sk, opts, stats)
        }
        7 => {
            let dec = recognize_blownup_c7(g, &cycle)?;
            Ok(colour_blownup_c7(&dec, lists))
        }
        // A chordless odd cycle this long contains an induced P7.
        _ => Err(PromiseViolation::induced_p7(cycle[..7].to_vec())),
    }
}

/// Exact search for components outside the skeleton's reach: propagate,
/// fix safe vertices, branch three ways on the smallest full-list vertex,
/// 2-SAT once no full list remains.
fn backtrack(g: &Graph, mut st: ListState, stats: &mut Stats) -> Option<Vec<Colour>> {
    st.eliminate_safe(g);
    let Some(v) = st.full_mask_vertices().next() else {
        return leaf(g, &st, stats).expect("no full lists at a fallback leaf");
    };
    stats.fallback_used = true;
    for c in 1..=3 {
        let mut child = st.clone();
        let before = child.propagations();
        let r = child.seed(v, c).and_then(|_| child.propagate(g));
        stats.propagations += child.propagations() - before;
        if r.is_ok() {
            if let Some(f) = backtrack(g, child, stats) {
                return Some(f);
            }
        }
    }
    None
}

/// Runs 2-SAT on a state whose lists all have at most two colours.
fn leaf(g: &Graph, st: &ListState, stats: &mut Stats) -> Result<Option<Vec<Colour>>, PreconditionBreach> {
    let res = residual_to_2sat(st, g)?;
    stats.sat_instances += 1;
    Ok(res.instance.solve().map(|a| res.colouring(st, &a)))
}

struct Search<'a> {
    g: &'a Graph,
    sk: &'a Skeleton,
    space: BranchSpace,
    early_leaf: bool,
    index: usize,
    best: &'a AtomicUsize,
}

impl Search<'_> {
    fn cancelled(&self) -> bool {
        self.best.load(Ordering::Relaxed) < self.index
    }

    fn run(&self, st: ListState, stats: &mut Stats) -> Found {
        let seeds = branch::base_seeds(self.sk, &self.space.colouring, &self.space.palettes);
        self.descend(st, seeds, 0, stats)
    }

    /// Applies `seeds` to `st`, then either finishes at a leaf or recurses
    /// into the choices of coordinate `depth`.
    fn descend(&self, mut st: ListState, seeds: Vec<(usize, Colour)>, depth: usize, stats: &mut Stats) -> Found {
        let before = st.propagations();
        let ok = seeds.into_iter().try_for_each(|(v, c)| st.seed(v, c)).and_then(|_| st.propagate(self.g));
        stats.propagations += st.propagations() - before;
        if ok.is_err() {
            return Ok(None);
        }
        st.eliminate_safe(self.g);
        let complete = depth == self.space.coords.len();
        let full = st.full_mask_vertices().next();
        if complete || (self.early_leaf && full.is_none()) {
            if let Some(v) = full {
                return Err(PromiseViolation::breach("full colour list survives a complete branch", vec![v]));
            }
            stats.survived += 1;
            return leaf(self.g, &st, stats)
                .map_err(|e| PromiseViolation::breach("full colour list at the 2-SAT hand-off", vec![e.vertex]));
        }
        for &choice in &self.space.coords[depth] {
            if self.cancelled() {
                return Ok(None);
            }
            stats.branches += 1;
            let seeds = branch::choice_seeds(self.sk, &self.space.palettes, choice);
            if let Some(f) = self.descend(st.clone(), seeds, depth + 1, stats)? {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }
}

fn skeleton_search(g: &Graph, lists: &[ColourMask], sk: &Skeleton, opts: &SolveOptions, stats: &mut Stats) -> Found {
    let mut st = ListState::new(lists.to_vec());
    let r = st.propagate(g);
    stats.propagations += st.propagations();
    if r.is_err() {
        return Ok(None);
    }
    let anchor_lists = sk.c.map(|v| st.mask(v));
    let colourings = enumerate_c5_colourings(&anchor_lists);
    let best = AtomicUsize::new(usize::MAX);
    let run = |index: usize, col: [Colour; 5]| -> (Found, Stats) {
        let search = Search { g, sk, space: BranchSpace::new(sk, col), early_leaf: opts.early_leaf, index, best: &best };
        let mut s = Stats::default();
        let found = search.run(st.clone(), &mut s);
        if !matches!(found, Ok(None)) {
            best.fetch_min(index, Ordering::Relaxed);
        }
        (found, s)
    };
    let results: Vec<(Found, Stats)> = if opts.threads <= 1 {
        let mut out = Vec::new();
        for (i, &col) in colourings.iter().enumerate() {
            let r = run(i, col);
            let stop = !matches!(r.0, Ok(None));
            out.push(r);
            if stop {
                break;
            }
        }
        out
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.threads).build().expect("thread pool");
        pool.install(|| colourings.par_iter().enumerate().map(|(i, &col)| run(i, col)).collect())
    };
    // Deterministic reduction: the least-indexed decisive item wins, and only
    // items up to it (which always run to completion) contribute stats.
    let winner = results.iter().position(|(f, _)| !matches!(f, Ok(None)));
    let upto = winner.map_or(results.len(), |w| w + 1);
    for (_, s) in &results[..upto] {
        stats.absorb(s);
    }
    match winner {
        Some(w) => results.into_iter().nth(w).unwrap().0,
        None => Ok(None),
    }
}

/// Result of walking every conflict-free complete branch of a skeleton.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LeafAudit {
    /// Complete branches that survived propagation.
    pub leaves: u64,
    /// Of those, branches where a full list remained after safe elimination.
    pub full_mask_leaves: u64,
    /// Leaves whose residual 2-SAT instance was satisfiable.
    pub satisfiable_leaves: u64,
    /// Set when `node_budget` ran out before the walk finished.
    pub truncated: bool,
}

/// Visits every surviving complete branch (pruning on conflicts only) and
/// counts leaves that still hold a full colour list. On promise instances
/// the count is zero.
pub fn audit_leaves(g: &Graph, lists: &[ColourMask], sk: &Skeleton, node_budget: u64) -> LeafAudit {
    let mut audit = LeafAudit::default();
    let mut st = ListState::new(lists.to_vec());
    if st.propagate(g).is_err() {
        return audit;
    }
    let mut nodes = 0u64;
    for col in enumerate_c5_colourings(&sk.c.map(|v| st.mask(v))) {
        let space = BranchSpace::new(sk, col);
        let seeds = branch::base_seeds(sk, &col, &space.palettes);
        audit_walk(g, sk, &space, st.clone(), seeds, 0, &mut audit, &mut nodes, node_budget);
    }
    audit
}

#[allow(clippy::too_many_arguments)]
fn audit_walk(
    g: &Graph,
    sk: &Skeleton,
    space: &BranchSpace,
    mut st: ListState,
    seeds: Vec<(usize, Colour)>,
    depth: usize,
    audit: &mut LeafAudit,
    nodes: &mut u64,
    budget: u64,
) {
    *nodes += 1;
    if *nodes > budget {
        audit.truncated = true;
        return;
    }
    if seeds.into_iter().try_for_each(|(v, c)| st.seed(v, c)).and_then(|_| st.propagate(g)).is_err() {
        return;
    }
    if depth == space.coords.len() {
        st.eliminate_safe(g);
        audit.leaves += 1;
        if st.full_mask_vertices().next().is_some() {
            audit.full_mask_leaves += 1;
        } else if residual_to_2sat(&st, g).ok().and_then(|r| r.instance.solve()).is_some() {
            audit.satisfiable_leaves += 1;
        }
        return;
    }
    for &choice in &space.coords[depth] {
        let seeds = branch::choice_seeds(sk, &space.palettes, choice);
        audit_walk(g, sk, space, st.clone(), seeds, depth + 1, audit, nodes, budget);
        if audit.truncated {
            return;
        }
    }
}
