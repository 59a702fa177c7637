use std::collections::VecDeque;

use p7col::engine::{residual_to_2sat, ListState};
use p7col::graph::Bipartiteness;
use p7col::instance::{emit_instance, parse_instance};
use p7col::recognition::{find_induced_p7, is_induced_path, recognize_blownup_c7, shortest_odd_cycle};
use p7col::sat2::{Lit, TwoSatInstance};
use p7col::skeleton::build_skeleton;
use p7col::testkit::{generate, named, oracle_solve, random_lists, GenKind, GenSpec, ListSpec};
use p7col::{solve, verify_colouring, ColourMask, Graph, SolveOptions, Verdict, VertexSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn sparse_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.05f64..0.4, any::<u64>()).prop_map(|(n, p, seed)| {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).unwrap()
    })
}

fn promise_instance() -> impl Strategy<Value = (Graph, Vec<ColourMask>)> {
    (0..GenKind::ALL.len(), 7usize..=30, any::<u64>(), 0..3u8).prop_map(|(k, n, seed, l)| {
        let lists = match l {
            0 => ListSpec::Full,
            1 => ListSpec::Random { full: 0.7 },
            _ => ListSpec::Random { full: 0.3 },
        };
        let inst = generate(&GenSpec::new(GenKind::ALL[k], n, seed).with_lists(lists)).unwrap();
        (inst.graph, inst.lists)
    })
}

/// Shortest odd closed walk, via BFS in the bipartite double cover.
fn odd_girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; 2 * n];
        dist[2 * s] = 0;
        let mut q = VecDeque::from([2 * s]);
        while let Some(x) = q.pop_front() {
            let (v, p) = (x / 2, x % 2);
            for &w in g.neighbours(v) {
                let y = 2 * w + (1 - p);
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        let d = dist[2 * s + 1];
        if d != usize::MAX && best.is_none_or(|b| d < b) {
            best = Some(d);
        }
    }
    best
}

fn is_chordless_cycle(g: &Graph, c: &[usize]) -> bool {
    let k = c.len();
    let mut seen = c.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != k {
        return false;
    }
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            g.has_edge(c[i], c[j]) == consecutive
        })
    })
}

fn has_induced_p7_brute(g: &Graph) -> bool {
    fn rec(g: &Graph, start: usize, pick: &mut Vec<usize>) -> bool {
        if pick.len() == 7 {
            let sub = g.induced(pick);
            return sub.edge_count() == 6 && sub.is_connected() && (0..7).all(|v| sub.degree(v) <= 2);
        }
        for v in start..g.n() {
            pick.push(v);
            if rec(g, v + 1, pick) {
                return true;
            }
            pick.pop();
        }
        false
    }
    rec(g, 0, &mut Vec::new())
}

fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::new(g.n(), &edges).unwrap()
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

fn decision(v: &Verdict) -> Option<bool> {
    match v {
        Verdict::Colouring(_) => Some(true),
        Verdict::Uncolourable => Some(false),
        Verdict::InvalidInput(_) => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adjacency_is_symmetric(g in small_graph(30)) {
        for u in 0..g.n() {
            for v in 0..g.n() {
                prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
            prop_assert!(!g.has_edge(u, u));
            prop_assert_eq!(g.degree(u), g.neighbours(u).len());
        }
        let degree_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn components_partition_the_vertices(g in sparse_graph(40)) {
        let comps = g.connected_components();
        let mut seen = VertexSet::new(g.n());
        for c in &comps {
            prop_assert!(!c.intersects(&seen));
            seen.union_with(c);
            prop_assert!(g.induced(&c.to_vec()).is_connected());
        }
        prop_assert_eq!(seen.len(), g.n());
        for (u, v) in g.edges() {
            prop_assert!(comps.iter().any(|c| c.contains(u) && c.contains(v)));
        }
    }

    #[test]
    fn bipartite_check_gives_sides_or_odd_cycle(g in sparse_graph(30)) {
        match g.bipartite_check() {
            Bipartiteness::Bipartite(a, b) => {
                prop_assert!(!a.intersects(&b));
                prop_assert_eq!(a.len() + b.len(), g.n());
                for (u, v) in g.edges() {
                    prop_assert!(a.contains(u) != a.contains(v));
                }
                prop_assert_eq!(odd_girth(&g), None);
            }
            Bipartiteness::OddCycle(c) => {
                prop_assert!(c.len() % 2 == 1);
                for i in 0..c.len() {
                    prop_assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
        }
    }

    #[test]
    fn shortest_odd_cycle_is_chordless_and_minimal(g in sparse_graph(14)) {
        match shortest_odd_cycle(&g) {
            None => prop_assert_eq!(odd_girth(&g), None),
            Some(c) => {
                prop_assert!(is_chordless_cycle(&g, &c));
                prop_assert_eq!(Some(c.len()), odd_girth(&g));
            }
        }
    }

    #[test]
    fn induced_p7_search_matches_brute_force(g in sparse_graph(12)) {
        let found = find_induced_p7(&g);
        if let Some(p) = &found {
            prop_assert_eq!(p.len(), 7);
            prop_assert!(is_induced_path(&g, p));
        }
        prop_assert_eq!(found.is_some(), has_induced_p7_brute(&g));
    }

    #[test]
    fn long_odd_cycles_contain_induced_p7(half in 4usize..15) {
        let g = named::cycle(2 * half + 1);
        let p = find_induced_p7(&g).unwrap();
        prop_assert!(is_induced_path(&g, &p));
    }

    #[test]
    fn blownup_c7_classes_are_recovered(sizes in proptest::collection::vec(1usize..5, 7), seed in any::<u64>()) {
        let base = named::blowup_cycle(&sizes);
        let perm = permutation(base.n(), seed);
        let g = permuted(&base, &perm);
        let c = shortest_odd_cycle(&g).unwrap();
        prop_assert_eq!(c.len(), 7);
        let dec = recognize_blownup_c7(&g, &c).unwrap();
        let mut expected: Vec<Vec<usize>> = Vec::new();
        let mut start = 0;
        for &s in &sizes {
            let mut class: Vec<usize> = (start..start + s).map(|v| perm[v]).collect();
            class.sort_unstable();
            expected.push(class);
            start += s;
        }
        let mut got: Vec<Vec<usize>> = dec.classes.iter().map(|c| c.to_vec()).collect();
        got.sort();
        expected.sort();
        prop_assert_eq!(got, expected);
        for (i, class) in dec.classes.iter().enumerate() {
            let next = &dec.classes[(i + 1) % 7];
            for u in class.iter() {
                for v in next.iter() {
                    prop_assert!(g.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn skeleton_invariants(n in 8usize..=40, seed in any::<u64>()) {
        let inst = generate(&GenSpec::new(GenKind::SkeletonBuilt, n, seed)).unwrap();
        for comp in inst.graph.connected_components() {
            let verts = comp.to_vec();
            let g = inst.graph.induced(&verts);
            let Some(c) = shortest_odd_cycle(&g) else { continue };
            if c.len() != 5 {
                continue;
            }
            let sk = build_skeleton(&g, &c).unwrap();
            let on_c = |v: usize| -> Vec<usize> {
                (0..5).filter(|&i| g.has_edge(v, sk.c[i])).collect()
            };
            for i in 0..5 {
                for v in sk.t[i].iter() {
                    let mut want = vec![(i + 4) % 5, (i + 1) % 5];
                    want.sort_unstable();
                    prop_assert_eq!(on_c(v), want);
                    prop_assert_eq!(sk.t_index(v), Some(i));
                }
                for v in sk.d[i].iter() {
                    prop_assert_eq!(on_c(v), vec![i]);
                }
            }
            let mut rest = sk.w.clone();
            for m in &sk.components {
                prop_assert!(!m.vertices.intersects(&rest));
                rest.union_with(&m.vertices);
                let (a, b) = &m.sides;
                prop_assert!(!a.intersects(b));
                prop_assert_eq!(a.len() + b.len(), m.vertices.len());
                for (u, v) in g.edges() {
                    if m.vertices.contains(u) && m.vertices.contains(v) {
                        prop_assert!(a.contains(u) != a.contains(v));
                    }
                    // Component neighbourhood inside each T_i.
                    for (x, y) in [(u, v), (v, u)] {
                        if m.vertices.contains(x) {
                            if let Some(i) = sk.t_index(y) {
                                prop_assert!(m.t_nbhd[i].contains(y));
                            }
                        }
                    }
                }
            }
            prop_assert!(!rest.intersects(&sk.s));
            prop_assert_eq!(rest.len() + sk.s.len(), g.n());
            for v in sk.w.iter() {
                prop_assert!(g.neighbours(v).iter().all(|&u| sk.s.contains(u)));
            }
            for chain in sk.chains.iter().flatten() {
                prop_assert_eq!(chain.levels.len(), chain.r + 2);
                for pair in chain.levels.windows(2) {
                    prop_assert!(pair[0].is_subset(&pair[1]));
                }
                prop_assert_eq!(chain.levels.last().unwrap(), &sk.t[chain.index]);
            }
        }
    }

    #[test]
    fn propagation_only_shrinks_and_replays(n in 7usize..=30, seed in any::<u64>(), seeds in proptest::collection::vec((any::<usize>(), 1u8..=3), 1..6)) {
        let inst = generate(&GenSpec::new(GenKind::RandomRejection, n, seed).with_lists(ListSpec::Random { full: 0.5 })).unwrap();
        let mut st = ListState::new(inst.lists.clone());
        let mut ok = st.propagate(&inst.graph).is_ok();
        for (v, c) in seeds {
            if !ok {
                break;
            }
            ok = st.seed(v % n, c).is_ok() && st.propagate(&inst.graph).is_ok();
        }
        for v in 0..n {
            prop_assert_eq!(st.mask(v).intersect(inst.lists[v]), st.mask(v));
        }
        prop_assert_eq!(ListState::replay(&inst.lists, st.trail()), st.masks().to_vec());
        if ok {
            for v in 0..n {
                if let Some(c) = st.mask(v).single_colour() {
                    for &w in inst.graph.neighbours(v) {
                        prop_assert!(!st.mask(w).contains(c));
                    }
                }
            }
        }
    }

    #[test]
    fn residual_2sat_agrees_with_oracle(n in 2usize..=14, seed in any::<u64>()) {
        let inst = generate(&GenSpec::new(GenKind::RandomRejection, n.max(7), seed)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        // Two-option lists only, so the residual is exactly a 2-SAT instance.
        let lists: Vec<ColourMask> = random_lists(&mut rng, inst.graph.n(), 0.0)
            .into_iter()
            .map(|m| if m.is_full() { m.without(3) } else { m })
            .collect();
        let mut st = ListState::new(lists.clone());
        let oracle = oracle_solve(&inst.graph, &lists).is_some();
        if st.propagate(&inst.graph).is_err() {
            prop_assert!(!oracle);
        } else {
            let r = residual_to_2sat(&st, &inst.graph).unwrap();
            let sat = r.instance.solve();
            prop_assert_eq!(sat.is_some(), oracle);
            if let Some(a) = sat {
                prop_assert!(verify_colouring(&inst.graph, &lists, &r.colouring(&st, &a)));
            }
        }
    }

    #[test]
    fn two_sat_matches_truth_table(vars in 1usize..=10, raw in proptest::collection::vec((any::<usize>(), any::<bool>(), any::<usize>(), any::<bool>()), 0..25)) {
        let mut inst = TwoSatInstance::new(vars);
        for &(a, pa, b, pb) in &raw {
            inst.add_clause(Lit::new(a % vars, pa), Lit::new(b % vars, pb)).unwrap();
        }
        let brute = (0u32..1 << vars).any(|bits| {
            let a: Vec<bool> = (0..vars).map(|i| bits >> i & 1 == 1).collect();
            inst.is_satisfied_by(&a)
        });
        match inst.solve() {
            Some(a) => prop_assert!(inst.is_satisfied_by(&a)),
            None => prop_assert!(!brute),
        }
        prop_assert_eq!(inst.solve().is_some(), brute);
    }

    #[test]
    fn engine_matches_oracle((g, lists) in promise_instance()) {
        let out = solve(&g, &lists, &SolveOptions::default());
        let oracle = oracle_solve(&g, &lists);
        prop_assert_eq!(decision(&out.verdict), Some(oracle.is_some()));
        if let Verdict::Colouring(f) = &out.verdict {
            prop_assert!(verify_colouring(&g, &lists, f));
        }
    }

    #[test]
    fn decision_survives_relabelling((g, lists) in promise_instance(), seed in any::<u64>()) {
        let perm = permutation(g.n(), seed);
        let h = permuted(&g, &perm);
        let mut hl = vec![ColourMask::FULL; g.n()];
        for v in 0..g.n() {
            hl[perm[v]] = lists[v];
        }
        prop_assert_eq!(oracle_solve(&g, &lists).is_some(), oracle_solve(&h, &hl).is_some());
        let a = solve(&g, &lists, &SolveOptions::default());
        let b = solve(&h, &hl, &SolveOptions::default());
        prop_assert_eq!(decision(&a.verdict), decision(&b.verdict));
    }

    #[test]
    fn thread_count_does_not_change_output((g, lists) in promise_instance(), threads in 2usize..=4) {
        let mut a = solve(&g, &lists, &SolveOptions::default());
        let mut b = solve(&g, &lists, &SolveOptions { threads, ..Default::default() });
        a.stats.millis = 0;
        b.stats.millis = 0;
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.stats, b.stats);
    }

    #[test]
    fn instance_text_round_trips((g, lists) in promise_instance()) {
        let text = emit_instance(&g, &lists);
        let (g2, l2) = parse_instance(&text).unwrap();
        prop_assert_eq!(&g2, &g);
        prop_assert_eq!(&l2, &lists);
        prop_assert_eq!(emit_instance(&g2, &l2), text);
    }
}

#[test]
fn skeleton_on_relabelled_five_cycle_with_pendants() {
    // C5 with one T vertex and one D vertex per position, then shuffled.
    let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    for i in 0..5 {
        edges.push((5 + i, (i + 4) % 5));
        edges.push((5 + i, (i + 1) % 5));
        edges.push((10 + i, i));
    }
    let base = Graph::new(15, &edges).unwrap();
    for seed in 0..20 {
        let perm = permutation(15, seed);
        let g = permuted(&base, &perm);
        let c: Vec<usize> = (0..5).map(|i| perm[i]).collect();
        let sk = build_skeleton(&g, &c).unwrap();
        for i in 0..5 {
            assert_eq!(sk.t[i].to_vec(), vec![perm[5 + i]], "seed {seed}");
            assert_eq!(sk.d[i].to_vec(), vec![perm[10 + i]], "seed {seed}");
        }
        assert!(sk.w.is_empty());
        // Other five-cycles exist (through T vertices); any anchor must work.
        let any = shortest_odd_cycle(&g).unwrap();
        assert_eq!(any.len(), 5);
        assert!(build_skeleton(&g, &any).is_ok());
        let lists = vec![ColourMask::FULL; 15];
        let out = solve(&g, &lists, &SolveOptions::default());
        assert!(matches!(out.verdict, Verdict::Colouring(_)));
    }
}
