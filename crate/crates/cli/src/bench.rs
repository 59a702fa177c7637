use std::fmt::Write;
use std::time::Instant;

use p7col::testkit::{generate, named, oracle_solve, GenKind, GenSpec, ListSpec};
use p7col::{solve, verify_colouring, ColourMask, SolveOptions, Verdict};

fn opts(threads: usize) -> SolveOptions {
    SolveOptions { threads: threads.max(1), ..Default::default() }
}

pub fn oracle(count: usize, threads: usize, seed: u64) -> Result<String, String> {
    let mut out = String::new();
    let mut per_kind = [(0usize, 0usize, 0f64, 0f64); 4];
    for s in seed..seed + count as u64 {
        let k = (s % 4) as usize;
        let kind = GenKind::ALL[k];
        let n = 7 + (s as usize * 13) % 34;
        let lists = if s % 3 == 0 { ListSpec::Full } else { ListSpec::Random { full: 0.5 } };
        let inst = generate(&GenSpec::new(kind, n, s).with_lists(lists)).map_err(|e| e.to_string())?;
        let t = Instant::now();
        let out_e = solve(&inst.graph, &inst.lists, &opts(threads));
        let te = t.elapsed().as_secs_f64();
        let t = Instant::now();
        let oracle = oracle_solve(&inst.graph, &inst.lists).is_some();
        let to = t.elapsed().as_secs_f64();
        let engine = match out_e.verdict {
            Verdict::Colouring(_) => true,
            Verdict::Uncolourable => false,
            Verdict::InvalidInput(w) => return Err(format!("seed {s}: generator output rejected ({})", w.kind)),
        };
        if engine != oracle {
            return Err(format!("seed {s} ({}): engine says {engine}, oracle says {oracle}", kind.name()));
        }
        let e = &mut per_kind[k];
        e.0 += 1;
        e.1 += engine as usize;
        e.2 += te;
        e.3 += to;
    }
    let _ = writeln!(out, "{:<18} {:>6} {:>6} {:>12} {:>12}", "kind", "count", "sat", "engine_ms", "oracle_ms");
    for (k, (c, sat, te, to)) in per_kind.iter().enumerate() {
        let _ = writeln!(out, "{:<18} {:>6} {:>6} {:>12.2} {:>12.2}", GenKind::ALL[k].name(), c, sat, te * 1e3, to * 1e3);
    }
    let _ = writeln!(out, "agreement {count}/{count}");
    Ok(out)
}

pub fn scale(threads: usize) -> Result<String, String> {
    let mut out = String::new();
    let _ = writeln!(out, "{:>6} {:>9} {:>9} {:>12} {:>10}", "n", "edges", "branches", "propagations", "ms");
    for n in [250, 500, 1000, 2000, 4000] {
        let g = named::blowup_cycle(&[n / 5; 5]);
        let lists = vec![ColourMask::FULL; g.n()];
        let t = Instant::now();
        let o = solve(&g, &lists, &opts(threads));
        let ms = t.elapsed().as_secs_f64() * 1e3;
        match &o.verdict {
            Verdict::Colouring(f) if verify_colouring(&g, &lists, f) => {}
            v => return Err(format!("n = {n}: unexpected verdict {v:?}")),
        }
        let _ = writeln!(out, "{:>6} {:>9} {:>9} {:>12} {:>10.2}", n, g.edge_count(), o.stats.branches, o.stats.propagations, ms);
    }
    Ok(out)
}

pub fn c7(count: usize, threads: usize, seed: u64) -> Result<String, String> {
    let (mut sat, mut total_ms, mut max_n) = (0, 0f64, 0);
    for s in seed..seed + count as u64 {
        let sizes: Vec<usize> = (0..7).map(|i| 1 + ((s as usize + 1) * (i + 3) * 7919) % 20).collect();
        let spec = GenSpec::new(GenKind::BlownupC7, 0, s).with_sizes(sizes).with_lists(ListSpec::Random { full: 0.85 });
        let inst = generate(&spec).map_err(|e| e.to_string())?;
        max_n = max_n.max(inst.graph.n());
        let t = Instant::now();
        let o = solve(&inst.graph, &inst.lists, &opts(threads));
        total_ms += t.elapsed().as_secs_f64() * 1e3;
        match o.verdict {
            Verdict::Colouring(f) => {
                if !verify_colouring(&inst.graph, &inst.lists, &f) {
                    return Err(format!("seed {s}: invalid colouring"));
                }
                sat += 1;
            }
            Verdict::Uncolourable => {}
            Verdict::InvalidInput(w) => return Err(format!("seed {s}: rejected ({})", w.kind)),
        }
    }
    Ok(format!("blown-up C7: {count} instances, {sat} SAT, n <= {max_n}, {total_ms:.2} ms total\n"))
}
