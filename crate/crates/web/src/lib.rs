//! Browser bindings. Every export takes plain strings/numbers and returns a
//! JSON string, so the page needs no glue beyond `JSON.parse`.

use p7col::instance::{emit_instance, emit_result, list_digits, parse_instance, Format};
use p7col::testkit::{generate as gen, GenKind, GenSpec, ListSpec};
use p7col::{check_promise as promise, solve as run, Mode, SolveOptions};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn error(msg: impl ToString) -> Value {
    json!({ "error": msg.to_string() })
}

pub fn generate_json(kind: &str, n: usize, seed: u64, lists: &str) -> Value {
    let kind: GenKind = match kind.parse() {
        Ok(k) => k,
        Err(e) => return error(e),
    };
    let lists = match lists {
        "full" => ListSpec::Full,
        "mixed" => ListSpec::Random { full: 0.7 },
        "sparse" => ListSpec::Random { full: 0.3 },
        other => return error(format!("unknown list mode `{other}`")),
    };
    if n > 400 {
        return error("the demo keeps graphs at 400 vertices or fewer");
    }
    match gen(&GenSpec::new(kind, n, seed).with_lists(lists)) {
        Ok(inst) => json!({
            "instance": emit_instance(&inst.graph, &inst.lists),
            "n": inst.graph.n(),
            "edges": inst.graph.edges().map(|(u, v)| [u + 1, v + 1]).collect::<Vec<_>>(),
            "lists": inst.lists.iter().map(|&m| list_digits(m)).collect::<Vec<_>>(),
        }),
        Err(e) => error(e),
    }
}

pub fn solve_json(text: &str, verify: bool) -> Value {
    let (g, lists) = match parse_instance(text) {
        Ok(x) => x,
        Err(e) => return error(e),
    };
    let mode = if verify { Mode::Verify } else { Mode::Trust };
    let outcome = run(&g, &lists, &SolveOptions { mode, ..Default::default() });
    serde_json::from_str(&emit_result(&outcome, Format::Json)).expect("emitter writes JSON")
}

pub fn check_promise_json(text: &str) -> Value {
    let g = match parse_instance(text) {
        Ok((g, _)) => g,
        Err(e) => return error(e),
    };
    match promise(&g) {
        Ok(()) => json!({ "status": "OK" }),
        Err(w) => json!({
            "status": "INVALID",
            "witness": { "kind": w.kind.to_string(), "vertices": w.vertices.iter().map(|v| v + 1).collect::<Vec<_>>() },
        }),
    }
}

#[wasm_bindgen]
pub fn generate(kind: &str, n: u32, seed: u32, lists: &str) -> String {
    generate_json(kind, n as usize, seed as u64, lists).to_string()
}

#[wasm_bindgen]
pub fn solve(text: &str, verify: bool) -> String {
    solve_json(text, verify).to_string()
}

#[wasm_bindgen]
pub fn check_promise(text: &str) -> String {
    check_promise_json(text).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    const C5: &str = "p lcol 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";

    #[test]
    fn generated_instance_solves() {
        let g = generate_json("skeleton_built", 20, 4, "mixed");
        assert_eq!(g["n"], 20);
        let out = solve_json(g["instance"].as_str().unwrap(), true);
        assert!(out["status"] == "SAT" || out["status"] == "UNSAT", "{out}");
    }

    #[test]
    fn c5_colouring() {
        let out = solve_json(C5, false);
        assert_eq!(out["status"], "SAT");
        assert_eq!(out["colouring"], json!([1, 2, 1, 2, 3]));
    }

    #[test]
    fn triangle_witness() {
        let out = check_promise_json("p lcol 3 3\ne 1 2\ne 2 3\ne 1 3\n");
        assert_eq!(out["status"], "INVALID");
        assert_eq!(out["witness"]["kind"], "triangle");
        assert_eq!(out["witness"]["vertices"], json!([1, 2, 3]));
        assert_eq!(check_promise_json(C5)["status"], "OK");
    }

    #[test]
    fn errors_are_reported_not_thrown() {
        assert!(generate_json("nope", 10, 1, "full")["error"].is_string());
        assert!(generate_json("blownup_c5", 10, 1, "some")["error"].is_string());
        assert!(solve_json("p lcol 2 1\ne 1 3\n", false)["error"].as_str().unwrap().contains("line 2"));
        assert!(check_promise_json("garbage")["error"].is_string());
    }

    #[test]
    fn string_exports_match_values() {
        assert_eq!(solve(C5, false), solve_json(C5, false).to_string());
        assert_eq!(generate("blownup_c7", 14, 2, "full"), generate_json("blownup_c7", 14, 2, "full").to_string());
    }
}
