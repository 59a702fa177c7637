use p7col_web::{check_promise_json, generate_json, solve_json};

#[test]
fn every_generator_round_trips_through_the_exports() {
    for kind in ["blownup_c5", "blownup_c7", "skeleton_built", "random_rejection"] {
        for seed in 0..10 {
            let g = generate_json(kind, 24, seed, if seed % 2 == 0 { "full" } else { "sparse" });
            let text = g["instance"].as_str().unwrap_or_else(|| panic!("{kind} {seed}: {g}"));
            assert_eq!(check_promise_json(text)["status"], "OK", "{kind} {seed}");
            let out = solve_json(text, true);
            match out["status"].as_str().unwrap() {
                "SAT" => {
                    let f = out["colouring"].as_array().unwrap();
                    assert_eq!(f.len(), g["n"].as_u64().unwrap() as usize);
                    for e in g["edges"].as_array().unwrap() {
                        let (u, v) = (e[0].as_u64().unwrap() as usize - 1, e[1].as_u64().unwrap() as usize - 1);
                        assert_ne!(f[u], f[v], "{kind} {seed}");
                    }
                }
                "UNSAT" => {}
                s => panic!("{kind} {seed}: {s}"),
            }
        }
    }
}

#[test]
fn oversized_requests_are_refused() {
    assert!(generate_json("blownup_c5", 5000, 1, "full")["error"].is_string());
}

#[test]
fn verify_mode_reports_long_cycles() {
    let mut c11 = String::from("p lcol 11 11\n");
    for i in 1..=11 {
        c11 += &format!("e {} {}\n", i, i % 11 + 1);
    }
    assert_eq!(solve_json(&c11, true)["status"], "INVALID");
    assert_eq!(check_promise_json(&c11)["witness"]["kind"], "induced-p7");
}
