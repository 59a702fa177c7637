//! `check-promise --explain`: the structure each component is solved with.

use std::fmt::Write;

use p7col::graph::Bipartiteness;
use p7col::recognition::{recognize_blownup_c7, shortest_odd_cycle};
use p7col::skeleton::build_skeleton;
use p7col::{Graph, PromiseViolation};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Isolated,
    Side(u8),
    Cycle(usize),
    T(usize),
    D(usize),
    W,
    /// Inside a non-trivial component of `G - S`.
    Inner,
    Class(usize),
}

pub struct Report {
    components: Vec<Value>,
    pub roles: Vec<Role>,
}

impl Report {
    pub fn json(&self) -> Value {
        json!({ "components": self.components })
    }
}

pub fn explain(g: &Graph) -> Result<Report, PromiseViolation> {
    let mut roles = vec![Role::Isolated; g.n()];
    let mut components = Vec::new();
    for comp in g.connected_components() {
        let verts = comp.to_vec();
        let ids: Vec<usize> = verts.iter().map(|v| v + 1).collect();
        if verts.len() == 1 {
            continue;
        }
        let h = g.induced(&verts);
        let Some(c) = shortest_odd_cycle(&h) else {
            if let Bipartiteness::Bipartite(a, _) = h.bipartite_check() {
                for (i, &v) in verts.iter().enumerate() {
                    roles[v] = Role::Side(if a.contains(i) { 0 } else { 1 });
                }
            }
            components.push(json!({ "vertices": ids, "anchor": "bipartite" }));
            continue;
        };
        match c.len() {
            5 => {
                let sk = build_skeleton(&h, &c).map_err(|v| v.relabel(&verts))?;
                for (i, &x) in sk.c.iter().enumerate() {
                    roles[verts[x]] = Role::Cycle(i);
                }
                for i in 0..5 {
                    sk.t[i].iter().for_each(|x| roles[verts[x]] = Role::T(i));
                    sk.d[i].iter().for_each(|x| roles[verts[x]] = Role::D(i));
                }
                sk.w.iter().for_each(|x| roles[verts[x]] = Role::W);
                for m in &sk.components {
                    m.vertices.iter().for_each(|x| roles[verts[x]] = Role::Inner);
                }
                let report = sk.report(|x| verts[x] + 1);
                components.push(json!({ "vertices": ids, "anchor": "five_cycle", "skeleton": report }));
            }
            7 => {
                let dec = recognize_blownup_c7(&h, &c).map_err(|v| v.relabel(&verts))?;
                let classes: Vec<Vec<usize>> = dec
                    .classes
                    .iter()
                    .enumerate()
                    .map(|(i, class)| {
                        class.iter().map(|x| {
                            roles[verts[x]] = Role::Class(i);
                            verts[x] + 1
                        })
                        .collect()
                    })
                    .collect();
                components.push(json!({ "vertices": ids, "anchor": "seven_cycle", "classes": classes }));
            }
            _ => {
                let cyc: Vec<usize> = c.iter().map(|&x| verts[x]).collect();
                return Err(PromiseViolation::breach("unexpected shortest odd cycle", cyc));
            }
        }
    }
    Ok(Report { components, roles })
}

fn style(role: Role) -> (String, &'static str) {
    const CLASS: [&str; 7] = ["#e76f51", "#f4a261", "#e9c46a", "#2a9d8f", "#264653", "#8ab17d", "#b56576"];
    match role {
        Role::Isolated => (String::new(), "#ffffff"),
        Role::Side(s) => (format!("side {}", s + 1), if s == 0 { "#dddddd" } else { "#aaaaaa" }),
        Role::Cycle(i) => (format!("c{}", i + 1), "#e4572e"),
        Role::T(i) => (format!("T{}", i + 1), "#4c9be8"),
        Role::D(i) => (format!("D{}", i + 1), "#76b041"),
        Role::W => ("W".into(), "#cccccc"),
        Role::Inner => ("M".into(), "#ffe8a3"),
        Role::Class(i) => (format!("V{}", i + 1), CLASS[i]),
    }
}

pub fn to_dot(g: &Graph, report: &Report) -> String {
    let mut s = String::from("graph skeleton {\n  node [style=filled];\n");
    for (v, &role) in report.roles.iter().enumerate() {
        let (tag, fill) = style(role);
        let label = if tag.is_empty() { format!("{}", v + 1) } else { format!("{}\\n{}", v + 1, tag) };
        let _ = writeln!(s, "  {} [label=\"{}\", fillcolor=\"{}\"];", v + 1, label, fill);
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {} -- {};", u + 1, v + 1);
    }
    s.push_str("}\n");
    s
}
