//! Hand-off of two-option lists to 2-SAT, and the blown-up C7 colouring.

use thiserror::Error;

use crate::graph::Graph;
use crate::recognition::TwinDecomposition;
use crate::sat2::{Lit, TwoSatInstance};

use super::lists::{Colour, ColourMask, ListState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("vertex {vertex} still has three colours at the 2-SAT hand-off")]
pub struct PreconditionBreach {
    pub vertex: usize,
}

/// 2-SAT encoding of a residual state: one variable per two-option vertex,
/// true meaning the smaller colour of its list.
#[derive(Debug, Clone)]
pub struct Residual {
    pub instance: TwoSatInstance,
    /// Variable index to vertex.
    pub vars: Vec<usize>,
}

impl Residual {
    /// Completes `st` with a satisfying assignment of the instance.
    pub fn colouring(&self, st: &ListState, assignment: &[bool]) -> Vec<Colour> {
        let mut f: Vec<Colour> = st.masks().iter().map(|&m| m.min().unwrap_or(0)).collect();
        for (var, &v) in self.vars.iter().enumerate() {
            let m = st.mask(v);
            let lo = m.min().unwrap();
            f[v] = if assignment[var] { lo } else { m.without(lo).min().unwrap() };
        }
        f
    }
}

pub fn residual_to_2sat(st: &ListState, g: &Graph) -> Result<Residual, PreconditionBreach> {
    let n = g.n();
    let mut var_of = vec![usize::MAX; n];
    let mut vars = Vec::new();
    for (v, slot) in var_of.iter_mut().enumerate() {
        match st.mask(v).len() {
            3 => return Err(PreconditionBreach { vertex: v }),
            2 => {
                *slot = vars.len();
                vars.push(v);
            }
            _ => {}
        }
    }
    let lit = |v: usize, c: Colour| {
        let m = st.mask(v);
        Lit::new(var_of[v], m.min() == Some(c))
    };
    let mut instance = TwoSatInstance::new(vars.len());
    for (u, v) in g.edges() {
        let (mu, mv) = (st.mask(u), st.mask(v));
        if mu.len() < 2 || mv.len() < 2 {
            debug_assert!(mu.intersect(mv).is_empty() || mu.len() == 2 || mv.len() == 2, "unpropagated singleton edge");
            debug_assert!(
                !(mu.len() == 1 && mv.contains(mu.min().unwrap())) && !(mv.len() == 1 && mu.contains(mv.min().unwrap())),
                "singleton colour left in a neighbour's list"
            );
            continue;
        }
        for c in mu.intersect(mv).colours() {
            instance.add_clause(!lit(u, c), !lit(v, c)).expect("variables in range");
        }
    }
    Ok(Residual { instance, vars })
}

/// List-colours a blown-up C7 by dynamic programming over the colour sets
/// used on each class; consecutive classes need disjoint sets. Each vertex
/// takes the smallest colour of its list inside its class's set.
pub fn colour_blownup_c7(dec: &TwinDecomposition, lists: &[ColourMask]) -> Option<Vec<Colour>> {
    let k = dec.classes.len();
    let feasible: Vec<[bool; 8]> = dec
        .classes
        .iter()
        .map(|class| {
            let mut ok = [false; 8];
            for (s, slot) in ok.iter_mut().enumerate().skip(1) {
                let set = ColourMask::from_bits(s as u8);
                *slot = class.iter().all(|v| !lists[v].intersect(set).is_empty());
            }
            ok
        })
        .collect();
    for first in 1..8usize {
        if !feasible[0][first] {
            continue;
        }
        // can[i][s]: classes i..k-1 can be completed when class i uses s.
        let mut can = vec![[false; 8]; k];
        for s in 1..8 {
            can[k - 1][s] = feasible[k - 1][s] && s & first == 0;
        }
        for i in (1..k - 1).rev() {
            for s in 1..8 {
                can[i][s] = feasible[i][s] && (1..8).any(|t| t & s == 0 && can[i + 1][t]);
            }
        }
        let mut sets = vec![first];
        for i in 1..k {
            let prev = sets[i - 1];
            match (1..8).find(|&s| s & prev == 0 && can[i][s]) {
                Some(s) => sets.push(s),
                None => break,
            }
        }
        if sets.len() < k {
            continue;
        }
        let mut f = vec![0 as Colour; lists.len()];
        for (class, &s) in dec.classes.iter().zip(&sets) {
            for v in class.iter() {
                f[v] = lists[v].intersect(ColourMask::from_bits(s as u8)).min().unwrap();
            }
        }
        return Some(f);
    }
    None
}
