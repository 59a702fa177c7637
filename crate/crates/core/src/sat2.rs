//! 2-SAT via strongly connected components of the implication graph.

use thiserror::Error;

/// Literal `var` (positive) or `¬var`, encoded as `2·var` / `2·var + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit(2 * var as u32)
    }

    pub fn neg(var: usize) -> Lit {
        Lit(2 * var as u32 + 1)
    }

    pub fn new(var: usize, positive: bool) -> Lit {
        if positive {
            Lit::pos(var)
        } else {
            Lit::neg(var)
        }
    }

    pub fn var(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    fn code(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sat2Error {
    #[error("literal references variable {var} but the instance has {var_count} variables")]
    OutOfRange { var: usize, var_count: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwoSatInstance {
    var_count: usize,
    clauses: Vec<(Lit, Lit)>,
}

impl TwoSatInstance {
    pub fn new(var_count: usize) -> Self {
        TwoSatInstance { var_count, clauses: Vec::new() }
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> &[(Lit, Lit)] {
        &self.clauses
    }

    /// Appends `(a ∨ b)`. Duplicate clauses are kept.
    pub fn add_clause(&mut self, a: Lit, b: Lit) -> Result<(), Sat2Error> {
        for l in [a, b] {
            if l.var() >= self.var_count {
                return Err(Sat2Error::OutOfRange { var: l.var(), var_count: self.var_count });
            }
        }
        self.clauses.push((a, b));
        Ok(())
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        let val = |l: Lit| assignment[l.var()] == l.is_positive();
        self.clauses.iter().all(|&(a, b)| val(a) || val(b))
    }

    /// A satisfying assignment, or `None` if some variable shares a strongly
    /// connected component with its negation.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let nodes = 2 * self.var_count;
        // Implication graph in CSR form: (a ∨ b) gives ¬a → b and ¬b → a.
        let mut start = vec![0usize; nodes + 1];
        for &(a, b) in &self.clauses {
            start[(!a).code() + 1] += 1;
            start[(!b).code() + 1] += 1;
        }
        for i in 0..nodes {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut targets = vec![0u32; start[nodes]];
        for &(a, b) in &self.clauses {
            targets[fill[(!a).code()]] = b.0;
            fill[(!a).code()] += 1;
            targets[fill[(!b).code()]] = a.0;
            fill[(!b).code()] += 1;
        }
        let comp = tarjan(nodes, &start, &targets);
        let mut assignment = Vec::with_capacity(self.var_count);
        for v in 0..self.var_count {
            let (p, n) = (comp[Lit::pos(v).code()], comp[Lit::neg(v).code()]);
            if p == n {
                return None;
            }
            // Tarjan numbers components in reverse topological order.
            assignment.push(p < n);
        }
        assert!(self.is_satisfied_by(&assignment), "2-SAT produced a non-satisfying assignment");
        Some(assignment)
    }
}

/// Iterative Tarjan; component ids follow completion order (sinks first).
fn tarjan(n: usize, start: &[usize], targets: &[u32]) -> Vec<u32> {
    const UNSET: u32 = u32::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut comp = vec![UNSET; n];
    let mut next_edge = start[..n].to_vec();
    let mut stack: Vec<u32> = Vec::new();
    let mut call: Vec<u32> = Vec::new();
    let mut counter = 0u32;
    let mut comps = 0u32;
    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        call.push(root as u32);
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root as u32);
        while let Some(&u) = call.last() {
            let u = u as usize;
            if next_edge[u] < start[u + 1] {
                let w = targets[next_edge[u]] as usize;
                next_edge[u] += 1;
                if index[w] == UNSET {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w as u32);
                    call.push(w as u32);
                } else if comp[w] == UNSET {
                    low[u] = low[u].min(index[w]);
                }
            } else {
                call.pop();
                if low[u] == index[u] {
                    loop {
                        let x = stack.pop().unwrap() as usize;
                        comp[x] = comps;
                        if x == u {
                            break;
                        }
                    }
                    comps += 1;
                }
                if let Some(&p) = call.last() {
                    let p = p as usize;
                    low[p] = low[p].min(low[u]);
                }
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_clause_forces_true() {
        let mut inst = TwoSatInstance::new(1);
        inst.add_clause(Lit::pos(0), Lit::pos(0)).unwrap();
        assert_eq!(inst.solve(), Some(vec![true]));
    }

    #[test]
    fn add_clause_counts_and_range() {
        let mut inst = TwoSatInstance::new(2);
        inst.add_clause(Lit::pos(0), Lit::neg(1)).unwrap();
        assert_eq!(inst.clauses().len(), 1);
        assert_eq!(
            inst.add_clause(Lit::pos(2), Lit::pos(0)),
            Err(Sat2Error::OutOfRange { var: 2, var_count: 2 })
        );
    }

    #[test]
    fn implied_variable() {
        let mut inst = TwoSatInstance::new(2);
        inst.add_clause(Lit::pos(0), Lit::pos(1)).unwrap();
        inst.add_clause(Lit::neg(0), Lit::pos(1)).unwrap();
        assert!(inst.solve().unwrap()[1]);
    }

    #[test]
    fn all_four_clauses_unsat() {
        let mut inst = TwoSatInstance::new(2);
        for (a, b) in [(true, true), (true, false), (false, true), (false, false)] {
            inst.add_clause(Lit::new(0, a), Lit::new(1, b)).unwrap();
        }
        assert_eq!(inst.solve(), None);
    }

    #[test]
    fn empty_instance() {
        assert_eq!(TwoSatInstance::new(0).solve(), Some(vec![]));
    }

    #[test]
    fn long_implication_chain_is_stack_safe() {
        let n = 200_000;
        let mut inst = TwoSatInstance::new(n);
        for v in 0..n - 1 {
            inst.add_clause(Lit::neg(v), Lit::pos(v + 1)).unwrap();
        }
        inst.add_clause(Lit::pos(0), Lit::pos(0)).unwrap();
        let a = inst.solve().unwrap();
        assert!(a.iter().all(|&x| x));
    }
}
