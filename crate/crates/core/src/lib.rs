//! Exact list 3-colouring for graphs with no triangle and no induced P7.
//!
//! Entry point: [`engine::solve`]. A component whose shortest odd cycle is a
//! five-cycle is solved by branching over a bounded family of partial
//! colourings around that cycle, each finished by propagation and 2-SAT; a
//! seven-cycle anchor means the component is a blown-up C7, coloured by a
//! small dynamic programme.

pub mod engine;
pub mod graph;
pub mod instance;
pub mod recognition;
pub mod sat2;
pub mod skeleton;
pub mod testkit;

pub use engine::{solve, verify_colouring, Colour, ColourMask, Mode, Outcome, SolveOptions, Stats, Verdict};
pub use graph::{Graph, GraphError, VertexSet};
pub use recognition::{check_promise, PromiseViolation, ViolationKind};
