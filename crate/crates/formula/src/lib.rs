//! Polynomial formulas over a partitioned variable space.
//!
//! This crate models the two sides of an interpolation problem as DNF
//! formulas of non-strict polynomial inequalities, validates the boundedness
//! (Archimedean) hypothesis disjunct by disjunct, and provides the
//! sampling-based falsification used before any certificate search.

pub mod archimedean;
pub mod dnf;
pub mod problem;
pub mod sample;
pub mod sexpr;
pub mod types;

pub use archimedean::{check_archimedean, ArchError, ArchimedeanWitness};
pub use dnf::to_dnf;
pub use problem::{parse_problem, Problem, ProblemError};
pub use sample::{sample_falsify, FalsifyWitness, SampleOptions};
pub use types::{Atom, Conjunct, FormulaTree, PolyFormula, Rel, Side, VarPartition};
