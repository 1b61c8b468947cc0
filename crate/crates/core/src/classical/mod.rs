//! Valuations, clausal form, a DPLL solver, and propositional entailment.

mod cnf;
mod dpll;
mod entail;
mod valuation;

pub use cnf::{is_horn, Clause, ClauseSet, Lit, DISTRIBUTION_LIMIT};
pub use dpll::{solve, SolverStats};
pub use entail::{
    entails, materialize, satisfiable, Backend, Engine, Premises, ENUMERATION_BACKEND_LIMIT,
};
pub use valuation::{
    eval, models_of, models_of_capped, EnumerationCapExceeded, TruthTable, Valuation,
    DEFAULT_ENUMERATION_CAP, MAX_VALUATION_WIDTH,
};
