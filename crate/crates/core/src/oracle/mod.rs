//! Brute-force oracles for tiny vocabularies: every ranked interpretation, the
//! pointwise-minimum model, bounded search for ranked-entailment counterexamples,
//! and a seeded knowledge-base generator.

mod enumerate;
mod generate;
mod minimal;
mod structures;

use thiserror::Error;

pub use enumerate::{
    closed_form_count, count_ranked_interpretations, enumerate_ranked_interpretations,
    for_each_ranked_interpretation,
};
pub use generate::{
    generate_random_kb, random_bool, random_defeasible, random_drsl_statement, random_klm_kb,
    random_normal_query, GeneratorProfile,
};
pub use minimal::minimal_model_oracle;
pub use structures::{
    bounded_ranked_entailment, count_structures, random_interpretation, BoundedOutcome,
};

/// Hard ceiling on `max_atoms`.
pub const MAX_ORACLE_ATOMS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("oracle invariant violated: {0}")]
    Invariant(String),
    #[error("the query mentions symbols outside the knowledge base vocabulary")]
    OutOfVocabulary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_atoms: usize,
    pub max_precisifications: usize,
    /// Beyond this many candidate structures the bounded check samples instead of enumerating.
    pub max_structures: u64,
    pub seed: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_atoms: 3,
            max_precisifications: 3,
            max_structures: 200_000,
            seed: 0,
        }
    }
}

impl EnumerationBudget {
    pub fn validate(&self) -> Result<(), OracleError> {
        if self.max_atoms > MAX_ORACLE_ATOMS {
            return Err(OracleError::InvalidBudget(format!(
                "max_atoms is {} but at most {MAX_ORACLE_ATOMS} is supported",
                self.max_atoms
            )));
        }
        if self.max_precisifications == 0 {
            return Err(OracleError::InvalidBudget(
                "max_precisifications must be at least 1".into(),
            ));
        }
        Ok(())
    }
}
