//! Propositional KLM logic: ranked interpretations and rational closure.

mod closure;
mod ranked;

pub use closure::{
    base_rank, base_rank_with, rc_model, rc_prop, to_implications, BaseRankResult,
    DefeasibleImplication, RationalClosure,
};
pub use ranked::{InterpretationError, Rank, RankedInterpretation};
