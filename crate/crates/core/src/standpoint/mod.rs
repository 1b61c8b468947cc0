//! Sharpening closure, the split into propositional knowledge bases, and
//! rational closure entailment for standpoint statements.

mod closure;
mod reasoner;
mod split;

pub use closure::SharpeningClosure;
pub use reasoner::{
    normalize_query, rc_standpoint, Answer, AnswerMode, Query, QueryError, Reasoner,
    StandpointError, TraceEntry,
};
pub use split::{base_label, extension_label, standpoint_split, SplitKb, SplitResult};
