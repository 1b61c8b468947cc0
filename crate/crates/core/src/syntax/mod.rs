//! Formula and knowledge-base trees, the `.drsl` grammar, and canonical printing.

mod ast;
mod parse;
mod print;
mod vocab;

pub use ast::{BoolFormula, DrslStatement, KlmStatement, KnowledgeBase, Modality};
pub use parse::{
    parse_bool, parse_kb, parse_klm, parse_statement, parse_statement_extending, ParseError,
    ParseErrorKind,
};
pub use print::{print_bool, print_kb, print_klm, print_statement};
pub use vocab::{
    is_identifier, Atom, AtomId, StandpointId, StandpointSymbol, Vocabulary, UNIVERSAL_NAME,
};
