pub mod classical;
pub mod exec;
pub mod klm;
pub mod normalize;
pub mod oracle;
pub mod semantics;
pub mod standpoint;
pub mod syntax;
