//! Predicate calculus over a single finite domain: syntax, satisfaction
//! semantics, and compilation to the relational algebra.

mod compile;
mod formula;
mod parse;
mod semantics;

pub use compile::{compile, denote};
pub use formula::{Formula, LogicTerm};
pub use parse::parse_formula;
pub use semantics::{denote_oracle, satisfies, Assignment, Interpretation};
