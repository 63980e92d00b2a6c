//! An in-memory engine for relations over arbitrary index sets.
//!
//! A [`Relation`] pairs a [`Signature`] (indexes to domains) with an extent
//! of tuples sorted by it. Queries are [`Expr`] trees over named relations,
//! written either directly in the algebra or as predicate-calculus formulas
//! that [`logic::compile`] translates; [`logic::denote_oracle`] evaluates
//! formulas by brute-force satisfaction for cross-checking.

pub mod algebra;
pub mod catalog;
pub mod domain;
pub mod error;
pub mod func;
pub mod lex;
pub mod logic;
pub mod pattern;
pub mod relation;

pub use algebra::{Environment, Expr, JoinStrategy};
pub use catalog::{Instance, Scheme};
pub use domain::{
    numeric_tuple, signature_of, Domain, DomainId, Index, Registry, Signature, Tuple, Value,
};
pub use error::{Error, Result, SyntaxError};
pub use func::{compose, FnMap};
pub use logic::{Formula, Interpretation, LogicTerm};
pub use pattern::{match_tuple, Pattern, Substitution, Term};
pub use relation::Relation;
