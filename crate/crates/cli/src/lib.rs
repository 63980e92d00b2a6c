//! Query front end: algebra syntax, request evaluation and table output.

mod algebra;
mod query;

pub use algebra::parse_algebra;
pub use query::{evaluate, render_table, run_query, Mode, Output, QueryError, QueryRequest};
