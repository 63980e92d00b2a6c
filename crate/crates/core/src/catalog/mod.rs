//! Database schemes and instances: domain and attribute declarations, flat
//! file loading, and intensional comparison relations.

mod builtin;
mod instance;
mod scheme;

pub use builtin::{materialize_builtin, BuiltinDecl, BuiltinKind};
pub use instance::{Instance, SCHEME_FILE};
pub use scheme::Scheme;
