use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A parse failure at a byte offset of the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub offset: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            offset,
            message: message.into(),
        }
    }

    /// Renders the message with the offending source line and a caret.
    pub fn render(&self, source: &str) -> String {
        let offset = self.offset.min(source.len());
        let line_start = source[..offset].rfind('\n').map_or(0, |i| i + 1);
        let line_end = source[offset..]
            .find('\n')
            .map_or(source.len(), |i| offset + i);
        let column = source[line_start..offset].chars().count();
        format!(
            "syntax error at column {}: {}\n  {}\n  {}^",
            column + 1,
            self.message,
            &source[line_start..line_end],
            " ".repeat(column)
        )
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: {}",
            self.offset, self.message
        )
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("functions are not summable: index `{index}` maps to `{left}` and `{right}`")]
    NotSummable {
        index: String,
        left: String,
        right: String,
    },
    #[error("composition undefined: `{0}` is not a key of the outer function")]
    ComposeKeyMissing(String),

    #[error("literal `{0}` belongs to no registered domain")]
    UnknownLiteral(String),
    #[error("unknown domain `{0}`")]
    UnknownDomain(String),
    #[error("domain `{0}` declared twice")]
    DuplicateDomain(String),
    #[error("domain `{0}` is empty")]
    EmptyDomain(String),
    #[error("domain `{domain}` lists literal `{literal}` more than once")]
    DuplicateLiteral { domain: String, literal: String },
    #[error("domains `{first}` and `{second}` both contain literal `{literal}`")]
    OverlappingDomains {
        literal: String,
        first: String,
        second: String,
    },
    #[error("value `{value}` is not in domain `{domain}`")]
    NotInDomain { value: String, domain: String },

    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },
    #[error("tuple {tuple} is not sorted by signature {signature}")]
    NotSorted { tuple: String, signature: String },
    #[error("incompatible pattern: {0}")]
    IncompatiblePattern(String),
    #[error("pattern is not a bijection: {0}")]
    NotBijective(String),

    #[error("variable `{0}` is not bound by the assignment")]
    UnboundVariable(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("predicate `{predicate}` has arity {expected} but is applied to {found} terms")]
    ArityMismatch {
        predicate: String,
        expected: usize,
        found: usize,
    },
    #[error("variable `{0}` is bound twice by one quantifier")]
    DuplicateBinding(String),

    #[error(transparent)]
    Syntax(#[from] SyntaxError),

    #[error("cannot parse scheme: {0}")]
    SchemeParse(String),
    #[error("cannot parse data for `{relation}`: {message}")]
    DataParse { relation: String, message: String },
    #[error("attribute `{attribute}` refers to unknown domain `{domain}`")]
    UnknownDomainRef { attribute: String, domain: String },
    #[error("relation `{relation}` uses undeclared attribute `{attribute}`")]
    UnknownAttribute { relation: String, attribute: String },
    #[error("relation `{relation}` lists attribute `{attribute}` twice")]
    DuplicateAttribute { relation: String, attribute: String },
    #[error("relation `{0}` declared twice")]
    DuplicateRelation(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("header of `{relation}` is [{found}], expected the attributes [{expected}]")]
    HeaderMismatch {
        relation: String,
        expected: String,
        found: String,
    },
    #[error("row {row}, column `{column}`: `{value}` is not in domain `{domain}`")]
    ValueOutOfDomain {
        row: usize,
        column: String,
        value: String,
        domain: String,
    },
    #[error("invalid builtin `{name}`: {message}")]
    InvalidBuiltin { name: String, message: String },
    #[error("domain `{domain}` has non-integer literal `{literal}`")]
    NonIntegerDomain { domain: String, literal: String },
    #[error("constant `{symbol}`: {message}")]
    InvalidConstant { symbol: String, message: String },
    #[error("{0}: the logic front end needs a single domain")]
    MixedDomains(String),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// True for errors in the query or file text itself, as opposed to
    /// type, arity or domain errors discovered afterwards.
    pub fn is_syntax(&self) -> bool {
        matches!(
            self,
            Error::Syntax(_) | Error::SchemeParse(_) | Error::DataParse { .. }
        )
    }
}
