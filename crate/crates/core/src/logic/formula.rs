use std::collections::BTreeSet;
use std::fmt;

use crate::domain::Index;

/// A variable or a constant symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LogicTerm {
    Var(Index),
    Const(String),
}

impl LogicTerm {
    pub fn var(name: &str) -> Self {
        LogicTerm::Var(Index::new(name))
    }

    pub fn constant(symbol: &str) -> Self {
        LogicTerm::Const(symbol.to_string())
    }
}

impl fmt::Display for LogicTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogicTerm::Var(x) => write!(f, "{x}"),
            LogicTerm::Const(c) => write!(f, "'{c}'"),
        }
    }
}

/// Predicate-calculus formulas without function symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom {
        predicate: String,
        args: Vec<LogicTerm>,
    },
    Conjunction(Vec<Formula>),
    Exists {
        bound: Vec<Index>,
        body: Box<Formula>,
    },
    Not(Box<Formula>),
}

impl Formula {
    pub fn atom(predicate: &str, args: impl IntoIterator<Item = LogicTerm>) -> Self {
        Formula::Atom {
            predicate: predicate.to_string(),
            args: args.into_iter().collect(),
        }
    }

    /// An n-ary conjunction; a single conjunct is returned as is.
    pub fn conjunction(mut conjuncts: Vec<Formula>) -> Self {
        if conjuncts.len() == 1 {
            conjuncts.pop().unwrap()
        } else {
            Formula::Conjunction(conjuncts)
        }
    }

    pub fn exists<'a>(bound: impl IntoIterator<Item = &'a str>, body: Formula) -> Self {
        Formula::Exists {
            bound: bound.into_iter().map(Index::new).collect(),
            body: Box::new(body),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(body: Formula) -> Self {
        Formula::Not(Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<Index> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a Index>, out: &mut BTreeSet<Index>) {
        match self {
            Formula::Atom { args, .. } => {
                for a in args {
                    if let LogicTerm::Var(x) = a {
                        if !bound.contains(&x) {
                            out.insert(x.clone());
                        }
                    }
                }
            }
            Formula::Conjunction(cs) => cs.iter().for_each(|c| c.collect_free(bound, out)),
            Formula::Exists { bound: vars, body } => {
                let depth = bound.len();
                bound.extend(vars.iter());
                body.collect_free(bound, out);
                bound.truncate(depth);
            }
            Formula::Not(body) => body.collect_free(bound, out),
        }
    }

    /// Rewrites single-conjunct conjunctions to their conjunct. Parsing the
    /// printed form of any formula yields its normalized form.
    pub fn normalized(&self) -> Formula {
        match self {
            Formula::Atom { .. } => self.clone(),
            Formula::Conjunction(cs) => {
                Formula::conjunction(cs.iter().map(Formula::normalized).collect())
            }
            Formula::Exists { bound, body } => Formula::Exists {
                bound: bound.clone(),
                body: Box::new(body.normalized()),
            },
            Formula::Not(body) => Formula::not(body.normalized()),
        }
    }

    fn fmt_unary(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom { predicate, args } => {
                write!(f, "{predicate}(")?;
                for (n, a) in args.iter().enumerate() {
                    if n > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Formula::Not(body) => {
                f.write_str("!")?;
                body.fmt_unary(f)
            }
            Formula::Conjunction(cs) if cs.len() == 1 => cs[0].fmt_unary(f),
            _ => write!(f, "({self})"),
        }
    }
}

/// The canonical concrete syntax accepted by [`super::parse_formula`].
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Exists { bound, body } => {
                f.write_str("exists")?;
                for x in bound {
                    write!(f, " {x}")?;
                }
                write!(f, ". {body}")
            }
            Formula::Conjunction(cs) if cs.len() > 1 => {
                for (n, c) in cs.iter().enumerate() {
                    if n > 0 {
                        f.write_str(" & ")?;
                    }
                    c.fmt_unary(f)?;
                }
                Ok(())
            }
            Formula::Conjunction(cs) if cs.is_empty() => f.write_str("()"),
            _ => self.fmt_unary(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> LogicTerm {
        LogicTerm::var(x)
    }

    fn grandparent_body() -> Formula {
        Formula::conjunction(vec![
            Formula::atom("pc", [v("x"), v("y")]),
            Formula::atom("pc", [v("y"), v("z")]),
        ])
    }

    fn names(set: BTreeSet<Index>) -> Vec<String> {
        set.into_iter().map(|i| i.to_string()).collect()
    }

    #[test]
    fn free_variables() {
        assert_eq!(names(grandparent_body().free_vars()), ["x", "y", "z"]);
        assert_eq!(
            names(Formula::exists(["y"], grandparent_body()).free_vars()),
            ["x", "z"]
        );
        let closed = Formula::atom("p", [LogicTerm::constant("a"), LogicTerm::constant("b")]);
        assert!(closed.free_vars().is_empty());
    }

    #[test]
    fn shadowing_restores_scope() {
        let f = Formula::conjunction(vec![
            Formula::exists(["x"], Formula::atom("p", [v("x")])),
            Formula::atom("q", [v("x")]),
        ]);
        assert_eq!(names(f.free_vars()), ["x"]);
    }

    #[test]
    fn canonical_printing() {
        let f = Formula::exists(["y"], grandparent_body());
        assert_eq!(f.to_string(), "exists y. pc(x,y) & pc(y,z)");
        let g = Formula::conjunction(vec![
            Formula::not(Formula::atom("r", [v("x"), LogicTerm::constant("a")])),
            Formula::not(f.clone()),
        ]);
        assert_eq!(g.to_string(), "!r(x,'a') & !(exists y. pc(x,y) & pc(y,z))");
    }
}
