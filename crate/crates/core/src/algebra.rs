//! Relational algebra expressions over named relations, and their
//! evaluation. Both query front ends produce an [`Expr`]; there is one
//! evaluator.

use std::collections::BTreeSet;
use std::fmt;

use crate::domain::{Index, Registry, Signature};
use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::relation::Relation;

/// Where expressions find named relations and domains.
pub trait Environment {
    fn relation(&self, name: &str) -> Option<&Relation>;
    fn registry(&self) -> &Registry;
}

/// How joins are computed during evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum JoinStrategy {
    /// Hash join on the shared indexes.
    #[default]
    Hash,
    /// Intersection of cylinders, as in the definition of join.
    Cylinder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// A relation looked up by name.
    Base(String),
    Filter {
        input: Box<Expr>,
        pattern: Pattern,
    },
    Rename {
        input: Box<Expr>,
        pattern: Pattern,
    },
    /// n-ary join; the empty join is the relation ⟨{}, {()}⟩.
    Join(Vec<Expr>),
    Project {
        input: Box<Expr>,
        indexes: BTreeSet<Index>,
    },
    Complement(Box<Expr>),
    Intersect(Box<Expr>, Box<Expr>),
    Union(Box<Expr>, Box<Expr>),
    Difference(Box<Expr>, Box<Expr>),
    Cylinder {
        input: Box<Expr>,
        extension: Signature,
    },
}

impl Expr {
    pub fn base(name: impl Into<String>) -> Self {
        Expr::Base(name.into())
    }

    pub fn filter(self, pattern: Pattern) -> Self {
        Expr::Filter {
            input: Box::new(self),
            pattern,
        }
    }

    pub fn rename(self, pattern: Pattern) -> Self {
        Expr::Rename {
            input: Box::new(self),
            pattern,
        }
    }

    pub fn project(self, indexes: impl IntoIterator<Item = Index>) -> Self {
        Expr::Project {
            input: Box::new(self),
            indexes: indexes.into_iter().collect(),
        }
    }

    pub fn complement(self) -> Self {
        Expr::Complement(Box::new(self))
    }

    pub fn cylinder(self, extension: Signature) -> Self {
        Expr::Cylinder {
            input: Box::new(self),
            extension,
        }
    }

    pub fn evaluate<E: Environment + ?Sized>(&self, env: &E) -> Result<Relation> {
        self.evaluate_with(env, JoinStrategy::Hash)
    }

    pub fn evaluate_with<E: Environment + ?Sized>(
        &self,
        env: &E,
        joins: JoinStrategy,
    ) -> Result<Relation> {
        let registry = env.registry();
        Ok(match self {
            Expr::Base(name) => lookup(env, name)?.clone(),
            Expr::Filter { input, pattern } => {
                input.evaluate_with(env, joins)?.filter(pattern, registry)?
            }
            Expr::Rename { input, pattern } => input.evaluate_with(env, joins)?.rename(pattern)?,
            Expr::Join(parts) => {
                let mut acc = Relation::full(Signature::new(), registry)?;
                for part in parts {
                    let r = part.evaluate_with(env, joins)?;
                    acc = match joins {
                        JoinStrategy::Hash => acc.join(&r)?,
                        JoinStrategy::Cylinder => acc.join_via_cylinders(&r, registry)?,
                    };
                }
                acc
            }
            Expr::Project { input, indexes } => input.evaluate_with(env, joins)?.project(indexes),
            Expr::Complement(input) => input.evaluate_with(env, joins)?.complement(registry)?,
            Expr::Intersect(a, b) => a
                .evaluate_with(env, joins)?
                .intersect(&b.evaluate_with(env, joins)?)?,
            Expr::Union(a, b) => a
                .evaluate_with(env, joins)?
                .union(&b.evaluate_with(env, joins)?)?,
            Expr::Difference(a, b) => a
                .evaluate_with(env, joins)?
                .difference(&b.evaluate_with(env, joins)?)?,
            Expr::Cylinder { input, extension } => input
                .evaluate_with(env, joins)?
                .cylinder(extension, registry)?,
        })
    }

    /// The signature of the result, computed without touching extents.
    pub fn signature<E: Environment + ?Sized>(&self, env: &E) -> Result<Signature> {
        match self {
            Expr::Base(name) => Ok(lookup(env, name)?.signature().clone()),
            Expr::Filter { input, pattern } => {
                pattern.check_compatible(&input.signature(env)?)?;
                Ok(pattern.var_typing().clone())
            }
            Expr::Rename { input, pattern } => {
                if !pattern.is_bijective() {
                    return Err(Error::NotBijective(pattern.to_string()));
                }
                pattern.check_compatible(&input.signature(env)?)?;
                Ok(pattern.var_typing().clone())
            }
            Expr::Join(parts) => parts
                .iter()
                .try_fold(Signature::new(), |acc, p| acc.sum(&p.signature(env)?)),
            Expr::Project { input, indexes } => Ok(input.signature(env)?.restrict(indexes)),
            Expr::Complement(input) => input.signature(env),
            Expr::Intersect(a, b) | Expr::Union(a, b) | Expr::Difference(a, b) => {
                let (left, right) = (a.signature(env)?, b.signature(env)?);
                if left == right {
                    Ok(left)
                } else {
                    Err(Error::SignatureMismatch {
                        left: left.to_string(),
                        right: right.to_string(),
                    })
                }
            }
            Expr::Cylinder { input, extension } => input.signature(env)?.sum(extension),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Union(..) | Expr::Difference(..) => 0,
            Expr::Intersect(..) => 1,
            Expr::Join(parts) if parts.len() > 1 => 2,
            Expr::Join(parts) if parts.len() == 1 => parts[0].precedence(),
            Expr::Complement(_) => 3,
            Expr::Filter { .. } | Expr::Rename { .. } => 4,
            _ => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Base(name) => f.write_str(name),
            Expr::Filter { input, pattern } => {
                input.fmt_at(f, 4)?;
                write!(f, ":{pattern}")
            }
            Expr::Rename { input, pattern } => {
                input.fmt_at(f, 4)?;
                write!(f, ":{pattern}")
            }
            Expr::Join(parts) if parts.is_empty() => f.write_str("project{}(~{})"),
            Expr::Join(parts) => {
                for (n, p) in parts.iter().enumerate() {
                    if n > 0 {
                        f.write_str(" |x| ")?;
                    }
                    p.fmt_at(f, 3)?;
                }
                Ok(())
            }
            Expr::Project { input, indexes } => {
                f.write_str("project{")?;
                write_indexes(f, indexes.iter())?;
                f.write_str("}(")?;
                input.fmt_at(f, 0)?;
                f.write_str(")")
            }
            Expr::Complement(input) => {
                f.write_str("~")?;
                input.fmt_at(f, 3)
            }
            Expr::Intersect(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" & ")?;
                b.fmt_at(f, 2)
            }
            Expr::Union(a, b) => {
                a.fmt_at(f, 0)?;
                f.write_str(" + ")?;
                b.fmt_at(f, 1)
            }
            Expr::Difference(a, b) => {
                a.fmt_at(f, 0)?;
                f.write_str(" - ")?;
                b.fmt_at(f, 1)
            }
            Expr::Cylinder { input, extension } => {
                f.write_str("cyl{")?;
                write_indexes(f, extension.keys())?;
                f.write_str("}(")?;
                input.fmt_at(f, 0)?;
                f.write_str(")")
            }
        }
    }
}

fn write_indexes<'a>(
    f: &mut fmt::Formatter<'_>,
    indexes: impl Iterator<Item = &'a Index>,
) -> fmt::Result {
    for (n, i) in indexes.enumerate() {
        if n > 0 {
            f.write_str(",")?;
        }
        write!(f, "{i}")?;
    }
    Ok(())
}

fn lookup<'e, E: Environment + ?Sized>(env: &'e E, name: &str) -> Result<&'e Relation> {
    env.relation(name)
        .ok_or_else(|| Error::UnknownRelation(name.to_string()))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Domain, DomainId};
    use crate::pattern::Term;
    use std::collections::HashMap;

    struct Env {
        registry: Registry,
        relations: HashMap<String, Relation>,
    }

    impl Environment for Env {
        fn relation(&self, name: &str) -> Option<&Relation> {
            self.relations.get(name)
        }
        fn registry(&self) -> &Registry {
            &self.registry
        }
    }

    fn d() -> DomainId {
        DomainId::new("person")
    }

    fn pc_env() -> Env {
        let registry =
            Registry::with_domains([
                Domain::new("person", ["mary", "john", "alan", "joan"]).unwrap()
            ])
            .unwrap();
        let sig: Signature = Index::iota(2).into_iter().map(|i| (i, d())).collect();
        let pc = Relation::from_rows(
            sig,
            &Index::iota(2),
            [["mary", "john"], ["john", "alan"], ["mary", "joan"]],
        )
        .unwrap();
        Env {
            registry,
            relations: [("pc".to_string(), pc)].into_iter().collect(),
        }
    }

    fn grandparent() -> Expr {
        let p = |a: &str, b: &str| Pattern::positional([Term::var(a), Term::var(b)], &d());
        Expr::Join(vec![
            Expr::base("pc").filter(p("x", "y")),
            Expr::base("pc").filter(p("y", "z")),
        ])
        .project([Index::new("x"), Index::new("z")])
    }

    #[test]
    fn grandparent_query() {
        let env = pc_env();
        let r = grandparent().evaluate(&env).unwrap();
        let (cols, rows) = r.sorted_rows();
        assert_eq!(cols, vec![Index::new("x"), Index::new("z")]);
        assert_eq!(rows, vec![vec!["mary".to_string(), "alan".to_string()]]);
        assert_eq!(
            grandparent()
                .evaluate_with(&env, JoinStrategy::Cylinder)
                .unwrap(),
            r
        );
        assert_eq!(grandparent().signature(&env).unwrap(), *r.signature());
    }

    #[test]
    fn display_uses_algebra_syntax() {
        assert_eq!(
            grandparent().to_string(),
            "project{x,z}(pc:[x,y] |x| pc:[y,z])"
        );
        let e = Expr::Union(
            Box::new(Expr::base("a")),
            Box::new(Expr::Intersect(
                Box::new(Expr::base("b")),
                Box::new(Expr::base("c")),
            )),
        );
        assert_eq!(e.to_string(), "a + b & c");
        let e = Expr::Intersect(
            Box::new(Expr::Union(
                Box::new(Expr::base("a")),
                Box::new(Expr::base("b")),
            )),
            Box::new(Expr::base("c")),
        );
        assert_eq!(e.to_string(), "(a + b) & c");
        assert_eq!(Expr::base("a").complement().complement().to_string(), "~~a");
    }

    #[test]
    fn unknown_relation() {
        assert!(matches!(
            Expr::base("nope").evaluate(&pc_env()),
            Err(Error::UnknownRelation(_))
        ));
    }
}
