use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::domain::{DomainId, Index, Registry, Signature};
use crate::error::{Error, Result};
use crate::relation::Relation;

/// A comparison between two integer-valued attributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BuiltinKind {
    Leq,
    Lt,
    Eq,
    Neq,
}

impl BuiltinKind {
    pub fn holds(self, a: i64, b: i64) -> bool {
        match self {
            BuiltinKind::Leq => a <= b,
            BuiltinKind::Lt => a < b,
            BuiltinKind::Eq => a == b,
            BuiltinKind::Neq => a != b,
        }
    }
}

impl fmt::Display for BuiltinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuiltinKind::Leq => "leq",
            BuiltinKind::Lt => "lt",
            BuiltinKind::Eq => "eq",
            BuiltinKind::Neq => "neq",
        })
    }
}

/// An intensional relation `name(attributes[0], attributes[1])` holding
/// where `kind` holds between the integer readings of the two values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltinDecl {
    pub name: String,
    pub kind: BuiltinKind,
    pub attributes: [Index; 2],
    pub domain: DomainId,
}

impl BuiltinDecl {
    pub fn new(
        name: &str,
        kind: BuiltinKind,
        attributes: &[Index],
        typing: &IndexMap<Index, DomainId>,
    ) -> Result<Self> {
        let invalid = |message: String| Error::InvalidBuiltin {
            name: name.to_string(),
            message,
        };
        let [a, b] = attributes else {
            return Err(invalid(format!(
                "needs exactly two attributes, got {}",
                attributes.len()
            )));
        };
        if a == b {
            return Err(invalid(format!("attribute `{a}` given twice")));
        }
        let domain_of = |i: &Index| {
            typing
                .get(i)
                .cloned()
                .ok_or_else(|| invalid(format!("undeclared attribute `{i}`")))
        };
        let (da, db) = (domain_of(a)?, domain_of(b)?);
        if da != db {
            return Err(invalid(format!(
                "`{a}` is over `{da}` but `{b}` is over `{db}`"
            )));
        }
        Ok(BuiltinDecl {
            name: name.to_string(),
            kind,
            attributes: [a.clone(), b.clone()],
            domain: da,
        })
    }

    pub fn signature(&self) -> Signature {
        self.attributes
            .iter()
            .map(|a| (a.clone(), self.domain.clone()))
            .collect()
    }
}

/// All pairs over the declared domain for which the comparison holds.
pub fn materialize_builtin(decl: &BuiltinDecl, registry: &Registry) -> Result<Relation> {
    let domain = registry.domain(&decl.domain)?;
    let values = domain
        .values()
        .map(|v| match v.as_integer() {
            Some(n) => Ok((v, n)),
            None => Err(Error::NonIntegerDomain {
                domain: decl.domain.to_string(),
                literal: v.literal().to_string(),
            }),
        })
        .collect::<Result<Vec<_>>>()?;
    let [left, right] = &decl.attributes;
    let mut extent = Vec::new();
    for (u, a) in &values {
        for (v, b) in &values {
            if decl.kind.holds(*a, *b) {
                extent.push(
                    [(left.clone(), u.clone()), (right.clone(), v.clone())]
                        .into_iter()
                        .collect(),
                );
            }
        }
    }
    Relation::new(decl.signature(), extent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;

    fn setup(n: usize) -> (Registry, IndexMap<Index, DomainId>) {
        let registry = Registry::with_domains([Domain::naturals("n", n).unwrap()]).unwrap();
        let typing = [("rqty", "n"), ("pqty", "n")]
            .iter()
            .map(|(a, d)| (Index::new(a), DomainId::new(d)))
            .collect();
        (registry, typing)
    }

    fn decl(kind: BuiltinKind, typing: &IndexMap<Index, DomainId>) -> BuiltinDecl {
        BuiltinDecl::new("b", kind, &[Index::new("rqty"), Index::new("pqty")], typing).unwrap()
    }

    /// Pairs r ≤ p over {0..3}: 4 + 3 + 2 + 1.
    #[test]
    fn leq_over_four() {
        let (reg, typing) = setup(4);
        assert_eq!(
            materialize_builtin(&decl(BuiltinKind::Leq, &typing), &reg)
                .unwrap()
                .len(),
            10
        );
    }

    #[test]
    fn eq_is_diagonal_and_lt_on_singleton_is_empty() {
        let (reg, typing) = setup(5);
        assert_eq!(
            materialize_builtin(&decl(BuiltinKind::Eq, &typing), &reg)
                .unwrap()
                .len(),
            5
        );
        assert_eq!(
            materialize_builtin(&decl(BuiltinKind::Neq, &typing), &reg)
                .unwrap()
                .len(),
            20
        );
        let (reg1, typing1) = setup(1);
        assert!(materialize_builtin(&decl(BuiltinKind::Lt, &typing1), &reg1)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn non_integer_domain() {
        let registry = Registry::with_domains([Domain::new("w", ["1", "two"]).unwrap()]).unwrap();
        let typing = [("a", "w"), ("b", "w")]
            .iter()
            .map(|(a, d)| (Index::new(a), DomainId::new(d)))
            .collect();
        let d = BuiltinDecl::new(
            "b",
            BuiltinKind::Lt,
            &[Index::new("a"), Index::new("b")],
            &typing,
        )
        .unwrap();
        assert!(matches!(
            materialize_builtin(&d, &registry),
            Err(Error::NonIntegerDomain { .. })
        ));
    }

    #[test]
    fn invalid_declarations() {
        let (_, typing) = setup(2);
        assert!(BuiltinDecl::new("b", BuiltinKind::Lt, &[Index::new("rqty")], &typing).is_err());
        assert!(BuiltinDecl::new(
            "b",
            BuiltinKind::Lt,
            &[Index::new("rqty"), Index::new("zz")],
            &typing
        )
        .is_err());
        assert!(BuiltinDecl::new(
            "b",
            BuiltinKind::Lt,
            &[Index::new("rqty"), Index::new("rqty")],
            &typing
        )
        .is_err());
    }
}
