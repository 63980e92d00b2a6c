//! Patterns, matching substitutions, and tuple matching.

use std::collections::BTreeSet;
use std::fmt;

use crate::domain::{signature_of, DomainId, Index, Signature, Tuple, Value};
use crate::error::{Error, Result};
use crate::func::FnMap;

/// A pattern component: an indeterminate to be substituted, or a ground
/// value that the matched component must equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Indeterminate(Index),
    Ground(Value),
}

impl Term {
    pub fn var(name: impl AsRef<str>) -> Self {
        Term::Indeterminate(Index::new(name))
    }

    pub fn as_var(&self) -> Option<&Index> {
        match self {
            Term::Indeterminate(x) => Some(x),
            Term::Ground(_) => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Indeterminate(x) => write!(f, "{x}"),
            Term::Ground(v) => write!(f, "'{v}'"),
        }
    }
}

/// A matching substitution: indeterminates to values. It is itself a tuple
/// indexed by the indeterminates.
pub type Substitution = Tuple;

/// A map from indexes to terms, together with the typing φ of its
/// indeterminates.
///
/// `var_typing` may type indeterminates that do not occur in `entries`;
/// filtering ranges those over their whole domain.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pattern {
    entries: FnMap<Index, Term>,
    var_typing: Signature,
}

impl Pattern {
    pub fn new(entries: FnMap<Index, Term>, var_typing: Signature) -> Result<Self> {
        for term in entries.values() {
            if let Term::Indeterminate(x) = term {
                if !var_typing.contains_key(x) {
                    return Err(Error::IncompatiblePattern(format!(
                        "indeterminate `{x}` has no type"
                    )));
                }
            }
        }
        Ok(Pattern {
            entries,
            var_typing,
        })
    }

    /// Builds a pattern over `signature`, taking each indeterminate's type
    /// from the positions where it occurs.
    pub fn infer(entries: FnMap<Index, Term>, signature: &Signature) -> Result<Self> {
        if entries.key_set() != signature.key_set() {
            return Err(Error::IncompatiblePattern(format!(
                "pattern indexes {:?} differ from signature indexes {:?}",
                entries.key_set(),
                signature.key_set()
            )));
        }
        let mut var_typing = Signature::new();
        for (i, term) in &entries {
            let domain = &signature.as_map()[i];
            match term {
                Term::Indeterminate(x) => match var_typing.get(x) {
                    Some(d) if d != domain => {
                        return Err(Error::IncompatiblePattern(format!(
                            "`{x}` occurs at indexes of domains `{d}` and `{domain}`"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        var_typing.insert(x.clone(), domain.clone());
                    }
                },
                Term::Ground(v) if &v.domain != domain => {
                    return Err(Error::IncompatiblePattern(format!(
                        "ground value `{v}` of domain `{}` at index `{i}` of domain `{domain}`",
                        v.domain
                    )))
                }
                Term::Ground(_) => {}
            }
        }
        Ok(Pattern {
            entries,
            var_typing,
        })
    }

    /// A pattern over ι(n) with every indeterminate typed by `domain`.
    pub fn positional(terms: impl IntoIterator<Item = Term>, domain: &DomainId) -> Self {
        let entries: FnMap<Index, Term> = terms
            .into_iter()
            .enumerate()
            .map(|(i, t)| (Index::position(i), t))
            .collect();
        let var_typing = entries
            .values()
            .filter_map(Term::as_var)
            .map(|x| (x.clone(), domain.clone()))
            .collect();
        Pattern {
            entries,
            var_typing,
        }
    }

    /// Adds indeterminates that need not occur in the pattern.
    pub fn with_extra_variables(mut self, extra: &Signature) -> Result<Self> {
        self.var_typing = self.var_typing.sum(extra)?;
        Ok(self)
    }

    pub fn entries(&self) -> &FnMap<Index, Term> {
        &self.entries
    }

    pub fn var_typing(&self) -> &Signature {
        &self.var_typing
    }

    /// Indeterminates occurring in the pattern.
    pub fn vars(&self) -> BTreeSet<Index> {
        self.entries
            .values()
            .filter_map(Term::as_var)
            .cloned()
            .collect()
    }

    pub fn check_compatible(&self, signature: &Signature) -> Result<()> {
        if self.entries.key_set() != signature.key_set() {
            return Err(Error::IncompatiblePattern(format!(
                "pattern indexes {:?} differ from signature indexes {:?}",
                self.entries.key_set(),
                signature.key_set()
            )));
        }
        for (i, term) in &self.entries {
            let expected = &signature.as_map()[i];
            let found = match term {
                Term::Indeterminate(x) => &self.var_typing.as_map()[x],
                Term::Ground(v) => &v.domain,
            };
            if found != expected {
                return Err(Error::IncompatiblePattern(format!(
                    "index `{i}` has domain `{expected}` but the pattern supplies `{term}` of domain `{found}`"
                )));
            }
        }
        Ok(())
    }

    /// All components are indeterminates and no two coincide, and the
    /// typing covers exactly those indeterminates.
    pub fn is_bijective(&self) -> bool {
        let vars = self.vars();
        vars.len() == self.entries.len()
            && self.entries.values().all(|t| t.as_var().is_some())
            && vars == self.var_typing.key_set()
    }

    /// p⁻¹ for a bijective pattern p: a pattern over the indeterminates
    /// whose components are the original indexes.
    pub fn inverse(&self) -> Result<Pattern> {
        if !self.is_bijective() {
            return Err(Error::NotBijective(self.to_string()));
        }
        let mut entries = FnMap::new();
        let mut var_typing = Signature::new();
        for (i, term) in &self.entries {
            let x = term
                .as_var()
                .expect("bijective pattern has only indeterminates");
            entries.insert(x.clone(), Term::Indeterminate(i.clone()));
            var_typing.insert(i.clone(), self.var_typing.as_map()[x].clone());
        }
        Ok(Pattern {
            entries,
            var_typing,
        })
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numeric = self
            .entries
            .keys()
            .enumerate()
            .all(|(n, i)| i.as_str() == n.to_string());
        if numeric {
            f.write_str("[")?;
            for (n, t) in self.entries.values().enumerate() {
                if n > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str("]")
        } else {
            f.write_str("{")?;
            for (n, (i, t)) in self.entries.iter().enumerate() {
                if n > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{i}: {t}")?;
            }
            f.write_str("}")
        }
    }
}

/// The substitution `s` over the indeterminates of `p` with `t = s ∘ p`
/// (ground components compared for equality), or `None` when `t` does not
/// match.
pub fn match_tuple(t: &Tuple, p: &Pattern) -> Result<Option<Substitution>> {
    p.check_compatible(&signature_of(t))?;
    Ok(match_unchecked(t, p))
}

/// [`match_tuple`] without the compatibility check.
pub(crate) fn match_unchecked(t: &Tuple, p: &Pattern) -> Option<Substitution> {
    let mut s = Substitution::new();
    for ((_, value), term) in t.iter().zip(p.entries.values()) {
        match term {
            Term::Ground(g) => {
                if g != value {
                    return None;
                }
            }
            Term::Indeterminate(x) => match s.get(x) {
                Some(bound) if bound != value => return None,
                Some(_) => {}
                None => {
                    s.insert(x.clone(), value.clone());
                }
            },
        }
    }
    Some(s)
}
