//! Interpretations and the satisfaction semantics, used as the reference
//! the compiler is checked against.

use std::collections::BTreeMap;

use crate::algebra::Environment;
use crate::domain::{numeric_tuple, Domain, DomainId, Index, Registry, Signature, Tuple, Value};
use crate::error::{Error, Result};
use crate::relation::Relation;

use super::formula::{Formula, LogicTerm};

/// Variables to domain elements.
pub type Assignment = Tuple;

/// A single domain D, predicate symbols interpreted as numerically indexed
/// relations over D, and constant symbols interpreted as elements of D.
#[derive(Clone, Debug)]
pub struct Interpretation {
    domain: Domain,
    registry: Registry,
    predicates: BTreeMap<String, Relation>,
    constants: BTreeMap<String, Value>,
}

impl Interpretation {
    pub fn new(domain: Domain) -> Self {
        let registry =
            Registry::with_domains([domain.clone()]).expect("a single domain is disjoint");
        Interpretation {
            domain,
            registry,
            predicates: BTreeMap::new(),
            constants: BTreeMap::new(),
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn domain_id(&self) -> &DomainId {
        self.domain.id()
    }

    /// The signature ι(k) → D.
    pub fn numeric_signature(&self, arity: usize) -> Signature {
        Index::iota(arity)
            .into_iter()
            .map(|i| (i, self.domain.id().clone()))
            .collect()
    }

    /// Interprets `symbol` as `relation`, which must be indexed by ι(k) with
    /// every column typed by D.
    pub fn add_predicate(&mut self, symbol: &str, relation: Relation) -> Result<()> {
        let expected = self.numeric_signature(relation.signature().len());
        if relation.signature() != &expected {
            return Err(Error::SignatureMismatch {
                left: relation.signature().to_string(),
                right: expected.to_string(),
            });
        }
        self.predicates.insert(symbol.to_string(), relation);
        Ok(())
    }

    /// Interprets `symbol` as the set of `rows`, each a list of literals of D.
    pub fn add_predicate_rows<R, S>(&mut self, symbol: &str, arity: usize, rows: R) -> Result<()>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let extent = rows
            .into_iter()
            .map(|row| {
                let values = row
                    .into_iter()
                    .map(|l| self.registry.value(self.domain.id(), l.as_ref()))
                    .collect::<Result<Vec<_>>>()?;
                if values.len() != arity {
                    return Err(Error::ArityMismatch {
                        predicate: symbol.to_string(),
                        expected: arity,
                        found: values.len(),
                    });
                }
                Ok(numeric_tuple(values))
            })
            .collect::<Result<Vec<_>>>()?;
        let relation = Relation::new(self.numeric_signature(arity), extent)?;
        self.add_predicate(symbol, relation)
    }

    /// Interprets constant `symbol` as `literal` of D, overriding the
    /// default that a symbol denotes the identically named literal.
    pub fn add_constant(&mut self, symbol: &str, literal: &str) -> Result<()> {
        let value = self.registry.value(self.domain.id(), literal)?;
        self.constants.insert(symbol.to_string(), value);
        Ok(())
    }

    pub fn predicate(&self, symbol: &str) -> Result<&Relation> {
        self.predicates
            .get(symbol)
            .ok_or_else(|| Error::UnknownPredicate(symbol.to_string()))
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, &Relation)> {
        self.predicates.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn constant(&self, symbol: &str) -> Result<Value> {
        if let Some(v) = self.constants.get(symbol) {
            return Ok(v.clone());
        }
        if self.domain.contains(symbol) {
            Ok(Value::new(self.domain.id().clone(), symbol))
        } else {
            Err(Error::UnknownConstant(symbol.to_string()))
        }
    }

    /// Arity of `symbol`, checked against `found` arguments.
    pub(crate) fn check_atom(&self, symbol: &str, found: usize) -> Result<&Relation> {
        let rel = self.predicate(symbol)?;
        let expected = rel.signature().len();
        if expected != found {
            return Err(Error::ArityMismatch {
                predicate: symbol.to_string(),
                expected,
                found,
            });
        }
        Ok(rel)
    }

    /// Checks every predicate, arity, constant and binder in `formula`.
    pub fn check(&self, formula: &Formula) -> Result<()> {
        match formula {
            Formula::Atom { predicate, args } => {
                self.check_atom(predicate, args.len())?;
                for a in args {
                    if let LogicTerm::Const(c) = a {
                        self.constant(c)?;
                    }
                }
                Ok(())
            }
            Formula::Conjunction(cs) => cs.iter().try_for_each(|c| self.check(c)),
            Formula::Exists { bound, body } => {
                for (n, x) in bound.iter().enumerate() {
                    if bound[..n].contains(x) {
                        return Err(Error::DuplicateBinding(x.to_string()));
                    }
                }
                self.check(body)
            }
            Formula::Not(body) => self.check(body),
        }
    }
}

impl Environment for Interpretation {
    fn relation(&self, name: &str) -> Option<&Relation> {
        self.predicates.get(name)
    }

    fn registry(&self) -> &Registry {
        &self.registry
    }
}

/// Whether `formula` is satisfied by `m` under `assignment`.
pub fn satisfies(m: &Interpretation, assignment: &Assignment, formula: &Formula) -> Result<bool> {
    m.check(formula)?;
    for x in formula.free_vars() {
        match assignment.get(&x) {
            None => return Err(Error::UnboundVariable(x.to_string())),
            Some(v) if !m.domain.contains(v.literal()) || v.domain != *m.domain.id() => {
                return Err(Error::NotInDomain {
                    value: v.to_string(),
                    domain: m.domain.id().to_string(),
                })
            }
            Some(_) => {}
        }
    }
    let mut scratch = assignment.clone();
    Ok(holds(m, &mut scratch, formula))
}

/// Recursive truth evaluation over a checked formula. The assignment is
/// updated in place for quantifiers and restored afterwards.
fn holds(m: &Interpretation, a: &mut Assignment, formula: &Formula) -> bool {
    match formula {
        Formula::Atom { predicate, args } => {
            let values = args.iter().map(|t| match t {
                LogicTerm::Var(x) => a
                    .get(x)
                    .cloned()
                    .expect("checked: free variables are bound"),
                LogicTerm::Const(c) => m.constant(c).expect("checked: constants are interpreted"),
            });
            m.predicates[predicate].contains(&numeric_tuple(values))
        }
        Formula::Conjunction(cs) => cs.iter().all(|c| holds(m, a, c)),
        Formula::Exists { bound, body } => {
            let saved: Vec<Option<Value>> = bound.iter().map(|x| a.get(x).cloned()).collect();
            let found = exists_witness(m, a, bound, body);
            for (x, old) in bound.iter().zip(saved) {
                match old {
                    Some(v) => {
                        a.insert(x.clone(), v);
                    }
                    None => {
                        a.remove(x);
                    }
                }
            }
            found
        }
        Formula::Not(body) => !holds(m, a, body),
    }
}

/// Tries every d ∈ D for the first bound variable, then recurses on the rest.
fn exists_witness(m: &Interpretation, a: &mut Assignment, bound: &[Index], body: &Formula) -> bool {
    match bound.split_first() {
        None => holds(m, a, body),
        Some((x, rest)) => m.domain.values().any(|d| {
            a.insert(x.clone(), d);
            exists_witness(m, a, rest, body)
        }),
    }
}

/// The relation denoted by `formula`: over its free variables, every
/// assignment of them that satisfies it. Computed by enumerating D^|X|.
pub fn denote_oracle(m: &Interpretation, formula: &Formula) -> Result<Relation> {
    m.check(formula)?;
    let signature: Signature = formula
        .free_vars()
        .into_iter()
        .map(|x| (x, m.domain.id().clone()))
        .collect();
    let mut extent = std::collections::BTreeSet::new();
    for t in m.registry.cart_iter(&signature)? {
        let mut a = t.clone();
        if holds(m, &mut a, formula) {
            extent.insert(t);
        }
    }
    Ok(Relation::from_parts_unchecked(signature, extent))
}
