//! Indexes, domains, values and the sorting function.
//!
//! Every value is tagged with the domain that owns it. A [`Registry`]
//! refuses two domains that share a literal, so the domains it holds form a
//! set of disjoint sets and the owner of any literal is unique.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::func::FnMap;

/// An index of a tuple: an attribute, a role name, a variable, or a numeric
/// position `"0".."n-1"`.
///
/// Numeric indexes order by integer value and precede all others; the rest
/// order lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Index(Arc<str>);

impl Index {
    pub fn new(name: impl AsRef<str>) -> Self {
        Index(Arc::from(name.as_ref()))
    }

    /// The `i`th numeric index.
    pub fn position(i: usize) -> Self {
        Index::new(i.to_string())
    }

    /// The numeric index set ι(n).
    pub fn iota(n: usize) -> Vec<Index> {
        (0..n).map(Index::position).collect()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_numeric(&self) -> bool {
        !self.0.is_empty() && self.0.bytes().all(|b| b.is_ascii_digit())
    }
}

impl Ord for Index {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_numeric(), other.is_numeric()) {
            (true, true) => {
                let a = self.0.trim_start_matches('0');
                let b = other.0.trim_start_matches('0');
                a.len()
                    .cmp(&b.len())
                    .then_with(|| a.cmp(b))
                    .then_with(|| self.0.cmp(&other.0))
            }
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Index {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for Index {
    fn from(s: &str) -> Self {
        Index::new(s)
    }
}

/// Name of a registered domain.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DomainId(Arc<str>);

impl DomainId {
    pub fn new(name: impl AsRef<str>) -> Self {
        DomainId(Arc::from(name.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for DomainId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for DomainId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for DomainId {
    fn from(s: &str) -> Self {
        DomainId::new(s)
    }
}

/// A domain element. Two values are equal iff domain and literal agree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value {
    pub domain: DomainId,
    pub literal: Arc<str>,
}

impl Value {
    /// Builds a value without checking membership; see [`Registry::value`].
    pub fn new(domain: impl Into<DomainId>, literal: impl AsRef<str>) -> Self {
        Value {
            domain: domain.into(),
            literal: Arc::from(literal.as_ref()),
        }
    }

    pub fn literal(&self) -> &str {
        &self.literal
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.literal.parse().ok()
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal)
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.literal, self.domain)
    }
}

/// A finite map from indexes to values.
pub type Tuple = FnMap<Index, Value>;

/// A finite map from indexes to domains; the type of a set of tuples.
pub type Signature = FnMap<Index, DomainId>;

/// Builds a tuple over ι(n) from a sequence of values.
pub fn numeric_tuple(values: impl IntoIterator<Item = Value>) -> Tuple {
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| (Index::position(i), v))
        .collect()
}

/// The signature by which `t` is sorted: each index mapped to the domain of
/// its value.
pub fn signature_of(t: &Tuple) -> Signature {
    t.map_values(|v| v.domain.clone())
}

pub fn is_sorted_by(t: &Tuple, signature: &Signature) -> bool {
    t.len() == signature.len() && t.iter().all(|(i, v)| signature.get(i) == Some(&v.domain))
}

/// A finite, non-empty, duplicate-free list of literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    id: DomainId,
    literals: Vec<Arc<str>>,
}

impl Domain {
    pub fn new<S: AsRef<str>>(
        id: impl Into<DomainId>,
        literals: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let id = id.into();
        let literals: Vec<Arc<str>> = literals
            .into_iter()
            .map(|s| Arc::from(s.as_ref()))
            .collect();
        if literals.is_empty() {
            return Err(Error::EmptyDomain(id.to_string()));
        }
        let mut seen = BTreeSet::new();
        for l in &literals {
            if !seen.insert(l.clone()) {
                return Err(Error::DuplicateLiteral {
                    domain: id.to_string(),
                    literal: l.to_string(),
                });
            }
        }
        Ok(Domain { id, literals })
    }

    /// The domain `{0, .., n-1}`.
    pub fn naturals(id: impl Into<DomainId>, n: usize) -> Result<Self> {
        Domain::new(id, (0..n).map(|i| i.to_string()))
    }

    pub fn id(&self) -> &DomainId {
        &self.id
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn literals(&self) -> impl Iterator<Item = &str> {
        self.literals.iter().map(|l| &**l)
    }

    pub fn contains(&self, literal: &str) -> bool {
        self.literals.iter().any(|l| &**l == literal)
    }

    /// Values in declaration order.
    pub fn values(&self) -> impl Iterator<Item = Value> + '_ {
        self.literals.iter().map(|l| Value {
            domain: self.id.clone(),
            literal: l.clone(),
        })
    }
}

/// The registered domains, pairwise disjoint.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    domains: Vec<Domain>,
    by_id: HashMap<DomainId, usize>,
    owner: HashMap<Arc<str>, usize>,
}

impl PartialEq for Registry {
    fn eq(&self, other: &Self) -> bool {
        self.domains == other.domains
    }
}

impl Eq for Registry {}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_domains(domains: impl IntoIterator<Item = Domain>) -> Result<Self> {
        let mut registry = Registry::new();
        for d in domains {
            registry.register(d)?;
        }
        Ok(registry)
    }

    pub fn register(&mut self, domain: Domain) -> Result<()> {
        if self.by_id.contains_key(&domain.id) {
            return Err(Error::DuplicateDomain(domain.id.to_string()));
        }
        for l in &domain.literals {
            if let Some(&other) = self.owner.get(l) {
                return Err(Error::OverlappingDomains {
                    literal: l.to_string(),
                    first: self.domains[other].id.to_string(),
                    second: domain.id.to_string(),
                });
            }
        }
        let slot = self.domains.len();
        for l in &domain.literals {
            self.owner.insert(l.clone(), slot);
        }
        self.by_id.insert(domain.id.clone(), slot);
        self.domains.push(domain);
        Ok(())
    }

    pub fn domain(&self, id: &DomainId) -> Result<&Domain> {
        self.by_id
            .get(id)
            .map(|&i| &self.domains[i])
            .ok_or_else(|| Error::UnknownDomain(id.to_string()))
    }

    /// Domains in registration order.
    pub fn domains(&self) -> impl Iterator<Item = &Domain> {
        self.domains.iter()
    }

    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }

    /// The sorting function: the unique domain owning `literal`.
    pub fn sort_value(&self, literal: &str) -> Result<DomainId> {
        self.owner
            .get(literal)
            .map(|&i| self.domains[i].id.clone())
            .ok_or_else(|| Error::UnknownLiteral(literal.to_string()))
    }

    /// Tags `literal` with its owning domain.
    pub fn literal_value(&self, literal: &str) -> Result<Value> {
        Ok(Value::new(self.sort_value(literal)?, literal))
    }

    /// A checked value of domain `id`.
    pub fn value(&self, id: &DomainId, literal: &str) -> Result<Value> {
        if self.domain(id)?.contains(literal) {
            Ok(Value::new(id.clone(), literal))
        } else {
            Err(Error::NotInDomain {
                value: literal.to_string(),
                domain: id.to_string(),
            })
        }
    }

    /// The sorting function as a finite map over every registered value.
    pub fn sorting_function(&self) -> FnMap<Value, DomainId> {
        self.domains
            .iter()
            .flat_map(|d| d.values().map(move |v| (v, d.id.clone())))
            .collect()
    }

    pub fn check_signature(&self, signature: &Signature) -> Result<()> {
        signature
            .values()
            .try_for_each(|d| self.domain(d).map(|_| ()))
    }

    /// Number of tuples sorted by `signature`, saturating.
    pub fn cart_size(&self, signature: &Signature) -> Result<u128> {
        signature.values().try_fold(1u128, |acc, d| {
            Ok(acc.saturating_mul(self.domain(d)?.len() as u128))
        })
    }

    /// Iterates over every tuple sorted by `signature`, in odometer order
    /// over the declared literal order (last index varies fastest).
    pub fn cart_iter(&self, signature: &Signature) -> Result<CartIter<'_>> {
        let columns = signature
            .iter()
            .map(|(i, d)| Ok((i.clone(), self.domain(d)?)))
            .collect::<Result<Vec<_>>>()?;
        let counters = vec![0; columns.len()];
        Ok(CartIter {
            columns,
            counters,
            done: false,
        })
    }

    /// The Cartesian product on `signature`.
    pub fn cart_enumerate(&self, signature: &Signature) -> Result<BTreeSet<Tuple>> {
        Ok(self.cart_iter(signature)?.collect())
    }
}

/// See [`Registry::cart_iter`].
pub struct CartIter<'a> {
    columns: Vec<(Index, &'a Domain)>,
    counters: Vec<usize>,
    done: bool,
}

impl Iterator for CartIter<'_> {
    type Item = Tuple;

    fn next(&mut self) -> Option<Tuple> {
        if self.done {
            return None;
        }
        let tuple = self
            .columns
            .iter()
            .zip(&self.counters)
            .map(|((i, d), &k)| {
                (
                    i.clone(),
                    Value {
                        domain: d.id.clone(),
                        literal: d.literals[k].clone(),
                    },
                )
            })
            .collect();
        self.done = true;
        for (slot, (_, d)) in self.counters.iter_mut().zip(&self.columns).rev() {
            *slot += 1;
            if *slot < d.len() {
                self.done = false;
                break;
            }
            *slot = 0;
        }
        Some(tuple)
    }
}
