//! Relations as signature/extent pairs, and the operations on them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::domain::{is_sorted_by, Index, Registry, Signature, Tuple, Value};
use crate::error::{Error, Result};
use crate::pattern::{match_unchecked, Pattern};

/// A signature together with a finite set of tuples sorted by it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relation {
    signature: Signature,
    extent: BTreeSet<Tuple>,
}

impl Relation {
    pub fn new(signature: Signature, extent: impl IntoIterator<Item = Tuple>) -> Result<Self> {
        let extent: BTreeSet<Tuple> = extent.into_iter().collect();
        if let Some(t) = extent.iter().find(|t| !is_sorted_by(t, &signature)) {
            return Err(Error::NotSorted {
                tuple: t.to_string(),
                signature: signature.to_string(),
            });
        }
        Ok(Relation { signature, extent })
    }

    /// Builds a relation from rows given in the order of `columns`.
    pub fn from_rows<R, S>(signature: Signature, columns: &[Index], rows: R) -> Result<Self>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let extent = rows
            .into_iter()
            .map(|row| {
                columns
                    .iter()
                    .zip(row)
                    .map(|(i, literal)| {
                        let domain = signature
                            .get(i)
                            .ok_or_else(|| Error::IncompatiblePattern(format!("no index `{i}`")))?;
                        Ok((i.clone(), Value::new(domain.clone(), literal)))
                    })
                    .collect::<Result<Tuple>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Relation::new(signature, extent)
    }

    pub(crate) fn from_parts_unchecked(signature: Signature, extent: BTreeSet<Tuple>) -> Self {
        Relation { signature, extent }
    }

    pub fn empty(signature: Signature) -> Self {
        Relation {
            signature,
            extent: BTreeSet::new(),
        }
    }

    /// ⟨τ, cart(τ)⟩.
    pub fn full(signature: Signature, registry: &Registry) -> Result<Self> {
        let extent = registry.cart_enumerate(&signature)?;
        Ok(Relation { signature, extent })
    }

    /// `{t ∈ cart(τ) | keep(t)}`.
    pub fn comprehension(
        signature: Signature,
        registry: &Registry,
        mut keep: impl FnMut(&Tuple) -> bool,
    ) -> Result<Self> {
        let extent = registry
            .cart_iter(&signature)?
            .filter(|t| keep(t))
            .collect();
        Ok(Relation { signature, extent })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn extent(&self) -> &BTreeSet<Tuple> {
        &self.extent
    }

    pub fn into_extent(self) -> BTreeSet<Tuple> {
        self.extent
    }

    pub fn index_set(&self) -> BTreeSet<Index> {
        self.signature.key_set()
    }

    pub fn len(&self) -> usize {
        self.extent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extent.is_empty()
    }

    pub fn contains(&self, t: &Tuple) -> bool {
        self.extent.contains(t)
    }

    fn same_signature(&self, other: &Relation) -> Result<()> {
        if self.signature == other.signature {
            Ok(())
        } else {
            Err(Error::SignatureMismatch {
                left: self.signature.to_string(),
                right: other.signature.to_string(),
            })
        }
    }

    pub fn intersect(&self, other: &Relation) -> Result<Relation> {
        self.same_signature(other)?;
        Ok(self.with_extent(self.extent.intersection(&other.extent).cloned().collect()))
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.same_signature(other)?;
        Ok(self.with_extent(self.extent.union(&other.extent).cloned().collect()))
    }

    pub fn difference(&self, other: &Relation) -> Result<Relation> {
        self.same_signature(other)?;
        Ok(self.with_extent(self.extent.difference(&other.extent).cloned().collect()))
    }

    /// ⟨τ, cart(τ) ∖ E⟩.
    pub fn complement(&self, registry: &Registry) -> Result<Relation> {
        let extent = registry
            .cart_iter(&self.signature)?
            .filter(|t| !self.extent.contains(t))
            .collect();
        Ok(self.with_extent(extent))
    }

    fn with_extent(&self, extent: BTreeSet<Tuple>) -> Relation {
        Relation {
            signature: self.signature.clone(),
            extent,
        }
    }

    /// Projection on `indexes`, intersected with the index set.
    pub fn project<'a>(&self, indexes: impl IntoIterator<Item = &'a Index>) -> Relation {
        let signature = self.signature.restrict(indexes);
        let keys: Vec<&Index> = signature.keys().collect();
        let extent = self
            .extent
            .iter()
            .map(|t| t.restrict(keys.iter().copied()))
            .collect();
        Relation { signature, extent }
    }

    /// The largest relation over `self.signature + extension` whose
    /// projection back onto this relation's indexes lies in this relation.
    pub fn cylinder(&self, extension: &Signature, registry: &Registry) -> Result<Relation> {
        let signature = self.signature.sum(extension)?;
        let new: Signature = signature
            .iter()
            .filter(|(i, _)| !self.signature.contains_key(i))
            .map(|(i, d)| (i.clone(), d.clone()))
            .collect();
        let fill: Vec<Tuple> = registry.cart_iter(&new)?.collect();
        let mut extent = BTreeSet::new();
        for t in &self.extent {
            for f in &fill {
                extent.insert(merge_disjoint(t, f));
            }
        }
        Ok(Relation { signature, extent })
    }

    /// Natural join on shared indexes, computed by hashing the smaller
    /// operand on its shared sub-tuple.
    pub fn join(&self, other: &Relation) -> Result<Relation> {
        let signature = self.signature.sum(&other.signature)?;
        let shared: Vec<Index> = self
            .signature
            .keys()
            .filter(|i| other.signature.contains_key(i))
            .cloned()
            .collect();
        let (build, probe) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut table: HashMap<Tuple, Vec<&Tuple>> = HashMap::with_capacity(build.len());
        for t in &build.extent {
            table.entry(t.restrict(&shared)).or_default().push(t);
        }
        let mut extent = BTreeSet::new();
        for t in &probe.extent {
            if let Some(matches) = table.get(&t.restrict(&shared)) {
                for m in matches {
                    extent.insert(merge_disjoint(t, m));
                }
            }
        }
        Ok(Relation { signature, extent })
    }

    /// The join as defined: the intersection of the two cylinders over the
    /// summed signature. Exponential in the number of unshared indexes.
    pub fn join_via_cylinders(&self, other: &Relation, registry: &Registry) -> Result<Relation> {
        let c0 = self.cylinder(&other.signature, registry)?;
        let c1 = other.cylinder(&self.signature, registry)?;
        c0.intersect(&c1)
    }

    /// Relational product: the join of relations with disjoint index sets.
    pub fn product(&self, other: &Relation) -> Result<Relation> {
        if self
            .signature
            .keys()
            .any(|i| other.signature.contains_key(i))
        {
            return Err(Error::SignatureMismatch {
                left: self.signature.to_string(),
                right: other.signature.to_string(),
            });
        }
        self.join(other)
    }

    /// `self : pattern`. The result is indexed by the pattern's
    /// indeterminates. Indeterminates typed by the pattern but not occurring
    /// in it range over their whole domain.
    pub fn filter(&self, pattern: &Pattern, registry: &Registry) -> Result<Relation> {
        pattern.check_compatible(&self.signature)?;
        let occurring = pattern.vars();
        let unused: Signature = pattern
            .var_typing()
            .iter()
            .filter(|(x, _)| !occurring.contains(x))
            .map(|(x, d)| (x.clone(), d.clone()))
            .collect();
        let fill: Vec<Tuple> = registry.cart_iter(&unused)?.collect();
        let mut extent = BTreeSet::new();
        for t in &self.extent {
            if let Some(s) = match_unchecked(t, pattern) {
                for f in &fill {
                    extent.insert(merge_disjoint(&s, f));
                }
            }
        }
        Ok(Relation {
            signature: pattern.var_typing().clone(),
            extent,
        })
    }

    /// Filtering by a bijective pattern: a pure renaming of indexes.
    pub fn rename(&self, pattern: &Pattern) -> Result<Relation> {
        if !pattern.is_bijective() {
            return Err(Error::NotBijective(pattern.to_string()));
        }
        pattern.check_compatible(&self.signature)?;
        let extent = self
            .extent
            .iter()
            .filter_map(|t| match_unchecked(t, pattern))
            .collect();
        Ok(Relation {
            signature: pattern.var_typing().clone(),
            extent,
        })
    }

    /// Index order for display, and each tuple's rendered literals sorted
    /// lexicographically.
    pub fn sorted_rows(&self) -> (Vec<Index>, Vec<Vec<String>>) {
        let columns: Vec<Index> = self.signature.keys().cloned().collect();
        let mut rows: Vec<Vec<String>> = self
            .extent
            .iter()
            .map(|t| t.values().map(|v| v.literal().to_string()).collect())
            .collect();
        rows.sort();
        (columns, rows)
    }
}

/// Sum of two tuples known to agree on shared indexes.
fn merge_disjoint(a: &Tuple, b: &Tuple) -> Tuple {
    let mut out = a.clone();
    for (i, v) in b {
        if !out.contains_key(i) {
            out.insert(i.clone(), v.clone());
        }
    }
    out
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (columns, rows) = self.sorted_rows();
        let header: Vec<String> = columns
            .iter()
            .map(|i| format!("{i}:{}", self.signature.as_map()[i]))
            .collect();
        writeln!(f, "{}", header.join(" | "))?;
        for row in rows {
            writeln!(f, "{}", row.join(" | "))?;
        }
        Ok(())
    }
}
