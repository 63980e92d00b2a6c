//! Finite functions as first-class values.
//!
//! Tuples, signatures, patterns and substitutions are all finite maps from
//! some key set to some target. [`FnMap`] carries the three operations they
//! share: restriction, sum and composition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A finite function, stored as an ordered map from keys to values.
///
/// Equality is map equality, so the order in which entries were inserted
/// never matters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FnMap<K: Ord, V>(BTreeMap<K, V>);

impl<K: Ord, V> Default for FnMap<K, V> {
    fn default() -> Self {
        FnMap(BTreeMap::new())
    }
}

impl<K: Ord + Clone, V: Clone> FnMap<K, V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &K) -> Option<&V> {
        self.0.get(key)
    }

    pub fn contains_key(&self, key: &K) -> bool {
        self.0.contains_key(key)
    }

    pub fn insert(&mut self, key: K, value: V) -> Option<V> {
        self.0.insert(key, value)
    }

    pub fn remove(&mut self, key: &K) -> Option<V> {
        self.0.remove(key)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The domain of definition of this function.
    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    pub fn key_set(&self) -> BTreeSet<K> {
        self.0.keys().cloned().collect()
    }

    pub fn values(&self) -> impl Iterator<Item = &V> {
        self.0.values()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &V)> {
        self.0.iter()
    }

    pub fn as_map(&self) -> &BTreeMap<K, V> {
        &self.0
    }

    pub fn into_map(self) -> BTreeMap<K, V> {
        self.0
    }

    /// Restriction to `keys`. Keys outside the domain of definition are
    /// ignored, so the result is keyed by the intersection.
    pub fn restrict<'a, I>(&self, keys: I) -> Self
    where
        I: IntoIterator<Item = &'a K>,
        K: 'a,
    {
        FnMap(
            keys.into_iter()
                .filter_map(|k| self.0.get(k).map(|v| (k.clone(), v.clone())))
                .collect(),
        )
    }

    /// Applies `f` to every value, keeping the keys.
    pub fn map_values<W, F: FnMut(&V) -> W>(&self, mut f: F) -> FnMap<K, W> {
        FnMap(self.0.iter().map(|(k, v)| (k.clone(), f(v))).collect())
    }
}

impl<K: Ord + Clone + fmt::Display, V: Clone + PartialEq + fmt::Display> FnMap<K, V> {
    /// Two functions are summable when they agree on every shared key.
    pub fn is_summable(&self, other: &Self) -> bool {
        self.first_disagreement(other).is_none()
    }

    fn first_disagreement<'a>(&'a self, other: &'a Self) -> Option<(&'a K, &'a V, &'a V)> {
        let (small, large, flipped) = if self.len() <= other.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        small.0.iter().find_map(|(k, v)| match large.0.get(k) {
            Some(w) if w != v => Some(if flipped { (k, w, v) } else { (k, v, w) }),
            _ => None,
        })
    }

    /// The sum of two summable functions: keyed by the union of both key
    /// sets, agreeing with each operand on its own keys.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if let Some((k, left, right)) = self.first_disagreement(other) {
            return Err(Error::NotSummable {
                index: k.to_string(),
                left: left.to_string(),
                right: right.to_string(),
            });
        }
        let mut out = self.0.clone();
        for (k, v) in &other.0 {
            out.entry(k.clone()).or_insert_with(|| v.clone());
        }
        Ok(FnMap(out))
    }
}

impl<K: Ord + Clone, V: Ord + Clone + fmt::Display> FnMap<K, V> {
    /// `outer ∘ self`: the function mapping each key `i` of `self` to
    /// `outer(self(i))`.
    pub fn compose_with<W: Clone>(&self, outer: &FnMap<V, W>) -> Result<FnMap<K, W>> {
        self.0
            .iter()
            .map(|(k, v)| match outer.0.get(v) {
                Some(w) => Ok((k.clone(), w.clone())),
                None => Err(Error::ComposeKeyMissing(v.to_string())),
            })
            .collect::<Result<BTreeMap<_, _>>>()
            .map(FnMap)
    }
}

/// `outer ∘ inner`.
pub fn compose<K, V, W>(outer: &FnMap<V, W>, inner: &FnMap<K, V>) -> Result<FnMap<K, W>>
where
    K: Ord + Clone,
    V: Ord + Clone + fmt::Display,
    W: Clone,
{
    inner.compose_with(outer)
}

impl<K: Ord, V> FromIterator<(K, V)> for FnMap<K, V> {
    fn from_iter<T: IntoIterator<Item = (K, V)>>(iter: T) -> Self {
        FnMap(iter.into_iter().collect())
    }
}

impl<K: Ord, V> From<BTreeMap<K, V>> for FnMap<K, V> {
    fn from(map: BTreeMap<K, V>) -> Self {
        FnMap(map)
    }
}

impl<K: Ord, V> IntoIterator for FnMap<K, V> {
    type Item = (K, V);
    type IntoIter = std::collections::btree_map::IntoIter<K, V>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a, K: Ord, V> IntoIterator for &'a FnMap<K, V> {
    type Item = (&'a K, &'a V);
    type IntoIter = std::collections::btree_map::Iter<'a, K, V>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl<K: Ord + fmt::Display, V: fmt::Display> fmt::Display for FnMap<K, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, (k, v)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}: {v}")?;
        }
        f.write_str("}")
    }
}

impl<K: Ord + fmt::Debug, V: fmt::Debug> fmt::Debug for FnMap<K, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(&str, i32)]) -> FnMap<String, i32> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn restrict_is_intersection() {
        let t: FnMap<u32, char> = [(0, 'd'), (1, 'b'), (2, 'a'), (3, 'c')]
            .into_iter()
            .collect();
        let sub = t.restrict(&[2, 3]);
        assert_eq!(sub, [(2, 'a'), (3, 'c')].into_iter().collect());
        assert_eq!(sub.get(&0), None);
        assert_eq!(t.restrict(&t.key_set()), t);
        assert!(t.restrict(&[]).is_empty());
        assert_eq!(t.restrict(&[3, 9]).len(), 1);
    }

    #[test]
    fn sum_of_summable_functions() {
        let f0 = m(&[("a", 0), ("b", 1)]);
        let f1 = m(&[("b", 1), ("c", 0)]);
        assert_eq!(f0.sum(&f1).unwrap(), m(&[("a", 0), ("b", 1), ("c", 0)]));
        assert_eq!(f0.sum(&f0).unwrap(), f0);
    }

    #[test]
    fn sum_rejects_disagreement() {
        let err = m(&[("a", 0)]).sum(&m(&[("a", 1)])).unwrap_err();
        match err {
            Error::NotSummable { index, left, right } => {
                assert_eq!(
                    (index.as_str(), left.as_str(), right.as_str()),
                    ("a", "0", "1")
                );
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn compose_substitution_with_pattern() {
        let s: FnMap<char, char> = [('x', 'a'), ('y', 'b'), ('z', 'c')].into_iter().collect();
        let p: FnMap<u32, char> = [(0, 'x'), (1, 'x'), (2, 'z')].into_iter().collect();
        let t = compose(&s, &p).unwrap();
        assert_eq!(t, [(0, 'a'), (1, 'a'), (2, 'c')].into_iter().collect());
    }

    #[test]
    fn compose_with_identity() {
        let t: FnMap<u32, char> = [(0, 'q'), (1, 'r')].into_iter().collect();
        let id: FnMap<char, char> = ['q', 'r', 's'].into_iter().map(|c| (c, c)).collect();
        assert_eq!(compose(&id, &t).unwrap(), t);
    }

    #[test]
    fn compose_missing_key() {
        let s: FnMap<char, char> = [('x', 'a')].into_iter().collect();
        let p: FnMap<u32, char> = [(0, 'x'), (1, 'y')].into_iter().collect();
        assert!(matches!(compose(&s, &p), Err(Error::ComposeKeyMissing(k)) if k == "y"));
    }
}
