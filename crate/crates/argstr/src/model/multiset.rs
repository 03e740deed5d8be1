use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// An unordered bag: every element carries a positive multiplicity.
///
/// `sum` adds multiplicities, `union` takes their maximum. Iteration that
/// feeds products, minima, and similar folds visits each element once per
/// occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Multiset<T: Ord> {
    entries: BTreeMap<T, usize>,
}

impl<T: Ord> Multiset<T> {
    pub fn new() -> Self {
        Multiset {
            entries: BTreeMap::new(),
        }
    }

    pub fn singleton(value: T) -> Self {
        let mut m = Multiset::new();
        m.insert(value);
        m
    }

    /// Add one occurrence of `value`.
    pub fn insert(&mut self, value: T) {
        self.insert_n(value, 1);
    }

    /// Add `n` occurrences of `value`; a no-op for `n == 0`.
    pub fn insert_n(&mut self, value: T, n: usize) {
        if n > 0 {
            *self.entries.entry(value).or_insert(0) += n;
        }
    }

    pub fn multiplicity(&self, value: &T) -> usize {
        self.entries.get(value).copied().unwrap_or(0)
    }

    pub fn contains(&self, value: &T) -> bool {
        self.entries.contains_key(value)
    }

    /// Total number of occurrences, multiplicity included.
    pub fn len(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The underlying set of elements with positive multiplicity.
    pub fn support(&self) -> impl Iterator<Item = &T> {
        self.entries.keys()
    }

    /// Distinct elements paired with their multiplicities.
    pub fn iter(&self) -> impl Iterator<Item = (&T, usize)> {
        self.entries.iter().map(|(k, &n)| (k, n))
    }

    /// Every occurrence, elements repeated per multiplicity.
    pub fn occurrences(&self) -> impl Iterator<Item = &T> {
        self.entries
            .iter()
            .flat_map(|(k, &n)| std::iter::repeat_n(k, n))
    }
}

impl<T: Ord + Clone> Multiset<T> {
    /// Multiset sum: multiplicities add.
    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (value, n) in other.iter() {
            out.insert_n(value.clone(), n);
        }
        out
    }

    /// Multiset union: multiplicities take the maximum.
    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (value, n) in other.iter() {
            let slot = out.entries.entry(value.clone()).or_insert(0);
            *slot = (*slot).max(n);
        }
        out
    }
}

impl<T: Ord> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for value in iter {
            m.insert(value);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bag(items: &[&str]) -> Multiset<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn sum_adds_multiplicities() {
        let c = bag(&["a", "a", "b"]).sum(&bag(&["a", "b"]));
        assert_eq!(c.multiplicity(&"a".into()), 3);
        assert_eq!(c.multiplicity(&"b".into()), 2);
        assert_eq!(c.len(), 5);
    }

    #[test]
    fn union_takes_max_multiplicities() {
        let c = bag(&["a", "a", "b"]).union(&bag(&["a", "b", "b"]));
        assert_eq!(c.multiplicity(&"a".into()), 2);
        assert_eq!(c.multiplicity(&"b".into()), 2);
    }

    #[test]
    fn occurrences_repeat_per_multiplicity() {
        let weights = [("b", 0.5), ("c", 0.2)];
        let m = bag(&["b", "b", "c"]);
        let product: f64 = m
            .occurrences()
            .map(|x| weights.iter().find(|(k, _)| k == x).unwrap().1)
            .product();
        assert!((product - 0.05).abs() < 1e-15);
    }

    #[test]
    fn empty_support() {
        let m: Multiset<String> = Multiset::new();
        assert!(m.is_empty());
        assert_eq!(m.support().count(), 0);
    }

    fn arb_bag() -> impl Strategy<Value = Multiset<u8>> {
        proptest::collection::vec(0..5u8, 0..8).prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #[test]
        fn sum_commutative_associative(a in arb_bag(), b in arb_bag(), c in arb_bag()) {
            prop_assert_eq!(a.sum(&b), b.sum(&a));
            prop_assert_eq!(a.sum(&b).sum(&c), a.sum(&b.sum(&c)));
        }

        #[test]
        fn union_commutative_associative_idempotent(a in arb_bag(), b in arb_bag(), c in arb_bag()) {
            prop_assert_eq!(a.union(&b), b.union(&a));
            prop_assert_eq!(a.union(&b).union(&c), a.union(&b.union(&c)));
            prop_assert_eq!(a.union(&a), a);
        }
    }
}
