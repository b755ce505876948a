use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Finite rational linear combination of basis elements `K`.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Rational::from_integer(1))
    }

    pub fn term(k: K, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Rational> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Rational> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let one = Rational::from_integer(1);
        for (k, v) in other.iter() {
            let v = if *c == one { v.clone() } else { v * c };
            self.add_term(k.clone(), v);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Sums unordered terms by sorting and merging equal keys, which is
    /// cheaper than keyed insertion for large outputs.
    pub fn from_pairs(pairs: Vec<(K, Rational)>) -> Self {
        LinComb { terms: merge_pairs(pairs).into_iter().collect() }
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut pairs = Vec::new();
        for (k, c) in self.iter() {
            push_scaled(&mut pairs, f(k), c);
        }
        LinComb::from_pairs(pairs)
    }

    /// Extends a bilinear map given on pairs of basis elements.
    pub fn bilinear<M: Ord + Clone, L: Ord + Clone>(
        &self,
        other: &LinComb<M>,
        mut f: impl FnMut(&K, &M) -> LinComb<L>,
    ) -> LinComb<L> {
        let mut pairs = Vec::new();
        for (a, ca) in self.iter() {
            for (b, cb) in other.iter() {
                push_scaled(&mut pairs, f(a, b), &(ca * cb));
            }
        }
        LinComb::from_pairs(pairs)
    }
}

/// Sorts `pairs` by key, sums equal keys and drops zero sums.
pub(crate) fn merge_pairs<K: Ord>(mut pairs: Vec<(K, Rational)>) -> Vec<(K, Rational)> {
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(K, Rational)> = Vec::with_capacity(pairs.len());
    for (k, c) in pairs {
        match merged.last_mut() {
            Some((lk, lc)) if *lk == k => *lc = &*lc + &c,
            _ => merged.push((k, c)),
        }
    }
    merged.retain(|(_, c)| !c.is_zero());
    merged
}

/// Appends `c * terms` to `pairs`.
pub(crate) fn push_scaled<K: Ord>(pairs: &mut Vec<(K, Rational)>, terms: LinComb<K>, c: &Rational) {
    let one = c.is_one();
    pairs.extend(terms.terms.into_iter().map(|(k, v)| (k, if one { v } else { &v * c })));
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        Self::from_pairs(iter.into_iter().collect())
    }
}

impl<K: Ord + Clone> IntoIterator for LinComb<K> {
    type Item = (K, Rational);
    type IntoIter = btree_map::IntoIter<K, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord + Clone> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a Rational);
    type IntoIter = btree_map::Iter<'a, K, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone> Add for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::from_integer(1));
        out
    }
}

impl<K: Ord + Clone> Sub for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::from_integer(-1));
        out
    }
}

impl<K: Ord + Clone> Neg for &LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        self.scale(&Rational::from_integer(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let mut a = LinComb::term("u", Rational::from_integer(2));
        a.add_term("u", Rational::from_integer(-2));
        assert!(a.is_zero());
        a.add_term("v", Rational::zero());
        assert_eq!(a.len(), 0);
    }

    #[test]
    fn bilinear_extension() {
        let a: LinComb<u32> = [(1, 2.into()), (2, 1.into())].into_iter().collect();
        let b: LinComb<u32> = [(10, 3.into())].into_iter().collect();
        let p = a.bilinear(&b, |x, y| LinComb::basis(x + y));
        assert_eq!(p.coeff(&11), 6.into());
        assert_eq!(p.coeff(&12), 3.into());
    }
}
