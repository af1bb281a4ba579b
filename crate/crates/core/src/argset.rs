//! Dense sets over interned argument indices.

use std::cmp::Ordering;
use std::fmt;

const WORD_BITS: usize = 64;

/// A subset of `{0, .., universe - 1}` stored as a fixed-width bit vector.
///
/// Sets built over different universes are never equal. Ordering compares the
/// ascending member sequences lexicographically, so `{0,2,5} < {0,3,5}` and
/// `{0} < {0,1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ArgumentSet {
    universe: usize,
    words: Vec<u64>,
}

impl ArgumentSet {
    pub fn empty(universe: usize) -> Self {
        ArgumentSet {
            universe,
            words: vec![0; universe.div_ceil(WORD_BITS)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = ArgumentSet {
            universe,
            words: vec![!0; universe.div_ceil(WORD_BITS)],
        };
        set.clear_tail();
        set
    }

    /// Builds a set from indices, panicking if any index is outside the universe.
    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Builds a set from the low `universe` bits of `mask`. Only meaningful
    /// for universes of at most 64 arguments.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(
            universe <= WORD_BITS,
            "mask construction needs universe <= 64"
        );
        let mut set = Self::empty(universe);
        if let Some(w) = set.words.first_mut() {
            *w = mask;
        }
        set.clear_tail();
        set
    }

    fn clear_tail(&mut self) {
        let rem = self.universe % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, index: usize) -> bool {
        index < self.universe && self.words[index / WORD_BITS] >> (index % WORD_BITS) & 1 == 1
    }

    /// Returns `true` if the index was newly inserted.
    #[inline]
    pub fn insert(&mut self, index: usize) -> bool {
        assert!(
            index < self.universe,
            "index {index} outside universe {}",
            self.universe
        );
        let word = &mut self.words[index / WORD_BITS];
        let bit = 1u64 << (index % WORD_BITS);
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }

    /// Returns `true` if the index was present.
    #[inline]
    pub fn remove(&mut self, index: usize) -> bool {
        if index >= self.universe {
            return false;
        }
        let word = &mut self.words[index / WORD_BITS];
        let bit = 1u64 << (index % WORD_BITS);
        let present = *word & bit != 0;
        *word &= !bit;
        present
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.universe)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn check_universe(&self, other: &Self) {
        debug_assert_eq!(
            self.universe, other.universe,
            "set operation across different universes"
        );
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn complement(&self) -> Self {
        Self::full(self.universe).difference(self)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        other.is_subset(self)
    }

    pub fn is_proper_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_proper_superset(&self, other: &Self) -> bool {
        other.is_proper_subset(self)
    }
}

impl Ord for ArgumentSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe.cmp(&other.universe).then_with(|| {
            // Up to the lowest differing index both member sequences agree. The
            // set holding that index is smaller, unless the other set has no
            // members past it (then the other is a proper prefix).
            let Some((w, diff)) = self
                .words
                .iter()
                .zip(&other.words)
                .enumerate()
                .find_map(|(i, (a, b))| (a != b).then_some((i, a ^ b)))
            else {
                return Ordering::Equal;
            };
            let bit = diff.trailing_zeros() as usize;
            let (holder, rest) = if self.words[w] >> bit & 1 == 1 {
                (Ordering::Less, other)
            } else {
                (Ordering::Greater, self)
            };
            let above_mask = if bit == 63 { 0 } else { !0u64 << (bit + 1) };
            let rest_has_more =
                rest.words[w] & above_mask != 0 || rest.words[w + 1..].iter().any(|&x| x != 0);
            if rest_has_more {
                holder
            } else {
                holder.reverse()
            }
        })
    }
}

impl PartialOrd for ArgumentSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ArgumentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD_BITS + bit);
            }
            self.word_idx += 1;
            self.current = *self.words.get(self.word_idx)?;
        }
    }
}

impl<'a> IntoIterator for &'a ArgumentSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(universe: usize, xs: &[usize]) -> ArgumentSet {
        ArgumentSet::from_indices(universe, xs.iter().copied())
    }

    #[test]
    fn basic_membership() {
        let mut s = ArgumentSet::empty(130);
        assert!(s.is_empty());
        assert!(s.insert(0));
        assert!(s.insert(64));
        assert!(s.insert(129));
        assert!(!s.insert(64));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(s.len(), 3);
        assert!(s.remove(64));
        assert!(!s.contains(64));
        assert!(!s.contains(500));
    }

    #[test]
    fn full_respects_universe() {
        assert_eq!(ArgumentSet::full(70).len(), 70);
        assert_eq!(ArgumentSet::full(0).len(), 0);
        assert!(ArgumentSet::full(0).is_full());
        assert_eq!(ArgumentSet::from_mask(3, 0xff).len(), 3);
    }

    #[test]
    fn ordering_follows_member_sequences() {
        // {a,c,f} before {a,d,f}
        assert!(set(6, &[0, 2, 5]) < set(6, &[0, 3, 5]));
        assert!(set(6, &[]) < set(6, &[0]));
        assert!(set(6, &[0]) < set(6, &[0, 1]));
        assert!(set(6, &[0, 5]) < set(6, &[1]));
        assert!(set(100, &[70]) < set(100, &[71]));
        assert!(set(100, &[3, 70]) > set(100, &[3]));
    }

    proptest! {
        #[test]
        fn ordering_matches_vec_ordering(a in proptest::collection::btree_set(0usize..150, 0..12),
                                         b in proptest::collection::btree_set(0usize..150, 0..12)) {
            let sa = ArgumentSet::from_indices(150, a.iter().copied());
            let sb = ArgumentSet::from_indices(150, b.iter().copied());
            let va: Vec<_> = a.into_iter().collect();
            let vb: Vec<_> = b.into_iter().collect();
            prop_assert_eq!(sa.cmp(&sb), va.cmp(&vb));
        }

        #[test]
        fn subset_agrees_with_btreeset(a in proptest::collection::btree_set(0usize..80, 0..20),
                                       b in proptest::collection::btree_set(0usize..80, 0..20)) {
            let sa = ArgumentSet::from_indices(80, a.iter().copied());
            let sb = ArgumentSet::from_indices(80, b.iter().copied());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.intersects(&sb), !a.is_disjoint(&b));
            let u: Vec<_> = sa.union(&sb).iter().collect();
            let bu: Vec<_> = a.union(&b).copied().collect();
            prop_assert_eq!(u, bu);
        }
    }
}
