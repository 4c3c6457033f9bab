//! Fixed-width bitsets over state indices.

use std::cmp::Ordering;
use std::fmt;

const WORD_BITS: usize = 64;

/// A subset of `{0, .., width-1}` stored as a packed bitset.
///
/// Doubles as an atom label: the set of subscripts of the quotients that
/// appear uncomplemented in the atom.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    words: Vec<u64>,
    width: usize,
}

impl StateSet {
    pub fn empty(width: usize) -> Self {
        StateSet {
            words: vec![0; width.div_ceil(WORD_BITS)],
            width,
        }
    }

    pub fn full(width: usize) -> Self {
        let mut set = StateSet::empty(width);
        for (i, word) in set.words.iter_mut().enumerate() {
            let remaining = width - i * WORD_BITS;
            *word = if remaining >= WORD_BITS {
                u64::MAX
            } else {
                (1u64 << remaining) - 1
            };
        }
        set
    }

    /// Builds a set from indices. Panics if an index is not below `width`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, indices: I) -> Self {
        let mut set = StateSet::empty(width);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Builds a set of width at most 64 from its bit encoding; bit `i` is state `i`.
    pub fn from_bits(width: usize, bits: u64) -> Self {
        assert!(width <= WORD_BITS, "from_bits requires width <= 64");
        if width < WORD_BITS {
            assert!(bits >> width == 0, "bit set beyond width {width}");
        }
        let mut set = StateSet::empty(width);
        if let Some(w) = set.words.first_mut() {
            *w = bits;
        }
        set
    }

    /// The bit encoding, if the set fits one machine word.
    pub fn bits(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.width && self.words[i / WORD_BITS] & (1 << (i % WORD_BITS)) != 0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.width, "state {i} outside set width {}", self.width);
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.width {
            self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
        }
    }

    pub fn union_with(&mut self, other: &StateSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &StateSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    /// Complement relative to `{0, .., width-1}`.
    pub fn complement(&self) -> StateSet {
        let mut out = StateSet::full(self.width);
        for (a, b) in out.words.iter_mut().zip(&self.words) {
            *a &= !b;
        }
        out
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Subscript string in the `012` style; the empty set renders as `{}`.
    pub fn subscript(&self) -> String {
        if self.is_empty() {
            return "{}".to_string();
        }
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        if self.width <= 10 {
            parts.concat()
        } else {
            parts.join(".")
        }
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a StateSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Orders by width, then by numeric value of the bit encoding.
impl Ord for StateSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .cmp(&other.width)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for StateSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.subscript())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_complement_respect_width() {
        for width in [0, 1, 5, 63, 64, 65, 130] {
            let full = StateSet::full(width);
            assert_eq!(full.len(), width);
            assert!(full.complement().is_empty());
            assert_eq!(StateSet::empty(width).complement(), full);
        }
    }

    #[test]
    fn subscript_rendering() {
        assert_eq!(StateSet::from_indices(3, [0, 2]).subscript(), "02");
        assert_eq!(StateSet::empty(3).subscript(), "{}");
    }

    #[test]
    fn ordering_follows_bit_encoding() {
        let a = StateSet::from_bits(3, 0b011);
        let b = StateSet::from_bits(3, 0b100);
        assert!(a < b);
        let wide_lo = StateSet::from_indices(100, [63]);
        let wide_hi = StateSet::from_indices(100, [64]);
        assert!(wide_lo < wide_hi);
    }

    #[test]
    #[should_panic]
    fn insert_beyond_width_panics() {
        StateSet::empty(4).insert(4);
    }

    proptest! {
        #[test]
        fn iteration_is_sorted_and_roundtrips(indices in proptest::collection::vec(0usize..150, 0..40)) {
            let set = StateSet::from_indices(150, indices.iter().copied());
            let listed: Vec<usize> = set.iter().collect();
            let mut expected = indices.clone();
            expected.sort_unstable();
            expected.dedup();
            prop_assert_eq!(listed, expected);
        }

        #[test]
        fn de_morgan(a in 0u64..(1 << 20), b in 0u64..(1 << 20)) {
            let x = StateSet::from_bits(20, a);
            let y = StateSet::from_bits(20, b);
            prop_assert_eq!(x.union(&y).complement(), x.complement().intersection(&y.complement()));
            prop_assert_eq!(x.intersects(&y), !x.intersection(&y).is_empty());
            prop_assert_eq!(x.is_subset(&y), x.union(&y) == y);
        }
    }
}
