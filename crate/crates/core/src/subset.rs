//! Dense bitsets over the carrier `0..universe` of a finite order.

use std::fmt;

use smallvec::SmallVec;

const WORD: usize = 64;

/// A set of element indices drawn from `0..universe`.
///
/// Sets over carriers of up to 128 elements live inline; larger carriers
/// spill to the heap. Two subsets are only comparable when they share a
/// universe, and binary operations panic otherwise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    universe: usize,
    words: SmallVec<[u64; 2]>,
}

fn word_count(universe: usize) -> usize {
    universe.div_ceil(WORD)
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        Subset {
            universe,
            words: SmallVec::from_elem(0, word_count(universe)),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Subset::empty(universe);
        for w in s.words.iter_mut() {
            *w = !0;
        }
        s.trim();
        s
    }

    pub fn singleton(universe: usize, index: usize) -> Self {
        let mut s = Subset::empty(universe);
        s.insert(index);
        s
    }

    /// Builds a subset from indices, returning the first offending index if
    /// any is outside the universe.
    pub fn try_from_indices<I>(universe: usize, indices: I) -> Result<Self, usize>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Subset::empty(universe);
        for i in indices {
            if i >= universe {
                return Err(i);
            }
            s.insert(i);
        }
        Ok(s)
    }

    /// Builds a subset from indices.
    ///
    /// Panics if an index is outside the universe; use
    /// [`Subset::try_from_indices`] for untrusted input.
    pub fn from_indices<I>(universe: usize, indices: I) -> Self
    where
        I: IntoIterator<Item = usize>,
    {
        match Subset::try_from_indices(universe, indices) {
            Ok(s) => s,
            Err(i) => panic!("index {i} outside universe of size {universe}"),
        }
    }

    /// Interprets the low `universe` bits of `mask` as membership flags.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD, "mask form needs a universe of at most 64");
        let mut s = Subset::empty(universe);
        if universe > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    /// Membership bits of a subset over a universe of at most 64 elements.
    pub fn as_mask(&self) -> u64 {
        assert!(self.universe <= WORD, "mask form needs a universe of at most 64");
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        let rem = self.universe % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, index: usize) -> bool {
        index < self.universe && self.words[index / WORD] >> (index % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, index: usize) {
        assert!(index < self.universe, "index {index} outside universe {}", self.universe);
        self.words[index / WORD] |= 1 << (index % WORD);
    }

    #[inline]
    pub fn remove(&mut self, index: usize) {
        if index < self.universe {
            self.words[index / WORD] &= !(1 << (index % WORD));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Members<'_> {
        Members {
            words: &self.words,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_universe(&self, other: &Subset) {
        assert_eq!(
            self.universe, other.universe,
            "subsets over different universes"
        );
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn symmetric_difference(&self, other: &Subset) -> Subset {
        self.check_universe(other);
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        s
    }

    pub fn complement(&self) -> Subset {
        let mut s = self.clone();
        for w in s.words.iter_mut() {
            *w = !*w;
        }
        s.trim();
        s
    }

    pub fn union_with(&mut self, other: &Subset) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Subset) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Subset) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        !self.is_disjoint(other)
    }

    /// Every subset of `self`, starting with the empty set.
    ///
    /// The count is `2^len`, so callers are expected to keep `self` small.
    pub fn subsets(&self) -> SubsetsOf {
        let members = self.to_vec();
        assert!(members.len() < 64, "too many members to enumerate subsets");
        SubsetsOf {
            universe: self.universe,
            limit: 1u64 << members.len(),
            members,
            next: 0,
        }
    }

    /// Every nonempty subset of `self`.
    pub fn nonempty_subsets(&self) -> impl Iterator<Item = Subset> {
        self.subsets().skip(1)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Ascending iterator over the members of a [`Subset`].
pub struct Members<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Members<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * WORD + bit);
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

impl<'a> IntoIterator for &'a Subset {
    type Item = usize;
    type IntoIter = Members<'a>;

    fn into_iter(self) -> Members<'a> {
        self.iter()
    }
}

/// Iterator over all subsets of a fixed set, in binary-counter order.
pub struct SubsetsOf {
    universe: usize,
    members: Vec<usize>,
    limit: u64,
    next: u64,
}

impl Iterator for SubsetsOf {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.next >= self.limit {
            return None;
        }
        let code = self.next;
        self.next += 1;
        let mut s = Subset::empty(self.universe);
        for (bit, &m) in self.members.iter().enumerate() {
            if code >> bit & 1 == 1 {
                s.insert(m);
            }
        }
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.limit - self.next) as usize;
        (left, Some(left))
    }
}
