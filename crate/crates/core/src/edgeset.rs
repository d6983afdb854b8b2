use alloc::vec::Vec;

/// A set of hyperedge indices, stored as a growable bitset.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Bit `i` of `mask` selects hyperedge `i`.
    pub fn from_mask(mask: u64) -> Self {
        let mut s = Self { words: alloc::vec![mask] };
        s.trim();
        s
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn insert(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if let Some(word) = self.words.get_mut(i / 64) {
            *word &= !(1 << (i % 64));
        }
        self.trim();
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    /// `{0, .., n-1} \ self`.
    pub fn complement(&self, n: usize) -> Self {
        (0..n).filter(|&i| !self.contains(i)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = EdgeSet::from_mask(0b1010);
        assert!(s.contains(1) && s.contains(3) && !s.contains(0));
        assert_eq!(s.len(), 2);
        s.insert(70);
        assert_eq!(s.max_index(), Some(70));
        assert_eq!(s.iter().collect::<Vec<_>>(), [1, 3, 70]);
        s.remove(70);
        assert_eq!(s, EdgeSet::from_mask(0b1010));
        assert_eq!(s.complement(5).iter().collect::<Vec<_>>(), [0, 2, 4]);
        assert!(EdgeSet::from_mask(0).is_empty());
        assert_eq!(EdgeSet::new().max_index(), None);
    }
}
