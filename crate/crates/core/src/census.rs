//! Exhaustive enumeration of hypermaps up to isomorphism.
//!
//! Every hypermap on `2d` flags can be relabeled so that `gamma` is the
//! standard matching `{0,1}, {2,3}, ...`; enumerating all pairs of perfect
//! matchings `(alpha, beta)` against it and deduplicating by canonical form
//! therefore reaches every class.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::Range;

use crate::canon::canonical_form;
use crate::counts::{count_summary, CountSummary};
use crate::error::{Error, Result};
use crate::flags::{orbit_ids, FlagStructure};
use crate::polynomial::{poly_subset_formula, GenusPolynomial};

/// Largest flag bound accepted without `force`.
pub const FLAG_GUARD: usize = 10;
/// Isolated hypervertices added per class when disconnected hypermaps are
/// requested.
pub const MAX_ISOLATED: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub max_flags: usize,
    pub connected_only: bool,
    pub orientable_only: bool,
    pub bouquets_only: bool,
    /// Allows `max_flags` beyond [`FLAG_GUARD`].
    pub force: bool,
}

impl CensusOptions {
    /// Connected hypermaps with `2 <= flags <= max_flags`.
    pub fn connected(max_flags: usize) -> Self {
        Self { max_flags, connected_only: true, orientable_only: false, bouquets_only: false, force: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_flags % 2 == 1 {
            return Err(Error::OddFlagBound(self.max_flags));
        }
        if self.max_flags > FLAG_GUARD && !self.force {
            return Err(Error::CensusGuard { max_flags: self.max_flags, limit: FLAG_GUARD });
        }
        Ok(())
    }

    fn accepts(&self, c: &CountSummary) -> bool {
        (!self.connected_only || c.k == 1)
            && (!self.orientable_only || c.orientable)
            && (!self.bouquets_only || c.v == 1)
    }
}

/// All perfect matchings of `0..n` as involution vectors, in lexicographic
/// order of their pair lists. There are `(n - 1)!!` of them.
pub fn perfect_matchings(n: usize) -> Vec<Vec<usize>> {
    fn extend(m: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(first) = m.iter().position(|&y| y == usize::MAX) else {
            out.push(m.clone());
            return;
        };
        for partner in first + 1..m.len() {
            if m[partner] != usize::MAX {
                continue;
            }
            m[first] = partner;
            m[partner] = first;
            extend(m, out);
            m[first] = usize::MAX;
            m[partner] = usize::MAX;
        }
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        extend(&mut alloc::vec![usize::MAX; n], &mut out);
    }
    out
}

/// Classes found so far, keyed by `(flag count, canonical form)`; the value
/// is the smallest enumeration index seen for the class and its structure.
pub type ClassMap = BTreeMap<(usize, Vec<u8>), (u64, FlagStructure)>;

/// All `(alpha, beta)` pairs on one flag count.
pub struct CensusLevel {
    flag_count: usize,
    matchings: Vec<Vec<usize>>,
    gamma: Vec<usize>,
}

impl CensusLevel {
    pub fn new(flag_count: usize) -> Self {
        Self {
            flag_count,
            matchings: perfect_matchings(flag_count),
            gamma: (0..flag_count).map(|x| x ^ 1).collect(),
        }
    }

    /// Number of candidate `alpha` matchings (the unit of work splitting).
    pub fn alpha_count(&self) -> usize {
        self.matchings.len()
    }

    /// Classes reached by the alphas in `alphas`, before isolated-vertex
    /// augmentation.
    pub fn classes(&self, alphas: Range<usize>, opts: &CensusOptions) -> ClassMap {
        let mut out = ClassMap::new();
        let m = self.matchings.len() as u64;
        for ai in alphas.start..alphas.end.min(self.matchings.len()) {
            let alpha = &self.matchings[ai];
            if opts.bouquets_only && orbit_ids(self.flag_count, &[alpha, &self.gamma]).0 != 1 {
                continue;
            }
            for (bi, beta) in self.matchings.iter().enumerate() {
                let fs = FlagStructure::assemble(alpha.clone(), beta.clone(), self.gamma.clone(), 0, None);
                let c = count_summary(&fs);
                if opts.connected_only && c.k != 1 || opts.orientable_only && !c.orientable {
                    continue;
                }
                let index = ai as u64 * m + bi as u64;
                let key = (self.flag_count, canonical_form(&fs));
                match out.get(&key) {
                    Some((seen, _)) if *seen <= index => {}
                    _ => {
                        out.insert(key, (index, fs));
                    }
                }
            }
        }
        out
    }
}

/// Merges `from` into `into`, keeping the earliest representative.
pub fn merge_classes(into: &mut ClassMap, from: ClassMap) {
    for (key, (index, fs)) in from {
        match into.get(&key) {
            Some((seen, _)) if *seen <= index => {}
            _ => {
                into.insert(key, (index, fs));
            }
        }
    }
}

/// Labels the representatives, adds isolated hypervertices when
/// disconnected hypermaps are requested, applies the filters, and orders
/// the result by flag count then canonical form.
pub fn finish(classes: ClassMap, opts: &CensusOptions) -> Vec<FlagStructure> {
    let mut out: BTreeMap<(usize, Vec<u8>), FlagStructure> = BTreeMap::new();
    let extra = if opts.connected_only { 0 } else { MAX_ISOLATED };
    let mut push = |fs: FlagStructure| {
        if opts.accepts(&count_summary(&fs)) {
            out.insert((fs.flag_count(), canonical_form(&fs)), fs);
        }
    };
    for (_, fs) in classes.into_values() {
        let fs = fs.derive_labels();
        for iso in 1..=extra {
            push(fs.clone().with_isolated(iso));
        }
        push(fs);
    }
    for iso in 1..=extra {
        push(FlagStructure::assemble(Vec::new(), Vec::new(), Vec::new(), iso, None).derive_labels());
    }
    out.into_values().collect()
}

/// Every isomorphism class with `2 <= flags <= max_flags` passing the
/// filters, plus edgeless and isolated-vertex variants when
/// `connected_only` is off. Sequential; see the `hyperdual` crate for the
/// parallel driver.
pub fn enumerate_hypermaps(opts: &CensusOptions) -> Result<Vec<FlagStructure>> {
    opts.validate()?;
    let mut classes = ClassMap::new();
    for n in (2..=opts.max_flags).step_by(2) {
        let level = CensusLevel::new(n);
        merge_classes(&mut classes, level.classes(0..level.alpha_count(), opts));
    }
    Ok(finish(classes, opts))
}

/// One census entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub canonical_form: Vec<u8>,
    pub counts: CountSummary,
    pub polynomial: Option<GenusPolynomial>,
}

impl CensusRecord {
    pub fn new(fs: &FlagStructure, with_polynomial: bool) -> Result<Self> {
        Ok(Self {
            canonical_form: canonical_form(fs),
            counts: count_summary(fs),
            polynomial: if with_polynomial { Some(poly_subset_formula(fs)?) } else { None },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::flags::arrows_from_flags;
    use crate::test_util::flags;

    #[test]
    fn matching_counts() {
        let counts: Vec<usize> = (1..=6).map(|d| perfect_matchings(2 * d).len()).collect();
        assert_eq!(counts, [1, 3, 15, 105, 945, 10395]);
        assert_eq!(perfect_matchings(0).len(), 1);
    }

    #[test]
    fn two_flags() {
        let all = enumerate_hypermaps(&CensusOptions::connected(2)).unwrap();
        assert_eq!(all.len(), 1);
        assert!(is_isomorphic(&all[0], &flags(&["a.1+"])));
        assert_eq!(arrows_from_flags(&all[0]).unwrap().curves().len(), 1);
    }

    #[test]
    fn four_flags_by_hand() {
        // stub; untwisted loop; twisted loop; one edge on two vertices;
        // two stubs on one vertex
        let expected = [
            flags(&["a.1+"]),
            flags(&["a.1+ a.2+"]),
            flags(&["a.1+ a.2-"]),
            flags(&["a.1+", "a.2+"]),
            flags(&["a.1+ b.1+"]),
        ];
        let all = enumerate_hypermaps(&CensusOptions::connected(4)).unwrap();
        assert_eq!(all.len(), expected.len());
        for e in &expected {
            assert_eq!(all.iter().filter(|fs| is_isomorphic(fs, e)).count(), 1);
        }
    }

    #[test]
    fn orientable_filter() {
        let opts = CensusOptions { orientable_only: true, ..CensusOptions::connected(4) };
        let all = enumerate_hypermaps(&opts).unwrap();
        assert_eq!(all.len(), 4);
        assert!(!all.iter().any(|fs| is_isomorphic(fs, &flags(&["e.1+ e.2-"]))));
    }

    #[test]
    fn disconnected_augmentation() {
        let opts = CensusOptions { connected_only: false, ..CensusOptions::connected(2) };
        let all = enumerate_hypermaps(&opts).unwrap();
        // edgeless with 1 or 2 isolated vertices, and the stub with 0..=2
        assert_eq!(all.len(), 5);
    }

    #[test]
    fn guards() {
        assert_eq!(enumerate_hypermaps(&CensusOptions::connected(5)), Err(Error::OddFlagBound(5)));
        assert_eq!(
            enumerate_hypermaps(&CensusOptions::connected(12)),
            Err(Error::CensusGuard { max_flags: 12, limit: FLAG_GUARD })
        );
    }

    #[test]
    fn split_work_matches_sequential() {
        let opts = CensusOptions::connected(6);
        let level = CensusLevel::new(6);
        let mut merged = ClassMap::new();
        merge_classes(&mut merged, level.classes(7..15, &opts));
        merge_classes(&mut merged, level.classes(0..7, &opts));
        assert_eq!(merged, level.classes(0..15, &opts));
    }
}
