use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Direction of an arrow relative to the traversal direction of its curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One arrow `edge.index` drawn on a curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Occurrence {
    pub edge: String,
    pub index: usize,
    pub sign: Sign,
}

impl Occurrence {
    pub fn new(edge: impl Into<String>, index: usize, sign: Sign) -> Self {
        Self { edge: edge.into(), index, sign }
    }

    fn key(&self) -> (&str, usize, Sign) {
        (&self.edge, self.index, self.sign)
    }
}

impl Ord for Occurrence {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Occurrence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}{}", self.edge, self.index, self.sign.as_char())
    }
}

/// Closed curves (hypervertices) carrying labeled arrows (hyperedge
/// incidences). An empty curve is an isolated hypervertex.
///
/// Field equality is *not* hypermap equality: rotating or reversing a curve,
/// reordering curves or renaming hyperedges gives the same hypermap. Compare
/// through [`crate::canonical_form`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowPresentation {
    name: Option<String>,
    curves: Vec<Vec<Occurrence>>,
}

impl ArrowPresentation {
    /// Validates that every arrow occurs once and that each hyperedge's
    /// indices are exactly `1..=d(e)`.
    pub fn new(name: Option<String>, curves: Vec<Vec<Occurrence>>) -> Result<Self> {
        let mut seen: BTreeMap<&str, BTreeSet<usize>> = BTreeMap::new();
        for occ in curves.iter().flatten() {
            if occ.index == 0 {
                return Err(Error::ZeroIndex { edge: occ.edge.clone() });
            }
            if !seen.entry(&occ.edge).or_default().insert(occ.index) {
                return Err(Error::DuplicateArrow { edge: occ.edge.clone(), index: occ.index });
            }
        }
        for (edge, indices) in &seen {
            // indices are distinct and >= 1, so they are 1..=d iff the max is d
            if let Some(missing) = (1..=indices.len()).find(|i| !indices.contains(i)) {
                return Err(Error::IndexGap { edge: String::from(*edge), missing });
            }
        }
        Ok(Self { name, curves })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: Option<String>) -> Self {
        self.name = name;
        self
    }

    pub fn curves(&self) -> &[Vec<Occurrence>] {
        &self.curves
    }

    /// Hyperedge names, sorted.
    pub fn edges(&self) -> Vec<&str> {
        let set: BTreeSet<&str> = self.curves.iter().flatten().map(|o| o.edge.as_str()).collect();
        set.into_iter().collect()
    }

    pub fn degree(&self, edge: &str) -> usize {
        self.curves.iter().flatten().filter(|o| o.edge == edge).count()
    }

    pub fn arrow_count(&self) -> usize {
        self.curves.iter().map(Vec::len).sum()
    }

    /// Layout used for emitted files: each curve rotated to start at its
    /// least occurrence, curves sorted by that occurrence, isolated
    /// hypervertices last.
    pub fn normalized(&self) -> Self {
        let mut curves: Vec<Vec<Occurrence>> = self
            .curves
            .iter()
            .map(|c| {
                let Some(start) = c.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).map(|(i, _)| i) else {
                    return Vec::new();
                };
                let mut rotated = c.clone();
                rotated.rotate_left(start);
                rotated
            })
            .collect();
        curves.sort_by(|a, b| match (a.first(), b.first()) {
            (Some(x), Some(y)) => x.cmp(y),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        });
        Self { name: self.name.clone(), curves }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn occ(e: &str, i: usize) -> Occurrence {
        Occurrence::new(e, i, Sign::Plus)
    }

    #[test]
    fn rejects_duplicates_and_gaps() {
        assert_eq!(
            ArrowPresentation::new(None, vec![vec![occ("e", 1), occ("e", 3)]]),
            Err(Error::IndexGap { edge: "e".into(), missing: 2 })
        );
        assert_eq!(
            ArrowPresentation::new(None, vec![vec![occ("e", 1)], vec![occ("e", 1)]]),
            Err(Error::DuplicateArrow { edge: "e".into(), index: 1 })
        );
        assert!(matches!(
            ArrowPresentation::new(None, vec![vec![occ("e", 0)]]),
            Err(Error::ZeroIndex { .. })
        ));
    }

    #[test]
    fn normalized_layout() {
        let ap = ArrowPresentation::new(
            None,
            vec![vec![], vec![occ("b", 2), occ("a", 2)], vec![occ("b", 1), occ("a", 1)]],
        )
        .unwrap();
        let n = ap.normalized();
        assert_eq!(n.curves()[0], vec![occ("a", 1), occ("b", 1)]);
        assert_eq!(n.curves()[1], vec![occ("a", 2), occ("b", 2)]);
        assert!(n.curves()[2].is_empty());
        assert_eq!(ap.edges(), ["a", "b"]);
        assert_eq!(ap.degree("a"), 2);
    }
}
