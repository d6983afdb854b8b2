use alloc::collections::VecDeque;
use alloc::vec;

use crate::flags::{orbit_ids, FlagStructure};

/// Counts and derived invariants of one hypermap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountSummary {
    /// Hypervertices.
    pub v: usize,
    /// Hyperedges.
    pub e: usize,
    /// Hyperfaces (boundary components).
    pub f: usize,
    /// Total degree: number of common line segments.
    pub d: usize,
    /// Connected components.
    pub k: usize,
    /// Euler characteristic `v + e + f - d`.
    pub chi: i64,
    /// Euler genus `2k - chi`.
    pub epsilon: i64,
    pub orientable: bool,
}

pub fn count_summary(fs: &FlagStructure) -> CountSummary {
    let n = fs.flag_count();
    let iso = fs.isolated();
    let (vertex_orbits, _) = orbit_ids(n, &[fs.alpha(), fs.gamma()]);
    let (edge_orbits, _) = orbit_ids(n, &[fs.beta(), fs.gamma()]);
    let (face_orbits, _) = orbit_ids(n, &[fs.alpha(), fs.beta()]);
    let (comp_orbits, _) = orbit_ids(n, &[fs.alpha(), fs.beta(), fs.gamma()]);
    let v = vertex_orbits + iso;
    let e = edge_orbits;
    let f = face_orbits + iso;
    let d = n / 2;
    let k = comp_orbits + iso;
    let chi = v as i64 + e as i64 + f as i64 - d as i64;
    CountSummary { v, e, f, d, k, chi, epsilon: 2 * k as i64 - chi, orientable: is_orientable(fs) }
}

/// The surface is orientable iff the flag graph (all three matchings as
/// edges) is bipartite.
fn is_orientable(fs: &FlagStructure) -> bool {
    let n = fs.flag_count();
    let mut color: alloc::vec::Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            let c = color[x].unwrap();
            for g in [fs.alpha(), fs.beta(), fs.gamma()] {
                let y = g[x];
                match color[y] {
                    None => {
                        color[y] = Some(!c);
                        queue.push_back(y);
                    }
                    Some(cy) if cy == c => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    /// Connected with Euler genus 0.
    pub is_plane: bool,
    /// Exactly one hypervertex.
    pub is_bouquet: bool,
    /// One hyperface and Euler genus 0.
    pub is_hypertree: bool,
    /// One hyperface.
    pub is_hyper_quasi_tree: bool,
}

pub fn classify(fs: &FlagStructure) -> Classification {
    Classification::from(&count_summary(fs))
}

impl From<&CountSummary> for Classification {
    fn from(c: &CountSummary) -> Self {
        Self {
            is_plane: c.k == 1 && c.epsilon == 0,
            is_bouquet: c.v == 1,
            is_hypertree: c.f == 1 && c.epsilon == 0,
            is_hyper_quasi_tree: c.f == 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::{flags, hmap};
    use crate::{flags_from_arrows, FlagStructure};

    #[test]
    fn isolated_vertex() {
        let fs = FlagStructure::from_matchings(vec![], vec![], vec![], 1).unwrap();
        let c = count_summary(&fs);
        assert_eq!((c.v, c.e, c.f, c.d, c.k, c.chi, c.epsilon), (1, 0, 1, 0, 1, 2, 0));
        assert!(c.orientable);
        let cl = classify(&fs);
        assert!(cl.is_plane && cl.is_bouquet && cl.is_hypertree && cl.is_hyper_quasi_tree);
    }

    #[test]
    fn twisted_loop() {
        let c = count_summary(&flags(&["e.1+ e.2-"]));
        assert_eq!((c.v, c.e, c.f, c.d, c.k, c.chi, c.epsilon), (1, 1, 1, 2, 1, 1, 1));
        assert!(!c.orientable);
    }

    #[test]
    fn nine_arrow_bouquet() {
        let c = count_summary(&flags(&["a.1+ b.1+ c.1+ a.2+ b.2+ c.2+ a.3+ b.3+ c.3+"]));
        assert_eq!((c.v, c.e, c.f, c.d, c.k, c.chi, c.epsilon), (1, 3, 1, 9, 1, -4, 6));
        assert!(c.orientable);
    }

    #[test]
    fn classification_examples() {
        let cl = classify(&flags(&["a.1+ b.1+"]));
        assert!(cl.is_plane && cl.is_bouquet && cl.is_hypertree && cl.is_hyper_quasi_tree);

        let fs = flags(&["e.1+ e.2+"]);
        let c = count_summary(&fs);
        assert_eq!((c.f, c.epsilon), (2, 0));
        let cl = classify(&fs);
        assert!(cl.is_plane && cl.is_bouquet && !cl.is_hyper_quasi_tree && !cl.is_hypertree);
    }

    #[test]
    fn hyperedge_across_two_vertices() {
        let c = count_summary(&flags_from_arrows(&hmap(&["a.1+", "a.2+"])));
        assert_eq!((c.v, c.e, c.d, c.k), (2, 1, 2, 1));
        assert_eq!(c.epsilon, 0);
    }
}
