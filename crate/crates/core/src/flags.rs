use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::arrows::{ArrowPresentation, Occurrence, Sign};
use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub fn as_str(self) -> &'static str {
        match self {
            End::Tail => "tail",
            End::Head => "head",
        }
    }
}

/// Which endpoint of which arrow a flag is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagLabel {
    /// Index into [`Labels::names`].
    pub edge: usize,
    /// 1-based position in the hyperedge's cyclic order.
    pub index: usize,
    pub end: End,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    names: Vec<String>,
    flags: Vec<FlagLabel>,
}

impl Labels {
    pub fn new(names: Vec<String>, flags: Vec<FlagLabel>) -> Self {
        Self { names, flags }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn flag(&self, x: usize) -> FlagLabel {
        self.flags[x]
    }

    pub fn flags(&self) -> &[FlagLabel] {
        &self.flags
    }
}

/// Name given to hyperedge `i` when labels are derived rather than read.
pub(crate) fn default_edge_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("e{i}")
    }
}

/// Orbits of the group generated by `gens` on `0..n`; returns the orbit
/// count and, per point, the orbit id. Ids are assigned in order of the
/// smallest point of each orbit.
pub(crate) fn orbit_ids(n: usize, gens: &[&[usize]]) -> (usize, Vec<usize>) {
    const UNSEEN: usize = usize::MAX;
    let mut id = vec![UNSEEN; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if id[start] != UNSEEN {
            continue;
        }
        id[start] = count;
        stack.push(start);
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g[x];
                if id[y] == UNSEEN {
                    id[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    (count, id)
}

fn check_involution(m: &[usize]) -> Result<()> {
    for (x, &y) in m.iter().enumerate() {
        if y >= m.len() || m[y] != x {
            return Err(Error::NotInvolution { flag: x });
        }
        if y == x {
            return Err(Error::FixedPoint { flag: x });
        }
    }
    Ok(())
}

/// A hypermap as three fixed-point-free involutions on `0..2d` plus a count
/// of isolated hypervertices (which carry no flags).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagStructure {
    alpha: Vec<usize>,
    beta: Vec<usize>,
    gamma: Vec<usize>,
    isolated: usize,
    labels: Option<Labels>,
    edge_of: Vec<usize>,
    edge_count: usize,
}

impl FlagStructure {
    /// Unlabeled structure. Hyperedges (the `<beta, gamma>` orbits) are
    /// numbered by their smallest flag.
    pub fn from_matchings(
        alpha: Vec<usize>,
        beta: Vec<usize>,
        gamma: Vec<usize>,
        isolated: usize,
    ) -> Result<Self> {
        let n = alpha.len();
        if beta.len() != n || gamma.len() != n {
            return Err(Error::LengthMismatch);
        }
        if n % 2 == 1 {
            return Err(Error::OddFlagCount(n));
        }
        check_involution(&alpha)?;
        check_involution(&beta)?;
        check_involution(&gamma)?;
        Ok(Self::assemble(alpha, beta, gamma, isolated, None))
    }

    /// Attaches arrow labels after checking they agree with `beta` and `gamma`.
    pub fn with_labels(self, labels: Labels) -> Result<Self> {
        validate_labels(&self.beta, &self.gamma, &labels)?;
        Ok(Self::assemble(self.alpha, self.beta, self.gamma, self.isolated, Some(labels)))
    }

    /// Labels each hyperedge orbit by walking it from its smallest flag,
    /// which becomes the tail of arrow 1.
    pub fn derive_labels(&self) -> Self {
        let n = self.flag_count();
        let mut flags = vec![FlagLabel { edge: 0, index: 0, end: End::Tail }; n];
        let mut done = vec![false; self.edge_count];
        for x in 0..n {
            let e = self.edge_of[x];
            if done[e] {
                continue;
            }
            done[e] = true;
            let mut tail = x;
            let mut index = 1;
            loop {
                let head = self.gamma[tail];
                flags[tail] = FlagLabel { edge: e, index, end: End::Tail };
                flags[head] = FlagLabel { edge: e, index, end: End::Head };
                tail = self.beta[head];
                if tail == x {
                    break;
                }
                index += 1;
            }
        }
        let names = (0..self.edge_count).map(default_edge_name).collect();
        Self::assemble(
            self.alpha.clone(),
            self.beta.clone(),
            self.gamma.clone(),
            self.isolated,
            Some(Labels::new(names, flags)),
        )
    }

    pub(crate) fn assemble(
        alpha: Vec<usize>,
        beta: Vec<usize>,
        gamma: Vec<usize>,
        isolated: usize,
        labels: Option<Labels>,
    ) -> Self {
        let (edge_count, edge_of) = match &labels {
            Some(l) => (l.names.len(), l.flags.iter().map(|f| f.edge).collect()),
            None => orbit_ids(alpha.len(), &[&beta, &gamma]),
        };
        Self { alpha, beta, gamma, isolated, labels, edge_of, edge_count }
    }

    pub fn flag_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    pub fn isolated(&self) -> usize {
        self.isolated
    }

    pub fn with_isolated(mut self, isolated: usize) -> Self {
        self.isolated = isolated;
        self
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    /// Labeled copy; derives labels if there are none.
    pub fn labeled(&self) -> Self {
        if self.labels.is_some() {
            self.clone()
        } else {
            self.derive_labels()
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn edge_of(&self, flag: usize) -> usize {
        self.edge_of[flag]
    }

    pub fn degree(&self, edge: usize) -> usize {
        self.edge_of.iter().filter(|&&e| e == edge).count() / 2
    }

    pub fn edge_flags(&self, edge: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.flag_count()).filter(move |&x| self.edge_of[x] == edge)
    }

    pub fn edge_name(&self, edge: usize) -> String {
        match &self.labels {
            Some(l) => l.names[edge].clone(),
            None => default_edge_name(edge),
        }
    }

    /// Resolves a hyperedge name. Unlabeled structures answer to the names
    /// [`FlagStructure::derive_labels`] would give.
    pub fn edge_index(&self, name: &str) -> Result<usize> {
        (0..self.edge_count)
            .find(|&e| self.edge_name(e) == name)
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn edge_set<S: AsRef<str>>(&self, names: &[S]) -> Result<EdgeSet> {
        names.iter().map(|n| self.edge_index(n.as_ref())).collect()
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edge_count)
    }

    pub fn check_edges(&self, set: &EdgeSet) -> Result<()> {
        match set.max_index() {
            Some(m) if m >= self.edge_count => Err(Error::UnknownEdgeIndex(m)),
            _ => Ok(()),
        }
    }

    /// Describes a flag as `edge.index/end`.
    pub fn describe_flag(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => {
                let f = l.flags[x];
                format!("{}.{}/{}", l.names[f.edge], f.index, f.end.as_str())
            }
            None => format!("flag {x}"),
        }
    }

    /// Sub-hypermap keeping only the hyperedges in `keep`. Hypervertices are
    /// retained; those left without arrows become isolated.
    pub fn restrict(&self, keep: &EdgeSet) -> Result<Self> {
        Ok(self.restrict_with_map(keep)?.0)
    }

    /// Like [`FlagStructure::restrict`], also returning the old-to-new flag map.
    pub fn restrict_with_map(&self, keep: &EdgeSet) -> Result<(Self, Vec<Option<usize>>)> {
        self.check_edges(keep)?;
        let n = self.flag_count();
        let kept = |x: usize| keep.contains(self.edge_of[x]);
        let mut map = vec![None; n];
        let mut next = 0;
        for (x, slot) in map.iter_mut().enumerate() {
            if kept(x) {
                *slot = Some(next);
                next += 1;
            }
        }
        let m = next;
        let mut alpha = vec![0; m];
        let mut beta = vec![0; m];
        let mut gamma = vec![0; m];
        for x in (0..n).filter(|&x| kept(x)) {
            let nx = map[x].unwrap();
            // first return to a kept flag along the hypervertex boundary
            let mut y = self.alpha[x];
            while !kept(y) {
                y = self.alpha[self.gamma[y]];
            }
            alpha[nx] = map[y].unwrap();
            beta[nx] = map[self.beta[x]].unwrap();
            gamma[nx] = map[self.gamma[x]].unwrap();
        }
        let (curves, curve_of) = orbit_ids(n, &[&self.alpha, &self.gamma]);
        let mut touched = vec![false; curves];
        for x in (0..n).filter(|&x| kept(x)) {
            touched[curve_of[x]] = true;
        }
        let emptied = touched.iter().filter(|t| !**t).count();

        let labels = self.labels.as_ref().map(|l| {
            let mut remap = vec![usize::MAX; self.edge_count];
            let mut names = Vec::new();
            for e in keep.iter() {
                remap[e] = names.len();
                names.push(l.names[e].clone());
            }
            let flags = (0..n)
                .filter(|&x| kept(x))
                .map(|x| FlagLabel { edge: remap[l.flags[x].edge], ..l.flags[x] })
                .collect();
            Labels::new(names, flags)
        });
        let fs = Self::assemble(alpha, beta, gamma, self.isolated + emptied, labels);
        Ok((fs, map))
    }
}

fn validate_labels(beta: &[usize], gamma: &[usize], labels: &Labels) -> Result<()> {
    let bad = |msg: String| Err(Error::InconsistentLabels(msg));
    if labels.flags.len() != beta.len() {
        return bad(format!("{} labels for {} flags", labels.flags.len(), beta.len()));
    }
    let mut at: BTreeMap<(usize, usize, End), usize> = BTreeMap::new();
    for (x, f) in labels.flags.iter().enumerate() {
        if f.edge >= labels.names.len() {
            return bad(format!("flag {x} names hyperedge {} of {}", f.edge, labels.names.len()));
        }
        if at.insert((f.edge, f.index, f.end), x).is_some() {
            return bad(format!("two flags labeled {}.{}/{}", labels.names[f.edge], f.index, f.end.as_str()));
        }
    }
    for (e, name) in labels.names.iter().enumerate() {
        let d = at.range((e, 0, End::Tail)..(e + 1, 0, End::Tail)).count() / 2;
        if d == 0 {
            return bad(format!("hyperedge {name} has no arrows"));
        }
        for i in 1..=d {
            let (Some(&t), Some(&h)) = (at.get(&(e, i, End::Tail)), at.get(&(e, i, End::Head))) else {
                return bad(format!("arrow {name}.{i} is incomplete"));
            };
            if gamma[t] != h {
                return bad(format!("gamma does not join the ends of {name}.{i}"));
            }
            let next = at[&(e, i % d + 1, End::Tail)];
            if beta[h] != next {
                return bad(format!("beta does not join {name}.{i} to its successor"));
            }
        }
    }
    Ok(())
}

/// Builds the flag structure of an arrow presentation. The k-th arrow (in
/// curve order) gets tail flag `2k` and head flag `2k + 1`, so `gamma` is the
/// standard matching. Hyperedges are numbered in sorted name order.
pub fn flags_from_arrows(ap: &ArrowPresentation) -> FlagStructure {
    let names: Vec<String> = ap.edges().into_iter().map(String::from).collect();
    let edge_idx: BTreeMap<&str, usize> =
        names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let occs: Vec<&Occurrence> = ap.curves().iter().flatten().collect();
    let n = 2 * occs.len();
    let occ_of: BTreeMap<(&str, usize), usize> =
        occs.iter().enumerate().map(|(k, o)| ((o.edge.as_str(), o.index), k)).collect();
    let degree = |e: &str| ap.degree(e);

    let mut alpha = vec![0; n];
    let mut beta = vec![0; n];
    let mut gamma = vec![0; n];
    let mut flags = vec![FlagLabel { edge: 0, index: 0, end: End::Tail }; n];
    for (k, o) in occs.iter().enumerate() {
        let (t, h) = (2 * k, 2 * k + 1);
        gamma[t] = h;
        gamma[h] = t;
        let e = edge_idx[o.edge.as_str()];
        flags[t] = FlagLabel { edge: e, index: o.index, end: End::Tail };
        flags[h] = FlagLabel { edge: e, index: o.index, end: End::Head };
        let next = occ_of[&(o.edge.as_str(), o.index % degree(&o.edge) + 1)];
        beta[h] = 2 * next;
        beta[2 * next] = h;
    }
    let mut isolated = 0;
    let mut k = 0;
    for curve in ap.curves() {
        if curve.is_empty() {
            isolated += 1;
            continue;
        }
        // endpoints in traversal order: (tail, head) for +, (head, tail) for -
        let ends = |j: usize| {
            let occ = k + j;
            match curve[j].sign {
                Sign::Plus => (2 * occ, 2 * occ + 1),
                Sign::Minus => (2 * occ + 1, 2 * occ),
            }
        };
        for j in 0..curve.len() {
            let second = ends(j).1;
            let first_next = ends((j + 1) % curve.len()).0;
            alpha[second] = first_next;
            alpha[first_next] = second;
        }
        k += curve.len();
    }
    FlagStructure::assemble(alpha, beta, gamma, isolated, Some(Labels::new(names, flags)))
}

/// Reads the curves back off a labeled flag structure: one curve per
/// `<alpha, gamma>` orbit, started at its smallest flag and traversed
/// alternately along `gamma` and `alpha`; isolated hypervertices become
/// empty curves.
pub fn arrows_from_flags(fs: &FlagStructure) -> Result<ArrowPresentation> {
    let labels = fs.labels().ok_or(Error::MissingLabels)?;
    let n = fs.flag_count();
    let mut seen = vec![false; n];
    let mut curves = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut curve = Vec::new();
        let mut cur = start;
        loop {
            let f = labels.flag(cur);
            let sign = if f.end == End::Tail { Sign::Plus } else { Sign::Minus };
            curve.push(Occurrence::new(labels.names[f.edge].clone(), f.index, sign));
            let other = fs.gamma()[cur];
            seen[cur] = true;
            seen[other] = true;
            cur = fs.alpha()[other];
            if cur == start {
                break;
            }
        }
        curves.push(curve);
    }
    curves.extend((0..fs.isolated()).map(|_| Vec::new()));
    ArrowPresentation::new(None, curves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::hmap;

    #[test]
    fn single_stub_collapses_matchings() {
        let fs = flags_from_arrows(&hmap(&["e.1+"]));
        assert_eq!(fs.alpha(), [1, 0]);
        assert_eq!(fs.beta(), [1, 0]);
        assert_eq!(fs.gamma(), [1, 0]);
    }

    #[test]
    fn twisted_loop_matchings() {
        // endpoint order along the curve: t1 h1 h2 t2
        let fs = flags_from_arrows(&hmap(&["e.1+ e.2-"]));
        let (t1, h1, t2, h2) = (0, 1, 2, 3);
        assert_eq!(fs.alpha()[h1], h2);
        assert_eq!(fs.alpha()[t2], t1);
        assert_eq!(fs.beta()[h1], t2);
        assert_eq!(fs.beta()[h2], t1);
        assert_eq!(fs.gamma()[t1], h1);
        assert_eq!(fs.gamma()[t2], h2);
    }

    #[test]
    fn labels_validated() {
        let fs = flags_from_arrows(&hmap(&["a.1+ b.1+ a.2+ b.2+"]));
        let labels = fs.labels().unwrap().clone();
        let bare = FlagStructure::from_matchings(
            fs.alpha().to_vec(),
            fs.beta().to_vec(),
            fs.gamma().to_vec(),
            0,
        )
        .unwrap();
        assert_eq!(bare.clone().with_labels(labels.clone()).unwrap(), fs);
        let mut flags = labels.flags().to_vec();
        flags.swap(0, 1);
        let broken = Labels::new(labels.names().to_vec(), flags);
        assert!(matches!(bare.with_labels(broken), Err(Error::InconsistentLabels(_))));
    }

    #[test]
    fn rejects_bad_matchings() {
        assert_eq!(
            FlagStructure::from_matchings(vec![0, 1], vec![1, 0], vec![1, 0], 0),
            Err(Error::FixedPoint { flag: 0 })
        );
        assert_eq!(
            FlagStructure::from_matchings(vec![1, 2, 0], vec![1, 0, 2], vec![1, 0, 2], 0),
            Err(Error::OddFlagCount(3))
        );
        assert_eq!(
            FlagStructure::from_matchings(vec![1, 0], vec![1, 0, 3, 2], vec![1, 0], 0),
            Err(Error::LengthMismatch)
        );
    }

    #[test]
    fn arrows_round_trip_layout() {
        let ap = hmap(&["e.1+"]);
        let back = arrows_from_flags(&flags_from_arrows(&ap)).unwrap();
        assert_eq!(back.curves(), ap.curves());
        let iso = FlagStructure::from_matchings(vec![], vec![], vec![], 2).unwrap().derive_labels();
        let ap = arrows_from_flags(&iso).unwrap();
        assert_eq!(ap.curves().len(), 2);
        assert!(ap.curves().iter().all(Vec::is_empty));
        let bare = FlagStructure::from_matchings(vec![1, 0], vec![1, 0], vec![1, 0], 0).unwrap();
        assert_eq!(arrows_from_flags(&bare), Err(Error::MissingLabels));
    }

    #[test]
    fn restrict_first_return() {
        let fs = flags_from_arrows(&hmap(&["a.1+ b.1+ a.2+ b.2+"]));
        let a = fs.restrict(&fs.edge_set(&["a"]).unwrap()).unwrap();
        let ap = arrows_from_flags(&a).unwrap();
        assert_eq!(ap.curves().len(), 1);
        assert_eq!(ap.curves()[0].len(), 2);
        assert_eq!(a.isolated(), 0);

        let empty = flags_from_arrows(&hmap(&["e.1+ e.2-"])).restrict(&EdgeSet::new()).unwrap();
        assert_eq!(empty.flag_count(), 0);
        assert_eq!(empty.isolated(), 1);

        assert_eq!(fs.restrict(&fs.all_edges()).unwrap(), fs);
        assert_eq!(fs.restrict(&EdgeSet::from_mask(0b100)), Err(Error::UnknownEdgeIndex(2)));
        assert_eq!(fs.edge_set(&["zz"]), Err(Error::UnknownEdge("zz".into())));
    }
}
