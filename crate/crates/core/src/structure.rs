//! Ribbon-graph expansion, alternation, intersection graphs of
//! hyper-bouquets, one-vertex-join decomposition, and the structural
//! criteria stated in terms of them.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::counts::{classify, count_summary};
use crate::duality::full_dual;
use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::flags::{orbit_ids, End, FlagStructure};
use crate::polynomial::{one_vertex_join, poly_subset_formula, Gap};

/// One arrow on a hypervertex boundary, entered at `flag`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingEntry {
    pub edge: usize,
    pub flag: usize,
}

/// `R(H)`: every hyperedge `e` replaced by a central vertex `v_e` joined to
/// the hypervertex of each of its arrows by an ordinary edge.
///
/// Nodes `0..v` are the hypervertices (curves by smallest flag, then the
/// isolated ones); node `v + e` is the central vertex of hyperedge `e`.
#[derive(Debug, Clone)]
pub struct RibbonExpansion {
    vertex_count: usize,
    edge_count: usize,
    rings: Vec<Vec<RingEntry>>,
    ribbon_graph: FlagStructure,
}

pub fn ribbon_expansion(fs: &FlagStructure) -> RibbonExpansion {
    let n = fs.flag_count();
    let (curves, curve_of) = orbit_ids(n, &[fs.alpha(), fs.gamma()]);
    let mut rings = vec![Vec::new(); curves];
    let mut started = vec![false; curves];
    for start in 0..n {
        let c = curve_of[start];
        if started[c] {
            continue;
        }
        started[c] = true;
        let mut x = start;
        loop {
            rings[c].push(RingEntry { edge: fs.edge_of(x), flag: x });
            x = fs.alpha()[fs.gamma()[x]];
            if x == start {
                break;
            }
        }
    }
    rings.extend((0..fs.isolated()).map(|_| Vec::new()));

    // Each arrow (t, h) becomes a band to v_e: flag x gets a partner n + x
    // across the band, v_e's boundary runs along the old beta pairs, and the
    // band ends keep the gamma pairing.
    let mut alpha = fs.alpha().to_vec();
    alpha.extend(fs.beta().iter().map(|&y| y + n));
    let beta: Vec<usize> = (0..n).map(|x| x + n).chain(0..n).collect();
    let mut gamma = fs.gamma().to_vec();
    gamma.extend(fs.gamma().iter().map(|&y| y + n));
    let ribbon_graph = FlagStructure::assemble(alpha, beta, gamma, fs.isolated(), None);

    RibbonExpansion { vertex_count: curves + fs.isolated(), edge_count: fs.edge_count(), rings, ribbon_graph }
}

impl RibbonExpansion {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn node_count(&self) -> usize {
        self.vertex_count + self.edge_count
    }

    /// One edge per arrow.
    pub fn edge_count(&self) -> usize {
        self.rings.iter().map(Vec::len).sum()
    }

    pub fn rings(&self) -> &[Vec<RingEntry>] {
        &self.rings
    }

    /// `R(H)` as a flag structure, with its own faces.
    pub fn ribbon_graph(&self) -> &FlagStructure {
        &self.ribbon_graph
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.node_count());
        for (v, ring) in self.rings.iter().enumerate() {
            for entry in ring {
                uf.union(v, self.vertex_count + entry.edge);
            }
        }
        uf.count()
    }

    /// Component id of every node of `R(H) \ v` (the entry for `v` itself is
    /// meaningless).
    fn components_without(&self, v: usize) -> Vec<usize> {
        let mut uf = UnionFind::new(self.node_count());
        for (w, ring) in self.rings.iter().enumerate() {
            if w == v {
                continue;
            }
            for entry in ring {
                uf.union(w, self.vertex_count + entry.edge);
            }
        }
        (0..self.node_count()).map(|x| uf.find(x)).collect()
    }

    /// Labels each position of `v`'s ring by the component of its central
    /// vertex in `R(H) \ v`; labels are numbered in order of first appearance.
    pub fn components_excluding_vertex(&self, v: usize) -> Result<Vec<usize>> {
        if v >= self.vertex_count {
            return Err(Error::UnknownVertex(v));
        }
        let comp = self.components_without(v);
        let mut seen: Vec<usize> = Vec::new();
        Ok(self.rings[v]
            .iter()
            .map(|entry| {
                let c = comp[self.vertex_count + entry.edge];
                match seen.iter().position(|&s| s == c) {
                    Some(i) => i,
                    None => {
                        seen.push(c);
                        seen.len() - 1
                    }
                }
            })
            .collect())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Four arrows alternating around hypervertex `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alternation {
    pub vertex: usize,
    /// Ring positions, increasing.
    pub positions: [usize; 4],
    /// Entry flags of the four arrows.
    pub flags: [usize; 4],
}

/// First positions of four runs `X Y X Y` in `labels` restricted to
/// `{x, y}`, if the restriction has at least four runs.
fn interleaving(labels: &[usize], x: usize, y: usize) -> Option<[usize; 4]> {
    let mut runs = [0; 4];
    let mut count = 0;
    let mut last = None;
    for (i, &l) in labels.iter().enumerate() {
        if l != x && l != y || last == Some(l) {
            continue;
        }
        last = Some(l);
        runs[count] = i;
        count += 1;
        if count == 4 {
            return Some(runs);
        }
    }
    None
}

fn alternation_in_ring(ring: &[RingEntry], labels: &[usize], vertex: usize) -> Option<Alternation> {
    let distinct: BTreeSet<usize> = labels.iter().copied().collect();
    for &x in &distinct {
        for &y in distinct.range(x + 1..) {
            if let Some(positions) = interleaving(labels, x, y) {
                return Some(Alternation { vertex, positions, flags: positions.map(|p| ring[p].flag) });
            }
        }
    }
    None
}

/// Four arrows `cl1 .. cl4` in cyclic order around `v` whose central
/// vertices lie in components `C, C', C, C'` of `R(H) \ v` with `C != C'`.
pub fn alternating_quadruple(fs: &FlagStructure, v: usize) -> Result<Option<Alternation>> {
    let re = ribbon_expansion(fs);
    let labels = re.components_excluding_vertex(v)?;
    Ok(alternation_in_ring(&re.rings[v], &labels, v))
}

/// An alternating quadruple at any hypervertex.
pub fn find_alternation(fs: &FlagStructure) -> Option<Alternation> {
    let re = ribbon_expansion(fs);
    (0..re.vertex_count()).find_map(|v| {
        let labels = re.components_excluding_vertex(v).ok()?;
        alternation_in_ring(&re.rings[v], &labels, v)
    })
}

/// Simple graph on the hyperedges of a hyper-bouquet; `e ~ f` iff their
/// arrows interleave `e .. f .. e .. f` around the vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    names: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

impl IntersectionGraph {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Adjacent pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.names.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut color: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                let c = color[x].unwrap();
                for &y in &adj[x] {
                    match color[y] {
                        None => {
                            color[y] = Some(!c);
                            stack.push(y);
                        }
                        Some(cy) if cy == c => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }
}

fn require_bouquet(fs: &FlagStructure) -> Result<()> {
    if count_summary(fs).v != 1 {
        return Err(Error::NotBouquet);
    }
    Ok(())
}

pub fn intersection_graph(fs: &FlagStructure) -> Result<IntersectionGraph> {
    require_bouquet(fs)?;
    let re = ribbon_expansion(fs);
    let ring: Vec<usize> = re.rings[0].iter().map(|r| r.edge).collect();
    let e = fs.edge_count();
    let mut edges = BTreeSet::new();
    for a in 0..e {
        for b in a + 1..e {
            if interleaving(&ring, a, b).is_some() {
                edges.insert((a, b));
            }
        }
    }
    Ok(IntersectionGraph { names: (0..e).map(|i| fs.edge_name(i)).collect(), edges })
}

/// Whether a hyper-bouquet's polynomial has a nonzero constant term,
/// decided structurally: `I(B)` bipartite and every single hyperedge plane.
pub fn constant_term_criterion(fs: &FlagStructure) -> Result<bool> {
    let graph = intersection_graph(fs)?;
    if !graph.is_bipartite() {
        return Ok(false);
    }
    for e in 0..fs.edge_count() {
        let single: EdgeSet = [e].into_iter().collect();
        if count_summary(&fs.restrict(&single)?).epsilon != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Addresses a flag by its arrow label, which survives restriction and
/// re-joining.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowEnd {
    pub edge: String,
    pub index: usize,
    pub end: End,
}

impl ArrowEnd {
    fn of(fs: &FlagStructure, x: usize) -> Self {
        let l = fs.labels().expect("decomposition works on labeled structures");
        let f = l.flag(x);
        Self { edge: l.names()[f.edge].clone(), index: f.index, end: f.end }
    }

    fn find(&self, fs: &FlagStructure) -> Option<usize> {
        let l = fs.labels()?;
        (0..fs.flag_count()).find(|&x| {
            let f = l.flag(x);
            l.names()[f.edge] == self.edge && f.index == self.index && f.end == self.end
        })
    }
}

/// A hypermap as an iterated one-vertex join of prime factors.
#[derive(Debug, Clone)]
pub enum JoinTree {
    Prime(FlagStructure),
    /// `left v right`, pasted at the arcs leaving `left_gap` and `right_gap`.
    Join { left: Box<JoinTree>, left_gap: ArrowEnd, right: Box<JoinTree>, right_gap: ArrowEnd },
}

impl JoinTree {
    pub fn is_prime(&self) -> bool {
        matches!(self, JoinTree::Prime(_))
    }

    pub fn factors(&self) -> Vec<&FlagStructure> {
        match self {
            JoinTree::Prime(fs) => vec![fs],
            JoinTree::Join { left, right, .. } => {
                let mut out = left.factors();
                out.extend(right.factors());
                out
            }
        }
    }

    /// Re-joins the factors at the recorded arcs.
    pub fn recompose(&self) -> FlagStructure {
        match self {
            JoinTree::Prime(fs) => fs.clone(),
            JoinTree::Join { left, left_gap, right, right_gap } => {
                let (l, r) = (left.recompose(), right.recompose());
                let x1 = left_gap.find(&l).expect("gap flag survives recomposition");
                let x2 = right_gap.find(&r).expect("gap flag survives recomposition");
                one_vertex_join(&l, Gap::Arc(x1), &r, Gap::Arc(x2), false).expect("recorded gaps are valid")
            }
        }
    }
}

/// A split of a connected hypermap `H = H1 v H2` at one hypervertex: a
/// cyclic arc of its ring whose component labels are disjoint from the
/// labels outside it. Returns the hyperedges of `H1` and the flags ending
/// the two arcs.
fn find_split(fs: &FlagStructure) -> Option<(EdgeSet, usize, usize)> {
    let re = ribbon_expansion(fs);
    for v in 0..re.vertex_count() {
        let ring = &re.rings[v];
        let n = ring.len();
        if n < 2 {
            continue;
        }
        let labels = re.components_excluding_vertex(v).ok()?;
        for start in 0..n {
            for len in 1..n {
                let inside: BTreeSet<usize> = (start..start + len).map(|p| labels[p % n]).collect();
                let disjoint = (start + len..start + n).all(|p| !inside.contains(&labels[p % n]));
                if !disjoint {
                    continue;
                }
                let comp = re.components_without(v);
                let inside_comps: BTreeSet<usize> =
                    (start..start + len).map(|p| comp[re.vertex_count() + ring[p % n].edge]).collect();
                let edges: EdgeSet = (0..fs.edge_count())
                    .filter(|&e| inside_comps.contains(&comp[re.vertex_count() + e]))
                    .collect();
                let last_inside = fs.gamma()[ring[(start + len - 1) % n].flag];
                let last_outside = fs.gamma()[ring[(start + n - 1) % n].flag];
                return Some((edges, last_inside, last_outside));
            }
        }
    }
    None
}

/// Factors a connected hypermap into one-vertex-join primes. A factor must
/// contain at least one hyperedge, so a hypermap with exactly one hyperedge
/// is prime. The edgeless hypervertex is the unit of the join and is not
/// prime.
pub fn join_decompose(fs: &FlagStructure) -> Result<JoinTree> {
    if count_summary(fs).k != 1 {
        return Err(Error::Disconnected);
    }
    Ok(decompose(&fs.labeled()))
}

fn decompose(fs: &FlagStructure) -> JoinTree {
    let Some((inside, x1, x2)) = find_split(fs) else {
        return JoinTree::Prime(fs.clone());
    };
    let outside = inside.complement(fs.edge_count());
    let left = fs.restrict(&inside).expect("split edges are valid").with_isolated(0);
    let right = fs.restrict(&outside).expect("split edges are valid").with_isolated(0);
    JoinTree::Join {
        left: Box::new(decompose(&left)),
        left_gap: ArrowEnd::of(fs, x1),
        right: Box::new(decompose(&right)),
        right_gap: ArrowEnd::of(fs, x2),
    }
}

pub fn is_prime(fs: &FlagStructure) -> Result<bool> {
    if count_summary(fs).k != 1 {
        return Err(Error::Disconnected);
    }
    Ok(fs.edge_count() > 0 && find_split(&fs.labeled()).is_none())
}

/// For prime connected `H`: whether `H` is plane with a single hyperedge,
/// the structural side of "the polynomial is a constant".
pub fn constant_poly_criterion(fs: &FlagStructure) -> Result<bool> {
    if !is_prime(fs)? {
        return Err(Error::NotPrime);
    }
    Ok(classify(fs).is_plane && fs.edge_count() == 1)
}

/// `(H is a plane hyper-bouquet, H* is a hypertree)` for connected `H`.
pub fn hypertree_duality_check(fs: &FlagStructure) -> Result<(bool, bool)> {
    let c = classify(fs);
    if count_summary(fs).k != 1 {
        return Err(Error::Disconnected);
    }
    Ok((c.is_plane && c.is_bouquet, classify(&full_dual(fs)).is_hypertree))
}

/// `poly(H) = 2^{e(H)} z^0`.
pub fn has_trivial_polynomial(fs: &FlagStructure) -> Result<bool> {
    let p = poly_subset_formula(fs)?;
    Ok(p.is_constant() && p.constant_term() == 1 << fs.edge_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::polynomial::poly_direct;
    use crate::test_util::flags;

    #[test]
    fn expansion_counts() {
        let re = ribbon_expansion(&flags(&["a.1+"]));
        assert_eq!((re.node_count(), re.edge_count()), (2, 1));

        let fs = flags(&["a.1+ b.1+ a.2+ b.2+"]);
        let re = ribbon_expansion(&fs);
        assert_eq!((re.node_count(), re.edge_count()), (3, 4));
        let ring: Vec<usize> = re.rings()[0].iter().map(|r| r.edge).collect();
        assert_eq!(ring, [0, 1, 0, 1]);

        let fs = flags(&["a.1+ b.1+ c.1+ a.2+ b.2+ c.2+ a.3+ b.3+ c.3+"]);
        let re = ribbon_expansion(&fs);
        let r = count_summary(re.ribbon_graph());
        assert_eq!(r.epsilon, 6);
        assert_eq!((r.v, r.e, r.f, r.k), (4, 9, 1, 1));
    }

    #[test]
    fn components_at_a_vertex() {
        let re = ribbon_expansion(&flags(&["a.1+ b.1+ a.2+ b.2+"]));
        assert_eq!(re.components_excluding_vertex(0).unwrap(), [0, 1, 0, 1]);
        assert_eq!(re.components_excluding_vertex(1), Err(Error::UnknownVertex(1)));

        // path a - v - b
        let re = ribbon_expansion(&flags(&["a.1+", "a.2+ b.1+", "b.2+"]));
        let v = (0..re.vertex_count()).find(|&v| re.rings()[v].len() == 2).unwrap();
        assert_eq!(re.components_excluding_vertex(v).unwrap(), [0, 1]);

        // theta: a and b also meet at w
        let re = ribbon_expansion(&flags(&["a.1+ b.1+", "a.2+ b.2+"]));
        assert_eq!(re.components_excluding_vertex(0).unwrap(), [0, 0]);
    }

    #[test]
    fn alternation_examples() {
        let fs = flags(&["a.1+ b.1+ a.2+ b.2+"]);
        let w = alternating_quadruple(&fs, 0).unwrap().unwrap();
        assert_eq!(w.positions, [0, 1, 2, 3]);
        let names: Vec<String> = w.flags.iter().map(|&x| fs.describe_flag(x)).collect();
        assert_eq!(names, ["a.1/tail", "b.1/tail", "a.2/tail", "b.2/tail"]);
        assert!(count_summary(&fs).epsilon > 0);

        assert_eq!(alternating_quadruple(&flags(&["a.1+ a.2+ b.1+ b.2+"]), 0).unwrap(), None);
        assert_eq!(alternating_quadruple(&flags(&["a.1+"]), 0).unwrap(), None);
    }

    #[test]
    fn intersection_graph_examples() {
        let g = intersection_graph(&flags(&["a.1+ b.1+ a.2+ b.2+"])).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), [(0, 1)]);
        let g = intersection_graph(&flags(&["a.1+ a.2+ b.1+ b.2+"])).unwrap();
        assert_eq!(g.edge_count(), 0);
        let g = intersection_graph(&flags(&["a.1+ b.1+ c.1+ a.2+ b.2+ c.2+"])).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(!g.is_bipartite());
        assert_eq!(intersection_graph(&flags(&["a.1+", "a.2+"])), Err(Error::NotBouquet));
    }

    #[test]
    fn constant_term_examples() {
        for (curve, expected) in [
            ("a.1+ b.1+ a.2+ b.2+", true),
            ("a.1+ b.1+ c.1+ a.2+ b.2+ c.2+", false),
            ("e.1+ e.2-", false),
        ] {
            let fs = flags(&[curve]);
            assert_eq!(constant_term_criterion(&fs).unwrap(), expected, "{curve}");
            assert_eq!(poly_direct(&fs).unwrap().constant_term() != 0, expected, "{curve}");
        }
    }

    #[test]
    fn decomposition_examples() {
        let fs = flags(&["a.1+ a.2+ b.1+ b.2+"]);
        let tree = join_decompose(&fs).unwrap();
        let factors = tree.factors();
        assert_eq!(factors.len(), 2);
        assert!(is_isomorphic(factors[0], &flags(&["a.1+ a.2+"])));
        assert!(is_isomorphic(factors[1], &flags(&["b.1+ b.2+"])));
        assert!(is_isomorphic(&tree.recompose(), &fs));

        assert!(join_decompose(&flags(&["a.1+ b.1+ a.2+ b.2+"])).unwrap().is_prime());
        assert!(join_decompose(&flags(&["a.1+"])).unwrap().is_prime());
        assert!(matches!(join_decompose(&flags(&["a.1+", "b.1+"])), Err(Error::Disconnected)));
    }

    #[test]
    fn decomposition_across_vertices() {
        // a twisted loop at one vertex joined to a path through another
        let fs = flags(&["c.1+ a.1+ a.2- b.1+ d.1+", "b.2+ c.2+"]);
        let tree = join_decompose(&fs).unwrap();
        assert!(tree.factors().len() >= 2);
        assert!(is_isomorphic(&tree.recompose(), &fs));
        let mut product = crate::GenusPolynomial::constant(1);
        for f in tree.factors() {
            assert!(is_prime(f).unwrap());
            product = product.checked_mul(&poly_direct(f).unwrap()).unwrap();
        }
        assert_eq!(product, poly_direct(&fs).unwrap());
    }

    #[test]
    fn constant_poly_examples() {
        assert!(constant_poly_criterion(&flags(&["a.1+"])).unwrap());
        assert!(!constant_poly_criterion(&flags(&["e.1+ e.2-"])).unwrap());
        assert!(!constant_poly_criterion(&flags(&["a.1+ b.1+ a.2+ b.2+"])).unwrap());
        assert_eq!(constant_poly_criterion(&flags(&["a.1+ a.2+ b.1+ b.2+"])), Err(Error::NotPrime));
    }

    #[test]
    fn hypertree_examples() {
        assert_eq!(hypertree_duality_check(&flags(&["a.1+ b.1+"])).unwrap(), (true, true));
        assert!(has_trivial_polynomial(&flags(&["a.1+ b.1+"])).unwrap());
        assert_eq!(hypertree_duality_check(&flags(&["e.1+ e.2-"])).unwrap(), (false, false));
        let iso = FlagStructure::from_matchings(vec![], vec![], vec![], 1).unwrap();
        assert_eq!(hypertree_duality_check(&iso).unwrap(), (true, true));
        assert!(has_trivial_polynomial(&iso).unwrap());
    }
}
