//! The partial-dual genus polynomial `sum over A of z^eps(H^A)`, and the two
//! hypermap products under which it is multiplicative.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::counts::count_summary;
use crate::duality::partial_dual;
use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::flags::{orbit_ids, FlagLabel, FlagStructure, Labels};

/// Largest hyperedge count the subset engines accept; keeps `2^e` and every
/// coefficient inside a `u64`.
pub const MAX_POLY_EDGES: usize = 62;

/// Sparse polynomial in `z` with positive integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GenusPolynomial {
    coeffs: BTreeMap<usize, u64>,
}

impl GenusPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: u64) -> Self {
        let mut p = Self::new();
        p.add_term(0, c);
        p
    }

    pub fn add_term(&mut self, exponent: usize, coefficient: u64) {
        if coefficient > 0 {
            *self.coeffs.entry(exponent).or_insert(0) += coefficient;
        }
    }

    pub fn coefficient(&self, exponent: usize) -> u64 {
        self.coeffs.get(&exponent).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs by ascending exponent.
    pub fn terms(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact value at `x`; `None` on `i128` overflow.
    pub fn eval(&self, x: i64) -> Option<i128> {
        self.terms().try_fold(0i128, |acc, (e, c)| {
            let power = i128::from(x).checked_pow(u32::try_from(e).ok()?)?;
            acc.checked_add(power.checked_mul(i128::from(c))?)
        })
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn constant_term(&self) -> u64 {
        self.coefficient(0)
    }

    /// Sum of the coefficients, i.e. the value at 1.
    pub fn total(&self) -> u64 {
        self.coeffs.values().sum()
    }

    /// A nonzero constant `k z^0`.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.contains_key(&0)
    }

    pub fn merge(&mut self, other: &Self) {
        for (e, c) in other.terms() {
            self.add_term(e, c);
        }
    }

    /// Product; `None` if a coefficient overflows.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let mut out = Self::new();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let c = c1.checked_mul(c2)?;
                let slot = out.coeffs.entry(e1 + e2).or_insert(0);
                *slot = slot.checked_add(c)?;
            }
        }
        Some(out)
    }
}

impl FromIterator<(usize, u64)> for GenusPolynomial {
    fn from_iter<I: IntoIterator<Item = (usize, u64)>>(iter: I) -> Self {
        let mut p = Self::new();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }
}

/// `2 + 2*z^2`, `6*z^4 + 2*z^6`; unit coefficients are omitted on powers of
/// `z`, and the zero polynomial prints as `0`.
impl fmt::Display for GenusPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let power = match e {
                0 => String::new(),
                1 => String::from("z"),
                _ => format!("z^{e}"),
            };
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (_, 1) => f.write_str(&power)?,
                (_, c) => write!(f, "{c}*{power}")?,
            }
        }
        Ok(())
    }
}

/// Number of subsets `2^e`, guarded by [`MAX_POLY_EDGES`].
pub fn subset_count(fs: &FlagStructure) -> Result<u64> {
    let e = fs.edge_count();
    if e > MAX_POLY_EDGES {
        return Err(Error::TooManyEdges { edges: e, limit: MAX_POLY_EDGES });
    }
    Ok(1u64 << e)
}

/// Subset visited at step `i` of the reflected Gray code.
pub fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Builds every partial dual and tallies its Euler genus.
pub fn poly_direct(fs: &FlagStructure) -> Result<GenusPolynomial> {
    poly_direct_range(fs, 0..subset_count(fs)?)
}

/// Contribution of Gray-code steps `range` to [`poly_direct`].
pub fn poly_direct_range(fs: &FlagStructure, range: Range<u64>) -> Result<GenusPolynomial> {
    let total = subset_count(fs)?;
    let mut p = GenusPolynomial::new();
    for i in range.start..range.end.min(total) {
        let dual = partial_dual(fs, &EdgeSet::from_mask(gray(i)))?;
        p.add_term(epsilon_index(count_summary(&dual).epsilon), 1);
    }
    Ok(p)
}

/// Evaluates the genus of each partial dual from the sub-hypermaps `A` and
/// `A^c` without building the dual.
pub fn poly_subset_formula(fs: &FlagStructure) -> Result<GenusPolynomial> {
    poly_subset_formula_range(fs, 0..subset_count(fs)?)
}

/// Contribution of Gray-code steps `range` to [`poly_subset_formula`].
pub fn poly_subset_formula_range(fs: &FlagStructure, range: Range<u64>) -> Result<GenusPolynomial> {
    let total = subset_count(fs)?;
    let end = range.end.min(total);
    let mut p = GenusPolynomial::new();
    if range.start >= end {
        return Ok(p);
    }
    let mut counter = SubsetCounter::new(fs);
    let mut mask = gray(range.start);
    counter.set_mask(mask);
    for i in range.start..end {
        if i > range.start {
            let next = gray(i);
            counter.flip_edge((mask ^ next).trailing_zeros() as usize);
            mask = next;
        }
        p.add_term(epsilon_index(counter.dual_epsilon()), 1);
    }
    Ok(p)
}

fn epsilon_index(eps: i64) -> usize {
    usize::try_from(eps).expect("Euler genus is non-negative")
}

/// Incremental bookkeeping for the formula engine: which flags lie in `A`,
/// plus the static orbit data both sides need.
struct SubsetCounter<'a> {
    fs: &'a FlagStructure,
    in_a: Vec<bool>,
    vertex_of: Vec<usize>,
    vertex_count: usize,
    edge_vertices: Vec<Vec<usize>>,
    edge_flags: Vec<Vec<usize>>,
    k_h: i64,
    v_h: i64,
    seen: Vec<bool>,
    touched: Vec<bool>,
    parent: Vec<usize>,
}

impl<'a> SubsetCounter<'a> {
    fn new(fs: &'a FlagStructure) -> Self {
        let n = fs.flag_count();
        let (vertex_count, vertex_of) = orbit_ids(n, &[fs.alpha(), fs.gamma()]);
        let mut edge_vertices: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); fs.edge_count()];
        let mut edge_flags = vec![Vec::new(); fs.edge_count()];
        for x in 0..n {
            edge_vertices[fs.edge_of(x)].insert(vertex_of[x]);
            edge_flags[fs.edge_of(x)].push(x);
        }
        let (comps, _) = orbit_ids(n, &[fs.alpha(), fs.beta(), fs.gamma()]);
        Self {
            fs,
            in_a: vec![false; n],
            vertex_of,
            vertex_count,
            edge_vertices: edge_vertices.into_iter().map(|s| s.into_iter().collect()).collect(),
            edge_flags,
            k_h: (comps + fs.isolated()) as i64,
            v_h: (vertex_count + fs.isolated()) as i64,
            seen: vec![false; n],
            touched: vec![false; vertex_count],
            parent: vec![0; vertex_count],
        }
    }

    fn set_mask(&mut self, mask: u64) {
        for x in 0..self.fs.flag_count() {
            self.in_a[x] = mask >> self.fs.edge_of(x) & 1 == 1;
        }
    }

    fn flip_edge(&mut self, edge: usize) {
        for &x in &self.edge_flags[edge] {
            self.in_a[x] = !self.in_a[x];
        }
    }

    /// `eps(A) + eps(A^c) + 2 (k(H) - k(A) - k(A^c)) + 2 v(H)`.
    fn dual_epsilon(&mut self) -> i64 {
        let a = self.side(true);
        let ac = self.side(false);
        a.1 + ac.1 + 2 * (self.k_h - a.0 - ac.0) + 2 * self.v_h
    }

    /// `(k, eps)` of the sub-hypermap on one side of the split.
    fn side(&mut self, side: bool) -> (i64, i64) {
        let fs = self.fs;
        let n = fs.flag_count();
        let alpha = fs.alpha();
        let beta = fs.beta();
        let gamma = fs.gamma();
        let kept = |x: usize| self.in_a[x] == side;

        self.seen.iter_mut().for_each(|s| *s = false);
        self.touched.iter_mut().for_each(|t| *t = false);
        let mut kept_flags = 0;
        let mut face_orbits = 0;
        for x in 0..n {
            if !kept(x) {
                continue;
            }
            kept_flags += 1;
            self.touched[self.vertex_of[x]] = true;
            if self.seen[x] {
                continue;
            }
            face_orbits += 1;
            let mut y = x;
            loop {
                self.seen[y] = true;
                let z = beta[y];
                self.seen[z] = true;
                let mut w = alpha[z];
                while !kept(w) {
                    w = alpha[gamma[w]];
                }
                if w == x {
                    break;
                }
                y = w;
            }
        }
        let emptied = self.touched.iter().filter(|t| !**t).count();
        let isolated = fs.isolated() + emptied;

        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut edges = 0;
        for e in 0..fs.edge_count() {
            // every flag of an edge sits on the same side
            if !kept(self.edge_flags[e][0]) {
                continue;
            }
            let vs = &self.edge_vertices[e];
            let first = vs[0];
            edges += 1;
            for &w in &vs[1..] {
                union(&mut self.parent, first, w);
            }
        }
        let roots = (0..self.vertex_count).filter(|&i| find(&mut self.parent, i) == i).count();
        let k = (roots + fs.isolated()) as i64;
        let f = (face_orbits + isolated) as i64;
        let d = (kept_flags / 2) as i64;
        let chi = self.v_h + edges + f - d;
        (k, 2 * k - chi)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Disjoint union. Hyperedge names of the second operand are suffixed
/// (`a` -> `a_2`, ...) where they collide with the first.
pub fn disjoint_union(fs1: &FlagStructure, fs2: &FlagStructure) -> FlagStructure {
    let (alpha, beta, gamma) = concat_matchings(fs1, fs2);
    FlagStructure::assemble(alpha, beta, gamma, fs1.isolated() + fs2.isolated(), merge_labels(fs1, fs2))
}

fn concat_matchings(fs1: &FlagStructure, fs2: &FlagStructure) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let off = fs1.flag_count();
    let cat = |a: &[usize], b: &[usize]| -> Vec<usize> {
        a.iter().copied().chain(b.iter().map(|&y| y + off)).collect()
    };
    (cat(fs1.alpha(), fs2.alpha()), cat(fs1.beta(), fs2.beta()), cat(fs1.gamma(), fs2.gamma()))
}

fn merge_labels(fs1: &FlagStructure, fs2: &FlagStructure) -> Option<Labels> {
    let (l1, l2) = (fs1.labels()?, fs2.labels()?);
    let mut names: Vec<String> = l1.names().to_vec();
    let mut taken: BTreeSet<String> = names.iter().chain(l2.names()).cloned().collect();
    for name in l2.names() {
        if l1.names().contains(name) {
            let mut k = 2;
            let fresh = loop {
                let candidate = format!("{name}_{k}");
                if !taken.contains(&candidate) {
                    break candidate;
                }
                k += 1;
            };
            taken.insert(fresh.clone());
            names.push(fresh);
        } else {
            names.push(name.clone());
        }
    }
    let off = l1.names().len();
    let flags = l1
        .flags()
        .iter()
        .copied()
        .chain(l2.flags().iter().map(|f| FlagLabel { edge: f.edge + off, ..*f }))
        .collect();
    Some(Labels::new(names, flags))
}

/// Where a one-vertex join pastes: the free boundary arc from a flag `x` to
/// `alpha(x)`, or the whole boundary of an isolated hypervertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gap {
    Arc(usize),
    Isolated,
}

/// Every free arc on the hypervertex through `flag`, one gap per arc.
pub fn vertex_gaps(fs: &FlagStructure, flag: usize) -> Vec<Gap> {
    let (_, vertex_of) = orbit_ids(fs.flag_count(), &[fs.alpha(), fs.gamma()]);
    (0..fs.flag_count())
        .filter(|&x| vertex_of[x] == vertex_of[flag] && x < fs.alpha()[x])
        .map(Gap::Arc)
        .collect()
}

/// One-vertex join `H1 v H2`: cuts both hypervertices open at the given
/// arcs and pastes them into one. Without `flip` the arc `x1 -> alpha(x1)`
/// is reconnected as `x1 -> alpha(x2)` and `x2 -> alpha(x1)`; with `flip`
/// the second curve is inserted reversed (`x1 -> x2`, `alpha(x1) ->
/// alpha(x2)`). Joining at an isolated hypervertex simply absorbs it.
pub fn one_vertex_join(
    fs1: &FlagStructure,
    gap1: Gap,
    fs2: &FlagStructure,
    gap2: Gap,
    flip: bool,
) -> Result<FlagStructure> {
    if fs1.flag_count() + fs1.isolated() == 0 && fs2.flag_count() + fs2.isolated() == 0 {
        return Err(Error::EmptyOperands);
    }
    let check = |fs: &FlagStructure, gap: Gap, which: &str| match gap {
        Gap::Arc(x) if x >= fs.flag_count() => {
            Err(Error::BadGap(format!("flag {x} is not on the {which} operand")))
        }
        Gap::Isolated if fs.isolated() == 0 => {
            Err(Error::BadGap(format!("the {which} operand has no isolated hypervertex")))
        }
        _ => Ok(()),
    };
    check(fs1, gap1, "first")?;
    check(fs2, gap2, "second")?;

    let off = fs1.flag_count();
    let (mut alpha, beta, gamma) = concat_matchings(fs1, fs2);
    let mut isolated = fs1.isolated() + fs2.isolated();
    match (gap1, gap2) {
        (Gap::Arc(x1), Gap::Arc(x2)) => {
            let (x2, y1, y2) = (x2 + off, alpha[x1], alpha[x2 + off]);
            let (p, q) = if flip { (x2, y2) } else { (y2, x2) };
            alpha[x1] = p;
            alpha[p] = x1;
            alpha[y1] = q;
            alpha[q] = y1;
        }
        _ => isolated -= 1,
    }
    Ok(FlagStructure::assemble(alpha, beta, gamma, isolated, merge_labels(fs1, fs2)))
}
