//! Partial duality with respect to a set of hyperedges.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arrows::{ArrowPresentation, Occurrence, Sign};
use crate::counts::count_summary;
use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::flags::{End, FlagLabel, FlagStructure, Labels};

/// `H^A`: swaps the `beta` and `gamma` pairs on every flag of every
/// hyperedge in `subset`; `alpha` is untouched.
///
/// Labels follow the rewiring: the new arrow `e_i` runs from the old head of
/// `e_i` to the old tail of `e_{i+1}`.
pub fn partial_dual(fs: &FlagStructure, subset: &EdgeSet) -> Result<FlagStructure> {
    fs.check_edges(subset)?;
    let mut beta = fs.beta().to_vec();
    let mut gamma = fs.gamma().to_vec();
    for x in 0..fs.flag_count() {
        if subset.contains(fs.edge_of(x)) {
            beta[x] = fs.gamma()[x];
            gamma[x] = fs.beta()[x];
        }
    }
    let labels = fs.labels().map(|l| {
        let degrees = degrees(fs);
        let flags = l
            .flags()
            .iter()
            .map(|&f| {
                if !subset.contains(f.edge) {
                    return f;
                }
                match f.end {
                    End::Head => FlagLabel { end: End::Tail, ..f },
                    End::Tail => {
                        let d = degrees[f.edge];
                        FlagLabel { index: (f.index + d - 2) % d + 1, end: End::Head, ..f }
                    }
                }
            })
            .collect();
        Labels::new(l.names().to_vec(), flags)
    });
    Ok(FlagStructure::assemble(fs.alpha().to_vec(), beta, gamma, fs.isolated(), labels))
}

fn degrees(fs: &FlagStructure) -> Vec<usize> {
    let mut d = vec![0; fs.edge_count()];
    for x in 0..fs.flag_count() {
        d[fs.edge_of(x)] += 1;
    }
    d.iter_mut().for_each(|x| *x /= 2);
    d
}

/// `H^{E(H)}`, the classical dual.
pub fn full_dual(fs: &FlagStructure) -> FlagStructure {
    partial_dual(fs, &fs.all_edges()).expect("full edge set is valid")
}

/// Partial dual computed literally on the drawing: the arrows of each
/// hyperedge in `subset` are erased and replaced by arrows from the head of
/// `e_i` to the tail of `e_{i+1}`; the new closed curves are then traced by
/// alternately following an arrow and a free arc of the old curves.
pub fn retrace_partial_dual<S: AsRef<str>>(ap: &ArrowPresentation, subset: &[S]) -> Result<ArrowPresentation> {
    let edges: BTreeSet<&str> = ap.edges().into_iter().collect();
    let chosen: BTreeSet<&str> = subset.iter().map(AsRef::as_ref).collect();
    if let Some(bad) = chosen.iter().find(|e| !edges.contains(*e)) {
        return Err(Error::UnknownEdge(String::from(*bad)));
    }

    // a point is an arrow endpoint on the old drawing: (arrow number, end)
    type Point = (usize, End);
    let occs: Vec<&Occurrence> = ap.curves().iter().flatten().collect();
    let arrow_at: BTreeMap<(&str, usize), usize> =
        occs.iter().enumerate().map(|(k, o)| ((o.edge.as_str(), o.index), k)).collect();

    // free arcs of the old curves, which survive unchanged
    let mut arc: BTreeMap<Point, Point> = BTreeMap::new();
    let mut k = 0;
    for curve in ap.curves() {
        let ends = |j: usize| -> (Point, Point) {
            let a = k + j;
            match curve[j].sign {
                Sign::Plus => ((a, End::Tail), (a, End::Head)),
                Sign::Minus => ((a, End::Head), (a, End::Tail)),
            }
        };
        for j in 0..curve.len() {
            let from = ends(j).1;
            let to = ends((j + 1) % curve.len()).0;
            arc.insert(from, to);
            arc.insert(to, from);
        }
        k += curve.len();
    }

    // arrows of the new drawing: point -> (other point, label, starts here)
    let mut arrow: BTreeMap<Point, (Point, (&str, usize), bool)> = BTreeMap::new();
    for (a, o) in occs.iter().enumerate() {
        let label = (o.edge.as_str(), o.index);
        if chosen.contains(o.edge.as_str()) {
            let d = ap.degree(&o.edge);
            let next = arrow_at[&(o.edge.as_str(), o.index % d + 1)];
            let (from, to) = ((a, End::Head), (next, End::Tail));
            arrow.insert(from, (to, label, true));
            arrow.insert(to, (from, label, false));
        } else {
            let (from, to) = ((a, End::Tail), (a, End::Head));
            arrow.insert(from, (to, label, true));
            arrow.insert(to, (from, label, false));
        }
    }

    let mut seen: BTreeSet<Point> = BTreeSet::new();
    let mut curves = Vec::new();
    for a in 0..occs.len() {
        for start in [(a, End::Tail), (a, End::Head)] {
            if seen.contains(&start) {
                continue;
            }
            let mut curve = Vec::new();
            let mut p = start;
            loop {
                let (q, (edge, index), forward) = arrow[&p];
                let sign = if forward { Sign::Plus } else { Sign::Minus };
                curve.push(Occurrence::new(edge, index, sign));
                seen.insert(p);
                seen.insert(q);
                p = arc[&q];
                if p == start {
                    break;
                }
            }
            curves.push(curve);
        }
    }
    curves.extend(ap.curves().iter().filter(|c| c.is_empty()).cloned());
    ArrowPresentation::new(ap.name().map(String::from), curves)
}

/// `chi(A) + chi(A^c) - 2 v(H)`.
pub fn predicted_chi(fs: &FlagStructure, subset: &EdgeSet) -> Result<i64> {
    let a = count_summary(&fs.restrict(subset)?);
    let ac = count_summary(&fs.restrict(&subset.complement(fs.edge_count()))?);
    let h = count_summary(fs);
    Ok(a.chi + ac.chi - 2 * h.v as i64)
}

/// `eps(A) + eps(A^c) + 2 (k(H) - k(A) - k(A^c)) + 2 v(H)`.
pub fn predicted_epsilon(fs: &FlagStructure, subset: &EdgeSet) -> Result<i64> {
    let a = count_summary(&fs.restrict(subset)?);
    let ac = count_summary(&fs.restrict(&subset.complement(fs.edge_count()))?);
    let h = count_summary(fs);
    Ok(a.epsilon + ac.epsilon + 2 * (h.k as i64 - a.k as i64 - ac.k as i64) + 2 * h.v as i64)
}

/// Observed versus predicted characteristic and genus of one partial dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub subset: EdgeSet,
    pub chi_actual: i64,
    pub chi_predicted: i64,
    pub epsilon_actual: i64,
    pub epsilon_predicted: i64,
    /// `|eps(H) - eps(H^A)| <= sum over e in A of 2 (d(e) - 1)`; for a single
    /// hyperedge this is the genus-jump bound.
    pub jump_bound_ok: bool,
    pub jump: i64,
    pub jump_bound: i64,
}

impl DualityReport {
    pub fn formulas_hold(&self) -> bool {
        self.chi_actual == self.chi_predicted && self.epsilon_actual == self.epsilon_predicted
    }
}

pub fn duality_report(fs: &FlagStructure, subset: &EdgeSet) -> Result<DualityReport> {
    let dual = count_summary(&partial_dual(fs, subset)?);
    let base = count_summary(fs);
    let degrees = degrees(fs);
    let jump = (base.epsilon - dual.epsilon).abs();
    let jump_bound: i64 = subset.iter().map(|e| 2 * (degrees[e] as i64 - 1)).sum();
    Ok(DualityReport {
        subset: subset.clone(),
        chi_actual: dual.chi,
        chi_predicted: predicted_chi(fs, subset)?,
        epsilon_actual: dual.epsilon,
        epsilon_predicted: predicted_epsilon(fs, subset)?,
        jump_bound_ok: jump <= jump_bound,
        jump,
        jump_bound,
    })
}

/// Duality report for the single hyperedge `edge`.
pub fn genus_jump_check(fs: &FlagStructure, edge: usize) -> Result<DualityReport> {
    if edge >= fs.edge_count() {
        return Err(Error::UnknownEdgeIndex(edge));
    }
    duality_report(fs, &[edge].into_iter().collect())
}
