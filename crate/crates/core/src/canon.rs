use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::flags::{orbit_ids, FlagStructure};

/// Relabeling-invariant encoding of a hypermap.
///
/// Each connected component is encoded by trying every start flag, numbering
/// flags in breadth-first order over the generators `alpha, beta, gamma`,
/// and writing the three involutions under that numbering; the component's
/// code is the lexicographically least one. Component codes are sorted and
/// prefixed with the isolated-vertex count. Two structures are isomorphic
/// iff their codes are equal. `O(n^2)` in the flag count.
pub fn canonical_form(fs: &FlagStructure) -> Vec<u8> {
    let n = fs.flag_count();
    let (comps, comp_of) = orbit_ids(n, &[fs.alpha(), fs.beta(), fs.gamma()]);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); comps];
    for x in 0..n {
        members[comp_of[x]].push(x);
    }
    let mut codes: Vec<Vec<u8>> = members.iter().map(|m| component_code(fs, m)).collect();
    codes.sort();

    let mut out = Vec::new();
    push_u32(&mut out, fs.isolated());
    push_u32(&mut out, comps);
    for c in codes {
        out.extend(c);
    }
    out
}

pub fn is_isomorphic(a: &FlagStructure, b: &FlagStructure) -> bool {
    a.flag_count() == b.flag_count() && a.isolated() == b.isolated() && canonical_form(a) == canonical_form(b)
}

fn push_u32(out: &mut Vec<u8>, x: usize) {
    out.extend_from_slice(&(x as u32).to_be_bytes());
}

fn component_code(fs: &FlagStructure, members: &[usize]) -> Vec<u8> {
    let n = fs.flag_count();
    let gens = [fs.alpha(), fs.beta(), fs.gamma()];
    let mut best: Option<Vec<u8>> = None;
    let mut label = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(members.len());
    let mut queue = VecDeque::new();
    for &start in members {
        for &x in &order {
            label[x] = usize::MAX;
        }
        order.clear();
        label[start] = 0;
        order.push(start);
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = g[x];
                if label[y] == usize::MAX {
                    label[y] = order.len();
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
        let mut code = Vec::with_capacity(4 + 12 * order.len());
        push_u32(&mut code, order.len());
        for &x in &order {
            for g in &gens {
                push_u32(&mut code, label[g[x]]);
            }
        }
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    }
    best.unwrap_or_default()
}
