//! Ribbon hypermaps in the flag model.
//!
//! A hypermap is stored as three fixed-point-free involutions on a set of
//! flags (the endpoints of common line segments):
//!
//! * `alpha` joins flags along the free boundary arcs of hypervertices,
//! * `beta` joins flags along the connecting segments of hyperedges,
//! * `gamma` joins the two endpoints of each common line segment.
//!
//! Every count (hypervertices, hyperedges, hyperfaces, components) is then an
//! orbit count, partial duality is a `beta`/`gamma` swap on the flags of the
//! chosen hyperedges, and the partial-dual polynomial is a tally over subsets.
//! Arrow presentations ([`ArrowPresentation`]) are the exchange format.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

mod arrows;
mod canon;
pub mod census;
mod counts;
pub mod duality;
mod edgeset;
mod error;
mod flags;
pub mod polynomial;
pub mod structure;
pub mod verify;

pub use arrows::{ArrowPresentation, Occurrence, Sign};
pub use canon::{canonical_form, is_isomorphic};
pub use counts::{classify, count_summary, Classification, CountSummary};
pub use edgeset::EdgeSet;
pub use error::{Error, Result};
pub use flags::{arrows_from_flags, flags_from_arrows, End, FlagLabel, FlagStructure, Labels};

pub use duality::{full_dual, partial_dual, retrace_partial_dual};
pub use polynomial::{poly_direct, poly_subset_formula, GenusPolynomial};

#[cfg(test)]
pub(crate) mod test_util {
    use alloc::string::String;
    use alloc::vec::Vec;

    use crate::{flags_from_arrows, ArrowPresentation, FlagStructure, Occurrence, Sign};

    /// One curve per string, occurrences written `edge.index±`.
    pub fn hmap(curves: &[&str]) -> ArrowPresentation {
        let curves = curves
            .iter()
            .map(|c| {
                c.split_whitespace()
                    .map(|tok| {
                        let (body, sign) = tok.split_at(tok.len() - 1);
                        let sign = if sign == "+" { Sign::Plus } else { Sign::Minus };
                        let (edge, index) = body.split_once('.').unwrap();
                        Occurrence::new(String::from(edge), index.parse().unwrap(), sign)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        ArrowPresentation::new(None, curves).unwrap()
    }

    pub fn flags(curves: &[&str]) -> FlagStructure {
        flags_from_arrows(&hmap(curves))
    }
}
