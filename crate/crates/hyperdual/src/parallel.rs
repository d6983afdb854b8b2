//! rayon drivers with deterministic merges.

use hyperdual_core::census::{finish, merge_classes, CensusLevel, CensusOptions, ClassMap};
use hyperdual_core::polynomial::{poly_direct_range, poly_subset_formula_range, subset_count};
use hyperdual_core::verify::{Suite, VerificationReport, Verifier};
use hyperdual_core::{FlagStructure, GenusPolynomial, Result};
use rayon::prelude::*;

/// Runs `f` on a pool of `jobs` threads; `0` means rayon's default.
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Same classes and representatives as the sequential enumeration.
pub fn census(opts: &CensusOptions) -> Result<Vec<FlagStructure>> {
    opts.validate()?;
    let mut classes = ClassMap::new();
    for n in (2..=opts.max_flags).step_by(2) {
        let level = CensusLevel::new(n);
        let level_classes = (0..level.alpha_count())
            .into_par_iter()
            .map(|ai| level.classes(ai..ai + 1, opts))
            .reduce(ClassMap::new, |mut a, b| {
                merge_classes(&mut a, b);
                a
            });
        merge_classes(&mut classes, level_classes);
    }
    Ok(finish(classes, opts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Direct,
    Formula,
}

const POLY_CHUNK: u64 = 1 << 10;

pub fn polynomial(fs: &FlagStructure, engine: Engine) -> Result<GenusPolynomial> {
    let total = subset_count(fs)?;
    let chunks: Vec<u64> = (0..total.div_ceil(POLY_CHUNK)).collect();
    chunks
        .into_par_iter()
        .map(|c| {
            let range = c * POLY_CHUNK..((c + 1) * POLY_CHUNK).min(total);
            match engine {
                Engine::Direct => poly_direct_range(fs, range),
                Engine::Formula => poly_subset_formula_range(fs, range),
            }
        })
        .try_reduce(GenusPolynomial::new, |mut a, b| {
            a.merge(&b);
            Ok(a)
        })
}

/// Failures come back in instance order, then suite order.
pub fn verify(verifier: &Verifier, instances: &[FlagStructure], suites: &[Suite], name: &str) -> VerificationReport {
    let failures: Vec<_> = instances.par_iter().map(|fs| verifier.check_all(suites, fs)).collect();
    VerificationReport {
        suite: name.to_string(),
        instances: instances.len(),
        failures: failures.into_iter().flatten().collect(),
    }
}
