//! Executable property suites: each stated identity or equivalence is
//! checked on one hypermap at a time, over every relevant subset.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use crate::arrows::ArrowPresentation;
use crate::canon::canonical_form;
use crate::counts::{classify, count_summary};
use crate::duality::{partial_dual, retrace_partial_dual};
use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::flags::{arrows_from_flags, flags_from_arrows, FlagStructure};
use crate::polynomial::{
    disjoint_union, gray, one_vertex_join, poly_subset_formula, subset_count, vertex_gaps, Gap,
    GenusPolynomial,
};
use crate::structure::{
    constant_term_criterion, find_alternation, is_prime, ribbon_expansion,
};
use crate::{Occurrence, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    DualityFormulas,
    GenusJump,
    EngineAgreement,
    PolynomialLaws,
    BouquetConstantTerm,
    PrimeConstant,
    HypertreeDuality,
    AlternationLemma,
    RibbonExpansion,
    Multiplicativity,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::DualityFormulas,
        Suite::GenusJump,
        Suite::EngineAgreement,
        Suite::PolynomialLaws,
        Suite::BouquetConstantTerm,
        Suite::PrimeConstant,
        Suite::HypertreeDuality,
        Suite::AlternationLemma,
        Suite::RibbonExpansion,
        Suite::Multiplicativity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DualityFormulas => "duality-formulas",
            Suite::GenusJump => "genus-jump",
            Suite::EngineAgreement => "engine-agreement",
            Suite::PolynomialLaws => "polynomial-laws",
            Suite::BouquetConstantTerm => "bouquet-constant-term",
            Suite::PrimeConstant => "prime-constant",
            Suite::HypertreeDuality => "hypertree-duality",
            Suite::AlternationLemma => "alternation-lemma",
            Suite::RibbonExpansion => "ribbon-expansion",
            Suite::Multiplicativity => "multiplicativity",
        }
    }

    /// Whether the suite has anything to check on `fs`.
    pub fn applies(self, fs: &FlagStructure) -> bool {
        let c = count_summary(fs);
        match self {
            Suite::BouquetConstantTerm => c.v == 1,
            Suite::PrimeConstant => c.k == 1 && is_prime(fs).unwrap_or(false),
            Suite::HypertreeDuality => c.k == 1,
            Suite::AlternationLemma => find_alternation(fs).is_some(),
            Suite::GenusJump => c.e > 0,
            _ => true,
        }
    }

    /// A suite name, or `all`.
    pub fn parse_selection(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Ok(alloc::vec![name.parse()?])
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Failure {
    pub suite: &'static str,
    pub check: &'static str,
    pub canonical_form: Vec<u8>,
    /// Subset, hyperedge, gap or quadruple at which the check failed.
    pub witness: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The partial-dual construction under test.
pub type DualEngine = fn(&FlagStructure, &EdgeSet) -> Result<FlagStructure>;

/// Runs suites against a partial-dual engine (normally [`partial_dual`];
/// tests swap in deliberately broken ones).
#[derive(Debug, Clone, Copy)]
pub struct Verifier {
    dual: DualEngine,
}

impl Default for Verifier {
    fn default() -> Self {
        Self { dual: partial_dual }
    }
}

struct Sink<'a> {
    suite: &'static str,
    canon: &'a [u8],
    failures: Vec<Failure>,
}

impl Sink<'_> {
    fn check<T: PartialEq + core::fmt::Debug>(&mut self, check: &'static str, witness: impl FnOnce() -> String, expected: T, actual: T) {
        if expected != actual {
            self.failures.push(Failure {
                suite: self.suite,
                check,
                canonical_form: self.canon.to_vec(),
                witness: witness(),
                expected: format!("{expected:?}"),
                actual: format!("{actual:?}"),
            });
        }
    }

    fn error(&mut self, check: &'static str, witness: String, err: Error) {
        self.failures.push(Failure {
            suite: self.suite,
            check,
            canonical_form: self.canon.to_vec(),
            witness,
            expected: "Ok".to_string(),
            actual: err.to_string(),
        });
    }
}

fn subset_names(fs: &FlagStructure, set: &EdgeSet) -> String {
    let names: Vec<String> = set.iter().map(|e| fs.edge_name(e)).collect();
    format!("{{{}}}", names.join(","))
}

fn subsets(fs: &FlagStructure) -> Result<impl Iterator<Item = EdgeSet>> {
    Ok((0..subset_count(fs)?).map(|i| EdgeSet::from_mask(gray(i))))
}

impl Verifier {
    pub fn with_dual(dual: DualEngine) -> Self {
        Self { dual }
    }

    /// Direct engine over this verifier's dual construction.
    fn poly_direct(&self, fs: &FlagStructure) -> Result<GenusPolynomial> {
        let mut p = GenusPolynomial::new();
        for a in subsets(fs)? {
            let eps = count_summary(&(self.dual)(fs, &a)?).epsilon;
            p.add_term(usize::try_from(eps).unwrap_or(usize::MAX), 1);
        }
        Ok(p)
    }

    pub fn check(&self, suite: Suite, fs: &FlagStructure) -> Vec<Failure> {
        let canon = canonical_form(fs);
        let mut sink = Sink { suite: suite.name(), canon: &canon, failures: Vec::new() };
        if let Err(err) = self.run(suite, fs, &mut sink) {
            sink.error("evaluation", String::new(), err);
        }
        sink.failures
    }

    pub fn check_all(&self, suites: &[Suite], fs: &FlagStructure) -> Vec<Failure> {
        suites.iter().flat_map(|&s| self.check(s, fs)).collect()
    }

    /// Sequential run over `instances`; failures are reported in instance
    /// order, then suite order.
    pub fn verify(&self, instances: &[FlagStructure], suites: &[Suite], name: &str) -> VerificationReport {
        VerificationReport {
            suite: name.to_string(),
            instances: instances.len(),
            failures: instances.iter().flat_map(|fs| self.check_all(suites, fs)).collect(),
        }
    }

    fn run(&self, suite: Suite, fs: &FlagStructure, sink: &mut Sink<'_>) -> Result<()> {
        match suite {
            Suite::DualityFormulas => self.duality_formulas(fs, sink),
            Suite::GenusJump => self.genus_jump(fs, sink),
            Suite::EngineAgreement => self.engine_agreement(fs, sink),
            Suite::PolynomialLaws => self.polynomial_laws(fs, sink),
            Suite::BouquetConstantTerm => bouquet_constant_term(fs, sink),
            Suite::PrimeConstant => prime_constant(fs, sink),
            Suite::HypertreeDuality => self.hypertree_duality(fs, sink),
            Suite::AlternationLemma => alternation_lemma(fs, sink),
            Suite::RibbonExpansion => ribbon_identities(fs, sink),
            Suite::Multiplicativity => {
                for partner in partners() {
                    self.multiplicativity_into(fs, &partner, sink)?;
                }
                Ok(())
            }
        }
    }

    fn duality_formulas(&self, fs: &FlagStructure, sink: &mut Sink<'_>) -> Result<()> {
        let h = count_summary(fs);
        let canon = canonical_form(fs);
        for a in subsets(fs)? {
            let w = || subset_names(fs, &a);
            let dual = (self.dual)(fs, &a)?;
            let hd = count_summary(&dual);
            let ca = count_summary(&fs.restrict(&a)?);
            let cc = count_summary(&fs.restrict(&a.complement(fs.edge_count()))?);
            let v = h.v as i64;
            sink.check("chi(H^A) = chi(A) + chi(A^c) - 2v(H)", w, ca.chi + cc.chi - 2 * v, hd.chi);
            sink.check(
                "eps(H^A) = eps(A) + eps(A^c) + 2(k(H) - k(A) - k(A^c)) + 2v(H)",
                w,
                ca.epsilon + cc.epsilon + 2 * (h.k as i64 - ca.k as i64 - cc.k as i64) + 2 * v,
                hd.epsilon,
            );
            if h.v == 1 {
                sink.check("bouquet: eps(H^A) = eps(A) + eps(A^c)", w, ca.epsilon + cc.epsilon, hd.epsilon);
            }
            sink.check("e(H^A) = e(H)", w, h.e, hd.e);
            sink.check("d(H^A) = d(H)", w, h.d, hd.d);
            sink.check("k(H^A) = k(H)", w, h.k, hd.k);
            sink.check("v(H^A) = f(A)", w, ca.f, hd.v);
            sink.check("f(H^A) = f(A^c)", w, cc.f, hd.f);
            sink.check("orientability preserved", w, h.orientable, hd.orientable);
            let back = (self.dual)(&dual, &a)?;
            sink.check("(H^A)^A = H", w, &canon, &canonical_form(&back));
        }
        Ok(())
    }

    fn genus_jump(&self, fs: &FlagStructure, sink: &mut Sink<'_>) -> Result<()> {
        let eps = count_summary(fs).epsilon;
        for e in 0..fs.edge_count() {
            let single: EdgeSet = [e].into_iter().collect();
            let jump = (eps - count_summary(&(self.dual)(fs, &single)?).epsilon).abs();
            let bound = 2 * (fs.degree(e) as i64 - 1);
            sink.check("|eps(H) - eps(H^e)| <= 2(d(e) - 1)", || fs.edge_name(e), true, jump <= bound);
        }
        Ok(())
    }

    fn engine_agreement(&self, fs: &FlagStructure, sink: &mut Sink<'_>) -> Result<()> {
        let formula = poly_subset_formula(fs)?;
        let direct = self.poly_direct(fs)?;
        sink.check("poly_direct = poly_subset_formula", String::new, formula.to_string(), direct.to_string());

        let fs = fs.labeled();
        let canon = canonical_form(&fs);
        let ap = arrows_from_flags(&fs)?;
        sink.check("arrows/flags round trip", String::new, &canon, &canonical_form(&flags_from_arrows(&ap)));
        for a in subsets(&fs)? {
            let names: Vec<String> = a.iter().map(|e| fs.edge_name(e)).collect();
            let literal = flags_from_arrows(&retrace_partial_dual(&ap, &names)?);
            let swapped = (self.dual)(&fs, &a)?;
            sink.check(
                "retrace_partial_dual = partial_dual",
                || subset_names(&fs, &a),
                canonical_form(&literal),
                canonical_form(&swapped),
            );
        }
        Ok(())
    }

    fn polynomial_laws(&self, fs: &FlagStructure, sink: &mut Sink<'_>) -> Result<()> {
        let p = poly_subset_formula(fs)?;
        let c = count_summary(fs);
        sink.check("poly(1) = 2^e", String::new, 1u64 << c.e, p.total());
        sink.check("deg poly <= d - e", || p.to_string(), true, p.degree().unwrap_or(0) <= c.d - c.e);
        sink.check("coefficients positive", || p.to_string(), true, p.terms().all(|(_, k)| k > 0));
        for a in subsets(fs)? {
            let q = poly_subset_formula(&(self.dual)(fs, &a)?)?;
            sink.check("poly(H^A) = poly(H)", || subset_names(fs, &a), p.to_string(), q.to_string());
        }
        Ok(())
    }

    fn hypertree_duality(&self, fs: &FlagStructure, sink: &mut Sink<'_>) -> Result<()> {
        let c = count_summary(fs);
        if c.k != 1 {
            return Ok(());
        }
        let cl = classify(fs);
        let lhs = cl.is_plane && cl.is_bouquet;
        let rhs = classify(&(self.dual)(fs, &fs.all_edges())?).is_hypertree;
        sink.check("plane bouquet <=> dual is hypertree", String::new, lhs, rhs);
        let p = poly_subset_formula(fs)?;
        let trivial = GenusPolynomial::constant(1 << c.e);
        if lhs {
            sink.check("plane bouquet: poly = 2^e", String::new, trivial.to_string(), p.to_string());
        }
        if cl.is_hypertree {
            sink.check("hypertree: poly = 2^e", String::new, trivial.to_string(), p.to_string());
        }
        Ok(())
    }

    /// `poly(H1 u H2) = poly(H1 v H2) = poly(H1) poly(H2)` over every gap
    /// and flip at the hypervertices through flag 0 of each operand.
    pub fn check_multiplicativity(&self, h1: &FlagStructure, h2: &FlagStructure) -> Vec<Failure> {
        let canon = canonical_form(h1);
        let mut sink = Sink { suite: Suite::Multiplicativity.name(), canon: &canon, failures: Vec::new() };
        if let Err(err) = self.multiplicativity_into(h1, h2, &mut sink) {
            sink.error("evaluation", String::new(), err);
        }
        sink.failures
    }

    fn multiplicativity_into(&self, h1: &FlagStructure, h2: &FlagStructure, sink: &mut Sink<'_>) -> Result<()> {
        let product = poly_subset_formula(h1)?
            .checked_mul(&poly_subset_formula(h2)?)
            .ok_or(Error::TooManyEdges { edges: h1.edge_count() + h2.edge_count(), limit: 62 })?;
        let union = self.poly_direct(&disjoint_union(h1, h2))?;
        let partner = || hex(&canonical_form(h2));
        sink.check("poly(H1 u H2) = poly(H1) poly(H2)", partner, product.to_string(), union.to_string());
        let gaps = |fs: &FlagStructure| {
            if fs.flag_count() == 0 {
                alloc::vec![Gap::Isolated]
            } else {
                vertex_gaps(fs, 0)
            }
        };
        for g1 in gaps(h1) {
            for g2 in gaps(h2) {
                for flip in [false, true] {
                    let joined = one_vertex_join(h1, g1, h2, g2, flip)?;
                    let p = self.poly_direct(&joined)?;
                    sink.check(
                        "poly(H1 v H2) = poly(H1) poly(H2)",
                        || format!("{} at {g1:?}/{g2:?} flip={flip}", partner()),
                        product.to_string(),
                        p.to_string(),
                    );
                }
            }
        }
        Ok(())
    }
}

fn bouquet_constant_term(fs: &FlagStructure, sink: &mut Sink<'_>) -> Result<()> {
    if count_summary(fs).v != 1 {
        return Ok(());
    }
    let p = poly_subset_formula(fs)?;
    sink.check(
        "constant term != 0 <=> I(B) bipartite and all eps(e) = 0",
        || p.to_string(),
        p.constant_term() != 0,
        constant_term_criterion(fs)?,
    );
    Ok(())
}

fn prime_constant(fs: &FlagStructure, sink: &mut Sink<'_>) -> Result<()> {
    if count_summary(fs).k != 1 || !is_prime(fs)? {
        return Ok(());
    }
    let p = poly_subset_formula(fs)?;
    let cl = classify(fs);
    sink.check(
        "prime: poly constant <=> plane and e = 1",
        || p.to_string(),
        cl.is_plane && fs.edge_count() == 1,
        p.is_constant(),
    );
    if p.is_constant() {
        sink.check("prime: constant poly = 2", || p.to_string(), 2, p.constant_term());
    }
    Ok(())
}

fn alternation_lemma(fs: &FlagStructure, sink: &mut Sink<'_>) -> Result<()> {
    if let Some(w) = find_alternation(fs) {
        let eps = count_summary(fs).epsilon;
        let witness = || {
            let arrows: Vec<String> = w.flags.iter().map(|&x| fs.describe_flag(x)).collect();
            format!("vertex {} ({})", w.vertex, arrows.join(", "))
        };
        sink.check("alternating quadruple => eps > 0", witness, true, eps > 0);
    }
    Ok(())
}

fn ribbon_identities(fs: &FlagStructure, sink: &mut Sink<'_>) -> Result<()> {
    let c = count_summary(fs);
    let re = ribbon_expansion(fs);
    let r = count_summary(re.ribbon_graph());
    sink.check("v(R(H)) = v(H) + e(H)", String::new, c.v + c.e, re.node_count());
    sink.check("e(R(H)) = d(H)", String::new, c.d, re.edge_count());
    sink.check("k(R(H)) = k(H)", String::new, c.k, re.component_count());
    sink.check("ribbon graph vertices", String::new, c.v + c.e, r.v);
    sink.check("f(R(H)) = f(H)", String::new, c.f, r.f);
    sink.check("eps(R(H)) = eps(H)", String::new, c.epsilon, r.epsilon);
    sink.check("R(H) has degree-2 edges only", String::new, c.d, r.e);
    Ok(())
}

/// Small fixed partners for the per-instance multiplicativity suite.
fn partners() -> Vec<FlagStructure> {
    let curve = |occs: &[(&str, usize, Sign)]| -> FlagStructure {
        let curve = occs.iter().map(|&(e, i, s)| Occurrence::new(e, i, s)).collect();
        flags_from_arrows(&ArrowPresentation::new(None, alloc::vec![curve]).expect("valid partner"))
    };
    use Sign::{Minus, Plus};
    alloc::vec![
        curve(&[("p", 1, Plus)]),
        curve(&[("p", 1, Plus), ("p", 2, Plus)]),
        curve(&[("p", 1, Plus), ("p", 2, Minus)]),
        curve(&[("p", 1, Plus), ("q", 1, Plus), ("p", 2, Plus), ("q", 2, Plus)]),
    ]
}

/// Lowercase hex of a canonical form.
pub fn hex(bytes: &[u8]) -> String {
    use core::fmt::Write;
    let mut s = String::with_capacity(2 * bytes.len());
    for b in bytes {
        let _ = write!(s, "{b:02x}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{enumerate_hypermaps, CensusOptions};
    use crate::test_util::flags;

    /// Swaps only `beta` onto the `gamma` pairs, leaving `gamma` alone.
    fn beta_only(fs: &FlagStructure, a: &EdgeSet) -> Result<FlagStructure> {
        let mut beta = fs.beta().to_vec();
        for x in 0..fs.flag_count() {
            if a.contains(fs.edge_of(x)) {
                beta[x] = fs.gamma()[x];
            }
        }
        FlagStructure::from_matchings(fs.alpha().to_vec(), beta, fs.gamma().to_vec(), fs.isolated())
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(Suite::parse_selection("all").unwrap().len(), 10);
        assert_eq!("nope".parse::<Suite>(), Err(Error::UnknownSuite("nope".into())));
    }

    #[test]
    fn small_census_passes_everything() {
        let census = enumerate_hypermaps(&CensusOptions::connected(6)).unwrap();
        let report = Verifier::default().verify(&census, &Suite::ALL, "all");
        assert_eq!(report.instances, census.len());
        assert!(report.passed(), "{:?}", report.failures.first());
    }

    #[test]
    fn mutation_is_caught() {
        let census = enumerate_hypermaps(&CensusOptions::connected(6)).unwrap();
        let report = Verifier::with_dual(beta_only).verify(&census, &[Suite::DualityFormulas], "duality-formulas");
        assert!(!report.failures.is_empty());
        let fs = flags(&["a.1+ b.1+ a.2+ b.2+"]);
        assert!(!Verifier::with_dual(beta_only).check(Suite::EngineAgreement, &fs).is_empty());
    }

    #[test]
    fn hex_encoding() {
        assert_eq!(hex(&[0, 15, 255]), "000fff");
    }
}
