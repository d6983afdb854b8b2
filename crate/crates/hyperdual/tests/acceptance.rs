//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All comparisons are exact.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hyperdual::hmap::parse;
use hyperdual_core::census::{enumerate_hypermaps, CensusOptions};
use hyperdual_core::structure::{find_alternation, is_prime};
use hyperdual_core::verify::{Failure, Suite, Verifier};
use hyperdual_core::{
    canonical_form, classify, count_summary, flags_from_arrows, partial_dual, poly_direct, poly_subset_formula,
    retrace_partial_dual, EdgeSet, FlagStructure, GenusPolynomial,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(failures: &[Failure], detail: String) -> Outcome {
    match failures.first() {
        None => Outcome { ok: true, detail },
        Some(f) => Outcome {
            ok: false,
            detail: format!(
                "{} failures; first: {} at {}: expected {}, got {}",
                failures.len(),
                f.check,
                f.witness,
                f.expected,
                f.actual
            ),
        },
    }
}

fn census(opts: CensusOptions) -> Vec<FlagStructure> {
    enumerate_hypermaps(&opts).expect("census")
}

fn connected(max_flags: usize) -> Vec<FlagStructure> {
    census(CensusOptions::connected(max_flags))
}

fn everything(max_flags: usize) -> Vec<FlagStructure> {
    census(CensusOptions { connected_only: false, ..CensusOptions::connected(max_flags) })
}

fn run_suite(instances: &[FlagStructure], suites: &[Suite], what: &str) -> Outcome {
    let report = Verifier::default().verify(instances, suites, what);
    outcome(&report.failures, format!("{} instances", report.instances))
}

fn reference_bouquet() -> Outcome {
    let ap = parse("vertex: a.1+ b.1+ c.1+ a.2+ b.2+ c.2+ a.3+ b.3+ c.3+").unwrap();
    let fs = flags_from_arrows(&ap);
    let c = count_summary(&fs);
    let direct = poly_direct(&fs).unwrap();
    let formula = poly_subset_formula(&fs).unwrap();

    // Polynomial rebuilt from curve retracing alone.
    let mut retraced = GenusPolynomial::new();
    let names = ap.edges();
    for mask in 0u32..1 << names.len() {
        let subset: Vec<&str> = (0..names.len()).filter(|i| mask >> i & 1 == 1).map(|i| names[i]).collect();
        let dual = flags_from_arrows(&retrace_partial_dual(&ap, &subset).unwrap());
        retraced.add_term(count_summary(&dual).epsilon as usize, 1);
    }

    let expected = "6*z^4 + 2*z^6";
    let ok = [&direct, &formula, &retraced].iter().all(|p| p.to_string() == expected)
        && c.d == 9
        && c.e == 3
        && formula.degree() == Some(c.d - c.e);
    Outcome {
        ok,
        detail: format!("direct {direct}, formula {formula}, retrace {retraced}, d={} e={}", c.d, c.e),
    }
}

fn tightness() -> Outcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for i in 2..=4usize {
        let curve: Vec<String> = (1..=i).flat_map(|j| [format!("e.{j}+"), format!("f.{j}+")]).collect();
        let fs = flags_from_arrows(&parse(&format!("vertex: {}", curve.join(" "))).unwrap());
        let e = fs.edge_index("e").unwrap();
        let single: EdgeSet = [e].into_iter().collect();
        let eps = count_summary(&fs).epsilon;
        let eps_dual = count_summary(&partial_dual(&fs, &single).unwrap()).epsilon;
        let bound = 2 * (fs.degree(e) as i64 - 1);
        ok &= eps == 2 * i as i64 - 2 && eps_dual == 0 && (eps - eps_dual).abs() == bound;
        rows.push(format!("i={i}: eps={eps} eps(H^e)={eps_dual} bound={bound}"));
    }
    Outcome { ok, detail: rows.join("; ") }
}

fn multiplicativity() -> Outcome {
    let pool = connected(6);
    let verifier = Verifier::default();
    let mut failures = Vec::new();
    let mut pairs = 0;
    for h1 in &pool {
        for h2 in &pool {
            failures.extend(verifier.check_multiplicativity(h1, h2));
            pairs += 1;
        }
    }
    outcome(&failures, format!("{pairs} ordered pairs from {} instances", pool.len()))
        .and(pairs >= 100, "fewer than 100 pairs")
}

fn prime_criterion(instances: &[FlagStructure]) -> Outcome {
    let primes = instances.iter().filter(|fs| is_prime(fs).unwrap_or(false)).count();
    let constant = instances
        .iter()
        .filter(|fs| is_prime(fs).unwrap_or(false) && poly_subset_formula(fs).unwrap().is_constant())
        .count();
    run_suite(instances, &[Suite::PrimeConstant], "prime-constant").with_note(format!(
        "{primes} prime, {constant} with constant polynomial"
    ))
}

fn bouquet_criterion() -> Outcome {
    let bouquets = census(CensusOptions { bouquets_only: true, ..CensusOptions::connected(10) });
    let nonzero = bouquets
        .iter()
        .filter(|fs| poly_subset_formula(fs).unwrap().constant_term() != 0)
        .count();
    run_suite(&bouquets, &[Suite::BouquetConstantTerm], "bouquet-constant-term")
        .with_note(format!("{nonzero} with nonzero constant term"))
}

fn hypertree_laws(instances: &[FlagStructure]) -> Outcome {
    let trees = instances.iter().filter(|fs| classify(fs).is_hypertree).count();
    let plane = instances.iter().filter(|fs| classify(fs).is_plane && classify(fs).is_bouquet).count();
    run_suite(instances, &[Suite::HypertreeDuality], "hypertree-duality")
        .with_note(format!("{plane} plane bouquets, {trees} hypertrees"))
}

fn alternation(instances: &[FlagStructure]) -> Outcome {
    let hits = instances.iter().filter(|fs| find_alternation(fs).is_some()).count();
    run_suite(instances, &[Suite::AlternationLemma], "alternation-lemma")
        .with_note(format!("{hits} with an alternating quadruple"))
}

fn engines(instances: &[FlagStructure]) -> Outcome {
    // The suite compares the engines and the retrace path; confirm the
    // swap engine is what the suite exercised.
    let sample = &instances[instances.len() / 2];
    let a = sample.all_edges();
    let same = canonical_form(&partial_dual(sample, &a).unwrap()) == canonical_form(&hyperdual_core::full_dual(sample));
    run_suite(instances, &[Suite::EngineAgreement], "engine-agreement").and(same, "full dual mismatch")
}

impl Outcome {
    fn with_note(mut self, note: String) -> Self {
        if self.ok {
            self.detail = format!("{}, {note}", self.detail);
        }
        self
    }

    fn and(mut self, cond: bool, why: &str) -> Self {
        if self.ok && !cond {
            self.ok = false;
            self.detail = format!("{}: {why}", self.detail);
        }
        self
    }
}

fn main() -> ExitCode {
    let census8 = everything(8);
    let connected8 = connected(8);
    type Check<'a> = (&'static str, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);
    let checks: Vec<Check> = vec![
        ("three-edge bouquet polynomial", Some(Duration::from_secs(1)), Box::new(reference_bouquet)),
        ("tightness family i = 2, 3, 4", Some(Duration::from_secs(1)), Box::new(tightness)),
        (
            "duality formulas over the <= 8-flag census",
            Some(Duration::from_secs(120)),
            Box::new(|| run_suite(&connected8, &[Suite::DualityFormulas], "duality-formulas")),
        ),
        ("engine and retrace agreement over the <= 8-flag census", None, Box::new(|| engines(&connected8))),
        (
            "polynomial laws over the <= 8-flag census",
            None,
            Box::new(|| run_suite(&census8, &[Suite::PolynomialLaws], "polynomial-laws")),
        ),
        (
            "bouquet constant-term criterion over <= 10-flag bouquets",
            Some(Duration::from_secs(600)),
            Box::new(bouquet_criterion),
        ),
        ("prime constant-polynomial criterion", None, Box::new(|| prime_criterion(&connected8))),
        ("multiplicativity over <= 6-flag pairs", None, Box::new(multiplicativity)),
        ("hypertree laws", None, Box::new(|| hypertree_laws(&census8))),
        ("alternating quadruple implies positive genus", None, Box::new(|| alternation(&census8))),
    ];

    let mut failed = 0;
    for (i, (name, limit, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            result = result.and(elapsed < *limit, &format!("exceeded {limit:?}"));
        }
        if !result.ok {
            failed += 1;
        }
        println!(
            "{} [{}] {name}: {} ({:.3}s)",
            if result.ok { "PASS" } else { "FAIL" },
            i + 1,
            result.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
