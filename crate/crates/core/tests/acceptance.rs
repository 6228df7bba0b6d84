//! Acceptance suite: one PASS/FAIL line per criterion, exact equality throughout.
//! Runs without the libtest harness so the summary is always printed.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use virtual_k::verify::{perturbed_euler_table, Check, Report, Suite, Verifier, VerifyOptions};
use virtual_k::virtual_ring::VirtualRing;

struct Outcome {
    ok: bool,
    detail: String,
}

fn summarize<'a>(checks: impl IntoIterator<Item = &'a Check>) -> Outcome {
    let mut total = 0;
    let mut first_failure = None;
    let mut failed = 0;
    for c in checks {
        total += 1;
        if !c.passed() {
            failed += 1;
            first_failure.get_or_insert_with(|| format!("{}: {} != {}", c.id, c.lhs, c.rhs));
        }
    }
    match first_failure {
        _ if total == 0 => Outcome { ok: false, detail: "no checks ran".into() },
        None => Outcome { ok: true, detail: format!("{total} checks") },
        Some(f) => Outcome { ok: false, detail: format!("{failed}/{total} failed, first: {f}") },
    }
}

/// Sector index of a localized basis label `e[m,l]`; `xe[0,0]` is sector 0.
fn sector_of(label: &str) -> u32 {
    label
        .strip_prefix("e[")
        .and_then(|rest| rest.split(',').next())
        .map_or(0, |m| m.parse().expect("sector index"))
}

/// Labels inside the last bracket of ids like `product[e[1,1]*e[1,2]]`.
fn factors(id: &str) -> Vec<String> {
    let open = id.find("[e[").or_else(|| id.find("[xe[")).expect("factor list");
    id[open + 1..id.len() - 1].split('*').map(str::to_string).collect()
}

fn main() -> ExitCode {
    let start = Instant::now();
    let opts = VerifyOptions::default();
    let mut reports: BTreeMap<(Suite, u32), Report> = BTreeMap::new();
    let plan: [(Suite, std::ops::RangeInclusive<u32>); 7] = [
        (Suite::ProductOracle, 2..=8),
        (Suite::AdamsOracle, 2..=8),
        (Suite::PsiRing, 2..=5),
        (Suite::LineElements, 2..=8),
        (Suite::Span, 2..=8),
        (Suite::Presentation, 2..=6),
        (Suite::Resolution, 2..=8),
    ];
    for n in 2..=8 {
        let v = Verifier::new(n, &opts).expect("n >= 2");
        for (suite, range) in &plan {
            if range.contains(&n) {
                reports.insert((*suite, n), v.run(*suite, false));
            }
        }
    }
    let in_suite = |suite: Suite, prefixes: &'static [&'static str]| {
        reports
            .iter()
            .filter(move |((s, _), _)| *s == suite)
            .flat_map(move |(_, r)| r.checks.iter().filter(move |c| prefixes.iter().any(|p| c.id.starts_with(p))))
    };

    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push((
        "localization inverse, n = 2..8",
        summarize(in_suite(Suite::ProductOracle, &["gamma-inverse[", "inverse-gamma["])),
    ));
    results.push(("product-table oracle, n = 2..8", summarize(in_suite(Suite::ProductOracle, &["product["]))));
    results.push((
        "Adams oracle, k = 1..2n, n = 2..8",
        summarize(in_suite(Suite::AdamsOracle, &["loc-adams[", "u-adams[", "adams-mul["])),
    ));
    results.push(("psi-ring axioms, n = 2..5", summarize(in_suite(Suite::PsiRing, &[""]))));
    results.push((
        "line-element classification, n = 2..8",
        summarize(in_suite(
            Suite::LineElements,
            &["power-law[", "virtual-power-law[", "classify[", "inverse[", "group-law[", "reject["],
        )),
    ));
    results.push(("span rank and witnesses, n = 2..8", summarize(in_suite(Suite::Span, &[""]))));
    results.push(("presentation, n = 2..6", summarize(in_suite(Suite::Presentation, &[""]))));
    results.push(("resolution isomorphism, n = 2..8", summarize(in_suite(Suite::Resolution, &[""]))));
    let lambda: Vec<&Check> = reports
        .iter()
        .filter(|((s, n), _)| *s == Suite::LineElements && *n <= 5)
        .flat_map(|(_, r)| r.with_prefix("lambda["))
        .filter(|c| !c.id.starts_with("lambda[1]"))
        .collect();
    let mut lambda_outcome = summarize(lambda.iter().copied());
    if lambda.len() != 4 * 20 * 2 {
        lambda_outcome = Outcome { ok: false, detail: format!("expected 160 checks, got {}", lambda.len()) };
    }
    results.push(("rank-1 lambda-positivity, 20 samples, n = 2..5", lambda_outcome));
    results.push(("negative control", negative_control(&opts)));

    let mut all = true;
    for (i, (name, o)) in results.iter().enumerate() {
        all &= o.ok;
        println!("criterion {:>2} {}: {} ({})", i + 1, if o.ok { "PASS" } else { "FAIL" }, name, o.detail);
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

/// With the complementary Euler case replaced, both oracle suites must fail,
/// the round trip `Γ ∘ Γ⁻¹` must still pass, and every failing product must
/// pair sectors `m₁ + m₂ = n`.
fn negative_control(opts: &VerifyOptions) -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 2..=4u32 {
        let ring = VirtualRing::with_euler_table(n, perturbed_euler_table(n)).expect("n >= 2");
        let v = Verifier::with_ring(ring, opts).expect("n >= 2");
        let product = v.run(Suite::ProductOracle, false);
        let adams = v.run(Suite::AdamsOracle, false);
        let bad_products: Vec<&Check> = product.with_prefix("product[").filter(|c| !c.passed()).collect();
        let localized = bad_products.iter().all(|c| {
            let f = factors(&c.id);
            f.len() == 2 && {
                let (a, b) = (sector_of(&f[0]), sector_of(&f[1]));
                a != 0 && b != 0 && a + b == n
            }
        });
        let round_trip_ok = product.with_prefix("gamma-inverse[").all(Check::passed);
        let adams_failed = !adams.passed();
        ok &= !bad_products.is_empty() && localized && round_trip_ok && adams_failed;
        let first_adams = adams.failures().next().map_or("none".to_string(), |c| c.id.clone());
        notes.push(format!(
            "n={n}: {} product failures (first {}), adams first failure {}",
            bad_products.len(),
            bad_products.first().map_or("none", |c| c.id.as_str()),
            first_adams
        ));
    }
    Outcome { ok, detail: notes.join("; ") }
}
