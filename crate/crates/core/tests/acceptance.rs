//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs as part of `cargo test`; run it alone with
//! `cargo test -p rptree --test acceptance`.

use std::collections::HashSet;
use std::panic;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rptree::experiments::{
    chi_square_upper_quantile, uniformity_test, verify_choice_counts, verify_indegree, verify_kary,
    verify_main, verify_ordered, verify_reversal, verify_roundtrip, VerifyOptions,
    UNIFORMITY_ALPHA,
};
use rptree::variants::enumerate_plane_forests;
use rptree::{product_formula, rhs_main, RootPolicy, VerificationReport};

const CAYLEY_LIMIT: Duration = Duration::from_secs(30);
const MAIN_N8_LIMIT: Duration = Duration::from_secs(60);
const PRODUCT_LIMIT: Duration = Duration::from_secs(1);
const ROUNDTRIP_LIMIT: Duration = Duration::from_secs(30);
const INDEGREE_LIMIT: Duration = Duration::from_secs(10);
const KARY_LIMIT: Duration = Duration::from_secs(60);
/// Upper 0.001 point of chi-square with 15 degrees of freedom, from the table.
const CHI2_DF15_BOUND: f64 = 37.70;
/// Allowed gap between the table bound and the computed quantile.
const QUANTILE_TOLERANCE: f64 = 0.01;
const UNIFORMITY_SAMPLES: u64 = 160_000;
const UNIFORMITY_SEED: u64 = 1;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!(
            "{what} took {:.2}s, limit {}s",
            elapsed.as_secs_f64(),
            limit.as_secs_f64()
        ),
    )
}

fn equal(report: rptree::Result<VerificationReport>) -> Result<VerificationReport, String> {
    let report = report.map_err(|e| e.to_string())?;
    ensure(
        report.is_equal(),
        format!(
            "{} n={} unequal: lhs={} rhs={}",
            report.identity, report.n, report.lhs, report.rhs
        ),
    )?;
    Ok(report)
}

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

fn cayley_count() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_rptree"))
        .args(["enumerate", "--n", "8"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.status.success(), "enumerate exited with an error")?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let lines = text.lines().count();
    let distinct: HashSet<&str> = text.lines().collect();
    ensure(lines == 262_144, format!("{lines} lines"))?;
    ensure(
        distinct.len() == 262_144,
        format!("{} distinct", distinct.len()),
    )?;
    within(elapsed, CAYLEY_LIMIT, "enumerate --n 8")?;
    Ok(format!(
        "262144 distinct trees in {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn main_identity() -> Outcome {
    let n3 = equal(verify_main(3, &opts()))?;
    let spot = "1 u^2 c^1 + 1 u^3 c^1 + 1 u^3 c^2";
    ensure(n3.lhs == spot, format!("n=3 lhs {}", n3.lhs))?;
    for n in 2..=7 {
        equal(verify_main(n, &opts()))?;
    }
    let start = Instant::now();
    let n8 = equal(verify_main(8, &opts()))?;
    let elapsed = start.elapsed();
    ensure(n8.count == 262_144, format!("n=8 visited {}", n8.count))?;
    within(elapsed, MAIN_N8_LIMIT, "n=8")?;
    Ok(format!(
        "n=2..8 equal, n=8 in {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn product_step() -> Outcome {
    let start = Instant::now();
    for n in 2..=9 {
        let product = product_formula(n).map_err(|e| e.to_string())?;
        let closed = rhs_main(n).map_err(|e| e.to_string())?;
        ensure(product == closed, format!("n={n}: {product} vs {closed}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, PRODUCT_LIMIT, "product formula")?;
    Ok(format!("n=2..9 equal in {:.3}s", elapsed.as_secs_f64()))
}

fn round_trip() -> Outcome {
    let start = Instant::now();
    let mut last = None;
    for n in 1..=7 {
        last = Some(equal(verify_roundtrip(n, RootPolicy::RootOne, &opts()))?);
    }
    let elapsed = start.elapsed();
    // Each code is decoded and each independently enumerated tree encoded.
    let count = last.map_or(0, |r| r.count);
    ensure(count == 2 * 16_807, format!("n=7 checked {count} objects"))?;
    within(elapsed, ROUNDTRIP_LIMIT, "round trip")?;
    Ok(format!(
        "n<=7, 16807 codes at n=7, in {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn choice_counts() -> Outcome {
    for n in 1..=6 {
        equal(verify_choice_counts(n, &opts()))?;
    }
    Ok("every prefix for n<=6 has i leader choices; predicted leaders match".into())
}

fn reversal() -> Outcome {
    for n in 2..=7 {
        equal(verify_reversal(n, &opts()))?;
    }
    Ok("n=2..7, no counterexample".into())
}

fn indegree() -> Outcome {
    let start = Instant::now();
    let mut last = None;
    for n in 2..=6 {
        let report = equal(verify_indegree(n, &opts()))?;
        ensure(
            report.note.is_none(),
            format!("n={n} not coefficientwise: {:?}", report.note),
        )?;
        last = Some(report);
    }
    let elapsed = start.elapsed();
    let count = last.map_or(0, |r| r.count);
    ensure(count == 1296, format!("n=6 visited {count} trees"))?;
    within(elapsed, INDEGREE_LIMIT, "indegree")?;
    Ok(format!(
        "coefficientwise for n=2..6 in {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn kary() -> Outcome {
    let start = Instant::now();
    for (k, max_n) in [(1, 6), (2, 5), (3, 4)] {
        for n in 1..=max_n {
            equal(verify_kary(n, k, &opts()))?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, KARY_LIMIT, "k-ary")?;
    Ok(format!(
        "(1,<=6) (2,<=5) (3,<=4) equal in {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn ordered() -> Outcome {
    let expected = [(2, 4u64), (3, 30), (4, 336), (5, 5040)];
    for (n, count) in expected {
        let enumerated = enumerate_plane_forests(n)
            .map_err(|e| e.to_string())?
            .count() as u64;
        ensure(
            enumerated == count,
            format!("n={n}: enumerator gives {enumerated}"),
        )?;
    }
    for n in 1..=5 {
        let report = equal(verify_ordered(n, &opts()))?;
        if let Some(&(_, count)) = expected.iter().find(|(m, _)| *m == n) {
            ensure(
                report.count == count,
                format!("n={n}: verifier visited {}", report.count),
            )?;
        }
    }
    Ok("forest counts 4 30 336 5040; n=1..5 equal".into())
}

fn uniformity() -> Outcome {
    let quantile = chi_square_upper_quantile(15, UNIFORMITY_ALPHA);
    ensure(
        (quantile - CHI2_DF15_BOUND).abs() < QUANTILE_TOLERANCE,
        format!("df=15 quantile {quantile}"),
    )?;
    let first =
        uniformity_test(4, UNIFORMITY_SAMPLES, UNIFORMITY_SEED).map_err(|e| e.to_string())?;
    let second =
        uniformity_test(4, UNIFORMITY_SAMPLES, UNIFORMITY_SEED).map_err(|e| e.to_string())?;
    ensure(first == second, "same seed gave different samples")?;
    ensure(
        first.trees == 16 && first.df == 15,
        format!("{} trees", first.trees),
    )?;
    ensure(
        first.statistic < CHI2_DF15_BOUND,
        format!("statistic {:.3} >= {CHI2_DF15_BOUND}", first.statistic),
    )?;
    Ok(format!(
        "chi2={:.3} < {CHI2_DF15_BOUND} over 16 trees, deterministic",
        first.statistic
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("cayley-count", cayley_count),
        ("main-identity", main_identity),
        ("product-formula", product_step),
        ("round-trip", round_trip),
        ("choice-counts", choice_counts),
        ("reversal", reversal),
        ("indegree", indegree),
        ("kary", kary),
        ("ordered", ordered),
        ("uniformity", uniformity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let outcome = panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {reason}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
