//! Exhaustive verifiers comparing enumerated tree statistics against their
//! closed forms, plus a chi-square check of the sampler.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::codec::{
    leader_choice_count, predicted_leaders, prufer_decode, reversal_check, rp_decode,
    rp_decode_annotated, rp_encode, PruferCode, RpCode,
};
use crate::enumerate::{CodeSpace, RootPolicy, TreeSampler, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::poly::{
    product_formula, rhs_indegree, rhs_main, BivariatePolynomial, Coefficient,
    MultivariatePolynomial,
};
use crate::report::{Verdict, VerificationReport};
use crate::tree::LabeledTree;
use crate::variants;

pub const DEFAULT_MAIN_CAP: usize = 9;
pub const DEFAULT_CODEC_CAP: usize = 7;
pub const DEFAULT_INDEGREE_COEFFICIENT_CAP: usize = 6;
pub const EVALUATION_POINTS: usize = 8;

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Overrides the verifier's default size cap.
    pub cap: Option<usize>,
    /// Record wall-clock time in the report.
    pub timing: bool,
}

impl VerifyOptions {
    fn cap_or(&self, default: usize) -> usize {
        self.cap.unwrap_or(default)
    }
}

fn require_at_least(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        Err(Error::DomainError(format!(
            "{what} needs n >= {min}, got {n}"
        )))
    } else {
        Ok(())
    }
}

fn finish(
    mut report: VerificationReport,
    start: Instant,
    opts: &VerifyOptions,
) -> VerificationReport {
    if opts.timing {
        report.millis = Some(start.elapsed().as_millis());
    }
    report
}

/// Dense `(lead, deg1)` tally for trees on `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct LeadDegreeCounts {
    width: usize,
    counts: Vec<u64>,
}

impl LeadDegreeCounts {
    fn new(n: usize) -> Self {
        LeadDegreeCounts {
            width: n + 1,
            counts: vec![0; (n + 1) * (n + 1)],
        }
    }

    fn record(&mut self, tree: &LabeledTree) {
        let lead = tree.stats().leader_count();
        let deg1 = tree.degree(1).expect("vertex 1 exists");
        self.counts[lead * self.width + deg1] += 1;
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }

    fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    fn into_polynomial(self) -> Result<BivariatePolynomial> {
        let width = self.width;
        BivariatePolynomial::from_terms(
            2,
            self.counts
                .iter()
                .enumerate()
                .map(|(i, &c)| ([(i / width) as u32, (i % width) as u32], c as Coefficient)),
        )
    }
}

fn lead_degree_counts(n: usize, cap: usize, parallel: bool) -> Result<LeadDegreeCounts> {
    require_at_least(n, 2, "the leader/degree sum")?;
    let space = CodeSpace::with_cap(n, RootPolicy::RootOne, cap)?;
    if parallel {
        Ok(space.par_fold(
            || LeadDegreeCounts::new(n),
            |acc, _, tree| acc.record(tree),
            LeadDegreeCounts::merge,
        ))
    } else {
        let mut acc = LeadDegreeCounts::new(n);
        for code in space.iter() {
            acc.record(&rp_decode(&code));
        }
        Ok(acc)
    }
}

/// `Σ_T u^lead(T) c^deg_T(1)` over every tree on `1..=n` rooted at 1.
pub fn lhs_main(n: usize) -> Result<BivariatePolynomial> {
    lhs_main_with(n, DEFAULT_MAIN_CAP, true)
}

pub fn lhs_main_with(n: usize, cap: usize, parallel: bool) -> Result<BivariatePolynomial> {
    lead_degree_counts(n, cap, parallel)?.into_polynomial()
}

/// Enumerated leader/degree sum against `u·P_{n-1}(1,u,cu)` and the
/// per-entry product formula.
pub fn verify_main(n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let counts = lead_degree_counts(n, opts.cap_or(DEFAULT_MAIN_CAP), true)?;
    let visited = counts.total();
    let lhs = counts.into_polynomial()?;
    let rhs = rhs_main(n)?;
    let product = product_formula(n)?;
    let rhs_text = if product == rhs {
        rhs.to_string()
    } else {
        format!("rhs_main={rhs}; product={product}")
    };
    let mut report = VerificationReport::new("main", n, lhs.to_string(), rhs_text, visited);
    let expected = (n as u64).pow(n as u32 - 2);
    if visited != expected {
        report.verdict = Verdict::Unequal;
        report.note = Some(format!("visited {visited} trees, expected {expected}"));
    }
    Ok(finish(report, start, opts))
}

/// Trees rooted at 1 built from every Prüfer code, independent of RP decoding.
pub fn prufer_trees(n: usize) -> Result<Vec<LabeledTree>> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n == 1 {
        return Ok(vec![LabeledTree::singleton()]);
    }
    Ok(sequences(n, n - 2)
        .into_iter()
        .map(|entries| prufer_decode(&PruferCode::new(n, entries).expect("in range")))
        .collect())
}

/// Every sequence in `[n]^len`, lexicographically.
fn sequences(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=n).map(move |e| {
                    let mut next = prefix.clone();
                    next.push(e);
                    next
                })
            })
            .collect();
    }
    out
}

fn indegree_monomial(tree: &LabeledTree) -> Vec<u32> {
    tree.indegree_vector()
        .into_iter()
        .map(|d| d as u32)
        .collect()
}

/// `Σ_T ∏ x_i^indeg_T(i)` expanded, over trees rooted at 1.
pub fn lhs_indegree(n: usize, cap: usize) -> Result<MultivariatePolynomial> {
    require_at_least(n, 2, "the indegree sum")?;
    let space = CodeSpace::with_cap(n, RootPolicy::RootOne, cap)?;
    let counts = space.par_fold(
        HashMap::<Vec<u32>, Coefficient>::new,
        |acc, _, tree| *acc.entry(indegree_monomial(tree)).or_default() += 1,
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
    );
    MultivariatePolynomial::from_terms(n, counts)
}

/// First `count` primes.
fn primes(count: usize) -> Vec<Coefficient> {
    let mut out: Vec<Coefficient> = Vec::with_capacity(count);
    let mut candidate = 2;
    while out.len() < count {
        if out
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| candidate % p != 0)
        {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}

/// Evaluation point `j`: `x_i` is the `(i + j)`-th prime (1-based `i`).
pub fn evaluation_points(n: usize) -> Vec<Vec<Coefficient>> {
    let p = primes(n + EVALUATION_POINTS);
    (0..EVALUATION_POINTS)
        .map(|j| p[j..j + n].to_vec())
        .collect()
}

fn checked_overflow<T>(v: Option<T>) -> Result<T> {
    v.ok_or(Error::IntegerOverflow)
}

/// Indegree identity. Coefficientwise up to `coefficient_cap`, otherwise by
/// exact evaluation at [`EVALUATION_POINTS`] prime points.
pub fn verify_indegree(n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    verify_indegree_with(n, DEFAULT_INDEGREE_COEFFICIENT_CAP, opts)
}

pub fn verify_indegree_with(
    n: usize,
    coefficient_cap: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    require_at_least(n, 2, "the indegree identity")?;
    let cap = opts.cap_or(DEFAULT_CAP);
    let count = CodeSpace::with_cap(n, RootPolicy::RootOne, cap)?.len();
    if n <= coefficient_cap {
        let lhs = lhs_indegree(n, cap)?;
        let rhs = rhs_indegree(n)?;
        let report =
            VerificationReport::new("indegree", n, lhs.to_string(), rhs.to_string(), count);
        return Ok(finish(report, start, opts));
    }

    let points = evaluation_points(n);
    let space = CodeSpace::with_cap(n, RootPolicy::RootOne, cap)?;
    let lhs = space.par_fold(
        || Ok(vec![0 as Coefficient; EVALUATION_POINTS]),
        |acc: &mut Result<Vec<Coefficient>>, _, tree| {
            let Ok(values) = acc else { return };
            let indegree = tree.indegree_vector();
            for (slot, point) in values.iter_mut().zip(&points) {
                let term = indegree
                    .iter()
                    .zip(point)
                    .try_fold(1 as Coefficient, |t, (&d, &x)| {
                        t.checked_mul(x.checked_pow(d as u32)?)
                    });
                match term.and_then(|t| slot.checked_add(t)) {
                    Some(v) => *slot = v,
                    None => {
                        *acc = Err(Error::IntegerOverflow);
                        return;
                    }
                }
            }
        },
        |a, b| {
            let (a, b) = (a?, b?);
            a.iter()
                .zip(&b)
                .map(|(x, y)| checked_overflow(x.checked_add(*y)))
                .collect()
        },
    )?;
    let rhs = points
        .iter()
        .map(|point| {
            let total: Coefficient = point.iter().sum();
            checked_overflow(
                total
                    .checked_pow(n as u32 - 2)
                    .and_then(|p| p.checked_mul(point[0])),
            )
        })
        .collect::<Result<Vec<Coefficient>>>()?;
    let join = |v: &[Coefficient]| v.iter().map(|x| x.to_string()).join(" ");
    let report = VerificationReport::new("indegree", n, join(&lhs), join(&rhs), count)
        .with_note("evaluation-only at prime points");
    Ok(finish(report, start, opts))
}

/// Trees with every root, each exactly once, built without RP decoding.
fn independent_trees(n: usize, policy: RootPolicy) -> Result<Vec<LabeledTree>> {
    let rooted_at_one = prufer_trees(n)?;
    Ok(match policy {
        RootPolicy::RootOne => rooted_at_one,
        RootPolicy::AllRoots => rooted_at_one
            .iter()
            .flat_map(|t| (1..=n).map(move |r| t.reroot(r).expect("valid root")))
            .collect(),
    })
}

/// Candidates sharing a smallest descendant lie on one root-ward path, so
/// their depths are pairwise distinct.
pub fn tie_break_is_unique(tree: &LabeledTree) -> bool {
    let stats = tree.stats();
    let mut seen = HashSet::new();
    (1..=tree.n())
        .filter(|&v| v != tree.root())
        .all(|v| seen.insert((stats.min_descendant[v], stats.depth[v])))
}

fn codec_laws_hold(tree: &LabeledTree, code: &RpCode) -> bool {
    let entries = code.entries();
    if tree.n() == 1 {
        return entries.is_empty();
    }
    let root = tree.root();
    entries[0] == root
        && entries.iter().filter(|&&e| e == root).count() == tree.degree(root).unwrap()
        && tie_break_is_unique(tree)
}

/// Both compositions of RP encode and decode are the identity; also checks
/// the first-entry law, the root-degree law and tie-break uniqueness.
pub fn verify_roundtrip(
    n: usize,
    policy: RootPolicy,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let space = CodeSpace::with_cap(n, policy, opts.cap_or(DEFAULT_CODEC_CAP))?;
    let mut checked = 0u64;
    let mut passed = 0u64;
    let mut first_failure: Option<String> = None;
    let fail = |what: String, first: &mut Option<String>| {
        if first.is_none() {
            *first = Some(what);
        }
    };

    for code in space.iter() {
        checked += 1;
        let tree = rp_decode(&code);
        let back = rp_encode(&tree);
        if back == code && codec_laws_hold(&tree, &back) {
            passed += 1;
        } else {
            fail(format!("code {:?}", code.entries()), &mut first_failure);
        }
    }

    let trees = independent_trees(n, policy)?;
    let distinct: HashSet<&LabeledTree> = trees.iter().collect();
    if distinct.len() as u64 != space.len() {
        fail(
            format!(
                "{} distinct trees, expected {}",
                distinct.len(),
                space.len()
            ),
            &mut first_failure,
        );
    }
    for tree in &trees {
        checked += 1;
        let code = rp_encode(tree);
        if &rp_decode(&code) == tree && codec_laws_hold(tree, &code) {
            passed += 1;
        } else {
            fail(
                format!("tree {:?}", tree.parent_array()),
                &mut first_failure,
            );
        }
    }

    let identity = match policy {
        RootPolicy::RootOne => "roundtrip",
        RootPolicy::AllRoots => "roundtrip-all-roots",
    };
    let mut report = VerificationReport::new(
        identity,
        n,
        passed.to_string(),
        checked.to_string(),
        checked,
    );
    if distinct.len() as u64 != space.len() {
        report.verdict = Verdict::Unequal;
    }
    report.note = first_failure.map(|f| format!("first counterexample: {f}"));
    Ok(finish(report, start, opts))
}

/// Reversed extended Prüfer code equals the RP-code for every tree rooted
/// at 1.
pub fn verify_reversal(n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    require_at_least(n, 2, "the reversal relation")?;
    let space = CodeSpace::with_cap(n, RootPolicy::RootOne, opts.cap_or(DEFAULT_CODEC_CAP))?;
    let mut passed = 0u64;
    let mut first = None;
    let trees = prufer_trees(n)?;
    for tree in &trees {
        if reversal_check(tree)? {
            passed += 1;
        } else if first.is_none() {
            first = Some(format!(
                "first counterexample: tree {:?}",
                tree.parent_array()
            ));
        }
    }
    let total = trees.len() as u64;
    debug_assert_eq!(total, space.len());
    let mut report =
        VerificationReport::new("reversal", n, passed.to_string(), total.to_string(), total);
    report.note = first;
    Ok(finish(report, start, opts))
}

/// At every decode step `i`, exactly `i` of the `n` possible entries label a
/// predicted leader; predicted leader sets equal structural leader sets for
/// every code with any root.
pub fn verify_choice_counts(n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let space = CodeSpace::with_cap(n, RootPolicy::AllRoots, opts.cap_or(DEFAULT_CODEC_CAP))?;
    let mut checked = 0u64;
    let mut passed = 0u64;
    let mut first = None;

    for i in 1..n {
        for prefix in sequences(n, i - 1) {
            checked += 1;
            let choices = leader_choice_count(n, &prefix)?;
            if choices == i {
                passed += 1;
            } else if first.is_none() {
                first = Some(format!(
                    "prefix {prefix:?}: {choices} leader choices at step {i}"
                ));
            }
        }
    }
    for code in space.iter() {
        checked += 1;
        let (tree, notes) = rp_decode_annotated(&code);
        if predicted_leaders(&notes) == tree.leaders() {
            passed += 1;
        } else if first.is_none() {
            first = Some(format!(
                "code {:?}: predicted leaders differ",
                code.entries()
            ));
        }
    }

    let mut report = VerificationReport::new(
        "choices",
        n,
        passed.to_string(),
        checked.to_string(),
        checked,
    );
    report.note = first.map(|f| format!("first counterexample: {f}"));
    Ok(finish(report, start, opts))
}

pub fn verify_kary(n: usize, k: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let (max_n, max_kn) = match opts.cap {
        Some(cap) => (cap, usize::MAX),
        None => (variants::DEFAULT_KARY_MAX_N, variants::DEFAULT_KARY_MAX_KN),
    };
    let report = variants::verify_kary_with_cap(n, k, max_n, max_kn)?;
    Ok(finish(report, start, opts))
}

pub fn verify_ordered(n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let report = variants::verify_ordered_with_cap(n, opts.cap_or(variants::DEFAULT_FOREST_MAX_N))?;
    Ok(finish(report, start, opts))
}

/// Upper 0.001 tail of the chi-square distribution.
pub const UNIFORMITY_ALPHA: f64 = 0.001;
pub const UNIFORMITY_MAX_N: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformityReport {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    /// Number of distinct trees, `n^(n-2)`.
    pub trees: usize,
    pub statistic: f64,
    pub df: usize,
    /// `None` when there is only one tree and nothing to test.
    pub threshold: Option<f64>,
    pub pass: bool,
    /// Observed frequency of each tree, in RP-code order.
    pub counts: Vec<u64>,
}

impl std::fmt::Display for UniformityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "identity=uniformity")?;
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "samples={}", self.samples)?;
        writeln!(f, "seed={}", self.seed)?;
        writeln!(f, "trees={}", self.trees)?;
        writeln!(f, "statistic={:.6}", self.statistic)?;
        writeln!(f, "df={}", self.df)?;
        match self.threshold {
            Some(t) => writeln!(f, "threshold={t:.6}")?,
            None => writeln!(f, "threshold=none")?,
        }
        writeln!(f, "verdict={}", if self.pass { "pass" } else { "fail" })
    }
}

/// `Σ (observed - expected)^2 / expected` against a uniform distribution.
pub fn chi_square_uniform(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&o| {
            let d = o as f64 - expected;
            d * d / expected
        })
        .sum()
}

/// `x` with `P(X > x) = alpha` for `X ~ χ²(df)`.
pub fn chi_square_upper_quantile(df: usize, alpha: f64) -> f64 {
    ChiSquared::new(df as f64)
        .expect("df > 0")
        .inverse_cdf(1.0 - alpha)
}

/// Draws `samples` trees from the sampler seeded with `seed` and tests the
/// tree frequencies for uniformity.
pub fn uniformity_test(n: usize, samples: u64, seed: u64) -> Result<UniformityReport> {
    if n > UNIFORMITY_MAX_N {
        return Err(Error::ResourceBound {
            n,
            cap: UNIFORMITY_MAX_N,
        });
    }
    let trees = prufer_trees(n)?;
    let index: HashMap<LabeledTree, usize> = {
        let mut sorted: Vec<(Vec<usize>, LabeledTree)> = trees
            .into_iter()
            .map(|t| (rp_encode(&t).into_entries(), t))
            .collect();
        sorted.sort();
        sorted
            .into_iter()
            .enumerate()
            .map(|(i, (_, t))| (t, i))
            .collect()
    };
    let mut counts = vec![0u64; index.len()];
    let mut sampler = TreeSampler::new(n, seed)?;
    for _ in 0..samples {
        let tree = sampler.sample();
        counts[index[&tree]] += 1;
    }
    let df = index.len() - 1;
    let statistic = if df == 0 {
        0.0
    } else {
        chi_square_uniform(&counts)
    };
    let threshold = (df > 0).then(|| chi_square_upper_quantile(df, UNIFORMITY_ALPHA));
    Ok(UniformityReport {
        n,
        samples,
        seed,
        trees: index.len(),
        statistic,
        df,
        threshold,
        pass: threshold.is_none_or(|t| statistic < t),
        counts,
    })
}
