//! Exhaustive enumeration of RP-code space and seeded uniform sampling.
//!
//! RP decoding is a bijection, so walking every code in lexicographic order
//! visits every rooted tree exactly once. The space is addressed by index
//! (base-`n` digits of the free positions), which lets parallel workers take
//! disjoint prefix ranges.

use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codec::{rp_decode, RpCode};
use crate::error::{Error, Result};
use crate::tree::LabeledTree;

pub const DEFAULT_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootPolicy {
    /// Trees rooted at 1: codes `(1, σ_2, .., σ_{n-1})`.
    RootOne,
    /// Every rooted tree: all of `[n]^{n-1}`.
    AllRoots,
}

/// The set of RP-codes for a given `n` and root policy, in lexicographic
/// order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeSpace {
    n: usize,
    policy: RootPolicy,
}

impl CodeSpace {
    pub fn new(n: usize, policy: RootPolicy) -> Result<Self> {
        Self::with_cap(n, policy, DEFAULT_CAP)
    }

    pub fn with_cap(n: usize, policy: RootPolicy, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > cap {
            return Err(Error::ResourceBound { n, cap });
        }
        // lengths are computed in u64; 20^19 still fits
        if n > 20 {
            return Err(Error::ResourceBound { n, cap: 20 });
        }
        Ok(CodeSpace { n, policy })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn policy(&self) -> RootPolicy {
        self.policy
    }

    /// Number of code positions that vary.
    fn free_positions(&self) -> usize {
        match self.policy {
            RootPolicy::RootOne => self.n.saturating_sub(2),
            RootPolicy::AllRoots => self.n - 1,
        }
    }

    /// `n^(n-2)` for `RootOne`, `n^(n-1)` for `AllRoots`.
    pub fn len(&self) -> u64 {
        (self.n as u64).pow(self.free_positions() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Code at lexicographic position `index`.
    pub fn code_at(&self, index: u64) -> RpCode {
        assert!(index < self.len(), "index {index} out of range");
        let mut entries = vec![0; self.n - 1];
        let fixed = (self.n - 1) - self.free_positions();
        if fixed == 1 {
            entries[0] = 1;
        }
        let mut rest = index;
        for slot in entries[fixed..].iter_mut().rev() {
            *slot = (rest % self.n as u64) as usize + 1;
            rest /= self.n as u64;
        }
        RpCode::new(self.n, entries).expect("generated codes are in range")
    }

    /// Lexicographic position of `code`, if it belongs to this space.
    pub fn index_of(&self, code: &RpCode) -> Option<u64> {
        if code.n() != self.n {
            return None;
        }
        let entries = code.entries();
        let fixed = (self.n - 1) - self.free_positions();
        if fixed == 1 && entries[0] != 1 {
            return None;
        }
        Some(
            entries[fixed..]
                .iter()
                .fold(0u64, |acc, &e| acc * self.n as u64 + (e as u64 - 1)),
        )
    }

    /// Codes with index in `range`, in order.
    pub fn codes(&self, range: Range<u64>) -> Codes {
        let end = range.end.min(self.len());
        let next = (range.start < end).then(|| self.code_at(range.start).into_entries());
        Codes {
            n: self.n,
            fixed: (self.n - 1) - self.free_positions(),
            next,
            remaining: end.saturating_sub(range.start),
        }
    }

    pub fn iter(&self) -> Codes {
        self.codes(0..self.len())
    }

    /// Splits the index space into at most `parts` contiguous prefix ranges.
    pub fn partition(&self, parts: usize) -> Vec<Range<u64>> {
        let len = self.len();
        let parts = (parts.max(1) as u64).min(len);
        let chunk = len.div_ceil(parts);
        (0..parts)
            .map(|i| i * chunk..((i + 1) * chunk).min(len))
            .filter(|r| !r.is_empty())
            .collect()
    }

    /// Folds `f` over all trees in parallel, combining per-range partial
    /// results with `merge`, which must be associative and commutative.
    pub fn par_fold<A, F, M>(&self, init: impl Fn() -> A + Sync + Send, f: F, merge: M) -> A
    where
        A: Send,
        F: Fn(&mut A, &RpCode, &LabeledTree) + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        let parts = rayon::current_num_threads() * 8;
        self.partition(parts)
            .into_par_iter()
            .map(|range| {
                let mut acc = init();
                for code in self.codes(range) {
                    let tree = rp_decode(&code);
                    f(&mut acc, &code, &tree);
                }
                acc
            })
            .reduce(&init, &merge)
    }
}

/// Odometer over a contiguous range of a [`CodeSpace`].
pub struct Codes {
    n: usize,
    fixed: usize,
    next: Option<Vec<usize>>,
    remaining: u64,
}

impl Iterator for Codes {
    type Item = RpCode;

    fn next(&mut self) -> Option<RpCode> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let current = self.next.as_ref()?.clone();
        if self.remaining > 0 {
            let digits = self.next.as_mut().expect("checked above");
            for slot in digits[self.fixed..].iter_mut().rev() {
                if *slot == self.n {
                    *slot = 1;
                } else {
                    *slot += 1;
                    break;
                }
            }
        }
        Some(RpCode::new(self.n, current).expect("odometer stays in range"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).ok();
        (r.unwrap_or(usize::MAX), r)
    }
}

/// Every tree on `1..=n` under `policy`, each exactly once, in the
/// lexicographic order of their RP-codes.
pub fn enumerate_trees(
    n: usize,
    policy: RootPolicy,
    cap: usize,
) -> Result<impl Iterator<Item = LabeledTree>> {
    let space = CodeSpace::with_cap(n, policy, cap)?;
    Ok(space.iter().map(|code| rp_decode(&code)))
}

/// Deterministic stream of uniformly random trees rooted at 1.
///
/// Entries `σ_2 .. σ_{n-1}` are drawn independently and uniformly from
/// `1..=n` using SplitMix64 seeded with `seed`, then RP-decoded.
pub struct TreeSampler {
    n: usize,
    rng: SplitMix64,
}

impl TreeSampler {
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        Ok(TreeSampler {
            n,
            rng: SplitMix64::seed_from_u64(seed),
        })
    }

    pub fn sample_code(&mut self) -> RpCode {
        let mut entries = Vec::with_capacity(self.n.saturating_sub(1));
        if self.n >= 2 {
            entries.push(1);
        }
        for _ in 2..self.n {
            entries.push(self.rng.random_range(1..=self.n));
        }
        RpCode::new(self.n, entries).expect("sampled entries are in range")
    }

    pub fn sample(&mut self) -> LabeledTree {
        rp_decode(&self.sample_code())
    }
}

impl Iterator for TreeSampler {
    type Item = LabeledTree;
    fn next(&mut self) -> Option<LabeledTree> {
        Some(self.sample())
    }
}

/// First tree of the sampler stream for `seed`.
pub fn sample_tree(n: usize, seed: u64) -> Result<LabeledTree> {
    Ok(TreeSampler::new(n, seed)?.sample())
}
