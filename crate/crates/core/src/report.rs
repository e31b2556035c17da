use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of one exhaustive check.
///
/// `verdict` is equal exactly when the serialized `lhs` and `rhs` agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub n: usize,
    pub k: Option<usize>,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    /// Objects visited.
    pub count: u64,
    /// Wall-clock time, only filled in when timing was requested.
    pub millis: Option<u128>,
    /// Extra context such as a counterexample or the evaluation mode.
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Unequal,
}

impl Verdict {
    pub fn from_bool(equal: bool) -> Self {
        if equal {
            Verdict::Equal
        } else {
            Verdict::Unequal
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "equal",
            Verdict::Unequal => "unequal",
        })
    }
}

impl VerificationReport {
    pub fn new(identity: &str, n: usize, lhs: String, rhs: String, count: u64) -> Self {
        let verdict = Verdict::from_bool(lhs == rhs);
        VerificationReport {
            identity: identity.to_string(),
            n,
            k: None,
            lhs,
            rhs,
            verdict,
            count,
            millis: None,
            note: None,
        }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_equal(&self) -> bool {
        self.verdict == Verdict::Equal
    }
}

/// Flat `key=value` block; `k`, `millis` and `note` appear only when set.
impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "identity={}", self.identity)?;
        writeln!(f, "n={}", self.n)?;
        if let Some(k) = self.k {
            writeln!(f, "k={k}")?;
        }
        writeln!(f, "lhs={}", self.lhs)?;
        writeln!(f, "rhs={}", self.rhs)?;
        writeln!(f, "verdict={}", self.verdict)?;
        writeln!(f, "count={}", self.count)?;
        if let Some(ms) = self.millis {
            writeln!(f, "millis={ms}")?;
        }
        if let Some(note) = &self.note {
            writeln!(f, "note={note}")?;
        }
        Ok(())
    }
}
