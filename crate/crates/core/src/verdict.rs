//! Three-valued results of horizon-bounded checks.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::json::{dec, dec_opt};

/// A structural argument that settles a property for all `n`, not just up
/// to a horizon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum StructuralReason {
    /// Blocks of `P(m)` have length `m^{2k} - m^{2k-1}`, which is unbounded.
    BlockLengthsUnbounded { m: u64 },
    /// `floor(log_m p)` changes parity under multiplication by `m`, so
    /// `p in P(m)` forces `m p` out of `P(m)`.
    LogParity { m: u64 },
    /// The query needs both `a n` and `m a n` in `P(m)` for every candidate
    /// `n`, which the log-parity rule forbids.
    NotMp { m: u64, a: u64 },
    /// No two members of the set are adjacent integers.
    NoAdjacentMembers {
        #[serde(with = "dec")]
        min_gap: BigUint,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Certificate {
    Structural(StructuralReason),
    /// A run of consecutive integers `[start, start + length)`.
    Run { start: u64, length: u64 },
    /// The longest run seen within the horizon; `start` is absent for length 0.
    LongestRun { start: Option<u64>, length: u64 },
    /// The set is finite with the given maximum.
    Finite {
        #[serde(with = "dec_opt")]
        max: Option<BigUint>,
    },
    /// `p` and `m p` both lie in `P(m)`.
    Violation { p: u64 },
    /// Two elements of `S ∪ {0}` closer than the dispersion bound.
    FailingPair {
        #[serde(with = "dec")]
        a: BigUint,
        #[serde(with = "dec")]
        b: BigUint,
    },
    /// All distinct elements of `S ∪ {0}` are at least `q` apart.
    Dispersed {
        #[serde(with = "dec")]
        q: BigUint,
    },
    /// The window `[start, start + bound]` misses the set.
    EmptyWindow { start: u64, bound: u64 },
    Witness { n: u64 },
    /// The scan found nothing; optionally backed by a structural argument.
    NoWitness { structural: Option<StructuralReason> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum HorizonVerdict {
    Proven { certificate: Certificate },
    VerifiedUpToHorizon { horizon: u64, certificate: Option<Certificate> },
    /// `horizon: None` means refuted outright; `Some(h)` means no
    /// confirmation was found in `[1, h]`.
    Refuted { horizon: Option<u64>, counterexample: Certificate },
}

impl HorizonVerdict {
    pub fn proven(certificate: Certificate) -> Self {
        HorizonVerdict::Proven { certificate }
    }

    pub fn verified(horizon: u64, certificate: Option<Certificate>) -> Self {
        HorizonVerdict::VerifiedUpToHorizon { horizon, certificate }
    }

    pub fn refuted(counterexample: Certificate) -> Self {
        HorizonVerdict::Refuted { horizon: None, counterexample }
    }

    pub fn refuted_up_to(horizon: u64, counterexample: Certificate) -> Self {
        HorizonVerdict::Refuted { horizon: Some(horizon), counterexample }
    }

    pub fn is_proven(&self) -> bool {
        matches!(self, HorizonVerdict::Proven { .. })
    }

    pub fn is_verified(&self) -> bool {
        matches!(self, HorizonVerdict::VerifiedUpToHorizon { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, HorizonVerdict::Refuted { .. })
    }

    /// Proven or verified.
    pub fn holds(&self) -> bool {
        !self.is_refuted()
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            HorizonVerdict::Proven { certificate } => Some(certificate),
            HorizonVerdict::VerifiedUpToHorizon { certificate, .. } => certificate.as_ref(),
            HorizonVerdict::Refuted { counterexample, .. } => Some(counterexample),
        }
    }

    pub fn status_name(&self) -> &'static str {
        match self {
            HorizonVerdict::Proven { .. } => "proven",
            HorizonVerdict::VerifiedUpToHorizon { .. } => "verified-up-to-horizon",
            HorizonVerdict::Refuted { horizon: None, .. } => "refuted",
            HorizonVerdict::Refuted { horizon: Some(_), .. } => "refuted-up-to-horizon",
        }
    }
}
