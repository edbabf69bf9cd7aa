//! Replayable certificates for the inequalities derived from the area
//! bounds.
//!
//! A certificate stores partitions, the bound term for every segment, a few
//! loose terms, and the exact totals derived from them. [`Certificate::replay`]
//! recomputes all of it from `(a, b, method)` data and fails on any mismatch.
//!
//! Every per-segment bound is strict for `a < b`, so a partition sum compared
//! with `<=`/`>=` against a target still yields a strict inequality for the
//! logarithm it bounds.

mod derive;
mod e;
mod euler;
mod gamma;
mod geometric;
mod power;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::ln::{BoundMethod, BoundTerm, LnConfig, LnRefinement, Partition};

pub use e::{certify_e_paper, e_enclosure, EEnclosure, E_LOWER_SPLITS, E_UPPER_SPLITS};
pub use euler::{euler_limit_demo, euler_limit_sandwich, EulerRow, EulerSequence, EulerTable};
pub use gamma::{
    gamma_enclosure, gamma_enclosure_certificate, gamma_sequences, harmonic, verify_gamma_sandwich, GammaCheck,
    GammaFailure, GammaReport, GammaTriple, GAMMA_CHECKS,
};
pub use geometric::geometric_identity;
pub use power::{archimedes_pi, certify_pi_e, certify_power, PowerBase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClaimKind {
    /// `e < 11/4` and refinements of an upper bound on `e`.
    EUpper,
    /// `e > 27/10`.
    ELower,
    EEnclosure,
    PowerInequality,
    PiE,
    GammaEnclosure,
    GammaSandwich,
    EulerLimitSandwich,
    GeometricIdentity,
}

/// Outcome of an exact check. `Undecided` means the enclosures were too wide,
/// never that the claim is false.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Certified,
    Refuted,
    Undecided,
}

/// Serialized field order is fixed by declaration order; maps are sorted by
/// key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim_kind: ClaimKind,
    pub statement: String,
    pub parameters: BTreeMap<String, Rational>,
    pub partitions: Vec<Partition>,
    pub terms: Vec<BoundTerm>,
    pub totals: BTreeMap<String, Rational>,
    pub verdict: Verdict,
    pub config: BTreeMap<String, String>,
}

impl Certificate {
    /// Compact, byte-deterministic JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Replay(format!("invalid certificate JSON: {e}")))
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    pub fn total(&self, name: &str) -> Option<&Rational> {
        self.totals.get(name)
    }

    pub fn parameter(&self, name: &str) -> Option<&Rational> {
        self.parameters.get(name)
    }

    pub fn with_config(mut self, key: &str, value: impl Into<String>) -> Self {
        self.config.insert(key.to_string(), value.into());
        self
    }

    /// Recomputes every term, the totals and the verdict.
    pub fn replay(&self) -> Result<()> {
        for (i, t) in self.terms.iter().enumerate() {
            if !t.replays() {
                return Err(Error::Replay(format!(
                    "term {i} ({} on [{}, {}]) does not reproduce value {}",
                    t.method, t.a, t.b, t.value
                )));
            }
        }
        let (groups, loose) = derive::split_terms(self)?;
        let (totals, verdict) = derive::derive(self.claim_kind, &self.parameters, &groups, loose)?;
        if totals != self.totals {
            return Err(Error::Replay(format!(
                "totals differ: recorded {:?}, recomputed {:?}",
                self.totals, totals
            )));
        }
        if verdict != self.verdict {
            return Err(Error::Replay(format!(
                "verdict differs: recorded {:?}, recomputed {:?}",
                self.verdict, verdict
            )));
        }
        Ok(())
    }

    /// Builds a certificate whose totals and verdict come from [`derive`].
    pub(crate) fn assemble(
        claim_kind: ClaimKind,
        statement: String,
        mut parameters: BTreeMap<String, Rational>,
        evidence: Vec<Evidence>,
        loose: Vec<BoundTerm>,
        config: BTreeMap<String, String>,
    ) -> Result<Self> {
        let mut partitions = Vec::with_capacity(evidence.len());
        let mut terms = Vec::new();
        for (i, ev) in evidence.into_iter().enumerate() {
            if let Some(s) = &ev.scale {
                parameters.insert(format!("scale_{i}"), Rational::from(s.clone()));
            }
            terms.extend(ev.partition.terms(ev.method));
            partitions.push(ev.partition);
        }
        terms.extend(loose);
        let mut cert = Certificate {
            claim_kind,
            statement,
            parameters,
            partitions,
            terms,
            totals: BTreeMap::new(),
            verdict: Verdict::Undecided,
            config,
        };
        let (groups, loose) = derive::split_terms(&cert)?;
        let (totals, verdict) = derive::derive(claim_kind, &cert.parameters, &groups, loose)?;
        cert.totals = totals;
        cert.verdict = verdict;
        Ok(cert)
    }
}

/// One partition summed with one method, optionally on a dyadic grid.
#[derive(Debug, Clone)]
pub(crate) struct Evidence {
    pub partition: Partition,
    pub method: BoundMethod,
    pub scale: Option<BigInt>,
}

impl Evidence {
    pub fn exact(partition: Partition, method: BoundMethod) -> Self {
        Evidence {
            partition,
            method,
            scale: None,
        }
    }

    /// The sum that bounds `ln x` from the side `method` is on. `None` when
    /// `x = 1` or the refinement went through `1/x`.
    pub fn from_refinement(r: &LnRefinement, method: BoundMethod) -> Option<Self> {
        if r.reciprocal {
            return None;
        }
        Some(Evidence {
            partition: r.partition.clone()?,
            method,
            scale: Some(r.scale.clone()),
        })
    }
}

/// Refinement settings shared by every certifying operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Policy {
    /// Retries halve the working width until it would drop below this.
    pub floor: Rational,
    pub ln: LnConfig,
}

impl Default for Policy {
    fn default() -> Self {
        Policy {
            floor: Rational::ten_pow_neg(30),
            ln: LnConfig::default(),
        }
    }
}

impl Policy {
    pub(crate) fn config(&self, eps: &Rational) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("eps".to_string(), eps.canonical());
        m.insert("refinement_floor".to_string(), self.floor.canonical());
        m.insert("max_bisections".to_string(), self.ln.max_bisections.to_string());
        if let Some(d) = &self.ln.max_den {
            m.insert("max_den".to_string(), d.to_string());
        }
        m
    }
}

pub(crate) enum Step<T> {
    Done(T),
    /// Not resolved; retry with a narrower width. The hint, when given, is
    /// the width actually achieved, so the retry can go below it directly.
    Refine(Option<Rational>),
}

/// Runs `attempt` with widths `eps, eps/2, ...` (or below the achieved width
/// when hinted) until it resolves or the floor is reached. Precision errors
/// from the inner refinement count as unresolved.
pub(crate) fn refine_until<T>(
    eps: &Rational,
    policy: &Policy,
    mut attempt: impl FnMut(&Rational) -> Result<Step<T>>,
) -> Result<Option<T>> {
    let mut width = eps.clone();
    loop {
        let hint = match attempt(&width) {
            Ok(Step::Done(v)) => return Ok(Some(v)),
            Ok(Step::Refine(hint)) => hint,
            Err(Error::Precision(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut next = width.half();
        if let Some(h) = hint {
            let h = h.half();
            if h < next && h.is_positive() {
                next = h;
            }
        }
        if next < policy.floor {
            return Ok(None);
        }
        width = next;
    }
}

pub(crate) fn check_eps(eps: &Rational) -> Result<()> {
    if !eps.is_positive() {
        return Err(Error::domain(format!("eps must be positive, got {eps}")));
    }
    Ok(())
}

pub(crate) fn params<const N: usize>(entries: [(&str, Rational); N]) -> BTreeMap<String, Rational> {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
