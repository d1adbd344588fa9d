//! Sealed JSON documents and their re-validation.
//!
//! A document is `{"certificate": kind, "body": {...}, "digest": hex}` where
//! the digest is the SHA-256 of the canonical body text. Verification checks
//! the digest, then re-derives every claim in the body from its raw data:
//! verdicts are recomputed, scans rerun, constructions re-checked.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::construct::{verify_not_mp, ConstructionConfig, LemmaOutput, StagedConstruction};
use crate::error::{Error, Result};
use crate::json::{canonical, dec};
use crate::spacing::{
    complement_thickness_verdict, set_syndeticity, thickness_scan, thickness_verdict, ExplicitSet, SpacingSet,
};
use crate::transitivity::{
    nested_refinement, refute_product_transitivity, weak_mixing_verdict, RefinementReport, RefutationReport,
    WitnessReport,
};
use crate::verdict::{Certificate, HorizonVerdict};

/// A property checked by [`run_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "property", rename_all = "kebab-case")]
pub enum Property {
    /// Thickness with structural shortcuts.
    Thick { run_target: u64 },
    /// Plain run scan without shortcuts.
    ThickScan { run_target: u64 },
    ComplementThick { run_target: u64 },
    Syndetic { bound: Option<u64> },
    Dispersed {
        #[serde(with = "dec")]
        q: BigUint,
    },
    NotMp { m: u64 },
    WeakMixing { run_target: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    /// Absent for `not-mp`, which is about `P(m)` itself.
    pub set: Option<SpacingSet>,
    pub horizon: u64,
    pub check: Property,
    pub verdict: Option<HorizonVerdict>,
    /// Largest gap, for syndeticity checks.
    pub max_gap: Option<u64>,
}

impl CheckReport {
    /// Exit-code view: `true` unless refuted.
    pub fn passed(&self) -> bool {
        self.verdict.as_ref().is_none_or(HorizonVerdict::holds)
    }
}

fn dispersed_verdict(set: &SpacingSet, horizon: u64, q: &BigUint) -> HorizonVerdict {
    let (finite, complete) = match set.as_finite() {
        Some(f) => (f.clone(), true),
        None => {
            let members = ExplicitSet::from_u64s(set.members_up_to(horizon)).expect("positive members");
            (members, false)
        }
    };
    match finite.is_q_dispersed(q) {
        Err(pair) => HorizonVerdict::refuted(Certificate::FailingPair { a: pair.a, b: pair.b }),
        Ok(()) if complete => HorizonVerdict::proven(Certificate::Dispersed { q: q.clone() }),
        Ok(()) => HorizonVerdict::verified(horizon, Some(Certificate::Dispersed { q: q.clone() })),
    }
}

/// Runs one property check and packages the result.
pub fn run_check(set: Option<&SpacingSet>, horizon: u64, check: Property) -> Result<CheckReport> {
    let need_set = || set.ok_or_else(|| Error::InvalidParameter("this check needs a spacing set".into()));
    if horizon == 0 {
        return Err(Error::InvalidParameter("horizon must be at least 1".into()));
    }
    let mut max_gap = None;
    let verdict = match &check {
        Property::Thick { run_target } => Some(thickness_verdict(need_set()?, horizon, *run_target)?),
        Property::ThickScan { run_target } => Some(thickness_scan(need_set()?, horizon, *run_target)?),
        Property::ComplementThick { run_target } => {
            Some(complement_thickness_verdict(need_set()?, horizon, *run_target)?)
        }
        Property::WeakMixing { run_target } => Some(weak_mixing_verdict(need_set()?, horizon, *run_target)?),
        Property::Syndetic { bound } => {
            let r = set_syndeticity(need_set()?, horizon, *bound);
            max_gap = Some(r.max_gap);
            r.verdict
        }
        Property::Dispersed { q } => Some(dispersed_verdict(need_set()?, horizon, q)),
        Property::NotMp { m } => {
            if set.is_some() {
                return Err(Error::InvalidParameter("not-mp is about P(m); pass --m, not --set".into()));
            }
            Some(verify_not_mp(*m, horizon)?)
        }
    };
    Ok(CheckReport { set: set.cloned(), horizon, check, verdict, max_gap })
}

/// Body of a sealed document, tagged by what it certifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Body {
    LemmaTranscript(LemmaOutput),
    StagedConstruction(StagedConstruction),
    CheckReport(CheckReport),
    WitnessReport(WitnessReport),
    RefutationReport(RefutationReport),
    RefinementReport(RefinementReport),
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::LemmaTranscript(_) => "lemma-transcript",
            Body::StagedConstruction(_) => "staged-construction",
            Body::CheckReport(_) => "check-report",
            Body::WitnessReport(_) => "witness-report",
            Body::RefutationReport(_) => "refutation-report",
            Body::RefinementReport(_) => "refinement-report",
        }
    }

    /// Spacing set the document describes, where there is one.
    pub fn spacing_set(&self) -> Option<SpacingSet> {
        match self {
            Body::LemmaTranscript(l) => Some(SpacingSet::Explicit(l.b.clone())),
            Body::StagedConstruction(s) => Some(SpacingSet::Staged(s.set.clone())),
            _ => None,
        }
    }

    /// Re-derives every claim. Returns the first failing one.
    pub fn revalidate(&self) -> std::result::Result<(), String> {
        let config = ConstructionConfig::default();
        let recomputed = |what: &str, r: Result<()>| r.map_err(|e| format!("{what} could not be recomputed: {e}"));
        match self {
            Body::LemmaTranscript(l) => l.check(&config),
            Body::StagedConstruction(s) => s.check(&config),
            Body::CheckReport(c) => {
                let mut fresh = None;
                recomputed("check", run_check(c.set.as_ref(), c.horizon, c.check.clone()).map(|r| fresh = Some(r)))?;
                if fresh.as_ref() != Some(c) {
                    return Err("recomputed check report differs".into());
                }
                Ok(())
            }
            Body::WitnessReport(w) => {
                if let Some(n) = w.witness {
                    // checked directly before the full rescan
                    match w.query.patterns_at(n) {
                        Some(p) if p == w.merged => {}
                        _ => return Err(format!("recorded patterns do not realize a witness at n = {n}")),
                    }
                }
                let mut fresh = None;
                recomputed("witness search", WitnessReport::search(w.query.clone()).map(|r| fresh = Some(r)))?;
                if fresh.as_ref() != Some(w) {
                    return Err("rescan of the horizon gives a different report".into());
                }
                Ok(())
            }
            Body::RefutationReport(r) => {
                let mut fresh = None;
                recomputed(
                    "refutation",
                    refute_product_transitivity(&r.query.set, Some(&r.query.exponents), r.query.horizon)
                        .map(|x| fresh = Some(x)),
                )?;
                if fresh.as_ref() != Some(r) {
                    return Err("rescan of the horizon gives a different hitting set".into());
                }
                Ok(())
            }
            Body::RefinementReport(r) => {
                r.check()?;
                let mut fresh = None;
                recomputed(
                    "refinement",
                    nested_refinement(&r.set, &r.targets, r.depth, r.horizon).map(|x| fresh = Some(x)),
                )?;
                if fresh.as_ref() != Some(r) {
                    return Err("rebuilt refinement differs".into());
                }
                Ok(())
            }
        }
    }
}

/// SHA-256 over the canonical `{"body":..,"certificate":..}` pair.
fn digest_of(kind: &Value, body: &Value) -> Result<String> {
    let text = canonical(&serde_json::json!({ "certificate": kind, "body": body }))?;
    Ok(hex::encode(Sha256::digest(text.as_bytes())))
}

/// Canonical sealed text for a body.
pub fn seal(body: &Body) -> Result<String> {
    let body_value = serde_json::to_value(body)?[body.kind()].take();
    let doc = serde_json::json!({
        "certificate": body.kind(),
        "body": body_value,
        "digest": digest_of(&Value::from(body.kind()), &body_value)?,
    });
    Ok(canonical(&doc)?)
}

/// Recomputes the digest of an already sealed document, e.g. after an
/// edit, so that only semantic re-validation can catch the change.
pub fn reseal(text: &str) -> Result<String> {
    let mut doc: Value = serde_json::from_str(text)?;
    let digest = digest_of(&doc["certificate"], doc.get("body").ok_or_else(|| Error::Parse("no body".into()))?)?;
    doc["digest"] = Value::String(digest);
    Ok(canonical(&doc)?)
}

/// Outcome of [`verify`]: parse failures are errors, failed claims are rejections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Accepted { kind: &'static str },
    Rejected { reason: String },
}

/// Opens a sealed document without checking its claims.
pub fn open(bytes: &[u8]) -> Result<Body> {
    let doc: Value = serde_json::from_slice(bytes)?;
    let obj = doc.as_object().ok_or_else(|| Error::Parse("document is not a JSON object".into()))?;
    if let Some(extra) = obj.keys().find(|k| !["certificate", "body", "digest"].contains(&k.as_str())) {
        return Err(Error::Parse(format!("unexpected field {extra:?}")));
    }
    let body_value = obj.get("body").ok_or_else(|| Error::Parse("missing body".into()))?;
    let tagged = serde_json::json!({ obj.get("certificate").and_then(Value::as_str).unwrap_or(""): body_value });
    Ok(serde_json::from_value(tagged)?)
}

/// Digest check, then full semantic re-validation. Anything that is not a
/// well-formed sealed document is rejected rather than reported as an error.
pub fn verify(bytes: &[u8]) -> Result<Verification> {
    let reject = |reason: String| Ok(Verification::Rejected { reason });
    let doc: Value = match serde_json::from_slice(bytes) {
        Ok(v) => v,
        Err(e) => return reject(format!("not valid JSON: {e}")),
    };
    let Some(obj) = doc.as_object() else { return reject("document is not a JSON object".into()) };
    let (Some(body_value), Some(Value::String(digest))) = (obj.get("body"), obj.get("digest")) else {
        return reject("missing body or digest".into());
    };
    if digest_of(obj.get("certificate").unwrap_or(&Value::Null), body_value)? != *digest {
        return reject("digest does not match the body".into());
    }
    let body = match open(bytes) {
        Ok(b) => b,
        Err(e) => return reject(format!("body does not parse: {e}")),
    };
    // fields the typed body does not know about would escape re-validation
    if serde_json::to_value(&body)? != serde_json::json!({ body.kind(): body_value }) {
        return reject("body carries fields outside its schema".into());
    }
    match body.revalidate() {
        Ok(()) => Ok(Verification::Accepted { kind: body.kind() }),
        Err(reason) => reject(reason),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::lemma_extend;

    fn lemma_doc() -> String {
        let a = ExplicitSet::from_u64s([3]).unwrap();
        seal(&Body::LemmaTranscript(lemma_extend(&a, 1, 3, &ConstructionConfig::default()).unwrap())).unwrap()
    }

    #[test]
    fn sealed_lemma_verifies() {
        let doc = lemma_doc();
        assert_eq!(verify(doc.as_bytes()).unwrap(), Verification::Accepted { kind: "lemma-transcript" });
        assert!(matches!(open(doc.as_bytes()).unwrap(), Body::LemmaTranscript(_)));
    }

    #[test]
    fn digest_catches_edits() {
        let doc = lemma_doc().replacen("\"k\":4", "\"k\":5", 1);
        assert!(matches!(verify(doc.as_bytes()).unwrap(), Verification::Rejected { reason } if reason.contains("digest")));
    }

    #[test]
    fn resealed_spacing_mutation_is_rejected() {
        let doc = lemma_doc();
        let mut v: Value = serde_json::from_str(&doc).unwrap();
        let b = v["body"]["b"].as_array_mut().unwrap();
        let last = b.last_mut().unwrap();
        let n: BigUint = last.as_str().unwrap().parse().unwrap();
        *last = Value::String((n + 1u32).to_string());
        let resealed = reseal(&serde_json::to_string(&v).unwrap()).unwrap();
        assert!(matches!(verify(resealed.as_bytes()).unwrap(), Verification::Rejected { .. }));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let doc = lemma_doc();
        let mut v: Value = serde_json::from_str(&doc).unwrap();
        v["body"]["note"] = Value::String("x".into());
        let resealed = reseal(&serde_json::to_string(&v).unwrap()).unwrap();
        assert!(matches!(verify(resealed.as_bytes()).unwrap(), Verification::Rejected { .. }));
    }

    #[test]
    fn check_reports_round_trip() {
        let set = SpacingSet::blocks(2).unwrap();
        for check in [
            Property::Thick { run_target: 128 },
            Property::ThickScan { run_target: 128 },
            Property::ComplementThick { run_target: 100 },
            Property::Syndetic { bound: Some(1000) },
            Property::Dispersed { q: BigUint::from(3u32) },
            Property::WeakMixing { run_target: 8 },
        ] {
            let r = run_check(Some(&set), 10_000, check).unwrap();
            let doc = seal(&Body::CheckReport(r.clone())).unwrap();
            assert_eq!(verify(doc.as_bytes()).unwrap(), Verification::Accepted { kind: "check-report" });
            assert_eq!(open(doc.as_bytes()).unwrap(), Body::CheckReport(r));
        }
        let r = run_check(None, 100_000, Property::NotMp { m: 3 }).unwrap();
        assert!(r.passed());
        assert!(run_check(Some(&set), 10, Property::NotMp { m: 2 }).is_err());
    }

    #[test]
    fn dispersed_verdicts() {
        let s = SpacingSet::Explicit(ExplicitSet::from_u64s([3, 10, 20]).unwrap());
        let r = run_check(Some(&s), 10, Property::Dispersed { q: BigUint::from(3u32) }).unwrap();
        assert!(r.verdict.unwrap().is_proven());
        let r = run_check(Some(&s), 10, Property::Dispersed { q: BigUint::from(4u32) }).unwrap();
        assert_eq!(
            r.verdict.unwrap(),
            HorizonVerdict::refuted(Certificate::FailingPair { a: BigUint::from(0u32), b: BigUint::from(3u32) })
        );
        let r = run_check(Some(&SpacingSet::blocks(2).unwrap()), 100, Property::Dispersed { q: BigUint::from(2u32) })
            .unwrap();
        assert!(r.verdict.unwrap().is_refuted());
    }
}
