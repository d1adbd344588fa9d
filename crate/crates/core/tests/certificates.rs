use num_bigint::BigUint;
use proptest::prelude::*;
use serde_json::Value;

use spacing_lab::cert::{self, run_check, Body, Property, Verification};
use spacing_lab::construct::ConstructionConfig;
use spacing_lab::json::canonical;
use spacing_lab::transitivity::{DeltaQuery, Query};
use spacing_lab::*;

fn accepted(body: &Body) -> bool {
    let text = cert::seal(body).unwrap();
    matches!(cert::verify(text.as_bytes()).unwrap(), Verification::Accepted { .. })
}

fn round_trips(body: &Body) -> bool {
    let text = cert::seal(body).unwrap();
    cert::open(text.as_bytes()).unwrap() == *body
}

/// Re-seals after editing the body, so only re-validation can object.
fn edited(body: &Body, edit: impl FnOnce(&mut Value)) -> Verification {
    let mut doc: Value = serde_json::from_str(&cert::seal(body).unwrap()).unwrap();
    edit(&mut doc["body"]);
    let text = cert::reseal(&doc.to_string()).unwrap();
    cert::verify(text.as_bytes()).unwrap()
}

fn arb_set() -> impl Strategy<Value = SpacingSet> {
    prop_oneof![
        proptest::collection::btree_set(1u64..40, 1..15)
            .prop_map(|s| SpacingSet::Explicit(ExplicitSet::from_u64s(s).unwrap())),
        (2u64..5).prop_map(|m| SpacingSet::blocks(m).unwrap()),
    ]
}

fn arb_pattern() -> impl Strategy<Value = PartialPattern> {
    proptest::collection::btree_map(0u64..6, any::<bool>(), 0..4)
        .prop_map(|m| PartialPattern::from_constraints(m.into_iter().map(|(p, s)| (BigUint::from(p), s))))
}

fn arb_property() -> impl Strategy<Value = Property> {
    prop_oneof![
        (1u64..6).prop_map(|run_target| Property::Thick { run_target }),
        (1u64..6).prop_map(|run_target| Property::ThickScan { run_target }),
        (1u64..6).prop_map(|run_target| Property::ComplementThick { run_target }),
        (1u64..6).prop_map(|run_target| Property::WeakMixing { run_target }),
        proptest::option::of(1u64..20).prop_map(|bound| Property::Syndetic { bound }),
        (1u64..6).prop_map(|q| Property::Dispersed { q: BigUint::from(q) }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn check_reports_verify(set in arb_set(), prop in arb_property(), horizon in 6u64..300) {
        let report = run_check(Some(&set), horizon, prop).unwrap();
        let body = Body::CheckReport(report);
        prop_assert!(accepted(&body));
        prop_assert!(round_trips(&body));
        // a gap no scan up to the horizon can produce
        let tampered = edited(&body, |b| b["max_gap"] = Value::from(horizon + 2));
        let rejected = matches!(tampered, Verification::Rejected { .. });
        prop_assert!(rejected);
    }

    #[test]
    fn witness_reports_verify(set in arb_set(),
                              us in proptest::collection::vec(arb_pattern(), 1..3),
                              vs in proptest::collection::vec(arb_pattern(), 3),
                              horizon in 1u64..60) {
        let r = us.len();
        let q = ProductQuery::new(set.clone(), (1..=r as u64).collect(), us.clone(), vs[..r].to_vec(), horizon).unwrap();
        let body = Body::WitnessReport(WitnessReport::search(Query::Product(q)).unwrap());
        prop_assert!(accepted(&body));
        prop_assert!(round_trips(&body));
        let delta = DeltaQuery { set, source: us[0].clone(), targets: vs.clone(), horizon };
        let body = Body::WitnessReport(WitnessReport::search(Query::Delta(delta)).unwrap());
        prop_assert!(accepted(&body));
        let flipped = edited(&body, |b| {
            b["witness"] = match b["witness"].as_u64() {
                Some(n) => Value::from(n + 1),
                None => Value::from(1),
            }
        });
        let rejected = matches!(flipped, Verification::Rejected { .. });
        prop_assert!(rejected);
    }

    #[test]
    fn descriptors_round_trip(set in arb_set()) {
        let text = canonical(&set).unwrap();
        let back: SpacingSet = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &set);
        prop_assert_eq!(canonical(&back).unwrap(), text);
    }
}

#[test]
fn lemma_corpus_verifies() {
    let config = ConstructionConfig::default();
    for (a, m) in [(vec![3u64], 3u64), (vec![4], 4), (vec![5], 5), (vec![3], 4)] {
        let a = ExplicitSet::from_u64s(a).unwrap();
        for n in [0, 1] {
            let Ok(out) = lemma_extend(&a, n, m, &config) else { continue };
            let body = Body::LemmaTranscript(out);
            assert!(accepted(&body));
            assert!(round_trips(&body));
            if n == 1 {
                let v = edited(&body, |b| {
                    let l = b["l"].as_array_mut().unwrap();
                    let last: BigUint = l[l.len() - 1].as_str().unwrap().parse().unwrap();
                    *l.last_mut().unwrap() = Value::from((last + 1u32).to_string());
                });
                assert!(matches!(v, Verification::Rejected { .. }));
            }
        }
    }
}

#[test]
fn refinement_and_refutation_tampering() {
    let p3 = SpacingSet::blocks(3).unwrap();
    let v = "100000001".parse::<Word>().unwrap().cylinder().unwrap();
    let body = Body::RefinementReport(nested_refinement(&p3, &[v.clone(), v], 1, 500).unwrap());
    assert!(accepted(&body));
    let t = edited(&body, |b| b["times"][0] = Value::from(b["times"][0].as_u64().unwrap() + 1));
    assert!(matches!(t, Verification::Rejected { .. }));

    let body = Body::RefutationReport(refute_product_transitivity(&SpacingSet::blocks(2).unwrap(), None, 5000).unwrap());
    assert!(accepted(&body));
    let t = edited(&body, |b| b["hits"] = Value::from(vec![7]));
    assert!(matches!(t, Verification::Rejected { .. }));
}
