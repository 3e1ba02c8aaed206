//! Graphs on which the reduction's verdict differs from the exact answer.
//! They are reproducible facts about the procedure, kept as regression
//! fixtures for the audit machinery.

use eds_core::generators::random_regular;
use eds_core::harness::{audit_graph, compare_graph, ClaimFlag, CompareOptions, CompareRow};
use eds_core::oracle::solve_naive;
use eds_core::reduction::NoneReason;
use eds_core::registry::{NaiveOracle, Registry};
use eds_core::{decide_eds, encode_graph6, parse_graph6, verify_eds, Verdict, VertexSet};

/// random-regular:n=16,r=3,seed=266
const CUBIC_16: &str = "OSW?IC?CC?aKOC@_dC?HO";

#[test]
fn fixture_matches_generator() {
    assert_eq!(encode_graph6(&random_regular(16, 3, 266).unwrap()), CUBIC_16);
}

#[test]
fn procedure_misses_a_unique_eds() {
    let g = parse_graph6(CUBIC_16).unwrap();
    let expected = VertexSet::from_ids(16, [4, 10, 11, 13]);
    assert!(verify_eds(&g, &expected).unwrap());
    assert_eq!(solve_naive(&g).unwrap().solutions, vec![expected.clone()]);

    let d = decide_eds(&g).unwrap();
    assert_eq!(d.verdict, Verdict::NoneExists(NoneReason::CandidatesExhausted));
    assert_eq!(d.commits.len(), 1);
    let commit = &d.commits[0];
    assert_eq!(commit.anchor, 2);
    assert!(!commit.survivors.is_empty());
    assert!(!expected.contains(commit.anchor));
    assert!(expected.is_subset(&commit.input));
}

#[test]
fn audits_flag_the_converse_violation() {
    let g = parse_graph6(CUBIC_16).unwrap();
    let row = audit_graph(&g, None, &NaiveOracle, &(1..=20).collect::<Vec<_>>()).unwrap();
    assert_eq!(row.soundness_violations(), 0);
    let v = &row.prop24_converse_violations[0];
    assert_eq!((v.graph6.as_str(), v.anchor), (CUBIC_16, 2));
    assert_eq!(v.survivors, vec![2, 5, 7, 9, 11, 12, 15]);

    let reg = Registry::default();
    let out = compare_graph(
        &g,
        None,
        reg.decider("smallest-id").unwrap().as_ref(),
        reg.oracle("exact").unwrap().as_ref(),
        &CompareOptions::default(),
    )
    .unwrap();
    let CompareRow::Record(r) = &out.row else { panic!("skip row") };
    assert!(!r.agree);
    assert!(out.is_counterexample());
    assert_eq!(r.claim_audit_flags, vec![ClaimFlag::Prop24ConverseViolation, ClaimFlag::CandidatesExhausted]);
}
