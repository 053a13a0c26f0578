//! Each deliberately broken oracle must be caught by exactly the checker
//! aimed at its defect, and every witness must replay.

use maxmin_core::axioms::{
    check_all, check_weak_order, AxiomReport, CheckConfig, OracleSpec, PreferenceDataset, PreferenceOracle,
    RepresentedOracle,
};
use maxmin_core::credal::{CredalSet, Variant};
use maxmin_core::lp::HalfSpace;
use maxmin_core::sampling::{random_act, seeded};
use maxmin_core::types::Universe;
use maxmin_core::utility::UtilityFunction;

fn band() -> CredalSet {
    CredalSet::from_hrep(
        3,
        vec![HalfSpace::new(vec![1.0, 0.0, 0.0], 0.15), HalfSpace::new(vec![0.0, -1.0, 0.0], -0.6)],
    )
    .unwrap()
}

fn failing(reports: &[AxiomReport]) -> Vec<&str> {
    reports.iter().filter(|r| !r.passed).map(|r| r.axiom.as_str()).collect()
}

fn assert_replayable(reports: &[AxiomReport], oracle: &dyn PreferenceOracle) {
    for r in reports {
        for w in r.violations.iter().chain(&r.inconclusive).chain(&r.boundary) {
            assert!(w.replay(oracle), "{} witness from trial {} does not replay", r.axiom, w.trial);
        }
    }
}

fn run(n: usize, u: Vec<f64>, spec: OracleSpec, variant: Variant, seed: u64) -> (Vec<AxiomReport>, RepresentedOracle) {
    let universe = Universe::indexed(n, u.len()).unwrap();
    let oracle = RepresentedOracle::new(UtilityFunction::new(u).unwrap(), spec).unwrap();
    let reports = check_all(&oracle, &universe, &CheckConfig::new(2000, seed), variant).unwrap();
    (reports, oracle)
}

#[test]
fn maxmin_passes_everything() {
    let (reports, oracle) = run(3, vec![1.0, 0.3, -1.0], OracleSpec::Maxmin { set: band() }, Variant::A5, 0);
    assert!(failing(&reports).is_empty(), "{:?}", failing(&reports));
    assert_replayable(&reports, &oracle);
}

#[test]
fn distortion_breaks_only_certainty_independence() {
    let spec = OracleSpec::Distorted { set: band(), curvature: 2.0 };
    let (reports, oracle) = run(3, vec![1.0, 0.3, -1.0], spec, Variant::A5, 1);
    assert_eq!(failing(&reports), vec!["A2"]);
    assert_replayable(&reports, &oracle);
}

#[test]
fn lexicographic_breaks_only_continuity() {
    let (reports, oracle) = run(2, vec![1.0, -1.0], OracleSpec::Lexicographic, Variant::A5, 2);
    assert_eq!(failing(&reports), vec!["A3"]);
    let a3 = &reports[2];
    assert!(a3.inconclusive_count > 0 && a3.violation_count == 0);
    assert_replayable(&reports, &oracle);
}

#[test]
fn negated_state_breaks_only_monotonicity() {
    let spec = OracleSpec::NegatedState { prior: vec![0.2, 0.3, 0.5], state: 0 };
    let (reports, oracle) = run(3, vec![1.0, 0.0, -1.0], spec, Variant::A5, 3);
    assert_eq!(failing(&reports), vec!["A4"]);
    assert_replayable(&reports, &oracle);
}

#[test]
fn maxmax_breaks_only_aversion() {
    let (reports, oracle) = run(3, vec![1.0, 0.3, -1.0], OracleSpec::Maxmax { set: band() }, Variant::A5, 4);
    assert_eq!(failing(&reports), vec!["A5"]);
    assert_replayable(&reports, &oracle);
    let (reports, _) = run(3, vec![1.0, 0.3, -1.0], OracleSpec::Maxmax { set: band() }, Variant::A5Prime, 4);
    assert!(failing(&reports).is_empty());
}

#[test]
fn maxmin_dataset_is_a_complete_weak_order() {
    let universe = Universe::indexed(3, 3).unwrap();
    let oracle =
        RepresentedOracle::new(UtilityFunction::new(vec![1.0, 0.3, -1.0]).unwrap(), OracleSpec::Maxmin { set: band() })
            .unwrap();
    let mut rng = seeded(5);
    let acts = (0..10).map(|_| random_act(&mut rng, 3, 3)).collect();
    let data = PreferenceDataset::from_oracle(&oracle, universe, acts).unwrap();
    assert_eq!(data.comparisons_resolved().count(), 45);
    let r = check_weak_order(&data);
    assert_eq!(r.completeness, Some(1.0));
    assert_eq!(r.violation_count, 0);
}

#[test]
fn checks_are_deterministic_in_the_seed() {
    let a = run(3, vec![1.0, 0.3, -1.0], OracleSpec::Maxmax { set: band() }, Variant::A5, 9).0;
    let b = run(3, vec![1.0, 0.3, -1.0], OracleSpec::Maxmax { set: band() }, Variant::A5, 9).0;
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
