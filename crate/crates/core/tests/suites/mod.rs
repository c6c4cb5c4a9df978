//! Property suites shared by the `properties` and `acceptance` test targets.
//!
//! Every suite panics on the first counterexample. Random inputs come from a
//! deterministic proptest runner so failures reproduce.

#![allow(dead_code)]

pub mod ff;
pub mod groebner;
pub mod group;
pub mod invariants;
pub mod poly;
pub mod qseries;

use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    TestRunner::new_with_rng(config, rng)
}

/// Runs `test` on `cases` samples of `strategy`, panicking with the minimal failing input.
pub fn check<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>)
where
    S::Value: std::fmt::Debug,
{
    if let Err(e) = runner(cases).run(&strategy, test) {
        panic!("{e}");
    }
}

/// Every named suite, for the acceptance harness.
pub fn all_suites() -> Vec<(&'static str, fn())> {
    vec![
        ("field axioms", ff::field_axioms),
        ("frobenius identity", ff::frobenius_identity),
        ("lucas binomials", ff::lucas_against_factorials),
        ("roots of unity", ff::roots_of_unity),
        ("nullspace", ff::nullspace_property),
        ("ring axioms", poly::ring_axioms),
        ("order multiplicativity", poly::order_multiplicativity),
        ("order compatibility", poly::order_compatibility),
        ("division identity", poly::division_identity),
        ("action composition", poly::action_composition),
        ("frobenius reduction", poly::frobenius_reduction),
        ("group structure", group::group_structure),
        ("invariance", invariants::invariance),
        ("invalid parameters", invariants::invalid_parameters),
        ("frobenius rewrite", invariants::frobenius_rewrite),
        ("subduction round trip", groebner::subduction_round_trip),
        ("ideal membership", groebner::ideal_membership),
        ("series identities", qseries::series_identities),
    ]
}
