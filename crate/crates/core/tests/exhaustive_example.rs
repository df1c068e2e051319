//! Full enumeration of the 12-operation worked example. The search space is
//! 5184 assignments x up to 13824 per-machine orders, of which 1,815,392
//! survive the precedence filter. Expected values were frozen from an
//! independent reference implementation of the same enumeration order.

use fjs_core::instance::parse_instance;
use fjs_core::learning::LearningRate;
use fjs_core::oracle::{brute_force_optimal, OracleLimits, OracleStatus};
use fjs_core::solution_graph::Solution;
use std::collections::BTreeMap;

const EXAMPLE: &str = include_str!("data/worked_example.fjs");

/// Lexicographically first optimal schedule, identical for both rates below.
fn expected_witness() -> Solution {
    let assignment: BTreeMap<_, _> = [
        (1, 1),
        (2, 3),
        (3, 1),
        (4, 2),
        (5, 3),
        (6, 1),
        (7, 2),
        (8, 2),
        (9, 3),
        (10, 1),
        (11, 2),
        (12, 3),
    ]
    .into_iter()
    .collect();
    let sequences: BTreeMap<_, Vec<usize>> = [
        (1, vec![1, 3, 10, 6]),
        (2, vec![7, 8, 4, 11]),
        (3, vec![2, 9, 5, 12]),
    ]
    .into_iter()
    .collect();
    Solution {
        assignment,
        sequences,
    }
}

#[test]
fn exhaustive_search_of_the_example() {
    let inst = parse_instance(EXAMPLE).unwrap();
    let limits = OracleLimits::default();

    let flat = brute_force_optimal(&inst, LearningRate::ZERO, limits.clone()).unwrap();
    assert_eq!(flat.makespan, 8000);
    assert_eq!(flat.explored, 1_815_392);
    assert_eq!(flat.status, OracleStatus::Proven);
    assert_eq!(flat.witness, expected_witness());

    let steep = brute_force_optimal(&inst, LearningRate::new(0.5).unwrap(), limits).unwrap();
    assert_eq!(steep.makespan, 5016);
    assert_eq!(steep.explored, 1_815_392);
    assert_eq!(steep.status, OracleStatus::Proven);
    assert_eq!(steep.witness, expected_witness());
}
