//! Greedy constructive schedulers.
//!
//! Both rules grow one schedule operation by operation. At every step the
//! ready set holds the unscheduled operations whose predecessors all
//! completed; a rule picks one ready (operation, machine) pair, appends the
//! operation to that machine's order, and repeats. Earliest start prefers the
//! pair that can begin first and uses the position-adjusted time only to
//! break ties; earliest completion minimizes start plus position-adjusted
//! time outright. With learning in effect the two can diverge a lot, and
//! neither dominates the other.

use crate::instance::Instance;
use crate::learning::{psi, LearningRate};
use crate::solution_graph::{build_solution_graph, critical_path, CriticalPath, Solution, SolutionGraph};
use crate::{MachineId, OpId, ScaledTime};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RuleKind {
    Est,
    Ect,
}

impl std::fmt::Display for RuleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RuleKind::Est => "est",
            RuleKind::Ect => "ect",
        })
    }
}

/// A constructed schedule with its evaluation attached.
#[derive(Clone, Debug)]
pub struct HeuristicOutcome {
    pub rule: RuleKind,
    pub solution: Solution,
    pub graph: SolutionGraph,
    pub critical: CriticalPath,
}

impl HeuristicOutcome {
    pub fn makespan(&self) -> ScaledTime {
        self.critical.makespan
    }
}

fn dispatch(inst: &Instance, alpha: LearningRate, rule: RuleKind) -> HeuristicOutcome {
    let n = inst.op_count();
    let preds = inst.predecessors();
    let mut completion: BTreeMap<OpId, ScaledTime> = BTreeMap::new();
    let mut machine_free: BTreeMap<MachineId, ScaledTime> =
        (1..=inst.machine_count()).map(|k| (k, 0)).collect();
    let mut sequences: BTreeMap<MachineId, Vec<OpId>> =
        (1..=inst.machine_count()).map(|k| (k, Vec::new())).collect();
    let mut assignment: BTreeMap<OpId, MachineId> = BTreeMap::new();

    while completion.len() < n {
        // (selection value, op, machine, start, adjusted time)
        let mut pick: Option<(ScaledTime, ScaledTime, OpId, MachineId, ScaledTime, ScaledTime)> =
            None;
        for op in 1..=n {
            if completion.contains_key(&op) {
                continue;
            }
            if !preds[op - 1].iter().all(|p| completion.contains_key(p)) {
                continue;
            }
            let released = preds[op - 1]
                .iter()
                .map(|p| completion[p])
                .max()
                .unwrap_or(0);
            for (&k, &p) in inst.eligible(op) {
                let start = released.max(machine_free[&k]);
                let slot = sequences[&k].len() + 1;
                let adjusted = psi(alpha, p, slot as u32);
                let keys = match rule {
                    // start first, adjusted time as tiebreaker
                    RuleKind::Est => (start, adjusted),
                    // completion first, nothing secondary
                    RuleKind::Ect => (start + adjusted, 0),
                };
                let candidate = (keys.0, keys.1, op, k, start, adjusted);
                if pick.is_none() || candidate < pick.unwrap() {
                    pick = Some(candidate);
                }
            }
        }
        let (_, _, op, k, start, adjusted) =
            pick.expect("a DAG always has a ready operation");
        assignment.insert(op, k);
        sequences.get_mut(&k).unwrap().push(op);
        completion.insert(op, start + adjusted);
        machine_free.insert(k, start + adjusted);
    }

    let solution = Solution {
        assignment,
        sequences,
    };
    let graph = build_solution_graph(inst, &solution, alpha)
        .expect("dispatch builds structurally sound solutions");
    let critical = critical_path(&graph);
    debug_assert_eq!(
        critical.makespan,
        completion.values().copied().max().unwrap_or(0),
        "graph evaluation must agree with the dispatch simulation"
    );
    HeuristicOutcome {
        rule,
        solution,
        graph,
        critical,
    }
}

/// Earliest-start rule: schedule the pair that can begin first; among those,
/// take the smallest adjusted time, then the smallest operation id, then the
/// smallest machine id.
pub fn est_schedule(inst: &Instance, alpha: LearningRate) -> HeuristicOutcome {
    dispatch(inst, alpha, RuleKind::Est)
}

/// Earliest-completion rule: schedule the pair finishing first; ties fall to
/// the smaller operation id, then the smaller machine id.
pub fn ect_schedule(inst: &Instance, alpha: LearningRate) -> HeuristicOutcome {
    dispatch(inst, alpha, RuleKind::Ect)
}

/// Both rules side by side, keeping the shorter schedule (ties go to the
/// earliest-start rule).
#[derive(Clone, Debug)]
pub struct BestConstructive {
    pub est_makespan: ScaledTime,
    pub ect_makespan: ScaledTime,
    pub outcome: HeuristicOutcome,
}

pub fn best_constructive(inst: &Instance, alpha: LearningRate) -> BestConstructive {
    let est = est_schedule(inst, alpha);
    let ect = ect_schedule(inst, alpha);
    let (est_makespan, ect_makespan) = (est.makespan(), ect.makespan());
    let outcome = if est_makespan <= ect_makespan { est } else { ect };
    BestConstructive {
        est_makespan,
        ect_makespan,
        outcome,
    }
}
