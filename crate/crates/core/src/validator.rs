//! Independent feasibility checking.
//!
//! The validator never touches the solution graph. It walks the machine
//! orders with one pointer per machine, starting each operation as soon as
//! its predecessors and its machine are free, so any disagreement between
//! this simulation and the graph evaluation exposes a bug in one of them.

use crate::instance::Instance;
use crate::learning::{psi, LearningRate};
use crate::solution_graph::Solution;
use crate::{MachineId, OpId, ScaledTime};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum Violation {
    #[error("operation {op} has no machine assigned")]
    MissingAssignment { op: OpId },
    #[error("solution references unknown operation {op}")]
    UnknownOp { op: OpId },
    #[error("solution references unknown machine {machine}")]
    UnknownMachine { machine: MachineId },
    #[error("operation {op} cannot run on machine {machine}")]
    Ineligible { op: OpId, machine: MachineId },
    #[error("operation {op} appears in more than one sequence slot")]
    Duplicated { op: OpId },
    #[error("operation {op} is missing from the machine orders")]
    Unsequenced { op: OpId },
    #[error("operation {op} is ordered on machine {sequenced} but assigned to {assigned}")]
    WrongMachine {
        op: OpId,
        sequenced: MachineId,
        assigned: MachineId,
    },
    #[error("operations {stuck:?} wait on each other through precedence and machine order")]
    Deadlock { stuck: Vec<OpId> },
    #[error("operation {op} starts at {start} before predecessor {pred} completes at {pred_end}")]
    StartsBeforePredecessor {
        op: OpId,
        pred: OpId,
        start: ScaledTime,
        pred_end: ScaledTime,
    },
    #[error(
        "machine {machine}: operation {second} starts at {start} while {first} runs until {first_end}"
    )]
    MachineOverlap {
        machine: MachineId,
        first: OpId,
        second: OpId,
        start: ScaledTime,
        first_end: ScaledTime,
    },
    #[error("no start time given for operation {op}")]
    MissingStart { op: OpId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub feasible: bool,
    /// Largest completion time; present only when feasible.
    pub makespan: Option<ScaledTime>,
    /// Earliest start per operation from the simulation; present only when
    /// feasible and only for the implicit-starts variant.
    pub starts: Option<BTreeMap<OpId, ScaledTime>>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn rejected(violations: Vec<Violation>) -> Self {
        ValidationReport {
            feasible: false,
            makespan: None,
            starts: None,
            violations,
        }
    }
}

/// Structure checks shared by both validation variants. Returns the slot of
/// every operation when the shape is coherent.
fn check_structure(inst: &Instance, sol: &Solution) -> Result<BTreeMap<OpId, usize>, Vec<Violation>> {
    let n = inst.op_count();
    let m = inst.machine_count();
    let mut violations = Vec::new();
    for (&op, &k) in &sol.assignment {
        if op < 1 || op > n {
            violations.push(Violation::UnknownOp { op });
            continue;
        }
        if k < 1 || k > m {
            violations.push(Violation::UnknownMachine { machine: k });
            continue;
        }
        if inst.standard_time(op, k).is_none() {
            violations.push(Violation::Ineligible { op, machine: k });
        }
    }
    for op in 1..=n {
        if !sol.assignment.contains_key(&op) {
            violations.push(Violation::MissingAssignment { op });
        }
    }
    let mut slots = BTreeMap::new();
    for (&k, seq) in &sol.sequences {
        if k < 1 || k > m {
            violations.push(Violation::UnknownMachine { machine: k });
            continue;
        }
        for (idx, &op) in seq.iter().enumerate() {
            if op < 1 || op > n {
                violations.push(Violation::UnknownOp { op });
                continue;
            }
            match sol.assignment.get(&op) {
                Some(&assigned) if assigned != k => {
                    violations.push(Violation::WrongMachine {
                        op,
                        sequenced: k,
                        assigned,
                    });
                }
                _ => {}
            }
            if slots.insert(op, idx + 1).is_some() {
                violations.push(Violation::Duplicated { op });
            }
        }
    }
    for op in 1..=n {
        if !slots.contains_key(&op) {
            violations.push(Violation::Unsequenced { op });
        }
    }
    if violations.is_empty() {
        Ok(slots)
    } else {
        Err(violations)
    }
}

/// Checks a solution and derives its earliest-start schedule.
pub fn validate(inst: &Instance, sol: &Solution, alpha: LearningRate) -> ValidationReport {
    let slots = match check_structure(inst, sol) {
        Ok(s) => s,
        Err(v) => return ValidationReport::rejected(v),
    };
    let n = inst.op_count();
    let preds = inst.predecessors();

    let mut pointer: BTreeMap<MachineId, usize> = sol.sequences.keys().map(|&k| (k, 0)).collect();
    let mut machine_free: BTreeMap<MachineId, ScaledTime> =
        sol.sequences.keys().map(|&k| (k, 0)).collect();
    let mut end: BTreeMap<OpId, ScaledTime> = BTreeMap::new();
    let mut starts: BTreeMap<OpId, ScaledTime> = BTreeMap::new();

    loop {
        let mut progressed = false;
        for (&k, seq) in &sol.sequences {
            // run every already-released operation at the pointer in one sweep
            while let Some(&op) = seq.get(pointer[&k]) {
                let ready = preds[op - 1].iter().all(|p| end.contains_key(p));
                if !ready {
                    break;
                }
                let pred_end = preds[op - 1]
                    .iter()
                    .map(|p| end[p])
                    .max()
                    .unwrap_or(0);
                let start = pred_end.max(machine_free[&k]);
                let p = inst.standard_time(op, k).unwrap();
                let done = start + psi(alpha, p, slots[&op] as u32);
                starts.insert(op, start);
                end.insert(op, done);
                machine_free.insert(k, done);
                *pointer.get_mut(&k).unwrap() += 1;
                progressed = true;
            }
        }
        if end.len() == n {
            break;
        }
        if !progressed {
            let stuck: Vec<OpId> = (1..=n).filter(|op| !end.contains_key(op)).collect();
            return ValidationReport::rejected(vec![Violation::Deadlock { stuck }]);
        }
    }

    let makespan = end.values().copied().max().unwrap_or(0);
    ValidationReport {
        feasible: true,
        makespan: Some(makespan),
        starts: Some(starts),
        violations: Vec::new(),
    }
}

/// Checks a solution together with explicit start times. Starts may include
/// idle time; they must only respect precedence and machine exclusivity.
pub fn validate_with_starts(
    inst: &Instance,
    sol: &Solution,
    alpha: LearningRate,
    starts: &BTreeMap<OpId, ScaledTime>,
) -> ValidationReport {
    let slots = match check_structure(inst, sol) {
        Ok(s) => s,
        Err(v) => return ValidationReport::rejected(v),
    };
    let n = inst.op_count();
    let mut violations = Vec::new();
    for op in 1..=n {
        if !starts.contains_key(&op) {
            violations.push(Violation::MissingStart { op });
        }
    }
    if !violations.is_empty() {
        return ValidationReport::rejected(violations);
    }
    let duration = |op: OpId| {
        let k = sol.assignment[&op];
        psi(alpha, inst.standard_time(op, k).unwrap(), slots[&op] as u32)
    };
    for &(i, j) in inst.precedence_arcs() {
        let pred_end = starts[&i] + duration(i);
        if starts[&j] < pred_end {
            violations.push(Violation::StartsBeforePredecessor {
                op: j,
                pred: i,
                start: starts[&j],
                pred_end,
            });
        }
    }
    for (&k, seq) in &sol.sequences {
        for pair in seq.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let a_end = starts[&a] + duration(a);
            if starts[&b] < a_end {
                violations.push(Violation::MachineOverlap {
                    machine: k,
                    first: a,
                    second: b,
                    start: starts[&b],
                    first_end: a_end,
                });
            }
        }
    }
    if !violations.is_empty() {
        return ValidationReport::rejected(violations);
    }
    let makespan = (1..=n).map(|op| starts[&op] + duration(op)).max().unwrap_or(0);
    ValidationReport {
        feasible: true,
        makespan: Some(makespan),
        starts: None,
        violations: Vec::new(),
    }
}

/// Convenience set used by tests to assert a report mentions an operation.
pub fn violating_ops(report: &ValidationReport) -> BTreeSet<OpId> {
    let mut out = BTreeSet::new();
    for v in &report.violations {
        match v {
            Violation::MissingAssignment { op }
            | Violation::UnknownOp { op }
            | Violation::Ineligible { op, .. }
            | Violation::Duplicated { op }
            | Violation::Unsequenced { op }
            | Violation::WrongMachine { op, .. }
            | Violation::StartsBeforePredecessor { op, .. }
            | Violation::MissingStart { op } => {
                out.insert(*op);
            }
            Violation::MachineOverlap { first, second, .. } => {
                out.insert(*first);
                out.insert(*second);
            }
            Violation::Deadlock { stuck } => out.extend(stuck.iter().copied()),
            Violation::UnknownMachine { .. } => {}
        }
    }
    out
}
