//! Exhaustive optimal-makespan search for small instances.
//!
//! Enumerates every machine assignment (operations ascending, machines
//! ascending within each eligible set) and, per assignment, every combination
//! of per-machine orders compatible with the precedence closure (machine 1
//! varies slowest, orders in ascending lexicographic order). The incumbent
//! only updates on strict improvement, so the reported witness is the
//! lexicographically first solution attaining the optimum. Single threaded on
//! purpose: results, including the explored counter, are bit-reproducible.

use crate::instance::{transitive_closure, Instance};
use crate::learning::{psi, LearningRate};
use crate::solution_graph::Solution;
use crate::{MachineId, OpId, ScaledTime};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleLimits {
    /// Upper bound on the estimated combination count before refusing to run.
    pub max_combinations: u128,
    /// Run even when the estimate exceeds `max_combinations`.
    pub force: bool,
    /// Hard stop after this many evaluated combinations.
    pub max_explored: Option<u64>,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_combinations: 100_000_000,
            force: false,
            max_explored: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OracleStatus {
    /// The whole space was covered; the result is the optimum.
    Proven,
    /// The explored budget ran out; the result is only an upper bound.
    LimitExceeded,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub makespan: ScaledTime,
    pub witness: Solution,
    pub explored: u64,
    pub status: OracleStatus,
}

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("estimated {estimate} combinations exceed the limit of {limit}; pass force to run anyway")]
    TooLarge { estimate: u128, limit: u128 },
    #[error("stopped after {explored} combinations before finding any feasible solution")]
    LimitBeforeFeasible { explored: u64 },
}

/// Work estimate used by the refusal guard: product of eligible-set sizes
/// times the per-machine order counts of a perfectly balanced assignment.
/// A deliberately rough yardstick, not a bound in either direction.
pub fn estimate_combinations(inst: &Instance) -> u128 {
    let mut est: u128 = 1;
    for op in inst.operations() {
        est = est.saturating_mul(op.eligible.len() as u128);
    }
    let n = inst.op_count();
    let m = inst.machine_count().max(1);
    let (q, rem) = (n / m, n % m);
    let fact = |x: usize| -> u128 {
        (2..=x as u128).fold(1u128, |acc, v| acc.saturating_mul(v))
    };
    for k in 0..m {
        est = est.saturating_mul(fact(q + usize::from(k < rem)));
    }
    est
}

pub fn brute_force_optimal(
    inst: &Instance,
    alpha: LearningRate,
    limits: OracleLimits,
) -> Result<OracleResult, OracleError> {
    let estimate = estimate_combinations(inst);
    if !limits.force && estimate > limits.max_combinations {
        return Err(OracleError::TooLarge {
            estimate,
            limit: limits.max_combinations,
        });
    }

    let n = inst.op_count();
    let m = inst.machine_count();
    let closure = transitive_closure(inst.precedence_arcs(), n)
        .expect("instance invariant guarantees a DAG");
    let mut reach: Vec<BTreeSet<OpId>> = vec![BTreeSet::new(); n + 1];
    for &(i, j) in &closure {
        reach[i].insert(j);
    }
    let choices: Vec<Vec<MachineId>> = (1..=n)
        .map(|op| inst.eligible(op).keys().copied().collect())
        .collect();

    let mut search = Search {
        inst,
        alpha,
        reach,
        preds: inst.predecessors(),
        succs: inst.successors(),
        explored: 0,
        best: None,
        psi_cache: BTreeMap::new(),
        prec_set: inst.precedence_arcs().iter().copied().collect(),
        limit_hit: false,
        max_explored: limits.max_explored,
    };
    let mut assign = vec![0usize; n + 1];
    search.assignments(&choices, 1, &mut assign, m);

    match (search.best, search.limit_hit) {
        (Some((makespan, witness)), limit_hit) => Ok(OracleResult {
            makespan,
            witness,
            explored: search.explored,
            status: if limit_hit {
                OracleStatus::LimitExceeded
            } else {
                OracleStatus::Proven
            },
        }),
        (None, true) => Err(OracleError::LimitBeforeFeasible {
            explored: search.explored,
        }),
        (None, false) => unreachable!("every valid instance has a feasible solution"),
    }
}

struct Search<'a> {
    inst: &'a Instance,
    alpha: LearningRate,
    reach: Vec<BTreeSet<OpId>>,
    preds: Vec<Vec<OpId>>,
    succs: Vec<Vec<OpId>>,
    explored: u64,
    best: Option<(ScaledTime, Solution)>,
    psi_cache: BTreeMap<(u32, u32), ScaledTime>,
    prec_set: BTreeSet<(OpId, OpId)>,
    limit_hit: bool,
    max_explored: Option<u64>,
}

impl Search<'_> {
    fn assignments(
        &mut self,
        choices: &[Vec<MachineId>],
        op: OpId,
        assign: &mut Vec<MachineId>,
        m: usize,
    ) {
        if self.limit_hit {
            return;
        }
        if op > choices.len() {
            self.sequences_for(assign, m);
            return;
        }
        for &k in &choices[op - 1] {
            assign[op] = k;
            self.assignments(choices, op + 1, assign, m);
            if self.limit_hit {
                return;
            }
        }
    }

    fn sequences_for(&mut self, assign: &[MachineId], m: usize) {
        let n = self.inst.op_count();
        let mut load: Vec<Vec<OpId>> = vec![Vec::new(); m + 1];
        for op in 1..=n {
            load[assign[op]].push(op);
        }
        // all precedence-compatible orders per machine, ascending lexicographic
        let mut orders: Vec<Vec<Vec<OpId>>> = Vec::with_capacity(m);
        for ops in load.iter().skip(1) {
            let mut out = Vec::new();
            let mut prefix = Vec::new();
            let mut rest = ops.clone();
            machine_orders(&self.reach, &mut prefix, &mut rest, &mut out);
            orders.push(out);
        }
        let mut pick = vec![0usize; m];
        loop {
            let seqs: Vec<&Vec<OpId>> = (0..m).map(|i| &orders[i][pick[i]]).collect();
            self.evaluate(assign, &seqs);
            if self.limit_hit {
                return;
            }
            // odometer over the order lists, last machine fastest
            let mut i = m;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < orders[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    fn evaluate(&mut self, assign: &[MachineId], seqs: &[&Vec<OpId>]) {
        if let Some(limit) = self.max_explored {
            if self.explored >= limit {
                self.limit_hit = true;
                return;
            }
        }
        self.explored += 1;
        let n = self.inst.op_count();
        let source = 0;
        let sink = n + 1;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 2];
        let mut indeg = vec![0usize; n + 2];
        let mut weight = vec![0 as ScaledTime; n + 2];
        for &(i, j) in &self.prec_set {
            adj[i].push(j);
            indeg[j] += 1;
        }
        for op in 1..=n {
            if self.preds[op - 1].is_empty() {
                adj[source].push(op);
                indeg[op] += 1;
            }
            if self.succs[op - 1].is_empty() {
                adj[op].push(sink);
                indeg[sink] += 1;
            }
        }
        for seq in seqs {
            for (idx, &op) in seq.iter().enumerate() {
                let p = self.inst.standard_time(op, assign[op]).unwrap();
                let key = (p, idx as u32 + 1);
                let alpha = self.alpha;
                let w = *self
                    .psi_cache
                    .entry(key)
                    .or_insert_with(|| psi(alpha, key.0, key.1));
                weight[op] = w;
                if idx > 0 {
                    let prev = seq[idx - 1];
                    if !self.prec_set.contains(&(prev, op)) {
                        adj[prev].push(op);
                        indeg[op] += 1;
                    }
                }
            }
        }
        // longest path with early abandon at the incumbent
        let mut stack: Vec<usize> = (0..n + 2).filter(|&v| indeg[v] == 0).collect();
        let mut dist = vec![0 as ScaledTime; n + 2];
        let mut seen = 0usize;
        while let Some(u) = stack.pop() {
            seen += 1;
            let done = dist[u] + weight[u];
            if let Some((best, _)) = &self.best {
                if done >= *best {
                    return; // cannot beat the incumbent
                }
            }
            for &v in &adj[u] {
                if done > dist[v] {
                    dist[v] = done;
                }
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        if seen != n + 2 {
            return; // machine orders cycle across machines
        }
        let makespan = dist[sink];
        let improves = match &self.best {
            None => true,
            Some((best, _)) => makespan < *best,
        };
        if improves {
            let solution = Solution {
                assignment: (1..=n).map(|op| (op, assign[op])).collect(),
                sequences: seqs
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (i + 1, (*s).clone()))
                    .collect(),
            };
            self.best = Some((makespan, solution));
        }
    }
}

/// Emits, in ascending lexicographic order, every order of `rest` in which no
/// operation ever follows one of its descendants.
fn machine_orders(
    reach: &[BTreeSet<OpId>],
    prefix: &mut Vec<OpId>,
    rest: &mut Vec<OpId>,
    out: &mut Vec<Vec<OpId>>,
) {
    if rest.is_empty() {
        out.push(prefix.clone());
        return;
    }
    for i in 0..rest.len() {
        let op = rest[i];
        // placing op now is illegal if it reaches something already placed
        if prefix.iter().any(|&e| reach[op].contains(&e)) {
            continue;
        }
        rest.remove(i);
        prefix.push(op);
        machine_orders(reach, prefix, rest, out);
        prefix.pop();
        rest.insert(i, op);
    }
}
