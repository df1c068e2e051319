//! Instance model and the canonical on-disk formats.
//!
//! An instance is a set of operations with per-machine standard times plus a
//! precedence relation that must be a DAG. Jobs are not stored: they are the
//! weakly connected components of the precedence graph.
//!
//! Canonical text format (whitespace separated, `#` starts a comment):
//!
//! ```text
//! <op_count> <machine_count> <arc_count>
//! <op_id> <e> <k_1> <p_1> ... <k_e> <p_e>     (one line per operation)
//! <i> <j>                                     (one line per precedence arc)
//! ```
//!
//! Ids are 1-based. A JSON mirror of the same data is provided through serde.

use crate::{MachineId, OpId};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum InstanceError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("operation {op}: no eligible machines")]
    EmptyEligible { op: OpId },
    #[error("operation {op}: machine {machine} outside 1..={machine_count}")]
    InvalidMachine {
        op: OpId,
        machine: MachineId,
        machine_count: usize,
    },
    #[error("operation {op}: standard time on machine {machine} must be >= 1")]
    ZeroTime { op: OpId, machine: MachineId },
    #[error("operation ids must be exactly 1..=n; problem near id {op}")]
    BadOperationIds { op: OpId },
    #[error("arc ({i}, {j}) references an unknown operation", i = arc.0, j = arc.1)]
    InvalidArcEndpoint { arc: (OpId, OpId) },
    #[error("arc ({op}, {op}) is a self loop")]
    SelfLoop { op: OpId },
    #[error("duplicate arc ({i}, {j})", i = arc.0, j = arc.1)]
    DuplicateArc { arc: (OpId, OpId) },
    #[error("precedence relation contains a cycle: {cycle:?}")]
    Cycle { cycle: Vec<OpId> },
}

/// One operation: its id and the standard times on its eligible machines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationSpec {
    pub id: OpId,
    /// machine -> standard (unscaled) processing time
    pub eligible: BTreeMap<MachineId, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceData", into = "InstanceData")]
pub struct Instance {
    machine_count: usize,
    operations: Vec<OperationSpec>,
    precedence_arcs: Vec<(OpId, OpId)>,
}

/// Serde mirror without invariants; conversion into `Instance` validates.
#[derive(Clone, Serialize, Deserialize)]
struct InstanceData {
    machine_count: usize,
    operations: Vec<OperationSpec>,
    precedence_arcs: Vec<(OpId, OpId)>,
}

impl TryFrom<InstanceData> for Instance {
    type Error = InstanceError;
    fn try_from(d: InstanceData) -> Result<Self, Self::Error> {
        Instance::new(d.machine_count, d.operations, d.precedence_arcs)
    }
}

impl From<Instance> for InstanceData {
    fn from(i: Instance) -> Self {
        InstanceData {
            machine_count: i.machine_count,
            operations: i.operations,
            precedence_arcs: i.precedence_arcs,
        }
    }
}

impl Instance {
    /// Validates all structural invariants: ids are 1..=n, every eligible set
    /// is nonempty with in-range machines and positive times, arcs join known
    /// distinct operations without duplicates, and the relation is acyclic.
    pub fn new(
        machine_count: usize,
        mut operations: Vec<OperationSpec>,
        mut precedence_arcs: Vec<(OpId, OpId)>,
    ) -> Result<Self, InstanceError> {
        operations.sort_by_key(|o| o.id);
        let n = operations.len();
        for (idx, op) in operations.iter().enumerate() {
            if op.id != idx + 1 {
                return Err(InstanceError::BadOperationIds { op: op.id });
            }
            if op.eligible.is_empty() {
                return Err(InstanceError::EmptyEligible { op: op.id });
            }
            for (&k, &p) in &op.eligible {
                if k < 1 || k > machine_count {
                    return Err(InstanceError::InvalidMachine {
                        op: op.id,
                        machine: k,
                        machine_count,
                    });
                }
                if p < 1 {
                    return Err(InstanceError::ZeroTime {
                        op: op.id,
                        machine: k,
                    });
                }
            }
        }
        precedence_arcs.sort_unstable();
        let mut seen = BTreeSet::new();
        for &(i, j) in &precedence_arcs {
            if i < 1 || i > n || j < 1 || j > n {
                return Err(InstanceError::InvalidArcEndpoint { arc: (i, j) });
            }
            if i == j {
                return Err(InstanceError::SelfLoop { op: i });
            }
            if !seen.insert((i, j)) {
                return Err(InstanceError::DuplicateArc { arc: (i, j) });
            }
        }
        if let Some(cycle) = find_cycle(&precedence_arcs, n) {
            return Err(InstanceError::Cycle { cycle });
        }
        Ok(Instance {
            machine_count,
            operations,
            precedence_arcs,
        })
    }

    pub fn machine_count(&self) -> usize {
        self.machine_count
    }

    pub fn op_count(&self) -> usize {
        self.operations.len()
    }

    pub fn operations(&self) -> &[OperationSpec] {
        &self.operations
    }

    pub fn precedence_arcs(&self) -> &[(OpId, OpId)] {
        &self.precedence_arcs
    }

    /// Eligible machines and standard times of `op` (1-based, must exist).
    pub fn eligible(&self, op: OpId) -> &BTreeMap<MachineId, u32> {
        &self.operations[op - 1].eligible
    }

    /// Standard time of `op` on machine `k`, if eligible.
    pub fn standard_time(&self, op: OpId, k: MachineId) -> Option<u32> {
        self.operations[op - 1].eligible.get(&k).copied()
    }

    pub fn sum_eligible(&self) -> usize {
        self.operations.iter().map(|o| o.eligible.len()).sum()
    }

    /// Direct predecessors per operation (index `op - 1`).
    pub fn predecessors(&self) -> Vec<Vec<OpId>> {
        let mut preds = vec![Vec::new(); self.op_count()];
        for &(i, j) in &self.precedence_arcs {
            preds[j - 1].push(i);
        }
        preds
    }

    /// Direct successors per operation (index `op - 1`).
    pub fn successors(&self) -> Vec<Vec<OpId>> {
        let mut succs = vec![Vec::new(); self.op_count()];
        for &(i, j) in &self.precedence_arcs {
            succs[i - 1].push(j);
        }
        succs
    }
}

// ---------------------------------------------------------------- text format

pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let syntax = |line: usize, message: String| InstanceError::Syntax { line, message };
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let nums: Result<Vec<usize>, _> = body.split_whitespace().map(|t| t.parse()).collect();
        match nums {
            Ok(v) => rows.push((idx + 1, v)),
            Err(_) => return Err(syntax(idx + 1, format!("expected integers, got {body:?}"))),
        }
    }
    let mut it = rows.into_iter();
    let (hline, header) = it
        .next()
        .ok_or_else(|| syntax(0, "empty instance".into()))?;
    let &[n, m, a] = header.as_slice() else {
        return Err(syntax(
            hline,
            "header must be <op_count> <machine_count> <arc_count>".into(),
        ));
    };
    let mut operations = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, row) = it
            .next()
            .ok_or_else(|| syntax(0, format!("expected {n} operation lines")))?;
        if row.len() < 2 {
            return Err(syntax(line, "operation line too short".into()));
        }
        let (id, e) = (row[0], row[1]);
        if row.len() != 2 + 2 * e {
            return Err(syntax(
                line,
                format!("operation {id} declares {e} machines but line has {} fields", row.len()),
            ));
        }
        let mut eligible = BTreeMap::new();
        for pair in row[2..].chunks(2) {
            let (k, p) = (pair[0], pair[1]);
            let p32 = u32::try_from(p)
                .map_err(|_| syntax(line, format!("time {p} out of range")))?;
            if eligible.insert(k, p32).is_some() {
                return Err(syntax(line, format!("machine {k} listed twice for operation {id}")));
            }
        }
        operations.push(OperationSpec { id, eligible });
    }
    let mut arcs = Vec::with_capacity(a);
    for _ in 0..a {
        let (line, row) = it
            .next()
            .ok_or_else(|| syntax(0, format!("expected {a} arc lines")))?;
        let &[i, j] = row.as_slice() else {
            return Err(syntax(line, "arc line must be <i> <j>".into()));
        };
        arcs.push((i, j));
    }
    if let Some((line, _)) = it.next() {
        return Err(syntax(line, "trailing content after arc list".into()));
    }
    Instance::new(m, operations, arcs)
}

/// Canonical text rendering; `parse_instance(&write_instance(i)) == i`.
pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} {} {}\n",
        inst.op_count(),
        inst.machine_count(),
        inst.precedence_arcs().len()
    ));
    for op in inst.operations() {
        out.push_str(&format!("{} {}", op.id, op.eligible.len()));
        for (k, p) in &op.eligible {
            out.push_str(&format!(" {k} {p}"));
        }
        out.push('\n');
    }
    for (i, j) in inst.precedence_arcs() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}

// ------------------------------------------------------------ graph analysis

fn adjacency(arcs: &[(OpId, OpId)], n: usize) -> Vec<Vec<OpId>> {
    let mut adj = vec![Vec::new(); n + 1];
    for &(i, j) in arcs {
        adj[i].push(j);
    }
    adj
}

/// One cycle of the relation, if any (ops in traversal order).
pub(crate) fn find_cycle(arcs: &[(OpId, OpId)], n: usize) -> Option<Vec<OpId>> {
    let adj = adjacency(arcs, n);
    // 0 = white, 1 = on stack, 2 = done
    let mut color = vec![0u8; n + 1];
    let mut parent = vec![0usize; n + 1];
    for start in 1..=n {
        if color[start] != 0 {
            continue;
        }
        // iterative DFS keeping an explicit edge stack
        let mut stack = vec![(start, 0usize)];
        color[start] = 1;
        while let Some(&(v, next)) = stack.last() {
            if next < adj[v].len() {
                stack.last_mut().unwrap().1 += 1;
                let w = adj[v][next];
                match color[w] {
                    0 => {
                        color[w] = 1;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    1 => {
                        // back edge v -> w closes a cycle w ... v
                        let mut cycle = vec![v];
                        let mut cur = v;
                        while cur != w {
                            cur = parent[cur];
                            cycle.push(cur);
                        }
                        cycle.reverse();
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                color[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

fn reachable_from(adj: &[Vec<OpId>], start: OpId, n: usize) -> Vec<bool> {
    let mut seen = vec![false; n + 1];
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// All pairs (i, j) with a directed path i -> j. Errors on cyclic input.
pub fn transitive_closure(
    arcs: &[(OpId, OpId)],
    op_count: usize,
) -> Result<BTreeSet<(OpId, OpId)>, InstanceError> {
    if let Some(cycle) = find_cycle(arcs, op_count) {
        return Err(InstanceError::Cycle { cycle });
    }
    let adj = adjacency(arcs, op_count);
    let mut out = BTreeSet::new();
    for i in 1..=op_count {
        let seen = reachable_from(&adj, i, op_count);
        for (j, hit) in seen.iter().enumerate().skip(1) {
            if *hit {
                out.insert((i, j));
            }
        }
    }
    Ok(out)
}

/// The unique minimal arc set with the same closure (input must be a DAG).
pub fn transitive_reduction(
    arcs: &[(OpId, OpId)],
    op_count: usize,
) -> Result<BTreeSet<(OpId, OpId)>, InstanceError> {
    let closure = transitive_closure(arcs, op_count)?;
    let mut kept: BTreeSet<(OpId, OpId)> = arcs.iter().copied().collect();
    // (i, j) is redundant iff some other successor of i reaches j
    let direct: Vec<(OpId, OpId)> = kept.iter().copied().collect();
    for (i, j) in direct {
        let redundant = kept
            .iter()
            .filter(|&&(a, _)| a == i)
            .any(|&(_, w)| w != j && closure.contains(&(w, j)));
        if redundant {
            kept.remove(&(i, j));
        }
    }
    Ok(kept)
}

/// Weakly connected components of the precedence graph, i.e. the jobs.
/// Components are sorted by smallest member; members are sorted.
pub fn jobs(inst: &Instance) -> Vec<Vec<OpId>> {
    let n = inst.op_count();
    let mut und = vec![Vec::new(); n + 1];
    for &(i, j) in inst.precedence_arcs() {
        und[i].push(j);
        und[j].push(i);
    }
    let mut comp = vec![0usize; n + 1];
    let mut components = Vec::new();
    for start in 1..=n {
        if comp[start] != 0 {
            continue;
        }
        let id = components.len() + 1;
        let mut members = vec![start];
        comp[start] = id;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in &und[u] {
                if comp[v] == 0 {
                    comp[v] = id;
                    members.push(v);
                    stack.push(v);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}

// ------------------------------------------------------------ flexibility

/// Sequencing and routing flexibility of an instance.
///
/// `omega1` averages per-job sequencing flexibility: a job whose closure has
/// `a` arcs over `q` operations scores `1 - (a - (q-1)) / (q(q-1)/2 - (q-1))`,
/// which is 1 for tree-like jobs and 0 for totally ordered ones. Jobs with
/// fewer than 3 operations admit a single closure size, so the ratio is 0/0;
/// they score 1 (no optional rigidity).
///
/// `omega2 = (sum |F_i| - |O|) / (|O| |F| - |O|)` measures routing choice:
/// 0 when every operation has one eligible machine, 1 when all are eligible
/// everywhere. Defined as 0 for single-machine instances.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlexibilityReport {
    pub op_count: usize,
    pub machine_count: usize,
    pub job_count: usize,
    pub arc_count: usize,
    pub sum_eligible: usize,
    pub omega1: f64,
    pub per_job_omega1: Vec<f64>,
    pub omega2: f64,
}

pub fn flexibility(inst: &Instance) -> FlexibilityReport {
    let closure = transitive_closure(inst.precedence_arcs(), inst.op_count())
        .expect("instance invariant guarantees a DAG");
    let comps = jobs(inst);
    let mut per_job = Vec::with_capacity(comps.len());
    for members in &comps {
        let q = members.len();
        if q <= 2 {
            per_job.push(1.0);
            continue;
        }
        let inside: BTreeSet<OpId> = members.iter().copied().collect();
        let a = closure
            .iter()
            .filter(|(i, _)| inside.contains(i))
            .count();
        let a_min = (q - 1) as f64;
        let a_max = (q * (q - 1) / 2) as f64;
        per_job.push(1.0 - (a as f64 - a_min) / (a_max - a_min));
    }
    let omega1 = per_job.iter().sum::<f64>() / per_job.len().max(1) as f64;
    let n = inst.op_count();
    let f = inst.machine_count();
    let omega2 = if f <= 1 {
        0.0
    } else {
        (inst.sum_eligible() - n) as f64 / ((n * f - n) as f64)
    };
    FlexibilityReport {
        op_count: n,
        machine_count: f,
        job_count: comps.len(),
        arc_count: inst.precedence_arcs().len(),
        sum_eligible: inst.sum_eligible(),
        omega1,
        per_job_omega1: per_job,
        omega2,
    }
}

/// Table-style display rounding: half away from zero at two decimals.
pub fn round_half_up_2dp(x: f64) -> f64 {
    (x * 100.0 + 0.5).floor() / 100.0
}

#[cfg(test)]
pub(crate) const WORKED_EXAMPLE: &str = include_str!("../tests/data/worked_example.fjs");
