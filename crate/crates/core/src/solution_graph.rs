//! Solution representation and the weighted DAG used to evaluate it.
//!
//! A solution fixes one eligible machine per operation and a processing order
//! on every machine. The evaluation graph has one vertex per operation plus a
//! source and a sink; arcs are the precedence arcs, machine arcs between
//! consecutive operations in each machine order, source arcs into operations
//! with no predecessor, and sink arcs out of operations with no successor.
//! Vertex weights are the position-adjusted times, so the makespan is the
//! longest source-to-sink path.

use crate::instance::Instance;
use crate::learning::{psi, LearningRate};
use crate::{MachineId, OpId, ScaledTime};
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use thiserror::Error;

/// Machine choice and per-machine processing orders.
///
/// `sequences` may omit machines with no work; the ones listed must partition
/// the assigned operations in assignment-consistent order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub assignment: BTreeMap<OpId, MachineId>,
    pub sequences: BTreeMap<MachineId, Vec<OpId>>,
}

impl Solution {
    /// Machine and 1-based slot of `op`, scanning the sequences.
    pub fn position_of(&self, op: OpId) -> Option<(MachineId, usize)> {
        for (&k, seq) in &self.sequences {
            if let Some(idx) = seq.iter().position(|&o| o == op) {
                return Some((k, idx + 1));
            }
        }
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Vertex {
    Source,
    Op(OpId),
    Sink,
}

#[derive(Debug, Error, PartialEq)]
pub enum SolutionGraphError {
    #[error("operation {op} has no machine assigned")]
    MissingAssignment { op: OpId },
    #[error("unknown operation {op} in the solution")]
    UnknownOp { op: OpId },
    #[error("unknown machine {machine} in the solution")]
    UnknownMachine { machine: MachineId },
    #[error("operation {op} is not eligible on machine {machine}")]
    IneligibleMachine { op: OpId, machine: MachineId },
    #[error("operation {op} appears more than once in the machine orders")]
    DuplicateInSequence { op: OpId },
    #[error("operation {op} is assigned but missing from its machine order")]
    NotInSequence { op: OpId },
    #[error("operation {op} is sequenced on machine {sequenced} but assigned to {assigned}")]
    SequenceAssignmentMismatch {
        op: OpId,
        sequenced: MachineId,
        assigned: MachineId,
    },
    #[error("precedence and machine orders form a cycle: {cycle:?}")]
    Cycle { cycle: Vec<OpId> },
}

/// The evaluation DAG of one solution. Construction validates the solution's
/// structure and acyclicity, so every instance of this type is evaluable.
#[derive(Clone, Debug)]
pub struct SolutionGraph {
    op_count: usize,
    machine_count: usize,
    adjacency: BTreeMap<Vertex, Vec<Vertex>>,
    reverse: BTreeMap<Vertex, Vec<Vertex>>,
    weights: BTreeMap<Vertex, ScaledTime>,
    positions: BTreeMap<OpId, usize>,
    solution: Solution,
}

impl SolutionGraph {
    pub fn op_count(&self) -> usize {
        self.op_count
    }

    pub fn machine_count(&self) -> usize {
        self.machine_count
    }

    pub fn solution(&self) -> &Solution {
        &self.solution
    }

    pub fn weight(&self, v: Vertex) -> ScaledTime {
        self.weights.get(&v).copied().unwrap_or(0)
    }

    pub fn successors(&self, v: Vertex) -> &[Vertex] {
        self.adjacency.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn predecessors(&self, v: Vertex) -> &[Vertex] {
        self.reverse.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    /// 1-based slot of `op` on its machine.
    pub fn position(&self, op: OpId) -> usize {
        self.positions[&op]
    }

    pub fn machine(&self, op: OpId) -> MachineId {
        self.solution.assignment[&op]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::once(Vertex::Source)
            .chain((1..=self.op_count).map(Vertex::Op))
            .chain(std::iter::once(Vertex::Sink))
    }

    /// Copy of the graph with the weight of `v` replaced. Arcs are untouched,
    /// so this is only meaningful for what-if probes on operation vertices.
    pub fn with_weight(&self, v: Vertex, w: ScaledTime) -> SolutionGraph {
        let mut g = self.clone();
        g.weights.insert(v, w);
        g
    }
}

pub fn build_solution_graph(
    inst: &Instance,
    solution: &Solution,
    alpha: LearningRate,
) -> Result<SolutionGraph, SolutionGraphError> {
    let n = inst.op_count();
    let m = inst.machine_count();

    for (&op, &k) in &solution.assignment {
        if op < 1 || op > n {
            return Err(SolutionGraphError::UnknownOp { op });
        }
        if k < 1 || k > m {
            return Err(SolutionGraphError::UnknownMachine { machine: k });
        }
        if inst.standard_time(op, k).is_none() {
            return Err(SolutionGraphError::IneligibleMachine { op, machine: k });
        }
    }
    for op in 1..=n {
        if !solution.assignment.contains_key(&op) {
            return Err(SolutionGraphError::MissingAssignment { op });
        }
    }

    let mut positions = BTreeMap::new();
    for (&k, seq) in &solution.sequences {
        if k < 1 || k > m {
            return Err(SolutionGraphError::UnknownMachine { machine: k });
        }
        for (idx, &op) in seq.iter().enumerate() {
            if op < 1 || op > n {
                return Err(SolutionGraphError::UnknownOp { op });
            }
            let assigned = solution.assignment[&op];
            if assigned != k {
                return Err(SolutionGraphError::SequenceAssignmentMismatch {
                    op,
                    sequenced: k,
                    assigned,
                });
            }
            if positions.insert(op, idx + 1).is_some() {
                return Err(SolutionGraphError::DuplicateInSequence { op });
            }
        }
    }
    for op in 1..=n {
        if !positions.contains_key(&op) {
            return Err(SolutionGraphError::NotInSequence { op });
        }
    }

    let mut adjacency: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    let add = |a: Vertex, b: Vertex, adj: &mut BTreeMap<Vertex, BTreeSet<Vertex>>| {
        adj.entry(a).or_default().insert(b);
    };
    for &(i, j) in inst.precedence_arcs() {
        add(Vertex::Op(i), Vertex::Op(j), &mut adjacency);
    }
    for seq in solution.sequences.values() {
        for pair in seq.windows(2) {
            add(Vertex::Op(pair[0]), Vertex::Op(pair[1]), &mut adjacency);
        }
    }
    let preds = inst.predecessors();
    let succs = inst.successors();
    for op in 1..=n {
        if preds[op - 1].is_empty() {
            add(Vertex::Source, Vertex::Op(op), &mut adjacency);
        }
        if succs[op - 1].is_empty() {
            add(Vertex::Op(op), Vertex::Sink, &mut adjacency);
        }
    }

    if let Some(cycle) = op_cycle(&adjacency, n) {
        return Err(SolutionGraphError::Cycle { cycle });
    }

    let mut weights = BTreeMap::new();
    weights.insert(Vertex::Source, 0);
    weights.insert(Vertex::Sink, 0);
    for op in 1..=n {
        let k = solution.assignment[&op];
        let p = inst.standard_time(op, k).unwrap();
        weights.insert(Vertex::Op(op), psi(alpha, p, positions[&op] as u32));
    }

    let adjacency: BTreeMap<Vertex, Vec<Vertex>> = adjacency
        .into_iter()
        .map(|(v, set)| (v, set.into_iter().collect()))
        .collect();
    let mut reverse: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for (&v, outs) in &adjacency {
        for &w in outs {
            reverse.entry(w).or_default().push(v);
        }
    }
    for outs in reverse.values_mut() {
        outs.sort_unstable();
    }

    Ok(SolutionGraph {
        op_count: n,
        machine_count: m,
        adjacency,
        reverse,
        weights,
        positions,
        solution: solution.clone(),
    })
}

/// A directed cycle among operation vertices, if one exists.
fn op_cycle(adjacency: &BTreeMap<Vertex, BTreeSet<Vertex>>, n: usize) -> Option<Vec<OpId>> {
    let mut arcs = Vec::new();
    for (v, outs) in adjacency {
        if let Vertex::Op(i) = *v {
            for w in outs {
                if let Vertex::Op(j) = *w {
                    arcs.push((i, j));
                }
            }
        }
    }
    crate::instance::find_cycle(&arcs, n)
}

/// Deterministic topological order: repeatedly releases the smallest ready
/// vertex (source first, then operations by id, sink last).
pub fn topological_sort(g: &SolutionGraph) -> Vec<Vertex> {
    let mut indeg: BTreeMap<Vertex, usize> = g.vertices().map(|v| (v, 0)).collect();
    for v in g.vertices() {
        for &w in g.successors(v) {
            *indeg.get_mut(&w).unwrap() += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<Vertex>> = indeg
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&v, _)| Reverse(v))
        .collect();
    let mut order = Vec::with_capacity(g.op_count() + 2);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for &w in g.successors(v) {
            let d = indeg.get_mut(&w).unwrap();
            *d -= 1;
            if *d == 0 {
                heap.push(Reverse(w));
            }
        }
    }
    debug_assert_eq!(order.len(), g.op_count() + 2, "graph is validated acyclic");
    order
}

/// Longest-path evaluation of a solution graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPath {
    /// Longest source-to-sink path length.
    pub makespan: ScaledTime,
    /// Operations of one longest path, in path order. Deterministic: among
    /// equally long predecessors the one released earliest wins.
    pub ops: Vec<OpId>,
    /// Per machine (index `k - 1`): largest sequence slot holding an
    /// operation of `ops`, or 0 when the machine has none.
    pub tau: Vec<usize>,
    /// Earliest start per operation.
    pub starts: BTreeMap<OpId, ScaledTime>,
    /// Earliest completion per operation.
    pub completions: BTreeMap<OpId, ScaledTime>,
}

pub fn critical_path(g: &SolutionGraph) -> CriticalPath {
    let order = topological_sort(g);
    let mut best: BTreeMap<Vertex, (ScaledTime, Option<Vertex>)> = BTreeMap::new();
    let mut completion: BTreeMap<Vertex, ScaledTime> = BTreeMap::new();
    for &v in &order {
        let (start, _) = best.get(&v).copied().unwrap_or((0, None));
        let done = start + g.weight(v);
        completion.insert(v, done);
        for &w in g.successors(v) {
            let replace = match best.get(&w) {
                None => true,
                Some(&(b, _)) => done > b,
            };
            if replace {
                best.insert(w, (done, Some(v)));
            }
        }
    }
    let makespan = completion[&Vertex::Sink];
    let mut ops = Vec::new();
    let mut cur = Vertex::Sink;
    while let Some(&(_, Some(prev))) = best.get(&cur) {
        if let Vertex::Op(op) = prev {
            ops.push(op);
        }
        cur = prev;
    }
    ops.reverse();
    let mut tau = vec![0usize; g.machine_count()];
    for &op in &ops {
        let k = g.machine(op);
        tau[k - 1] = tau[k - 1].max(g.position(op));
    }
    let mut starts = BTreeMap::new();
    let mut completions = BTreeMap::new();
    for op in 1..=g.op_count() {
        let v = Vertex::Op(op);
        let (s, _) = best.get(&v).copied().unwrap_or((0, None));
        starts.insert(op, s);
        completions.insert(op, completion[&v]);
    }
    CriticalPath {
        makespan,
        ops,
        tau,
        starts,
        completions,
    }
}

/// Vertices reachable from each vertex by one or more arcs.
pub fn reach_sets(g: &SolutionGraph) -> BTreeMap<Vertex, BTreeSet<Vertex>> {
    let mut out = BTreeMap::new();
    for v in g.vertices() {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<Vertex> = g.successors(v).to_vec();
        while let Some(u) = stack.pop() {
            if seen.insert(u) {
                stack.extend(g.successors(u).iter().copied());
            }
        }
        out.insert(v, seen);
    }
    out
}

/// Schedule table of a solution, one row per operation, ordered by machine
/// then slot. `critical` flags membership in the reported longest path.
pub fn gantt_csv(g: &SolutionGraph) -> String {
    let cp = critical_path(g);
    let on_path: BTreeSet<OpId> = cp.ops.iter().copied().collect();
    let mut out = String::from("op,machine,position,start,actual_time,end,critical\n");
    for (&k, seq) in &g.solution().sequences {
        for &op in seq {
            let w = g.weight(Vertex::Op(op));
            let s = cp.starts[&op];
            out.push_str(&format!(
                "{op},{k},{},{s},{w},{},{}\n",
                g.position(op),
                s + w,
                u8::from(on_path.contains(&op))
            ));
        }
    }
    out
}
