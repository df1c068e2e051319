//! Seeded random instance generation.
//!
//! Instances come out fully reproducible: the same config always yields the
//! same instance, byte for byte under the canonical writer.

use crate::instance::{transitive_reduction, Instance, OperationSpec};
use crate::OpId;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Precedence shape of each generated job.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum JobShape {
    /// Total order: every job is a chain.
    Chain,
    /// Two chains joining into a final operation.
    Y,
    /// Random DAG, connected, with extra arcs appearing at `density`.
    Dag,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub machine_count: usize,
    pub op_count: usize,
    pub job_count: usize,
    pub shape: JobShape,
    /// Probability of each optional arc in `Dag` jobs; ignored otherwise.
    pub density: f64,
    /// Probability that an operation runs on each machine beyond its first.
    pub eligibility_prob: f64,
    /// Inclusive bounds on standard processing times.
    pub time_range: (u32, u32),
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            machine_count: 3,
            op_count: 12,
            job_count: 2,
            shape: JobShape::Dag,
            density: 0.25,
            eligibility_prob: 0.5,
            time_range: (1, 99),
        }
    }
}

pub fn generate(cfg: &GeneratorConfig) -> Instance {
    assert!(cfg.machine_count >= 1, "need at least one machine");
    assert!(cfg.op_count >= 1, "need at least one operation");
    assert!(
        (1..=cfg.op_count).contains(&cfg.job_count),
        "job count must be in 1..=op_count"
    );
    assert!((0.0..=1.0).contains(&cfg.density), "density is a probability");
    assert!(
        (0.0..=1.0).contains(&cfg.eligibility_prob),
        "eligibility_prob is a probability"
    );
    assert!(
        1 <= cfg.time_range.0 && cfg.time_range.0 <= cfg.time_range.1,
        "time range must be 1 <= lo <= hi"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut arcs: Vec<(OpId, OpId)> = Vec::new();
    let mut first = 1;
    for job in 0..cfg.job_count {
        let extra = usize::from(job < cfg.op_count % cfg.job_count);
        let q = cfg.op_count / cfg.job_count + extra;
        arcs.extend(job_arcs(&mut rng, cfg, first, q));
        first += q;
    }
    let arcs: Vec<(OpId, OpId)> = transitive_reduction(&arcs, cfg.op_count)
        .expect("generated arcs are acyclic by construction")
        .into_iter()
        .collect();

    let mut operations = Vec::with_capacity(cfg.op_count);
    let (lo, hi) = cfg.time_range;
    for id in 1..=cfg.op_count {
        let mut eligible = BTreeMap::new();
        eligible.insert(rng.gen_range(1..=cfg.machine_count), rng.gen_range(lo..=hi));
        for k in 1..=cfg.machine_count {
            if !eligible.contains_key(&k) && rng.gen_bool(cfg.eligibility_prob) {
                eligible.insert(k, rng.gen_range(lo..=hi));
            }
        }
        operations.push(OperationSpec { id, eligible });
    }

    Instance::new(cfg.machine_count, operations, arcs)
        .expect("generated instances satisfy all invariants")
}

/// Arcs of one job over consecutive ids `first..first + q`.
fn job_arcs(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig, first: OpId, q: usize) -> Vec<(OpId, OpId)> {
    let ops: Vec<OpId> = (first..first + q).collect();
    match cfg.shape {
        JobShape::Chain => ops.windows(2).map(|w| (w[0], w[1])).collect(),
        JobShape::Y => {
            if q < 3 {
                return ops.windows(2).map(|w| (w[0], w[1])).collect();
            }
            // two chains over the first q - 1 operations, both into the last
            let split = q.div_ceil(2) - 1;
            let (left, rest) = ops.split_at(split.max(1));
            let (right, join) = rest.split_at(rest.len() - 1);
            let mut arcs: Vec<(OpId, OpId)> = left.windows(2).map(|w| (w[0], w[1])).collect();
            arcs.extend(right.windows(2).map(|w| (w[0], w[1])));
            arcs.push((*left.last().unwrap(), join[0]));
            if let Some(&r) = right.last() {
                arcs.push((r, join[0]));
            }
            arcs
        }
        JobShape::Dag => {
            let mut arcs = Vec::new();
            // connectivity first: every op after the first hangs off an earlier one
            for j in 1..q {
                let i = rng.gen_range(0..j);
                arcs.push((ops[i], ops[j]));
            }
            for i in 0..q {
                for j in (i + 1)..q {
                    if !arcs.contains(&(ops[i], ops[j])) && rng.gen_bool(cfg.density) {
                        arcs.push((ops[i], ops[j]));
                    }
                }
            }
            arcs
        }
    }
}
