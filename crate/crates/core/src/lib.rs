//! Flexible job shop scheduling where each job's internal structure is an
//! arbitrary DAG of operations and processing times shrink with the position
//! an operation takes on its machine (a learning effect).
//!
//! The crate models instances, evaluates solutions through a weighted
//! solution graph, provides two constructive dispatching heuristics, an
//! exhaustive reference solver for tiny instances, an independent feasibility
//! validator, and emitters for position-indexed MILP and interval-based CP
//! formulations.
//!
//! All times are integers scaled by 100: an operation with standard time `p`
//! placed at position `r` of its machine occupies `psi(alpha, p, r)` scaled
//! units, and `psi(alpha, p, 1) == 100 * p`.

pub mod generator;
pub mod heuristics;
pub mod instance;
pub mod learning;
pub mod model_export;
pub mod oracle;
pub mod solution_graph;
pub mod validator;

/// 1-based operation id.
pub type OpId = usize;
/// 1-based machine id.
pub type MachineId = usize;
/// Time in hundredths of the instance's standard time unit.
pub type ScaledTime = u64;
