//! Acceptance gate: one test per shipping criterion, each printing a
//! `ACCEPTANCE <n> (<label>): pass|fail` line (visible with --nocapture).

mod corpus;

use corpus::{stand_in, tiny_instance, BENCHMARK_SHAPES};
use fjs_core::heuristics::{best_constructive, ect_schedule, est_schedule};
use fjs_core::instance::{
    flexibility, parse_instance, round_half_up_2dp, Instance, OperationSpec,
};
use fjs_core::learning::{psi, LearningRate};
use fjs_core::model_export::{
    count_model_sizes, emit_cp, emit_milp, emit_warm_start, violated_rows,
};
use fjs_core::oracle::{brute_force_optimal, OracleLimits, OracleStatus};
use fjs_core::solution_graph::Solution;
use fjs_core::validator::validate;
use fjs_core::{MachineId, OpId};
use std::panic::AssertUnwindSafe;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

const EXAMPLE: &str = include_str!("../../../core/tests/data/worked_example.fjs");
const PSI_FIXTURE: &str = include_str!("../../../core/tests/data/psi_oracle.csv");

fn criterion(number: u8, label: &str, body: impl FnOnce()) {
    match std::panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("ACCEPTANCE {number} ({label}): pass"),
        Err(cause) => {
            println!("ACCEPTANCE {number} ({label}): fail");
            std::panic::resume_unwind(cause);
        }
    }
}

fn example() -> Instance {
    parse_instance(EXAMPLE).unwrap()
}

fn rate(x: f64) -> LearningRate {
    LearningRate::new(x).unwrap()
}

fn solution(assign: &[(OpId, MachineId)], seqs: &[(MachineId, &[OpId])]) -> Solution {
    Solution {
        assignment: assign.iter().copied().collect(),
        sequences: seqs.iter().map(|&(k, s)| (k, s.to_vec())).collect(),
    }
}

/// Known optimal schedule of the example without a learning effect.
fn reference_schedule_flat() -> Solution {
    solution(
        &[
            (1, 3),
            (2, 3),
            (3, 1),
            (4, 2),
            (5, 3),
            (6, 1),
            (7, 2),
            (8, 1),
            (9, 3),
            (10, 3),
            (11, 2),
            (12, 3),
        ],
        &[(1, &[3, 8, 6]), (2, &[7, 4, 11]), (3, &[1, 2, 9, 10, 5, 12])],
    )
}

/// Known optimal schedule of the example at rate 0.5.
fn reference_schedule_learning() -> Solution {
    solution(
        &[
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
        ],
        &[(1, &[1, 3, 10, 6]), (2, &[7, 8, 4, 11]), (3, &[2, 9, 5, 12])],
    )
}

#[test]
fn criterion_1_reference_schedule_without_learning() {
    criterion(1, "no-learning reference schedule scores 8000", || {
        let inst = example();
        let sol = reference_schedule_flat();
        let report = validate(&inst, &sol, LearningRate::ZERO);
        assert!(report.feasible, "violations: {:?}", report.violations);
        assert_eq!(report.makespan, Some(8000));
        // fastest of five runs comfortably under a millisecond
        let best = (0..5)
            .map(|_| {
                let started = Instant::now();
                let r = validate(&inst, &sol, LearningRate::ZERO);
                assert!(r.feasible);
                started.elapsed()
            })
            .min()
            .unwrap();
        assert!(best < Duration::from_millis(1), "took {best:?}");
    });
}

#[test]
fn criterion_2_reference_schedule_with_learning_and_exact_search() {
    criterion(2, "rate-0.5 reference schedule scores 5016 and is optimal", || {
        let inst = example();
        let report = validate(&inst, &reference_schedule_learning(), rate(0.5));
        assert!(report.feasible, "violations: {:?}", report.violations);
        assert_eq!(report.makespan, Some(5016));

        let started = Instant::now();
        let opt = brute_force_optimal(&inst, rate(0.5), OracleLimits::default()).unwrap();
        assert_eq!(opt.makespan, 5016);
        assert_eq!(opt.status, OracleStatus::Proven);
        assert!(started.elapsed() < Duration::from_secs(600));
    });
}

#[test]
fn criterion_3_learning_function_point_values() {
    criterion(3, "position discounts match the extended-precision table", || {
        assert_eq!(psi(rate(0.5), 10, 2), 707);
        assert_eq!(psi(rate(0.5), 30, 3), 1732);
        let mut rows = 0;
        for line in PSI_FIXTURE.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            let alpha: f64 = fields[0].parse().unwrap();
            let p: u32 = fields[1].parse().unwrap();
            let r: u32 = fields[2].parse().unwrap();
            let expect: u64 = fields[3].parse().unwrap();
            assert_eq!(
                psi(rate(alpha), p, r),
                expect,
                "psi({alpha}, {p}, {r})"
            );
            rows += 1;
        }
        assert_eq!(rows, 10_000);
    });
}

fn uniform_ops(n: usize, machines: &[MachineId]) -> Vec<OperationSpec> {
    (1..=n)
        .map(|id| OperationSpec {
            id,
            eligible: machines.iter().map(|&k| (k, 10)).collect(),
        })
        .collect()
}

#[test]
fn criterion_4_flexibility_measures() {
    criterion(4, "sequencing/routing flexibility measures", || {
        // chain job on one machine: no sequencing freedom, no routing freedom
        let chain = Instance::new(
            1,
            uniform_ops(5, &[1]),
            (1..5).map(|i| (i, i + 1)).collect(),
        )
        .unwrap();
        let f = flexibility(&chain);
        assert_eq!(f.omega1, 0.0);
        assert_eq!(f.omega2, 0.0);

        // independent operations, every machine eligible: full freedom
        let free = Instance::new(2, uniform_ops(5, &[1, 2]), vec![]).unwrap();
        let f = flexibility(&free);
        assert_eq!(f.omega1, 1.0);
        assert_eq!(f.omega2, 1.0);

        // jobs of one or two operations have no in-between orderings
        let pair = Instance::new(1, uniform_ops(2, &[1]), vec![(1, 2)]).unwrap();
        assert_eq!(flexibility(&pair).omega1, 1.0);

        // worked example, hand-counted
        let f = flexibility(&example());
        assert!((f.omega1 - 0.2).abs() < 1e-12);
        assert!((f.omega2 - 14.0 / 24.0).abs() < 1e-12);
        assert_eq!(round_half_up_2dp(f.omega1), 0.20);
        assert_eq!(round_half_up_2dp(f.omega2), 0.58);
    });
}

/// Builds an instance with the given per-machine operation loads; interval
/// membership runs over contiguous id windows so each operation stays
/// eligible somewhere.
fn instance_with_loads(n: usize, windows: &[(usize, usize)]) -> Instance {
    let ops: Vec<OperationSpec> = (1..=n)
        .map(|id| OperationSpec {
            id,
            eligible: windows
                .iter()
                .enumerate()
                .filter(|(_, &(lo, hi))| (lo..=hi).contains(&id))
                .map(|(idx, _)| (idx + 1, 10))
                .collect(),
        })
        .collect();
    let arcs: Vec<(OpId, OpId)> = (1..n / 2).map(|i| (i, i + 1)).collect();
    Instance::new(windows.len(), ops, arcs).unwrap()
}

#[test]
fn criterion_5_model_size_accounting() {
    criterion(5, "model variable counts", || {
        // loads (10,10,8,8,8) over 14 operations, as in the smallest
        // benchmark row with 44 eligible pairs
        let a = instance_with_loads(14, &[(1, 10), (5, 14), (1, 8), (4, 11), (7, 14)]);
        let sizes = count_model_sizes(&a);
        assert_eq!(sizes.binary, 392);
        assert_eq!(sizes.interval, 406);

        // loads (6,6,5,4,3) over 9 operations, 24 eligible pairs
        let b = instance_with_loads(9, &[(1, 6), (4, 9), (1, 5), (3, 6), (7, 9)]);
        let sizes = count_model_sizes(&b);
        assert_eq!(sizes.binary, 122);
        assert_eq!(sizes.interval, 131);

        // the interval model always adds exactly one interval per operation
        let mut checked = 0;
        for idx in 0..BENCHMARK_SHAPES.len() {
            let (_, inst) = stand_in(idx);
            let sizes = count_model_sizes(&inst);
            assert_eq!(sizes.interval - sizes.binary, inst.op_count());
            checked += 1;
        }
        assert_eq!(checked, 110);
        let sizes = count_model_sizes(&example());
        assert_eq!(sizes.interval - sizes.binary, 12);
    });
}

#[test]
fn criterion_6_heuristics_feasible_fast_and_in_band() {
    criterion(6, "heuristics feasible, consistent, fast, sane on tiny cases", || {
        let alphas = [rate(0.1), rate(0.2), rate(0.3)];
        for idx in 0..BENCHMARK_SHAPES.len() {
            let (name, inst) = stand_in(idx);
            for &alpha in &alphas {
                for outcome in [
                    {
                        let started = Instant::now();
                        let out = est_schedule(&inst, alpha);
                        assert!(
                            started.elapsed() < Duration::from_millis(100),
                            "est on {name}"
                        );
                        out
                    },
                    {
                        let started = Instant::now();
                        let out = ect_schedule(&inst, alpha);
                        assert!(
                            started.elapsed() < Duration::from_millis(100),
                            "ect on {name}"
                        );
                        out
                    },
                ] {
                    let report = validate(&inst, &outcome.solution, alpha);
                    assert!(report.feasible, "{name}: {:?}", report.violations);
                    assert_eq!(report.makespan, Some(outcome.makespan()), "{name}");
                }
            }
        }

        // tiny instances: both rules stay within [optimum, 3x optimum]
        for seed in 0..20 {
            let inst = tiny_instance(seed, 7, 3);
            let alpha = alphas[seed as usize % 3];
            let opt = brute_force_optimal(&inst, alpha, OracleLimits::default())
                .unwrap()
                .makespan;
            for out in [est_schedule(&inst, alpha), ect_schedule(&inst, alpha)] {
                assert!(out.makespan() >= opt, "seed {seed}");
                assert!(out.makespan() <= 3 * opt, "seed {seed}");
            }
        }
    });
}

#[test]
fn criterion_7_exact_optimum_dominates_heuristics() {
    criterion(7, "exhaustive optimum never beaten on 200 tiny instances", || {
        let started = Instant::now();
        for seed in 0..200 {
            let inst = tiny_instance(seed, 6, 3);
            let alpha = rate(0.1 * (seed % 4) as f64);
            let opt = brute_force_optimal(&inst, alpha, OracleLimits::default()).unwrap();
            assert_eq!(opt.status, OracleStatus::Proven);
            let best = best_constructive(&inst, alpha);
            assert!(
                opt.makespan <= best.est_makespan.min(best.ect_makespan),
                "seed {seed}"
            );
        }
        assert!(started.elapsed() < Duration::from_secs(300));
    });
}

#[test]
fn criterion_8_warm_start_satisfies_every_milp_row() {
    criterion(8, "feasible schedules satisfy the emitted integer program", || {
        for seed in 0..50 {
            let inst = tiny_instance(seed, 9, 4);
            let alpha = rate(0.15 * (seed % 3) as f64);
            let best = best_constructive(&inst, alpha);
            let warm = emit_warm_start(&inst, alpha, &best.outcome.solution).unwrap();
            let milp = emit_milp(&inst, alpha);
            let broken = violated_rows(&milp.rows, &warm.values);
            assert!(broken.is_empty(), "seed {seed}: {broken:?}");
            assert_eq!(warm.makespan, best.outcome.makespan(), "seed {seed}");
            assert_eq!(warm.values["Cmax"], warm.makespan as i64, "seed {seed}");
        }
    });
}

struct Scratch {
    dir: PathBuf,
}

impl Scratch {
    fn new(label: &str) -> Scratch {
        let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(label);
        if dir.exists() {
            std::fs::remove_dir_all(&dir).unwrap();
        }
        std::fs::create_dir_all(&dir).unwrap();
        Scratch { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }
}

fn run_cli(args: &[&str]) {
    let output = Command::new(env!("CARGO_BIN_EXE_fjs"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        output.status.success(),
        "fjs {args:?} failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
}

#[test]
fn criterion_9_reruns_are_byte_identical() {
    criterion(9, "identical artifacts on rerun", || {
        // library artifacts
        let inst = example();
        assert_eq!(emit_milp(&inst, rate(0.3)).lp_text, emit_milp(&inst, rate(0.3)).lp_text);
        assert_eq!(emit_cp(&inst, rate(0.3)).text, emit_cp(&inst, rate(0.3)).text);
        let twice = [tiny_instance(5, 6, 3), tiny_instance(5, 6, 3)];
        assert_eq!(twice[0].operations(), twice[1].operations());

        // command-line artifacts, full pass run twice into separate dirs
        let example_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../instances/worked_example.fjs");
        let example_path = example_path.to_str().unwrap();
        let runs: Vec<Scratch> = ["rerun-first", "rerun-second"]
            .iter()
            .map(|label| {
                let scratch = Scratch::new(label);
                let p = |name: &str| scratch.path(name).to_str().unwrap().to_string();
                run_cli(&["gen", "--seed", "42", "--ops", "10", "--machines", "3",
                          "--jobs", "2", "--out", &p("gen.fjs")]);
                run_cli(&["solve", example_path, "--alpha", "0.3", "--heuristic", "best",
                          "--out", &p("sol.json")]);
                run_cli(&["validate", example_path, &p("sol.json"), "--alpha", "0.3",
                          "--out", &p("report.json")]);
                run_cli(&["measure", example_path, "--json", "--out", &p("flex.json")]);
                run_cli(&["oracle", example_path, "--alpha", "0.5", "--max-explored", "1000",
                          "--out", &p("opt.json")]);
                run_cli(&["gantt", example_path, &p("sol.json"), "--alpha", "0.3",
                          "--out", &p("gantt.csv")]);
                run_cli(&["export", example_path, "--alpha", "0.3", "--format", "lp",
                          "--out", &p("model.lp"), "--manifest", &p("manifest.json"),
                          "--warm-start", &p("sol.json"), "--warm-out", &p("warm.mst")]);
                run_cli(&["export", example_path, "--alpha", "0.3", "--format", "cp",
                          "--out", &p("model.cp"), "--opl", &p("model.opl"),
                          "--warm-start", &p("sol.json"), "--warm-out", &p("warm.cpstart")]);
                std::fs::create_dir(scratch.path("corpus")).unwrap();
                std::fs::copy(example_path, scratch.path("corpus/worked_example.fjs")).unwrap();
                std::fs::copy(scratch.path("gen.fjs"), scratch.path("corpus/gen.fjs")).unwrap();
                run_cli(&["bench", scratch.path("corpus").to_str().unwrap(),
                          "--alphas", "0.1,0.2,0.3", "--out", &p("bench.csv")]);
                scratch
            })
            .collect();

        let mut compared = 0;
        for name in [
            "gen.fjs", "sol.json", "report.json", "flex.json", "opt.json",
            "gantt.csv", "model.lp", "manifest.json", "warm.mst", "model.cp",
            "model.opl", "warm.cpstart", "bench.csv",
        ] {
            let a = std::fs::read(runs[0].path(name)).unwrap();
            let b = std::fs::read(runs[1].path(name)).unwrap();
            assert_eq!(a, b, "{name} differs between reruns");
            assert!(!a.is_empty(), "{name} is empty");
            compared += 1;
        }
        assert_eq!(compared, 13);
    });
}

#[test]
fn acceptance_corpus_is_complete() {
    // guard: the table mirrors all 110 benchmark rows with their dimensions
    assert_eq!(BENCHMARK_SHAPES.len(), 110);
    let minis = BENCHMARK_SHAPES.iter().filter(|r| r.name.starts_with("mini")).count();
    assert_eq!(minis, 60);
    let (_, biggest) = stand_in(
        BENCHMARK_SHAPES.iter().position(|r| r.name == "YFJS20").unwrap(),
    );
    assert_eq!(biggest.op_count(), 289);
    assert_eq!(biggest.machine_count(), 26);
}
