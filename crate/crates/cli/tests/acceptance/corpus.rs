//! Stand-in instances mirroring the dimensions of the DAFJS/YFJS benchmark
//! families (machines, operations, jobs per instance). The original files are
//! not distributed here, so structurally similar instances are generated
//! deterministically: same machine count, operation count, and job count,
//! with Y-shaped jobs for the YFJS rows and general DAG jobs for the rest.

use fjs_core::generator::{generate, GeneratorConfig, JobShape};
use fjs_core::instance::Instance;

pub struct BenchmarkShape {
    pub name: &'static str,
    pub machines: usize,
    pub ops: usize,
    pub jobs: usize,
}

macro_rules! shapes {
    ($(($name:literal, $m:literal, $o:literal, $j:literal)),+ $(,)?) => {
        &[$(BenchmarkShape { name: $name, machines: $m, ops: $o, jobs: $j }),+]
    };
}

pub const BENCHMARK_SHAPES: &[BenchmarkShape] = shapes![
    ("miniDAFJS01", 5, 14, 2),
    ("miniDAFJS02", 5, 11, 2),
    ("miniDAFJS03", 5, 10, 2),
    ("miniDAFJS04", 5, 9, 2),
    ("miniDAFJS05", 5, 15, 2),
    ("miniDAFJS06", 5, 14, 2),
    ("miniDAFJS07", 5, 11, 2),
    ("miniDAFJS08", 5, 9, 2),
    ("miniDAFJS09", 5, 15, 2),
    ("miniDAFJS10", 5, 11, 2),
    ("miniDAFJS11", 5, 18, 2),
    ("miniDAFJS12", 5, 12, 2),
    ("miniDAFJS13", 5, 10, 2),
    ("miniDAFJS14", 5, 14, 2),
    ("miniDAFJS15", 5, 11, 2),
    ("miniDAFJS16", 5, 13, 2),
    ("miniDAFJS17", 5, 11, 2),
    ("miniDAFJS18", 5, 11, 2),
    ("miniDAFJS19", 5, 12, 2),
    ("miniDAFJS20", 5, 13, 2),
    ("miniDAFJS21", 5, 19, 3),
    ("miniDAFJS22", 5, 18, 3),
    ("miniDAFJS23", 5, 21, 3),
    ("miniDAFJS24", 5, 18, 3),
    ("miniDAFJS25", 5, 17, 3),
    ("miniDAFJS26", 5, 17, 3),
    ("miniDAFJS27", 5, 19, 3),
    ("miniDAFJS28", 5, 16, 3),
    ("miniDAFJS29", 5, 14, 3),
    ("miniDAFJS30", 5, 22, 3),
    ("miniYFJS01", 7, 16, 4),
    ("miniYFJS02", 7, 16, 4),
    ("miniYFJS03", 7, 16, 4),
    ("miniYFJS04", 7, 16, 4),
    ("miniYFJS05", 7, 16, 4),
    ("miniYFJS06", 7, 16, 4),
    ("miniYFJS07", 7, 16, 4),
    ("miniYFJS08", 7, 16, 4),
    ("miniYFJS09", 7, 16, 4),
    ("miniYFJS10", 7, 16, 4),
    ("miniYFJS11", 7, 20, 5),
    ("miniYFJS12", 7, 20, 5),
    ("miniYFJS13", 7, 20, 5),
    ("miniYFJS14", 7, 20, 5),
    ("miniYFJS15", 7, 20, 5),
    ("miniYFJS16", 7, 20, 5),
    ("miniYFJS17", 7, 20, 5),
    ("miniYFJS18", 7, 20, 5),
    ("miniYFJS19", 7, 20, 5),
    ("miniYFJS20", 7, 20, 5),
    ("miniYFJS21", 7, 24, 6),
    ("miniYFJS22", 7, 24, 6),
    ("miniYFJS23", 7, 24, 6),
    ("miniYFJS24", 7, 24, 6),
    ("miniYFJS25", 7, 24, 6),
    ("miniYFJS26", 7, 24, 6),
    ("miniYFJS27", 7, 24, 6),
    ("miniYFJS28", 7, 24, 6),
    ("miniYFJS29", 7, 24, 6),
    ("miniYFJS30", 7, 24, 6),
    ("DAFJS01", 5, 26, 4),
    ("DAFJS02", 5, 25, 4),
    ("DAFJS03", 10, 55, 4),
    ("DAFJS04", 10, 43, 4),
    ("DAFJS05", 5, 39, 6),
    ("DAFJS06", 5, 44, 6),
    ("DAFJS07", 10, 85, 6),
    ("DAFJS08", 10, 85, 6),
    ("DAFJS09", 5, 45, 8),
    ("DAFJS10", 5, 58, 8),
    ("DAFJS11", 10, 113, 8),
    ("DAFJS12", 10, 117, 8),
    ("DAFJS13", 5, 62, 10),
    ("DAFJS14", 5, 69, 10),
    ("DAFJS15", 10, 120, 10),
    ("DAFJS16", 10, 120, 10),
    ("DAFJS17", 5, 82, 12),
    ("DAFJS18", 5, 74, 12),
    ("DAFJS19", 7, 70, 8),
    ("DAFJS20", 7, 92, 10),
    ("DAFJS21", 7, 107, 12),
    ("DAFJS22", 7, 116, 12),
    ("DAFJS23", 9, 76, 8),
    ("DAFJS24", 9, 92, 8),
    ("DAFJS25", 9, 123, 10),
    ("DAFJS26", 9, 119, 10),
    ("DAFJS27", 9, 127, 12),
    ("DAFJS28", 10, 91, 8),
    ("DAFJS29", 10, 95, 8),
    ("DAFJS30", 10, 98, 10),
    ("YFJS01", 7, 40, 4),
    ("YFJS02", 7, 40, 4),
    ("YFJS03", 7, 24, 6),
    ("YFJS04", 7, 28, 7),
    ("YFJS05", 7, 32, 8),
    ("YFJS06", 7, 36, 9),
    ("YFJS07", 7, 36, 9),
    ("YFJS08", 12, 36, 9),
    ("YFJS09", 12, 36, 9),
    ("YFJS10", 12, 40, 10),
    ("YFJS11", 10, 50, 10),
    ("YFJS12", 10, 50, 10),
    ("YFJS13", 10, 50, 10),
    ("YFJS14", 26, 221, 13),
    ("YFJS15", 26, 221, 13),
    ("YFJS16", 26, 221, 13),
    ("YFJS17", 26, 289, 17),
    ("YFJS18", 26, 289, 17),
    ("YFJS19", 26, 289, 17),
    ("YFJS20", 26, 289, 17),
];

/// Deterministic stand-in with the row's exact dimensions.
pub fn stand_in(index: usize) -> (&'static str, Instance) {
    let row = &BENCHMARK_SHAPES[index];
    let shape = if row.name.contains("YFJS") {
        JobShape::Y
    } else {
        JobShape::Dag
    };
    let inst = generate(&GeneratorConfig {
        seed: index as u64,
        machine_count: row.machines,
        op_count: row.ops,
        job_count: row.jobs,
        shape,
        density: 0.2,
        eligibility_prob: 0.3,
        time_range: (1, 99),
    });
    assert_eq!(inst.op_count(), row.ops);
    assert_eq!(inst.machine_count(), row.machines);
    (row.name, inst)
}

/// Small random instances for exhaustive cross-checks.
pub fn tiny_instance(seed: u64, max_ops: usize, max_machines: usize) -> Instance {
    let ops = 1 + (seed as usize * 7 % max_ops);
    let machines = 1 + (seed as usize * 3 % max_machines);
    let shapes = [JobShape::Chain, JobShape::Y, JobShape::Dag];
    generate(&GeneratorConfig {
        seed: seed * 1_000_003,
        machine_count: machines,
        op_count: ops,
        job_count: 1 + seed as usize % ops,
        shape: shapes[seed as usize % 3],
        density: 0.3,
        eligibility_prob: 0.5,
        time_range: (1, 40),
    })
}
