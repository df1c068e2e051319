//! Batch front-end for the scheduling library.
//!
//! Exit codes: 0 success, 1 usage, 2 unreadable or invalid input,
//! 3 infeasible solution (or search stopped before finding one).
//!
//! File artifacts never contain wall-clock measurements, so re-running a
//! command with the same inputs produces byte-identical files. Timing shows
//! up only on stdout (`time=`) and, for `bench`, behind `--timings`.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fjs_core::generator::{generate, GeneratorConfig, JobShape};
use fjs_core::heuristics::{best_constructive, ect_schedule, est_schedule, HeuristicOutcome};
use fjs_core::instance::{flexibility, parse_instance, round_half_up_2dp, write_instance, Instance};
use fjs_core::learning::LearningRate;
use fjs_core::oracle::{brute_force_optimal, OracleError, OracleLimits, OracleStatus};
use fjs_core::solution_graph::{build_solution_graph, gantt_csv, Solution};
use fjs_core::validator::validate;
use fjs_core::ScaledTime;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(name = "fjs", version, about = "Flexible job shop scheduling with learning effects")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a schedule with a constructive heuristic
    Solve(SolveArgs),
    /// Check a solution file against an instance
    Validate(ValidateArgs),
    /// Report instance size and flexibility measures
    Measure(MeasureArgs),
    /// Write the integer-programming or constraint model
    Export(ExportArgs),
    /// Exhaustive optimum for tiny instances
    Oracle(OracleArgs),
    /// Schedule table (CSV) for a solution
    Gantt(GanttArgs),
    /// Run both heuristics over a directory of instances
    Bench(BenchArgs),
    /// Generate a random instance
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Est,
    Ect,
    Best,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Lp,
    Cp,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Chain,
    Y,
    Dag,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file
    instance: PathBuf,
    /// Learning rate alpha (>= 0)
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = RuleArg::Best)]
    heuristic: RuleArg,
    /// Write the solution as JSON here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print times divided by 100
    #[arg(long)]
    original_units: bool,
}

#[derive(Args)]
struct ValidateArgs {
    instance: PathBuf,
    /// Solution JSON produced by `solve` or `oracle`
    solution: PathBuf,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Write the full validation report as JSON here
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    original_units: bool,
}

#[derive(Args)]
struct MeasureArgs {
    instance: PathBuf,
    /// Print the full report as JSON instead of one summary line
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    instance: PathBuf,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long, value_enum)]
    format: FormatArg,
    /// Model file to write
    #[arg(long)]
    out: PathBuf,
    /// Variable manifest and size counts (JSON)
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// OPL rendering of the constraint model (only with --format cp)
    #[arg(long)]
    opl: Option<PathBuf>,
    /// Feasible solution to convert into solver starting values
    #[arg(long, requires = "warm_out")]
    warm_start: Option<PathBuf>,
    /// Where to write the starting values
    #[arg(long, requires = "warm_start")]
    warm_out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    instance: PathBuf,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Refuse to run when the work estimate exceeds this
    #[arg(long, default_value_t = 100_000_000)]
    max_combinations: u128,
    /// Run anyway
    #[arg(long)]
    force: bool,
    /// Stop after evaluating this many combinations
    #[arg(long)]
    max_explored: Option<u64>,
    /// Write the result (makespan, witness, explored, status) as JSON here
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    original_units: bool,
}

#[derive(Args)]
struct GanttArgs {
    instance: PathBuf,
    solution: PathBuf,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// CSV destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    original_units: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of instance files (*.fjs)
    dir: PathBuf,
    /// Comma-separated learning rates
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3")]
    alphas: Vec<f64>,
    /// CSV destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add wall-clock columns (makes the output nondeterministic)
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    machines: usize,
    #[arg(long, default_value_t = 12)]
    ops: usize,
    #[arg(long, default_value_t = 2)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = ShapeArg::Dag)]
    shape: ShapeArg,
    /// Chance of each optional extra precedence arc (dag shape)
    #[arg(long, default_value_t = 0.25)]
    density: f64,
    /// Chance of each optional extra eligible machine
    #[arg(long, default_value_t = 0.5)]
    eligibility: f64,
    #[arg(long, default_value_t = 1)]
    time_min: u32,
    #[arg(long, default_value_t = 99)]
    time_max: u32,
    /// Instance destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure with its process exit code attached.
enum Failure {
    /// Flag value outside its domain or a senseless flag combination: exit 1.
    Usage(String),
    /// Unreadable file or unparseable contents: exit 2.
    Input(String),
    /// Structurally broken or infeasible solution, or a search that stopped
    /// before reaching one: exit 3.
    Infeasible(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Infeasible(_) => 3,
        }
    }
    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Infeasible(m) => m,
        }
    }
}

fn input_err(context: &str, err: impl std::fmt::Display) -> Failure {
    Failure::Input(format!("{context}: {err}"))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version arrive here too; they are not failures
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Validate(args) => cmd_validate(&args),
        Command::Measure(args) => cmd_measure(&args),
        Command::Export(args) => cmd_export(&args),
        Command::Oracle(args) => cmd_oracle(&args),
        Command::Gantt(args) => cmd_gantt(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::Gen(args) => cmd_gen(&args),
    };
    if let Err(failure) = result {
        eprintln!("error: {}", failure.message());
        std::process::exit(failure.code());
    }
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_err(&path.display().to_string(), e))?;
    parse_instance(&text).map_err(|e| input_err(&path.display().to_string(), e))
}

/// Accepts either a bare solution or an oracle result (whose `witness`
/// field holds the solution).
fn load_solution(path: &Path) -> Result<Solution, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_err(&path.display().to_string(), e))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| input_err(&path.display().to_string(), e))?;
    let body = match value.get("witness") {
        Some(witness) => witness.clone(),
        None => value,
    };
    serde_json::from_value(body).map_err(|e| input_err(&path.display().to_string(), e))
}

fn parse_alpha(alpha: f64) -> Result<LearningRate, Failure> {
    LearningRate::new(alpha).map_err(|e| Failure::Usage(format!("--alpha: {e}")))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| input_err(&path.display().to_string(), e))
}

fn to_json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Scaled time for machines, original (divided by 100) for people.
fn fmt_time(t: ScaledTime, original_units: bool) -> String {
    if original_units {
        format!("{:.2}", t as f64 / 100.0)
    } else {
        t.to_string()
    }
}

fn cmd_solve(args: &SolveArgs) -> Result<(), Failure> {
    let inst = load_instance(&args.instance)?;
    let alpha = parse_alpha(args.alpha)?;
    let started = Instant::now();
    let outcome: HeuristicOutcome = match args.heuristic {
        RuleArg::Est => est_schedule(&inst, alpha),
        RuleArg::Ect => ect_schedule(&inst, alpha),
        RuleArg::Best => best_constructive(&inst, alpha).outcome,
    };
    let elapsed = started.elapsed();
    println!(
        "rule={} makespan={} time={:.6}s",
        outcome.rule,
        fmt_time(outcome.makespan(), args.original_units),
        elapsed.as_secs_f64(),
    );
    if let Some(out) = &args.out {
        write_file(out, &to_json_line(&outcome.solution))?;
    }
    Ok(())
}

fn cmd_validate(args: &ValidateArgs) -> Result<(), Failure> {
    let inst = load_instance(&args.instance)?;
    let solution = load_solution(&args.solution)?;
    let alpha = parse_alpha(args.alpha)?;
    let report = validate(&inst, &solution, alpha);
    if let Some(out) = &args.out {
        write_file(out, &to_json_line(&report))?;
    }
    if report.feasible {
        println!(
            "feasible makespan={}",
            fmt_time(report.makespan.unwrap(), args.original_units)
        );
        Ok(())
    } else {
        let mut msg = String::from("solution is infeasible");
        for v in &report.violations {
            let _ = write!(msg, "\n  {v}");
        }
        Err(Failure::Infeasible(msg))
    }
}

fn cmd_measure(args: &MeasureArgs) -> Result<(), Failure> {
    let inst = load_instance(&args.instance)?;
    let report = flexibility(&inst);
    let rendered = if args.json {
        to_json_line(&report)
    } else {
        format!(
            "ops={} machines={} jobs={} arcs={} omega1={:.2} omega2={:.2}\n",
            report.op_count,
            report.machine_count,
            report.job_count,
            report.arc_count,
            round_half_up_2dp(report.omega1),
            round_half_up_2dp(report.omega2),
        )
    };
    match &args.out {
        Some(out) => write_file(out, &rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn cmd_export(args: &ExportArgs) -> Result<(), Failure> {
    let inst = load_instance(&args.instance)?;
    let alpha = parse_alpha(args.alpha)?;
    let warm = match &args.warm_start {
        Some(path) => {
            let solution = load_solution(path)?;
            let warm = fjs_core::model_export::emit_warm_start(&inst, alpha, &solution)
                .map_err(|e| Failure::Infeasible(e.to_string()))?;
            Some(warm)
        }
        None => None,
    };
    match args.format {
        FormatArg::Lp => {
            if args.opl.is_some() {
                return Err(Failure::Usage(
                    "--opl applies only to --format cp".to_string(),
                ));
            }
            let artifact = fjs_core::model_export::emit_milp(&inst, alpha);
            write_file(&args.out, &artifact.lp_text)?;
            if let Some(manifest) = &args.manifest {
                let body = serde_json::json!({
                    "big_m": artifact.big_m,
                    "sizes": artifact.sizes,
                    "variables": artifact.variables,
                });
                write_file(manifest, &to_json_line(&body))?;
            }
            if let Some(warm) = &warm {
                write_file(args.warm_out.as_ref().unwrap(), &warm.mst_xml)?;
            }
        }
        FormatArg::Cp => {
            let artifact = fjs_core::model_export::emit_cp(&inst, alpha);
            write_file(&args.out, &artifact.text)?;
            if let Some(opl) = &args.opl {
                write_file(opl, &artifact.opl)?;
            }
            if let Some(manifest) = &args.manifest {
                let body = serde_json::json!({ "sizes": artifact.sizes });
                write_file(manifest, &to_json_line(&body))?;
            }
            if let Some(warm) = &warm {
                write_file(args.warm_out.as_ref().unwrap(), &warm.cp_text)?;
            }
        }
    }
    Ok(())
}

fn cmd_oracle(args: &OracleArgs) -> Result<(), Failure> {
    let inst = load_instance(&args.instance)?;
    let alpha = parse_alpha(args.alpha)?;
    let limits = OracleLimits {
        max_combinations: args.max_combinations,
        force: args.force,
        max_explored: args.max_explored,
    };
    let result = brute_force_optimal(&inst, alpha, limits).map_err(|e| match e {
        OracleError::TooLarge { .. } => Failure::Input(e.to_string()),
        OracleError::LimitBeforeFeasible { .. } => Failure::Infeasible(e.to_string()),
    })?;
    let status = match result.status {
        OracleStatus::Proven => "proven",
        OracleStatus::LimitExceeded => "limit-exceeded",
    };
    println!(
        "makespan={} explored={} status={}",
        fmt_time(result.makespan, args.original_units),
        result.explored,
        status,
    );
    if let Some(out) = &args.out {
        write_file(out, &to_json_line(&result))?;
    }
    Ok(())
}

fn cmd_gantt(args: &GanttArgs) -> Result<(), Failure> {
    let inst = load_instance(&args.instance)?;
    let solution = load_solution(&args.solution)?;
    let alpha = parse_alpha(args.alpha)?;
    let graph = build_solution_graph(&inst, &solution, alpha)
        .map_err(|e| Failure::Infeasible(e.to_string()))?;
    let mut csv = gantt_csv(&graph);
    if args.original_units {
        csv = rescale_gantt(&csv);
    }
    match &args.out {
        Some(out) => write_file(out, &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

/// Divides the start/actual_time/end columns by 100.
fn rescale_gantt(csv: &str) -> String {
    let mut out = String::with_capacity(csv.len());
    for (idx, line) in csv.lines().enumerate() {
        if idx == 0 {
            out.push_str(line);
        } else {
            let fields: Vec<&str> = line.split(',').collect();
            for (col, field) in fields.iter().enumerate() {
                if col > 0 {
                    out.push(',');
                }
                if (3..=5).contains(&col) {
                    let scaled: u64 = field.parse().expect("numeric gantt column");
                    let _ = write!(out, "{:.2}", scaled as f64 / 100.0);
                } else {
                    out.push_str(field);
                }
            }
        }
        out.push('\n');
    }
    out
}

fn cmd_bench(args: &BenchArgs) -> Result<(), Failure> {
    for &alpha in &args.alphas {
        parse_alpha(alpha)?;
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(&args.dir)
        .map_err(|e| input_err(&args.dir.display().to_string(), e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "fjs"))
        .collect();
    files.sort();

    let mut csv = String::from("instance,alpha,est_makespan,ect_makespan,winner");
    if args.timings {
        csv.push_str(",est_seconds,ect_seconds");
    }
    csv.push('\n');
    let (mut rows, mut est_wins, mut ect_wins) = (0u64, 0u64, 0u64);
    let (mut est_total, mut ect_total) = (0u128, 0u128);
    for path in &files {
        let inst = match std::fs::read_to_string(path) {
            Ok(text) => match parse_instance(&text) {
                Ok(inst) => inst,
                Err(e) => {
                    eprintln!("skipping {}: {e}", path.display());
                    continue;
                }
            },
            Err(e) => {
                eprintln!("skipping {}: {e}", path.display());
                continue;
            }
        };
        let name = path.file_stem().unwrap_or_default().to_string_lossy();
        for &alpha in &args.alphas {
            let rate = parse_alpha(alpha)?;
            let est_started = Instant::now();
            let est = est_schedule(&inst, rate);
            let est_elapsed = est_started.elapsed();
            let ect_started = Instant::now();
            let ect = ect_schedule(&inst, rate);
            let ect_elapsed = ect_started.elapsed();
            // a side wins whenever it is no worse; ties credit both
            let (e, c) = (est.makespan(), ect.makespan());
            let winner = if e < c {
                "est"
            } else if c < e {
                "ect"
            } else {
                "both"
            };
            est_wins += u64::from(e <= c);
            ect_wins += u64::from(c <= e);
            est_total += e as u128;
            ect_total += c as u128;
            rows += 1;
            let _ = write!(csv, "{name},{alpha},{e},{c},{winner}");
            if args.timings {
                let _ = write!(
                    csv,
                    ",{:.6},{:.6}",
                    est_elapsed.as_secs_f64(),
                    ect_elapsed.as_secs_f64()
                );
            }
            csv.push('\n');
        }
    }
    let pad = if args.timings { ",," } else { "" };
    let _ = writeln!(csv, "wins,,{est_wins},{ect_wins},{pad}");
    if rows > 0 {
        let _ = writeln!(
            csv,
            "mean,,{:.2},{:.2},{pad}",
            est_total as f64 / rows as f64,
            ect_total as f64 / rows as f64
        );
    } else {
        let _ = writeln!(csv, "mean,,,,{pad}");
    }
    match &args.out {
        Some(out) => write_file(out, &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_gen(args: &GenArgs) -> Result<(), Failure> {
    if args.ops == 0 || args.machines == 0 {
        return Err(Failure::Usage("--ops and --machines must be positive".into()));
    }
    if args.jobs == 0 || args.jobs > args.ops {
        return Err(Failure::Usage("--jobs must be in 1..=ops".into()));
    }
    if args.time_min == 0 || args.time_min > args.time_max {
        return Err(Failure::Usage(
            "--time-min must be positive and <= --time-max".into(),
        ));
    }
    for (flag, value) in [("--density", args.density), ("--eligibility", args.eligibility)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(Failure::Usage(format!("{flag} must be within [0, 1]")));
        }
    }
    let config = GeneratorConfig {
        seed: args.seed,
        machine_count: args.machines,
        op_count: args.ops,
        job_count: args.jobs,
        shape: match args.shape {
            ShapeArg::Chain => JobShape::Chain,
            ShapeArg::Y => JobShape::Y,
            ShapeArg::Dag => JobShape::Dag,
        },
        density: args.density,
        eligibility_prob: args.eligibility,
        time_range: (args.time_min, args.time_max),
    };
    let text = write_instance(&generate(&config));
    match &args.out {
        Some(out) => write_file(out, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}
