use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use qsched::experiment::{index_graphs, write_aggregate_csv, write_records_csv, STD_KIND};
use qsched::star::gap_preconditions;
use qsched::{
    aggregate_by_edges, export_lp, load_graph_file, makespan, render_gantt, run_sweep, schedule_exact,
    schedule_greedy, schedule_layered, star_exact_time, star_gap, star_greedy_time, star_layered_time,
    validate_schedule, CircuitInstance, Comparison, Error, ExactOptions, ExactStatus, GanttOptions, Schedule,
    ScheduleDocument, StarInstance, SweepConfig, TIME_TOLERANCE,
};

const EXIT_INPUT: u8 = 1;
const EXIT_TIME_LIMIT: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "qsched", version, about = "Gate scheduling for quantum circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Schedule a circuit and print its makespan.
    Schedule {
        circuit: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Seconds allowed for the exact solver.
        #[arg(long, default_value_t = 60.0)]
        time_limit: f64,
        /// Write the schedule as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write an SVG Gantt chart.
        #[arg(long)]
        gantt: Option<PathBuf>,
        #[arg(long, default_value_t = 40.0)]
        px_per_unit: f64,
        /// Write the MIP model in LP format.
        #[arg(long)]
        lp: Option<PathBuf>,
    },
    /// Closed-form makespans for a star graph.
    Star {
        #[arg(long)]
        n: usize,
        /// Two-qubit times of edges (0,1)..(0,n-1).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        gamma: Vec<f64>,
        /// Single-qubit times of vertices 0..n-1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        beta: Vec<f64>,
    },
    /// Run every scheduler over graph6 files with random gate times.
    Sweep {
        #[arg(long, num_args = 1.., required = true)]
        graphs: Vec<PathBuf>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        replicates: usize,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = 60.0)]
        time_limit: f64,
        /// Reject disconnected graphs.
        #[arg(long)]
        require_connected: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        agg: PathBuf,
    },
    /// Check a schedule against a circuit.
    Validate { circuit: PathBuf, schedule: PathBuf },
}

#[derive(Copy, Clone, ValueEnum)]
enum Method {
    Layered,
    Greedy,
    Exact,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => EXIT_IO,
            Error::Csv(c) if matches!(c.kind(), csv::ErrorKind::Io(_)) => EXIT_IO,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))
}

fn load_circuit(path: &Path) -> Result<CircuitInstance, Failure> {
    let circuit = CircuitInstance::from_json(&read(path)?)
        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    let report = circuit.validate();
    if !report.ok {
        return Err(fail(EXIT_INPUT, format!("{}: invalid circuit: {report}", path.display())));
    }
    Ok(circuit)
}

fn seconds(s: f64) -> Result<Duration, Failure> {
    Duration::try_from_secs_f64(s).map_err(|_| fail(EXIT_USAGE, format!("invalid time limit {s}")))
}

fn schedule(
    path: &Path,
    method: Method,
    time_limit: f64,
    out: Option<&Path>,
    gantt: Option<&Path>,
    px_per_unit: f64,
    lp: Option<&Path>,
) -> Result<u8, Failure> {
    let circuit = load_circuit(path)?;
    let mut code = 0;
    let schedule: Schedule = match method {
        Method::Layered => schedule_layered(&circuit)?.schedule,
        Method::Greedy => schedule_greedy(&circuit)?,
        Method::Exact => {
            let r = schedule_exact(&circuit, &ExactOptions::with_time_limit(seconds(time_limit)?))?;
            match r.status {
                ExactStatus::Optimal => println!("status optimal"),
                ExactStatus::TimeLimit { best_bound } => {
                    println!("status time_limit (best bound {best_bound:.6})");
                    code = EXIT_TIME_LIMIT;
                }
            }
            r.schedule
        }
    };
    println!("makespan {:.6}", makespan(&circuit, &schedule)?);
    if let Some(p) = out {
        let doc: ScheduleDocument = schedule.to_document(&circuit)?;
        let text = serde_json::to_string_pretty(&doc).expect("schedule serialization is infallible");
        write(p, text.as_bytes())?;
    }
    if let Some(p) = gantt {
        if !(px_per_unit > 0.0 && px_per_unit.is_finite()) {
            return Err(fail(EXIT_USAGE, format!("invalid --px-per-unit {px_per_unit}")));
        }
        write(p, render_gantt(&circuit, &schedule, &GanttOptions { px_per_unit })?.as_bytes())?;
    }
    if let Some(p) = lp {
        write(p, export_lp(&circuit, None)?.as_bytes())?;
    }
    Ok(code)
}

fn star(n: usize, gamma: Vec<f64>, beta: Vec<f64>) -> Result<u8, Failure> {
    if beta.len() != n {
        return Err(fail(EXIT_INPUT, format!("--n {n} needs {n} single-qubit times, got {}", beta.len())));
    }
    let s = StarInstance::new(gamma, beta)?;
    println!("layered {:.6}", star_layered_time(&s));
    println!("greedy {:.6}", star_greedy_time(&s, &s.duration_descending())?.makespan);
    println!("exact {:.6}", star_exact_time(&s).makespan);
    match gap_preconditions(&s) {
        Err(e) => println!("gap n/a ({e})"),
        Ok(()) => match star_gap(&s) {
            Ok(gap) => println!("gap {gap:.6}"),
            Err(Error::GapMismatch { formula, observed }) => {
                println!("gap {formula:.6} (formula); layered - exact = {observed:.6}")
            }
            Err(e) => return Err(e.into()),
        },
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    graphs: &[PathBuf],
    seed: u64,
    replicates: usize,
    jobs: usize,
    time_limit: f64,
    require_connected: bool,
    out: &Path,
    agg: &Path,
) -> Result<u8, Failure> {
    let mut inputs = Vec::new();
    for path in graphs {
        let list = load_graph_file(path)?;
        if require_connected {
            if let Some(k) = list.iter().position(|g| !g.is_connected()) {
                return Err(fail(EXIT_INPUT, format!("{}: graph {k} is not connected", path.display())));
            }
        }
        inputs.extend(index_graphs(&list));
    }
    let config = SweepConfig { base_seed: seed, time_limit: seconds(time_limit)?, jobs, replicates };
    let records = run_sweep(&inputs, &config)?;

    let mut buf = Vec::new();
    write_records_csv(&records, &mut buf)?;
    write(out, &buf)?;

    let mut rows = Vec::new();
    let mut excluded = 0;
    if !records.is_empty() {
        for which in Comparison::ALL {
            let a = aggregate_by_edges(&records, which)?;
            excluded = a.excluded;
            rows.extend(a.rows);
        }
    }
    let mut buf = Vec::new();
    write_aggregate_csv(&rows, &mut buf)?;
    write(agg, &buf)?;

    println!("records {}", records.len());
    println!("excluded (time limit) {excluded}");
    println!("std {STD_KIND}");
    Ok(0)
}

fn validate(circuit: &Path, schedule: &Path) -> Result<u8, Failure> {
    let c = load_circuit(circuit)?;
    let doc: ScheduleDocument = serde_json::from_str(&read(schedule)?)
        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", schedule.display())))?;
    let report = validate_schedule(&c, &Schedule::from(doc), TIME_TOLERANCE)?;
    print!("{report}");
    Ok(if report.ok { 0 } else { EXIT_INPUT })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Schedule { circuit, method, time_limit, out, gantt, px_per_unit, lp } => schedule(
            &circuit,
            method,
            time_limit,
            out.as_deref(),
            gantt.as_deref(),
            px_per_unit,
            lp.as_deref(),
        ),
        Command::Star { n, gamma, beta } => star(n, gamma, beta),
        Command::Sweep { graphs, seed, replicates, jobs, time_limit, require_connected, out, agg } => {
            sweep(&graphs, seed, replicates, jobs, time_limit, require_connected, &out, &agg)
        }
        Command::Validate { circuit, schedule } => validate(&circuit, &schedule),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("qsched: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
