//! Minimum-makespan scheduling of quantum circuits with precedence constraints.
//!
//! Three schedulers share one problem type, [`CircuitInstance`]:
//! layered packing ([`schedule_layered`]), greedy list scheduling
//! ([`schedule_greedy`]) and an exact branch-and-bound over the disjunctive
//! model ([`schedule_exact`]). [`schedule_bruteforce`] is an exhaustive
//! oracle for small instances and [`export_lp`] writes the same model for
//! external MIP solvers.
//!
//! QAOA circuits are built from graph6 graphs with random gate times
//! ([`graph`]); closed forms for star graphs live in [`star`]; parameter
//! sweeps in [`experiment`]; SVG Gantt charts in [`gantt`].

pub mod circuit;
mod error;
pub mod experiment;
pub mod gantt;
pub mod graph;
pub mod sched;
pub mod star;

pub use circuit::{
    makespan, qubit_completions, validate_circuit, validate_schedule, CircuitInstance, CircuitReport, Gate, GateId,
    GateKind, QubitId, Schedule, ScheduleDocument, ScheduleOrigin, ValidationReport, TIME_TOLERANCE,
};
pub use error::{Error, Result};
pub use experiment::{
    aggregate_by_edges, run_sweep, AggregateRow, Aggregation, Comparison, SweepConfig, SweepInput, SweepRecord,
    SweepStatus,
};
pub use gantt::{render_gantt, GanttOptions, GanttSpec};
pub use graph::{
    assign_random_times, build_qaoa_circuit, encode_graph6, load_graph_file, parse_graph6, Graph, RngSpec,
    WeightedGraph,
};
pub use sched::{
    export_lp, schedule_bruteforce, schedule_exact, schedule_greedy, schedule_layered, ExactOptions, ExactResult,
    ExactStatus, LayeredSchedule,
};
pub use star::{star_exact_time, star_gap, star_greedy_time, star_layered_time, StarInstance, StarScheduleResult};
