//! Sweeps over graph collections: random gate times, all three schedulers,
//! improvement percentages, and per-edge-count aggregates.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{assign_random_times, build_qaoa_circuit, Graph, RngSpec};
use crate::sched::{schedule_exact, schedule_greedy, schedule_layered, ExactOptions};
use crate::circuit::makespan;

/// Standard deviations in aggregates use the `n - 1` denominator; singleton groups report 0.
pub const STD_KIND: &str = "sample (n-1 denominator; 0 for singleton groups)";

/// One graph of a sweep, identified by its vertex count and position in its file.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepInput {
    pub vertices: usize,
    pub index: usize,
    pub graph: Graph,
}

/// Tags the graphs of one file with their in-file index.
pub fn index_graphs(graphs: &[Graph]) -> Vec<SweepInput> {
    graphs
        .iter()
        .enumerate()
        .map(|(index, g)| SweepInput {
            vertices: g.num_vertices,
            index,
            graph: g.clone(),
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub base_seed: u64,
    pub time_limit: Duration,
    /// Worker threads; 0 uses rayon's default.
    pub jobs: usize,
    /// Random instances per graph.
    pub replicates: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            base_seed: 0,
            time_limit: Duration::from_secs(60),
            jobs: 0,
            replicates: 1,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `splitmix64` folded over `(base_seed, vertices, index, replicate)`.
pub fn instance_seed(base_seed: u64, vertices: usize, index: usize, replicate: usize) -> u64 {
    [vertices as u64, index as u64, replicate as u64]
        .into_iter()
        .fold(splitmix64(base_seed), |h, x| splitmix64(h ^ x))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepStatus {
    Optimal,
    TimeLimit,
}

impl fmt::Display for SweepStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepStatus::Optimal => "optimal",
            SweepStatus::TimeLimit => "time_limit",
        })
    }
}

fn fixed6<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{x:.6}"))
}

fn parse_f64<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    let text = String::deserialize(d)?;
    text.trim().parse().map_err(serde::de::Error::custom)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub vertices: usize,
    pub graph_index: usize,
    pub edges: usize,
    pub seed: u64,
    #[serde(serialize_with = "fixed6", deserialize_with = "parse_f64")]
    pub t_layered: f64,
    #[serde(serialize_with = "fixed6", deserialize_with = "parse_f64")]
    pub t_greedy: f64,
    #[serde(serialize_with = "fixed6", deserialize_with = "parse_f64")]
    pub t_exact: f64,
    pub status: SweepStatus,
    #[serde(rename = "imp_layered_pct", serialize_with = "fixed6", deserialize_with = "parse_f64")]
    pub imp_layered: f64,
    #[serde(rename = "imp_greedy_pct", serialize_with = "fixed6", deserialize_with = "parse_f64")]
    pub imp_greedy: f64,
}

/// `|t_heuristic - t_exact| / t_heuristic * 100`, or 0 when the heuristic time is 0.
pub fn improvement_pct(t_heuristic: f64, t_exact: f64) -> f64 {
    if t_heuristic == 0.0 {
        0.0
    } else {
        ((t_heuristic - t_exact) / t_heuristic).abs() * 100.0
    }
}

/// Runs one random instance of `graph` through all three schedulers.
pub fn run_instance(input: &SweepInput, seed: u64, time_limit: Duration) -> Result<SweepRecord> {
    let wg = assign_random_times(&input.graph, &RngSpec::new(seed));
    let circuit = build_qaoa_circuit(&wg)?;
    let t_layered = schedule_layered(&circuit)?.makespan();
    let t_greedy = makespan(&circuit, &schedule_greedy(&circuit)?)?;
    let exact = schedule_exact(&circuit, &ExactOptions::with_time_limit(time_limit))?;
    Ok(SweepRecord {
        vertices: input.vertices,
        graph_index: input.index,
        edges: input.graph.edges.len(),
        seed,
        t_layered,
        t_greedy,
        t_exact: exact.makespan,
        status: if exact.status.is_optimal() { SweepStatus::Optimal } else { SweepStatus::TimeLimit },
        imp_layered: improvement_pct(t_layered, exact.makespan),
        imp_greedy: improvement_pct(t_greedy, exact.makespan),
    })
}

/// Runs every graph (times `replicates`) on a bounded worker pool. Output is
/// sorted by `(vertices, graph_index, seed)` and independent of `jobs`.
pub fn run_sweep(inputs: &[SweepInput], config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    let tasks: Vec<(&SweepInput, u64)> = inputs
        .iter()
        .flat_map(|input| {
            (0..config.replicates.max(1))
                .map(move |r| (input, instance_seed(config.base_seed, input.vertices, input.index, r)))
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .expect("thread pool construction");
    let mut records = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(input, seed)| run_instance(input, seed, config.time_limit))
            .collect::<Result<Vec<_>>>()
    })?;
    records.sort_by_key(|r| (r.vertices, r.graph_index, r.seed));
    Ok(records)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Comparison {
    #[serde(rename = "layered_vs_exact")]
    LayeredVsExact,
    #[serde(rename = "greedy_vs_exact")]
    GreedyVsExact,
}

impl Comparison {
    pub const ALL: [Comparison; 2] = [Comparison::LayeredVsExact, Comparison::GreedyVsExact];

    fn pick(&self, r: &SweepRecord) -> f64 {
        match self {
            Comparison::LayeredVsExact => r.imp_layered,
            Comparison::GreedyVsExact => r.imp_greedy,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub vertices: usize,
    pub edges: usize,
    pub comparison: Comparison,
    pub n_graphs: usize,
    pub n_excluded: usize,
    #[serde(rename = "mean_imp_pct", serialize_with = "fixed6", deserialize_with = "parse_f64")]
    pub mean_imp: f64,
    #[serde(rename = "std_imp_pct", serialize_with = "fixed6", deserialize_with = "parse_f64")]
    pub std_imp: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Aggregation {
    pub rows: Vec<AggregateRow>,
    /// Records left out because the exact solver hit its time limit.
    pub excluded: usize,
}

/// Mean and sample standard deviation of one improvement, grouped by
/// `(vertices, edges)`. Time-limited records are excluded and counted.
pub fn aggregate_by_edges(records: &[SweepRecord], which: Comparison) -> Result<Aggregation> {
    if records.is_empty() {
        return Err(Error::EmptyAggregate);
    }
    let mut groups: BTreeMap<(usize, usize), (Vec<f64>, usize)> = BTreeMap::new();
    for r in records {
        let entry = groups.entry((r.vertices, r.edges)).or_default();
        match r.status {
            SweepStatus::Optimal => entry.0.push(which.pick(r)),
            SweepStatus::TimeLimit => entry.1 += 1,
        }
    }
    let excluded = groups.values().map(|g| g.1).sum();
    let rows = groups
        .into_iter()
        .filter(|(_, (values, _))| !values.is_empty())
        .map(|((vertices, edges), (values, n_excluded))| {
            let (mean_imp, std_imp) = mean_std(&values);
            AggregateRow {
                vertices,
                edges,
                comparison: which,
                n_graphs: values.len(),
                n_excluded,
                mean_imp,
                std_imp,
            }
        })
        .collect();
    Ok(Aggregation { rows, excluded })
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

pub fn write_records_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    write_csv(records, out)
}

pub fn read_records_csv<R: Read>(input: R) -> Result<Vec<SweepRecord>> {
    read_csv(input)
}

pub fn write_aggregate_csv<W: Write>(rows: &[AggregateRow], out: W) -> Result<()> {
    write_csv(rows, out)
}

pub fn read_aggregate_csv<R: Read>(input: R) -> Result<Vec<AggregateRow>> {
    read_csv(input)
}

fn write_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn read_csv<T: for<'de> Deserialize<'de>, R: Read>(input: R) -> Result<Vec<T>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}
