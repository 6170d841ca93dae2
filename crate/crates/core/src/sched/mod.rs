//! Layered, greedy and exact schedulers, an exhaustive oracle, and LP export.

mod bruteforce;
mod exact;
mod greedy;
mod layered;
mod lp;

pub use bruteforce::{schedule_bruteforce, schedule_bruteforce_capped, DEFAULT_ORDERING_CAP};
pub use exact::{schedule_exact, ExactOptions, ExactResult, ExactStatus};
pub use greedy::schedule_greedy;
pub use layered::{schedule_layered, LayeredSchedule};
pub use lp::{default_big_m, export_lp};

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::circuit::{GateId, Indexed};

/// Longest-first priority: duration descending, then gate id ascending.
pub(crate) fn by_priority(ix: &Indexed, a: usize, b: usize) -> Ordering {
    ix.duration[b]
        .total_cmp(&ix.duration[a])
        .then(ix.ids[a].cmp(&ix.ids[b]))
}

/// Total order on gates implied by a feasible schedule: start, then end, then
/// position in a topological order of the precedence relation.
pub(crate) fn execution_order(ix: &Indexed, starts: &[f64]) -> Vec<usize> {
    let mut rank = vec![0; ix.len()];
    for (pos, g) in ix.topo_order().into_iter().enumerate() {
        rank[g] = pos;
    }
    let mut order: Vec<usize> = (0..ix.len()).collect();
    order.sort_by(|&a, &b| {
        starts[a]
            .total_cmp(&starts[b])
            .then((starts[a] + ix.duration[a]).total_cmp(&(starts[b] + ix.duration[b])))
            .then(rank[a].cmp(&rank[b]))
    });
    order
}

/// `(g, h) -> g runs before h` for every ordered pair of distinct gates sharing a qubit.
pub(crate) fn orderings_from_starts(ix: &Indexed, starts: &[f64]) -> BTreeMap<(GateId, GateId), bool> {
    let mut position = vec![0; ix.len()];
    for (pos, g) in execution_order(ix, starts).into_iter().enumerate() {
        position[g] = pos;
    }
    let mut out = BTreeMap::new();
    for gates in &ix.on_qubit {
        for &a in gates {
            for &b in gates {
                if a != b {
                    out.insert((ix.ids[a], ix.ids[b]), position[a] < position[b]);
                }
            }
        }
    }
    out
}
