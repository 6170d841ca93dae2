use crate::circuit::{CircuitInstance, GateId, Indexed, Schedule, ScheduleOrigin};
use crate::error::Result;

use super::by_priority;

/// Gates grouped into qubit-disjoint layers executed back to back.
#[derive(Clone, Debug, PartialEq)]
pub struct LayeredSchedule {
    pub layers: Vec<Vec<GateId>>,
    /// Longest gate duration in each layer.
    pub layer_times: Vec<f64>,
    pub schedule: Schedule,
}

impl LayeredSchedule {
    pub fn makespan(&self) -> f64 {
        self.layer_times.iter().sum()
    }
}

/// Layered scheduling with longest-first first-fit packing.
///
/// Gates are bucketed by precedence depth (0 for gates without predecessors,
/// otherwise one more than the deepest predecessor). Each depth gets its own
/// run of layers after all layers of the previous depth, and within a depth
/// gates are placed longest first into the earliest layer that has none of
/// their qubits in use.
pub fn schedule_layered(circuit: &CircuitInstance) -> Result<LayeredSchedule> {
    circuit.ensure_valid()?;
    let ix = Indexed::new(circuit);

    let mut depth = vec![0usize; ix.len()];
    for g in ix.topo_order() {
        depth[g] = ix.preds[g].iter().map(|&p| depth[p] + 1).max().unwrap_or(0);
    }
    let max_depth = depth.iter().copied().max().unwrap_or(0);
    let mut by_depth = vec![Vec::new(); max_depth + 1];
    for g in 0..ix.len() {
        by_depth[depth[g]].push(g);
    }

    let mut layers: Vec<Vec<usize>> = Vec::new();
    let mut busy: Vec<Vec<bool>> = Vec::new();
    for mut gates in by_depth {
        gates.sort_by(|&a, &b| by_priority(&ix, a, b));
        let first = layers.len();
        for g in gates {
            let slot = (first..layers.len()).find(|&l| ix.qubits[g].iter().all(|&q| !busy[l][q]));
            let l = slot.unwrap_or_else(|| {
                layers.push(Vec::new());
                busy.push(vec![false; ix.num_qubits]);
                layers.len() - 1
            });
            layers[l].push(g);
            for &q in &ix.qubits[g] {
                busy[l][q] = true;
            }
        }
    }

    let layer_times: Vec<f64> = layers
        .iter()
        .map(|layer| layer.iter().map(|&g| ix.duration[g]).fold(0.0, f64::max))
        .collect();
    let mut starts = vec![0.0; ix.len()];
    let mut offset = 0.0;
    for (layer, time) in layers.iter().zip(&layer_times) {
        for &g in layer {
            starts[g] = offset;
        }
        offset += time;
    }

    Ok(LayeredSchedule {
        layers: layers
            .into_iter()
            .map(|layer| layer.into_iter().map(|g| ix.ids[g]).collect())
            .collect(),
        layer_times,
        schedule: ix.schedule_from_starts(&starts, ScheduleOrigin::Layered),
    })
}
