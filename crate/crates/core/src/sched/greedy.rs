use std::cmp::Ordering;

use crate::circuit::{CircuitInstance, Indexed, Schedule, ScheduleOrigin};
use crate::error::Result;

use super::by_priority;

/// Lead-gate preference among equal earliest starts: more qubits, then longer, then lower id.
fn lead_priority(ix: &Indexed, a: usize, b: usize) -> Ordering {
    ix.qubits[b].len().cmp(&ix.qubits[a].len()).then(by_priority(ix, a, b))
}

/// Fill order for co-started gates: shorter first, then lower id.
fn fill_priority(ix: &Indexed, a: usize, b: usize) -> Ordering {
    ix.duration[a]
        .total_cmp(&ix.duration[b])
        .then(ix.ids[a].cmp(&ix.ids[b]))
}

/// Greedy list scheduling with precedence constraints.
///
/// Each round collects the ready gates (all predecessors placed) and starts
/// the one with the earliest feasible start; ties go to two-qubit gates,
/// then longer gates, then lower ids. Every other ready gate that can begin
/// at that same instant on qubits not yet claimed this round is co-started,
/// shortest first. A gate's feasible start is the latest availability of
/// its qubits and completion of its predecessors.
pub fn schedule_greedy(circuit: &CircuitInstance) -> Result<Schedule> {
    circuit.ensure_valid()?;
    let ix = Indexed::new(circuit);
    let n = ix.len();

    let mut available = vec![0.0_f64; ix.num_qubits];
    let mut start = vec![0.0_f64; n];
    let mut placed = vec![false; n];
    let mut waiting: Vec<usize> = ix.preds.iter().map(Vec::len).collect();
    let mut remaining = n;

    let earliest = |g: usize, available: &[f64], start: &[f64]| -> f64 {
        let qubits = ix.qubits[g].iter().map(|&q| available[q]);
        let preds = ix.preds[g].iter().map(|&p| start[p] + ix.duration[p]);
        qubits.chain(preds).fold(0.0, f64::max)
    };

    while remaining > 0 {
        let mut ready: Vec<usize> = (0..n).filter(|&g| !placed[g] && waiting[g] == 0).collect();
        ready.sort_by(|&a, &b| fill_priority(&ix, a, b));
        let est: Vec<f64> = ready.iter().map(|&g| earliest(g, &available, &start)).collect();
        let t_star = est.iter().copied().fold(f64::INFINITY, f64::min);
        let lead = (0..ready.len())
            .filter(|&k| est[k] == t_star)
            .min_by(|&x, &y| lead_priority(&ix, ready[x], ready[y]))
            .expect("acyclic precedence leaves a ready gate");

        let mut claimed = vec![false; ix.num_qubits];
        let mut round = vec![ready[lead]];
        for &q in &ix.qubits[ready[lead]] {
            claimed[q] = true;
        }
        for (k, &g) in ready.iter().enumerate() {
            if k == lead || ix.qubits[g].iter().any(|&q| claimed[q]) {
                continue;
            }
            if earliest(g, &available, &start) == t_star {
                for &q in &ix.qubits[g] {
                    claimed[q] = true;
                }
                round.push(g);
            }
        }

        for g in round {
            start[g] = t_star;
            placed[g] = true;
            remaining -= 1;
            for &q in &ix.qubits[g] {
                available[q] = t_star + ix.duration[g];
            }
            for &s in &ix.succs[g] {
                waiting[s] -= 1;
            }
        }
    }

    Ok(ix.schedule_from_starts(&start, ScheduleOrigin::Greedy))
}
