use std::collections::BTreeSet;
use std::fmt::Write;

use crate::circuit::{CircuitInstance, GateId, QubitId};
use crate::error::Result;

/// Sum of all gate durations; no start time in a left-justified schedule exceeds it.
pub fn default_big_m(circuit: &CircuitInstance) -> f64 {
    circuit.total_duration()
}

/// Writes the disjunctive model in CPLEX LP format.
///
/// Variables are `x_<id>` (start times), `y_<g>_<h>` (1 iff `g` runs before
/// `h`) and `Z` (makespan). Rows, in order:
/// * `seq_q<q>_<g>_<h>`: `x_h - x_g + M y_h_g >= t_g` for every ordered pair
///   sharing qubit `q` (pairs sharing two qubits are written once, at the lower qubit);
/// * `pair_q<q>_<g>_<h>`: `y_g_h + y_h_g = 1`;
/// * `fix_<g>_<h>`: `y_g_h = 1` for precedence pairs that share a qubit;
/// * `prec_<g>_<h>`: `x_h - x_g >= t_g` for precedence pairs on disjoint qubits;
/// * `span_<g>`: `Z - x_g >= t_g`.
pub fn export_lp(circuit: &CircuitInstance, big_m: Option<f64>) -> Result<String> {
    circuit.ensure_valid()?;
    let m = big_m.unwrap_or_else(|| default_big_m(circuit));
    let duration = |g: GateId| circuit.gate(g).map_or(0.0, |gate| gate.duration);

    let mut gates: Vec<_> = circuit.gates.iter().collect();
    gates.sort_by_key(|g| g.id);

    // (qubit, g, h) with g < h, first shared qubit only
    let mut pairs: Vec<(usize, GateId, GateId)> = Vec::new();
    let mut seen = BTreeSet::new();
    for q in 0..circuit.num_qubits {
        for (k, a) in gates.iter().enumerate() {
            for b in &gates[k + 1..] {
                if a.acts_on(QubitId(q)) && b.acts_on(QubitId(q)) && seen.insert((a.id, b.id)) {
                    pairs.push((q, a.id, b.id));
                }
            }
        }
    }

    let mut out = String::new();
    writeln!(out, "\\ minimum-makespan gate schedule: {} gates, {} qubits, M = {m}", gates.len(), circuit.num_qubits).unwrap();
    writeln!(out, "Minimize").unwrap();
    writeln!(out, " min: Z").unwrap();
    writeln!(out, "Subject To").unwrap();
    for &(q, a, b) in &pairs {
        for (g, h) in [(a, b), (b, a)] {
            writeln!(out, " seq_q{q}_{g}_{h}: x_{h} - x_{g} + {m} y_{h}_{g} >= {}", duration(g)).unwrap();
        }
    }
    for &(q, a, b) in &pairs {
        writeln!(out, " pair_q{q}_{a}_{b}: y_{a}_{b} + y_{b}_{a} = 1").unwrap();
    }
    let precedence: BTreeSet<(GateId, GateId)> = circuit.precedence.iter().copied().collect();
    for &(g, h) in &precedence {
        if seen.contains(&(g.min(h), g.max(h))) {
            writeln!(out, " fix_{g}_{h}: y_{g}_{h} = 1").unwrap();
        }
    }
    for &(g, h) in &precedence {
        if !seen.contains(&(g.min(h), g.max(h))) {
            writeln!(out, " prec_{g}_{h}: x_{h} - x_{g} >= {}", duration(g)).unwrap();
        }
    }
    for g in &gates {
        writeln!(out, " span_{}: Z - x_{} >= {}", g.id, g.id, g.duration).unwrap();
    }
    writeln!(out, "Bounds").unwrap();
    for g in &gates {
        writeln!(out, " x_{} >= 0", g.id).unwrap();
    }
    if !pairs.is_empty() {
        writeln!(out, "Binaries").unwrap();
        for &(_, a, b) in &pairs {
            writeln!(out, " y_{a}_{b}").unwrap();
            writeln!(out, " y_{b}_{a}").unwrap();
        }
    }
    writeln!(out, "End").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;

    #[test]
    fn two_gates_on_one_qubit() {
        let c = CircuitInstance::new(2, vec![Gate::two(0, 0, 1, 5.0), Gate::single(1, 0, 3.0)], vec![]);
        let lp = export_lp(&c, None).unwrap();
        let rows = |prefix: &str| lp.lines().filter(|l| l.trim_start().starts_with(prefix)).count();
        assert_eq!(rows("seq_"), 2);
        assert_eq!(rows("pair_"), 1);
        assert_eq!(rows("fix_"), 0);
        assert!(lp.contains(" seq_q0_0_1: x_1 - x_0 + 8 y_1_0 >= 5\n"));
        assert!(lp.contains(" seq_q0_1_0: x_0 - x_1 + 8 y_0_1 >= 3\n"));
        assert!(lp.contains("M = 8"));
    }

    #[test]
    fn pairs_sharing_two_qubits_are_written_once() {
        let c = CircuitInstance::new(2, vec![Gate::two(0, 0, 1, 1.0), Gate::two(1, 0, 1, 2.0)], vec![]);
        let lp = export_lp(&c, Some(10.0)).unwrap();
        assert_eq!(lp.matches("pair_").count(), 1);
        assert!(lp.contains("+ 10 y_1_0"));
    }

    #[test]
    fn precedence_rows() {
        let c = CircuitInstance::new(
            3,
            vec![Gate::two(0, 0, 1, 1.0), Gate::single(1, 1, 1.0), Gate::single(2, 2, 1.0)],
            vec![(GateId(0), GateId(1)), (GateId(0), GateId(2))],
        );
        let lp = export_lp(&c, None).unwrap();
        assert!(lp.contains(" fix_0_1: y_0_1 = 1\n"));
        assert!(lp.contains(" prec_0_2: x_2 - x_0 >= 1\n"));
    }

    #[test]
    fn output_is_deterministic() {
        let c = CircuitInstance::new(2, vec![Gate::two(4, 0, 1, 1.25), Gate::single(2, 1, 0.5), Gate::single(7, 0, 2.0)], vec![(GateId(4), GateId(2))]);
        assert_eq!(export_lp(&c, None).unwrap(), export_lp(&c, None).unwrap());
        let lp = export_lp(&c, None).unwrap();
        let seq: Vec<&str> = lp.lines().filter(|l| l.contains("seq_")).map(|l| l.split(':').next().unwrap().trim()).collect();
        assert_eq!(seq, vec!["seq_q0_4_7", "seq_q0_7_4", "seq_q1_2_4", "seq_q1_4_2"]);
    }
}
