//! Gates, circuits and schedules.
//!
//! A [`CircuitInstance`] is the scheduling problem: a set of gates, each
//! occupying one or two qubits for a fixed duration, plus precedence pairs
//! `(g, h)` meaning `g` must finish before `h` starts. A [`Schedule`] assigns
//! a start time to every gate.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used for every time comparison.
pub const TIME_TOLERANCE: f64 = 1e-9;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QubitId(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GateId(pub usize);

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    #[serde(rename = "two")]
    TwoQubit,
    #[serde(rename = "single")]
    SingleQubit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub id: GateId,
    pub qubits: Vec<QubitId>,
    pub duration: f64,
    pub kind: GateKind,
}

impl Gate {
    pub fn two(id: usize, a: usize, b: usize, duration: f64) -> Self {
        Gate {
            id: GateId(id),
            qubits: vec![QubitId(a), QubitId(b)],
            duration,
            kind: GateKind::TwoQubit,
        }
    }

    pub fn single(id: usize, qubit: usize, duration: f64) -> Self {
        Gate {
            id: GateId(id),
            qubits: vec![QubitId(qubit)],
            duration,
            kind: GateKind::SingleQubit,
        }
    }

    pub fn acts_on(&self, qubit: QubitId) -> bool {
        self.qubits.contains(&qubit)
    }

    pub fn shares_qubit(&self, other: &Gate) -> bool {
        self.qubits.iter().any(|q| other.qubits.contains(q))
    }

    fn shape_problem(&self) -> Option<String> {
        if !(self.duration >= 0.0) || !self.duration.is_finite() {
            return Some(format!("duration {} is not a finite nonnegative number", self.duration));
        }
        match (self.kind, self.qubits.as_slice()) {
            (GateKind::SingleQubit, [_]) => None,
            (GateKind::TwoQubit, [a, b]) if a != b => None,
            (GateKind::TwoQubit, [_, _]) => Some("two-qubit gate acts on the same qubit twice".into()),
            (kind, qs) => Some(format!("{kind:?} gate with {} qubits", qs.len())),
        }
    }
}

/// A scheduling problem: gates on `num_qubits` qubits plus precedence pairs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CircuitInstance {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
    #[serde(default)]
    pub precedence: Vec<(GateId, GateId)>,
}

impl CircuitInstance {
    pub fn new(num_qubits: usize, gates: Vec<Gate>, precedence: Vec<(GateId, GateId)>) -> Self {
        CircuitInstance {
            num_qubits,
            gates,
            precedence,
        }
    }

    pub fn gate(&self, id: GateId) -> Option<&Gate> {
        self.gates.iter().find(|g| g.id == id)
    }

    /// Gates acting on `qubit`, in gate-list order.
    pub fn gates_on(&self, qubit: QubitId) -> impl Iterator<Item = &Gate> {
        self.gates.iter().filter(move |g| g.acts_on(qubit))
    }

    pub fn total_duration(&self) -> f64 {
        self.gates.iter().map(|g| g.duration).sum()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serialization is infallible")
    }

    /// Checks every structural invariant and reports what is wrong.
    pub fn validate(&self) -> CircuitReport {
        validate_circuit(self)
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let report = validate_circuit(self);
        if report.ok {
            Ok(())
        } else {
            Err(Error::InvalidCircuit(Box::new(report)))
        }
    }
}

/// Structural problems found in a [`CircuitInstance`].
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CircuitReport {
    pub no_qubits: bool,
    pub duplicate_ids: Vec<GateId>,
    pub malformed_gates: Vec<(GateId, String)>,
    pub out_of_range: Vec<(GateId, QubitId)>,
    pub unknown_precedence: Vec<(GateId, GateId)>,
    pub self_precedence: Vec<GateId>,
    /// Gates that lie on (or downstream of) a precedence cycle.
    pub cyclic_gates: Vec<GateId>,
    pub ok: bool,
}

impl fmt::Display for CircuitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "ok");
        }
        let mut parts = Vec::new();
        if self.no_qubits {
            parts.push("circuit has no qubits".to_string());
        }
        if !self.duplicate_ids.is_empty() {
            parts.push(format!("duplicate gate ids {:?}", ids(&self.duplicate_ids)));
        }
        for (g, why) in &self.malformed_gates {
            parts.push(format!("gate {g}: {why}"));
        }
        for (g, q) in &self.out_of_range {
            parts.push(format!("gate {g} references out-of-range qubit {}", q.0));
        }
        for (a, b) in &self.unknown_precedence {
            parts.push(format!("precedence ({a}, {b}) references an unknown gate"));
        }
        for g in &self.self_precedence {
            parts.push(format!("gate {g} precedes itself"));
        }
        if !self.cyclic_gates.is_empty() {
            parts.push(format!("precedence cycle through gates {:?}", ids(&self.cyclic_gates)));
        }
        write!(f, "{}", parts.join("; "))
    }
}

fn ids(gates: &[GateId]) -> Vec<usize> {
    gates.iter().map(|g| g.0).collect()
}

pub fn validate_circuit(circuit: &CircuitInstance) -> CircuitReport {
    let mut report = CircuitReport {
        no_qubits: circuit.num_qubits == 0,
        ..Default::default()
    };

    let mut seen = HashSet::new();
    for gate in &circuit.gates {
        if !seen.insert(gate.id) && !report.duplicate_ids.contains(&gate.id) {
            report.duplicate_ids.push(gate.id);
        }
        if let Some(why) = gate.shape_problem() {
            report.malformed_gates.push((gate.id, why));
        }
        for &q in &gate.qubits {
            if q.0 >= circuit.num_qubits {
                report.out_of_range.push((gate.id, q));
            }
        }
    }

    let mut arcs: HashMap<GateId, Vec<GateId>> = HashMap::new();
    for &(a, b) in &circuit.precedence {
        if !seen.contains(&a) || !seen.contains(&b) {
            report.unknown_precedence.push((a, b));
        } else if a == b {
            report.self_precedence.push(a);
        } else {
            arcs.entry(a).or_default().push(b);
        }
    }

    // Kahn's algorithm; whatever cannot be peeled off sits on or behind a cycle.
    let mut indegree: HashMap<GateId, usize> = seen.iter().map(|&g| (g, 0)).collect();
    for succs in arcs.values() {
        for b in succs {
            *indegree.get_mut(b).unwrap() += 1;
        }
    }
    let mut stack: Vec<GateId> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&g, _)| g).collect();
    let mut removed = 0;
    while let Some(g) = stack.pop() {
        removed += 1;
        for b in arcs.get(&g).into_iter().flatten() {
            let d = indegree.get_mut(b).unwrap();
            *d -= 1;
            if *d == 0 {
                stack.push(*b);
            }
        }
    }
    if removed < indegree.len() {
        let mut cyclic: Vec<GateId> = indegree.into_iter().filter(|&(_, d)| d > 0).map(|(g, _)| g).collect();
        cyclic.sort();
        report.cyclic_gates = cyclic;
    }

    report.ok = !report.no_qubits
        && report.duplicate_ids.is_empty()
        && report.malformed_gates.is_empty()
        && report.out_of_range.is_empty()
        && report.unknown_precedence.is_empty()
        && report.self_precedence.is_empty()
        && report.cyclic_gates.is_empty();
    report
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleOrigin {
    Layered,
    Greedy,
    Exact,
    Bruteforce,
    External,
}

impl fmt::Display for ScheduleOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ScheduleOrigin::Layered => "layered",
            ScheduleOrigin::Greedy => "greedy",
            ScheduleOrigin::Exact => "exact",
            ScheduleOrigin::Bruteforce => "bruteforce",
            ScheduleOrigin::External => "external",
        };
        f.write_str(s)
    }
}

/// Start time per gate.
#[derive(Clone, Debug, PartialEq)]
pub struct Schedule {
    pub origin: ScheduleOrigin,
    pub starts: BTreeMap<GateId, f64>,
}

impl Schedule {
    pub fn new(origin: ScheduleOrigin) -> Self {
        Schedule {
            origin,
            starts: BTreeMap::new(),
        }
    }

    pub fn start(&self, gate: GateId) -> Result<f64> {
        self.starts.get(&gate).copied().ok_or(Error::MissingGate(gate))
    }

    pub fn with_origin(mut self, origin: ScheduleOrigin) -> Self {
        self.origin = origin;
        self
    }

    pub fn to_document(&self, circuit: &CircuitInstance) -> Result<ScheduleDocument> {
        Ok(ScheduleDocument {
            origin: self.origin,
            starts: self.starts.clone(),
            makespan: Some(makespan(circuit, self)?),
        })
    }
}

/// On-disk form of a [`Schedule`]. `makespan` is informational and ignored on read.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleDocument {
    pub origin: ScheduleOrigin,
    pub starts: BTreeMap<GateId, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub makespan: Option<f64>,
}

impl From<ScheduleDocument> for Schedule {
    fn from(doc: ScheduleDocument) -> Self {
        Schedule {
            origin: doc.origin,
            starts: doc.starts,
        }
    }
}

/// Latest completion time over all gates; 0 for an empty circuit.
pub fn makespan(circuit: &CircuitInstance, schedule: &Schedule) -> Result<f64> {
    circuit.gates.iter().try_fold(0.0_f64, |acc, g| {
        Ok(acc.max(schedule.start(g.id)? + g.duration))
    })
}

/// Completion time `C(i)` of every qubit: the latest end of a gate touching it.
/// Qubits without gates complete at 0.
pub fn qubit_completions(circuit: &CircuitInstance, schedule: &Schedule) -> Result<Vec<f64>> {
    let mut done = vec![0.0_f64; circuit.num_qubits];
    for g in &circuit.gates {
        let end = schedule.start(g.id)? + g.duration;
        for q in &g.qubits {
            if let Some(slot) = done.get_mut(q.0) {
                *slot = slot.max(end);
            }
        }
    }
    Ok(done)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub overlap_violations: Vec<(GateId, GateId, QubitId)>,
    pub precedence_violations: Vec<(GateId, GateId)>,
    pub negative_starts: Vec<GateId>,
    pub ok: bool,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return writeln!(f, "schedule ok");
        }
        for (a, b, q) in &self.overlap_violations {
            writeln!(f, "overlap: gates {a} and {b} on qubit {}", q.0)?;
        }
        for (a, b) in &self.precedence_violations {
            writeln!(f, "precedence: gate {b} starts before gate {a} completes")?;
        }
        for g in &self.negative_starts {
            writeln!(f, "negative start: gate {g}")?;
        }
        Ok(())
    }
}

pub fn validate_schedule(
    circuit: &CircuitInstance,
    schedule: &Schedule,
    tolerance: f64,
) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    let mut start = HashMap::with_capacity(circuit.gates.len());
    for g in &circuit.gates {
        let s = schedule.start(g.id)?;
        if s < -tolerance {
            report.negative_starts.push(g.id);
        }
        start.insert(g.id, (s, g.duration));
    }

    for q in 0..circuit.num_qubits {
        let q = QubitId(q);
        let on_q: Vec<&Gate> = circuit.gates_on(q).collect();
        for (i, a) in on_q.iter().enumerate() {
            for b in &on_q[i + 1..] {
                let (sa, da) = start[&a.id];
                let (sb, db) = start[&b.id];
                let overlap = (sa + da).min(sb + db) - sa.max(sb);
                if overlap > tolerance {
                    report.overlap_violations.push((a.id, b.id, q));
                }
            }
        }
    }

    for &(a, b) in &circuit.precedence {
        let (Some(&(sa, da)), Some(&(sb, _))) = (start.get(&a), start.get(&b)) else {
            continue;
        };
        if sb < sa + da - tolerance {
            report.precedence_violations.push((a, b));
        }
    }

    report.ok = report.overlap_violations.is_empty()
        && report.precedence_violations.is_empty()
        && report.negative_starts.is_empty();
    Ok(report)
}

/// Dense index-space view of a valid circuit, shared by the schedulers.
///
/// Gate `k` here is `circuit.gates[k]`; precedence is deduplicated.
pub(crate) struct Indexed {
    pub ids: Vec<GateId>,
    pub duration: Vec<f64>,
    pub qubits: Vec<Vec<usize>>,
    pub on_qubit: Vec<Vec<usize>>,
    pub preds: Vec<Vec<usize>>,
    pub succs: Vec<Vec<usize>>,
    pub num_qubits: usize,
}

impl Indexed {
    pub fn new(circuit: &CircuitInstance) -> Self {
        let n = circuit.gates.len();
        let index_of: HashMap<GateId, usize> =
            circuit.gates.iter().enumerate().map(|(k, g)| (g.id, k)).collect();
        let mut on_qubit = vec![Vec::new(); circuit.num_qubits];
        let mut qubits = Vec::with_capacity(n);
        for (k, g) in circuit.gates.iter().enumerate() {
            let qs: Vec<usize> = g.qubits.iter().map(|q| q.0).collect();
            for &q in &qs {
                on_qubit[q].push(k);
            }
            qubits.push(qs);
        }
        let mut preds = vec![Vec::new(); n];
        let mut succs = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for (a, b) in &circuit.precedence {
            let (a, b) = (index_of[a], index_of[b]);
            if seen.insert((a, b)) {
                preds[b].push(a);
                succs[a].push(b);
            }
        }
        Indexed {
            ids: circuit.gates.iter().map(|g| g.id).collect(),
            duration: circuit.gates.iter().map(|g| g.duration).collect(),
            qubits,
            on_qubit,
            preds,
            succs,
            num_qubits: circuit.num_qubits,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn shares_qubit(&self, a: usize, b: usize) -> bool {
        self.qubits[a].iter().any(|q| self.qubits[b].contains(q))
    }

    /// A topological order of the precedence DAG, smallest index first among ready gates.
    pub fn topo_order(&self) -> Vec<usize> {
        let mut indegree: Vec<usize> = self.preds.iter().map(Vec::len).collect();
        let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = indegree
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(k, _)| std::cmp::Reverse(k))
            .collect();
        let mut order = Vec::with_capacity(self.len());
        while let Some(std::cmp::Reverse(k)) = ready.pop() {
            order.push(k);
            for &s in &self.succs[k] {
                indegree[s] -= 1;
                if indegree[s] == 0 {
                    ready.push(std::cmp::Reverse(s));
                }
            }
        }
        order
    }

    pub fn schedule_from_starts(&self, starts: &[f64], origin: ScheduleOrigin) -> Schedule {
        Schedule {
            origin,
            starts: self.ids.iter().copied().zip(starts.iter().copied()).collect(),
        }
    }

    pub fn starts_of(&self, schedule: &Schedule) -> Result<Vec<f64>> {
        self.ids.iter().map(|&g| schedule.start(g)).collect()
    }

    pub fn makespan(&self, starts: &[f64]) -> f64 {
        starts
            .iter()
            .zip(&self.duration)
            .map(|(s, d)| s + d)
            .fold(0.0, f64::max)
    }
}
