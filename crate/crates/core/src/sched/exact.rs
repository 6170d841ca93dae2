//! Exact minimum-makespan scheduling by branch and bound over the
//! disjunctive (big-M) model.
//!
//! Every pair of gates sharing a qubit needs an ordering decision; precedence
//! pairs arrive pre-decided. A search node is the transitive closure of the
//! decisions made so far. Its relaxation drops the undecided pairs, which
//! leaves a longest-path problem on a DAG: earliest starts (heads) and
//! latest-path-to-sink lengths (tails) give the bound `max head + t + tail`.
//! This is tightened with a preemptive one-qubit bound (largest tail first
//! over each qubit's gates) and with pairwise immediate selection: if putting
//! `a` before `b` cannot beat the incumbent, `b` before `a` is fixed.
//!
//! When the heads of a node already keep every undecided pair apart, the
//! heads form a feasible schedule whose makespan equals the node bound, so
//! the subtree is solved without further branching.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::circuit::{validate_schedule, CircuitInstance, GateId, Indexed, Schedule, ScheduleOrigin, TIME_TOLERANCE};
use crate::error::{Error, Result};

use super::{execution_order, orderings_from_starts, schedule_greedy, schedule_layered};

#[derive(Clone, Debug)]
pub struct ExactOptions {
    pub time_limit: Duration,
    /// Extra starting incumbent; must be a valid schedule for the circuit.
    pub incumbent_hint: Option<Schedule>,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            time_limit: Duration::from_secs(60),
            incumbent_hint: None,
        }
    }
}

impl ExactOptions {
    pub fn with_time_limit(time_limit: Duration) -> Self {
        ExactOptions {
            time_limit,
            ..Default::default()
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum ExactStatus {
    Optimal,
    /// Search stopped early; the optimum lies in `[best_bound, makespan]`.
    TimeLimit { best_bound: f64 },
}

impl ExactStatus {
    pub fn is_optimal(&self) -> bool {
        matches!(self, ExactStatus::Optimal)
    }
}

#[derive(Clone, Debug)]
pub struct ExactResult {
    pub schedule: Schedule,
    pub makespan: f64,
    pub status: ExactStatus,
    pub nodes_explored: u64,
    /// `(g, h) -> true` iff `g` runs before `h`, for every ordered pair sharing a qubit.
    pub orderings: BTreeMap<(GateId, GateId), bool>,
}

pub fn schedule_exact(circuit: &CircuitInstance, options: &ExactOptions) -> Result<ExactResult> {
    circuit.ensure_valid()?;
    let started = Instant::now();
    let ix = Indexed::new(circuit);

    let mut incumbents = vec![schedule_greedy(circuit)?, schedule_layered(circuit)?.schedule];
    if let Some(hint) = &options.incumbent_hint {
        let report = validate_schedule(circuit, hint, TIME_TOLERANCE)?;
        if !report.ok {
            return Err(Error::InvalidSchedule {
                overlaps: report.overlap_violations.len(),
                precedence: report.precedence_violations.len(),
            });
        }
        incumbents.push(hint.clone());
    }
    let mut best_starts = Vec::new();
    let mut best = f64::INFINITY;
    for s in &incumbents {
        let starts = ix.starts_of(s)?;
        let m = ix.makespan(&starts);
        if m < best {
            best = m;
            best_starts = starts;
        }
    }

    let mut search = Search::new(&ix, best, best_starts, started + options.time_limit);
    let mut root = Closure::new(ix.len());
    for (a, succs) in ix.succs.iter().enumerate() {
        for &b in succs {
            root.add_arc(a, b);
        }
    }
    let (heads, tails) = search.times(&root);
    let root_bound = search.bound(&heads, &tails);
    if root_bound < search.best - TIME_TOLERANCE {
        search.dfs(root);
    }

    let status = if search.aborted {
        ExactStatus::TimeLimit {
            best_bound: root_bound.min(search.best),
        }
    } else {
        ExactStatus::Optimal
    };
    Ok(ExactResult {
        makespan: search.best,
        orderings: orderings_from_starts(&ix, &search.best_starts),
        schedule: ix.schedule_from_starts(&search.best_starts, ScheduleOrigin::Exact),
        status,
        nodes_explored: search.nodes,
    })
}

/// Transitive closure of the decided orderings, as successor and ancestor bit rows.
#[derive(Clone)]
struct Closure {
    words: usize,
    reach: Vec<u64>,
    anc: Vec<u64>,
}

impl Closure {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Closure {
            words,
            reach: vec![0; n * words],
            anc: vec![0; n * words],
        }
    }

    fn row(bits: &[u64], words: usize, g: usize) -> &[u64] {
        &bits[g * words..(g + 1) * words]
    }

    fn reaches(&self, a: usize, b: usize) -> bool {
        self.reach[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    fn decided(&self, a: usize, b: usize) -> bool {
        self.reaches(a, b) || self.reaches(b, a)
    }

    fn ancestors(&self, g: usize) -> u32 {
        Self::row(&self.anc, self.words, g).iter().map(|w| w.count_ones()).sum()
    }

    /// Adds `a -> b`. The caller guarantees `b` does not already reach `a`.
    fn add_arc(&mut self, a: usize, b: usize) {
        if self.reaches(a, b) {
            return;
        }
        let w = self.words;
        let mut to = Self::row(&self.reach, w, b).to_vec();
        to[b / 64] |= 1 << (b % 64);
        let mut from = Self::row(&self.anc, w, a).to_vec();
        from[a / 64] |= 1 << (a % 64);
        for x in bits(&from) {
            for (dst, src) in self.reach[x * w..(x + 1) * w].iter_mut().zip(&to) {
                *dst |= src;
            }
        }
        for y in bits(&to) {
            for (dst, src) in self.anc[y * w..(y + 1) * w].iter_mut().zip(&from) {
                *dst |= src;
            }
        }
    }
}

fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(k, &word)| {
        let mut w = word;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let bit = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(k * 64 + bit)
        })
    })
}

struct Search<'a> {
    ix: &'a Indexed,
    /// Unordered gate pairs `(a, b)`, `a < b`, sharing at least one qubit.
    pairs: Vec<(usize, usize)>,
    best: f64,
    best_starts: Vec<f64>,
    /// Position of each gate in the incumbent's execution order.
    incumbent_rank: Vec<usize>,
    nodes: u64,
    deadline: Instant,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(ix: &'a Indexed, best: f64, best_starts: Vec<f64>, deadline: Instant) -> Self {
        let mut pairs = Vec::new();
        for a in 0..ix.len() {
            for b in a + 1..ix.len() {
                if ix.shares_qubit(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        let mut search = Search {
            ix,
            pairs,
            best,
            best_starts,
            incumbent_rank: Vec::new(),
            nodes: 0,
            deadline,
            aborted: false,
        };
        search.rerank();
        search
    }

    fn rerank(&mut self) {
        let mut rank = vec![0; self.ix.len()];
        for (pos, g) in execution_order(self.ix, &self.best_starts).into_iter().enumerate() {
            rank[g] = pos;
        }
        self.incumbent_rank = rank;
    }

    /// Heads (earliest starts) and tails (longest path after completion) of the closure DAG.
    fn times(&self, cl: &Closure) -> (Vec<f64>, Vec<f64>) {
        let n = self.ix.len();
        let dur = &self.ix.duration;
        let mut order: Vec<(u32, usize)> = (0..n).map(|g| (cl.ancestors(g), g)).collect();
        order.sort_unstable();
        let mut head = vec![0.0_f64; n];
        for &(_, g) in &order {
            head[g] = bits(Closure::row(&cl.anc, cl.words, g))
                .map(|x| head[x] + dur[x])
                .fold(0.0, f64::max);
        }
        let mut tail = vec![0.0_f64; n];
        for &(_, g) in order.iter().rev() {
            tail[g] = bits(Closure::row(&cl.reach, cl.words, g))
                .map(|y| dur[y] + tail[y])
                .fold(0.0, f64::max);
        }
        (head, tail)
    }

    fn bound(&self, head: &[f64], tail: &[f64]) -> f64 {
        let dur = &self.ix.duration;
        let path = (0..self.ix.len()).map(|g| head[g] + dur[g] + tail[g]).fold(0.0, f64::max);
        self.ix
            .on_qubit
            .iter()
            .map(|gates| preemptive_bound(gates, head, dur, tail))
            .fold(path, f64::max)
    }

    /// Fixes orderings forced by the incumbent. `None` when the node cannot improve on it.
    fn propagate(&self, cl: &mut Closure) -> Option<(Vec<f64>, Vec<f64>)> {
        let dur = &self.ix.duration;
        let cutoff = self.best - TIME_TOLERANCE;
        loop {
            let (head, tail) = self.times(cl);
            if self.bound(&head, &tail) >= cutoff {
                return None;
            }
            let mut changed = false;
            for &(a, b) in &self.pairs {
                if cl.decided(a, b) {
                    continue;
                }
                let a_first = head[a] + dur[a] + dur[b] + tail[b] >= cutoff;
                let b_first = head[b] + dur[b] + dur[a] + tail[a] >= cutoff;
                match (a_first, b_first) {
                    (true, true) => return None,
                    (true, false) => cl.add_arc(b, a),
                    (false, true) => cl.add_arc(a, b),
                    (false, false) => continue,
                }
                changed = true;
            }
            if !changed {
                return Some((head, tail));
            }
        }
    }

    fn dfs(&mut self, mut cl: Closure) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(256) && Instant::now() >= self.deadline {
            self.aborted = true;
        }
        if self.aborted {
            return;
        }
        let Some((head, _)) = self.propagate(&mut cl) else {
            return;
        };

        let dur = &self.ix.duration;
        let mut branch: Option<(usize, usize)> = None;
        let mut weight = f64::NEG_INFINITY;
        for &(a, b) in &self.pairs {
            if cl.decided(a, b) {
                continue;
            }
            let overlap = (head[a] + dur[a]).min(head[b] + dur[b]) - head[a].max(head[b]);
            let w = dur[a].min(dur[b]);
            if overlap > 0.0 && w > weight {
                weight = w;
                branch = Some((a, b));
            }
        }

        let Some((a, b)) = branch else {
            let makespan = self.ix.makespan(&head);
            if makespan < self.best - TIME_TOLERANCE {
                self.best = makespan;
                self.best_starts = head;
                self.rerank();
            }
            return;
        };

        let first = if self.incumbent_rank[a] < self.incumbent_rank[b] { (a, b) } else { (b, a) };
        for (x, y) in [first, (first.1, first.0)] {
            let mut child = cl.clone();
            child.add_arc(x, y);
            self.dfs(child);
            if self.aborted {
                return;
            }
        }
    }
}

/// Preemptive single-qubit bound: run the gates of one qubit from their heads,
/// always serving the largest tail, and report the largest completion + tail.
fn preemptive_bound(gates: &[usize], head: &[f64], dur: &[f64], tail: &[f64]) -> f64 {
    let mut jobs: Vec<usize> = gates.to_vec();
    jobs.sort_by(|&a, &b| head[a].total_cmp(&head[b]));
    let mut left: Vec<f64> = jobs.iter().map(|&g| dur[g]).collect();
    let mut active: Vec<usize> = Vec::new();
    let mut next = 0;
    let mut t = 0.0_f64;
    let mut bound = 0.0_f64;
    loop {
        if active.is_empty() {
            if next == jobs.len() {
                return bound;
            }
            t = t.max(head[jobs[next]]);
        }
        while next < jobs.len() && head[jobs[next]] <= t {
            active.push(next);
            next += 1;
        }
        let (slot, &j) = active
            .iter()
            .enumerate()
            .max_by(|x, y| tail[jobs[*x.1]].total_cmp(&tail[jobs[*y.1]]))
            .expect("active set is non-empty");
        let horizon = jobs.get(next).map_or(f64::INFINITY, |&g| head[g]);
        let run = left[j].min(horizon - t);
        t += run;
        left[j] -= run;
        if left[j] <= 0.0 {
            bound = bound.max(t + tail[jobs[j]]);
            active.swap_remove(slot);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{makespan, Gate};

    fn solve(c: &CircuitInstance) -> ExactResult {
        schedule_exact(c, &ExactOptions::default()).unwrap()
    }

    #[test]
    fn forced_serialization() {
        let c = CircuitInstance::new(3, vec![Gate::two(0, 0, 1, 2.5), Gate::two(1, 1, 2, 4.0)], vec![]);
        let r = solve(&c);
        assert_eq!(r.status, ExactStatus::Optimal);
        assert!((r.makespan - 6.5).abs() < 1e-12);
        assert_eq!(r.orderings.len(), 2);
        assert_ne!(r.orderings[&(GateId(0), GateId(1))], r.orderings[&(GateId(1), GateId(0))]);
    }

    #[test]
    fn empty_circuit() {
        let r = solve(&CircuitInstance::new(1, vec![], vec![]));
        assert_eq!(r.makespan, 0.0);
        assert!(r.status.is_optimal());
    }

    #[test]
    fn beats_greedy_on_tail_heavy_path() {
        // path 0-1-2; both edges share qubit 1, qubit 0's tail is long
        let c = CircuitInstance::new(
            3,
            vec![
                Gate::two(0, 0, 1, 1.0),
                Gate::two(1, 1, 2, 1.01),
                Gate::single(2, 0, 5.0),
                Gate::single(3, 1, 0.01),
                Gate::single(4, 2, 0.01),
            ],
            [(0, 2), (0, 3), (1, 3), (1, 4)].iter().map(|&(a, b)| (GateId(a), GateId(b))).collect(),
        );
        let r = solve(&c);
        assert!((r.makespan - 6.0).abs() < 1e-9, "{}", r.makespan);
        assert!(r.orderings[&(GateId(0), GateId(1))]);
        assert!((makespan(&c, &r.schedule).unwrap() - r.makespan).abs() < 1e-12);
    }

    #[test]
    fn invalid_hint_is_rejected() {
        let c = CircuitInstance::new(2, vec![Gate::two(0, 0, 1, 1.0), Gate::single(1, 0, 1.0)], vec![]);
        let mut hint = Schedule::new(ScheduleOrigin::External);
        hint.starts.insert(GateId(0), 0.0);
        hint.starts.insert(GateId(1), 0.0);
        let opts = ExactOptions { incumbent_hint: Some(hint), ..Default::default() };
        assert!(matches!(schedule_exact(&c, &opts), Err(Error::InvalidSchedule { .. })));
    }

    #[test]
    fn preemptive_bound_matches_hand_computation() {
        // heads 0, 1; durations 3, 1; tails 0, 5: job 1 preempts job 0 at t = 1
        let bound = preemptive_bound(&[0, 1], &[0.0, 1.0], &[3.0, 1.0], &[0.0, 5.0]);
        assert_eq!(bound, 7.0);
        assert_eq!(preemptive_bound(&[], &[], &[], &[]), 0.0);
    }

    #[test]
    fn closure_tracks_transitive_orderings() {
        let mut cl = Closure::new(70);
        cl.add_arc(0, 65);
        cl.add_arc(65, 3);
        assert!(cl.reaches(0, 3));
        assert!(cl.decided(3, 0));
        assert!(!cl.decided(1, 3));
        assert_eq!(cl.ancestors(3), 2);
    }
}
