use crate::circuit::{CircuitInstance, Indexed, Schedule, ScheduleOrigin};
use crate::error::{Error, Result};

pub const DEFAULT_ORDERING_CAP: u128 = 10_000_000;

pub fn schedule_bruteforce(circuit: &CircuitInstance) -> Result<Schedule> {
    schedule_bruteforce_capped(circuit, DEFAULT_ORDERING_CAP)
}

/// Exhaustive search over every combination of per-qubit gate orders.
///
/// For each qubit, all orders of its gates compatible with the precedence
/// relation are listed; each combination of one order per qubit is combined
/// with the precedence arcs, cyclic combinations are discarded, and every gate
/// starts as soon as its qubit predecessors and precedence predecessors are
/// done. The best combination wins. Fails with [`Error::TooLarge`] when the
/// number of combinations exceeds `cap`.
pub fn schedule_bruteforce_capped(circuit: &CircuitInstance, cap: u128) -> Result<Schedule> {
    circuit.ensure_valid()?;
    let ix = Indexed::new(circuit);
    let n = ix.len();
    let before = precedence_closure(&ix);

    let mut per_qubit: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut total: u128 = 1;
    for gates in ix.on_qubit.iter().filter(|g| g.len() > 1) {
        let orders = qubit_orders(gates, &before, cap);
        total = total.saturating_mul(orders.len() as u128);
        if total > cap || orders.len() as u128 > cap {
            return Err(Error::TooLarge { orderings: total.max(orders.len() as u128), cap });
        }
        per_qubit.push(orders);
    }

    let mut choice = vec![0usize; per_qubit.len()];
    let mut best = f64::INFINITY;
    let mut best_starts = vec![0.0; n];
    let mut next_on: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    let mut start = vec![0.0_f64; n];
    let mut stack = Vec::with_capacity(n);
    loop {
        for v in next_on.iter_mut() {
            v.clear();
        }
        for (k, &c) in choice.iter().enumerate() {
            for w in per_qubit[k][c].windows(2) {
                next_on[w[0]].push(w[1]);
            }
        }
        for g in 0..n {
            indegree[g] = ix.preds[g].len();
            start[g] = 0.0;
        }
        for g in 0..n {
            for &h in &next_on[g] {
                indegree[h] += 1;
            }
        }
        stack.clear();
        stack.extend((0..n).filter(|&g| indegree[g] == 0));
        let mut done = 0;
        let mut span = 0.0_f64;
        while let Some(g) = stack.pop() {
            done += 1;
            let end = start[g] + ix.duration[g];
            span = span.max(end);
            for &h in ix.succs[g].iter().chain(&next_on[g]) {
                start[h] = start[h].max(end);
                indegree[h] -= 1;
                if indegree[h] == 0 {
                    stack.push(h);
                }
            }
        }
        if done == n && span < best {
            best = span;
            best_starts.copy_from_slice(&start);
        }

        // odometer step
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(ix.schedule_from_starts(&best_starts, ScheduleOrigin::Bruteforce));
            }
            choice[k] += 1;
            if choice[k] < per_qubit[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// `before[a][b]`: `a` must precede `b` under the transitive precedence relation.
fn precedence_closure(ix: &Indexed) -> Vec<Vec<bool>> {
    let n = ix.len();
    let mut before = vec![vec![false; n]; n];
    for a in 0..n {
        let mut stack = ix.succs[a].clone();
        while let Some(b) = stack.pop() {
            if !before[a][b] {
                before[a][b] = true;
                stack.extend(&ix.succs[b]);
            }
        }
    }
    before
}

fn qubit_orders(gates: &[usize], before: &[Vec<bool>], cap: u128) -> Vec<Vec<usize>> {
    fn extend(
        prefix: &mut Vec<usize>,
        rest: &mut Vec<usize>,
        before: &[Vec<bool>],
        out: &mut Vec<Vec<usize>>,
        cap: u128,
    ) {
        if out.len() as u128 > cap {
            return;
        }
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..rest.len() {
            let g = rest[k];
            if rest.iter().any(|&h| before[h][g]) {
                continue;
            }
            rest.remove(k);
            prefix.push(g);
            extend(prefix, rest, before, out, cap);
            prefix.pop();
            rest.insert(k, g);
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut gates.to_vec(), before, &mut out, cap);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{makespan, Gate, GateId};

    #[test]
    fn single_gate() {
        let c = CircuitInstance::new(1, vec![Gate::single(0, 0, 1.5)], vec![]);
        let s = schedule_bruteforce(&c).unwrap();
        assert_eq!(makespan(&c, &s).unwrap(), 1.5);
        assert_eq!(s.origin, ScheduleOrigin::Bruteforce);
    }

    #[test]
    fn cap_is_enforced() {
        let gates = (0..8).map(|k| Gate::single(k, 0, 1.0)).collect();
        let c = CircuitInstance::new(1, gates, vec![]);
        assert!(matches!(schedule_bruteforce_capped(&c, 1000), Err(Error::TooLarge { .. })));
        let s = schedule_bruteforce_capped(&c, 100_000).unwrap();
        assert_eq!(makespan(&c, &s).unwrap(), 8.0);
    }

    #[test]
    fn precedence_prunes_orders() {
        let before = vec![vec![false, true, false], vec![false; 3], vec![false; 3]];
        assert_eq!(qubit_orders(&[0, 1, 2], &before, 100).len(), 3);
    }

    #[test]
    fn path_with_long_tail() {
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
        let s = schedule_bruteforce(&c).unwrap();
        assert!((makespan(&c, &s).unwrap() - 6.0).abs() < 1e-12);
        assert_eq!(s.starts[&GateId(0)], 0.0);
    }
}
