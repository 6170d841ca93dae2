//! Closed-form makespans for QAOA circuits on star graphs.
//!
//! On a star every two-qubit gate touches the center, so the two-qubit gates
//! run one after another and only the order of the leaves matters. Leaf `k`
//! finishes at the prefix sum of two-qubit times up to its own gate plus its
//! single-qubit time; the center finishes after all two-qubit gates plus its
//! own single-qubit time.

use crate::circuit::{CircuitInstance, TIME_TOLERANCE};
use crate::error::{Error, Result};
use crate::graph::{build_qaoa_circuit, WeightedGraph};

/// Star `S_n`: center 0, leaves `1..n`. `gamma[j - 1]` is the time of gate
/// `(0, j)`; `beta[i]` is the single-qubit time on qubit `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct StarInstance {
    pub n: usize,
    pub gamma: Vec<f64>,
    pub beta: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StarScheduleResult {
    pub makespan: f64,
    /// Leaves in the order their two-qubit gates execute.
    pub order: Vec<usize>,
    /// Completion time of every qubit, center first.
    pub completions: Vec<f64>,
}

impl StarInstance {
    pub fn new(gamma: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        let n = beta.len();
        if n < 2 {
            return Err(Error::InvalidStar(format!("need at least 2 vertices, got {n}")));
        }
        if gamma.len() != n - 1 {
            return Err(Error::InvalidStar(format!(
                "{} two-qubit times for {} leaves",
                gamma.len(),
                n - 1
            )));
        }
        if let Some(t) = gamma.iter().chain(&beta).find(|t| !(**t >= 0.0 && t.is_finite())) {
            return Err(Error::InvalidStar(format!("gate time {t} is not a finite nonnegative number")));
        }
        Ok(StarInstance { n, gamma, beta })
    }

    pub fn total_gamma(&self) -> f64 {
        self.gamma.iter().sum()
    }

    pub fn max_beta(&self) -> f64 {
        self.beta.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_beta(&self) -> f64 {
        self.beta.iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn gamma_of(&self, leaf: usize) -> f64 {
        self.gamma[leaf - 1]
    }

    /// Leaves by two-qubit time, longest first, ties by leaf index.
    pub fn duration_descending(&self) -> Vec<usize> {
        let mut leaves: Vec<usize> = (1..self.n).collect();
        leaves.sort_by(|&a, &b| self.gamma_of(b).total_cmp(&self.gamma_of(a)).then(a.cmp(&b)));
        leaves
    }

    /// Leaves by single-qubit time, longest first, ties by leaf index.
    pub fn tail_descending(&self) -> Vec<usize> {
        let mut leaves: Vec<usize> = (1..self.n).collect();
        leaves.sort_by(|&a, &b| self.beta[b].total_cmp(&self.beta[a]).then(a.cmp(&b)));
        leaves
    }

    /// Edges `(0, j)` in leaf order.
    pub fn to_weighted_graph(&self) -> WeightedGraph {
        WeightedGraph {
            num_vertices: self.n,
            edges: (1..self.n).map(|j| (0, j, self.gamma_of(j))).collect(),
            vertex_weights: self.beta.clone(),
        }
    }

    pub fn to_circuit(&self) -> CircuitInstance {
        build_qaoa_circuit(&self.to_weighted_graph()).expect("a valid star is a valid weighted graph")
    }

    fn check_order(&self, order: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.n];
        if order.len() != self.n - 1 {
            return Err(Error::InvalidPermutation(format!("expected {} leaves, got {}", self.n - 1, order.len())));
        }
        for &leaf in order {
            if leaf == 0 || leaf >= self.n || seen[leaf] {
                return Err(Error::InvalidPermutation(format!("{order:?} is not a permutation of 1..{}", self.n)));
            }
            seen[leaf] = true;
        }
        Ok(())
    }

    /// Completions when two-qubit gates run back to back in `order`.
    fn serial_completions(&self, order: &[usize]) -> Vec<f64> {
        let mut completions = vec![0.0; self.n];
        let mut elapsed = 0.0;
        for &leaf in order {
            elapsed += self.gamma_of(leaf);
            completions[leaf] = elapsed + self.beta[leaf];
        }
        completions[0] = self.total_gamma() + self.beta[0];
        completions
    }
}

/// All two-qubit gates sit in their own layers, then one layer of single-qubit gates.
pub fn star_layered_time(s: &StarInstance) -> f64 {
    s.total_gamma() + s.max_beta()
}

/// Greedy completion for an explicit leaf order (the order two-qubit gates execute).
pub fn star_greedy_time(s: &StarInstance, order: &[usize]) -> Result<StarScheduleResult> {
    s.check_order(order)?;
    let completions = s.serial_completions(order);
    Ok(StarScheduleResult {
        makespan: completions.iter().copied().fold(0.0, f64::max),
        order: order.to_vec(),
        completions,
    })
}

/// Optimal star makespan: leaves ordered by decreasing single-qubit time.
///
/// Evaluated as `Σγ + max(β_0, max_k (β_k - γ-time still to run after leaf k))`.
pub fn star_exact_time(s: &StarInstance) -> StarScheduleResult {
    let order = s.tail_descending();
    let mut overlap_after = vec![0.0; s.n];
    let mut suffix = 0.0;
    for &leaf in order.iter().rev() {
        overlap_after[leaf] = suffix;
        suffix += s.gamma_of(leaf);
    }
    let slack = order
        .iter()
        .map(|&k| s.beta[k] - overlap_after[k])
        .fold(s.beta[0], f64::max);
    StarScheduleResult {
        makespan: s.total_gamma() + slack,
        completions: s.serial_completions(&order),
        order,
    }
}

/// Layered minus exact makespan, claimed to equal `t_max^β - t_min^β` when
/// every leaf single-qubit time is below the total two-qubit time and the
/// center's single-qubit time is not the smallest.
///
/// Both sides are evaluated; a disagreement beyond tolerance is reported as
/// [`Error::GapMismatch`].
pub fn star_gap(s: &StarInstance) -> Result<f64> {
    gap_preconditions(s)?;
    let formula = s.max_beta() - s.min_beta();
    let observed = star_layered_time(s) - star_exact_time(s).makespan;
    if (formula - observed).abs() > TIME_TOLERANCE {
        return Err(Error::GapMismatch { formula, observed });
    }
    Ok(formula)
}

pub fn gap_preconditions(s: &StarInstance) -> Result<()> {
    let total = s.total_gamma();
    if let Some(k) = (1..s.n).find(|&k| s.beta[k] >= total) {
        return Err(Error::GapPrecondition(format!(
            "leaf {k} single-qubit time {} is not below the total two-qubit time {total}",
            s.beta[k]
        )));
    }
    if s.beta[0] <= s.min_beta() {
        return Err(Error::GapPrecondition("center single-qubit time is the minimum".into()));
    }
    Ok(())
}
