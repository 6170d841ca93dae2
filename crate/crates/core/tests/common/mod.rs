#![allow(dead_code)]

use std::path::PathBuf;

use qsched::graph::uniform_angle;
use qsched::{build_qaoa_circuit, CircuitInstance, GateId, StarInstance, WeightedGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_file(vertices: usize) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../data/graph{vertices}c.g6"))
}

/// Cycle on five qubits with two-qubit times 5, 4, 3, 2, 1 and unit single-qubit times.
pub fn c5() -> CircuitInstance {
    build_qaoa_circuit(&WeightedGraph {
        num_vertices: 5,
        edges: vec![(0, 1, 5.0), (1, 2, 4.0), (2, 3, 3.0), (3, 4, 2.0), (0, 4, 1.0)],
        vertex_weights: vec![1.0; 5],
    })
    .unwrap()
}

pub fn s5() -> StarInstance {
    StarInstance::new(vec![1.0, 1.0, 1.0, 0.01], vec![0.01, 0.01, 0.01, 0.01, 1.99]).unwrap()
}

/// Path 0-1-2 whose qubit 0 carries a long single-qubit gate.
pub fn tail_heavy_path() -> CircuitInstance {
    build_qaoa_circuit(&WeightedGraph {
        num_vertices: 3,
        edges: vec![(0, 1, 1.0), (1, 2, 1.01)],
        vertex_weights: vec![5.0, 0.01, 0.01],
    })
    .unwrap()
}

/// Random graph on up to `max_n` vertices with uniform (0, 2π] times, built
/// into a QAOA circuit, plus up to `extra` random precedence pairs that keep
/// the relation acyclic.
pub fn random_circuit(seed: u64, max_n: usize, extra: usize) -> CircuitInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.2..=1.0);
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                edges.push((i, j, uniform_angle(&mut rng)));
            }
        }
    }
    let vertex_weights = (0..n).map(|_| uniform_angle(&mut rng)).collect();
    let mut circuit = build_qaoa_circuit(&WeightedGraph { num_vertices: n, edges, vertex_weights }).unwrap();

    // edge gates precede vertex gates, so any order that keeps edge gates
    // first and shuffles within each group is topological
    let m = circuit.gates.len() - n;
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(&mut rng);
    let mut tail: Vec<usize> = (m..m + n).collect();
    tail.shuffle(&mut rng);
    order.extend(tail);
    let count = if extra == 0 { 0 } else { rng.gen_range(0..=extra) };
    for _ in 0..count {
        let a = rng.gen_range(0..order.len());
        let b = rng.gen_range(0..order.len());
        if a < b {
            let pair = (GateId(order[a]), GateId(order[b]));
            if !circuit.precedence.contains(&pair) {
                circuit.precedence.push(pair);
            }
        }
    }
    circuit
}

pub fn random_star(seed: u64, n_range: std::ops::RangeInclusive<usize>) -> StarInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(n_range);
    let gamma = (1..n).map(|_| uniform_angle(&mut rng)).collect();
    let beta = (0..n).map(|_| uniform_angle(&mut rng)).collect();
    StarInstance::new(gamma, beta).unwrap()
}
