//! Benchmark instances for the schedulers.

use qsched::{assign_random_times, build_qaoa_circuit, CircuitInstance, Graph, RngSpec, WeightedGraph};

/// Cycle on five qubits with two-qubit times 5, 4, 3, 2, 1 and unit single-qubit times.
pub fn c5() -> CircuitInstance {
    build_qaoa_circuit(&WeightedGraph {
        num_vertices: 5,
        edges: vec![(0, 1, 5.0), (1, 2, 4.0), (2, 3, 3.0), (3, 4, 2.0), (0, 4, 1.0)],
        vertex_weights: vec![1.0; 5],
    })
    .unwrap()
}

pub fn complete(n: usize) -> Graph {
    let edges = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    Graph::new(n, edges)
}

/// QAOA circuit on `graph` with seeded random gate times.
pub fn random_qaoa(graph: &Graph, seed: u64) -> CircuitInstance {
    build_qaoa_circuit(&assign_random_times(graph, &RngSpec::new(seed))).unwrap()
}
