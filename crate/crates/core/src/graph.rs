//! Graph ingestion: graph6 records, random gate times, and QAOA-style circuits.

use std::collections::HashSet;
use std::f64::consts::TAU;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{CircuitInstance, Gate, GateId};
use crate::error::{Error, Result};

const GRAPH6_HEADER: &str = ">>graph6<<";
const MAX_SHORT_N: usize = 62;

/// Undirected simple graph; edges `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Self {
        Graph { num_vertices, edges }
    }

    pub fn star(n: usize) -> Self {
        Graph::new(n, (1..n).map(|j| (0, j)).collect())
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        Graph::new(n, edges)
    }

    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.num_vertices];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; self.num_vertices];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.num_vertices
    }
}

fn graph6_bytes(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Decodes one graph6 record (short form, `n <= 62`).
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let bytes = line.trim_end_matches(['\r', '\n']).as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b:#04x} outside the printable range 63..=126")));
    }
    let Some((&first, body)) = bytes.split_first() else {
        return Err(Error::Graph6("empty record".into()));
    };
    let n = usize::from(first - 63);
    if n > MAX_SHORT_N {
        return Err(Error::Graph6("only graphs with at most 62 vertices are supported".into()));
    }
    if body.len() != graph6_bytes(n) {
        return Err(Error::Graph6(format!(
            "expected {} data bytes for n = {n}, found {}",
            graph6_bytes(n),
            body.len()
        )));
    }

    let mut edges = Vec::new();
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let chunk = body[bit / 6] - 63;
            if chunk & (1 << (5 - bit % 6)) != 0 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Ok(Graph::new(n, edges))
}

/// Encodes a graph in short graph6 form. Panics if `n > 62`.
pub fn encode_graph6(graph: &Graph) -> String {
    let n = graph.num_vertices;
    assert!(n <= MAX_SHORT_N, "short graph6 form holds at most 62 vertices");
    let present: HashSet<(usize, usize)> =
        graph.edges.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
    let mut out = vec![n as u8 + 63];
    let mut chunk = 0u8;
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | u8::from(present.contains(&(i, j)));
            bit += 1;
            if bit % 6 == 0 {
                out.push(chunk + 63);
                chunk = 0;
            }
        }
    }
    if bit % 6 != 0 {
        out.push((chunk << (6 - bit % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses newline-separated graph6 records, skipping blank lines and the
/// optional `>>graph6<<` header. Errors carry 1-based line numbers.
pub fn parse_graph_list(text: &str, path: &Path) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
        if line.trim().is_empty() {
            continue;
        }
        let graph = parse_graph6(line).map_err(|e| Error::GraphFile {
            path: path.to_path_buf(),
            line: k + 1,
            message: e.to_string(),
        })?;
        graphs.push(graph);
    }
    Ok(graphs)
}

pub fn load_graph_file(path: impl AsRef<Path>) -> Result<Vec<Graph>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_graph_list(&text, path)
}

/// Graph with gate durations: `t_ij` on edges and `t_i` on vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedGraph {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize, f64)>,
    pub vertex_weights: Vec<f64>,
}

impl WeightedGraph {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGraph(msg));
        if self.num_vertices == 0 {
            return bad("graph has no vertices".into());
        }
        if self.vertex_weights.len() != self.num_vertices {
            return bad(format!(
                "{} vertex weights for {} vertices",
                self.vertex_weights.len(),
                self.num_vertices
            ));
        }
        let mut seen = HashSet::new();
        for &(i, j, w) in &self.edges {
            if !(i < j && j < self.num_vertices) {
                return bad(format!("edge ({i}, {j}) is not 0 <= i < j < n"));
            }
            if !seen.insert((i, j)) {
                return bad(format!("duplicate edge ({i}, {j})"));
            }
            if !(w >= 0.0 && w.is_finite()) {
                return bad(format!("edge ({i}, {j}) has weight {w}"));
            }
        }
        if let Some((i, w)) = self.vertex_weights.iter().enumerate().find(|(_, w)| !(**w >= 0.0 && w.is_finite())) {
            return bad(format!("vertex {i} has weight {w}"));
        }
        Ok(())
    }
}

/// Seeded source of gate times.
///
/// Draws use `ChaCha8Rng::seed_from_u64(seed)`; each value is `2π(1 - u)`
/// with `u` a standard `[0, 1)` double, so times lie in `(0, 2π]`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RngSpec {
    pub seed: u64,
    pub algorithm_label: &'static str,
}

impl RngSpec {
    pub const ALGORITHM: &'static str = "chacha8/seed_from_u64/2pi(1-u)";

    pub fn new(seed: u64) -> Self {
        RngSpec {
            seed,
            algorithm_label: Self::ALGORITHM,
        }
    }

    pub fn generator(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

pub fn uniform_angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.gen();
    TAU * (1.0 - u)
}

/// Edge weights are drawn first in edge-list order, then vertex weights in vertex order.
pub fn assign_random_times(graph: &Graph, rng: &RngSpec) -> WeightedGraph {
    let mut gen = rng.generator();
    let edges = graph
        .edges
        .iter()
        .map(|&(i, j)| (i, j, uniform_angle(&mut gen)))
        .collect();
    let vertex_weights = (0..graph.num_vertices).map(|_| uniform_angle(&mut gen)).collect();
    WeightedGraph {
        num_vertices: graph.num_vertices,
        edges,
        vertex_weights,
    }
}

/// One two-qubit gate per edge (ids `0..|E|`) followed by one single-qubit
/// gate per vertex; every edge gate precedes the vertex gates of both endpoints.
pub fn build_qaoa_circuit(wg: &WeightedGraph) -> Result<CircuitInstance> {
    wg.validate()?;
    let m = wg.edges.len();
    let mut gates: Vec<Gate> = wg
        .edges
        .iter()
        .enumerate()
        .map(|(k, &(i, j, w))| Gate::two(k, i, j, w))
        .collect();
    gates.extend(wg.vertex_weights.iter().enumerate().map(|(v, &w)| Gate::single(m + v, v, w)));

    let mut precedence = Vec::with_capacity(2 * m);
    for (k, &(i, j, _)) in wg.edges.iter().enumerate() {
        precedence.push((GateId(k), GateId(m + i)));
        precedence.push((GateId(k), GateId(m + j)));
    }
    Ok(CircuitInstance::new(wg.num_vertices, gates, precedence))
}
