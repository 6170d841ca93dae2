mod common;

use std::collections::BTreeSet;

use common::data_file;
use qsched::graph::parse_graph_list;
use qsched::{encode_graph6, load_graph_file, parse_graph6, Error};
use serde::Deserialize;

#[derive(Deserialize)]
struct Reference {
    record: String,
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[test]
fn connected_graph_counts() {
    for (v, count) in [(3, 2), (4, 6), (5, 21), (6, 112), (7, 853)] {
        let graphs = load_graph_file(data_file(v)).unwrap();
        assert_eq!(graphs.len(), count, "{v} vertices");
        assert!(graphs.iter().all(|g| g.num_vertices == v && g.is_connected()));
    }
}

#[test]
fn every_record_round_trips() {
    for v in 3..=7 {
        let text = std::fs::read_to_string(data_file(v)).unwrap();
        for line in text.lines().filter(|l| !l.is_empty()) {
            assert_eq!(encode_graph6(&parse_graph6(line).unwrap()), line);
        }
    }
}

#[test]
fn reference_sample_agrees() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/graph6_reference.json");
    let sample: Vec<Reference> = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(sample.len(), 50);
    for r in sample {
        let g = parse_graph6(&r.record).unwrap();
        assert_eq!(g.num_vertices, r.n, "{}", r.record);
        let ours: BTreeSet<_> = g.edges.iter().copied().collect();
        let theirs: BTreeSet<_> = r.edges.iter().copied().collect();
        assert_eq!(ours, theirs, "{}", r.record);
    }
}

#[test]
fn five_vertex_file_has_eight_edge_graphs() {
    let graphs = load_graph_file(data_file(5)).unwrap();
    assert!(graphs.iter().any(|g| g.edges.len() == 8));
}

#[test]
fn empty_and_header_only_files() {
    let p = std::path::Path::new("x.g6");
    assert!(parse_graph_list("", p).unwrap().is_empty());
    assert!(parse_graph_list(">>graph6<<\n\n", p).unwrap().is_empty());
    assert_eq!(parse_graph_list(">>graph6<<Bw\n", p).unwrap().len(), 1);
}

#[test]
fn bad_line_reports_its_number() {
    match parse_graph_list("Bw\n\nB!\n", std::path::Path::new("x.g6")) {
        Err(Error::GraphFile { line, .. }) => assert_eq!(line, 3),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn missing_file_is_an_io_error() {
    assert!(matches!(load_graph_file("/nonexistent/graphs.g6"), Err(Error::Io(_))));
}
