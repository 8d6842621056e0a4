//! Workloads shared by the criterion benches.

use sdiam_core::verify::random_graphs;
use sdiam_core::{parse_graph6, Graph};

/// Seeded connected G(n, 1/2) samples.
pub fn sample_graphs(n: usize, count: usize, seed: u64) -> Vec<Graph> {
    random_graphs(n, (1, 2), count, seed)
        .expect("p = 1/2 connects quickly at these orders")
        .iter()
        .map(|line| parse_graph6(line).expect("generator emits valid graph6"))
        .collect()
}

pub fn petersen() -> Graph {
    parse_graph6("IheA@GUAo").expect("valid graph6")
}
