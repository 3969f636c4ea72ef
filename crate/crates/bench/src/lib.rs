//! Fixed inputs shared by the benchmarks.

use domatic_core::{Graph, NodeWeights};

/// Deterministic costs in 1..=5 that vary across the grid.
pub fn spread_costs(n: usize) -> NodeWeights {
    NodeWeights::from_ints(&(0..n).map(|v| 1 + (v as i64 * 7) % 5).collect::<Vec<_>>())
}

pub fn weighted_grid(rows: usize, cols: usize) -> (Graph, NodeWeights) {
    let g = Graph::grid(rows, cols);
    let w = spread_costs(g.n());
    (g, w)
}
