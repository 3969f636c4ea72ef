//! Instance families for experiments: paths, cycles, stars, complete
//! graphs, grids and random connected spanning subgraphs of grids (which
//! stay planar).

use domatic_core::{Graph, NodeWeights, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Star(usize),
    Complete(usize),
    Grid(usize, usize),
    /// Random spanning tree of the grid plus each other grid edge with
    /// probability `keep_num / keep_den`.
    GridSubgraph {
        rows: usize,
        cols: usize,
        keep_num: u32,
        keep_den: u32,
    },
}

/// Per-vertex values: a constant, or integers drawn uniformly from `lo..=hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightSpec {
    Constant(Rational),
    Range(i64, i64),
}

impl WeightSpec {
    fn draw(&self, n: usize, rng: &mut ChaCha8Rng) -> NodeWeights {
        match self {
            WeightSpec::Constant(c) => NodeWeights::uniform(n, c.clone()),
            WeightSpec::Range(lo, hi) => {
                NodeWeights::from_ints(&(0..n).map(|_| rng.gen_range(*lo..=*hi)).collect::<Vec<_>>())
            }
        }
    }
}

fn find(parent: &mut [usize], v: usize) -> usize {
    let mut r = v;
    while parent[r] != r {
        r = parent[r];
    }
    let mut v = v;
    while parent[v] != r {
        v = std::mem::replace(&mut parent[v], r);
    }
    r
}

fn grid_subgraph(rows: usize, cols: usize, keep_num: u32, keep_den: u32, rng: &mut ChaCha8Rng) -> Graph {
    let grid = Graph::grid(rows, cols);
    let mut edges: Vec<(usize, usize)> = grid.edges().collect();
    edges.shuffle(rng);
    let mut parent: Vec<usize> = (0..grid.n()).collect();
    let mut kept = Vec::new();
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        // Draw for every edge so the stream does not depend on tree shape.
        let extra = rng.gen_ratio(keep_num, keep_den);
        if a != b {
            parent[a] = b;
            kept.push((u, v));
        } else if extra {
            kept.push((u, v));
        }
    }
    Graph::new(grid.n(), &kept).expect("subgraph of a simple graph")
}

pub fn generate(family: &Family, capacity: &WeightSpec, cost: &WeightSpec, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = match *family {
        Family::Path(n) => Graph::path(n),
        Family::Cycle(n) => Graph::cycle(n),
        Family::Star(leaves) => Graph::star(leaves),
        Family::Complete(n) => Graph::complete(n),
        Family::Grid(r, c) => Graph::grid(r, c),
        Family::GridSubgraph {
            rows,
            cols,
            keep_num,
            keep_den,
        } => grid_subgraph(rows, cols, keep_num, keep_den, &mut rng),
    };
    let n = graph.n();
    let capacity = capacity.draw(n, &mut rng);
    let cost = cost.draw(n, &mut rng);
    Instance::new(graph, capacity, cost)
}
