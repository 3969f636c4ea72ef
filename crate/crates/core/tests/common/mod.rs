#![allow(dead_code)]

use domatic_core::{Graph, NodeWeights, Rational, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (order[i], order[j]);
        edges.push((a.min(b), a.max(b)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

pub fn random_weights(n: usize, lo: i64, hi: i64, rng: &mut ChaCha8Rng) -> NodeWeights {
    NodeWeights::from_ints(&(0..n).map(|_| rng.gen_range(lo..=hi)).collect::<Vec<_>>())
}

/// Random nonnegative point with entries in {0, 1/d, ..., 1}.
pub fn random_point(n: usize, d: i64, rng: &mut ChaCha8Rng) -> NodeWeights {
    NodeWeights::new(
        (0..n)
            .map(|_| Rational::new(rng.gen_range(0..=d).into(), d.into()))
            .collect(),
    )
}

pub fn random_subset(n: usize, min: usize, rng: &mut ChaCha8Rng) -> VertexSet {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    let k = rng.gen_range(min.min(n)..=n);
    all.into_iter().take(k).collect()
}
