//! Row-generated LPs and the flow-based separator against brute force on
//! every connected graph up to five vertices. The acceptance suite runs the
//! same comparison on six.

mod common;

use domatic_core::oracle::{
    brute_force_separator, connected_graphs, dense_lp_solve, exact_fractional_cds_packing, LpKind, OracleBudget,
};
use domatic_core::pipeline::solve_ds_lp;
use domatic_core::{min_capacity_separator, solve_cds_lp, solve_nwst_lp, Graph, NodeWeights, SteinerInstance};
use num_traits::Signed;

fn suite(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(|n| connected_graphs(n).unwrap()).collect()
}

fn weightings(g: &Graph, seed: u64) -> Vec<NodeWeights> {
    let mut rng = common::rng(seed);
    vec![
        NodeWeights::from_ints(&vec![1; g.n()]),
        common::random_weights(g.n(), 0, 4, &mut rng),
        common::random_weights(g.n(), 1, 9, &mut rng),
    ]
}

#[test]
fn ds_and_cds_lp_match_dense() {
    let budget = OracleBudget::default();
    for (i, g) in suite(5).iter().enumerate() {
        for w in weightings(g, i as u64) {
            let ds = solve_ds_lp(g, &w).unwrap();
            assert_eq!(ds.value, dense_lp_solve(g, &LpKind::MinDs, &w, &budget).unwrap().value);
            let cds = solve_cds_lp(g, &w).unwrap();
            let dense = dense_lp_solve(g, &LpKind::MinCds, &w, &budget).unwrap();
            assert_eq!(cds.value, dense.value, "{g:?} {w:?}");
        }
    }
}

#[test]
fn nwst_lp_matches_dense() {
    let budget = OracleBudget::default();
    for (i, g) in suite(5).iter().enumerate().filter(|(_, g)| g.n() >= 2) {
        let mut rng = common::rng(1000 + i as u64);
        for w in weightings(g, i as u64) {
            let t = common::random_subset(g.n(), 2, &mut rng);
            let inst = SteinerInstance::new(g, w.clone(), t.clone()).unwrap();
            let lp = solve_nwst_lp(&inst).unwrap();
            let dense = dense_lp_solve(g, &LpKind::NwSt(t.clone()), &w, &budget).unwrap();
            assert_eq!(lp.value, dense.value, "{g:?} T={t} {w:?}");
        }
    }
}

#[test]
fn separator_matches_brute_force() {
    let budget = OracleBudget::default();
    for (i, g) in suite(5).iter().enumerate() {
        for w in weightings(g, i as u64)
            .into_iter()
            .filter(|w| w.iter().all(|c| c.is_positive()))
        {
            let brute = brute_force_separator(g, &w, &budget).unwrap();
            match (min_capacity_separator(g, &w), brute) {
                (Ok(cert), Some((_, k))) => {
                    assert_eq!(cert.capacity, k);
                    assert!(cert.verify(g, &w));
                }
                (Err(_), None) => assert!(g.is_complete()),
                (got, want) => panic!("{g:?}: {got:?} vs {want:?}"),
            }
        }
    }
}

#[test]
fn fractional_packing_at_most_k() {
    let budget = OracleBudget::default();
    for g in suite(5).iter().filter(|g| !g.is_complete()) {
        let unit = NodeWeights::from_ints(&vec![1; g.n()]);
        let k = min_capacity_separator(g, &unit).unwrap().capacity;
        let (value, _) = exact_fractional_cds_packing(g, &unit, &budget).unwrap();
        assert!(value <= k, "{g:?}: {value} > {k}");
    }
}
