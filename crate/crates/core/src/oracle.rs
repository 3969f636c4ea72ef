//! Brute-force ground truth for small graphs. Everything here enumerates
//! subsets directly and refuses (loudly) to run past its budget.

use std::collections::HashMap;

use num_traits::One;

use crate::graph::{Graph, NodeWeights, VertexSet};
use crate::lp::{covering_certificate_holds, solve_covering, solve_packing_master, CoveringModel, LpResult, LpStatus};
use crate::packing::Packing;
use crate::rational::Rational;
use crate::{Error, Result};

/// Hard ceiling on `max_vertices`.
pub const MAX_ORACLE_VERTICES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    /// Cap on the number of subsets enumerated (2^n).
    pub max_sets: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_vertices: 7,
            max_sets: 1 << 20,
        }
    }
}

impl OracleBudget {
    pub fn new(max_vertices: usize, max_sets: u64) -> Result<Self> {
        if max_vertices > MAX_ORACLE_VERTICES {
            return Err(Error::Budget(format!(
                "max_vertices {max_vertices} exceeds the hard limit {MAX_ORACLE_VERTICES}"
            )));
        }
        Ok(Self { max_vertices, max_sets })
    }

    fn check(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        if n > self.max_vertices.min(MAX_ORACLE_VERTICES) {
            return Err(Error::Budget(format!(
                "{n} vertices exceeds the oracle limit of {}",
                self.max_vertices
            )));
        }
        if (1u64 << n) > self.max_sets {
            return Err(Error::Budget(format!(
                "2^{n} subsets exceeds max_sets {}",
                self.max_sets
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    Dominating,
    ConnectedDominating,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpKind {
    MinDs,
    MinCds,
    NwSt(VertexSet),
}

fn masks(n: usize) -> impl Iterator<Item = u64> {
    0..(1u64 << n)
}

fn mask_vec(bits: u64, n: usize) -> Vec<bool> {
    (0..n).map(|v| bits >> v & 1 == 1).collect()
}

fn sorted_lex(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort();
    sets
}

/// All dominating sets, lexicographic by sorted member list.
pub fn enumerate_dominating(g: &Graph, budget: &OracleBudget) -> Result<Vec<VertexSet>> {
    budget.check(g)?;
    let n = g.n();
    Ok(sorted_lex(
        masks(n)
            .skip(1)
            .filter(|&b| g.dominates_mask(&mask_vec(b, n)))
            .map(VertexSet::from_bits)
            .collect(),
    ))
}

/// All connected dominating sets, lexicographic by sorted member list.
pub fn enumerate_cds(g: &Graph, budget: &OracleBudget) -> Result<Vec<VertexSet>> {
    budget.check(g)?;
    let n = g.n();
    Ok(sorted_lex(
        masks(n)
            .skip(1)
            .filter(|&b| {
                let m = mask_vec(b, n);
                g.dominates_mask(&m) && g.component_masks(&m).len() == 1
            })
            .map(VertexSet::from_bits)
            .collect(),
    ))
}

/// Cheapest (connected) dominating set; lexicographically first on ties.
pub fn exact_min_cost_set(
    g: &Graph,
    cost: &NodeWeights,
    kind: SetKind,
    budget: &OracleBudget,
) -> Result<(VertexSet, Rational)> {
    cost.check_for(g)?;
    let sets = match kind {
        SetKind::Dominating => enumerate_dominating(g, budget)?,
        SetKind::ConnectedDominating => enumerate_cds(g, budget)?,
    };
    let mut best: Option<(VertexSet, Rational)> = None;
    for s in sets {
        let c = cost.sum_over(&s);
        if best.as_ref().is_none_or(|(_, bc)| c < *bc) {
            best = Some((s, c));
        }
    }
    best.ok_or_else(|| Error::InvalidInput("no feasible set (empty or disconnected graph)".into()))
}

/// Fractional connected domatic packing number under `capacity`, by the
/// packing LP over every connected dominating set.
pub fn exact_fractional_cds_packing(
    g: &Graph,
    capacity: &NodeWeights,
    budget: &OracleBudget,
) -> Result<(Rational, Packing)> {
    capacity.check_for(g)?;
    let columns = enumerate_cds(g, budget)?;
    if columns.is_empty() {
        return Ok((Rational::default(), Packing::default()));
    }
    let master = solve_packing_master(&columns, capacity)?;
    let entries = columns
        .into_iter()
        .zip(master.weights)
        .filter(|(_, w)| *w > Rational::default())
        .collect();
    Ok((master.value, Packing { entries }))
}

/// Cheapest node separator by enumeration: S with G − S having at least
/// two components. `None` when there is none (complete graphs).
pub fn brute_force_separator(
    g: &Graph,
    capacity: &NodeWeights,
    budget: &OracleBudget,
) -> Result<Option<(VertexSet, Rational)>> {
    budget.check(g)?;
    capacity.check_for(g)?;
    let n = g.n();
    let mut best: Option<(VertexSet, Rational)> = None;
    for b in masks(n) {
        let rest: Vec<bool> = mask_vec(b, n).into_iter().map(|m| !m).collect();
        if g.component_masks(&rest).len() >= 2 {
            let s = VertexSet::from_bits(b);
            let c = capacity.sum_over(&s);
            if best.as_ref().is_none_or(|(bs, bc)| (&c, &s) < (bc, bs)) {
                best = Some((s, c));
            }
        }
    }
    Ok(best)
}

/// Every covering row of the chosen LP, materialised: Γ⁺(v) for domination,
/// Γ(S) for S ∈ 𝒮 (CDS) or S ∈ 𝒮_T (Steiner). Duplicates removed, sorted.
pub fn all_rows(g: &Graph, which: &LpKind, budget: &OracleBudget) -> Result<Vec<VertexSet>> {
    budget.check(g)?;
    let n = g.n();
    let mut rows: Vec<VertexSet> = Vec::new();
    if matches!(which, LpKind::MinDs | LpKind::MinCds) {
        rows.extend((0..n).map(|v| g.closed_nbhd(v).collect::<VertexSet>()));
    }
    match which {
        LpKind::MinDs => {}
        LpKind::MinCds => {
            for b in masks(n).skip(1) {
                let inside = mask_vec(b, n);
                let boundary = g.boundary_mask(&inside);
                let has_boundary = boundary.contains(&true);
                let has_rest = (0..n).any(|v| !inside[v] && !boundary[v]);
                if has_boundary && has_rest {
                    rows.push(VertexSet::from_mask(&boundary));
                }
            }
        }
        LpKind::NwSt(t) => {
            g.check_set(t)?;
            for b in masks(n) {
                let inside = mask_vec(b, n);
                let t_in = t.iter().any(|v| inside[v]);
                let t_out = t.iter().any(|v| !inside[v]);
                if t_in && t_out {
                    rows.push(VertexSet::from_mask(&g.boundary_mask(&inside)));
                }
            }
        }
    }
    rows.sort();
    rows.dedup();
    Ok(rows)
}

/// Exact optimum with every constraint explicit. The optimum is accepted
/// only with a verified primal/dual certificate over the full row set.
pub fn dense_lp_solve(g: &Graph, which: &LpKind, cost: &NodeWeights, budget: &OracleBudget) -> Result<LpResult> {
    cost.check_for(g)?;
    let rows = all_rows(g, which, budget)?;
    let res = solve_covering(CoveringModel::new(cost.clone(), rows))?;
    if res.status == LpStatus::Optimal && !covering_certificate_holds(&res.rows, cost, &res.x, &res.row_duals) {
        return Err(Error::InvalidInput("dense LP certificate failed".into()));
    }
    Ok(res)
}

/// Cheapest vertex set containing `terminals` that induces a connected
/// subgraph; lexicographically first on ties.
pub fn exact_min_steiner(
    g: &Graph,
    weights: &NodeWeights,
    terminals: &VertexSet,
    budget: &OracleBudget,
) -> Result<Option<(VertexSet, Rational)>> {
    budget.check(g)?;
    weights.check_for(g)?;
    let n = g.n();
    let mut best: Option<(VertexSet, Rational)> = None;
    for b in masks(n).skip(1) {
        let m = mask_vec(b, n);
        if terminals.iter().all(|t| m[t]) && g.component_masks(&m).len() == 1 {
            let s = VertexSet::from_bits(b);
            let w = weights.sum_over(&s);
            if best.as_ref().is_none_or(|(bs, bw)| (&w, &s) < (bw, bs)) {
                best = Some((s, w));
            }
        }
    }
    Ok(best)
}

/// H(m) = 1 + 1/2 + … + 1/m.
pub fn harmonic(m: usize) -> Rational {
    (1..=m)
        .map(|i| Rational::one() / Rational::from_integer(i.into()))
        .sum()
}

fn adjacency_bits(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &u| acc | 1 << u))
        .collect()
}

fn isomorphic(a: &[u32], b: &[u32]) -> bool {
    fn extend(a: &[u32], b: &[u32], map: &mut Vec<usize>, used: u32) -> bool {
        let v = map.len();
        if v == a.len() {
            return true;
        }
        for w in 0..b.len() {
            if used >> w & 1 == 1 || a[v].count_ones() != b[w].count_ones() {
                continue;
            }
            let consistent = map
                .iter()
                .enumerate()
                .all(|(u, &mu)| (a[v] >> u & 1) == (b[w] >> mu & 1));
            if consistent {
                map.push(w);
                if extend(a, b, map, used | 1 << w) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    a.len() == b.len() && extend(a, b, &mut Vec::with_capacity(a.len()), 0)
}

fn invariant(adj: &[u32]) -> Vec<(u32, Vec<u32>)> {
    let mut inv: Vec<(u32, Vec<u32>)> = adj
        .iter()
        .map(|&nb| {
            let mut d: Vec<u32> = (0..adj.len())
                .filter(|&u| nb >> u & 1 == 1)
                .map(|u| adj[u].count_ones())
                .collect();
            d.sort_unstable();
            (nb.count_ones(), d)
        })
        .collect();
    inv.sort();
    inv
}

/// One representative of every isomorphism class of connected graphs on
/// `n` vertices (1, 1, 2, 6, 21, 112 for n = 1..=6), in order of edge
/// bitmask of the first labelled graph found.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > 7 {
        return Err(Error::Budget(format!("connected graph enumeration on {n} vertices")));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut classes: HashMap<Vec<(u32, Vec<u32>)>, Vec<usize>> = HashMap::new();
    let mut reps: Vec<(Graph, Vec<u32>)> = Vec::new();
    for bits in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if edges.len() + 1 < n {
            continue;
        }
        let g = Graph::new(n, &edges).expect("simple by construction");
        if !g.is_connected() {
            continue;
        }
        let adj = adjacency_bits(&g);
        let bucket = classes.entry(invariant(&adj)).or_default();
        if bucket.iter().any(|&r| isomorphic(&adj, &reps[r].1)) {
            continue;
        }
        bucket.push(reps.len());
        reps.push((g, adj));
    }
    Ok(reps.into_iter().map(|(g, _)| g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn b() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn cds_enumerations() {
        let p3 = enumerate_cds(&Graph::path(3), &b()).unwrap();
        assert_eq!(
            p3,
            vec![
                VertexSet::from([0, 1]),
                VertexSet::from([0, 1, 2]),
                VertexSet::from([1]),
                VertexSet::from([1, 2])
            ]
        );
        let c5 = enumerate_cds(&Graph::cycle(5), &b()).unwrap();
        assert_eq!(c5.len(), 11);
        assert_eq!(c5.iter().filter(|s| s.len() == 3).count(), 5);
        assert_eq!(c5.iter().filter(|s| s.len() == 4).count(), 5);
        assert_eq!(enumerate_cds(&Graph::complete(3), &b()).unwrap().len(), 7);
    }

    #[test]
    fn min_cost_sets() {
        let p3 = Graph::path(3);
        let unit = NodeWeights::uniform(3, int(1));
        for kind in [SetKind::Dominating, SetKind::ConnectedDominating] {
            assert_eq!(
                exact_min_cost_set(&p3, &unit, kind, &b()).unwrap(),
                (VertexSet::from([1]), int(1))
            );
        }
        let star = Graph::star(3);
        let c = NodeWeights::from_ints(&[2, 1, 1, 1]);
        assert_eq!(
            exact_min_cost_set(&star, &c, SetKind::Dominating, &b()).unwrap(),
            (VertexSet::from([0]), int(2))
        );
        let (s, v) = exact_min_cost_set(
            &Graph::cycle(5),
            &NodeWeights::uniform(5, int(1)),
            SetKind::ConnectedDominating,
            &b(),
        )
        .unwrap();
        assert_eq!((s.len(), v), (3, int(3)));
    }

    #[test]
    fn fractional_packings() {
        let (v, p) = exact_fractional_cds_packing(&Graph::cycle(5), &NodeWeights::uniform(5, int(1)), &b()).unwrap();
        assert_eq!(v, frac(5, 3));
        assert_eq!(p.size(), frac(5, 3));
        let (v, _) = exact_fractional_cds_packing(&Graph::path(3), &NodeWeights::uniform(3, int(1)), &b()).unwrap();
        assert_eq!(v, int(1));
        let (v, _) = exact_fractional_cds_packing(&Graph::complete(4), &NodeWeights::uniform(4, int(1)), &b()).unwrap();
        assert_eq!(v, int(4));
    }

    #[test]
    fn dense_lps() {
        let p3 = Graph::path(3);
        let unit = NodeWeights::uniform(3, int(1));
        assert_eq!(dense_lp_solve(&p3, &LpKind::MinDs, &unit, &b()).unwrap().value, int(1));
        assert_eq!(dense_lp_solve(&p3, &LpKind::MinCds, &unit, &b()).unwrap().value, int(1));
        let w = NodeWeights::from_ints(&[0, 5, 0]);
        let t = LpKind::NwSt(VertexSet::from([0, 2]));
        assert_eq!(dense_lp_solve(&p3, &t, &w, &b()).unwrap().value, int(5));
    }

    #[test]
    fn separators_by_enumeration() {
        let (s, c) = brute_force_separator(&Graph::cycle(5), &NodeWeights::uniform(5, int(1)), &b())
            .unwrap()
            .unwrap();
        assert_eq!((s, c), (VertexSet::from([0, 2]), int(2)));
        assert_eq!(
            brute_force_separator(&Graph::complete(4), &NodeWeights::uniform(4, int(1)), &b()).unwrap(),
            None
        );
    }

    #[test]
    fn budget_is_loud() {
        let g = Graph::path(8);
        assert!(matches!(enumerate_cds(&g, &b()), Err(Error::Budget(_))));
        assert!(OracleBudget::new(21, 1 << 30).is_err());
        let tight = OracleBudget::new(7, 4).unwrap();
        assert!(matches!(enumerate_cds(&Graph::path(3), &tight), Err(Error::Budget(_))));
    }

    #[test]
    fn graph_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic(1), int(1));
        assert_eq!(harmonic(3), frac(11, 6));
    }
}
