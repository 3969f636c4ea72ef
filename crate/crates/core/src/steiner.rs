//! Node-weighted Steiner tree: the covering LP over terminal-separating sets
//! and a spider-greedy connector.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::Zero;

use crate::cuts::separate_nwst_lp;
use crate::graph::{Graph, NodeWeights, VertexSet};
use crate::lp::{solve_covering, CoveringModel, LpResult, LpStatus};
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct SteinerInstance<'a> {
    pub graph: &'a Graph,
    pub weights: NodeWeights,
    pub terminals: VertexSet,
}

impl<'a> SteinerInstance<'a> {
    pub fn new(graph: &'a Graph, weights: NodeWeights, terminals: VertexSet) -> Result<Self> {
        weights.check_for(graph)?;
        graph.check_set(&terminals)?;
        if terminals.is_empty() {
            return Err(Error::InvalidInput("no terminals".into()));
        }
        Ok(Self {
            graph,
            weights,
            terminals,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerSolution {
    pub nodes: VertexSet,
    pub weight: Rational,
    /// weight / (exact LP value), when computed and the LP value is positive.
    pub certified_ratio: Option<Rational>,
}

/// Node-weighted shortest paths from `center`: `dist[u]` sums the residual
/// weights of the path vertices after `center`, `u` included.
fn paths_from(g: &Graph, residual: &[Rational], center: usize) -> (Vec<Option<Rational>>, Vec<Option<usize>>) {
    let n = g.n();
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    dist[center] = Some(Rational::zero());
    let mut heap = BinaryHeap::from([Reverse((Rational::zero(), center))]);
    while let Some(Reverse((d, u))) = heap.pop() {
        if std::mem::replace(&mut done[u], true) {
            continue;
        }
        for &v in g.neighbors(u) {
            if done[v] {
                continue;
            }
            let nd = &d + &residual[v];
            if dist[v].as_ref().is_none_or(|cur| nd < *cur) {
                dist[v] = Some(nd.clone());
                pred[v] = Some(u);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    (dist, pred)
}

struct Spider {
    ratio: Rational,
    center: usize,
    contacts: Vec<usize>,
    pred: Vec<Option<usize>>,
}

/// Greedy spider contraction. Terminal components start as the components
/// of G[T]; each round picks the spider (a center plus cheapest paths to
/// `j ≥ 2` distinct components) of least residual weight per component
/// merged, already-selected vertices costing nothing. Ties: smaller ratio,
/// then lower center id, then more legs.
pub fn spider_greedy(inst: &SteinerInstance<'_>) -> Result<SteinerSolution> {
    let g = inst.graph;
    let n = g.n();
    let mut selected = inst.terminals.to_mask(n);
    loop {
        let comps = g.component_masks(&selected);
        if comps.len() <= 1 {
            break;
        }
        let mut comp_of = vec![usize::MAX; n];
        for (i, c) in comps.iter().enumerate() {
            for v in (0..n).filter(|&v| c[v]) {
                comp_of[v] = i;
            }
        }
        let residual: Vec<Rational> = (0..n)
            .map(|v| {
                if selected[v] {
                    Rational::zero()
                } else {
                    inst.weights.get(v).clone()
                }
            })
            .collect();
        let mut best: Option<Spider> = None;
        for center in 0..n {
            let (dist, pred) = paths_from(g, &residual, center);
            // Cheapest contact per component; lowest id on ties.
            let mut contact: Vec<Option<(Rational, usize)>> = vec![None; comps.len()];
            for u in 0..n {
                if comp_of[u] == usize::MAX {
                    continue;
                }
                if let Some(d) = &dist[u] {
                    let slot = &mut contact[comp_of[u]];
                    if slot.as_ref().is_none_or(|(cd, _)| d < cd) {
                        *slot = Some((d.clone(), u));
                    }
                }
            }
            let mut legs: Vec<(Rational, usize, usize)> = contact
                .into_iter()
                .enumerate()
                .filter_map(|(k, c)| c.map(|(d, u)| (d, k, u)))
                .collect();
            if legs.len() < 2 {
                continue;
            }
            legs.sort();
            let mut total = residual[center].clone();
            let mut local: Option<(Rational, usize)> = None;
            for (j, leg) in legs.iter().enumerate() {
                total += &leg.0;
                if j == 0 {
                    continue;
                }
                let ratio = &total / Rational::from_integer((j + 1).into());
                if local.as_ref().is_none_or(|(r, _)| ratio <= *r) {
                    local = Some((ratio, j + 1));
                }
            }
            let (ratio, legs_used) = local.expect("at least two legs");
            if best.as_ref().is_none_or(|b| ratio < b.ratio) {
                best = Some(Spider {
                    ratio,
                    center,
                    contacts: legs[..legs_used].iter().map(|l| l.2).collect(),
                    pred,
                });
            }
        }
        let spider = best.ok_or(Error::SteinerInfeasible)?;
        selected[spider.center] = true;
        for &c in &spider.contacts {
            let mut v = c;
            selected[v] = true;
            while let Some(p) = spider.pred[v] {
                selected[p] = true;
                v = p;
            }
        }
    }
    let nodes = VertexSet::from_mask(&selected);
    Ok(SteinerSolution {
        weight: inst.weights.sum_over(&nodes),
        nodes,
        certified_ratio: None,
    })
}

/// Exact nwST LP optimum by row generation over terminal-separating sets.
pub fn solve_nwst_lp(inst: &SteinerInstance<'_>) -> Result<LpResult> {
    if inst.terminals.len() < 2 {
        return Err(Error::InvalidInput("need at least two terminals".into()));
    }
    let g = inst.graph;
    let terminals = inst.terminals.clone();
    let model =
        CoveringModel::new(inst.weights.clone(), Vec::new()).with_oracle(move |x| separate_nwst_lp(g, x, &terminals));
    solve_covering(model)
}

/// Fills `certified_ratio` against the exact LP value.
pub fn certify(inst: &SteinerInstance<'_>, sol: &mut SteinerSolution) -> Result<Rational> {
    let value = if inst.terminals.len() < 2 {
        Rational::zero()
    } else {
        let lp = solve_nwst_lp(inst)?;
        if lp.status != LpStatus::Optimal {
            return Err(Error::SteinerInfeasible);
        }
        lp.value
    };
    sol.certified_ratio = (!value.is_zero()).then(|| &sol.weight / &value);
    Ok(value)
}
