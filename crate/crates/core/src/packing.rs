//! Convex decomposition of a fractional connected dominating set into a
//! distribution over integral ones, and the capacitated packing built on it.
//!
//! The decomposition is a column generation. The master LP packs the pool
//! of connected dominating sets under marginal bounds `ρ·x`; the pricing
//! step rounds `x` under the master duals as costs. A rounded set of dual
//! cost below one is an improving column. When pricing stalls below value
//! one, `ρ` doubles. The returned `rho` is the certified bound
//! `max_v marginal(v)/x(v)` of the final distribution, which never exceeds
//! the doubling level reached.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cuts::{min_capacity_separator, separate_cds_lp};
use crate::graph::{FractionalSolution, Graph, NodeWeights, VertexSet};
use crate::lp::solve_packing_master;
use crate::pipeline::round_cds_prechecked;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Weighted collection of connected dominating sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Packing {
    pub entries: Vec<(VertexSet, Rational)>,
}

impl Packing {
    pub fn size(&self) -> Rational {
        self.entries.iter().map(|(_, w)| w).sum()
    }

    /// Σ of the weights of the sets containing each vertex.
    pub fn marginals(&self, n: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for (set, w) in &self.entries {
            for v in set.iter().filter(|&v| v < n) {
                out[v] += w;
            }
        }
        out
    }

    pub fn scaled(&self, factor: &Rational) -> Packing {
        Packing {
            entries: self.entries.iter().map(|(s, w)| (s.clone(), w * factor)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionResult {
    /// Weights sum to exactly one.
    pub distribution: Packing,
    /// Certified: marginal(v) ≤ rho·x(v) for all v.
    pub rho: Rational,
    /// The value of ρ the doubling loop stopped at.
    pub rho_level: Rational,
    pub pricing_rounds: usize,
    pub columns: usize,
}

#[derive(Debug, Clone)]
pub struct DecomposeOptions {
    /// Master/pricing rounds before giving up.
    pub max_rounds: usize,
    /// Largest doubling level allowed for ρ.
    pub rho_cap: Option<Rational>,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            max_rounds: 10_000,
            rho_cap: None,
        }
    }
}

pub fn carr_vempala_decompose(g: &Graph, x: &FractionalSolution) -> Result<DecompositionResult> {
    carr_vempala_decompose_with(g, x, &DecomposeOptions::default())
}

pub fn carr_vempala_decompose_with(
    g: &Graph,
    x: &FractionalSolution,
    opts: &DecomposeOptions,
) -> Result<DecompositionResult> {
    if let Some(v) = separate_cds_lp(g, x)? {
        return Err(Error::Infeasible(v));
    }
    let n = g.n();
    // A feasible point's support dominates and meets every separator, so
    // it is itself a connected dominating set; it backs up the first column
    // when the rounding under zero duals leaves the support.
    let support = x.support();
    debug_assert!(g.is_connected_dominating(&support));
    let first = round_cds_prechecked(g, &lifted_prices(&NodeWeights::zeros(n), x), x)?.cds;
    let mut pool = vec![if first.is_subset(&support) { first } else { support }];
    let mut rho = Rational::one();
    let mut pricing_rounds = 0;
    let master = loop {
        if pricing_rounds >= opts.max_rounds {
            return Err(Error::IterationCap(opts.max_rounds));
        }
        let master = solve_packing_master(&pool, &x.scaled(&rho))?;
        if master.value >= Rational::one() {
            break master;
        }
        pricing_rounds += 1;
        let prices = lifted_prices(&master.duals, x);
        let candidate = round_cds_prechecked(g, &prices, x)?.cds;
        if prices.sum_over(&candidate) < Rational::one() && !pool.contains(&candidate) {
            pool.push(candidate);
        } else {
            rho *= rational::int(2);
            if let Some(cap) = opts.rho_cap.as_ref().filter(|cap| rho > **cap) {
                return Err(Error::Budget(format!("rho would exceed its cap {cap}")));
            }
        }
    };
    let entries: Vec<(VertexSet, Rational)> = pool
        .iter()
        .zip(&master.weights)
        .filter(|(_, w)| w.is_positive())
        .map(|(s, w)| (s.clone(), w / &master.value))
        .collect();
    let distribution = Packing { entries };
    let marginals = distribution.marginals(n);
    let certified = (0..n)
        .filter(|&v| !x.get(v).is_zero())
        .map(|v| &marginals[v] / x.get(v))
        .max()
        .unwrap_or_else(Rational::zero);
    debug_assert!(certified <= rho);
    debug_assert_eq!(distribution.size(), Rational::one());
    Ok(DecompositionResult {
        distribution,
        rho: certified,
        rho_level: rho,
        pricing_rounds,
        columns: pool.len(),
    })
}

/// Rows with x(v) = 0 carry no objective weight in the master dual, so
/// lifting their duals by one keeps the dual optimal and makes columns
/// through them unattractive to the rounding.
fn lifted_prices(duals: &NodeWeights, x: &FractionalSolution) -> NodeWeights {
    NodeWeights::new(
        duals
            .iter()
            .zip(x.iter())
            .map(|(y, xv)| if xv.is_zero() { y + Rational::one() } else { y.clone() })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacitatedPacking {
    pub packing: Packing,
    /// Minimum capacity of a node separator.
    pub k: Rational,
    pub rho: Rational,
    pub separator: VertexSet,
    pub decomposition: DecompositionResult,
}

impl CapacitatedPacking {
    pub fn size(&self) -> Rational {
        self.packing.size()
    }
}

/// Packing of size `k/ρ` under node capacities: decompose
/// `x = capacity / k` and scale the distribution by `k/ρ`.
pub fn pack_capacitated(g: &Graph, capacity: &NodeWeights) -> Result<CapacitatedPacking> {
    pack_capacitated_with(g, capacity, &DecomposeOptions::default())
}

pub fn pack_capacitated_with(g: &Graph, capacity: &NodeWeights, opts: &DecomposeOptions) -> Result<CapacitatedPacking> {
    capacity.check_for(g)?;
    if let Some(v) = capacity.iter().position(Zero::is_zero) {
        return Err(Error::InvalidInput(format!("capacity of vertex {v} is zero")));
    }
    g.require_connected()?;
    if g.is_complete() {
        return Err(Error::CompleteGraph);
    }
    let sep = min_capacity_separator(g, capacity)?;
    let k = sep.capacity.clone();
    let x = capacity.scaled(&(Rational::one() / &k));
    let decomposition = carr_vempala_decompose_with(g, &x, opts)?;
    let rho = decomposition.rho.clone();
    let packing = decomposition.distribution.scaled(&(&k / &rho));
    Ok(CapacitatedPacking {
        packing,
        k,
        rho,
        separator: sep.separator,
        decomposition,
    })
}

/// Complete graphs have no separator. Every vertex alone is a connected
/// dominating set there, so each is packed at its full capacity.
pub fn pack_complete(g: &Graph, capacity: &NodeWeights) -> Result<Packing> {
    capacity.check_for(g)?;
    if !g.is_complete() {
        return Err(Error::InvalidInput("graph is not complete".into()));
    }
    Ok(Packing {
        entries: (0..g.n())
            .filter(|&v| !capacity.get(v).is_zero())
            .map(|v| (VertexSet::singleton(v), capacity.get(v).clone()))
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackingReport {
    pub passes: bool,
    /// Indices of entries that are not connected dominating sets.
    pub not_cds: Vec<usize>,
    /// Indices of entries with nonpositive weight.
    pub bad_weights: Vec<usize>,
    /// Vertices whose marginal exceeds their capacity.
    pub over_capacity: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub size: Rational,
    /// min_v capacity(v) − marginal(v).
    #[serde(with = "rational::serde_str")]
    pub worst_slack: Rational,
}

pub fn verify_packing(g: &Graph, capacity: &NodeWeights, p: &Packing) -> PackingReport {
    let n = g.n();
    let not_cds: Vec<usize> = p
        .entries
        .iter()
        .enumerate()
        .filter(|(_, (s, _))| !g.is_connected_dominating(s))
        .map(|(i, _)| i)
        .collect();
    let bad_weights: Vec<usize> = p
        .entries
        .iter()
        .enumerate()
        .filter(|(_, (_, w))| !w.is_positive())
        .map(|(i, _)| i)
        .collect();
    let marginals = p.marginals(n);
    let slack: Vec<Rational> = (0..n)
        .map(|v| capacity.as_slice().get(v).cloned().unwrap_or_default() - &marginals[v])
        .collect();
    let over_capacity: Vec<usize> = (0..n).filter(|&v| slack[v].is_negative()).collect();
    let shape_ok = capacity.len() == n;
    PackingReport {
        passes: shape_ok && not_cds.is_empty() && bad_weights.is_empty() && over_capacity.is_empty(),
        not_cds,
        bad_weights,
        over_capacity,
        size: p.size(),
        worst_slack: slack.into_iter().min().unwrap_or_default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn indicator_point_is_its_own_distribution() {
        let g = Graph::path(3);
        let d = carr_vempala_decompose(&g, &NodeWeights::from_ints(&[0, 1, 0])).unwrap();
        assert_eq!(d.distribution.entries, vec![(VertexSet::from([1]), int(1))]);
        assert_eq!(d.rho, int(1));
        let star = Graph::star(3);
        let d = carr_vempala_decompose(&star, &NodeWeights::from_ints(&[1, 0, 0, 0])).unwrap();
        assert_eq!(d.distribution.entries, vec![(VertexSet::from([0]), int(1))]);
        assert_eq!(d.rho, int(1));
    }

    #[test]
    fn c5_half() {
        let g = Graph::cycle(5);
        let x = NodeWeights::uniform(5, frac(1, 2));
        let d = carr_vempala_decompose(&g, &x).unwrap();
        assert_eq!(d.distribution.size(), int(1));
        let m = d.distribution.marginals(5);
        for (mv, xv) in m.iter().zip(x.iter()) {
            assert!(*mv <= &d.rho * xv);
            assert!(*mv <= &d.rho_level * xv);
        }
        // No distribution over CDSs of C5 beats 6/5.
        assert!(d.rho >= frac(6, 5));
        for (s, _) in &d.distribution.entries {
            assert!(g.is_connected_dominating(s));
        }
    }

    #[test]
    fn pack_examples() {
        let p3 = pack_capacitated(&Graph::path(3), &NodeWeights::uniform(3, int(1))).unwrap();
        assert_eq!(p3.k, int(1));
        assert_eq!(p3.packing.entries, vec![(VertexSet::from([1]), int(1))]);

        let star = Graph::star(3);
        let cap = NodeWeights::from_ints(&[5, 1, 1, 1]);
        let p = pack_capacitated(&star, &cap).unwrap();
        assert_eq!(p.k, int(5));
        assert_eq!(p.packing.entries, vec![(VertexSet::from([0]), int(5))]);
        assert!(verify_packing(&star, &cap, &p.packing).passes);

        let c5 = Graph::cycle(5);
        let ones = NodeWeights::uniform(5, int(1));
        let p = pack_capacitated(&c5, &ones).unwrap();
        assert_eq!(p.k, int(2));
        assert_eq!(p.size(), &p.k / &p.rho);
        assert!(verify_packing(&c5, &ones, &p.packing).passes);
    }

    #[test]
    fn complete_graphs() {
        let k4 = Graph::complete(4);
        let ones = NodeWeights::uniform(4, int(1));
        assert!(matches!(pack_capacitated(&k4, &ones), Err(Error::CompleteGraph)));
        let p = pack_complete(&k4, &ones).unwrap();
        assert_eq!(p.size(), int(4));
        assert!(verify_packing(&k4, &ones, &p).passes);
        assert!(pack_complete(&Graph::path(3), &NodeWeights::uniform(3, int(1))).is_err());
    }

    #[test]
    fn verify_examples() {
        let g = Graph::path(3);
        let ones = NodeWeights::uniform(3, int(1));
        let bad = Packing {
            entries: vec![(VertexSet::from([0]), int(1))],
        };
        let r = verify_packing(&g, &ones, &bad);
        assert!(!r.passes);
        assert_eq!(r.not_cds, vec![0]);
        let empty = verify_packing(&g, &ones, &Packing::default());
        assert!(empty.passes);
        assert_eq!(empty.size, int(0));
        let over = Packing {
            entries: vec![(VertexSet::from([1]), int(2))],
        };
        let r = verify_packing(&g, &ones, &over);
        assert_eq!(r.over_capacity, vec![1]);
        assert_eq!(r.worst_slack, int(-1));
    }

    #[test]
    fn infeasible_point() {
        let g = Graph::path(3);
        assert!(matches!(
            carr_vempala_decompose(&g, &NodeWeights::zeros(3)),
            Err(Error::Infeasible(_))
        ));
    }
}
