//! Rounding a fractional connected dominating set: solve the CDS LP, take a
//! dominating set from the primal-dual algorithm, then connect it with a
//! node-weighted Steiner tree whose terminals are that set.

use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cuts::{check_point, separate_cds_lp, violated_domination};
use crate::graph::{FractionalSolution, Graph, NodeWeights, VertexSet};
use crate::lp::{solve_covering, CoveringModel, LpResult};
use crate::primal_dual::primal_dual_ds;
use crate::rational::Rational;
use crate::steiner::{spider_greedy, SteinerInstance};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdsRounding {
    pub cds: VertexSet,
    pub ds_part: VertexSet,
    /// Vertices the connector added outside `ds_part`.
    pub connector_part: VertexSet,
    pub cost: Rational,
    /// cost / (x·cost), when the fractional value is positive.
    pub certified_r: Option<Rational>,
}

/// Exact optimum of the dominating set LP, with domination rows generated
/// on demand.
pub fn solve_ds_lp(g: &Graph, cost: &NodeWeights) -> Result<LpResult> {
    cost.check_for(g)?;
    if g.n() == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    let model = CoveringModel::new(cost.clone(), Vec::new()).with_oracle(|x| {
        check_point(g, x)?;
        Ok(violated_domination(g, x))
    });
    solve_covering(model)
}

/// Exact optimum of the connected dominating set LP. Domination rows are
/// explicit; separator rows come from the separation oracle.
pub fn solve_cds_lp(g: &Graph, cost: &NodeWeights) -> Result<LpResult> {
    cost.check_for(g)?;
    g.require_connected()?;
    if g.n() == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    let rows = (0..g.n()).map(|v| g.closed_nbhd(v).collect()).collect();
    let model = CoveringModel::new(cost.clone(), rows).with_oracle(|x| separate_cds_lp(g, x));
    solve_covering(model)
}

/// Rounds a feasible point of the CDS LP to a connected dominating set.
/// Fails with [`Error::Infeasible`] carrying the violated row otherwise.
pub fn round_cds(g: &Graph, cost: &NodeWeights, x: &FractionalSolution) -> Result<CdsRounding> {
    cost.check_for(g)?;
    if let Some(v) = separate_cds_lp(g, x)? {
        return Err(Error::Infeasible(v));
    }
    round_cds_prechecked(g, cost, x)
}

/// [`round_cds`] without the feasibility check, for callers that verified
/// `x` already.
pub(crate) fn round_cds_prechecked(g: &Graph, cost: &NodeWeights, x: &FractionalSolution) -> Result<CdsRounding> {
    let ds = primal_dual_ds(g, cost)?.dominating_set;
    let cds = if g.induces_connected(&ds) {
        ds.clone()
    } else {
        let weights = NodeWeights::new(
            (0..g.n())
                .map(|v| {
                    if ds.contains(v) {
                        Rational::zero()
                    } else {
                        cost.get(v).clone()
                    }
                })
                .collect(),
        );
        let inst = SteinerInstance::new(g, weights, ds.clone())?;
        spider_greedy(&inst)?.nodes
    };
    debug_assert!(g.is_connected_dominating(&cds));
    let total = cost.sum_over(&cds);
    let fractional = cost.dot(x);
    Ok(CdsRounding {
        connector_part: cds.difference(&ds),
        ds_part: ds,
        certified_r: (!fractional.is_zero()).then(|| &total / &fractional),
        cost: total,
        cds,
    })
}

/// Independent randomized rounding: `v` joins with probability
/// `min(c·ln n·x(v), 1)`, from a ChaCha8 stream seeded with `seed`. The
/// result need not dominate.
pub fn randomized_ds_round(g: &Graph, x: &FractionalSolution, c: &Rational, seed: u64) -> Result<VertexSet> {
    x.check_for(g)?;
    let n = g.n();
    let ln_n = (n.max(1) as f64).ln();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = VertexSet::new();
    for v in 0..n {
        let scaled = c * x.get(v);
        let p = if scaled.is_zero() {
            0.0
        } else {
            (scaled.to_f64().unwrap_or(f64::INFINITY) * ln_n).min(1.0)
        };
        // Draw for every vertex so the stream position is independent of x.
        let draw: f64 = rng.gen();
        if p >= 1.0 || draw < p {
            out.insert(v);
        }
    }
    Ok(out)
}

/// `x'(v) = 1` on `terminals`, `x(v)` elsewhere: the point that carries a
/// CDS-LP solution over to the Steiner LP on those terminals.
pub fn steiner_extension(x: &FractionalSolution, terminals: &VertexSet) -> FractionalSolution {
    let mut out = x.clone();
    for t in terminals.iter() {
        out.set(t, Rational::one());
    }
    out
}
