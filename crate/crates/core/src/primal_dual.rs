//! Primal-dual minimum-cost dominating set with reverse-delete.
//!
//! The dual of the dominating set LP is `max Σ y` subject to
//! `Σ_{u ∈ Γ⁺(v)} y(u) ≤ cost(v)`. Starting from the zero-cost vertices, each
//! iteration raises `y` uniformly on the undominated vertices `A_i` until some
//! dual constraint becomes tight and adds every tight vertex. The selected
//! set is then pruned in reverse selection order.
//!
//! The run is recorded in a [`PdTrace`] so the analysis can be re-checked
//! exactly: dual feasibility, tightness of the output, the per-iteration
//! ratio bound and the witness map behind `|W_i| ≤ |A_i|`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, NodeWeights, VertexSet};
use crate::rational::{self, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Iteration {
    /// Vertices not yet dominated at the start of the iteration.
    pub active: VertexSet,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    /// Vertices whose constraint became tight, ascending.
    pub newly_tight: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdTrace {
    /// Zero-cost vertices selected before the first iteration.
    pub seeds: Vec<usize>,
    pub iterations: Vec<Iteration>,
    pub selection_order: Vec<usize>,
    pub final_x: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualSolution {
    pub y: NodeWeights,
}

impl DualSolution {
    /// Σ_{u ∈ Γ⁺(v)} y(u) for every v.
    pub fn loads(&self, g: &Graph) -> Vec<Rational> {
        (0..g.n())
            .map(|v| g.closed_nbhd(v).map(|u| self.y.get(u)).sum())
            .collect()
    }

    pub fn is_feasible(&self, g: &Graph, cost: &NodeWeights) -> bool {
        self.y.iter().all(|y| !y.is_negative()) && self.loads(g).iter().zip(cost.iter()).all(|(l, c)| l <= c)
    }

    pub fn value(&self) -> Rational {
        self.y.total()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdResult {
    pub dominating_set: VertexSet,
    pub dual: DualSolution,
    pub trace: PdTrace,
}

/// Runs the primal-dual algorithm followed by reverse-delete.
pub fn primal_dual_ds(g: &Graph, cost: &NodeWeights) -> Result<PdResult> {
    cost.check_for(g)?;
    g.require_connected()?;
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    let mut y = vec![Rational::zero(); n];
    let mut load = vec![Rational::zero(); n];
    let mut in_x = vec![false; n];
    let seeds: Vec<usize> = (0..n).filter(|&v| cost.get(v).is_zero()).collect();
    for &v in &seeds {
        in_x[v] = true;
    }
    let mut order = seeds.clone();
    let mut iterations = Vec::new();

    loop {
        let active: Vec<bool> = (0..n).map(|a| !g.closed_nbhd(a).any(|u| in_x[u])).collect();
        if !active.contains(&true) {
            break;
        }
        let hits: Vec<usize> = (0..n)
            .map(|v| g.closed_nbhd(v).filter(|&u| active[u]).count())
            .collect();
        let epsilon = (0..n)
            .filter(|&v| hits[v] > 0)
            .map(|v| (cost.get(v) - &load[v]) / Rational::from_integer(hits[v].into()))
            .min()
            .expect("an active vertex lies in its own closed neighborhood");
        for a in (0..n).filter(|&a| active[a]) {
            y[a] += &epsilon;
        }
        let mut newly_tight = Vec::new();
        for v in 0..n {
            if hits[v] > 0 {
                load[v] += &epsilon * Rational::from_integer(hits[v].into());
                if &load[v] == cost.get(v) {
                    newly_tight.push(v);
                }
            }
        }
        debug_assert!(!newly_tight.is_empty());
        for &v in &newly_tight {
            debug_assert!(!in_x[v]);
            in_x[v] = true;
        }
        order.extend_from_slice(&newly_tight);
        iterations.push(Iteration {
            active: VertexSet::from_mask(&active),
            epsilon,
            newly_tight,
        });
    }

    let final_x = VertexSet::from_mask(&in_x);
    let dominating_set = reverse_delete(g, &final_x, &order)?;
    Ok(PdResult {
        dominating_set,
        dual: DualSolution { y: NodeWeights::new(y) },
        trace: PdTrace {
            seeds,
            iterations,
            selection_order: order,
            final_x,
        },
    })
}

/// Considers `x` in reverse `selection_order`, dropping each vertex whose
/// removal keeps the set dominating.
pub fn reverse_delete(g: &Graph, x: &VertexSet, selection_order: &[usize]) -> Result<VertexSet> {
    g.check_set(x)?;
    let n = g.n();
    let as_set: VertexSet = selection_order.iter().copied().collect();
    if as_set != *x || selection_order.len() != x.len() {
        return Err(Error::InvalidInput(
            "selection order is not a permutation of the set".into(),
        ));
    }
    if !g.is_dominating(x) {
        return Err(Error::NotDominating);
    }
    let mut keep = x.to_mask(n);
    let mut covered: Vec<usize> = (0..n).map(|v| g.closed_nbhd(v).filter(|&u| keep[u]).count()).collect();
    for &v in selection_order.iter().rev() {
        if g.closed_nbhd(v).all(|u| covered[u] >= 2) {
            keep[v] = false;
            for u in g.closed_nbhd(v) {
                covered[u] -= 1;
            }
        }
    }
    Ok(VertexSet::from_mask(&keep))
}

/// X_0, X_1, …: the selected set before each iteration, after validating
/// that the trace is a faithful run on `g`.
fn prefixes(g: &Graph, trace: &PdTrace) -> Result<Vec<Vec<bool>>> {
    let n = g.n();
    let bad = |m: &str| Error::InconsistentTrace(m.to_string());
    let mut in_x = vec![false; n];
    for &v in &trace.seeds {
        g.check_vertex(v)?;
        if std::mem::replace(&mut in_x[v], true) {
            return Err(bad("duplicate seed"));
        }
    }
    let mut order = trace.seeds.clone();
    let mut out = Vec::with_capacity(trace.iterations.len() + 1);
    for it in &trace.iterations {
        g.check_set(&it.active)?;
        let active: Vec<bool> = (0..n).map(|a| !g.closed_nbhd(a).any(|u| in_x[u])).collect();
        if it.active.is_empty() || VertexSet::from_mask(&active) != it.active {
            return Err(bad("active set does not match the undominated vertices"));
        }
        if it.newly_tight.is_empty() || it.epsilon.is_negative() {
            return Err(bad("iteration without progress"));
        }
        out.push(in_x.clone());
        for &v in &it.newly_tight {
            g.check_vertex(v)?;
            if std::mem::replace(&mut in_x[v], true) {
                return Err(bad("vertex selected twice"));
            }
        }
        order.extend_from_slice(&it.newly_tight);
    }
    if !g.dominates_mask(&in_x) {
        return Err(bad("run stopped before domination"));
    }
    if order != trace.selection_order || VertexSet::from_mask(&in_x) != trace.final_x {
        return Err(bad("selection order does not match the iterations"));
    }
    out.push(in_x);
    Ok(out)
}

/// Per-iteration ratio `Σ_{v∈A_i} |W_i ∩ Γ⁺(v)| / |A_i|` with
/// `W_i = Y − X_{i−1}`.
pub fn iteration_ratios(g: &Graph, trace: &PdTrace, y_set: &VertexSet) -> Result<Vec<Rational>> {
    let xs = prefixes(g, trace)?;
    if !y_set.is_subset(&trace.final_x) {
        return Err(Error::InconsistentTrace("Y is not a subset of X".into()));
    }
    let in_y = y_set.to_mask(g.n());
    Ok(trace
        .iterations
        .iter()
        .zip(&xs)
        .map(|(it, before)| {
            let sum: usize = it
                .active
                .iter()
                .map(|v| g.closed_nbhd(v).filter(|&u| in_y[u] && !before[u]).count())
                .sum();
            Rational::new(sum.into(), it.active.len().into())
        })
        .collect())
}

/// Checks every iteration ratio against `1 + 4·c'`, the constant the two
/// counting bounds give for graphs with `|E(K)| ≤ c'·|V(K)|` on all
/// subgraphs. Returns the verdict and the worst ratio (0 without
/// iterations).
pub fn check_gamma_bound(
    g: &Graph,
    trace: &PdTrace,
    y_set: &VertexSet,
    c_prime: &Rational,
) -> Result<(bool, Rational)> {
    let bound = Rational::one() + rational::int(4) * c_prime;
    let worst = iteration_ratios(g, trace, y_set)?
        .into_iter()
        .max()
        .unwrap_or_else(Rational::zero);
    Ok((worst <= bound, worst))
}

/// Witness map of the second counting bound: for every iteration and every
/// `w ∈ W_i` some `v ∈ A_i` has `Γ⁺(v) ∩ (X_{i−1} ∪ Y) = {w}`. Witness sets
/// of distinct `w` are disjoint, so any choice is injective and
/// `|W_i| ≤ |A_i|` follows; both are checked.
pub fn check_witness_lemma(g: &Graph, trace: &PdTrace, y_set: &VertexSet) -> bool {
    witnesses(g, trace, y_set).is_some()
}

/// The witness chosen (lowest id) for each `w ∈ W_i`, per iteration.
pub fn witnesses(g: &Graph, trace: &PdTrace, y_set: &VertexSet) -> Option<Vec<Vec<(usize, usize)>>> {
    let xs = prefixes(g, trace).ok()?;
    if g.check_set(y_set).is_err() || !y_set.is_subset(&trace.final_x) {
        return None;
    }
    let in_y = y_set.to_mask(g.n());
    let mut all = Vec::new();
    for (it, before) in trace.iterations.iter().zip(&xs) {
        let w_i: Vec<usize> = y_set.iter().filter(|&w| !before[w]).collect();
        if w_i.len() > it.active.len() {
            return None;
        }
        let mut used = vec![false; g.n()];
        let mut pairs = Vec::new();
        for &w in &w_i {
            let witness = it.active.iter().find(|&v| {
                let mut hit: Vec<usize> = g.closed_nbhd(v).filter(|&u| before[u] || in_y[u]).collect();
                hit.sort_unstable();
                hit == [w]
            })?;
            if std::mem::replace(&mut used[witness], true) {
                return None;
            }
            pairs.push((w, witness));
        }
        all.push(pairs);
    }
    Some(all)
}

/// Exact checks of the analysis for one run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    /// `y` reconstructed from the trace matches the returned dual and stays
    /// feasible after every iteration.
    pub dual_feasible: bool,
    /// Every vertex of Y has a tight dual constraint.
    pub tight: bool,
    /// cost(Y) = Σ_v y(v)·|Y ∩ Γ⁺(v)|.
    pub rearrangement: bool,
    pub iterations_within_n: bool,
    pub witness: bool,
    #[serde(with = "rational::serde_str")]
    pub worst_ratio: Rational,
    pub gamma_bound: bool,
    #[serde(with = "rational::serde_str")]
    pub c_prime: Rational,
}

impl CertificateReport {
    pub fn all_hold(&self) -> bool {
        self.dual_feasible
            && self.tight
            && self.rearrangement
            && self.iterations_within_n
            && self.witness
            && self.gamma_bound
    }
}

pub fn certify(g: &Graph, cost: &NodeWeights, run: &PdResult, c_prime: &Rational) -> Result<CertificateReport> {
    let n = g.n();
    let xs = prefixes(g, &run.trace)?;
    let mut y = vec![Rational::zero(); n];
    let mut dual_feasible = true;
    for it in &run.trace.iterations {
        for a in it.active.iter() {
            y[a] += &it.epsilon;
        }
        let dual = DualSolution {
            y: NodeWeights::new(y.clone()),
        };
        dual_feasible &= dual.is_feasible(g, cost);
    }
    dual_feasible &= y.as_slice() == run.dual.y.as_slice();
    let loads = run.dual.loads(g);
    let ys = &run.dominating_set;
    let tight = ys.iter().all(|v| &loads[v] == cost.get(v));
    let in_y = ys.to_mask(n);
    let rearranged: Rational = (0..n)
        .map(|v| {
            let hits = g.closed_nbhd(v).filter(|&u| in_y[u]).count();
            run.dual.y.get(v) * Rational::from_integer(hits.into())
        })
        .sum();
    let rearrangement = cost.sum_over(ys) == rearranged;
    let (gamma_bound, worst_ratio) = check_gamma_bound(g, &run.trace, ys, c_prime)?;
    debug_assert_eq!(xs.len(), run.trace.iterations.len() + 1);
    Ok(CertificateReport {
        dual_feasible,
        tight,
        rearrangement,
        iterations_within_n: run.trace.iterations.len() <= n,
        witness: check_witness_lemma(g, &run.trace, ys),
        worst_ratio,
        gamma_bound,
        c_prime: c_prime.clone(),
    })
}

/// Edge-density constants `c'` with `|E(K)| ≤ c'·|V(K)|` for every member
/// `K` of a family.
pub mod density {
    use crate::rational::{int, Rational};

    pub fn planar() -> Rational {
        int(3)
    }

    pub fn bipartite_planar() -> Rational {
        int(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn zero_costs() {
        let g = Graph::cycle(5);
        let run = primal_dual_ds(&g, &NodeWeights::zeros(5)).unwrap();
        assert!(run.trace.iterations.is_empty());
        assert!(run.dual.y.iter().all(Zero::is_zero));
        assert!(g.is_dominating(&run.dominating_set));
        // Minimal: no vertex can be dropped.
        for v in run.dominating_set.iter() {
            let mut smaller = run.dominating_set.clone();
            smaller.remove(v);
            assert!(!g.is_dominating(&smaller));
        }
    }

    #[test]
    fn star_run() {
        let g = Graph::star(3);
        let cost = NodeWeights::from_ints(&[2, 1, 1, 1]);
        let run = primal_dual_ds(&g, &cost).unwrap();
        assert_eq!(run.trace.iterations.len(), 1);
        let it = &run.trace.iterations[0];
        assert_eq!(it.epsilon, frac(1, 2));
        assert_eq!(it.newly_tight, vec![0, 1, 2, 3]);
        assert_eq!(run.dominating_set, VertexSet::from([0]));
        assert!(run.dual.y.iter().all(|y| *y == frac(1, 2)));
        let (holds, worst) = check_gamma_bound(&g, &run.trace, &run.dominating_set, &int(3)).unwrap();
        assert!(holds);
        assert_eq!(worst, int(1));
        assert!(check_witness_lemma(&g, &run.trace, &run.dominating_set));
    }

    #[test]
    fn path_run() {
        let g = Graph::path(3);
        let run = primal_dual_ds(&g, &NodeWeights::uniform(3, int(1))).unwrap();
        assert_eq!(run.trace.iterations.len(), 1);
        assert_eq!(run.trace.iterations[0].epsilon, frac(1, 3));
        assert_eq!(run.trace.iterations[0].newly_tight, vec![1]);
        assert_eq!(run.dominating_set, VertexSet::from([1]));
        let (holds, worst) = check_gamma_bound(&g, &run.trace, &run.dominating_set, &int(3)).unwrap();
        assert!(holds);
        assert_eq!(worst, int(1));
        let w = witnesses(&g, &run.trace, &run.dominating_set).unwrap();
        assert_eq!(w, vec![vec![(1, 0)]]);
        let report = certify(&g, &NodeWeights::uniform(3, int(1)), &run, &int(3)).unwrap();
        assert!(report.all_hold());
    }

    #[test]
    fn reverse_delete_examples() {
        let star = Graph::star(3);
        assert_eq!(
            reverse_delete(&star, &VertexSet::from([0, 1, 2, 3]), &[0, 1, 2, 3]).unwrap(),
            VertexSet::from([0])
        );
        let p3 = Graph::path(3);
        assert_eq!(
            reverse_delete(&p3, &VertexSet::from([1]), &[1]).unwrap(),
            VertexSet::from([1])
        );
        assert_eq!(
            reverse_delete(&p3, &VertexSet::from([0, 1]), &[0, 1]).unwrap(),
            VertexSet::from([1])
        );
        assert!(matches!(
            reverse_delete(&p3, &VertexSet::from([0]), &[0]),
            Err(Error::NotDominating)
        ));
        assert!(reverse_delete(&p3, &VertexSet::from([0, 1]), &[1]).is_err());
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            primal_dual_ds(&g, &NodeWeights::uniform(3, int(1))),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn tampered_trace_is_inconsistent() {
        let g = Graph::path(3);
        let mut run = primal_dual_ds(&g, &NodeWeights::uniform(3, int(1))).unwrap();
        run.trace.iterations[0].active = VertexSet::from([0, 1]);
        assert!(matches!(
            check_gamma_bound(&g, &run.trace, &run.dominating_set, &int(3)),
            Err(Error::InconsistentTrace(_))
        ));
        assert!(!check_witness_lemma(&g, &run.trace, &run.dominating_set));
    }

    #[test]
    fn trace_json_uses_rational_strings() {
        let run = primal_dual_ds(&Graph::path(3), &NodeWeights::uniform(3, int(1))).unwrap();
        let json = serde_json::to_string(&run.trace).unwrap();
        assert!(json.contains("\"epsilon\":\"1/3\""));
        let back: PdTrace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, run.trace);
    }
}
