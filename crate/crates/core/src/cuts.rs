//! Vertex-capacitated minimum cuts, minimum node separators and the
//! separation oracles for the covering LPs.
//!
//! Vertex cuts are computed on the split digraph: every vertex `v` becomes an
//! arc `v_in → v_out` carrying its weight, and every edge `{u, v}` becomes the
//! two arcs `u_out → v_in` and `v_out → u_in` with a capacity larger than the
//! total finite weight. The minimum `s_out`–sink cut then only cuts vertex
//! arcs.

use std::collections::VecDeque;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::{FractionalSolution, Graph, NodeWeights, VertexSet};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// A node separator with the two sides it splits off.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorCertificate {
    pub separator: VertexSet,
    pub side_a: VertexSet,
    pub side_b: VertexSet,
    #[serde(with = "rational::serde_str")]
    pub capacity: Rational,
}

impl SeparatorCertificate {
    /// Structural check: sides nonempty and disjoint from each other and
    /// from the separator, no edge between the sides, and `capacity` equal
    /// to the separator's weight.
    pub fn verify(&self, g: &Graph, weights: &NodeWeights) -> bool {
        let n = g.n();
        let mut owner = vec![0u8; n];
        for (tag, s) in [(1u8, &self.separator), (2, &self.side_a), (3, &self.side_b)] {
            if g.check_set(s).is_err() {
                return false;
            }
            for v in s.iter() {
                if owner[v] != 0 {
                    return false;
                }
                owner[v] = tag;
            }
        }
        !self.side_a.is_empty()
            && !self.side_b.is_empty()
            && !g.edges().any(|(u, v)| matches!((owner[u], owner[v]), (2, 3) | (3, 2)))
            && weights.sum_over(&self.separator) == self.capacity
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    /// x(Γ⁺(v)) ≥ 1.
    Domination(usize),
    /// x(Γ(S)) ≥ 1 for the given S.
    Separator(VertexSet),
}

/// A covering row `Σ_{v ∈ row} x(v) ≥ 1` that the point violates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolatedConstraint {
    pub kind: ConstraintKind,
    /// The vertices whose x-mass the row sums (Γ⁺(v) or Γ(S)).
    pub row: VertexSet,
    /// Row mass minus one; always negative.
    #[serde(with = "rational::serde_str")]
    pub slack: Rational,
}

impl fmt::Display for ViolatedConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ConstraintKind::Domination(v) => write!(f, "domination row of vertex {v}")?,
            ConstraintKind::Separator(s) => write!(f, "separator row of S = {s}")?,
        }
        write!(f, " over {} has slack {}", self.row, self.slack)
    }
}

struct Arc {
    to: usize,
    cap: Rational,
}

/// Residual network for Edmonds–Karp with exact capacities.
struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: Rational) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: Rational::zero(),
        });
    }

    /// Augments along shortest paths until none remain. Returns the flow value.
    fn max_flow(&mut self, source: usize, sink: usize) -> Rational {
        let mut total = Rational::zero();
        loop {
            let mut pred: Vec<Option<usize>> = vec![None; self.out.len()];
            let mut seen = vec![false; self.out.len()];
            seen[source] = true;
            let mut queue = VecDeque::from([source]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.out[u] {
                    let v = self.arcs[a].to;
                    if !seen[v] && !self.arcs[a].cap.is_zero() {
                        seen[v] = true;
                        pred[v] = Some(a);
                        if v == sink {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !seen[sink] {
                return total;
            }
            let mut bottleneck: Option<Rational> = None;
            let mut v = sink;
            while let Some(a) = pred[v] {
                let c = &self.arcs[a].cap;
                if bottleneck.as_ref().is_none_or(|b| c < b) {
                    bottleneck = Some(c.clone());
                }
                v = self.arcs[a ^ 1].to;
            }
            let delta = bottleneck.expect("path has at least one arc");
            let mut v = sink;
            while let Some(a) = pred[v] {
                self.arcs[a].cap -= &delta;
                self.arcs[a ^ 1].cap += &delta;
                v = self.arcs[a ^ 1].to;
            }
            total += delta;
        }
    }

    fn reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let v = self.arcs[a].to;
                if !seen[v] && !self.arcs[a].cap.is_zero() {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

/// Result of one split-graph max-flow.
struct VertexCut {
    value: Rational,
    cut: Vec<bool>,
}

/// Minimum-weight vertex set meeting every `s`–`t` path, `s` excluded.
/// When `sink_cuttable`, `t` itself may be cut (its weight counts);
/// otherwise `t` is excluded too.
fn split_cut(g: &Graph, weights: &[Rational], s: usize, t: usize, sink_cuttable: bool) -> VertexCut {
    let n = g.n();
    let big: Rational = weights.iter().sum::<Rational>() + Rational::one();
    let vin = |v: usize| 2 * v;
    let vout = |v: usize| 2 * v + 1;
    let mut net = FlowNetwork::new(2 * n);
    for (v, w) in weights.iter().enumerate().take(n) {
        let cap = if v == s || (v == t && !sink_cuttable) {
            big.clone()
        } else {
            w.clone()
        };
        net.add_arc(vin(v), vout(v), cap);
    }
    for (u, v) in g.edges() {
        net.add_arc(vout(u), vin(v), big.clone());
        net.add_arc(vout(v), vin(u), big.clone());
    }
    let sink = if sink_cuttable { vout(t) } else { vin(t) };
    let value = net.max_flow(vout(s), sink);
    let reach = net.reachable(vout(s));
    let cut: Vec<bool> = (0..n).map(|v| reach[vin(v)] && !reach[vout(v)]).collect();
    debug_assert_eq!(
        value,
        (0..n).filter(|&v| cut[v]).map(|v| &weights[v]).sum::<Rational>(),
        "max-flow value must equal cut capacity"
    );
    VertexCut { value, cut }
}

fn certificate(g: &Graph, weights: &NodeWeights, s: usize, cut: &[bool]) -> SeparatorCertificate {
    let allowed: Vec<bool> = cut.iter().map(|&c| !c).collect();
    let side_a = g.reach_within(s, &allowed);
    let side_b: Vec<bool> = (0..g.n()).map(|v| !cut[v] && !side_a[v]).collect();
    let separator = VertexSet::from_mask(cut);
    SeparatorCertificate {
        capacity: weights.sum_over(&separator),
        separator,
        side_a: VertexSet::from_mask(&side_a),
        side_b: VertexSet::from_mask(&side_b),
    }
}

/// Minimum-weight vertex set (excluding `s` and `t`) whose removal separates
/// `s` from `t`. On a disconnected graph with `s`, `t` in different
/// components the cut is empty with capacity 0.
pub fn min_vertex_cut(g: &Graph, weights: &NodeWeights, s: usize, t: usize) -> Result<SeparatorCertificate> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    weights.check_for(g)?;
    if s == t {
        return Err(Error::InvalidInput("source and sink coincide".into()));
    }
    if g.adjacent(s, t) {
        return Err(Error::NoVertexCut(s, t));
    }
    let cut = split_cut(g, weights.as_slice(), s, t, false);
    let cert = certificate(g, weights, s, &cut.cut);
    debug_assert_eq!(cert.capacity, cut.value);
    Ok(cert)
}

/// Which vertex pairs the separator search runs max-flow on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeparatorSweep {
    /// Every non-adjacent pair.
    #[default]
    AllPairs,
    /// Even's sweep: sources `v_0, v_1, …` only while the source index does
    /// not exceed the best separator size found. Exact only for uniform
    /// capacities; ignored (falls back to [`SeparatorSweep::AllPairs`])
    /// otherwise.
    UniformShortcut,
}

/// Minimum-capacity node separator (the parameter `k`) by an all-pairs
/// max-flow sweep. Ties go to the lexicographically smallest separator
/// among those discovered.
pub fn min_capacity_separator(g: &Graph, capacity: &NodeWeights) -> Result<SeparatorCertificate> {
    min_capacity_separator_with(g, capacity, SeparatorSweep::AllPairs)
}

pub fn min_capacity_separator_with(
    g: &Graph,
    capacity: &NodeWeights,
    sweep: SeparatorSweep,
) -> Result<SeparatorCertificate> {
    capacity.check_for(g)?;
    g.require_connected()?;
    if g.is_complete() {
        return Err(Error::NoSeparator);
    }
    let n = g.n();
    let uniform = capacity.iter().all(|c| c == capacity.get(0));
    let shortcut = sweep == SeparatorSweep::UniformShortcut && uniform;
    let mut best: Option<SeparatorCertificate> = None;
    fn consider(best: &mut Option<SeparatorCertificate>, cert: SeparatorCertificate) {
        let better = match best {
            None => true,
            Some(b) => (&cert.capacity, &cert.separator) < (&b.capacity, &b.separator),
        };
        if better {
            *best = Some(cert);
        }
    }
    if shortcut {
        // A minimum separator of size κ misses one of v_0..v_κ; that vertex
        // and some non-neighbor on the far side give a κ-cut.
        let mut s = 0;
        loop {
            for t in 0..n {
                if t != s && !g.adjacent(s, t) {
                    let cut = split_cut(g, capacity.as_slice(), s, t, false);
                    consider(&mut best, certificate(g, capacity, s, &cut.cut));
                }
            }
            s += 1;
            let size = best.as_ref().map_or(n, |b| b.separator.len());
            if s > size || s >= n {
                break;
            }
        }
    } else {
        for s in 0..n {
            for t in s + 1..n {
                if !g.adjacent(s, t) {
                    let cut = split_cut(g, capacity.as_slice(), s, t, false);
                    consider(&mut best, certificate(g, capacity, s, &cut.cut));
                }
            }
        }
    }
    Ok(best.expect("a non-complete graph has a non-adjacent pair"))
}

pub(crate) fn check_point(g: &Graph, x: &FractionalSolution) -> Result<()> {
    x.check_for(g)
}

/// Most violated domination row, if any: smallest Γ⁺(v)-mass below one,
/// lowest vertex on ties.
pub(crate) fn violated_domination(g: &Graph, x: &FractionalSolution) -> Option<ViolatedConstraint> {
    let mut best: Option<(Rational, usize)> = None;
    for v in 0..g.n() {
        let mass: Rational = g.closed_nbhd(v).map(|u| x.get(u)).sum();
        if mass < Rational::one() && best.as_ref().is_none_or(|(m, _)| &mass < m) {
            best = Some((mass, v));
        }
    }
    best.map(|(mass, v)| ViolatedConstraint {
        kind: ConstraintKind::Domination(v),
        row: g.closed_nbhd(v).collect(),
        slack: mass - Rational::one(),
    })
}

fn separator_row(g: &Graph, x: &FractionalSolution, side: Vec<bool>) -> (VertexSet, VertexSet, Rational) {
    let boundary = VertexSet::from_mask(&g.boundary_mask(&side));
    let mass = x.sum_over(&boundary);
    (VertexSet::from_mask(&side), boundary, mass)
}

/// Separation oracle for the connected dominating set LP.
///
/// Domination rows are checked first. Otherwise the oracle looks for
/// S ∈ 𝒮 (S, Γ(S) and V − S − Γ(S) all nonempty) with x(Γ(S)) < 1 by
/// computing an x-weighted vertex cut between every non-adjacent pair;
/// the lightest cut wins, first pair on ties. Returns `None` iff `x` is
/// feasible.
pub fn separate_cds_lp(g: &Graph, x: &FractionalSolution) -> Result<Option<ViolatedConstraint>> {
    check_point(g, x)?;
    if let Some(v) = violated_domination(g, x) {
        return Ok(Some(v));
    }
    Ok(violated_cds_separator(g, x))
}

pub(crate) fn violated_cds_separator(g: &Graph, x: &FractionalSolution) -> Option<ViolatedConstraint> {
    let n = g.n();
    let one = Rational::one();
    let mut best: Option<(VertexSet, VertexSet, Rational)> = None;
    for s in 0..n {
        for t in s + 1..n {
            if g.adjacent(s, t) {
                continue;
            }
            let cut = split_cut(g, x.as_slice(), s, t, false);
            if cut.value >= one || best.as_ref().is_some_and(|b| cut.value >= b.2) {
                continue;
            }
            let allowed: Vec<bool> = cut.cut.iter().map(|&c| !c).collect();
            let row = separator_row(g, x, g.reach_within(s, &allowed));
            debug_assert!(row.2 <= cut.value);
            best = Some(row);
        }
    }
    best.map(|(side, row, mass)| ViolatedConstraint {
        kind: ConstraintKind::Separator(side),
        row,
        slack: mass - one,
    })
}

/// Separation oracle for the node-weighted Steiner tree LP with terminals
/// `t`: finds S ∈ 𝒮_T (S meets T and so does V − S) with x(Γ(S)) < 1.
///
/// For every ordered terminal pair `(a, b)` this computes the lightest set
/// of vertices other than `a` meeting every `a`–`b` path (it may contain `b`
/// or other terminals); S is then the component of `a` once that set is
/// removed.
pub fn separate_nwst_lp(
    g: &Graph,
    x: &FractionalSolution,
    terminals: &VertexSet,
) -> Result<Option<ViolatedConstraint>> {
    check_point(g, x)?;
    g.check_set(terminals)?;
    if terminals.len() < 2 {
        return Err(Error::InvalidInput("need at least two terminals".into()));
    }
    let one = Rational::one();
    let mut best: Option<(VertexSet, VertexSet, Rational)> = None;
    for a in terminals.iter() {
        for b in terminals.iter() {
            if a == b {
                continue;
            }
            let cut = split_cut(g, x.as_slice(), a, b, true);
            if cut.value >= one || best.as_ref().is_some_and(|bst| cut.value >= bst.2) {
                continue;
            }
            let allowed: Vec<bool> = cut.cut.iter().map(|&c| !c).collect();
            let row = separator_row(g, x, g.reach_within(a, &allowed));
            debug_assert!(row.2 <= cut.value);
            best = Some(row);
        }
    }
    Ok(best.map(|(side, row, mass)| ViolatedConstraint {
        kind: ConstraintKind::Separator(side),
        row,
        slack: mass - one,
    }))
}
