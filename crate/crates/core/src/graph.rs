//! Simple undirected graphs with dense vertex ids, vertex sets and node weights.

use std::collections::VecDeque;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};
use crate::{Error, Result};

/// A sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn singleton(v: usize) -> Self {
        Self(vec![v])
    }

    /// Members where `mask[v]` is set, in ascending order.
    pub fn from_mask(mask: &[bool]) -> Self {
        Self(mask.iter().enumerate().filter_map(|(v, &m)| m.then_some(v)).collect())
    }

    /// Members encoded in the low bits of `bits` (bit `v` ⇔ vertex `v`).
    pub fn from_bits(bits: u64) -> Self {
        Self((0..64).filter(|v| bits >> v & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(i) => {
                self.0.insert(i, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(i) => {
                self.0.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            mask[v] = true;
        }
        mask
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| other.contains(v)).collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(a: [usize; N]) -> Self {
        a.into_iter().collect()
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Per-vertex nonnegative rationals. Used as costs, capacities and (through
/// [`FractionalSolution`]) as LP points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeWeights(#[serde(with = "rational::serde_str::vec")] Vec<Rational>);

/// A point of one of the covering LPs: one coordinate per vertex.
pub type FractionalSolution = NodeWeights;

impl NodeWeights {
    /// Wraps `values` without a sign check; see [`NodeWeights::nonnegative`].
    pub fn new(values: Vec<Rational>) -> Self {
        Self(values)
    }

    pub fn nonnegative(values: Vec<Rational>) -> Result<Self> {
        let w = Self(values);
        w.check_nonnegative()?;
        Ok(w)
    }

    pub fn uniform(n: usize, value: Rational) -> Self {
        Self(vec![value; n])
    }

    pub fn zeros(n: usize) -> Self {
        Self::uniform(n, rational::zero())
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self(values.iter().map(|&v| rational::int(v)).collect())
    }

    /// 0/1 vector of `set` over `n` vertices.
    pub fn indicator(n: usize, set: &VertexSet) -> Self {
        let mut w = Self::zeros(n);
        for v in set.iter() {
            w.0[v] = rational::one();
        }
        w
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> &Rational {
        &self.0[v]
    }

    pub fn set(&mut self, v: usize, value: Rational) {
        self.0[v] = value;
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rational> {
        self.0.iter()
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn sum_over(&self, set: &VertexSet) -> Rational {
        set.iter().map(|v| &self.0[v]).sum()
    }

    /// Σ_v self(v)·other(v).
    pub fn dot(&self, other: &NodeWeights) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, factor: &Rational) -> NodeWeights {
        Self(self.0.iter().map(|w| w * factor).collect())
    }

    pub fn support(&self) -> VertexSet {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(v, w)| (!w.is_zero()).then_some(v))
            .collect()
    }

    pub fn check_nonnegative(&self) -> Result<()> {
        match self.0.iter().position(|w| w.is_negative()) {
            Some(v) => Err(Error::NegativeWeight(v)),
            None => Ok(()),
        }
    }

    /// Checks length against `g` and that no entry is negative.
    pub fn check_for(&self, g: &Graph) -> Result<()> {
        if self.0.len() != g.n() {
            return Err(Error::WeightLength {
                expected: g.n(),
                got: self.0.len(),
            });
        }
        self.check_nonnegative()
    }
}

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Edges may be listed in either
    /// orientation but only once.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::InvalidVertex { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::ParallelEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self { adj })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::new(n, &edges).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Self::new(n, &edges).expect("cycle is simple")
    }

    /// Star with center 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::new(leaves + 1, &edges).expect("star is simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::new(n, &edges).expect("complete graph is simple")
    }

    /// `rows × cols` grid; vertex `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Self::new(rows * cols, &edges).expect("grid is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.max() {
            Some(v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    /// Γ⁺(v) = Γ(v) ∪ {v}.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.closed_nbhd(v).collect())
    }

    pub(crate) fn closed_nbhd(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(v).chain(self.adj[v].iter().copied())
    }

    /// Γ(S): vertices outside `s` with a neighbor in `s`.
    pub fn boundary(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        Ok(VertexSet::from_mask(&self.boundary_mask(&s.to_mask(self.n()))))
    }

    pub(crate) fn boundary_mask(&self, inside: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.n()];
        for (u, list) in self.adj.iter().enumerate() {
            if inside[u] {
                for &v in list {
                    if !inside[v] {
                        out[v] = true;
                    }
                }
            }
        }
        out
    }

    /// Every vertex lies in or next to `d`. The empty set never dominates.
    pub fn is_dominating(&self, d: &VertexSet) -> bool {
        if d.is_empty() || self.check_set(d).is_err() {
            return false;
        }
        self.dominates_mask(&d.to_mask(self.n()))
    }

    pub(crate) fn dominates_mask(&self, inside: &[bool]) -> bool {
        (0..self.n()).all(|v| self.closed_nbhd(v).any(|u| inside[u]))
    }

    pub fn is_connected_dominating(&self, d: &VertexSet) -> bool {
        self.is_dominating(d) && self.induces_connected(d)
    }

    /// G[s] is connected (the empty set is not).
    pub fn induces_connected(&self, s: &VertexSet) -> bool {
        if s.is_empty() || self.check_set(s).is_err() {
            return false;
        }
        self.component_masks(&s.to_mask(self.n())).len() == 1
    }

    /// Components of G[s], ordered by smallest member.
    pub fn connected_components(&self, s: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_set(s)?;
        Ok(self
            .component_masks(&s.to_mask(self.n()))
            .into_iter()
            .map(|m| VertexSet::from_mask(&m))
            .collect())
    }

    pub(crate) fn component_masks(&self, inside: &[bool]) -> Vec<Vec<bool>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if !inside[start] || seen[start] {
                continue;
            }
            let mut comp = vec![false; n];
            seen[start] = true;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                comp[u] = true;
                for &v in &self.adj[u] {
                    if inside[v] && !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` inside `allowed`.
    pub(crate) fn reach_within(&self, start: usize, allowed: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if allowed[v] && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.component_masks(&vec![true; self.n()]).len() == 1
    }

    pub fn is_complete(&self) -> bool {
        self.adj.iter().all(|l| l.len() + 1 == self.n())
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Subgraph induced by `mask`, keeping all `n` ids (outside vertices
    /// become isolated).
    pub fn restricted(&self, mask: &[bool]) -> Graph {
        Graph {
            adj: self
                .adj
                .iter()
                .enumerate()
                .map(|(u, l)| {
                    if mask[u] {
                        l.iter().copied().filter(|&v| mask[v]).collect()
                    } else {
                        Vec::new()
                    }
                })
                .collect(),
        }
    }
}
