//! Exact-rational linear programming.
//!
//! Everything here reduces to one primal form,
//!
//! ```text
//! max Σ_j z_j   s.t.  Σ_{j : v ∈ C_j} z_j ≤ b(v)  ∀v,   z ≥ 0,
//! ```
//!
//! over 0/1 columns `C_j` and bounds `b ≥ 0`. The slack basis is feasible, so
//! a single-phase tableau simplex with Bland's rule suffices. The same LP is
//! the column-generation master for packings and, read through its duals,
//! the covering LP `min b·x s.t. x(C_j) ≥ 1`: optimal shadow prices of the
//! packing rows are an optimal covering point.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::cuts::ViolatedConstraint;
use crate::graph::{FractionalSolution, NodeWeights, VertexSet};
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Optimal primal and dual of the packing form.
#[derive(Debug, Clone)]
struct SimplexSolution {
    status: LpStatus,
    primal: Vec<Rational>,
    duals: Vec<Rational>,
    value: Rational,
    basis: Vec<usize>,
}

/// Dense tableau simplex on the packing form. Column `j < k` is structural,
/// column `k + i` is the slack of row `i`.
fn simplex(columns: &[VertexSet], bounds: &[Rational]) -> SimplexSolution {
    let m = bounds.len();
    let k = columns.len();
    let width = k + m;
    let mut tab: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = vec![Rational::zero(); width];
            row[k + i] = Rational::one();
            row
        })
        .collect();
    for (j, col) in columns.iter().enumerate() {
        for v in col.iter() {
            tab[v][j] = Rational::one();
        }
    }
    let mut rhs: Vec<Rational> = bounds.to_vec();
    // Reduced costs c_B B⁻¹ A_j − c_j; negative entries may enter.
    let mut reduced: Vec<Rational> = (0..width)
        .map(|j| if j < k { -Rational::one() } else { Rational::zero() })
        .collect();
    let mut objective = Rational::zero();
    let mut basis: Vec<usize> = (k..width).collect();

    // Bland: lowest-index improving column, then lowest-index basic
    // variable among tied ratios.
    while let Some(enter) = (0..width).find(|&j| reduced[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &rhs[i] / &tab[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            return SimplexSolution {
                status: LpStatus::Unbounded,
                primal: vec![Rational::zero(); k],
                duals: vec![Rational::zero(); m],
                value: Rational::zero(),
                basis,
            };
        };
        let pivot = tab[r][enter].clone();
        for x in tab[r].iter_mut() {
            *x /= &pivot;
        }
        rhs[r] /= &pivot;
        let pivot_row = tab[r].clone();
        let pivot_rhs = rhs[r].clone();
        for i in 0..m {
            if i == r || tab[i][enter].is_zero() {
                continue;
            }
            let f = tab[i][enter].clone();
            for (x, p) in tab[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            rhs[i] -= &f * &pivot_rhs;
        }
        let f = reduced[enter].clone();
        for (x, p) in reduced.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
        objective -= &f * &pivot_rhs;
        basis[r] = enter;
    }

    let mut primal = vec![Rational::zero(); k];
    for (i, &b) in basis.iter().enumerate() {
        if b < k {
            primal[b] = rhs[i].clone();
        }
    }
    let duals = reduced[k..].to_vec();
    SimplexSolution {
        status: LpStatus::Optimal,
        primal,
        duals,
        value: objective,
        basis,
    }
}

/// Optimum of the packing master `max Σλ, Σ_{i: v ∈ D_i} λ_i ≤ bounds(v)`.
#[derive(Debug, Clone)]
pub struct PackingMaster {
    pub weights: Vec<Rational>,
    /// One dual per vertex; nonnegative, complementary to `weights`.
    pub duals: NodeWeights,
    pub value: Rational,
}

/// Solves the packing master exactly. Columns must be nonempty sets.
pub fn solve_packing_master(columns: &[VertexSet], bounds: &NodeWeights) -> Result<PackingMaster> {
    bounds.check_nonnegative()?;
    if columns.is_empty() {
        return Err(Error::InvalidInput("packing master needs at least one column".into()));
    }
    for c in columns {
        if c.is_empty() {
            return Err(Error::InvalidInput("empty column".into()));
        }
        if c.max().is_some_and(|v| v >= bounds.len()) {
            return Err(Error::InvalidVertex {
                vertex: c.max().unwrap_or_default(),
                n: bounds.len(),
            });
        }
    }
    let sol = simplex(columns, bounds.as_slice());
    debug_assert_eq!(sol.status, LpStatus::Optimal);
    debug_assert_eq!(
        sol.value,
        bounds.dot(&NodeWeights::new(sol.duals.clone())),
        "strong duality"
    );
    Ok(PackingMaster {
        weights: sol.primal,
        duals: NodeWeights::new(sol.duals),
        value: sol.value,
    })
}

/// Callback returning a violated row for a candidate point, or `None` when
/// the point is feasible for the full implicit LP.
pub type RowOracle<'a> = Box<dyn FnMut(&FractionalSolution) -> Result<Option<ViolatedConstraint>> + 'a>;

/// `min objective·x  s.t.  x(row) ≥ 1` for explicit rows plus whatever the
/// oracle reports.
pub struct CoveringModel<'a> {
    pub objective: NodeWeights,
    pub explicit_rows: Vec<VertexSet>,
    pub row_oracle: Option<RowOracle<'a>>,
    /// Maximum number of generated rows; `None` means `10·2^min(n, 20)`.
    pub iteration_cap: Option<usize>,
}

impl<'a> CoveringModel<'a> {
    pub fn new(objective: NodeWeights, explicit_rows: Vec<VertexSet>) -> Self {
        Self {
            objective,
            explicit_rows,
            row_oracle: None,
            iteration_cap: None,
        }
    }

    pub fn with_oracle(
        mut self,
        oracle: impl FnMut(&FractionalSolution) -> Result<Option<ViolatedConstraint>> + 'a,
    ) -> Self {
        self.row_oracle = Some(Box::new(oracle));
        self
    }

    pub fn with_iteration_cap(mut self, cap: usize) -> Self {
        self.iteration_cap = Some(cap);
        self
    }
}

#[derive(Debug, Clone)]
pub struct LpResult {
    pub x: FractionalSolution,
    pub value: Rational,
    pub status: LpStatus,
    /// Number of rows added by the oracle.
    pub generated_rows: usize,
    /// Explicit rows followed by generated rows, in insertion order.
    pub rows: Vec<VertexSet>,
    /// Optimal dual (packing) weight of each row.
    pub row_duals: Vec<Rational>,
    /// Final simplex basis over columns `rows ++ slacks`.
    pub basis: Vec<usize>,
}

impl LpResult {
    /// Text dump of the final rows, duals, point and basis, one item per
    /// line, rationals as `p/q`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "status {:?}", self.status);
        let _ = writeln!(out, "value {}", self.value);
        let _ = writeln!(out, "generated {}", self.generated_rows);
        for (i, row) in self.rows.iter().enumerate() {
            let dual = self.row_duals.get(i).map(|d| d.to_string()).unwrap_or_default();
            let members: Vec<String> = row.iter().map(|v| format!("x{v}")).collect();
            let _ = writeln!(out, "row {i} {} >= 1 dual {dual}", members.join(" + "));
        }
        for (v, xv) in self.x.iter().enumerate() {
            let _ = writeln!(out, "x{v} = {xv}");
        }
        let basis: Vec<String> = self.basis.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "basis {}", basis.join(" "));
        out
    }
}

/// Solves a covering LP by row generation: solve on the current rows, ask
/// the oracle for one violated row, add it, repeat.
pub fn solve_covering(mut model: CoveringModel<'_>) -> Result<LpResult> {
    model.objective.check_nonnegative()?;
    let n = model.objective.len();
    let cap = model
        .iteration_cap
        .unwrap_or_else(|| 10usize.saturating_mul(1usize << n.min(20)));
    let mut rows = model.explicit_rows;
    let explicit = rows.len();
    for r in &rows {
        if r.max().is_some_and(|v| v >= n) {
            return Err(Error::InvalidVertex {
                vertex: r.max().unwrap_or_default(),
                n,
            });
        }
    }
    loop {
        let generated = rows.len() - explicit;
        if rows.iter().any(VertexSet::is_empty) {
            return Ok(LpResult {
                x: NodeWeights::zeros(n),
                value: Rational::zero(),
                status: LpStatus::Infeasible,
                generated_rows: generated,
                rows,
                row_duals: Vec::new(),
                basis: Vec::new(),
            });
        }
        let sol = simplex(&rows, model.objective.as_slice());
        debug_assert_eq!(sol.status, LpStatus::Optimal);
        let x = NodeWeights::new(sol.duals);
        debug_assert_eq!(sol.value, model.objective.dot(&x), "strong duality");
        let violated = match model.row_oracle.as_mut() {
            Some(oracle) => oracle(&x)?,
            None => None,
        };
        match violated {
            None => {
                return Ok(LpResult {
                    x,
                    value: sol.value,
                    status: LpStatus::Optimal,
                    generated_rows: generated,
                    rows,
                    row_duals: sol.primal,
                    basis: sol.basis,
                })
            }
            Some(v) => {
                if generated >= cap {
                    return Err(Error::IterationCap(cap));
                }
                debug_assert!(!rows.contains(&v.row), "oracle returned a satisfied row");
                rows.push(v.row);
            }
        }
    }
}

/// Exact optimality certificate for `min c·x, x(row) ≥ 1, x ≥ 0`: `x`
/// primal feasible, `y` dual feasible (`y ≥ 0`, Σ_{rows ∋ v} y ≤ c(v)) and
/// equal objectives.
pub fn covering_certificate_holds(
    rows: &[VertexSet],
    cost: &NodeWeights,
    x: &FractionalSolution,
    y: &[Rational],
) -> bool {
    let n = cost.len();
    if x.len() != n || y.len() != rows.len() || x.check_nonnegative().is_err() {
        return false;
    }
    if y.iter().any(Signed::is_negative) {
        return false;
    }
    if rows.iter().any(|r| x.sum_over(r) < Rational::one()) {
        return false;
    }
    let mut load = vec![Rational::zero(); n];
    for (r, yr) in rows.iter().zip(y) {
        for v in r.iter() {
            load[v] += yr;
        }
    }
    if load.iter().zip(cost.iter()).any(|(l, c)| l > c) {
        return false;
    }
    cost.dot(x) == y.iter().sum::<Rational>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::rational::{frac, int};

    fn domination_rows(g: &Graph) -> Vec<VertexSet> {
        (0..g.n()).map(|v| g.closed_neighborhood(v).unwrap()).collect()
    }

    #[test]
    fn star_ds_lp() {
        let g = Graph::star(3);
        let cost = NodeWeights::from_ints(&[2, 1, 1, 1]);
        let res = solve_covering(CoveringModel::new(cost.clone(), domination_rows(&g))).unwrap();
        assert_eq!(res.status, LpStatus::Optimal);
        assert_eq!(res.value, int(2));
        assert_eq!(res.x.get(0), &int(1));
        assert!(covering_certificate_holds(&res.rows, &cost, &res.x, &res.row_duals));
    }

    #[test]
    fn zero_objective() {
        let g = Graph::cycle(5);
        let rows = domination_rows(&g);
        let res = solve_covering(CoveringModel::new(NodeWeights::zeros(5), rows.clone())).unwrap();
        assert_eq!(res.status, LpStatus::Optimal);
        assert_eq!(res.value, int(0));
        assert!(rows.iter().all(|r| res.x.sum_over(r) >= int(1)));
    }

    #[test]
    fn empty_row_is_infeasible() {
        let res = solve_covering(CoveringModel::new(NodeWeights::zeros(2), vec![VertexSet::new()])).unwrap();
        assert_eq!(res.status, LpStatus::Infeasible);
    }

    #[test]
    fn row_generation_loop_adds_rows() {
        // Oracle enforcing x0 + x1 ≥ 1 and x1 + x2 ≥ 1 lazily.
        let lazy = [VertexSet::from([0, 1]), VertexSet::from([1, 2])];
        let cost = NodeWeights::from_ints(&[1, 3, 1]);
        let model = CoveringModel::new(cost, Vec::new()).with_oracle(|x| {
            Ok(lazy
                .iter()
                .find(|r| x.sum_over(r) < int(1))
                .map(|r| ViolatedConstraint {
                    kind: crate::cuts::ConstraintKind::Domination(0),
                    row: r.clone(),
                    slack: x.sum_over(r) - int(1),
                }))
        });
        let res = solve_covering(model).unwrap();
        assert_eq!(res.value, int(2));
        assert_eq!(res.generated_rows, 2);
        assert!(res.dump().contains("row 0 x0 + x1 >= 1"));
    }

    #[test]
    fn iteration_cap_is_enforced() {
        let model = CoveringModel::new(NodeWeights::from_ints(&[1, 1]), Vec::new())
            .with_iteration_cap(0)
            .with_oracle(|x| {
                Ok(
                    (x.sum_over(&VertexSet::from([0])) < int(1)).then(|| ViolatedConstraint {
                        kind: crate::cuts::ConstraintKind::Domination(0),
                        row: VertexSet::from([0]),
                        slack: int(-1),
                    }),
                )
            });
        assert!(matches!(solve_covering(model), Err(Error::IterationCap(0))));
    }

    #[test]
    fn master_examples() {
        let p = solve_packing_master(&[VertexSet::from([1])], &NodeWeights::uniform(3, int(1))).unwrap();
        assert_eq!(p.weights, vec![int(1)]);
        assert_eq!(p.value, int(1));

        let arcs: Vec<VertexSet> = (0..5).map(|i| VertexSet::from([i, (i + 1) % 5, (i + 2) % 5])).collect();
        let ones = NodeWeights::uniform(5, int(1));
        let p = solve_packing_master(&arcs, &ones).unwrap();
        assert_eq!(p.value, frac(5, 3));
        assert!(p.weights.iter().all(|w| *w == frac(1, 3)));
        // Complementary slackness, exactly.
        for (col, w) in arcs.iter().zip(&p.weights) {
            if !w.is_zero() {
                assert_eq!(p.duals.sum_over(col), int(1));
            }
        }
        assert_eq!(ones.dot(&p.duals), p.value);

        let p = solve_packing_master(&arcs, &NodeWeights::zeros(5)).unwrap();
        assert_eq!(p.value, int(0));
        assert!(p.weights.iter().all(Zero::is_zero));

        assert!(solve_packing_master(&[], &ones).is_err());
        assert!(solve_packing_master(&[VertexSet::new()], &ones).is_err());
    }
}
