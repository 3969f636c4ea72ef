//! Fractional connected domatic packings in node-capacitated graphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: simple undirected graphs, vertex sets, node weights and the
//!   domination / connectivity predicates everything else is built on.
//! - [`cuts`]: vertex-capacitated max-flow, minimum node separators and the
//!   separation oracles for the exponential covering LPs.
//! - [`lp`]: an exact-rational simplex core with row generation for covering
//!   LPs and a packing master for column generation.
//! - [`primal_dual`]: the primal-dual dominating set algorithm with
//!   reverse-delete, and checkers for its analysis certificates.
//! - [`steiner`]: the node-weighted Steiner tree LP and a spider-greedy
//!   connector.
//! - [`pipeline`]: rounding a fractional connected dominating set into an
//!   integral one (dominating set, then connector).
//! - [`packing`]: convex decomposition by column generation and the
//!   capacitated packing construction.
//! - [`oracle`]: brute-force ground truth for small instances.
//!
//! All arithmetic is exact ([`Rational`] is an arbitrary-precision fraction).

pub mod cuts;
mod error;
pub mod graph;
pub mod lp;
pub mod oracle;
pub mod packing;
pub mod pipeline;
pub mod primal_dual;
pub mod rational;
pub mod steiner;

pub use error::{Error, Result};
pub use graph::{FractionalSolution, Graph, NodeWeights, VertexSet};
pub use rational::Rational;

pub use cuts::{
    min_capacity_separator, min_vertex_cut, separate_cds_lp, separate_nwst_lp, ConstraintKind, SeparatorCertificate,
    ViolatedConstraint,
};
pub use lp::{solve_covering, solve_packing_master, CoveringModel, LpResult, LpStatus, PackingMaster};
pub use packing::{
    carr_vempala_decompose, pack_capacitated, pack_complete, verify_packing, DecomposeOptions, DecompositionResult,
    Packing, PackingReport,
};
pub use pipeline::{randomized_ds_round, round_cds, solve_cds_lp, solve_ds_lp, steiner_extension, CdsRounding};
pub use primal_dual::{
    check_gamma_bound, check_witness_lemma, primal_dual_ds, reverse_delete, DualSolution, Iteration, PdResult, PdTrace,
};
pub use steiner::{solve_nwst_lp, spider_greedy, SteinerInstance, SteinerSolution};
