//! Plain-text instance files.
//!
//! ```text
//! # comment
//! nodes 3
//! node 0 1 1
//! node 1 1 2/3
//! node 2 1 1
//! edge 0 1
//! edge 1 2
//! ```
//!
//! The header comes first. Every id in `0..n` has exactly one `node <id>
//! <capacity> <cost>` line; both numbers are nonnegative integers or `p/q`.
//! Each edge is listed once as `edge <u> <v>` with `u < v`. Comment lines
//! start with `#`; blank lines are ignored. [`Instance::to_text`] writes the
//! canonical form: nodes by id, edges sorted, rationals in lowest terms.

use std::fmt;
use std::fmt::Write as _;

use domatic_core::rational;
use domatic_core::{Graph, NodeWeights, Rational};
use num_traits::Signed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub capacity: NodeWeights,
    pub cost: NodeWeights,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based; 0 when the problem is the file as a whole.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn id(tok: &str, line: usize) -> Result<usize, ParseError> {
    if tok.starts_with('+') || (tok.len() > 1 && tok.starts_with('0')) {
        return err(line, format!("bad vertex id `{tok}`"));
    }
    tok.parse().or_else(|_| err(line, format!("bad vertex id `{tok}`")))
}

fn number(tok: &str, what: &str, line: usize) -> Result<Rational, ParseError> {
    match rational::parse(tok) {
        Some(r) if !r.is_negative() => Ok(r),
        Some(_) => err(line, format!("negative {what} `{tok}`")),
        None => err(line, format!("bad {what} `{tok}` (expected an integer or p/q)")),
    }
}

impl Instance {
    pub fn new(graph: Graph, capacity: NodeWeights, cost: NodeWeights) -> Self {
        assert_eq!(graph.n(), capacity.len());
        assert_eq!(graph.n(), cost.len());
        Self { graph, capacity, cost }
    }

    pub fn unit(graph: Graph) -> Self {
        let n = graph.n();
        Self::new(
            graph,
            NodeWeights::uniform(n, rational::one()),
            NodeWeights::uniform(n, rational::one()),
        )
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut n: Option<usize> = None;
        let mut nodes: Vec<Option<(Rational, Rational)>> = Vec::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            match (toks[0], n) {
                ("nodes", None) => {
                    if toks.len() != 2 {
                        return err(line, "expected `nodes <n>`");
                    }
                    let count = id(toks[1], line)?;
                    n = Some(count);
                    nodes = vec![None; count];
                }
                ("nodes", Some(_)) => return err(line, "duplicate `nodes` header"),
                (_, None) => return err(line, "expected `nodes <n>` header first"),
                ("node", Some(count)) => {
                    if toks.len() != 4 {
                        return err(line, "expected `node <id> <capacity> <cost>`");
                    }
                    let v = id(toks[1], line)?;
                    if v >= count {
                        return err(line, format!("node id {v} out of range 0..{count}"));
                    }
                    if nodes[v].is_some() {
                        return err(line, format!("node {v} listed twice"));
                    }
                    nodes[v] = Some((number(toks[2], "capacity", line)?, number(toks[3], "cost", line)?));
                }
                ("edge", Some(count)) => {
                    if toks.len() != 3 {
                        return err(line, "expected `edge <u> <v>`");
                    }
                    let (u, v) = (id(toks[1], line)?, id(toks[2], line)?);
                    if u >= count || v >= count {
                        return err(line, format!("edge endpoint out of range 0..{count}"));
                    }
                    if u >= v {
                        return err(line, format!("edge {u} {v}: endpoints must satisfy u < v"));
                    }
                    if edges.contains(&(u, v)) {
                        return err(line, format!("edge {u} {v} listed twice"));
                    }
                    edges.push((u, v));
                }
                (other, _) => return err(line, format!("unknown directive `{other}`")),
            }
        }
        let Some(count) = n else {
            return err(0, "missing `nodes <n>` header");
        };
        let mut capacity = Vec::with_capacity(count);
        let mut cost = Vec::with_capacity(count);
        for (v, entry) in nodes.into_iter().enumerate() {
            let Some((c, w)) = entry else {
                return err(0, format!("node {v} has no `node` line"));
            };
            capacity.push(c);
            cost.push(w);
        }
        let graph = Graph::new(count, &edges).map_err(|e| ParseError {
            line: 0,
            message: e.to_string(),
        })?;
        Ok(Self::new(graph, NodeWeights::new(capacity), NodeWeights::new(cost)))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "nodes {}", self.graph.n());
        for v in 0..self.graph.n() {
            let _ = writeln!(
                out,
                "node {v} {} {}",
                rational::format(self.capacity.get(v)),
                rational::format(self.cost.get(v))
            );
        }
        for (u, v) in self.graph.edges() {
            let _ = writeln!(out, "edge {u} {v}");
        }
        out
    }
}
