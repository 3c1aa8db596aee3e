//! Tree decompositions: validation, bag merging, binarization and the
//! post-ordering used by sparse elimination.

mod graph;
mod greedy;
mod merge;
mod order;
mod pace;

pub use graph::Graph;
pub use greedy::greedy_td;
pub use merge::{binarize, merge_bags};
pub use order::{normalize, post_order, NormalizedTD};
pub(crate) use order::ordered_rho;
pub use pace::{read_td, read_td_file, write_td};

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A rooted tree of bags over vertices `0..n`. Bags are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    n: usize,
    bags: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

/// First failed tree-decomposition property, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    VertexOutOfRange { bag: usize, vertex: usize },
    VertexUncovered(usize),
    Disconnected { vertex: usize, tops: Vec<usize> },
    EdgeUncovered(usize, usize),
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::VertexOutOfRange { bag, vertex } => write!(f, "bag {bag} holds out-of-range vertex {vertex}"),
            TdViolation::VertexUncovered(v) => write!(f, "vertex {v} is in no bag"),
            TdViolation::Disconnected { vertex, tops } => {
                write!(f, "bags holding vertex {vertex} are disconnected (subtree roots {tops:?})")
            }
            TdViolation::EdgeUncovered(u, v) => write!(f, "edge ({u}, {v}) is in no bag"),
        }
    }
}

impl From<TdViolation> for Error {
    fn from(v: TdViolation) -> Self {
        Error::InvalidDecomposition(v.to_string())
    }
}

impl TreeDecomposition {
    /// Builds a decomposition rooted at bag 0 from undirected tree edges.
    /// Components of a forest are attached to the root.
    pub fn new(n: usize, bags: Vec<Vec<usize>>, edges: &[(usize, usize)]) -> Result<Self> {
        let k = bags.len();
        if k == 0 {
            return Err(Error::InvalidDecomposition("no bags".into()));
        }
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in edges {
            if a >= k || b >= k || a == b {
                return Err(Error::InvalidDecomposition(format!("bad tree edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut parent = vec![None; k];
        let mut seen = vec![false; k];
        let mut tree_edges = 0;
        for start in 0..k {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            if start != 0 {
                parent[start] = Some(0);
            }
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = Some(x);
                        tree_edges += 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        if tree_edges != edges.len() {
            return Err(Error::InvalidDecomposition("tree edges contain a cycle or a duplicate".into()));
        }
        Ok(Self::from_parents(n, bags, parent))
    }

    /// Builds from a parent array; the unique parentless bag is the root.
    pub fn from_parents(n: usize, mut bags: Vec<Vec<usize>>, parent: Vec<Option<usize>>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        let mut children = vec![Vec::new(); bags.len()];
        let mut root = 0;
        for (x, p) in parent.iter().enumerate() {
            match p {
                Some(p) => children[*p].push(x),
                None => root = x,
            }
        }
        TreeDecomposition {
            n,
            bags,
            parent,
            children,
            root,
        }
    }

    /// One bag holding every vertex.
    pub fn trivial(n: usize) -> Self {
        Self::from_parents(n, vec![(0..n).collect()], vec![None])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_bags(&self) -> usize {
        self.bags.len()
    }

    pub fn bag(&self, b: usize) -> &[usize] {
        &self.bags[b]
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn parent(&self, b: usize) -> Option<usize> {
        self.parent[b]
    }

    pub fn children(&self, b: usize) -> &[usize] {
        &self.children[b]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn contains(&self, b: usize, v: usize) -> bool {
        self.bags[b].binary_search(&v).is_ok()
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Undirected tree edges `(parent, child)`.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        (0..self.num_bags()).filter_map(|x| self.parent[x].map(|p| (p, x))).collect()
    }

    /// Bags in DFS post-order, children visited in stored order.
    pub fn bag_post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.num_bags());
        let mut stack = vec![(self.root, false)];
        while let Some((x, expanded)) = stack.pop() {
            if expanded {
                out.push(x);
            } else {
                stack.push((x, true));
                for &c in self.children[x].iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    pub fn is_full_binary(&self) -> bool {
        self.children.iter().all(|c| c.is_empty() || c.len() == 2)
    }

    /// For each vertex the highest bag containing it, if any.
    pub fn top_bags(&self) -> Vec<Option<usize>> {
        let mut top = vec![None; self.n];
        for b in 0..self.num_bags() {
            for &v in &self.bags[b] {
                if v < self.n && self.parent[b].map_or(true, |p| !self.contains(p, v)) {
                    top[v] = Some(b);
                }
            }
        }
        top
    }

    /// `rho[b]`: vertices whose highest containing bag is `b`, ascending.
    pub fn rho(&self) -> Vec<Vec<usize>> {
        let mut rho = vec![Vec::new(); self.num_bags()];
        for (v, t) in self.top_bags().into_iter().enumerate() {
            if let Some(b) = t {
                rho[b].push(v);
            }
        }
        rho
    }
}

/// Checks vertex coverage, subtree connectivity and edge coverage.
pub fn validate_td(td: &TreeDecomposition, g: &Graph) -> std::result::Result<(), TdViolation> {
    let n = td.n;
    let mut tops: Vec<Vec<usize>> = vec![Vec::new(); n];
    for b in 0..td.num_bags() {
        for &v in &td.bags[b] {
            if v >= n {
                return Err(TdViolation::VertexOutOfRange { bag: b, vertex: v });
            }
            if td.parent[b].map_or(true, |p| !td.contains(p, v)) {
                tops[v].push(b);
            }
        }
    }
    for (v, t) in tops.iter().enumerate() {
        match t.len() {
            0 => return Err(TdViolation::VertexUncovered(v)),
            1 => {}
            _ => return Err(TdViolation::Disconnected { vertex: v, tops: t.clone() }),
        }
    }
    let mut holding: Vec<Vec<usize>> = vec![Vec::new(); n];
    for b in 0..td.num_bags() {
        for &v in &td.bags[b] {
            holding[v].push(b);
        }
    }
    for (u, v) in g.edges() {
        if v >= n || u >= n {
            return Err(TdViolation::EdgeUncovered(u, v));
        }
        if !holding[u].iter().any(|&b| td.contains(b, v)) {
            return Err(TdViolation::EdgeUncovered(u, v));
        }
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod tests;
