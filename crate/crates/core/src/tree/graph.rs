use crate::field::Field;
use crate::matrix::DenseMatrix;

/// Undirected simple graph on `0..n` given by sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Self-loops are ignored and duplicate edges collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            if u != v {
                g.adj[u].push(v);
                g.adj[v].push(u);
            }
        }
        for a in &mut g.adj {
            a.sort_unstable();
            a.dedup();
        }
        g
    }

    /// Off-diagonal pattern of a square matrix, symmetrized.
    pub fn from_dense<F: Field>(a: &DenseMatrix<F>) -> Self {
        let f = a.field();
        let n = a.rows();
        let edges = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
        Graph::from_edges(n, edges.filter(|&(i, j)| i < j && (!f.is_zero(a.get(i, j)) || !f.is_zero(a.get(j, i)))))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Each edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n > 2 {
            edges.push((n - 1, 0));
        }
        Graph::from_edges(n, edges)
    }

    /// `width x len` grid, vertices numbered column by column.
    pub fn grid_strip(width: usize, len: usize) -> Self {
        let id = |c: usize, r: usize| c * width + r;
        let mut edges = Vec::new();
        for c in 0..len {
            for r in 0..width {
                if r + 1 < width {
                    edges.push((id(c, r), id(c, r + 1)));
                }
                if c + 1 < len {
                    edges.push((id(c, r), id(c + 1, r)));
                }
            }
        }
        Graph::from_edges(width * len, edges)
    }

    pub fn star(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (0, i)))
    }
}
