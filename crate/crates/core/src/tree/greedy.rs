use std::collections::BTreeSet;

use super::{Graph, TreeDecomposition};

/// Tree decomposition by min-degree elimination (ties to the lowest index).
/// Eliminating `v` yields the bag `{v} + N(v)`, whose parent is the bag of
/// the first neighbour eliminated after `v`. Bags are numbered in reverse
/// elimination order, so the last eliminated vertex owns the root bag.
pub fn greedy_td(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::trivial(0);
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut done = vec![false; n];
    let mut pos = vec![0; n];
    let mut elim = Vec::with_capacity(n);
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .min_by_key(|&v| (adj[v].len(), v))
            .expect("vertices remain");
        done[v] = true;
        pos[v] = step;
        elim.push(v);
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &nb {
            adj[a].remove(&v);
            for &b in &nb {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        nbrs[v] = nb;
    }
    let id = |v: usize| n - 1 - pos[v];
    let mut bags = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for &v in &elim {
        let mut bag = nbrs[v].clone();
        bag.push(v);
        bags[id(v)] = bag;
        if let Some(&u) = nbrs[v].iter().min_by_key(|&&u| pos[u]) {
            edges.push((id(v), id(u)));
        }
    }
    TreeDecomposition::new(n, bags, &edges).expect("elimination tree is a forest")
}
