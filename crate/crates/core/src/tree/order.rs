use super::{binarize, merge_bags, TreeDecomposition};
use crate::matrix::Permutation;

/// A merged, full binary decomposition with its `rho` sets and vertex
/// post-ordering.
#[derive(Debug, Clone)]
pub struct NormalizedTD {
    pub td: TreeDecomposition,
    pub rho: Vec<Vec<usize>>,
    pub order: Permutation,
    /// Largest bag of the decomposition before merging.
    pub tau: usize,
}

impl NormalizedTD {
    pub fn max_bag_size(&self) -> usize {
        self.td.max_bag_size()
    }
}

pub fn normalize(td: &TreeDecomposition) -> NormalizedTD {
    let tau = td.max_bag_size().max(1);
    let td = binarize(&merge_bags(td, tau));
    let rho = td.rho();
    let order = post_order(&td);
    NormalizedTD { td, rho, order, tau }
}

/// `rho` of a bag with children `Y`, `Z` ordered by class:
/// in `Y` only, in both, in `Z` only, in neither; ties by vertex index.
pub(crate) fn ordered_rho(td: &TreeDecomposition, x: usize, rho: &[usize]) -> Vec<usize> {
    let kids = td.children(x);
    let in_child = |i: usize, v: usize| kids.get(i).is_some_and(|&c| td.contains(c, v));
    let mut out = rho.to_vec();
    out.sort_by_key(|&v| {
        let class = match (in_child(0, v), in_child(1, v)) {
            (true, false) => 0,
            (true, true) => 1,
            (false, true) => 2,
            (false, false) => 3,
        };
        (class, v)
    });
    out
}

/// DFS post-order over bags, each bag contributing its ordered `rho` set.
/// Position `i` of the result holds the `i`-th vertex.
pub fn post_order(td: &TreeDecomposition) -> Permutation {
    let rho = td.rho();
    let mut fwd = Vec::with_capacity(td.n());
    for x in td.bag_post_order() {
        fwd.extend(ordered_rho(td, x, &rho[x]));
    }
    Permutation::from_vec(fwd).expect("rho sets partition the vertices")
}
