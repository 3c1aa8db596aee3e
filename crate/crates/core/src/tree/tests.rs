use super::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn path_td(n: usize) -> TreeDecomposition {
    let bags = (1..n).map(|i| vec![i - 1, i]).collect();
    let edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
    TreeDecomposition::new(n, bags, &edges).unwrap()
}

/// Random graph of treewidth at most `k`: each new vertex joins a random
/// subset of an existing clique of size at most k+1.
pub(crate) fn random_ktree_graph<R: Rng>(n: usize, k: usize, rng: &mut R) -> Graph {
    let mut cliques: Vec<Vec<usize>> = vec![(0..(k + 1).min(n)).collect()];
    let mut edges = Vec::new();
    for v in 0..(k + 1).min(n) {
        for u in 0..v {
            if rng.gen_bool(0.7) {
                edges.push((u, v));
            }
        }
    }
    for v in k + 1..n {
        let base = cliques[rng.gen_range(0..cliques.len())].clone();
        let drop = rng.gen_range(0..base.len());
        let mut c: Vec<usize> = base.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &u)| u).collect();
        for &u in &c {
            if rng.gen_bool(0.6) {
                edges.push((u, v));
            }
        }
        c.push(v);
        cliques.push(c);
    }
    Graph::from_edges(n, edges)
}

#[test]
fn trivial_and_path_valid() {
    let g = Graph::from_edges(3, [(0, 2)]);
    assert!(validate_td(&TreeDecomposition::trivial(3), &g).is_ok());
    let td = path_td(3);
    assert!(validate_td(&td, &Graph::path(3)).is_ok());
    assert_eq!(validate_td(&td, &Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)])), Err(TdViolation::EdgeUncovered(0, 2)));
}

#[test]
fn detects_uncovered_and_disconnected() {
    let td = TreeDecomposition::new(3, vec![vec![0], vec![1]], &[(0, 1)]).unwrap();
    assert_eq!(validate_td(&td, &Graph::new(3)), Err(TdViolation::VertexUncovered(2)));
    let td = TreeDecomposition::new(2, vec![vec![0], vec![1], vec![0]], &[(0, 1), (1, 2)]).unwrap();
    assert!(matches!(validate_td(&td, &Graph::new(2)), Err(TdViolation::Disconnected { vertex: 0, .. })));
}

#[test]
fn merge_path_bound() {
    for n in [10usize, 33, 100] {
        let td = path_td(n);
        let merged = merge_bags(&td, 4);
        assert!(validate_td(&merged, &Graph::path(n)).is_ok());
        assert!(merged.num_bags() <= (2 * n).div_ceil(4) + 1, "n={n}: {}", merged.num_bags());
        assert!(merged.max_bag_size() <= 3 * 2);
        assert_eq!(merge_bags(&merged, 4), merged);
    }
}

#[test]
fn star_siblings_merge_first() {
    let n = 20;
    let mut bags = vec![vec![0]];
    bags.extend((1..n).map(|i| vec![0, i]));
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    let td = TreeDecomposition::new(n, bags, &edges).unwrap();
    let merged = merge_bags(&td, 8);
    assert!(validate_td(&merged, &Graph::star(n)).is_ok());
    let rho = merged.rho();
    // sibling pass: 19 leaves grouped 7 + 7 + 5; then the group of five
    // (1 + 5 < 8) folds into the root
    assert_eq!(rho[0].len(), 6);
    let sizes: Vec<usize> = merged.children(0).iter().map(|&c| rho[c].len()).collect();
    assert_eq!(sizes, vec![7, 7]);
}

#[test]
fn binarize_shapes() {
    let n = 4;
    let bags = vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3]];
    let td = TreeDecomposition::new(n, bags, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    let b = binarize(&td);
    assert!(b.is_full_binary());
    assert_eq!(b.num_bags(), 5);
    assert_eq!(b.bag(4), &[0]);
    assert!(validate_td(&b, &Graph::star(4)).is_ok());

    let td = path_td(4);
    let b = binarize(&td);
    assert!(b.is_full_binary());
    assert!(b.num_bags() <= 2 * td.num_bags());
    assert_eq!(binarize(&b), b);
}

#[test]
fn post_order_classes() {
    // root X = {0,1,2,3,4}, Y = {0,1,5}, Z = {1,2,6}
    let bags = vec![vec![0, 1, 2, 3, 4], vec![0, 1, 5], vec![1, 2, 6]];
    let td = TreeDecomposition::new(7, bags, &[(0, 1), (0, 2)]).unwrap();
    let order = post_order(&td);
    assert_eq!(order.as_slice(), &[5, 6, 0, 1, 2, 3, 4]);
    let single = TreeDecomposition::trivial(4);
    assert!(post_order(&single).is_identity());
}

#[test]
fn pace_roundtrip() {
    let td = read_td("c example\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n").unwrap();
    assert_eq!(td.num_bags(), 2);
    assert_eq!(td.tree_edges(), vec![(0, 1)]);
    assert_eq!(td.bag(1), &[1, 2]);
    assert_eq!(read_td(&write_td(&td)).unwrap(), td);
    assert!(matches!(read_td("s td 1 1 1\nb 1 4\n"), Err(Error::Parse { line: 2, .. })));
    assert!(matches!(read_td("b 1 1\n"), Err(Error::Parse { line: 1, .. })));
}

#[test]
fn greedy_valid_on_families() {
    let g = Graph::path(30);
    let td = greedy_td(&g);
    assert!(validate_td(&td, &g).is_ok());
    assert!(td.max_bag_size() <= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for graph in [Graph::cycle(40), Graph::grid_strip(3, 20), Graph::star(15), Graph::new(5), random_ktree_graph(200, 4, &mut rng)] {
        let td = greedy_td(&graph);
        assert!(validate_td(&td, &graph).is_ok());
        let norm = normalize(&td);
        assert!(validate_td(&norm.td, &graph).is_ok());
        assert!(norm.td.is_full_binary());
        assert!(norm.max_bag_size() <= 3 * norm.tau);
        let mut all: Vec<usize> = norm.rho.concat();
        all.sort_unstable();
        assert_eq!(all, (0..graph.n()).collect::<Vec<_>>());
    }
}

#[test]
fn merge_preserves_validity_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    for _ in 0..20 {
        let n = rng.gen_range(2..150);
        let k = rng.gen_range(1..5);
        let g = random_ktree_graph(n, k, &mut rng);
        let td = greedy_td(&g);
        let tau = td.max_bag_size();
        let merged = merge_bags(&td, tau);
        assert!(validate_td(&merged, &g).is_ok());
        assert!(merged.max_bag_size() <= 3 * tau);
        assert!(merged.num_bags() <= (4 * n).div_ceil(tau).max(1));
        assert!(validate_td(&binarize(&merged), &g).is_ok());
    }
}
