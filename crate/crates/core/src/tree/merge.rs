use std::collections::BTreeSet;

use super::TreeDecomposition;

struct Work {
    bags: Vec<BTreeSet<usize>>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    rho: Vec<usize>,
    alive: Vec<bool>,
    root: usize,
}

impl Work {
    fn new(td: &TreeDecomposition) -> Self {
        let k = td.num_bags();
        Work {
            bags: td.bags().iter().map(|b| b.iter().copied().collect()).collect(),
            parent: (0..k).map(|b| td.parent(b)).collect(),
            children: (0..k).map(|b| td.children(b).to_vec()).collect(),
            rho: td.rho().iter().map(Vec::len).collect(),
            alive: vec![true; k],
            root: td.root(),
        }
    }

    fn absorb(&mut self, into: usize, from: usize) {
        let bag = std::mem::take(&mut self.bags[from]);
        self.bags[into].extend(bag);
        self.rho[into] += self.rho[from];
        self.alive[from] = false;
    }

    /// Merges sibling `b` into sibling `a`.
    fn merge_siblings(&mut self, a: usize, b: usize) {
        let p = self.parent[b].expect("siblings have a parent");
        self.children[p].retain(|&c| c != b);
        let kids = std::mem::take(&mut self.children[b]);
        for &c in &kids {
            self.parent[c] = Some(a);
        }
        self.children[a].extend(kids);
        self.absorb(a, b);
    }

    /// Merges child `c` into its parent, splicing its children in place.
    fn merge_into_parent(&mut self, c: usize) {
        let p = self.parent[c].expect("child has a parent");
        let kids = std::mem::take(&mut self.children[c]);
        for &g in &kids {
            self.parent[g] = Some(p);
        }
        let at = self.children[p].iter().position(|&x| x == c).expect("child listed");
        self.children[p].splice(at..=at, kids);
        self.absorb(p, c);
    }

    fn bfs(&self) -> Vec<usize> {
        let mut out = vec![self.root];
        let mut i = 0;
        while i < out.len() {
            out.extend(self.children[out[i]].iter().copied());
            i += 1;
        }
        out
    }

    fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![(self.root, false)];
        while let Some((x, done)) = stack.pop() {
            if done {
                out.push(x);
            } else {
                stack.push((x, true));
                stack.extend(self.children[x].iter().rev().map(|&c| (c, false)));
            }
        }
        out
    }

    fn finish(self, n: usize) -> TreeDecomposition {
        let order = self.bfs();
        let mut id = vec![usize::MAX; self.bags.len()];
        for (i, &x) in order.iter().enumerate() {
            id[x] = i;
        }
        let bags = order.iter().map(|&x| self.bags[x].iter().copied().collect()).collect();
        let parent = order.iter().map(|&x| self.parent[x].map(|p| id[p])).collect();
        TreeDecomposition::from_parents(n, bags, parent)
    }
}

/// Reduces the bag count by merging bags with small `rho` sets: first
/// siblings, bottom-up and left to right, then children into parents in
/// post-order passes. A pair is merged while its combined `rho` size is
/// below `tau`. The result is renumbered breadth-first with the root at 0.
pub fn merge_bags(td: &TreeDecomposition, tau: usize) -> TreeDecomposition {
    let mut w = Work::new(td);
    let levels = w.bfs();
    for &x in levels.iter().rev() {
        if !w.alive[x] {
            continue;
        }
        loop {
            let kids = w.children[x].clone();
            let pair = kids.iter().enumerate().find_map(|(i, &a)| {
                kids[i + 1..].iter().find(|&&b| w.rho[a] + w.rho[b] < tau).map(|&b| (a, b))
            });
            match pair {
                Some((a, b)) => w.merge_siblings(a, b),
                None => break,
            }
        }
    }
    loop {
        let mut changed = false;
        for c in w.post_order() {
            if !w.alive[c] {
                continue;
            }
            if let Some(p) = w.parent[c] {
                if w.rho[c] + w.rho[p] < tau {
                    w.merge_into_parent(c);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    w.finish(td.n())
}

/// Makes every internal node have exactly two children by adding copies of
/// the parent bag: a single child gets a leaf copy as sibling, and three or
/// more children are split along a chain of copies hanging to the right.
pub fn binarize(td: &TreeDecomposition) -> TreeDecomposition {
    let mut bags: Vec<Vec<usize>> = td.bags().to_vec();
    let mut parent: Vec<Option<usize>> = (0..td.num_bags()).map(|b| td.parent(b)).collect();
    for x in 0..td.num_bags() {
        let kids = td.children(x);
        match kids.len() {
            0 | 2 => {}
            1 => {
                bags.push(td.bag(x).to_vec());
                parent.push(Some(x));
            }
            k => {
                let mut host = x;
                for &c in &kids[1..k - 1] {
                    bags.push(td.bag(x).to_vec());
                    parent.push(Some(host));
                    host = bags.len() - 1;
                    parent[c] = Some(host);
                }
                parent[kids[k - 1]] = Some(host);
            }
        }
    }
    // copies get larger ids than every original bag, so sorting children by
    // id keeps original children on the left
    TreeDecomposition::from_parents(td.n(), bags, parent)
}
