//! Maximum-cardinality matching in general graphs.
//!
//! Edmonds' blossom algorithm in its array form: each search grows an
//! alternating forest from one exposed root, contracting odd cycles by
//! relabelling their vertices with a common base. A vertex that fails to
//! reach an augmenting path once never will later, so a single pass over
//! the exposed vertices yields a maximum matching.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

const NONE: usize = usize::MAX;

/// Returns `mate[v]`, the partner of `v` in a maximum matching.
///
/// `adj` must describe a simple undirected graph (symmetric lists, no loops).
pub fn maximum_matching(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut m = Matcher::new(adj);
    m.greedy();
    for root in 0..adj.len() {
        if m.mate[root] == NONE {
            if let Some(end) = m.find_path(root) {
                m.augment(end);
            }
        }
    }
    m.mate.iter().map(|&v| (v != NONE).then_some(v)).collect()
}

/// Number of edges in a maximum matching.
pub fn matching_size(adj: &[Vec<usize>]) -> usize {
    maximum_matching(adj).iter().filter(|m| m.is_some()).count() / 2
}

struct Matcher<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    on_path: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Matcher<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Matcher {
            adj,
            mate: alloc::vec![NONE; n],
            parent: alloc::vec![NONE; n],
            base: (0..n).collect(),
            used: alloc::vec![false; n],
            in_blossom: alloc::vec![false; n],
            on_path: alloc::vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn greedy(&mut self) {
        for v in 0..self.adj.len() {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(&w) = self.adj[v].iter().find(|&&w| w != v && self.mate[w] == NONE) {
                self.mate[v] = w;
                self.mate[w] = v;
            }
        }
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> usize {
        self.on_path.iter_mut().for_each(|x| *x = false);
        loop {
            a = self.base[a];
            self.on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut adj = alloc::vec![Vec::new(); n];
        for &(u, v) in edges {
            if u != v && !adj[u].contains(&v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        adj
    }

    fn brute(edges: &[(usize, usize)], used: u32, from: usize) -> usize {
        let mut best = 0;
        for (i, &(u, v)) in edges.iter().enumerate().skip(from) {
            if u != v && used & (1 << u) == 0 && used & (1 << v) == 0 {
                best = best.max(1 + brute(edges, used | 1 << u | 1 << v, i + 1));
            }
        }
        best
    }

    #[test]
    fn odd_cycles_need_blossoms() {
        // Two triangles joined by a path: greedy alone can get stuck.
        let edges = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4)];
        assert_eq!(matching_size(&adjacency(7, &edges)), 3);
        let petersen = [
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ];
        assert_eq!(matching_size(&adjacency(10, &petersen)), 5);
    }

    #[test]
    fn mate_is_symmetric() {
        let adj = adjacency(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let mate = maximum_matching(&adj);
        for (v, m) in mate.iter().enumerate() {
            if let Some(w) = m {
                assert_eq!(mate[*w], Some(v));
                assert!(adj[v].contains(w));
            }
        }
    }

    proptest! {
        #[test]
        fn agrees_with_exhaustive_search(
            n in 1usize..10,
            raw in proptest::collection::vec((0usize..10, 0usize..10), 0..20),
        ) {
            let edges: Vec<(usize, usize)> =
                raw.into_iter().map(|(u, v)| (u % n, v % n)).collect();
            prop_assert_eq!(matching_size(&adjacency(n, &edges)), brute(&edges, 0, 0));
        }
    }
}
