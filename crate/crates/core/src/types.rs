use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::{Error, Permutation, Result};

/// Points and vertices are dense indices `0..n`.
pub type Vertex = usize;

/// `C(n, 2)`.
pub fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// An unordered pair of distinct vertices, stored with the smaller first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair(Vertex, Vertex);

impl Pair {
    pub fn new(u: Vertex, v: Vertex) -> Result<Self> {
        match u.cmp(&v) {
            core::cmp::Ordering::Less => Ok(Pair(u, v)),
            core::cmp::Ordering::Greater => Ok(Pair(v, u)),
            core::cmp::Ordering::Equal => Err(Error::RepeatedVertex { vertex: u }),
        }
    }

    pub fn lo(self) -> Vertex {
        self.0
    }

    pub fn hi(self) -> Vertex {
        self.1
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    pub(crate) fn unchecked(u: Vertex, v: Vertex) -> Self {
        debug_assert!(u != v);
        if u < v {
            Pair(u, v)
        } else {
            Pair(v, u)
        }
    }
}

/// A 3-element vertex set, stored strictly increasing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple([Vertex; 3]);

impl Triple {
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Result<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(Error::RepeatedVertex { vertex: v[1] });
        }
        Ok(Triple(v))
    }

    pub(crate) fn unchecked(a: Vertex, b: Vertex, c: Vertex) -> Self {
        Self::new(a, b, c).expect("distinct vertices")
    }

    pub fn vertices(self) -> [Vertex; 3] {
        self.0
    }

    pub fn max_vertex(self) -> Vertex {
        self.0[2]
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn pairs(self) -> [Pair; 3] {
        let [a, b, c] = self.0;
        [Pair(a, b), Pair(a, c), Pair(b, c)]
    }

    pub fn meets(self, other: Triple) -> bool {
        self.0.iter().any(|v| other.contains(*v))
    }

    /// The vertex of `self` not in `pair`, if `pair ⊂ self`.
    pub fn third(self, pair: Pair) -> Option<Vertex> {
        if self.contains(pair.0) && self.contains(pair.1) {
            self.0.iter().copied().find(|v| !pair.contains(*v))
        } else {
            None
        }
    }

    pub fn map(self, f: impl Fn(Vertex) -> Vertex) -> Result<Self> {
        Triple::new(f(self.0[0]), f(self.0[1]), f(self.0[2]))
    }
}

/// A 3-uniform multi-hypergraph on `0..n`.
///
/// Multiplicities are kept as a `triple -> count` map, so iteration order is
/// always the canonical lexicographic one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Hypergraph3 {
    n: usize,
    triples: BTreeMap<Triple, usize>,
    edges: usize,
}

impl Hypergraph3 {
    pub fn new(n: usize) -> Self {
        Hypergraph3 { n, triples: BTreeMap::new(), edges: 0 }
    }

    pub fn from_triples(n: usize, triples: impl IntoIterator<Item = Triple>) -> Result<Self> {
        let mut h = Hypergraph3::new(n);
        for t in triples {
            h.add(t)?;
        }
        Ok(h)
    }

    /// Convenience for literals: `Hypergraph3::from_arrays(7, &[[0, 1, 2], ...])`.
    pub fn from_arrays(n: usize, triples: &[[Vertex; 3]]) -> Result<Self> {
        let mut h = Hypergraph3::new(n);
        for &[a, b, c] in triples {
            h.add(Triple::new(a, b, c)?)?;
        }
        Ok(h)
    }

    pub fn add(&mut self, t: Triple) -> Result<()> {
        self.add_copies(t, 1)
    }

    pub fn add_copies(&mut self, t: Triple, copies: usize) -> Result<()> {
        if t.max_vertex() >= self.n {
            return Err(Error::InvalidVertex { vertex: t.max_vertex(), n: self.n });
        }
        if copies > 0 {
            *self.triples.entry(t).or_insert(0) += copies;
            self.edges += copies;
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `e(H)`, counting multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn distinct_count(&self) -> usize {
        self.triples.len()
    }

    pub fn multiplicity(&self, t: Triple) -> usize {
        self.triples.get(&t).copied().unwrap_or(0)
    }

    /// Distinct triples with their multiplicities, lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = (Triple, usize)> + '_ {
        self.triples.iter().map(|(t, m)| (*t, *m))
    }

    pub fn distinct(&self) -> impl Iterator<Item = Triple> + '_ {
        self.triples.keys().copied()
    }

    /// Every triple, repeats adjacent.
    pub fn expanded(&self) -> impl Iterator<Item = Triple> + '_ {
        self.triples.iter().flat_map(|(t, m)| core::iter::repeat_n(*t, *m))
    }

    pub fn is_empty(&self) -> bool {
        self.edges == 0
    }

    /// Per-pair edge counts.
    pub fn pair_counts(&self) -> BTreeMap<Pair, usize> {
        let mut counts = BTreeMap::new();
        for (t, m) in self.iter() {
            for p in t.pairs() {
                *counts.entry(p).or_insert(0) += m;
            }
        }
        counts
    }

    pub fn relabel(&self, perm: &Permutation) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::PointCountMismatch { left: self.n, right: perm.len() });
        }
        let mut h = Hypergraph3::new(self.n);
        for (t, m) in self.iter() {
            h.add_copies(t.map(|v| perm.apply(v))?, m)?;
        }
        Ok(h)
    }

    /// Multiset union on the same vertex set.
    pub fn union(&self, other: &Hypergraph3) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::PointCountMismatch { left: self.n, right: other.n });
        }
        let mut h = self.clone();
        for (t, m) in other.iter() {
            h.add_copies(t, m)?;
        }
        Ok(h)
    }
}

/// A partial triple system `PTS(ν, λ)`: triples on `ν` points with every
/// pair of points in at most `λ` triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSystem {
    lambda: usize,
    graph: Hypergraph3,
}

impl TripleSystem {
    pub fn empty(nu: usize, lambda: usize) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::param("lambda must be at least 1"));
        }
        Ok(TripleSystem { lambda, graph: Hypergraph3::new(nu) })
    }

    /// Checks the pair cap.
    pub fn from_hypergraph(graph: Hypergraph3, lambda: usize) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::param("lambda must be at least 1"));
        }
        if let Some((p, _)) = graph.pair_counts().into_iter().find(|(_, c)| *c > lambda) {
            return Err(Error::PairCapExceeded { pair: (p.lo(), p.hi()), cap: lambda });
        }
        Ok(TripleSystem { lambda, graph })
    }

    pub fn from_triples(
        nu: usize,
        lambda: usize,
        triples: impl IntoIterator<Item = Triple>,
    ) -> Result<Self> {
        Self::from_hypergraph(Hypergraph3::from_triples(nu, triples)?, lambda)
    }

    pub fn nu(&self) -> usize {
        self.graph.n()
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn as_hypergraph(&self) -> &Hypergraph3 {
        &self.graph
    }

    pub fn into_hypergraph(self) -> Hypergraph3 {
        self.graph
    }

    pub fn iter(&self) -> impl Iterator<Item = (Triple, usize)> + '_ {
        self.graph.iter()
    }

    /// Same triples under a different cap; fails if the new cap is violated.
    pub fn with_lambda(self, lambda: usize) -> Result<Self> {
        Self::from_hypergraph(self.graph, lambda)
    }

    /// True when every pair is covered exactly `λ` times.
    pub fn is_complete(&self) -> bool {
        self.graph.edge_count() * 3 == self.lambda * binom2(self.nu())
    }

    pub fn relabel(&self, perm: &Permutation) -> Result<Self> {
        Ok(TripleSystem { lambda: self.lambda, graph: self.graph.relabel(perm)? })
    }
}

/// A loopless multigraph on `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: BTreeMap<Pair, usize>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { n, edges: BTreeMap::new() }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Multigraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v, 1)?;
        }
        Ok(g)
    }

    /// The cycle `0 - 1 - ... - (k-1) - 0` on `n` vertices.
    pub fn cycle(n: usize, k: usize) -> Result<Self> {
        if k < 3 || k > n {
            return Err(Error::param("a cycle needs 3 <= k <= n"));
        }
        let mut g = Multigraph::new(n);
        for i in 0..k {
            g.add_edge(i, (i + 1) % k, 1)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, mult: usize) -> Result<()> {
        let w = u.max(v);
        if w >= self.n {
            return Err(Error::InvalidVertex { vertex: w, n: self.n });
        }
        let p = Pair::new(u, v)?;
        if mult > 0 {
            *self.edges.entry(p).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> usize {
        if u == v {
            return 0;
        }
        self.edges.get(&Pair::unchecked(u, v)).copied().unwrap_or(0)
    }

    /// `e(G)`, counting multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.values().sum()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|(p, _)| p.contains(v)).map(|(_, m)| *m).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = alloc::vec![0; self.n];
        for (p, m) in &self.edges {
            d[p.lo()] += m;
            d[p.hi()] += m;
        }
        d
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pair, usize)> + '_ {
        self.edges.iter().map(|(p, m)| (*p, *m))
    }

    /// Edges of the underlying simple graph.
    pub fn support(&self) -> impl Iterator<Item = Pair> + '_ {
        self.edges.keys().copied()
    }

    pub fn is_simple(&self) -> bool {
        self.edges.values().all(|m| *m == 1)
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.edges.values().copied().max().unwrap_or(0)
    }

    pub fn relabel(&self, perm: &Permutation) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::PointCountMismatch { left: self.n, right: perm.len() });
        }
        let mut g = Multigraph::new(self.n);
        for (p, m) in self.iter() {
            g.add_edge(perm.apply(p.lo()), perm.apply(p.hi()), m)?;
        }
        Ok(g)
    }

    /// Adjacency lists of the underlying simple graph.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = alloc::vec![Vec::new(); self.n];
        for p in self.support() {
            adj[p.lo()].push(p.hi());
            adj[p.hi()].push(p.lo());
        }
        adj
    }

    /// Connected components of the support that contain at least one edge.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let adj = self.adjacency();
        let mut seen = alloc::vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] || adj[s].is_empty() {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = alloc::vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples_are_sorted_and_distinct() {
        assert_eq!(Triple::new(5, 1, 3).unwrap().vertices(), [1, 3, 5]);
        assert!(Triple::new(1, 1, 2).is_err());
        assert_eq!(Triple::new(0, 1, 2).unwrap().third(Pair::new(2, 0).unwrap()), Some(1));
    }

    #[test]
    fn hypergraph_rejects_out_of_range() {
        let mut h = Hypergraph3::new(3);
        assert_eq!(
            h.add(Triple::new(0, 1, 3).unwrap()),
            Err(Error::InvalidVertex { vertex: 3, n: 3 })
        );
        h.add_copies(Triple::new(0, 1, 2).unwrap(), 2).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.distinct_count(), 1);
        assert_eq!(h.expanded().count(), 2);
    }

    #[test]
    fn pair_cap_enforced() {
        let t = Triple::new(0, 1, 2).unwrap();
        assert!(TripleSystem::from_triples(3, 2, [t, t]).is_ok());
        assert_eq!(
            TripleSystem::from_triples(3, 1, [t, t]),
            Err(Error::PairCapExceeded { pair: (0, 1), cap: 1 })
        );
        assert!(TripleSystem::empty(3, 0).is_err());
    }

    #[test]
    fn multigraph_degrees_count_multiplicity() {
        let mut g = Multigraph::new(4);
        g.add_edge(0, 1, 2).unwrap();
        g.add_edge(1, 2, 1).unwrap();
        assert_eq!(g.degrees(), [2, 3, 1, 0]);
        assert_eq!(g.edge_count(), 3);
        assert!(g.add_edge(2, 2, 1).is_err());
        assert!(!g.is_simple());
        assert_eq!(g.components(), alloc::vec![alloc::vec![0, 1, 2]]);
    }
}
