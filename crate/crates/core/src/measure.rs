//! Exact measurements: codegree, matching numbers, leaves and link graphs.

use alloc::vec::Vec;

use crate::{blossom, packing, Error, Hypergraph3, Multigraph, Pair, Result, Triple, TripleSystem, Vertex};

/// Default node budget for [`matching_number`].
pub const DEFAULT_MATCHING_BUDGET: u64 = 100_000_000;

fn check_vertex(v: Vertex, n: usize) -> Result<()> {
    if v >= n {
        return Err(Error::InvalidVertex { vertex: v, n });
    }
    Ok(())
}

/// Number of edges (with multiplicity) containing both `u` and `v`.
pub fn codegree(h: &Hypergraph3, u: Vertex, v: Vertex) -> Result<usize> {
    check_vertex(u, h.n())?;
    check_vertex(v, h.n())?;
    let p = Pair::new(u, v)?;
    Ok(h.iter().filter(|(t, _)| t.third(p).is_some()).map(|(_, m)| m).sum())
}

/// `Δ₂(H)`: the largest codegree over all pairs, 0 when edgeless.
pub fn max_codegree(h: &Hypergraph3) -> Result<usize> {
    if h.n() < 2 {
        return Err(Error::param("max_codegree needs at least two vertices"));
    }
    Ok(h.pair_counts().into_values().max().unwrap_or(0))
}

/// `ν(H)` with the default node budget.
pub fn matching_number(h: &Hypergraph3) -> Result<usize> {
    matching_number_with_budget(h, DEFAULT_MATCHING_BUDGET)
}

pub fn matching_number_with_budget(h: &Hypergraph3, budget: u64) -> Result<usize> {
    Ok(maximum_matching(h, budget)?.len())
}

/// A maximum set of pairwise disjoint triples. Repeated triples count once.
pub fn maximum_matching(h: &Hypergraph3, budget: u64) -> Result<Vec<Triple>> {
    packing::maximum_matching(h, budget)
}

/// The leave: pair `{x, y}` appears `λ - s` times when `s` triples contain it.
pub fn leave(ts: &TripleSystem) -> Multigraph {
    let counts = ts.as_hypergraph().pair_counts();
    let nu = ts.nu();
    let mut g = Multigraph::new(nu);
    for u in 0..nu {
        for v in u + 1..nu {
            let covered = counts.get(&Pair::unchecked(u, v)).copied().unwrap_or(0);
            g.add_edge(u, v, ts.lambda() - covered).expect("in range");
        }
    }
    g
}

/// `L_H(x)`: the multigraph of pairs completing `x` to an edge.
pub fn link_graph(h: &Hypergraph3, x: Vertex) -> Result<Multigraph> {
    check_vertex(x, h.n())?;
    let mut g = Multigraph::new(h.n());
    for (t, m) in h.iter() {
        if t.contains(x) {
            let [a, b] = rest_of(t, x);
            g.add_edge(a, b, m)?;
        }
    }
    Ok(g)
}

fn rest_of(t: Triple, x: Vertex) -> [Vertex; 2] {
    let mut out = [0; 2];
    let mut k = 0;
    for v in t.vertices() {
        if v != x {
            out[k] = v;
            k += 1;
        }
    }
    out
}

/// Maximum matching size of the underlying simple graph.
pub fn graph_matching_number(g: &Multigraph) -> usize {
    blossom::matching_size(&g.adjacency())
}

/// A maximum matching of the underlying simple graph, as sorted pairs.
pub fn graph_maximum_matching(g: &Multigraph) -> Vec<Pair> {
    let mate = blossom::maximum_matching(&g.adjacency());
    mate.iter()
        .enumerate()
        .filter_map(|(v, m)| m.filter(|w| v < *w).map(|w| Pair::unchecked(v, w)))
        .collect()
}
