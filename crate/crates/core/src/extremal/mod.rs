//! Extremal 3-graphs: `n` vertices, codegree at most `Δ₂`, matching number
//! `ν`, and exactly `f(n, ν, Δ₂)` edges.
//!
//! Every edge meets the first `ν` vertices `V₀ = 0..ν`. Triples inside `V₀`
//! form an MPTS, triples with one point in `V₀` come from `ν` edge-disjoint
//! factors of the complete graph on `V₁ = ν..n`, and a few triples with two
//! points in `V₀` patch the parity defect when `(n − ν)Δ₂` is odd.

mod factors;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use factors::{check_factors, extract_factors, FactorSpec};

use crate::bounds::compute_f;
use crate::measure::{graph_maximum_matching, leave, link_graph, matching_number_with_budget, max_codegree};
use crate::measure::DEFAULT_MATCHING_BUDGET;
use crate::mpts::{construct_mpts, MptsResult};
use crate::{binom2, Error, Hypergraph3, Multigraph, Pair, Permutation, Result, Triple, TripleSystem, Vertex};

/// Smallest `n` accepted by [`construct_extremal`].
pub fn threshold(nu: usize, delta2: usize) -> usize {
    nu + (2 * nu * delta2 + 4).max(4 * delta2 + 8).max(12)
}

/// Which construction produced an [`Extremal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtremalCase {
    /// `(n − ν)Δ₂` even: regular factors, no two-point triples.
    Case1,
    /// ν even and the MPTS leave has a perfect matching.
    Subcase21Matching,
    /// ν even and the MPTS leave is a star plus a matching.
    Subcase21Star,
    /// ν odd.
    Subcase22,
}

impl ExtremalCase {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtremalCase::Case1 => "case1",
            ExtremalCase::Subcase21Matching => "subcase2.1-matching",
            ExtremalCase::Subcase21Star => "subcase2.1-star",
            ExtremalCase::Subcase22 => "subcase2.2",
        }
    }

    pub fn is_case1(self) -> bool {
        self == ExtremalCase::Case1
    }
}

impl fmt::Display for ExtremalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Edges of a 3-graph sorted by how many points they have in `V₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalPartition {
    pub v0: Vec<Vertex>,
    pub v1: Vec<Vertex>,
    pub e1: Vec<Triple>,
    pub e2: Vec<Triple>,
    pub e3: Vec<Triple>,
    pub eps1: usize,
    pub eps2: usize,
    pub eps3: usize,
    /// Edges missing `V₀` entirely.
    pub overflow: Vec<Triple>,
    /// No overflow and `V₀` is a set of vertices of the graph.
    pub valid: bool,
}

/// Pass/fail report for a claimed extremal 3-graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub edge_count: usize,
    pub bound: usize,
    pub max_codegree: usize,
    pub codegree_cap: usize,
    pub matching_number: usize,
    pub matching_cap: usize,
    pub passed: bool,
    pub notes: String,
}

impl Certificate {
    pub fn new(
        edge_count: usize,
        bound: usize,
        max_codegree: usize,
        codegree_cap: usize,
        matching_number: usize,
        matching_cap: usize,
        notes: String,
    ) -> Self {
        let passed = edge_count == bound && max_codegree <= codegree_cap && matching_number <= matching_cap;
        Certificate { edge_count, bound, max_codegree, codegree_cap, matching_number, matching_cap, passed, notes }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremal {
    pub hypergraph: Hypergraph3,
    pub partition: ExtremalPartition,
    pub case: ExtremalCase,
    /// Factor `i` on local labels `0..n − ν`; vertex `j` is `ν + j` in `H`.
    pub factors: Vec<Multigraph>,
    /// The triple system on `V₀`, after relabelling.
    pub inner: MptsResult,
    pub certificate: Certificate,
}

/// Builds the extremal 3-graph for `n ≥ threshold(ν, Δ₂)`.
pub fn construct_extremal(n: usize, nu: usize, delta2: usize, seed: u64) -> Result<Extremal> {
    let n0 = threshold(nu, delta2);
    if n < n0 {
        return Err(Error::param(format!("n = {n} is below the construction threshold n0 = {n0}")));
    }
    construct_extremal_unchecked(n, nu, delta2, seed)
}

/// Like [`construct_extremal`] without the threshold check. Below the
/// threshold the factor search may fail with [`Error::NoFactor`]; any
/// output is still fully verified.
pub fn construct_extremal_unchecked(n: usize, nu: usize, delta2: usize, seed: u64) -> Result<Extremal> {
    if nu == 0 || delta2 == 0 {
        return Err(Error::param("nu and delta2 must be positive"));
    }
    if n <= nu + delta2 {
        return Err(Error::param(format!("n = {n} leaves no room for degree-{delta2} factors")));
    }
    let m = n - nu;
    let (case, inner, spec, e2_pairs) = if (m * delta2) % 2 == 0 {
        (ExtremalCase::Case1, construct_mpts(nu, delta2, 0, seed)?, FactorSpec::regular(m, nu, delta2), Vec::new())
    } else if nu % 2 == 0 {
        subcase_even(m, nu, delta2, seed)?
    } else {
        let inner = construct_mpts(nu, delta2, nu / 2, seed)?;
        let pairs = graph_maximum_matching(&inner.leave_graph);
        let inner = align(inner, &pairs_first(nu, &pairs)?)?;
        let e2 = (0..nu / 2).map(|i| (2 * i, 2 * i + 1, i)).collect();
        (ExtremalCase::Subcase22, inner, FactorSpec::paired(m, nu, delta2), e2)
    };

    let factors = extract_factors(&spec, seed)?;
    let mut h = Hypergraph3::new(n);
    for (t, mult) in inner.system.iter() {
        h.add_copies(t, mult)?;
    }
    for &(a, b, y) in &e2_pairs {
        h.add(Triple::new(a, b, nu + y)?)?;
    }
    for (i, g) in factors.iter().enumerate() {
        for p in g.support() {
            h.add(Triple::new(i, nu + p.lo(), nu + p.hi())?)?;
        }
    }

    let certificate = verify_extremal(&h, nu, delta2)?;
    if !certificate.passed || certificate.matching_number != nu {
        return Err(Error::verify(format!("extremal construction failed its certificate: {}", certificate.notes)));
    }
    let v0: Vec<Vertex> = (0..nu).collect();
    let partition = partition_diagnostics(&h, &v0, delta2).partition;
    Ok(Extremal { hypergraph: h, partition, case, factors, inner, certificate })
}

type Plan = (ExtremalCase, MptsResult, FactorSpec, Vec<(Vertex, Vertex, Vertex)>);

/// ν even, `(n − ν)Δ₂` odd: pick the two-point triples from the shape of
/// the MPTS leave.
fn subcase_even(m: usize, nu: usize, delta2: usize, seed: u64) -> Result<Plan> {
    let inner = construct_mpts(nu, delta2, 0, seed)?;
    let l = &inner.leave_graph;
    let matching = graph_maximum_matching(l);
    if matching.len() == nu / 2 {
        let inner = align(inner.clone(), &pairs_first(nu, &matching)?)?;
        let e2 = (0..nu / 2).map(|i| (2 * i, 2 * i + 1, i)).collect();
        return Ok((ExtremalCase::Subcase21Matching, inner, FactorSpec::paired(m, nu, delta2), e2));
    }
    if let Some(perm) = star_layout(l) {
        let inner = align(inner.clone(), &perm)?;
        let mut e2: Vec<(Vertex, Vertex, Vertex)> = (0..nu / 2 - 2).map(|i| (2 * i, 2 * i + 1, i)).collect();
        for t in 1..=3 {
            e2.push((nu - 1 - t, nu - 1, t - 1));
        }
        return Ok((ExtremalCase::Subcase21Star, inner, FactorSpec::star(m, nu, delta2), e2));
    }
    // Neither shape: fall back to a leave with a perfect matching, which is
    // only acceptable if it costs no triples.
    let alt = construct_mpts(nu, delta2, nu / 2, seed)?;
    if alt.system.edge_count() != inner.system.edge_count() {
        return Err(Error::verify("MPTS leave has neither a perfect matching nor the star shape"));
    }
    let pairs = graph_maximum_matching(&alt.leave_graph);
    let alt = align(alt, &pairs_first(nu, &pairs)?)?;
    let e2 = (0..nu / 2).map(|i| (2 * i, 2 * i + 1, i)).collect();
    Ok((ExtremalCase::Subcase21Matching, alt, FactorSpec::paired(m, nu, delta2), e2))
}

/// For a simple leave `K_{1,3}` plus a matching: matching edges onto
/// `{2i, 2i + 1}`, star leaves onto `ν − 4, ν − 3, ν − 2`, centre `ν − 1`.
fn star_layout(l: &Multigraph) -> Option<Permutation> {
    let nu = l.n();
    if nu < 4 || !l.is_simple() {
        return None;
    }
    let degs = l.degrees();
    let centres: Vec<Vertex> = (0..nu).filter(|v| degs[*v] == 3).collect();
    if centres.len() != 1 || degs.iter().filter(|d| **d == 1).count() != nu - 1 {
        return None;
    }
    let c = centres[0];
    let mut fixed = Vec::new();
    let mut leaf = nu - 4;
    let mut pair = 0;
    for p in l.support() {
        if p.contains(c) {
            let other = if p.lo() == c { p.hi() } else { p.lo() };
            fixed.push((other, leaf));
            leaf += 1;
        } else {
            fixed.push((p.lo(), 2 * pair));
            fixed.push((p.hi(), 2 * pair + 1));
            pair += 1;
        }
    }
    fixed.push((c, nu - 1));
    Permutation::extending(nu, &fixed).ok()
}

fn pairs_first(nu: usize, pairs: &[Pair]) -> Result<Permutation> {
    let fixed: Vec<(Vertex, Vertex)> =
        pairs.iter().enumerate().flat_map(|(i, p)| [(p.lo(), 2 * i), (p.hi(), 2 * i + 1)]).collect();
    Permutation::extending(nu, &fixed)
}

fn align(r: MptsResult, perm: &Permutation) -> Result<MptsResult> {
    let system: TripleSystem = r.system.relabel(perm)?;
    Ok(MptsResult { leave_graph: leave(&system), system, case_tag: r.case_tag })
}

/// Measures `h` exactly against `f(n, ν, Δ₂)`.
pub fn verify_extremal(h: &Hypergraph3, nu: usize, delta2: usize) -> Result<Certificate> {
    verify_extremal_with_budget(h, nu, delta2, DEFAULT_MATCHING_BUDGET)
}

pub fn verify_extremal_with_budget(h: &Hypergraph3, nu: usize, delta2: usize, budget: u64) -> Result<Certificate> {
    let bound = compute_f(h.n(), nu, delta2)?;
    let codeg = max_codegree(h)?;
    let matching = matching_number_with_budget(h, budget)?;
    let mut notes = Vec::new();
    if h.edge_count() != bound {
        notes.push(format!("edge count {} differs from f = {bound}", h.edge_count()));
    }
    if codeg > delta2 {
        notes.push(format!("codegree {codeg} exceeds {delta2}"));
    }
    if matching > nu {
        notes.push(format!("matching number {matching} exceeds {nu}"));
    }
    Ok(Certificate::new(h.edge_count(), bound, codeg, delta2, matching, nu, notes.join("; ")))
}

/// The partition together with the counting quantities of the upper-bound
/// argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionDiagnostics {
    pub partition: ExtremalPartition,
    /// Pairs `e ∩ V₀` over `e ∈ E₂`, as a multigraph on all `n` vertices.
    pub pair_graph: Multigraph,
    /// `d_i`: degree of `v0[i]` in `pair_graph`.
    pub d: Vec<usize>,
    /// Number of odd `d_i`.
    pub p: usize,
    /// Number of even `d_i`.
    pub q: usize,
    /// `L_i`: pairs `e ∩ V₁` over `e ∈ E₁` through `v0[i]`.
    pub links: Vec<Multigraph>,
    /// `C(ν,2)·Δ₂ − 3ε₃ − ε₂`.
    pub slack_inner: i64,
    /// `ν(n − ν)Δ₂ − 2ε₂ − 2ε₁`.
    pub slack_outer: i64,
    /// `⌊((n − ν)Δ₂ − d_i)/2⌋ − e(L_i)` per `i`.
    pub slack_links: Vec<i64>,
}

impl PartitionDiagnostics {
    /// All three inequalities hold and the partition is valid.
    pub fn holds(&self) -> bool {
        self.partition.valid && self.slack_inner >= 0 && self.slack_outer >= 0 && self.slack_links.iter().all(|s| *s >= 0)
    }
}

/// Splits the edges of `h` by their intersection with `v0` and evaluates
/// the counting inequalities for codegree cap `delta2`. Never fails; a bad
/// `v0` or an edge missing it marks the partition invalid.
pub fn partition_diagnostics(h: &Hypergraph3, v0: &[Vertex], delta2: usize) -> PartitionDiagnostics {
    let n = h.n();
    let mut in_v0 = alloc::vec![false; n];
    let mut valid = true;
    for &v in v0 {
        match in_v0.get_mut(v) {
            Some(slot) if !*slot => *slot = true,
            _ => valid = false,
        }
    }
    let v0: Vec<Vertex> = (0..n).filter(|v| in_v0[*v]).collect();
    let v1: Vec<Vertex> = (0..n).filter(|v| !in_v0[*v]).collect();
    let nu = v0.len();
    let mut classes: [Vec<Triple>; 4] = Default::default();
    for t in h.expanded() {
        let k = t.vertices().iter().filter(|v| in_v0[**v]).count();
        classes[k].push(t);
    }
    let [overflow, e1, e2, e3] = classes;
    valid &= overflow.is_empty();

    let mut pair_graph = Multigraph::new(n);
    for t in &e2 {
        let [a, b] = two_in(t, &in_v0);
        pair_graph.add_edge(a, b, 1).expect("in range");
    }
    let d: Vec<usize> = v0.iter().map(|v| pair_graph.degree(*v)).collect();
    let p = d.iter().filter(|x| *x % 2 == 1).count();
    let e1_graph = Hypergraph3::from_triples(n, e1.iter().copied()).expect("in range");
    let links: Vec<Multigraph> = v0.iter().map(|&v| link_graph(&e1_graph, v).expect("in range")).collect();

    let m = (n - nu) as i64;
    let (eps1, eps2, eps3) = (e1.len() as i64, e2.len() as i64, e3.len() as i64);
    let cap = delta2 as i64;
    let slack_links =
        links.iter().zip(&d).map(|(l, &di)| (m * cap - di as i64).div_euclid(2) - l.edge_count() as i64).collect();
    PartitionDiagnostics {
        slack_inner: binom2(nu) as i64 * cap - 3 * eps3 - eps2,
        slack_outer: nu as i64 * m * cap - 2 * eps2 - 2 * eps1,
        slack_links,
        partition: ExtremalPartition {
            eps1: e1.len(),
            eps2: e2.len(),
            eps3: e3.len(),
            v0,
            v1,
            e1,
            e2,
            e3,
            overflow,
            valid,
        },
        pair_graph,
        p,
        q: nu - p,
        d,
        links,
    }
}

fn two_in(t: &Triple, in_v0: &[bool]) -> [Vertex; 2] {
    let mut out = [0; 2];
    let mut k = 0;
    for v in t.vertices() {
        if in_v0[v] {
            out[k] = v;
            k += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::compute_g;
    use crate::measure::matching_number;

    #[test]
    fn threshold_values() {
        assert_eq!(threshold(2, 1), 14);
        assert_eq!(threshold(3, 1), 15);
        assert_eq!(threshold(4, 3), 32);
    }

    #[test]
    fn extremal_examples() {
        let x = construct_extremal(20, 2, 1, 0).unwrap();
        assert_eq!(x.hypergraph.edge_count(), 18);
        assert!(x.certificate.passed);

        let x = construct_extremal(21, 3, 1, 0).unwrap();
        assert_eq!(x.hypergraph.edge_count(), 28);
        assert_eq!(x.case, ExtremalCase::Case1);

        let x = construct_extremal(20, 3, 1, 0).unwrap();
        assert_eq!(x.hypergraph.edge_count(), 25);
        assert_eq!(x.case, ExtremalCase::Subcase22);
        assert_eq!(x.partition.eps2, 1);
        assert_eq!(matching_number(&x.hypergraph).unwrap(), 3);
    }

    #[test]
    fn below_threshold() {
        let err = construct_extremal(24, 4, 3, 0).unwrap_err();
        assert!(err.is_parameter_error());
        assert!(format!("{err}").contains("n0 = 32"));
        let x = construct_extremal_unchecked(24, 4, 3, 0).unwrap();
        assert_eq!(x.hypergraph.edge_count(), 120 + compute_g(4, 3, 0).unwrap());
        assert_eq!(x.case, ExtremalCase::Case1);
    }

    #[test]
    fn verify_examples() {
        let x = construct_extremal(20, 2, 1, 0).unwrap();
        assert!(verify_extremal(&x.hypergraph, 2, 1).unwrap().passed);

        let fano = Hypergraph3::from_arrays(
            7,
            &[[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]],
        )
        .unwrap();
        let c = verify_extremal(&fano, 1, 1).unwrap();
        assert_eq!((c.edge_count, c.bound), (7, 3));
        assert!(!c.passed);

        let c = verify_extremal(&Hypergraph3::new(10), 1, 1).unwrap();
        assert!(!c.passed);
    }

    #[test]
    fn partition_examples() {
        let x = construct_extremal(20, 3, 1, 0).unwrap();
        let diag = partition_diagnostics(&x.hypergraph, &[0, 1, 2], 1);
        assert_eq!(diag.partition.eps1 + diag.partition.eps2, 25);
        assert_eq!(diag.partition.eps3, compute_g(3, 1, 1).unwrap());
        assert!(diag.holds());

        let h = Hypergraph3::from_arrays(6, &[[0, 1, 2], [3, 4, 5]]).unwrap();
        let diag = partition_diagnostics(&h, &[0], 1);
        assert!(!diag.partition.valid);
        assert_eq!(diag.partition.overflow.len(), 1);

        let x = construct_extremal(21, 3, 1, 0).unwrap();
        assert_eq!(partition_diagnostics(&x.hypergraph, &[0, 1, 2], 1).partition.eps2, 0);
    }

    #[test]
    fn links_are_the_factors() {
        let x = construct_extremal(23, 2, 3, 1).unwrap();
        let diag = partition_diagnostics(&x.hypergraph, &[0, 1], 3);
        for (i, g) in x.factors.iter().enumerate() {
            let lifted: Vec<Pair> = g.support().map(|p| Pair::new(p.lo() + 2, p.hi() + 2).unwrap()).collect();
            assert_eq!(diag.links[i].support().collect::<Vec<_>>(), lifted);
        }
    }

    #[test]
    fn star_case_is_used() {
        // ν = 4 with Δ₂ = 1: the MPTS leave is a star plus a matching.
        let n = threshold(4, 1) + 1;
        let x = construct_extremal(n, 4, 1, 0).unwrap();
        assert_eq!(x.case, ExtremalCase::Subcase21Star);
        assert_eq!(x.partition.eps2, 3);
    }
}
