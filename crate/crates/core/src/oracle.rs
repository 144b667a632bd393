//! Exhaustive maximisers for tiny instances, used as ground truth for the
//! closed forms and constructions elsewhere in the crate.
//!
//! Both searches walk the triples on `0..N` in a fixed order and choose a
//! multiplicity for each, largest first. Nonempty solutions are split into
//! four root branches by how a second triple sits against `{0,1,2}`, which
//! is a valid normalisation because relabelling preserves every objective
//! and constraint involved. Branches share nothing, so they can run on
//! separate workers and [`reduce`] gives the same answer in any order.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::time::Duration;

use crate::measure::{graph_matching_number, matching_number};
use crate::{Error, Hypergraph3, Multigraph, Permutation, Result, Triple, TripleSystem};

/// Default node budget per root branch.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    /// Most triples with pair multiplicity ≤ λ whose leave has `s`
    /// independent edges.
    Mpts { nu: usize, lambda: usize, s: usize },
    /// Most edges on `n` vertices with codegree ≤ Δ₂ and matching number ≤ ν.
    Extremal { n: usize, nu: usize, delta2: usize },
}

impl Problem {
    fn points(self) -> usize {
        match self {
            Problem::Mpts { nu, .. } => nu,
            Problem::Extremal { n, .. } => n,
        }
    }

    fn cap(self) -> usize {
        match self {
            Problem::Mpts { lambda, .. } => lambda,
            Problem::Extremal { delta2, .. } => delta2,
        }
    }

    /// Checks parameters and the soft size limits (ν ≤ 8 and λ ≤ 3 for
    /// MPTS, n ≤ 9 for extremal) unless `force` is set.
    pub fn validate(self, force: bool) -> Result<()> {
        match self {
            Problem::Mpts { nu, lambda, s } => {
                if lambda == 0 {
                    return Err(Error::param("lambda must be at least 1"));
                }
                if s > nu / 2 {
                    return Err(Error::param(format!("s = {s} exceeds floor(nu/2) = {}", nu / 2)));
                }
                if !force && (nu > 8 || lambda > 3) {
                    return Err(Error::param("oracle limits are nu <= 8 and lambda <= 3 (override with force)"));
                }
            }
            Problem::Extremal { n, delta2, .. } => {
                if delta2 == 0 {
                    return Err(Error::param("delta2 must be at least 1"));
                }
                if !force && n > 9 {
                    return Err(Error::param("oracle limit is n <= 9 (override with force)"));
                }
            }
        }
        Ok(())
    }
}

/// A normalised slice of the search space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootBranch {
    /// No triples at all.
    Empty,
    /// Copies of `{0,1,2}` and nothing else.
    OnlyFirst,
    /// `{0,1,2}` and `{0,1,3}` both present.
    SharePair,
    /// `{0,1,2}` and `{0,3,4}`; nothing else meets `{0,1,2}` in two points.
    SharePoint,
    /// `{0,1,2}` and `{3,4,5}`; everything else avoids `{0,1,2}`.
    Disjoint,
}

/// The branches that can be nonempty on `n` points.
pub fn root_branches(n: usize) -> Vec<RootBranch> {
    let mut out = alloc::vec![RootBranch::Empty];
    if n >= 3 {
        out.push(RootBranch::OnlyFirst);
    }
    if n >= 4 {
        out.push(RootBranch::SharePair);
    }
    if n >= 5 {
        out.push(RootBranch::SharePoint);
    }
    if n >= 6 {
        out.push(RootBranch::Disjoint);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub budget: u64,
    pub force: bool,
    /// Visit triples in the lexicographic order of their images under this
    /// permutation. Only the visiting order changes; results must not.
    pub order: Option<Permutation>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { budget: DEFAULT_BUDGET, force: false, order: None }
    }
}

/// Outcome of one root branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchResult {
    pub branch: RootBranch,
    /// Best value found with its triples (sorted, with repetition).
    pub best: Option<(usize, Vec<Triple>)>,
    pub nodes: u64,
    pub exhausted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    System(TripleSystem),
    Hypergraph(Hypergraph3),
}

impl Witness {
    pub fn hypergraph(&self) -> &Hypergraph3 {
        match self {
            Witness::System(ts) => ts.as_hypergraph(),
            Witness::Hypergraph(h) => h,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub optimum: usize,
    pub witness: Witness,
    pub nodes: u64,
    /// Wall time; zero unless the caller timed the search.
    pub elapsed: Duration,
    /// Every branch was searched to completion, so `optimum` is certified.
    pub exhausted: bool,
}

/// `max g` over PTS(ν, λ) with leave matching ≥ s, searched sequentially.
pub fn oracle_mpts(nu: usize, lambda: usize, s: usize, cfg: &OracleConfig) -> Result<SearchReport> {
    run(Problem::Mpts { nu, lambda, s }, cfg)
}

/// `max e(H)` over 3-graphs on `n` vertices with `Δ₂(H) ≤ Δ₂`, `ν(H) ≤ ν`.
pub fn oracle_extremal(n: usize, nu: usize, delta2: usize, cfg: &OracleConfig) -> Result<SearchReport> {
    run(Problem::Extremal { n, nu, delta2 }, cfg)
}

fn run(problem: Problem, cfg: &OracleConfig) -> Result<SearchReport> {
    problem.validate(cfg.force)?;
    let results: Vec<BranchResult> = root_branches(problem.points())
        .into_iter()
        .map(|b| search_branch(problem, b, cfg))
        .collect::<Result<_>>()?;
    reduce(problem, results)
}

/// Combines branch results: the maximum, ties going to the lexicographically
/// least witness. Independent of the order of `results`.
pub fn reduce(problem: Problem, results: Vec<BranchResult>) -> Result<SearchReport> {
    let mut nodes = 0;
    let mut exhausted = true;
    let mut best: Option<(usize, Vec<Triple>)> = None;
    for r in results {
        nodes += r.nodes;
        exhausted &= r.exhausted;
        if let Some(cand) = r.best {
            let better = match &best {
                None => true,
                Some(cur) => match cand.0.cmp(&cur.0) {
                    Ordering::Greater => true,
                    Ordering::Equal => cand.1 < cur.1,
                    Ordering::Less => false,
                },
            };
            if better {
                best = Some(cand);
            }
        }
    }
    let (optimum, triples) = best.ok_or_else(|| Error::verify("no branch produced a feasible solution"))?;
    let n = problem.points();
    let witness = match problem {
        Problem::Mpts { lambda, .. } => Witness::System(TripleSystem::from_triples(n, lambda, triples)?),
        Problem::Extremal { .. } => Witness::Hypergraph(Hypergraph3::from_triples(n, triples)?),
    };
    Ok(SearchReport { optimum, witness, nodes, elapsed: Duration::ZERO, exhausted })
}

/// Exhaustive search of one root branch.
pub fn search_branch(problem: Problem, branch: RootBranch, cfg: &OracleConfig) -> Result<BranchResult> {
    problem.validate(cfg.force)?;
    let n = problem.points();
    if let Some(p) = &cfg.order {
        if p.len() != n {
            return Err(Error::PointCountMismatch { left: n, right: p.len() });
        }
    }
    let mut triples = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                triples.push(Triple::unchecked(a, b, c));
            }
        }
    }
    if let Some(p) = &cfg.order {
        triples.sort_by_key(|t| t.map(|v| p.apply(v)).expect("bijection"));
    }
    let (min, max_allowed) = branch_limits(branch, &triples, problem.cap());
    let mut s = Search {
        problem,
        n,
        triples,
        min,
        max_allowed,
        cap: alloc::vec![problem.cap(); n * n],
        mult: Vec::new(),
        current: 0,
        forced_left: 0,
        best: None,
        nodes: 0,
        budget: cfg.budget,
        aborted: false,
    };
    s.mult = alloc::vec![0; s.triples.len()];
    s.forced_left = s.min.iter().filter(|m| **m > 0).count();
    s.dfs(0);
    Ok(BranchResult { branch, best: s.best, nodes: s.nodes, exhausted: !s.aborted })
}

fn meet(t: Triple, base: Triple) -> usize {
    t.vertices().iter().filter(|v| base.contains(**v)).count()
}

/// Per-triple multiplicity bounds `(min, max)` for a branch.
fn branch_limits(branch: RootBranch, triples: &[Triple], cap: usize) -> (Vec<usize>, Vec<usize>) {
    let first = Triple::unchecked(0, 1, 2);
    let mut min = alloc::vec![0; triples.len()];
    let mut max = alloc::vec![cap; triples.len()];
    let force = |min: &mut Vec<usize>, t: Triple| {
        let i = triples.iter().position(|x| *x == t).expect("triple exists");
        min[i] = 1;
    };
    match branch {
        RootBranch::Empty => max.iter_mut().for_each(|m| *m = 0),
        RootBranch::OnlyFirst => {
            for (i, t) in triples.iter().enumerate() {
                if *t != first {
                    max[i] = 0;
                }
            }
            force(&mut min, first);
        }
        RootBranch::SharePair => {
            force(&mut min, first);
            force(&mut min, Triple::unchecked(0, 1, 3));
        }
        RootBranch::SharePoint => {
            for (i, t) in triples.iter().enumerate() {
                if meet(*t, first) == 2 {
                    max[i] = 0;
                }
            }
            force(&mut min, first);
            force(&mut min, Triple::unchecked(0, 3, 4));
        }
        RootBranch::Disjoint => {
            for (i, t) in triples.iter().enumerate() {
                if matches!(meet(*t, first), 1 | 2) {
                    max[i] = 0;
                }
            }
            force(&mut min, first);
            force(&mut min, Triple::unchecked(3, 4, 5));
        }
    }
    (min, max)
}

struct Search {
    problem: Problem,
    n: usize,
    triples: Vec<Triple>,
    min: Vec<usize>,
    max_allowed: Vec<usize>,
    /// Remaining capacity per ordered pair (kept symmetric).
    cap: Vec<usize>,
    mult: Vec<usize>,
    current: usize,
    forced_left: usize,
    best: Option<(usize, Vec<Triple>)>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Search {
    fn dfs(&mut self, i: usize) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if self.forced_left == 0 && self.best.as_ref().is_none_or(|b| self.current > b.0) {
            self.try_record();
        }
        if i == self.triples.len() {
            return;
        }
        if let Some((b, _)) = &self.best {
            if self.current + self.upper_bound() <= *b {
                return;
            }
        }
        let t = self.triples[i];
        let [p, q, r] = t.pairs().map(|p| p.lo() * self.n + p.hi());
        let room = self.cap[p].min(self.cap[q]).min(self.cap[r]).min(self.max_allowed[i]);
        if room < self.min[i] {
            return;
        }
        for c in (self.min[i]..=room).rev() {
            self.apply(i, c, true);
            if c == 0 || self.feasible_after(i) {
                self.dfs(i + 1);
            }
            self.apply(i, c, false);
            if self.aborted {
                return;
            }
        }
    }

    fn apply(&mut self, i: usize, c: usize, add: bool) {
        let t = self.triples[i];
        for p in t.pairs() {
            let (a, b) = (p.lo(), p.hi());
            for k in [a * self.n + b, b * self.n + a] {
                if add {
                    self.cap[k] -= c;
                } else {
                    self.cap[k] += c;
                }
            }
        }
        if add {
            self.mult[i] = c;
            self.current += c;
        } else {
            self.mult[i] = 0;
            self.current -= c;
        }
        if self.min[i] > 0 {
            if add {
                self.forced_left -= 1;
            } else {
                self.forced_left += 1;
            }
        }
    }

    fn leave(&self) -> Multigraph {
        let mut g = Multigraph::new(self.n);
        for a in 0..self.n {
            for b in a + 1..self.n {
                g.add_edge(a, b, self.cap[a * self.n + b]).expect("in range");
            }
        }
        g
    }

    /// Monotone constraint check after raising triple `i`.
    fn feasible_after(&self, i: usize) -> bool {
        match self.problem {
            Problem::Mpts { s, .. } => s == 0 || graph_matching_number(&self.leave()) >= s,
            Problem::Extremal { nu, .. } => {
                // Greedy disjoint triples over the support so far; sound
                // because any ν + 1 disjoint edges violate the constraint.
                let mut used = alloc::vec![false; self.n];
                let mut count = 0;
                for (t, _) in self.triples[..=i].iter().zip(&self.mult).filter(|(_, m)| **m > 0) {
                    if t.vertices().iter().all(|v| !used[*v]) {
                        t.vertices().iter().for_each(|v| used[*v] = true);
                        count += 1;
                    }
                }
                count <= nu
            }
        }
    }

    fn chosen(&self) -> Vec<Triple> {
        let mut out: Vec<Triple> = Vec::with_capacity(self.current);
        for (t, &m) in self.triples.iter().zip(&self.mult) {
            for _ in 0..m {
                out.push(*t);
            }
        }
        out.sort_unstable();
        out
    }

    fn try_record(&mut self) {
        let chosen = self.chosen();
        let ok = match self.problem {
            Problem::Mpts { s, .. } => graph_matching_number(&self.leave()) >= s,
            Problem::Extremal { nu, .. } => {
                let h = Hypergraph3::from_triples(self.n, chosen.iter().copied()).expect("in range");
                matching_number(&h).is_ok_and(|m| m <= nu)
            }
        };
        if ok {
            self.best = Some((self.current, chosen));
        }
    }

    /// Each further triple uses two units of pair capacity at each of its
    /// points; for MPTS the final leave also keeps at least `s` edges.
    fn upper_bound(&self) -> usize {
        let mut half_degrees = 0;
        let mut total = 0;
        for v in 0..self.n {
            let d: usize = (0..self.n).filter(|u| *u != v).map(|u| self.cap[v * self.n + u]).sum();
            half_degrees += d / 2;
            total += d;
        }
        let mut bound = half_degrees / 3;
        if let Problem::Mpts { s, .. } = self.problem {
            bound = bound.min((total / 2).saturating_sub(s) / 3);
        }
        bound
    }
}

/// Number of `k`-sets of pairwise disjoint distinct triples of `h`, by
/// direct subset enumeration.
pub fn enumerate_matchings(h: &Hypergraph3, k: usize) -> Result<u64> {
    let triples: Vec<Triple> = h.distinct().collect();
    if triples.len() > 20 {
        return Err(Error::param(format!("{} distinct triples exceeds the limit of 20", triples.len())));
    }
    let masks: Vec<u64> = triples.iter().map(|t| t.vertices().iter().fold(0u64, |m, v| m | 1 << (*v % 64))).collect();
    if h.n() > 64 {
        return Err(Error::param("enumeration supports at most 64 vertices"));
    }
    let mut count = 0;
    for subset in 0u32..1 << triples.len() {
        if subset.count_ones() as usize != k {
            continue;
        }
        let mut seen = 0u64;
        let mut ok = true;
        for (i, m) in masks.iter().enumerate() {
            if subset >> i & 1 == 1 {
                if seen & m != 0 {
                    ok = false;
                    break;
                }
                seen |= m;
            }
        }
        count += ok as u64;
    }
    Ok(count)
}

/// Largest `k` with a `k`-matching, from [`enumerate_matchings`].
pub fn matching_number_by_enumeration(h: &Hypergraph3) -> Result<usize> {
    let mut k = 0;
    while k < h.n() / 3 && enumerate_matchings(h, k + 1)? > 0 {
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::compute_g;

    fn opt_mpts(nu: usize, lambda: usize, s: usize) -> usize {
        let r = oracle_mpts(nu, lambda, s, &OracleConfig::default()).unwrap();
        assert!(r.exhausted);
        r.optimum
    }

    #[test]
    fn mpts_examples() {
        assert_eq!(opt_mpts(4, 1, 2), 0);
        assert_eq!(opt_mpts(4, 1, 1), 1);
        assert_eq!(opt_mpts(6, 1, 0), 4);
        assert_eq!(opt_mpts(3, 2, 0), 2);
        assert_eq!(opt_mpts(5, 1, 0), 2);
    }

    #[test]
    fn mpts_small_grid_matches_g() {
        for (nu, lambda) in [(3, 1), (4, 1), (5, 1), (6, 1), (3, 2), (4, 2), (3, 3)] {
            for s in 0..=nu / 2 {
                assert_eq!(opt_mpts(nu, lambda, s), compute_g(nu, lambda, s).unwrap(), "({nu},{lambda},{s})");
            }
        }
    }

    #[test]
    fn extremal_examples() {
        let r = oracle_extremal(4, 1, 1, &OracleConfig::default()).unwrap();
        assert_eq!(r.optimum, 1);
        let r = oracle_extremal(7, 1, 1, &OracleConfig::default()).unwrap();
        assert_eq!(r.optimum, 7);
        assert!(r.exhausted);
        let h = r.witness.hypergraph();
        assert_eq!(crate::measure::max_codegree(h).unwrap(), 1);
        assert_eq!(matching_number(h).unwrap(), 1);
    }

    #[test]
    fn order_does_not_change_results() {
        let pi = Permutation::new(alloc::vec![4, 2, 5, 0, 1, 3]).unwrap();
        let cfg = OracleConfig { order: Some(pi), ..OracleConfig::default() };
        for s in 0..=3 {
            let a = oracle_mpts(6, 1, s, &OracleConfig::default()).unwrap();
            let b = oracle_mpts(6, 1, s, &cfg).unwrap();
            assert_eq!(a.optimum, b.optimum);
        }
    }

    #[test]
    fn reduce_is_order_independent() {
        let p = Problem::Mpts { nu: 5, lambda: 1, s: 1 };
        let mut rs: Vec<BranchResult> = root_branches(5)
            .into_iter()
            .map(|b| search_branch(p, b, &OracleConfig::default()).unwrap())
            .collect();
        let a = reduce(p, rs.clone()).unwrap();
        rs.reverse();
        assert_eq!(a, reduce(p, rs).unwrap());
    }

    #[test]
    fn budget_marks_report_uncertified() {
        let cfg = OracleConfig { budget: 5, ..OracleConfig::default() };
        let r = oracle_mpts(6, 1, 0, &cfg).unwrap();
        assert!(!r.exhausted);
    }

    #[test]
    fn soft_limits() {
        assert!(oracle_mpts(9, 1, 0, &OracleConfig::default()).is_err());
        assert!(oracle_mpts(4, 4, 0, &OracleConfig::default()).is_err());
        assert!(oracle_extremal(10, 1, 1, &OracleConfig::default()).is_err());
        let forced = OracleConfig { force: true, ..OracleConfig::default() };
        assert_eq!(oracle_mpts(3, 4, 0, &forced).unwrap().optimum, 4);
    }

    #[test]
    fn enumeration_examples() {
        let fano = Hypergraph3::from_arrays(
            7,
            &[[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]],
        )
        .unwrap();
        assert_eq!(enumerate_matchings(&fano, 2).unwrap(), 0);
        let two = Hypergraph3::from_arrays(6, &[[0, 1, 2], [3, 4, 5]]).unwrap();
        assert_eq!(enumerate_matchings(&two, 2).unwrap(), 1);
        assert_eq!(enumerate_matchings(&Hypergraph3::new(5), 0).unwrap(), 1);
    }
}
