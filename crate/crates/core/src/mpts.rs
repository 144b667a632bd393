//! Maximum partial triple systems `MPTS(ν, λ, s)`: the largest `PTS(ν, λ)`
//! whose leave still contains `s` independent edges.
//!
//! For `1 ≤ λ ≤ gcd(ν − 2, 6)` the construction is chosen from the residue
//! of ν mod 6 and λ. Larger λ is reduced to that range by adding a full
//! `TS(ν, λ − 1 − t)`, which leaves the leave untouched.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::bounds::{compute_g, lambda_period, leave_profile};
use crate::designs::{complete_from, complete_to_leave, construct_sts, construct_ts, pbd35_unchecked, HillClimb};
use crate::measure::{graph_matching_number, leave};
use crate::{binom2, Error, Hypergraph3, Multigraph, Pair, Permutation, Result, Triple, TripleSystem, Vertex};

/// The construction that produced an [`MptsResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
    /// A full `TS` added to a smaller-λ system.
    Case2,
    /// ν ≤ 2, where no triple fits.
    Small,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::I => "I",
            CaseTag::II => "II",
            CaseTag::III => "III",
            CaseTag::IV => "IV",
            CaseTag::V => "V",
            CaseTag::VI => "VI",
            CaseTag::VII => "VII",
            CaseTag::VIII => "VIII",
            CaseTag::IX => "IX",
            CaseTag::X => "X",
            CaseTag::XI => "XI",
            CaseTag::Case2 => "CASE2",
            CaseTag::Small => "SMALL",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MptsResult {
    pub system: TripleSystem,
    pub leave_graph: Multigraph,
    pub case_tag: CaseTag,
}

/// Builds an `MPTS(ν, λ, s)` with exactly `g(ν, λ, s)` triples.
///
/// The output is checked before it is returned: size, leave matching,
/// pair multiplicities and the leave's degree parity and size residue.
/// A failed check is reported as [`Error::VerificationFailed`].
pub fn construct_mpts(nu: usize, lambda: usize, s: usize, seed: u64) -> Result<MptsResult> {
    if nu == 0 {
        return Err(Error::param("nu must be at least 1"));
    }
    if lambda == 0 {
        return Err(Error::param("lambda must be at least 1"));
    }
    if s > nu / 2 {
        return Err(Error::param(format!("s = {s} exceeds floor(nu/2) = {}", nu / 2)));
    }
    if nu <= 2 {
        return gate(nu, lambda, s, TripleSystem::empty(nu, lambda)?, CaseTag::Small);
    }
    let period = lambda_period(nu);
    if lambda > period {
        let t = (lambda - 1) % period;
        let full = construct_ts(nu, lambda - 1 - t, seed)?;
        let sub = construct_mpts(nu, t + 1, s, seed)?;
        let system = union_systems(&full, &sub.system, &[], lambda)?;
        let out = gate(nu, lambda, s, system, CaseTag::Case2)?;
        if out.leave_graph != sub.leave_graph {
            return Err(Error::verify("adding a full TS changed the leave"));
        }
        return Ok(out);
    }
    let b = Builder { nu, cfg: HillClimb::seeded(seed) };
    let (system, tag) = b.case1(lambda, s)?;
    gate(nu, lambda, s, system, tag)
}

fn gate(nu: usize, lambda: usize, s: usize, system: TripleSystem, case_tag: CaseTag) -> Result<MptsResult> {
    if system.nu() != nu || system.lambda() != lambda {
        return Err(Error::verify(format!("case {case_tag} produced a system with the wrong parameters")));
    }
    let g = compute_g(nu, lambda, s)?;
    if system.edge_count() != g {
        return Err(Error::verify(format!(
            "case {case_tag} produced {} triples, expected g = {g}",
            system.edge_count()
        )));
    }
    let leave_graph = leave(&system);
    if graph_matching_number(&leave_graph) < s {
        return Err(Error::verify(format!("case {case_tag}: leave has fewer than {s} independent edges")));
    }
    if nu >= 3 && !leave_profile(nu, lambda)?.matches(&leave_graph) {
        return Err(Error::verify(format!("case {case_tag}: leave has the wrong degree parity or size")));
    }
    Ok(MptsResult { system, leave_graph, case_tag })
}

/// Removes every triple through `x` and renumbers the remaining points
/// `0..ν − 1` in order.
pub fn delete_point(ts: &TripleSystem, x: Vertex) -> Result<TripleSystem> {
    let nu = ts.nu();
    if x >= nu {
        return Err(Error::InvalidVertex { vertex: x, n: nu });
    }
    let shift = |v: Vertex| if v > x { v - 1 } else { v };
    let mut h = Hypergraph3::new(nu - 1);
    for (t, m) in ts.iter().filter(|(t, _)| !t.contains(x)) {
        h.add_copies(t.map(shift)?, m)?;
    }
    TripleSystem::from_hypergraph(h, ts.lambda())
}

/// Multiset union of two systems on the same points plus `extra`, checked
/// against the pair cap `lambda`.
pub fn union_systems(a: &TripleSystem, b: &TripleSystem, extra: &[Triple], lambda: usize) -> Result<TripleSystem> {
    if a.nu() != b.nu() {
        return Err(Error::PointCountMismatch { left: a.nu(), right: b.nu() });
    }
    let mut h = a.as_hypergraph().union(b.as_hypergraph())?;
    for &t in extra {
        h.add(t)?;
    }
    TripleSystem::from_hypergraph(h, lambda)
}

/// Applies `perm` to every point.
pub fn relabel(ts: &TripleSystem, perm: &Permutation) -> Result<TripleSystem> {
    if perm.len() != ts.nu() {
        return Err(Error::NotABijection);
    }
    ts.relabel(perm)
}

/// From an `STS(ν + 1)` with block `{x, y, z}`: replace `z` by `y` in the
/// other blocks through `z`, double every block avoiding `y`, and drop `z`.
///
/// The transform alone leaves single edges behind as well as the doubled
/// edge `{x, y}`, so the partial system is then completed by hill-climbing
/// to a `PTS(ν, 2)` whose leave is exactly `2·{x, y}` (in the new labels).
pub fn substitute_and_double(sts: &TripleSystem, x: Vertex, y: Vertex, z: Vertex, seed: u64) -> Result<TripleSystem> {
    let big = sts.nu();
    if big % 6 != 3 {
        return Err(Error::param(format!(
            "a doubled-edge system needs ν≡2 (mod 6), got ν = {}",
            big.saturating_sub(1)
        )));
    }
    if sts.lambda() != 1 || !sts.is_complete() {
        return Err(Error::param("input is not a Steiner triple system"));
    }
    let block = Triple::new(x, y, z)?;
    if sts.as_hypergraph().multiplicity(block) == 0 {
        return Err(Error::param(format!("{{{x}, {y}, {z}}} is not a block")));
    }
    let nu = big - 1;
    let shift = |v: Vertex| if v > z { v - 1 } else { v };
    let mut partial = Vec::new();
    for t in sts.as_hypergraph().distinct().filter(|t| *t != block) {
        let t = if t.contains(z) { t.map(|v| if v == z { y } else { v })? } else { t };
        let t = t.map(shift)?;
        partial.push(t);
        if !t.contains(shift(y)) {
            partial.push(t);
        }
    }
    let mut target = Multigraph::new(nu);
    target.add_edge(shift(x), shift(y), 2)?;
    complete_from(nu, 2, &target, &partial, &HillClimb::seeded(seed))
}

/// The cycle length `2s + σ` used by the cycle-leave constructions.
fn cycle_length(nu: usize, lambda: usize, s: usize) -> usize {
    let full = lambda * binom2(nu);
    let sigma = (0..3).find(|sg| (full + 3 * nu - 2 * s - sg) % 3 == 0).expect("some residue works");
    2 * s + sigma
}

/// Permutation sending `pairs[i]` to `{2i, 2i + 1}`.
fn pairs_first(nu: usize, pairs: &[Pair]) -> Result<Permutation> {
    let fixed: Vec<(Vertex, Vertex)> =
        pairs.iter().enumerate().flat_map(|(i, p)| [(p.lo(), 2 * i), (p.hi(), 2 * i + 1)]).collect();
    Permutation::extending(nu, &fixed)
}

struct Builder {
    nu: usize,
    cfg: HillClimb,
}

impl Builder {
    fn case1(&self, lambda: usize, s: usize) -> Result<(TripleSystem, CaseTag)> {
        let nu = self.nu;
        let half = s == nu / 2;
        Ok(match (nu % 6, lambda) {
            (0, 1) | (2, 1) => (self.matching_system()?, CaseTag::I),
            (4, 1) => (self.case_iii(s == nu / 2)?, CaseTag::III),
            (4, 2) if half => (self.case_iv()?, CaseTag::IV),
            (5, 3) if half => (self.case_vii()?, CaseTag::VII),
            (0, 2) | (1, 1) | (3, 1) | (4, 2) | (5, 3) => (self.cyclic(lambda, s)?, CaseTag::II),
            (5, 1) => (self.cyclic(1, s)?, CaseTag::V),
            (5, 2) | (2, 2) => (self.cyclic(2, s)?, CaseTag::VI),
            (2, 3) => (self.case_viii()?, CaseTag::VIII),
            (2, 4) if half => (self.case_ix()?, CaseTag::IX),
            (2, 4) => (self.cyclic(4, s)?, CaseTag::V),
            (2, 5) => (self.case_x(half)?, CaseTag::X),
            (2, 6) if half => (self.case_xi()?, CaseTag::XI),
            (2, 6) => (self.cyclic(6, s)?, CaseTag::II),
            _ => return Err(Error::param(format!("lambda = {lambda} is outside the base range for nu = {nu}"))),
        })
    }

    /// Leave `C_{2s+σ}` on `0..2s+σ`; lengths 0, 1, 2 mean a full TS, a
    /// 4-cycle and a doubled edge respectively.
    fn cyclic(&self, lambda: usize, s: usize) -> Result<TripleSystem> {
        let nu = self.nu;
        match cycle_length(nu, lambda, s) {
            0 => construct_ts(nu, lambda, self.cfg.seed),
            1 => complete_to_leave(nu, lambda, &Multigraph::cycle(nu, 4)?, &self.cfg),
            2 => self.doubled_edge().and_then(|d| d.with_lambda(lambda)),
            k => complete_to_leave(nu, lambda, &Multigraph::cycle(nu, k)?, &self.cfg),
        }
    }

    /// `STS(ν + 1)` minus its last point, with leave `{0,1}, {2,3}, …`.
    fn matching_system(&self) -> Result<TripleSystem> {
        let ts = delete_point(&construct_sts(self.nu + 1)?, self.nu)?;
        let pairs: Vec<Pair> = leave(&ts).support().collect();
        ts.relabel(&pairs_first(self.nu, &pairs)?)
    }

    /// `PTS(ν, 2)` with leave exactly `2·{0, 1}`.
    fn doubled_edge(&self) -> Result<TripleSystem> {
        let nu = self.nu;
        match nu % 6 {
            2 => {
                let sts = construct_sts(nu + 1)?;
                let block = sts.as_hypergraph().distinct().find(|t| t.contains(nu)).expect("every point is on a block");
                let [x, y, z] = block.vertices();
                let ts = substitute_and_double(&sts, x, y, z, self.cfg.seed)?;
                ts.relabel(&Permutation::extending(nu, &[(x, 0), (y, 1)])?)
            }
            5 => {
                let c1 = Multigraph::from_edges(nu, &[(0, 1), (1, 2), (2, 3), (3, 0)])?;
                let c2 = Multigraph::from_edges(nu, &[(0, 1), (1, 3), (3, 2), (2, 0)])?;
                let a = complete_to_leave(nu, 1, &c1, &self.cfg)?;
                let b = complete_to_leave(nu, 1, &c2, &self.cfg)?;
                let ts = union_systems(&a, &b, &[Triple::unchecked(0, 1, 2), Triple::unchecked(0, 1, 3)], 2)?;
                ts.relabel(&Permutation::extending(nu, &[(2, 0), (3, 1)])?)
            }
            _ => Err(Error::param("a doubled-edge leave needs nu ≡ 2, 5 (mod 6)")),
        }
    }

    fn doubled_on(&self, u: Vertex, v: Vertex) -> Result<TripleSystem> {
        self.doubled_edge()?.relabel(&Permutation::extending(self.nu, &[(0, u), (1, v)])?)
    }

    /// From a PBD on `ν + 1` points with 5-block `{u,w,x,y,z} = {0..4}`:
    /// swap the 5-block for `{u,w,z}, {u,x,y}` and delete `x` (leave a
    /// star plus a matching) or `u` (leave `K₄` plus a matching).
    fn case_iii(&self, perfect: bool) -> Result<TripleSystem> {
        let pbd = pbd35_unchecked(self.nu + 1, self.cfg.seed)?;
        let mut h = Hypergraph3::from_triples(self.nu + 1, pbd.triples.iter().copied())?;
        h.add(Triple::unchecked(0, 1, 4))?;
        h.add(Triple::unchecked(0, 2, 3))?;
        let ts = TripleSystem::from_hypergraph(h, 1)?;
        delete_point(&ts, if perfect { 0 } else { 2 })
    }

    /// Two copies of the `K₄`-leave system, with the `K₄` on `{0,1,2,3}`,
    /// plus `{0,1,2}` and `{0,1,3}`.
    fn case_iv(&self) -> Result<TripleSystem> {
        let base = self.case_iii(true)?;
        let l = leave(&base);
        let k4: Vec<Vertex> = (0..self.nu).filter(|v| l.degree(*v) == 3).collect();
        if k4.len() != 4 {
            return Err(Error::verify("expected a K4 in the leave"));
        }
        let fixed: Vec<(Vertex, Vertex)> = k4.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let base = base.relabel(&Permutation::extending(self.nu, &fixed)?)?;
        union_systems(&base, &base, &[Triple::unchecked(0, 1, 2), Triple::unchecked(0, 1, 3)], 2)
    }

    /// `C_{ν−1}` on `0..ν−1` at λ = 1, plus a doubled edge from the spare
    /// point `ν − 1` to the cycle.
    fn case_vii(&self) -> Result<TripleSystem> {
        let nu = self.nu;
        let c = complete_to_leave(nu, 1, &Multigraph::cycle(nu, nu - 1)?, &self.cfg)?;
        union_systems(&c, &self.doubled_on(nu - 1, 0)?, &[], 3)
    }

    fn case_viii(&self) -> Result<TripleSystem> {
        union_systems(&self.matching_system()?, &self.doubled_edge()?, &[], 3)
    }

    fn case_ix(&self) -> Result<TripleSystem> {
        union_systems(&self.matching_system()?, &self.case_viii()?, &[], 4)
    }

    /// With `x, y, z, w = 0, 1, 2, 3`: either doubled `xz`, `yz` and the
    /// triple `xyz` (leave a star at `z`), or doubled `xy`, `zw`.
    fn case_x(&self, perfect: bool) -> Result<TripleSystem> {
        let m = self.matching_system()?;
        if perfect {
            let d = union_systems(&self.doubled_on(0, 1)?, &self.doubled_on(2, 3)?, &[], 4)?;
            union_systems(&m, &d, &[], 5)
        } else {
            let d = union_systems(&self.doubled_on(0, 2)?, &self.doubled_on(1, 2)?, &[], 4)?;
            union_systems(&m, &d, &[Triple::unchecked(0, 1, 2)], 5)
        }
    }

    /// `C_ν` at λ = 2 plus doubled `{0,2}` and `{1,3}` and the triple `{0,1,2}`.
    fn case_xi(&self) -> Result<TripleSystem> {
        let nu = self.nu;
        let c = complete_to_leave(nu, 2, &Multigraph::cycle(nu, nu)?, &self.cfg)?;
        let d = union_systems(&self.doubled_on(0, 2)?, &self.doubled_on(1, 3)?, &[], 4)?;
        union_systems(&c, &d, &[Triple::unchecked(0, 1, 2)], 6)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::cycle_lengths;
    use crate::measure::{graph_maximum_matching, max_codegree};

    #[test]
    fn mpts_examples() {
        let r = construct_mpts(8, 1, 4, 0).unwrap();
        assert_eq!(r.system.edge_count(), 8);
        assert_eq!(r.case_tag, CaseTag::I);
        assert_eq!(r.leave_graph.edge_count(), 4);
        assert!(r.leave_graph.degrees().iter().all(|d| *d == 1));

        let r = construct_mpts(10, 1, 5, 0).unwrap();
        assert_eq!(r.system.edge_count(), 12);
        assert_eq!(r.case_tag, CaseTag::III);
        let mut degs = r.leave_graph.degrees();
        degs.sort_unstable();
        assert_eq!(degs, [1, 1, 1, 1, 1, 1, 3, 3, 3, 3]);
        assert_eq!(r.leave_graph.edge_count(), 9);

        let r = construct_mpts(8, 2, 1, 0).unwrap();
        assert_eq!(r.system.edge_count(), 18);
        assert_eq!(r.case_tag, CaseTag::VI);
        assert_eq!(r.leave_graph.edge_count(), 2);
        assert_eq!(r.leave_graph.support().count(), 1);

        let r = construct_mpts(2, 9, 1, 0).unwrap();
        assert_eq!(r.system.edge_count(), 0);
        assert_eq!(r.case_tag, CaseTag::Small);

        let r = construct_mpts(8, 9, 4, 0).unwrap();
        assert_eq!(r.case_tag, CaseTag::Case2);
        assert_eq!(r.system.edge_count(), 56 + compute_g(8, 3, 4).unwrap());
        assert_eq!(r.leave_graph, construct_mpts(8, 3, 4, 0).unwrap().leave_graph);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(construct_mpts(8, 1, 5, 0).is_err());
        assert!(construct_mpts(8, 0, 1, 0).is_err());
        assert!(construct_mpts(0, 1, 0, 0).is_err());
    }

    #[test]
    fn case1_grid() {
        for nu in 3..=14 {
            for lambda in 1..=lambda_period(nu) {
                for s in 0..=nu / 2 {
                    let r = construct_mpts(nu, lambda, s, 0)
                        .unwrap_or_else(|e| panic!("({nu},{lambda},{s}): {e}"));
                    assert_eq!(r.system.edge_count(), compute_g(nu, lambda, s).unwrap());
                    assert!(graph_matching_number(&r.leave_graph) >= s);
                    assert!(r.leave_graph.max_multiplicity() <= lambda);
                    assert_eq!(r.leave_graph, leave(&r.system));
                }
            }
        }
    }

    #[test]
    fn case2_grid() {
        for nu in 3..=10 {
            let period = lambda_period(nu);
            for lambda in period + 1..=period + 3 {
                for s in 0..=nu / 2 {
                    let r = construct_mpts(nu, lambda, s, 0).unwrap();
                    assert_eq!(r.case_tag, CaseTag::Case2);
                    let t = (lambda - 1) % period;
                    assert_eq!(r.leave_graph, construct_mpts(nu, t + 1, s, 0).unwrap().leave_graph);
                }
            }
        }
    }

    #[test]
    fn exceptional_leaves_never_emitted() {
        for (lambda, nu, bad) in [(1, 7, [3, 3].as_slice()), (1, 9, &[4, 5]), (2, 6, &[3, 3])] {
            for s in 0..=nu / 2 {
                let r = construct_mpts(nu, lambda, s, 0).unwrap();
                if let Ok(mut cycles) = cycle_lengths(&r.leave_graph) {
                    cycles.sort_unstable();
                    assert_ne!(cycles, bad);
                }
            }
        }
    }

    #[test]
    fn delete_point_examples() {
        let s9 = delete_point(&construct_sts(9).unwrap(), 0).unwrap();
        assert_eq!((s9.nu(), s9.edge_count()), (8, 8));
        let l = leave(&s9);
        assert_eq!(l.edge_count(), 4);
        assert_eq!(graph_maximum_matching(&l).len(), 4);
        let s7 = delete_point(&construct_sts(7).unwrap(), 3).unwrap();
        assert_eq!((s7.nu(), s7.edge_count()), (6, 4));
        let e = delete_point(&TripleSystem::empty(5, 1).unwrap(), 0).unwrap();
        assert_eq!((e.nu(), e.edge_count()), (4, 0));
        assert!(delete_point(&s7, 6).is_err());
    }

    #[test]
    fn union_examples() {
        let s7 = construct_sts(7).unwrap();
        let d = union_systems(&s7, &s7, &[], 2).unwrap();
        assert!(d.is_complete());
        let a = construct_mpts(10, 1, 5, 0).unwrap().system;
        assert_eq!(union_systems(&a, &TripleSystem::empty(10, 1).unwrap(), &[], 1).unwrap(), a);
        assert!(matches!(
            union_systems(&s7, &TripleSystem::empty(8, 1).unwrap(), &[], 2),
            Err(Error::PointCountMismatch { .. })
        ));
        assert!(matches!(union_systems(&s7, &s7, &[], 1), Err(Error::PairCapExceeded { .. })));
    }

    #[test]
    fn union_of_k4_leaves() {
        let b = Builder { nu: 10, cfg: HillClimb::default() };
        let ts = b.case_iv().unwrap();
        let l = leave(&ts);
        assert_eq!(l.multiplicity(2, 3), 2);
        for (u, v) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            assert_eq!(l.multiplicity(u, v), 1);
        }
        assert_eq!(l.multiplicity(0, 1), 0);
        assert_eq!(l.edge_count(), 6 + 2 * 3);
    }

    #[test]
    fn substitute_and_double_examples() {
        let s9 = construct_sts(9).unwrap();
        let block = s9.as_hypergraph().distinct().next().unwrap();
        let [x, y, z] = block.vertices();
        let ts = substitute_and_double(&s9, x, y, z, 0).unwrap();
        assert_eq!(ts.edge_count(), 18);
        let l = leave(&ts);
        assert_eq!(l.edge_count(), 2);
        assert_eq!(l.multiplicity(x, y), 2);

        let s7 = construct_sts(7).unwrap();
        let [x, y, z] = s7.as_hypergraph().distinct().next().unwrap().vertices();
        assert!(matches!(substitute_and_double(&s7, x, y, z, 0), Err(Error::InvalidParameter(_))));
        let s13 = construct_sts(13).unwrap();
        let [x, y, z] = s13.as_hypergraph().distinct().next().unwrap().vertices();
        assert!(substitute_and_double(&s13, x, y, z, 0).is_err());
        let non_block = Triple::new(x, y, (0..9).find(|v| ![x, y, z].contains(v)).unwrap()).unwrap();
        let [a, b, c] = non_block.vertices();
        assert!(substitute_and_double(&s9, a, b, c, 0).is_err());
    }

    #[test]
    fn relabel_examples() {
        let r = construct_mpts(9, 1, 3, 0).unwrap();
        assert_eq!(relabel(&r.system, &Permutation::identity(9)).unwrap(), r.system);
        let pi = Permutation::new(alloc::vec![3, 8, 0, 1, 5, 2, 7, 6, 4]).unwrap();
        let moved = relabel(&r.system, &pi).unwrap();
        assert_eq!(moved.edge_count(), r.system.edge_count());
        assert_eq!(
            max_codegree(moved.as_hypergraph()).unwrap(),
            max_codegree(r.system.as_hypergraph()).unwrap()
        );
        assert_eq!(leave(&moved), r.leave_graph.relabel(&pi).unwrap());
        assert!(relabel(&r.system, &Permutation::identity(8)).is_err());
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        assert_eq!(construct_mpts(11, 2, 3, 7).unwrap(), construct_mpts(11, 2, 3, 7).unwrap());
    }
}
