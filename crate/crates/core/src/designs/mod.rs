//! Base designs: Steiner and λ-fold triple systems, `PBD(ν, {3, 5*}, 1)`,
//! and completion of a partial triple system to a prescribed leave.

mod hill;

use alloc::format;
use alloc::vec::Vec;

pub use hill::HillClimb;

use crate::bounds::{existence, existence_condition, DesignKind};
use crate::measure::leave;
use crate::{binom2, Error, Multigraph, Result, Triple, TripleSystem, Vertex};

/// Bose construction on `ν = 3m`, `m` odd: points `(x, i) ↦ 3x + i`.
fn bose(nu: usize) -> Vec<Triple> {
    let m = nu / 3;
    let half = m.div_ceil(2);
    let pt = |x: usize, i: usize| 3 * x + i % 3;
    let mut out = Vec::with_capacity(nu * (nu - 1) / 6);
    for x in 0..m {
        out.push(Triple::unchecked(pt(x, 0), pt(x, 1), pt(x, 2)));
    }
    for x in 0..m {
        for y in x + 1..m {
            let xy = (x + y) * half % m;
            for i in 0..3 {
                out.push(Triple::unchecked(pt(x, i), pt(y, i), pt(xy, i + 1)));
            }
        }
    }
    out
}

/// Skolem construction on `ν = 6k + 1` from the half-idempotent commutative
/// quasigroup of order `2k`; the point at infinity is `ν − 1`.
fn skolem(nu: usize) -> Vec<Triple> {
    let k = (nu - 1) / 6;
    let order = 2 * k;
    let inf = nu - 1;
    let pt = |x: usize, i: usize| 3 * x + i % 3;
    // Addition table of Z_2k with symbol 2j renamed j and 2j+1 renamed k+j.
    let op = |a: usize, b: usize| {
        let s = (a + b) % order;
        if s % 2 == 0 {
            s / 2
        } else {
            k + s / 2
        }
    };
    let mut out = Vec::with_capacity(nu * (nu - 1) / 6);
    for x in 0..k {
        out.push(Triple::unchecked(pt(x, 0), pt(x, 1), pt(x, 2)));
        for i in 0..3 {
            out.push(Triple::unchecked(inf, pt(x + k, i), pt(x, i + 1)));
        }
    }
    for x in 0..order {
        for y in x + 1..order {
            for i in 0..3 {
                out.push(Triple::unchecked(pt(x, i), pt(y, i), pt(op(x, y), i + 1)));
            }
        }
    }
    out
}

/// A Steiner triple system `STS(ν)`, deterministic in `ν`.
pub fn construct_sts(nu: usize) -> Result<TripleSystem> {
    if !existence(DesignKind::Sts, nu, 1) {
        return Err(Error::param(format!("no STS({nu}): {}", existence_condition(DesignKind::Sts))));
    }
    let blocks = match nu % 6 {
        3 => bose(nu),
        _ if nu == 1 => Vec::new(),
        _ => skolem(nu),
    };
    let ts = TripleSystem::from_triples(nu, 1, blocks)?;
    if !ts.is_complete() {
        return Err(Error::verify(format!("STS({nu}) construction is incomplete")));
    }
    Ok(ts)
}

/// A triple system `TS(ν, λ)`: unions of STS copies when ν ≡ 1, 3 (mod 6),
/// otherwise copies of a base `TS(ν, gcd(ν − 2, 6))` found by completion.
pub fn construct_ts(nu: usize, lambda: usize, seed: u64) -> Result<TripleSystem> {
    if lambda == 0 {
        return Err(Error::param("lambda must be at least 1"));
    }
    if !existence(DesignKind::Ts, nu, lambda) {
        return Err(Error::param(format!(
            "no TS({nu},{lambda}): {}",
            existence_condition(DesignKind::Ts)
        )));
    }
    let (base, copies) = if existence(DesignKind::Sts, nu, 1) {
        (construct_sts(nu)?, lambda)
    } else {
        let period = crate::bounds::lambda_period(nu);
        let base = complete_to_leave(nu, period, &Multigraph::new(nu), &HillClimb::seeded(seed))?;
        (base, lambda / period)
    };
    let mut h = crate::Hypergraph3::new(nu);
    for (t, m) in base.iter() {
        h.add_copies(t, m * copies)?;
    }
    let ts = TripleSystem::from_hypergraph(h, lambda)?;
    if !ts.is_complete() {
        return Err(Error::verify(format!("TS({nu},{lambda}) construction is incomplete")));
    }
    Ok(ts)
}

/// A pairwise balanced design with exactly one block of size five.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pbd35 {
    pub nu: usize,
    pub five_block: [Vertex; 5],
    pub triples: Vec<Triple>,
}

impl Pbd35 {
    /// Every pair lies in exactly one block.
    pub fn verify(&self) -> Result<()> {
        let mut cov = alloc::vec![0usize; self.nu * self.nu];
        let mut bump = |a: usize, b: usize| {
            cov[a.min(b) * self.nu + a.max(b)] += 1;
        };
        for (i, &a) in self.five_block.iter().enumerate() {
            for &b in &self.five_block[i + 1..] {
                bump(a, b);
            }
        }
        for t in &self.triples {
            for p in t.pairs() {
                bump(p.lo(), p.hi());
            }
        }
        for a in 0..self.nu {
            for b in a + 1..self.nu {
                if cov[a * self.nu + b] != 1 {
                    return Err(Error::verify(format!("pair {{{a}, {b}}} covered {} times", cov[a * self.nu + b])));
                }
            }
        }
        Ok(())
    }
}

/// `PBD(ν, {3, 5*}, 1)` with the 5-block pinned on points `0..5`.
pub fn construct_pbd35(nu: usize, seed: u64) -> Result<Pbd35> {
    if !existence(DesignKind::Pbd35, nu, 1) {
        return Err(Error::param(format!(
            "no PBD({nu},{{3,5*}},1): {}",
            existence_condition(DesignKind::Pbd35)
        )));
    }
    pbd35_unchecked(nu, seed)
}

/// Also accepts `ν = 5`, where the design is the lone 5-block.
pub(crate) fn pbd35_unchecked(nu: usize, seed: u64) -> Result<Pbd35> {
    let mut k5 = Multigraph::new(nu);
    for a in 0..5 {
        for b in a + 1..5 {
            k5.add_edge(a, b, 1)?;
        }
    }
    let ts = complete_to_leave(nu, 1, &k5, &HillClimb::seeded(seed))?;
    let pbd = Pbd35 { nu, five_block: [0, 1, 2, 3, 4], triples: ts.as_hypergraph().expanded().collect() };
    pbd.verify()?;
    Ok(pbd)
}

/// Checks the necessary conditions for `target` to be the leave of a
/// `PTS(ν, λ)`: multiplicities at most λ, every degree congruent to
/// `λ(ν − 1)` mod 2, and `3 | λ·C(ν,2) − e(target)`.
pub fn check_leave_necessary(nu: usize, lambda: usize, target: &Multigraph) -> Result<()> {
    if lambda == 0 {
        return Err(Error::param("lambda must be at least 1"));
    }
    if target.n() != nu {
        return Err(Error::PointCountMismatch { left: nu, right: target.n() });
    }
    if target.max_multiplicity() > lambda {
        return Err(Error::param("target multiplicity exceeds lambda"));
    }
    let parity = lambda * nu.saturating_sub(1) % 2;
    if let Some(v) = target.degrees().iter().position(|d| d % 2 != parity) {
        return Err(Error::param(format!("degree of vertex {v} has the wrong parity")));
    }
    let full = lambda * binom2(nu);
    if target.edge_count() > full || (full - target.edge_count()) % 3 != 0 {
        return Err(Error::param("lambda*C(nu,2) - e(target) is not divisible by 3"));
    }
    Ok(())
}

/// A `PTS(ν, λ)` whose leave equals `target` exactly, found by
/// hill-climbing. Deterministic for a fixed configuration.
pub fn complete_to_leave(nu: usize, lambda: usize, target: &Multigraph, cfg: &HillClimb) -> Result<TripleSystem> {
    complete_from(nu, lambda, target, &[], cfg)
}

/// Like [`complete_to_leave`], but every attempt starts from `initial`.
pub fn complete_from(
    nu: usize,
    lambda: usize,
    target: &Multigraph,
    initial: &[Triple],
    cfg: &HillClimb,
) -> Result<TripleSystem> {
    check_leave_necessary(nu, lambda, target)?;
    let mut req = alloc::vec![0usize; nu * nu];
    for a in 0..nu {
        for b in 0..nu {
            if a != b {
                req[a * nu + b] = lambda - target.multiplicity(a, b);
            }
        }
    }
    if let Some(t) = initial.iter().find(|t| t.max_vertex() >= nu) {
        return Err(Error::InvalidVertex { vertex: t.max_vertex(), n: nu });
    }
    let blocks = hill::complete(nu, &req, initial, cfg)?;
    let ts = TripleSystem::from_triples(nu, lambda, blocks)?;
    if &leave(&ts) != target {
        return Err(Error::verify("completed system has the wrong leave"));
    }
    Ok(ts)
}
