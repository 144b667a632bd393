//! Closed-form bounds `g(ν, λ, s)` and `f(n, ν, Δ₂)`, design existence
//! predicates, and the parity/residue profile forced on every leave.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{binom2, Error, Multigraph, Result};

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `gcd(ν − 2, 6)`, the period of λ for which a `TS(ν, λ)` exists.
pub fn lambda_period(nu: usize) -> usize {
    gcd(nu.abs_diff(2), 6)
}

/// Which of the four printed branches of `g` applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GBranch {
    /// `⌊λ/3·C(ν,2) − ν/6⌋`.
    HalfMatching,
    /// `⌊λ/3·C(ν,2) − ν/6⌋ − 1`.
    HalfMatchingMinusOne,
    /// `⌊λ/3·C(ν,2)⌋ − 1`.
    FullMinusOne,
    /// `⌊λ/3·C(ν,2) − 2s/3⌋`.
    Otherwise,
}

/// The three non-default branch conditions, evaluated independently.
/// At most one is ever true; `g_branch` relies on that.
pub fn g_branch_conditions(nu: usize, lambda: usize, s: usize) -> [bool; 3] {
    let r = nu % 6;
    let half = nu % 2 == 0 && s == nu / 2;
    let l6 = lambda % 6;
    let odd = lambda % 2 == 1;
    [
        (r == 0 && odd)
            || (r == 2 && (l6 == 1 || l6 == 3))
            || (r == 2 && l6 == 5 && !half)
            || (r == 4 && odd && !half),
        (r == 2 && l6 == 5 && half) || (r == 4 && odd && half),
        (r == 2 && l6 == 4 && s == 0) || (r == 5 && lambda % 3 == 1 && s == 0),
    ]
}

pub fn g_branch(nu: usize, lambda: usize, s: usize) -> GBranch {
    match g_branch_conditions(nu, lambda, s) {
        [true, _, _] => GBranch::HalfMatching,
        [_, true, _] => GBranch::HalfMatchingMinusOne,
        [_, _, true] => GBranch::FullMinusOne,
        _ => GBranch::Otherwise,
    }
}

fn check_g_params(nu: usize, lambda: usize, s: usize) -> Result<()> {
    if lambda == 0 {
        return Err(Error::param("lambda must be at least 1"));
    }
    if s > nu / 2 {
        return Err(Error::param(alloc::format!("s = {s} exceeds floor(nu/2) = {}", nu / 2)));
    }
    Ok(())
}

/// The number of triples in a maximum `PTS(ν, λ)` whose leave has `s`
/// independent edges. Defined as 0 for `ν ≤ 2`.
pub fn compute_g(nu: usize, lambda: usize, s: usize) -> Result<usize> {
    check_g_params(nu, lambda, s)?;
    if nu <= 2 {
        return Ok(0);
    }
    let full = lambda * binom2(nu);
    // All numerators are nonnegative for ν ≥ 3, so integer division floors.
    Ok(match g_branch(nu, lambda, s) {
        GBranch::HalfMatching => (2 * full - nu) / 6,
        GBranch::HalfMatchingMinusOne => (2 * full - nu) / 6 - 1,
        GBranch::FullMinusOne => full / 3 - 1,
        GBranch::Otherwise => (full - 2 * s) / 3,
    })
}

/// The extremal edge count for 3-graphs on `n` vertices with codegree at
/// most `Δ₂` and matching number at most `ν`.
pub fn compute_f(n: usize, nu: usize, delta2: usize) -> Result<usize> {
    if nu == 0 || delta2 == 0 {
        return Err(Error::param("nu and delta2 must be positive"));
    }
    if n < nu {
        return Err(Error::param(alloc::format!("n = {n} is smaller than nu = {nu}")));
    }
    let m = n - nu;
    let base = nu * m * delta2 / 2;
    let s = if (m * delta2) % 2 == 0 || nu % 2 == 0 { 0 } else { nu / 2 };
    Ok(base + compute_g(nu, delta2, s)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DesignKind {
    /// `TS(ν, λ)`: every pair in exactly λ triples.
    Ts,
    /// `STS(ν)`: every pair in exactly one triple.
    Sts,
    /// `PBD(ν, {3, 5*}, 1)`: triples plus one 5-block, every pair once.
    Pbd35,
}

pub fn existence(kind: DesignKind, nu: usize, lambda: usize) -> bool {
    match kind {
        DesignKind::Ts => nu != 2 && lambda % lambda_period(nu) == 0,
        DesignKind::Sts => matches!(nu % 6, 1 | 3),
        DesignKind::Pbd35 => nu > 5 && nu % 6 == 5,
    }
}

/// Parity and size residue shared by the leaves of all `PTS(ν, λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeaveProfile {
    /// Every leave degree is congruent to this mod 2.
    pub degree_parity: usize,
    /// The leave size is congruent to this mod 3.
    pub size_mod3: usize,
    /// `1 ≤ λ ≤ gcd(ν − 2, 6)`.
    pub case1: bool,
}

impl LeaveProfile {
    pub fn matches(&self, leave: &Multigraph) -> bool {
        leave.edge_count() % 3 == self.size_mod3
            && leave.degrees().iter().all(|d| d % 2 == self.degree_parity)
    }
}

pub fn leave_profile(nu: usize, lambda: usize) -> Result<LeaveProfile> {
    if nu < 3 {
        return Err(Error::param("leave profiles need nu >= 3"));
    }
    if lambda == 0 {
        return Err(Error::param("lambda must be at least 1"));
    }
    Ok(LeaveProfile {
        degree_parity: lambda * (nu - 1) % 2,
        size_mod3: lambda * binom2(nu) % 3,
        case1: lambda <= lambda_period(nu),
    })
}

/// Why a 2-regular-or-empty graph cannot be the leave of a `PTS(ν, λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeaveObstruction {
    /// λ odd and ν even forces every leave degree to be odd.
    OddDegreesForced,
    /// `λ·C(ν,2) − e(G)` is not divisible by 3.
    SizeResidue { remainder: usize },
    /// One of the three small exceptional configurations.
    Exceptional { lambda: usize, nu: usize, cycles: Vec<usize> },
}

impl fmt::Display for LeaveObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeaveObstruction::OddDegreesForced => {
                f.write_str("lambda odd and nu even force odd leave degrees")
            }
            LeaveObstruction::SizeResidue { remainder } => {
                write!(f, "lambda*C(nu,2) - e(G) leaves remainder {remainder} mod 3")
            }
            LeaveObstruction::Exceptional { lambda, nu, cycles } => {
                write!(f, "cycle lengths {cycles:?} are exceptional for lambda={lambda}, nu={nu}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeaveVerdict {
    Feasible,
    Infeasible(LeaveObstruction),
}

impl LeaveVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LeaveVerdict::Feasible)
    }
}

/// Cycle lengths of a simple graph whose degrees are all 0 or 2, sorted.
pub fn cycle_lengths(g: &Multigraph) -> Result<Vec<usize>> {
    if !g.is_simple() {
        return Err(Error::param("leave candidate must be a simple graph"));
    }
    if g.degrees().iter().any(|d| *d != 0 && *d != 2) {
        return Err(Error::param("leave candidate must have all degrees 0 or 2"));
    }
    let mut lens: Vec<usize> = g.components().iter().map(Vec::len).collect();
    lens.sort_unstable();
    Ok(lens)
}

/// Decides whether a disjoint union of cycles is the leave of some
/// `PTS(ν, λ)`.
pub fn check_leave_feasible(nu: usize, lambda: usize, g: &Multigraph) -> Result<LeaveVerdict> {
    if nu <= 2 {
        return Err(Error::param("cycle leaves need nu > 2"));
    }
    if lambda == 0 {
        return Err(Error::param("lambda must be at least 1"));
    }
    if g.n() > nu {
        return Err(Error::param(alloc::format!("graph has {} vertices, nu = {nu}", g.n())));
    }
    let cycles = cycle_lengths(g)?;
    if lambda % 2 == 1 && nu % 2 == 0 {
        return Ok(LeaveVerdict::Infeasible(LeaveObstruction::OddDegreesForced));
    }
    let full = lambda * binom2(nu);
    let e = g.edge_count();
    if e > full || (full - e) % 3 != 0 {
        let remainder = (full + 2 * e) % 3;
        return Ok(LeaveVerdict::Infeasible(LeaveObstruction::SizeResidue { remainder }));
    }
    let exceptional = matches!(
        (lambda, nu, cycles.as_slice()),
        (1, 7, [3, 3]) | (1, 9, [4, 5]) | (2, 6, [3, 3])
    );
    if exceptional {
        return Ok(LeaveVerdict::Infeasible(LeaveObstruction::Exceptional { lambda, nu, cycles }));
    }
    Ok(LeaveVerdict::Feasible)
}

/// Human-readable condition for the existence predicates, used in errors.
pub fn existence_condition(kind: DesignKind) -> String {
    String::from(match kind {
        DesignKind::Ts => "a TS(ν,λ) exists iff ν≠2 and λ≡0 (mod gcd(ν−2,6))",
        DesignKind::Sts => "a STS(ν) exists iff ν≡1,3 (mod 6)",
        DesignKind::Pbd35 => "a PBD(ν,{3,5*},1) with ν>5 exists iff ν≡5 (mod 6)",
    })
}
