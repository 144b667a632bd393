//! Randomised hill-climbing completion of λ-fold triple packings.
//!
//! Each pair `{x, y}` must end up covered exactly `req(x, y)` times. A move
//! picks a point with an uncovered pair, two of its live partners `y, z`,
//! and inserts `{x, y, z}`, first evicting one block through every pair of
//! the new triple that is already saturated.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result, Triple};

/// Search limits for [`super::complete_to_leave`] and friends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HillClimb {
    /// Seed of the first attempt; attempt `k` uses `seed + k`.
    pub seed: u64,
    /// Attempts before giving up with a resource error.
    pub max_restarts: u64,
    /// An attempt restarts after `stall_factor · ν²` moves without progress.
    pub stall_factor: u64,
}

impl Default for HillClimb {
    fn default() -> Self {
        HillClimb { seed: 0, max_restarts: 200, stall_factor: 50 }
    }
}

impl HillClimb {
    pub fn seeded(seed: u64) -> Self {
        HillClimb { seed, ..Self::default() }
    }
}

struct State<'a> {
    nu: usize,
    req: &'a [usize],
    cov: Vec<usize>,
    deficit: Vec<usize>,
    blocks: Vec<Triple>,
    through: Vec<Vec<usize>>,
}

impl<'a> State<'a> {
    fn new(nu: usize, req: &'a [usize]) -> Self {
        let mut deficit = alloc::vec![0; nu];
        for x in 0..nu {
            deficit[x] = (0..nu).map(|y| req[x * nu + y]).sum();
        }
        State {
            nu,
            req,
            cov: alloc::vec![0; nu * nu],
            deficit,
            blocks: Vec::new(),
            through: alloc::vec![Vec::new(); nu * nu],
        }
    }

    fn idx(&self, a: usize, b: usize) -> usize {
        a.min(b) * self.nu + a.max(b)
    }

    fn live(&self, a: usize, b: usize) -> bool {
        let i = a * self.nu + b;
        self.cov[i] < self.req[i]
    }

    fn saturated(&self, a: usize, b: usize) -> bool {
        !self.live(a, b)
    }

    fn insert(&mut self, t: Triple) {
        let id = self.blocks.len();
        self.blocks.push(t);
        for p in t.pairs() {
            let (a, b) = (p.lo(), p.hi());
            self.cov[a * self.nu + b] += 1;
            self.cov[b * self.nu + a] += 1;
            self.deficit[a] -= 1;
            self.deficit[b] -= 1;
            let i = self.idx(a, b);
            self.through[i].push(id);
        }
    }

    fn remove(&mut self, id: usize) {
        let t = self.blocks[id];
        for p in t.pairs() {
            let (a, b) = (p.lo(), p.hi());
            self.cov[a * self.nu + b] -= 1;
            self.cov[b * self.nu + a] -= 1;
            self.deficit[a] += 1;
            self.deficit[b] += 1;
            let i = self.idx(a, b);
            let list = &mut self.through[i];
            let pos = list.iter().position(|&k| k == id).expect("indexed");
            list.swap_remove(pos);
        }
        let last = self.blocks.len() - 1;
        self.blocks.swap_remove(id);
        if id != last {
            let moved = self.blocks[id];
            for p in moved.pairs() {
                let i = self.idx(p.lo(), p.hi());
                for k in self.through[i].iter_mut() {
                    if *k == last {
                        *k = id;
                    }
                }
            }
        }
    }

    fn evict_through(&mut self, a: usize, b: usize, rng: &mut ChaCha8Rng) {
        let i = self.idx(a, b);
        let list = &self.through[i];
        if let Some(&id) = list.choose(rng) {
            self.remove(id);
        }
    }

    /// One move; returns false when no move was possible from the chosen point.
    fn step(&mut self, rng: &mut ChaCha8Rng, live_points: &mut Vec<usize>, partners: &mut Vec<usize>) -> bool {
        live_points.clear();
        live_points.extend((0..self.nu).filter(|&x| self.deficit[x] > 0));
        let Some(&x) = live_points.choose(rng) else { return false };
        partners.clear();
        partners.extend((0..self.nu).filter(|&y| y != x && self.live(x, y)));
        let Some(&y) = partners.choose(rng) else { return false };

        let candidates: Vec<usize> = partners
            .iter()
            .copied()
            .filter(|&z| z != y && self.req[y * self.nu + z] > 0)
            .collect();
        let z = if candidates.is_empty() {
            let wide: Vec<usize> = (0..self.nu)
                .filter(|&z| z != x && z != y && self.req[x * self.nu + z] > 0 && self.req[y * self.nu + z] > 0)
                .collect();
            match wide.choose(rng) {
                Some(&z) => z,
                None => return false,
            }
        } else {
            candidates[rng.gen_range(0..candidates.len())]
        };

        if self.saturated(x, z) {
            self.evict_through(x, z, rng);
        }
        if self.saturated(y, z) {
            self.evict_through(y, z, rng);
        }
        if self.saturated(x, y) || self.saturated(x, z) || self.saturated(y, z) {
            return false;
        }
        self.insert(Triple::unchecked(x, y, z));
        true
    }
}

/// Finds a multiset of triples covering each pair `{a, b}` exactly
/// `req[a·ν + b]` times, starting from `initial` (which must not exceed the
/// requirement anywhere).
pub(crate) fn complete(nu: usize, req: &[usize], initial: &[Triple], cfg: &HillClimb) -> Result<Vec<Triple>> {
    debug_assert_eq!(req.len(), nu * nu);
    let total: usize = (0..nu).flat_map(|a| (a + 1..nu).map(move |b| (a, b))).map(|(a, b)| req[a * nu + b]).sum();
    if total % 3 != 0 {
        return Err(Error::param("required pair coverage is not divisible by 3"));
    }
    let target = total / 3;
    let stall_limit = cfg.stall_factor.max(1) * (nu as u64).pow(2).max(1);
    let mut live_points = Vec::with_capacity(nu);
    let mut partners = Vec::with_capacity(nu);

    for attempt in 0..cfg.max_restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(attempt));
        let mut st = State::new(nu, req);
        for &t in initial {
            if t.pairs().iter().any(|p| st.saturated(p.lo(), p.hi())) {
                return Err(Error::param("initial triples exceed the required coverage"));
            }
            st.insert(t);
        }
        let mut best = st.blocks.len();
        let mut stalled = 0u64;
        while st.blocks.len() < target {
            st.step(&mut rng, &mut live_points, &mut partners);
            if st.blocks.len() > best {
                best = st.blocks.len();
                stalled = 0;
            } else {
                stalled += 1;
                if stalled > stall_limit {
                    break;
                }
            }
        }
        if st.blocks.len() == target {
            let mut out = st.blocks;
            out.sort_unstable();
            return Ok(out);
        }
    }
    Err(Error::BudgetExceeded { what: "hill-climbing completion restarts", budget: cfg.max_restarts })
}
