//! Edge-disjoint degree-prescribed subgraphs of the complete graph `K_m`.

use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{blossom, Error, Multigraph, Result, Vertex};

/// Degree targets for `ν` factors on `m` vertices: every vertex wants
/// degree `Δ₂` except the listed deficient ones, which want `Δ₂ − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSpec {
    pub m: usize,
    pub delta2: usize,
    /// `deficient[i]`: vertices of factor `i` at degree `Δ₂ − 1`.
    pub deficient: Vec<Vec<Vertex>>,
}

impl FactorSpec {
    /// Every factor `Δ₂`-regular.
    pub fn regular(m: usize, nu: usize, delta2: usize) -> Self {
        FactorSpec { m, delta2, deficient: alloc::vec![Vec::new(); nu] }
    }

    /// One deficient vertex per factor; factors `2i` and `2i + 1` share
    /// vertex `i`, and an unpaired last factor gets vertex `⌊ν/2⌋`.
    pub fn paired(m: usize, nu: usize, delta2: usize) -> Self {
        let deficient = (0..nu).map(|i| alloc::vec![i / 2]).collect();
        FactorSpec { m, delta2, deficient }
    }

    /// For even `ν ≥ 4`: factors below `ν − 4` paired as in [`paired`],
    /// factor `ν − 1 − t` deficient at `t − 1` for `t = 1, 2, 3`, and the
    /// last factor deficient at `0, 1, 2`.
    ///
    /// [`paired`]: FactorSpec::paired
    pub fn star(m: usize, nu: usize, delta2: usize) -> Self {
        let mut deficient: Vec<Vec<Vertex>> = (0..nu.saturating_sub(4)).map(|i| alloc::vec![i / 2]).collect();
        for t in (1..=3).rev() {
            deficient.push(alloc::vec![t - 1]);
        }
        deficient.push(alloc::vec![0, 1, 2]);
        FactorSpec { m, delta2, deficient }
    }

    pub fn nu(&self) -> usize {
        self.deficient.len()
    }

    pub fn degree(&self, factor: usize, v: Vertex) -> usize {
        if self.deficient[factor].contains(&v) {
            self.delta2 - 1
        } else {
            self.delta2
        }
    }

    pub fn is_regular(&self) -> bool {
        self.deficient.iter().all(|d| d.is_empty())
    }

    fn validate(&self) -> Result<()> {
        if self.delta2 == 0 {
            return Err(Error::param("delta2 must be positive"));
        }
        for (i, d) in self.deficient.iter().enumerate() {
            if let Some(&v) = d.iter().find(|v| **v >= self.m) {
                return Err(Error::InvalidVertex { vertex: v, n: self.m });
            }
            let sum: usize = (0..self.m).map(|v| self.degree(i, v)).sum();
            if sum % 2 == 1 {
                return Err(Error::param(format!("factor {i} has an odd degree sum")));
            }
        }
        let busiest = (0..self.m).map(|v| (0..self.nu()).map(|i| self.degree(i, v)).sum::<usize>()).max();
        if busiest.unwrap_or(0) > self.m.saturating_sub(1) {
            return Err(Error::param(format!(
                "{} factors of degree {} do not fit in K_{}",
                self.nu(),
                self.delta2,
                self.m
            )));
        }
        Ok(())
    }
}

/// Finds the factors one at a time, each inside the edges left over by the
/// previous ones. Deterministic for a fixed seed. Every factor is checked
/// against its degree targets before it is returned.
pub fn extract_factors(spec: &FactorSpec, seed: u64) -> Result<Vec<Multigraph>> {
    spec.validate()?;
    let m = spec.m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = if spec.is_regular() && m % 2 == 0 && spec.nu() * spec.delta2 < m {
        round_robin(spec, &mut rng)?
    } else {
        let mut pool: Vec<(Vertex, Vertex)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
        let mut out = Vec::with_capacity(spec.nu());
        for i in 0..spec.nu() {
            pool.shuffle(&mut rng);
            let chosen = f_factor(m, &pool, |v| spec.degree(i, v)).ok_or(Error::NoFactor { index: i })?;
            let mut g = Multigraph::new(m);
            let mut keep = alloc::vec![true; pool.len()];
            for k in chosen {
                let (a, b) = pool[k];
                g.add_edge(a, b, 1)?;
                keep[k] = false;
            }
            let mut k = 0;
            pool.retain(|_| {
                k += 1;
                keep[k - 1]
            });
            out.push(g);
        }
        out
    };
    check_factors(spec, &factors)?;
    Ok(factors)
}

/// Degree targets met and no edge used twice.
pub fn check_factors(spec: &FactorSpec, factors: &[Multigraph]) -> Result<()> {
    if factors.len() != spec.nu() {
        return Err(Error::verify("wrong number of factors"));
    }
    let mut used = alloc::vec![false; spec.m * spec.m];
    for (i, g) in factors.iter().enumerate() {
        if g.n() != spec.m || !g.is_simple() {
            return Err(Error::verify(format!("factor {i} is not a simple graph on {} vertices", spec.m)));
        }
        for v in 0..spec.m {
            if g.degree(v) != spec.degree(i, v) {
                return Err(Error::verify(format!("factor {i} has the wrong degree at {v}")));
            }
        }
        for p in g.support() {
            let slot = &mut used[p.lo() * spec.m + p.hi()];
            if *slot {
                return Err(Error::verify(format!("edge {{{}, {}}} lies in two factors", p.lo(), p.hi())));
            }
            *slot = true;
        }
    }
    Ok(())
}

/// Round-robin 1-factorisation of `K_m` (m even), `Δ₂` rounds per factor.
fn round_robin(spec: &FactorSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Multigraph>> {
    let m = spec.m;
    let mut label: Vec<Vertex> = (0..m).collect();
    label.shuffle(rng);
    let k = m - 1;
    let mut out = Vec::with_capacity(spec.nu());
    for i in 0..spec.nu() {
        let mut g = Multigraph::new(m);
        for r in i * spec.delta2..(i + 1) * spec.delta2 {
            g.add_edge(label[r], label[k], 1)?;
            for d in 1..m / 2 {
                g.add_edge(label[(r + d) % k], label[(r + k - d) % k], 1)?;
            }
        }
        out.push(g);
    }
    Ok(out)
}

/// Tutte's gadget: vertex `v` becomes `f(v)` copies; edge `uv` becomes two
/// adjacent vertices `e_u, e_v`, with `e_u` joined to every copy of `u`.
/// A perfect matching selects exactly the edges whose gadget pair is split.
/// Returns indices into `edges`, or `None` when no f-factor exists.
fn f_factor(m: usize, edges: &[(Vertex, Vertex)], f: impl Fn(Vertex) -> usize) -> Option<Vec<usize>> {
    let mut start = alloc::vec![0; m + 1];
    for v in 0..m {
        start[v + 1] = start[v] + f(v);
    }
    let copies = start[m];
    let total = copies + 2 * edges.len();
    let mut adj: Vec<Vec<usize>> = alloc::vec![Vec::new(); total];
    for (k, &(a, b)) in edges.iter().enumerate() {
        let (ea, eb) = (copies + 2 * k, copies + 2 * k + 1);
        for (end, v) in [(ea, a), (eb, b)] {
            for c in start[v]..start[v + 1] {
                adj[end].push(c);
                adj[c].push(end);
            }
        }
        adj[ea].push(eb);
        adj[eb].push(ea);
    }
    let mate = blossom::maximum_matching(&adj);
    if mate.iter().any(|x| x.is_none()) {
        return None;
    }
    Some((0..edges.len()).filter(|k| mate[copies + 2 * k] != Some(copies + 2 * k + 1)).collect())
}
