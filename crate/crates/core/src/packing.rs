//! Exact maximum matching in 3-graphs by branch and bound.

use alloc::vec::Vec;

use crate::{Error, Hypergraph3, Result, Triple};

pub(crate) fn maximum_matching(h: &Hypergraph3, budget: u64) -> Result<Vec<Triple>> {
    let triples: Vec<Triple> = h.distinct().collect();
    let mut search = Search {
        n: h.n(),
        triples: &triples,
        budget,
        nodes: 0,
        best: Vec::new(),
        target: 0,
        degree: alloc::vec![0; h.n()],
    };
    let all: Vec<usize> = (0..triples.len()).collect();
    search.target = search.upper_bound(&all);
    let mut chosen = Vec::new();
    search.run(&all, &mut chosen)?;
    Ok(search.best.iter().map(|&i| triples[i]).collect())
}

struct Search<'a> {
    n: usize,
    triples: &'a [Triple],
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
    target: usize,
    degree: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, alive: &[usize], chosen: &mut Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                what: "hypergraph matching search",
                budget: self.budget,
            });
        }
        if chosen.len() > self.best.len() {
            self.best.clone_from(chosen);
        }
        if alive.is_empty() || self.best.len() >= self.target {
            return Ok(());
        }
        if chosen.len() + self.upper_bound(alive) <= self.best.len() {
            return Ok(());
        }

        // Branch on the triple that conflicts with the fewest others.
        self.fill_degrees(alive);
        let pick = *alive
            .iter()
            .min_by_key(|&&i| self.triples[i].vertices().iter().map(|v| self.degree[*v]).sum::<usize>())
            .expect("nonempty");
        let t = self.triples[pick];
        let with: Vec<usize> =
            alive.iter().copied().filter(|&i| !self.triples[i].meets(t)).collect();
        let conflicts = alive.len() - with.len() - 1;

        chosen.push(pick);
        self.run(&with, chosen)?;
        chosen.pop();

        if conflicts > 0 {
            let without: Vec<usize> = alive.iter().copied().filter(|&i| i != pick).collect();
            self.run(&without, chosen)?;
        }
        Ok(())
    }

    fn fill_degrees(&mut self, alive: &[usize]) {
        self.degree.iter_mut().for_each(|d| *d = 0);
        for &i in alive {
            for v in self.triples[i].vertices() {
                self.degree[v] += 1;
            }
        }
    }

    /// min(#triples, ⌊covered vertices / 3⌋, size of a greedy vertex cover).
    fn upper_bound(&mut self, alive: &[usize]) -> usize {
        self.fill_degrees(alive);
        let covered = self.degree.iter().filter(|d| **d > 0).count();
        let mut bound = alive.len().min(covered / 3);

        let mut rest: Vec<usize> = alive.to_vec();
        let mut cover = 0;
        while !rest.is_empty() && cover < bound {
            let v = (0..self.n).max_by_key(|v| (self.degree[*v], usize::MAX - v)).expect("n > 0");
            rest.retain(|&i| !self.triples[i].contains(v));
            cover += 1;
            self.fill_degrees(&rest);
        }
        if rest.is_empty() {
            bound = bound.min(cover);
        }
        bound
    }
}
