use alloc::vec::Vec;

use crate::{Error, Result, Vertex};

/// A bijection on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation(Vec<Vertex>);

impl Permutation {
    pub fn new(images: Vec<Vertex>) -> Result<Self> {
        let mut seen = alloc::vec![false; images.len()];
        for &v in &images {
            if v >= images.len() || seen[v] {
                return Err(Error::NotABijection);
            }
            seen[v] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Extends the partial injection `from -> to` to a bijection of `0..n`.
    /// Unconstrained points are mapped, in increasing order, onto the unused
    /// images in increasing order.
    pub fn extending(n: usize, fixed: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut images = alloc::vec![usize::MAX; n];
        let mut used = alloc::vec![false; n];
        for &(from, to) in fixed {
            if from >= n || to >= n {
                return Err(Error::InvalidVertex { vertex: from.max(to), n });
            }
            if images[from] != usize::MAX || used[to] {
                return Err(Error::NotABijection);
            }
            images[from] = to;
            used[to] = true;
        }
        let mut free = (0..n).filter(|v| !used[*v]);
        for img in images.iter_mut().filter(|i| **i == usize::MAX) {
            *img = free.next().expect("counts agree");
        }
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.0[v]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Permutation(inv)
    }

    pub fn images(&self) -> &[Vertex] {
        &self.0
    }
}
