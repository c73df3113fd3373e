//! Set partitions of a carrier in canonical form, and the union-find used to
//! build them.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A partition of `0..n`: `block_of[e]` is the smallest element of `e`'s block.
///
/// Structural equality is array equality. The total order puts finer
/// partitions first (more blocks), ties broken lexicographically on
/// `block_of`, so the discrete partition is always first and the one-block
/// partition last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: usize,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::from_block_of(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.block_of
    }
}

impl Partition {
    /// Accepts only canonical arrays.
    pub fn from_block_of(block_of: Vec<usize>) -> Result<Self> {
        let n = block_of.len();
        for (e, &r) in block_of.iter().enumerate() {
            if r > e || r >= n || block_of[r] != r {
                return Err(Error::TableError(format!(
                    "block_of[{e}] = {r} is not a canonical representative"
                )));
            }
        }
        Ok(Self::new_unchecked(block_of))
    }

    fn new_unchecked(block_of: Vec<usize>) -> Self {
        let blocks = block_of.iter().enumerate().filter(|&(e, &r)| e == r).count();
        Partition { block_of, blocks }
    }

    /// Canonicalises an arbitrary class assignment (`class[e]` any id).
    pub fn from_classes<T: Eq + std::hash::Hash + Clone>(class: &[T]) -> Self {
        let mut first = std::collections::HashMap::new();
        let block_of = class
            .iter()
            .enumerate()
            .map(|(e, c)| *first.entry(c.clone()).or_insert(e))
            .collect();
        Self::new_unchecked(block_of)
    }

    /// Builds from explicit blocks, which must cover `0..n` exactly once.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut class = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= n {
                    return Err(Error::TableError(format!("element {e} out of range")));
                }
                if class[e] != usize::MAX {
                    return Err(Error::TableError(format!("element {e} in two blocks")));
                }
                class[e] = b;
            }
        }
        if let Some(e) = class.iter().position(|&c| c == usize::MAX) {
            return Err(Error::TableError(format!("element {e} in no block")));
        }
        Ok(Self::from_classes(&class))
    }

    pub fn discrete(n: usize) -> Self {
        Self::new_unchecked((0..n).collect())
    }

    pub fn full(n: usize) -> Self {
        Self::new_unchecked(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn rep(&self, e: usize) -> usize {
        self.block_of[e]
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks == self.len()
    }

    pub fn is_full(&self) -> bool {
        self.blocks <= 1
    }

    /// Blocks in order of their representatives, each sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut index = vec![usize::MAX; self.len()];
        let mut out: Vec<Vec<usize>> = Vec::with_capacity(self.blocks);
        for (e, &r) in self.block_of.iter().enumerate() {
            if index[r] == usize::MAX {
                index[r] = out.len();
                out.push(Vec::new());
            }
            out[index[r]].push(e);
        }
        out
    }

    /// Index of each element's block in [`Partition::blocks`] order.
    pub fn block_indices(&self) -> Vec<usize> {
        let mut index = vec![usize::MAX; self.len()];
        let mut next = 0;
        self.block_of
            .iter()
            .map(|&r| {
                if index[r] == usize::MAX {
                    index[r] = next;
                    next += 1;
                }
                index[r]
            })
            .collect()
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Partition) -> bool {
        self.block_of
            .iter()
            .enumerate()
            .all(|(e, &r)| other.block_of[e] == other.block_of[r])
    }

    /// Common refinement (intersection of the relations).
    pub fn meet(&self, other: &Partition) -> Partition {
        let pairs: Vec<(usize, usize)> = self
            .block_of
            .iter()
            .zip(&other.block_of)
            .map(|(&a, &b)| (a, b))
            .collect();
        Self::from_classes(&pairs)
    }

    /// Join in the lattice of equivalences (transitive closure of the union).
    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.len());
        for e in 0..self.len() {
            uf.union(e, self.block_of[e]);
            uf.union(e, other.block_of[e]);
        }
        uf.to_partition()
    }

    fn cmp_canonical(&self, other: &Self) -> Ordering {
        other
            .blocks
            .cmp(&self.blocks)
            .then_with(|| self.block_of.cmp(&other.block_of))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_canonical(other)
    }
}

/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn from_partition(p: &Partition) -> Self {
        let mut uf = UnionFind::new(p.len());
        for (e, &r) in p.block_of().iter().enumerate() {
            uf.union(e, r);
        }
        uf
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; `false` if they were already one.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn to_partition(&mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|e| self.find(e)).collect();
        Partition::from_classes(&roots)
    }
}
