//! Shared sweep and naive reference implementations for the integration
//! tests. Nothing here calls the library's closure, composition or lifting
//! code; the oracles work directly on partitions and relation matrices.
#![allow(dead_code)]

use congrlab_core::enumerate::{lattices_up_to, random_lattices};
use congrlab_core::lifting::Analysis;
use congrlab_core::{FiniteAlgebra, Partition};

pub const SWEEP_SEED: u64 = 0x5eed_1a77;
pub const RANDOM_COUNT: usize = 200;

/// Every lattice on at most 6 elements plus 200 seeded random lattices on
/// 7 or 8 elements.
pub fn sweep() -> Vec<FiniteAlgebra> {
    let mut all = lattices_up_to(6).expect("enumeration");
    all.extend(random_lattices(RANDOM_COUNT, 7..=8, SWEEP_SEED).expect("random lattices"));
    all
}

pub type Matrix = Vec<Vec<bool>>;

pub fn matrix(p: &Partition) -> Matrix {
    let n = p.len();
    (0..n)
        .map(|a| (0..n).map(|b| p.rep(a) == p.rep(b)).collect())
        .collect()
}

/// θ ∘ φ = {(a, c) | ∃b: (a, b) ∈ φ, (b, c) ∈ θ}, by triple loop.
pub fn compose(theta: &Partition, phi: &Partition) -> Matrix {
    let (t, f) = (matrix(theta), matrix(phi));
    let n = t.len();
    (0..n)
        .map(|a| (0..n).map(|c| (0..n).any(|b| f[a][b] && t[b][c])).collect())
        .collect()
}

pub fn is_full(m: &Matrix) -> bool {
    m.iter().all(|r| r.iter().all(|&x| x))
}

pub fn meet(p: &Partition, q: &Partition) -> Partition {
    let n = p.len();
    let classes: Vec<(usize, usize)> = (0..n).map(|e| (p.rep(e), q.rep(e))).collect();
    Partition::from_classes(&classes)
}

/// Join as the transitive closure of the union, by repeated squaring.
pub fn join(p: &Partition, q: &Partition) -> Partition {
    let n = p.len();
    let (a, b) = (matrix(p), matrix(q));
    let mut r: Matrix = (0..n)
        .map(|i| (0..n).map(|j| a[i][j] || b[i][j]).collect())
        .collect();
    loop {
        let next: Matrix = (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|k| r[i][k] && r[k][j])).collect())
            .collect();
        if next == r {
            break;
        }
        r = next;
    }
    let classes: Vec<usize> = (0..n).map(|i| (0..n).find(|&j| r[i][j]).unwrap()).collect();
    Partition::from_classes(&classes)
}

pub fn leq(p: &Partition, q: &Partition) -> bool {
    let n = p.len();
    (0..n).all(|a| (0..n).all(|b| p.rep(a) != p.rep(b) || q.rep(a) == q.rep(b)))
}

/// Naive Con(A) data built only from the partitions in `an.con`.
pub struct Naive {
    pub parts: Vec<Partition>,
    pub delta: usize,
    pub nabla: usize,
}

impl Naive {
    pub fn new(an: &Analysis) -> Naive {
        let parts: Vec<Partition> = an.con.elements().iter().map(|c| c.partition().clone()).collect();
        let delta = parts.iter().position(|p| p.is_discrete()).unwrap();
        let nabla = parts.iter().position(|p| p.is_full()).unwrap();
        Naive { parts, delta, nabla }
    }

    pub fn find(&self, p: &Partition) -> usize {
        self.parts.iter().position(|q| q == p).expect("closed under the operation")
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.find(&join(&self.parts[i], &self.parts[j]))
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.find(&meet(&self.parts[i], &self.parts[j]))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        leq(&self.parts[i], &self.parts[j])
    }

    /// Complement of `i` within the interval [lo, ∇), if any.
    pub fn complement_above(&self, lo: usize, i: usize) -> Option<usize> {
        (0..self.parts.len())
            .find(|&j| self.leq(lo, j) && self.meet(i, j) == lo && self.join(i, j) == self.nabla)
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.parts.len())
            .filter(|&i| self.complement_above(self.delta, i).is_some())
            .collect()
    }

    /// α is a factor congruence iff some β has α ∩ β = Δ and α ∘ β = ∇.
    pub fn fc(&self) -> Vec<usize> {
        (0..self.parts.len())
            .filter(|&i| {
                (0..self.parts.len()).any(|j| {
                    self.meet(i, j) == self.delta && is_full(&compose(&self.parts[i], &self.parts[j]))
                })
            })
            .collect()
    }

    /// θ has FCLP iff every φ ≥ θ that is a factor congruence relative to θ
    /// (some ψ ≥ θ with φ ∩ ψ = θ and φ ∘ ψ = ∇) equals α ∨ θ for some
    /// α ∈ FC(A). Uses [θ) ≅ Con(A/θ) instead of building the quotient.
    pub fn fclp(&self, theta: usize, fc: &[usize]) -> bool {
        let m = self.parts.len();
        (0..m)
            .filter(|&phi| self.leq(theta, phi))
            .filter(|&phi| {
                (0..m).any(|psi| {
                    self.leq(theta, psi)
                        && self.meet(phi, psi) == theta
                        && is_full(&compose(&self.parts[phi], &self.parts[psi]))
                })
            })
            .all(|phi| fc.iter().any(|&a| self.join(a, theta) == phi))
    }

    /// As [`Naive::fclp`] with complements in [θ) and the Boolean center.
    pub fn cblp(&self, theta: usize, center: &[usize]) -> bool {
        let m = self.parts.len();
        (0..m)
            .filter(|&phi| self.leq(theta, phi) && self.complement_above(theta, phi).is_some())
            .all(|phi| center.iter().any(|&a| self.join(a, theta) == phi))
    }
}

pub fn names(alg: &FiniteAlgebra) -> String {
    format!("{} ({} elements)", alg.name(), alg.size())
}
