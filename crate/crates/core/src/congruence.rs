//! Congruences, Mal'cev closure, and relational composition.

use std::fmt;

use crate::algebra::{AlgebraId, FiniteAlgebra};
use crate::partition::{Partition, UnionFind};
use crate::{Error, Result};

/// A partition of an algebra's carrier that is compatible with every
/// operation, tagged with the identity of that algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    partition: Partition,
    parent: AlgebraId,
}

impl PartialOrd for Congruence {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Congruence {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.partition
            .cmp(&other.partition)
            .then(self.parent.cmp(&other.parent))
    }
}

impl Congruence {
    /// Checks compatibility and reports the first violating operation instance.
    pub fn new(alg: &FiniteAlgebra, partition: Partition) -> Result<Self> {
        if partition.len() != alg.size() {
            return Err(Error::NotACongruence(format!(
                "partition has {} elements, algebra has {}",
                partition.len(),
                alg.size()
            )));
        }
        if let Some(msg) = compatibility_violation(alg, &partition) {
            return Err(Error::NotACongruence(msg));
        }
        Ok(Congruence {
            partition,
            parent: alg.id(),
        })
    }

    pub(crate) fn trusted(parent: AlgebraId, partition: Partition) -> Self {
        Congruence { partition, parent }
    }

    /// Δ: every element in its own block.
    pub fn delta(alg: &FiniteAlgebra) -> Self {
        Self::trusted(alg.id(), Partition::discrete(alg.size()))
    }

    /// ∇: a single block.
    pub fn nabla(alg: &FiniteAlgebra) -> Self {
        Self::trusted(alg.id(), Partition::full(alg.size()))
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn parent(&self) -> AlgebraId {
        self.parent
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.partition.same(a, b)
    }

    pub fn is_delta(&self) -> bool {
        self.partition.is_discrete()
    }

    pub fn is_nabla(&self) -> bool {
        self.partition.is_full()
    }

    pub fn num_blocks(&self) -> usize {
        self.partition.num_blocks()
    }

    /// `self ⊆ other`.
    pub fn is_below(&self, other: &Congruence) -> bool {
        self.partition.refines(&other.partition)
    }

    pub(crate) fn check_parent(&self, alg: &FiniteAlgebra) -> Result<()> {
        if self.parent == alg.id() {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// Label syntax: blocks separated by `|`, labels by `,` (e.g. `0,m|1`).
    pub fn format(&self, alg: &FiniteAlgebra) -> String {
        self.partition
            .blocks()
            .iter()
            .map(|b| alg.format_set(b))
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Parses the label syntax of [`Congruence::format`]. Every element must
    /// appear exactly once. Separators inside parentheses are part of the
    /// label, so product labels like `(a,1)` work unquoted.
    pub fn parse(alg: &FiniteAlgebra, text: &str) -> Result<Self> {
        let mut class = vec![usize::MAX; alg.size()];
        for (b, block) in split_top_level(text, '|').into_iter().enumerate() {
            for label in split_top_level(block, ',') {
                let label = label.trim();
                if label.is_empty() {
                    return Err(Error::ParseCongruence(format!("empty label in {text:?}")));
                }
                let e = alg
                    .index_of(label)
                    .ok_or_else(|| Error::ParseCongruence(format!("unknown label {label:?}")))?;
                if class[e] != usize::MAX {
                    return Err(Error::ParseCongruence(format!("{label:?} listed twice")));
                }
                class[e] = b;
            }
        }
        if let Some(e) = class.iter().position(|&c| c == usize::MAX) {
            return Err(Error::ParseCongruence(format!(
                "{:?} is not in any block",
                alg.label(e)
            )));
        }
        Congruence::new(alg, Partition::from_classes(&class))
    }
}

fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .partition
            .blocks()
            .iter()
            .map(|b| b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", blocks.join("|"))
    }
}

/// Visits every argument tuple of arity `k` with position `pos` left free.
fn for_each_completion(n: usize, k: usize, pos: usize, mut visit: impl FnMut(&mut [usize])) {
    let mut args = vec![0usize; k];
    let count = n.pow(k as u32 - 1);
    for flat in 0..count {
        let mut rest = flat;
        for (i, slot) in args.iter_mut().enumerate().rev() {
            if i == pos {
                continue;
            }
            *slot = rest % n;
            rest /= n;
        }
        visit(&mut args);
    }
}

/// First operation instance whose translation of a pair in `p` leaves `p`.
///
/// Checking one argument position at a time against each element's block
/// representative is enough: pairs `(e, rep(e))` generate the partition.
fn compatibility_violation(alg: &FiniteAlgebra, p: &Partition) -> Option<String> {
    let n = alg.size();
    for (oi, op) in alg.operations().iter().enumerate() {
        let k = op.arity();
        for pos in 0..k {
            for e in 0..n {
                let r = p.rep(e);
                if r == e {
                    continue;
                }
                let mut bad = None;
                for_each_completion(n, k, pos, |args| {
                    if bad.is_some() {
                        return;
                    }
                    args[pos] = e;
                    let fe = alg.apply(oi, args);
                    let with_e = args.to_vec();
                    args[pos] = r;
                    let fr = alg.apply(oi, args);
                    if !p.same(fe, fr) {
                        bad = Some((with_e, args.to_vec(), fe, fr));
                    }
                });
                if let Some((x, y, fx, fy)) = bad {
                    let show = |v: &[usize]| alg.format_set(v);
                    return Some(format!(
                        "{}({}) = {} and {}({}) = {} are in different blocks",
                        op.name(),
                        show(&x),
                        alg.label(fx),
                        op.name(),
                        show(&y),
                        alg.label(fy)
                    ));
                }
            }
        }
    }
    None
}

/// Queue-driven Mal'cev closure over a union-find.
///
/// Every union that actually merges two classes is queued; popping `(x, y)`
/// merges `f(…x…)` with `f(…y…)` for every operation, argument position and
/// completion of the remaining arguments. At most `n - 1` unions succeed, so
/// the loop terminates.
pub(crate) struct Closure<'a> {
    alg: &'a FiniteAlgebra,
    uf: UnionFind,
    queue: Vec<(usize, usize)>,
}

impl<'a> Closure<'a> {
    pub(crate) fn new(alg: &'a FiniteAlgebra) -> Self {
        Closure {
            alg,
            uf: UnionFind::new(alg.size()),
            queue: Vec::new(),
        }
    }

    pub(crate) fn merge(&mut self, a: usize, b: usize) {
        if self.uf.union(a, b) {
            self.queue.push((a, b));
        }
    }

    pub(crate) fn run(mut self) -> Partition {
        let n = self.alg.size();
        while let Some((x, y)) = self.queue.pop() {
            for op in self.alg.operations() {
                let t = op.table();
                match op.arity() {
                    0 => {}
                    1 => self.merge(t[x] as usize, t[y] as usize),
                    2 => {
                        for z in 0..n {
                            self.merge(t[x * n + z] as usize, t[y * n + z] as usize);
                        }
                        if !op.is_commutative() {
                            for z in 0..n {
                                self.merge(t[z * n + x] as usize, t[z * n + y] as usize);
                            }
                        }
                    }
                    k => {
                        for pos in 0..k {
                            let mut pairs = Vec::new();
                            for_each_completion(n, k, pos, |args| {
                                let idx = |args: &[usize]| {
                                    args.iter().fold(0usize, |acc, &a| acc * n + a)
                                };
                                args[pos] = x;
                                let fx = t[idx(args)] as usize;
                                args[pos] = y;
                                let fy = t[idx(args)] as usize;
                                pairs.push((fx, fy));
                            });
                            for (a, b) in pairs {
                                self.merge(a, b);
                            }
                        }
                    }
                }
            }
        }
        self.uf.to_partition()
    }
}

/// Cg(a, b): the least congruence identifying `a` and `b`.
pub fn principal_congruence(alg: &FiniteAlgebra, a: usize, b: usize) -> Congruence {
    cg_generated(alg, &[(a, b)])
}

/// The congruence generated by a set of pairs.
pub fn cg_generated(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Congruence {
    let mut c = Closure::new(alg);
    for &(a, b) in pairs {
        c.merge(a, b);
    }
    Congruence::trusted(alg.id(), c.run())
}

/// θ ∨ φ = Cg(θ ∪ φ).
pub fn join(alg: &FiniteAlgebra, theta: &Congruence, phi: &Congruence) -> Result<Congruence> {
    theta.check_parent(alg)?;
    phi.check_parent(alg)?;
    let pairs: Vec<(usize, usize)> = (0..alg.size())
        .flat_map(|e| [(e, theta.partition.rep(e)), (e, phi.partition.rep(e))])
        .collect();
    Ok(cg_generated(alg, &pairs))
}

/// θ ∩ φ: the common refinement, always a congruence.
pub fn meet(theta: &Congruence, phi: &Congruence) -> Result<Congruence> {
    if theta.parent != phi.parent {
        return Err(Error::ParentMismatch);
    }
    Ok(Congruence::trusted(
        theta.parent,
        theta.partition.meet(&phi.partition),
    ))
}

/// A binary relation on a carrier as an `n × n` boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn from_partition(p: &Partition) -> Self {
        let n = p.len();
        let bits = (0..n * n).map(|i| p.same(i / n, i % n)).collect();
        Relation { n, bits }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits[a * self.n + b] = true;
    }

    pub fn is_full(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn transpose(&self) -> Relation {
        let n = self.n;
        let bits = (0..n * n).map(|i| self.bits[(i % n) * n + i / n]).collect();
        Relation { n, bits }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// `self ∘ other` with the convention `(a, b) ∈ ρ ∘ σ` iff some `x`
    /// has `(a, x) ∈ σ` and `(x, b) ∈ ρ`.
    pub fn compose(&self, other: &Relation) -> Relation {
        let n = self.n;
        let mut out = Relation::empty(n);
        for a in 0..n {
            for x in 0..n {
                if other.contains(a, x) {
                    for b in 0..n {
                        if self.contains(x, b) {
                            out.bits[a * n + b] = true;
                        }
                    }
                }
            }
        }
        out
    }

    /// The relation as a partition, if it is an equivalence.
    pub fn as_partition(&self) -> Option<Partition> {
        let n = self.n;
        let reflexive = (0..n).all(|a| self.contains(a, a));
        if !reflexive || !self.is_symmetric() || self.compose(self) != *self {
            return None;
        }
        let class: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&b| self.contains(a, b)).unwrap())
            .collect();
        Some(Partition::from_classes(&class))
    }

    /// The relation as a congruence of `alg`, if it is one.
    pub fn as_congruence(&self, alg: &FiniteAlgebra) -> Option<Congruence> {
        self.as_partition()
            .and_then(|p| Congruence::new(alg, p).ok())
    }
}

/// θ ∘ φ = {(a, b) | ∃x. (a, x) ∈ φ ∧ (x, b) ∈ θ}.
///
/// Note the orientation: the right-hand argument is applied first. For
/// partitions, `(a, b)` is in the composite iff the φ-block of `a` meets the
/// θ-block of `b`.
pub fn compose(theta: &Congruence, phi: &Congruence) -> Result<Relation> {
    if theta.parent != phi.parent {
        return Err(Error::ParentMismatch);
    }
    let n = theta.partition.len();
    let mut meets = vec![false; n * n];
    for x in 0..n {
        meets[phi.partition.rep(x) * n + theta.partition.rep(x)] = true;
    }
    let mut out = Relation::empty(n);
    for a in 0..n {
        let pa = phi.partition.rep(a);
        for b in 0..n {
            if meets[pa * n + theta.partition.rep(b)] {
                out.insert(a, b);
            }
        }
    }
    Ok(out)
}

/// θ ∘ φ = ∇, i.e. every φ-block meets every θ-block.
pub fn composes_to_full(theta: &Congruence, phi: &Congruence) -> Result<bool> {
    if theta.parent != phi.parent {
        return Err(Error::ParentMismatch);
    }
    let (pt, pp) = (&theta.partition, &phi.partition);
    let mut seen = std::collections::HashSet::new();
    for x in 0..pt.len() {
        seen.insert((pp.rep(x), pt.rep(x)));
    }
    Ok(seen.len() == pt.num_blocks() * pp.num_blocks())
}

/// θ ∘ φ = φ ∘ θ.
pub fn permutes(theta: &Congruence, phi: &Congruence) -> Result<bool> {
    Ok(compose(theta, phi)? == compose(phi, theta)?)
}
