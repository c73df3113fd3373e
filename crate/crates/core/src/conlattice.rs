//! The full congruence lattice of a finite algebra.

use std::collections::{HashMap, HashSet};

use crate::algebra::{AlgebraId, FiniteAlgebra};
use crate::congruence::{compose, principal_congruence, Congruence};
use crate::partition::Partition;
use crate::{par, Config, Error, Result};

/// Largest carrier the brute-force oracle accepts (Bell(9) = 21147).
pub const BRUTE_FORCE_MAX: usize = 9;

/// Con(A) with its order and operation tables.
///
/// Elements are sorted canonically (more blocks first), so index 0 is Δ and
/// the last index is ∇.
#[derive(Debug, Clone)]
pub struct ConLattice {
    algebra: AlgebraId,
    carrier: usize,
    elements: Vec<Congruence>,
    index: HashMap<Partition, usize>,
    leq: Vec<bool>,
    join: Vec<u32>,
    meet: Vec<u32>,
    delta: usize,
    nabla: usize,
}

pub fn all_congruences(alg: &FiniteAlgebra) -> Result<ConLattice> {
    all_congruences_with(alg, &Config::default())
}

/// Enumerates Con(A): principal congruences closed under join.
///
/// For algebras with a lattice reduct only covering pairs are used as seeds,
/// since Cg(a, b) is the join of Cg over any maximal chain from `a ∧ b` to
/// `a ∨ b`. Joins are taken in the partition lattice, which agrees with the
/// congruence join because Con(A) is closed under equivalence joins.
pub fn all_congruences_with(alg: &FiniteAlgebra, cfg: &Config) -> Result<ConLattice> {
    let n = alg.size();
    cfg.check_carrier(n)?;
    let principals = seed_principals(alg, cfg);

    let mut all = vec![Partition::discrete(n)];
    let mut seen: HashSet<Partition> = all.iter().cloned().collect();
    for p in &principals {
        if seen.insert(p.clone()) {
            all.push(p.clone());
        }
    }
    // Every congruence is a join of principals, so joining each new element
    // with every principal reaches the whole lattice.
    let mut next = 0;
    while next < all.len() {
        let batch: Vec<Partition> = all[next..].to_vec();
        next = all.len();
        let joined: Vec<Vec<Partition>> = par::map(cfg, &batch, |theta| {
            principals.iter().map(|p| theta.join(p)).collect()
        });
        for j in joined.into_iter().flatten() {
            if seen.insert(j.clone()) {
                all.push(j);
                if all.len() > cfg.max_con {
                    return Err(Error::SizeCap {
                        what: "congruence lattice",
                        limit: cfg.max_con,
                        actual: all.len(),
                    });
                }
            }
        }
    }
    Ok(ConLattice::from_partitions_with(alg.id(), all, cfg))
}

/// Distinct principal congruences of the seed pairs, sorted. Every
/// congruence is a join of these.
fn seed_principals(alg: &FiniteAlgebra, cfg: &Config) -> Vec<Partition> {
    let n = alg.size();
    let seeds: Vec<(usize, usize)> = if alg.kind().is_lattice() {
        alg.covers()
    } else {
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
    };
    let mut principals: Vec<Partition> = par::map(cfg, &seeds, |&(a, b)| {
        principal_congruence(alg, a, b).partition().clone()
    });
    principals.sort();
    principals.dedup();
    principals
}

/// Rebuilds Con(A) from a stored list of partitions (for instance a cache
/// entry) without re-running the enumeration.
///
/// The list is accepted only if every member is a congruence of `alg`, Δ and
/// every seed principal congruence are present, and the list is closed under
/// join. Since every congruence is a join of seed principals, that pins the
/// list down to exactly Con(A).
pub fn con_from_partitions_checked(
    alg: &FiniteAlgebra,
    partitions: Vec<Partition>,
    cfg: &Config,
) -> Result<ConLattice> {
    let n = alg.size();
    cfg.check_carrier(n)?;
    for p in &partitions {
        if p.len() != n {
            return Err(Error::NotACongruence(format!(
                "stored partition has {} elements, algebra has {n}",
                p.len()
            )));
        }
        Congruence::new(alg, p.clone())?;
    }
    let set: HashSet<&Partition> = partitions.iter().collect();
    let missing = |what: &str| Error::NotACongruence(format!("stored lattice is missing {what}"));
    if !set.contains(&Partition::discrete(n)) {
        return Err(missing("the identity congruence"));
    }
    if seed_principals(alg, cfg).iter().any(|p| !set.contains(p)) {
        return Err(missing("a principal congruence"));
    }
    for p in &partitions {
        for q in &partitions {
            if !set.contains(&p.join(q)) {
                return Err(missing("a join"));
            }
        }
    }
    Ok(ConLattice::from_partitions_with(alg.id(), partitions, cfg))
}

/// Every set partition of the carrier that is compatible with all
/// operations, sorted canonically. An oracle independent of the closure code.
pub fn brute_force_congruences(alg: &FiniteAlgebra) -> Result<Vec<Congruence>> {
    let n = alg.size();
    if n > BRUTE_FORCE_MAX {
        return Err(Error::SizeCap {
            what: "brute-force carrier",
            limit: BRUTE_FORCE_MAX,
            actual: n,
        });
    }
    let mut out = Vec::new();
    // restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[..i])
    let mut rgs = vec![0usize; n];
    loop {
        if compatible(alg, &rgs) {
            out.push(Congruence::trusted(alg.id(), Partition::from_classes(&rgs)));
        }
        let mut i = n;
        loop {
            if i <= 1 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            let max_before = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_before {
                rgs[i] += 1;
                for r in &mut rgs[i + 1..] {
                    *r = 0;
                }
                break;
            }
        }
    }
}

/// Compatibility of a class assignment, checked one argument position at a
/// time over all pairs in the same class. Position-wise compatibility implies
/// compatibility for whole tuples by transitivity.
fn compatible(alg: &FiniteAlgebra, class: &[usize]) -> bool {
    let n = alg.size();
    for (oi, op) in alg.operations().iter().enumerate() {
        let k = op.arity();
        if k == 0 {
            continue;
        }
        let mut args = vec![0usize; k];
        for a in 0..n {
            for b in a + 1..n {
                if class[a] != class[b] {
                    continue;
                }
                for pos in 0..k {
                    for flat in 0..n.pow(k as u32) {
                        let mut rest = flat;
                        for slot in args.iter_mut().rev() {
                            *slot = rest % n;
                            rest /= n;
                        }
                        if args[pos] != a {
                            continue;
                        }
                        let fa = alg.apply(oi, &args);
                        args[pos] = b;
                        let fb = alg.apply(oi, &args);
                        if class[fa] != class[fb] {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

impl ConLattice {
    /// Builds the lattice from a list of congruence partitions of one algebra.
    /// The list must already be closed under join and meet.
    pub fn from_partitions(algebra: AlgebraId, partitions: Vec<Partition>) -> Self {
        Self::from_partitions_with(algebra, partitions, &Config::default())
    }

    pub fn from_partitions_with(
        algebra: AlgebraId,
        mut partitions: Vec<Partition>,
        cfg: &Config,
    ) -> Self {
        partitions.sort();
        partitions.dedup();
        let m = partitions.len();
        let carrier = partitions.first().map_or(0, |p| p.len());
        let index: HashMap<Partition, usize> = partitions
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let rows: Vec<(Vec<bool>, Vec<u32>, Vec<u32>)> = par::map_range(cfg, m, |i| {
            let p = &partitions[i];
            let mut leq = Vec::with_capacity(m);
            let mut join = Vec::with_capacity(m);
            let mut meet = Vec::with_capacity(m);
            for q in &partitions {
                leq.push(p.refines(q));
                join.push(index[&p.join(q)] as u32);
                meet.push(index[&p.meet(q)] as u32);
            }
            (leq, join, meet)
        });
        let mut leq = Vec::with_capacity(m * m);
        let mut join = Vec::with_capacity(m * m);
        let mut meet = Vec::with_capacity(m * m);
        for (l, j, mt) in rows {
            leq.extend(l);
            join.extend(j);
            meet.extend(mt);
        }
        let elements = partitions
            .into_iter()
            .map(|p| Congruence::trusted(algebra, p))
            .collect();
        ConLattice {
            algebra,
            carrier,
            elements,
            index,
            leq,
            join,
            meet,
            delta: 0,
            nabla: m - 1,
        }
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Congruence] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Congruence {
        &self.elements[i]
    }

    pub fn index_of(&self, c: &Congruence) -> Option<usize> {
        if c.parent() != self.algebra {
            return None;
        }
        self.index.get(c.partition()).copied()
    }

    pub fn index_of_checked(&self, c: &Congruence) -> Result<usize> {
        if c.parent() != self.algebra {
            return Err(Error::ParentMismatch);
        }
        self.index
            .get(c.partition())
            .copied()
            .ok_or_else(|| Error::NotACongruence(format!("{c} is not in this lattice")))
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn nabla(&self) -> usize {
        self.nabla
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j] as usize
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j] as usize
    }

    /// Covering pairs `(i, j)` of the lattice order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        let mut out = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if i != j
                    && self.leq(i, j)
                    && !(0..m).any(|k| k != i && k != j && self.leq(i, k) && self.leq(k, j))
                {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Distributivity by exhaustive triple scan.
    pub fn is_distributive(&self) -> bool {
        let m = self.len();
        (0..m).all(|a| {
            (0..m).all(|b| {
                (0..m).all(|c| {
                    self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))
                })
            })
        })
    }

    /// Every pair of congruences permutes.
    pub fn is_permutable(&self, cfg: &Config) -> bool {
        let m = self.len();
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .collect();
        par::all(cfg, &pairs, |&(i, j)| {
            let (a, b) = (&self.elements[i], &self.elements[j]);
            compose(a, b).unwrap() == compose(b, a).unwrap()
        })
    }

    pub fn is_arithmetical(&self, cfg: &Config) -> bool {
        self.is_distributive() && self.is_permutable(cfg)
    }

    /// Indices of the maximal proper congruences (coatoms).
    pub fn maximal(&self) -> Result<Vec<usize>> {
        if self.len() == 1 {
            return Err(Error::TrivialAlgebra);
        }
        Ok((0..self.len())
            .filter(|&i| i != self.nabla && self.covers_nabla(i))
            .collect())
    }

    fn covers_nabla(&self, i: usize) -> bool {
        (0..self.len()).all(|k| k == i || k == self.nabla || !self.leq(i, k))
    }

    /// Proper congruences θ such that α ∩ β ⊆ θ forces α ⊆ θ or β ⊆ θ.
    /// ∇ is excluded.
    pub fn prime(&self) -> Vec<usize> {
        let m = self.len();
        (0..m)
            .filter(|&t| {
                t != self.nabla
                    && (0..m).all(|a| {
                        (0..m).all(|b| {
                            !self.leq(self.meet(a, b), t) || self.leq(a, t) || self.leq(b, t)
                        })
                    })
            })
            .collect()
    }

    /// Intersection of the maximal congruences.
    pub fn radical(&self) -> Result<usize> {
        let max = self.maximal()?;
        Ok(max.iter().fold(self.nabla, |acc, &i| self.meet(acc, i)))
    }

    /// Exactly one maximal congruence. The trivial algebra has none.
    pub fn is_local(&self) -> bool {
        self.maximal().map(|m| m.len() == 1).unwrap_or(false)
    }

    /// Finitely many maximal congruences; always true at finite scale.
    pub fn is_semilocal(&self) -> bool {
        true
    }

    /// The principal up-set `[θ)` as indices.
    pub fn upset(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(i, j)).collect()
    }

    /// Whether `members` contains Δ and ∇ and is closed under join and meet.
    pub fn is_bounded_sublattice(&self, members: &[usize]) -> Result<()> {
        let set: HashSet<usize> = members.iter().copied().collect();
        if !set.contains(&self.delta) || !set.contains(&self.nabla) {
            return Err(Error::NotASublattice("must contain Δ and ∇".into()));
        }
        for &a in members {
            for &b in members {
                if !set.contains(&self.join(a, b)) {
                    return Err(Error::NotASublattice(format!(
                        "join of #{a} and #{b} is missing"
                    )));
                }
                if !set.contains(&self.meet(a, b)) {
                    return Err(Error::NotASublattice(format!(
                        "meet of #{a} and #{b} is missing"
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn is_congruence_distributive(alg: &FiniteAlgebra) -> Result<bool> {
    Ok(all_congruences(alg)?.is_distributive())
}

pub fn is_congruence_permutable(alg: &FiniteAlgebra) -> Result<bool> {
    Ok(all_congruences(alg)?.is_permutable(&Config::default()))
}

pub fn is_arithmetical(alg: &FiniteAlgebra) -> Result<bool> {
    Ok(all_congruences(alg)?.is_arithmetical(&Config::default()))
}

fn pick(cl: &ConLattice, idx: Vec<usize>) -> Vec<Congruence> {
    idx.into_iter().map(|i| cl.get(i).clone()).collect()
}

pub fn maximal_congruences(alg: &FiniteAlgebra) -> Result<Vec<Congruence>> {
    let cl = all_congruences(alg)?;
    let m = cl.maximal()?;
    Ok(pick(&cl, m))
}

pub fn prime_congruences(alg: &FiniteAlgebra) -> Result<Vec<Congruence>> {
    let cl = all_congruences(alg)?;
    let p = cl.prime();
    Ok(pick(&cl, p))
}

pub fn radical(alg: &FiniteAlgebra) -> Result<Congruence> {
    let cl = all_congruences(alg)?;
    Ok(cl.get(cl.radical()?).clone())
}

pub fn is_local(alg: &FiniteAlgebra) -> Result<bool> {
    Ok(all_congruences(alg)?.is_local())
}

pub fn is_semilocal(alg: &FiniteAlgebra) -> Result<bool> {
    Ok(all_congruences(alg)?.is_semilocal())
}
