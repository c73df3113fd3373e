//! Small lattices: exhaustive enumeration up to isomorphism and seeded random
//! generation.
//!
//! Every lattice on `n + 1 >= 3` elements arises from one on `n` elements by
//! adding a new coatom below the top whose strict down-set is an order ideal
//! of the old lattice minus its top. Enumeration grows level by level and
//! keeps one canonical representative per isomorphism class.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{from_order, FiniteAlgebra, Kind};
use crate::{par, Config, Error, Result};

/// Largest size [`lattices`] will enumerate.
pub const MAX_ENUMERATED: usize = 9;

/// Number of lattices on `n` elements up to isomorphism, `n = 0..=9`.
pub const LATTICE_COUNTS: [usize; 10] = [0, 1, 1, 1, 2, 5, 15, 53, 222, 1078];

/// A bounded poset with bottom `0` and top `n - 1`, stored as up-set masks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Shape {
    up: Vec<u32>,
}

impl Shape {
    fn chain(n: usize) -> Shape {
        Shape {
            up: (0..n).map(|i| ((1u32 << n) - 1) & !((1u32 << i) - 1)).collect(),
        }
    }

    fn len(&self) -> usize {
        self.up.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    fn down(&self) -> Vec<u32> {
        let n = self.len();
        (0..n)
            .map(|b| (0..n).filter(|&a| self.leq(a, b)).fold(0, |m, a| m | 1 << a))
            .collect()
    }

    fn is_lattice(&self) -> bool {
        let n = self.len();
        let down = self.down();
        let has_extreme = |bounds: u32, cone: &[u32]| {
            (0..n).any(|u| bounds >> u & 1 == 1 && bounds & !cone[u] == 0)
        };
        (0..n).all(|a| {
            (a + 1..n).all(|b| {
                has_extreme(self.up[a] & self.up[b], &self.up)
                    && has_extreme(down[a] & down[b], &down)
            })
        })
    }

    /// Adds a coatom whose strict down-set is `ideal` (a mask over the old
    /// non-top elements). The old top moves to index `n`.
    fn with_coatom(&self, ideal: u32) -> Shape {
        let n = self.len();
        let top_old = n - 1;
        let c = n - 1;
        let top = n;
        let mut up = Vec::with_capacity(n + 1);
        for a in 0..top_old {
            let mut m = self.up[a] & !(1 << top_old);
            m |= 1 << top;
            if ideal >> a & 1 == 1 {
                m |= 1 << c;
            }
            up.push(m);
        }
        up.push(1 << c | 1 << top);
        up.push(1 << top);
        Shape { up }
    }

    /// Down-closed masks over the non-top elements that contain the bottom.
    fn ideals(&self) -> Vec<u32> {
        let n = self.len();
        let inner = n - 1;
        let down = self.down();
        (1u32..1 << inner)
            .filter(|&m| m & 1 == 1)
            .filter(|&m| (0..inner).all(|a| m >> a & 1 == 0 || down[a] & !m == 0))
            .collect()
    }

    /// Lexicographically least relabelling over all linear extensions.
    fn canonical(&self) -> Shape {
        let n = self.len();
        if n <= 2 {
            return self.clone();
        }
        let down = self.down();
        let mut best: Option<Vec<u32>> = None;
        let mut order = vec![0usize];
        let mut placed = 1u32 | 1 << (n - 1);
        self.extend(&down, &mut order, &mut placed, &mut best);
        Shape {
            up: best.expect("a linear extension exists"),
        }
    }

    fn extend(&self, down: &[u32], order: &mut Vec<usize>, placed: &mut u32, best: &mut Option<Vec<u32>>) {
        let n = self.len();
        if order.len() == n - 1 {
            order.push(n - 1);
            let mut pos = vec![0usize; n];
            for (i, &e) in order.iter().enumerate() {
                pos[e] = i;
            }
            let mut up = vec![0u32; n];
            for a in 0..n {
                for b in 0..n {
                    if self.leq(a, b) {
                        up[pos[a]] |= 1 << pos[b];
                    }
                }
            }
            order.pop();
            if best.as_ref().is_none_or(|b| up < *b) {
                *best = Some(up);
            }
            return;
        }
        for e in 1..n - 1 {
            let strict = down[e] & !(1 << e);
            if *placed >> e & 1 == 0 && strict & !*placed == 0 {
                *placed |= 1 << e;
                order.push(e);
                self.extend(down, order, placed, best);
                order.pop();
                *placed &= !(1 << e);
            }
        }
    }

    fn to_algebra(&self, name: String) -> Result<FiniteAlgebra> {
        let n = self.len();
        let labels = element_labels(n);
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|a| (0..n).map(|b| self.leq(a, b)).collect())
            .collect();
        from_order(name, Kind::BoundedLattice, labels, &leq, Vec::new())
    }
}

/// `0, a, b, ..., 1` for the carrier of an enumerated lattice.
fn element_labels(n: usize) -> Vec<String> {
    match n {
        1 => vec!["0".into()],
        _ => std::iter::once("0".to_string())
            .chain((0..n - 2).map(|i| {
                let c = (b'a' + (i % 26) as u8) as char;
                if i < 26 {
                    c.to_string()
                } else {
                    format!("{c}{}", i / 26)
                }
            }))
            .chain(std::iter::once("1".to_string()))
            .collect(),
    }
}

fn shapes(n: usize, cfg: &Config) -> Vec<Shape> {
    if n <= 2 {
        return vec![Shape::chain(n)];
    }
    let smaller = shapes(n - 1, cfg);
    let grown: Vec<Vec<Shape>> = par::map(cfg, &smaller, |s| {
        s.ideals()
            .into_iter()
            .map(|i| s.with_coatom(i))
            .filter(Shape::is_lattice)
            .map(|s| s.canonical())
            .collect()
    });
    grown
        .into_iter()
        .flatten()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// All lattices on `n` elements, one per isomorphism class, in a fixed order.
/// Named `Lat{n}_{k}`.
pub fn lattices(n: usize) -> Result<Vec<FiniteAlgebra>> {
    lattices_with(n, &Config::default())
}

pub fn lattices_with(n: usize, cfg: &Config) -> Result<Vec<FiniteAlgebra>> {
    if n == 0 {
        return Err(Error::TableError("carrier must be non-empty".into()));
    }
    if n > MAX_ENUMERATED {
        return Err(Error::SizeCap {
            what: "enumerated lattice size",
            limit: MAX_ENUMERATED,
            actual: n,
        });
    }
    shapes(n, cfg)
        .iter()
        .enumerate()
        .map(|(k, s)| s.to_algebra(format!("Lat{n}_{k}")))
        .collect()
}

/// All lattices on `1..=max` elements up to isomorphism.
pub fn lattices_up_to(max: usize) -> Result<Vec<FiniteAlgebra>> {
    let cfg = Config::default();
    let mut out = Vec::new();
    for n in 1..=max {
        out.extend(lattices_with(n, &cfg)?);
    }
    Ok(out)
}

/// A random lattice on `n` elements, grown by repeatedly adding a coatom over
/// a uniformly drawn order ideal. Not uniform over isomorphism classes.
pub fn random_lattice<R: Rng>(n: usize, rng: &mut R) -> Result<FiniteAlgebra> {
    if n == 0 || n > 31 {
        return Err(Error::SizeCap {
            what: "random lattice size",
            limit: 31,
            actual: n,
        });
    }
    let mut shape = Shape::chain(n.min(2));
    while shape.len() < n {
        let ideals = shape.ideals();
        loop {
            let next = shape.with_coatom(ideals[rng.gen_range(0..ideals.len())]);
            if next.is_lattice() {
                shape = next;
                break;
            }
        }
    }
    shape.to_algebra(format!("Rand{n}"))
}

/// `count` random lattices with sizes drawn from `sizes`, reproducible from
/// `seed`. Named `Rand{n}_{i}`.
pub fn random_lattices(
    count: usize,
    sizes: std::ops::RangeInclusive<usize>,
    seed: u64,
) -> Result<Vec<FiniteAlgebra>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(sizes.clone());
            Ok(random_lattice(n, &mut rng)?.with_name(format!("Rand{n}_{i}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_isomorphic;

    #[test]
    fn counts_match_known_sequence() {
        for n in 1..=8 {
            assert_eq!(lattices(n).unwrap().len(), LATTICE_COUNTS[n], "n = {n}");
        }
    }

    #[test]
    fn representatives_are_pairwise_non_isomorphic() {
        let ls = lattices(6).unwrap();
        for i in 0..ls.len() {
            for j in i + 1..ls.len() {
                assert!(!is_isomorphic(&ls[i], &ls[j]));
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = lattices_with(6, &Config::sequential()).unwrap();
        let b = lattices_with(6, &Config::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_is_reproducible() {
        let a = random_lattices(10, 7..=8, 42).unwrap();
        let b = random_lattices(10, 7..=8, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|l| (7..=8).contains(&l.size())));
    }
}
