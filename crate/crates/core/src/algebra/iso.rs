//! Isomorphism search by backtracking, for desk-scale algebras.

use super::FiniteAlgebra;

/// An isomorphism `a → b` as an index map, if one exists.
///
/// Operations are matched by name; kind tags are ignored. Candidates are
/// pruned by a per-element fingerprint and every fully-assigned operation
/// instance is checked as soon as its arguments are mapped.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<usize>> {
    if a.size() != b.size() || !a.signature().same_symbols(b.signature()) {
        return None;
    }
    let n = a.size();
    // op position in b for each op of a
    let op_map: Vec<usize> = a
        .operations()
        .iter()
        .map(|o| b.signature().position(o.name()).unwrap())
        .collect();
    let fa: Vec<Vec<usize>> = (0..n).map(|x| fingerprint(a, x, None)).collect();
    let fb: Vec<Vec<usize>> = (0..n)
        .map(|x| fingerprint(b, x, Some(&op_map)))
        .collect();
    let mut sa = fa.clone();
    let mut sb = fb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut fwd = vec![usize::MAX; n];
    let mut inv = vec![usize::MAX; n];
    let mut search = Search {
        a,
        b,
        op_map: &op_map,
        fa: &fa,
        fb: &fb,
        fwd: &mut fwd,
        inv: &mut inv,
    };
    if search.extend(0) {
        Some(fwd)
    } else {
        None
    }
}

pub fn is_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    find_isomorphism(a, b).is_some()
}

fn fingerprint(alg: &FiniteAlgebra, x: usize, op_map: Option<&[usize]>) -> Vec<usize> {
    let n = alg.size();
    let count = alg.operations().len();
    let order: Vec<usize> = match op_map {
        // visit b's ops in a's order so fingerprints line up
        Some(m) => m.to_vec(),
        None => (0..count).collect(),
    };
    let mut out = Vec::new();
    for op in order {
        match alg.operations()[op].arity() {
            0 => out.push((alg.apply(op, &[]) == x) as usize),
            1 => {
                out.push((alg.apply(op, &[x]) == x) as usize);
                out.push((0..n).filter(|&y| alg.apply(op, &[y]) == x).count());
            }
            2 => {
                out.push((alg.apply(op, &[x, x]) == x) as usize);
                out.push((0..n).filter(|&y| alg.apply(op, &[x, y]) == x).count());
                out.push((0..n).filter(|&y| alg.apply(op, &[y, x]) == x).count());
                out.push(
                    (0..n * n)
                        .filter(|&i| alg.apply(op, &[i / n, i % n]) == x)
                        .count(),
                );
            }
            _ => {}
        }
    }
    out
}

struct Search<'a> {
    a: &'a FiniteAlgebra,
    b: &'a FiniteAlgebra,
    op_map: &'a [usize],
    fa: &'a [Vec<usize>],
    fb: &'a [Vec<usize>],
    fwd: &'a mut Vec<usize>,
    inv: &'a mut Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, x: usize) -> bool {
        let n = self.a.size();
        if x == n {
            return self.full_check();
        }
        for y in 0..n {
            if self.inv[y] != usize::MAX || self.fa[x] != self.fb[y] {
                continue;
            }
            self.fwd[x] = y;
            self.inv[y] = x;
            if self.consistent(x) && self.extend(x + 1) {
                return true;
            }
            self.fwd[x] = usize::MAX;
            self.inv[y] = usize::MAX;
        }
        false
    }

    /// Checks operation instances of arity <= 2 whose arguments are all
    /// mapped and that involve `x`.
    fn consistent(&self, x: usize) -> bool {
        for (op, &bop) in self.op_map.iter().enumerate() {
            let arity = self.a.operations()[op].arity();
            let check = |args: &[usize]| {
                let r = self.a.apply(op, args);
                let mapped: Vec<usize> = args.iter().map(|&e| self.fwd[e]).collect();
                let rb = self.b.apply(bop, &mapped);
                match (self.fwd[r], self.inv[rb]) {
                    (usize::MAX, usize::MAX) => true,
                    (fr, _) if fr != usize::MAX => fr == rb,
                    // rb is already the image of another element
                    _ => false,
                }
            };
            let ok = match arity {
                0 => check(&[]),
                1 => check(&[x]),
                2 => (0..=x).all(|y| check(&[x, y]) && check(&[y, x])),
                _ => true,
            };
            if !ok {
                return false;
            }
        }
        true
    }

    fn full_check(&self) -> bool {
        let n = self.a.size();
        for (op, &bop) in self.op_map.iter().enumerate() {
            let k = self.a.operations()[op].arity();
            let mut args = vec![0usize; k];
            for flat in 0..n.pow(k as u32) {
                let mut rest = flat;
                for slot in args.iter_mut().rev() {
                    *slot = rest % n;
                    rest /= n;
                }
                let mapped: Vec<usize> = args.iter().map(|&e| self.fwd[e]).collect();
                if self.fwd[self.a.apply(op, &args)] != self.b.apply(bop, &mapped) {
                    return false;
                }
            }
        }
        true
    }
}
