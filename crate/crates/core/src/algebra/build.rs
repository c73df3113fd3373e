//! Lattices from order data: cover relations or full order matrices.

use super::{FiniteAlgebra, Kind, OpSymbol, Signature, BOT, JOIN, MEET, TOP};
use crate::{Error, Result};

/// Builds a lattice-kind algebra from a Hasse diagram.
///
/// `cover` lists pairs `(lo, hi)` of element indices. The relation is checked
/// for cycles, closed reflexively and transitively, and join/meet tables are
/// synthesised from least upper and greatest lower bounds. `extra` operations
/// are appended after the lattice symbols (after `bot`/`top` for bounded
/// kinds) and validated together with them.
pub fn from_cover(
    name: impl Into<String>,
    kind: Kind,
    labels: Vec<String>,
    cover: &[(usize, usize)],
    extra: Vec<(OpSymbol, Vec<usize>)>,
) -> Result<FiniteAlgebra> {
    let n = labels.len();
    if let Some(&(a, b)) = cover.iter().find(|&&(a, b)| a >= n || b >= n) {
        return Err(Error::TableError(format!(
            "cover pair ({a}, {b}) outside the carrier"
        )));
    }
    let mut succ = vec![Vec::new(); n];
    for &(lo, hi) in cover {
        succ[lo].push(hi);
    }
    if let Some(e) = find_cycle(&succ) {
        return Err(Error::CyclicCover(labels[e].clone()));
    }
    // Reflexive-transitive closure by DFS from every element.
    let mut leq = vec![vec![false; n]; n];
    for start in 0..n {
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            if !leq[start][x] {
                leq[start][x] = true;
                stack.extend(succ[x].iter().copied());
            }
        }
    }
    from_order(name, kind, labels, &leq, extra)
}

/// Builds a lattice-kind algebra from a partial order given as a matrix
/// (`leq[a][b]` iff `a <= b`). The matrix must be reflexive, antisymmetric and
/// transitive.
pub fn from_order(
    name: impl Into<String>,
    kind: Kind,
    labels: Vec<String>,
    leq: &[Vec<bool>],
    extra: Vec<(OpSymbol, Vec<usize>)>,
) -> Result<FiniteAlgebra> {
    if !kind.is_lattice() {
        return Err(Error::KindError(format!(
            "order data only describes lattices, not {kind}"
        )));
    }
    let n = labels.len();
    if n == 0 {
        return Err(Error::TableError("carrier must be non-empty".into()));
    }
    let mut join = vec![0; n * n];
    let mut meet = vec![0; n * n];
    for a in 0..n {
        for b in a..n {
            let j = least(n, |u| leq[a][u] && leq[b][u], |u, v| leq[u][v]).ok_or_else(|| {
                Error::NotALattice {
                    left: labels[a].clone(),
                    right: labels[b].clone(),
                    missing: "least upper bound",
                }
            })?;
            let m = least(n, |u| leq[u][a] && leq[u][b], |u, v| leq[v][u]).ok_or_else(|| {
                Error::NotALattice {
                    left: labels[a].clone(),
                    right: labels[b].clone(),
                    missing: "greatest lower bound",
                }
            })?;
            join[a * n + b] = j;
            join[b * n + a] = j;
            meet[a * n + b] = m;
            meet[b * n + a] = m;
        }
    }
    let mut ops = vec![OpSymbol::new(JOIN, 2), OpSymbol::new(MEET, 2)];
    let mut tables = vec![join, meet];
    if kind >= Kind::BoundedLattice {
        let bot = (0..n).find(|&x| (0..n).all(|y| leq[x][y])).unwrap();
        let top = (0..n).find(|&x| (0..n).all(|y| leq[y][x])).unwrap();
        ops.push(OpSymbol::new(BOT, 0));
        ops.push(OpSymbol::new(TOP, 0));
        tables.push(vec![bot]);
        tables.push(vec![top]);
    }
    for (sym, table) in extra {
        if matches!(sym.name.as_str(), JOIN | MEET | BOT | TOP) {
            return Err(Error::Spec(format!(
                "operation {:?} is synthesised from the order and cannot be given",
                sym.name
            )));
        }
        ops.push(sym);
        tables.push(table);
    }
    let sig = Signature::new(kind, ops)?;
    FiniteAlgebra::new(name, labels, sig, tables)
}

/// The element `u` satisfying `member` that is below every other member
/// according to `below`.
fn least(
    n: usize,
    member: impl Fn(usize) -> bool,
    below: impl Fn(usize, usize) -> bool,
) -> Option<usize> {
    let members: Vec<usize> = (0..n).filter(|&u| member(u)).collect();
    members
        .iter()
        .copied()
        .find(|&u| members.iter().all(|&v| below(u, v)))
}

fn find_cycle(succ: &[Vec<usize>]) -> Option<usize> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let n = succ.len();
    let mut mark = vec![Mark::New; n];
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Active;
        while let Some(top) = stack.len().checked_sub(1) {
            let (x, i) = stack[top];
            if i < succ[x].len() {
                let y = succ[x][i];
                stack[top].1 += 1;
                match mark[y] {
                    Mark::Active => return Some(y),
                    Mark::New => {
                        mark[y] = Mark::Active;
                        stack.push((y, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                mark[x] = Mark::Done;
                stack.pop();
            }
        }
    }
    None
}
