//! Duals, direct products, ordinal sums and sublattices.

use std::collections::HashSet;

use super::{
    AlgebraId, FiniteAlgebra, Kind, OpSymbol, Signature, BOT, IMPLIES, JOIN, MEET, TIMES, TOP,
};
use crate::{Config, Error, Result};

/// Replaces the labels, keeping every table.
pub fn relabel(alg: &FiniteAlgebra, labels: Vec<String>) -> Result<FiniteAlgebra> {
    if labels.len() != alg.size() {
        return Err(Error::TableError(format!(
            "{} labels for {} elements",
            labels.len(),
            alg.size()
        )));
    }
    let mut out = alg.clone();
    let mut seen = HashSet::new();
    for l in &labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    out.labels = labels;
    Ok(out)
}

/// The bounded-lattice reduct: `join`, `meet`, `bot`, `top` only.
pub fn lattice_reduct(alg: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    alg.require_lattice()?;
    let n = alg.size();
    let join = (0..n * n).map(|i| alg.join(i / n, i % n)).collect();
    let meet = (0..n * n).map(|i| alg.meet(i / n, i % n)).collect();
    let sig = Signature::new(
        Kind::BoundedLattice,
        vec![
            OpSymbol::new(JOIN, 2),
            OpSymbol::new(MEET, 2),
            OpSymbol::new(BOT, 0),
            OpSymbol::new(TOP, 0),
        ],
    )?;
    Ok(FiniteAlgebra::new_trusted(
        alg.name().to_string(),
        alg.labels().to_vec(),
        sig,
        vec![join, meet, vec![alg.bottom()], vec![alg.top()]],
    ))
}

/// Order dual: join and meet tables swapped, `bot` and `top` swapped.
///
/// Residuated structure does not survive dualisation, so a residuated input
/// yields its dual bounded-lattice reduct. Other extra operations are kept.
pub fn dual(alg: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    alg.require_lattice()?;
    let kind = alg.kind().min(Kind::BoundedLattice);
    let mut ops = Vec::new();
    let mut tables = Vec::new();
    for (op, table) in alg.operations().iter().zip(alg.tables_usize()) {
        let renamed = match op.name() {
            JOIN => MEET,
            MEET => JOIN,
            BOT => TOP,
            TOP => BOT,
            TIMES | IMPLIES if alg.kind() == Kind::Residuated => continue,
            other => other,
        };
        ops.push(OpSymbol::new(renamed, op.arity()));
        tables.push(table);
    }
    let sig = Signature::new(kind, ops)?;
    Ok(FiniteAlgebra::new_trusted(
        format!("dual({})", alg.name()),
        alg.labels().to_vec(),
        sig,
        tables,
    ))
}

/// Records how a product carrier encodes tuples.
///
/// Element `(e_1, …, e_k)` has index `Σ e_i · Π_{j>i} n_j`: the first factor
/// is the most significant digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductEncoding {
    pub product: AlgebraId,
    pub factors: Vec<AlgebraId>,
    pub radices: Vec<usize>,
}

impl ProductEncoding {
    pub fn encode(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (&c, &r)| acc * r + c)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.radices.len()];
        for (slot, &r) in out.iter_mut().zip(&self.radices).rev() {
            *slot = index % r;
            index /= r;
        }
        out
    }

    pub fn size(&self) -> usize {
        self.radices.iter().product()
    }
}

/// Direct product with the default size cap.
pub fn direct_product(factors: &[&FiniteAlgebra]) -> Result<FiniteAlgebra> {
    direct_product_with(factors, &Config::default()).map(|(p, _)| p)
}

/// Direct product; operations act componentwise and labels are `(l_1,…,l_k)`.
pub fn direct_product_with(
    factors: &[&FiniteAlgebra],
    cfg: &Config,
) -> Result<(FiniteAlgebra, ProductEncoding)> {
    let first = factors
        .first()
        .ok_or_else(|| Error::SignatureMismatch("empty product".into()))?;
    for f in &factors[1..] {
        if f.signature().ops() != first.signature().ops() {
            return Err(Error::SignatureMismatch(format!(
                "{} and {} have different operations",
                first.name(),
                f.name()
            )));
        }
    }
    let radices: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let size = radices
        .iter()
        .try_fold(1usize, |acc, &r| acc.checked_mul(r))
        .unwrap_or(usize::MAX);
    cfg.check_carrier(size)?;
    let kind = factors.iter().map(|f| f.kind()).min().unwrap();
    let enc = ProductEncoding {
        product: AlgebraId(0),
        factors: factors.iter().map(|f| f.id()).collect(),
        radices,
    };
    let coords: Vec<Vec<usize>> = (0..size).map(|i| enc.decode(i)).collect();
    let labels = coords
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().zip(factors).map(|(&e, f)| f.label(e)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let mut tables = Vec::new();
    for (op_idx, op) in first.operations().iter().enumerate() {
        let k = op.arity();
        let entries = size.pow(k as u32);
        let mut table = Vec::with_capacity(entries);
        let mut args = vec![0usize; k];
        let mut comp_args = vec![0usize; k];
        for flat in 0..entries {
            let mut rest = flat;
            for slot in args.iter_mut().rev() {
                *slot = rest % size;
                rest /= size;
            }
            let mut result = 0;
            for (fi, f) in factors.iter().enumerate() {
                for (ca, &a) in comp_args.iter_mut().zip(&args) {
                    *ca = coords[a][fi];
                }
                result = result * enc.radices[fi] + f.apply(op_idx, &comp_args);
            }
            table.push(result);
        }
        tables.push(table);
    }
    let sig = Signature::new(kind, first.signature().ops().to_vec())?;
    let name = factors
        .iter()
        .map(|f| f.name())
        .collect::<Vec<_>>()
        .join("x");
    let product = FiniteAlgebra::new_trusted(name, labels, sig, tables);
    let enc = ProductEncoding {
        product: product.id(),
        ..enc
    };
    Ok((product, enc))
}

/// Where each summand's elements land inside an ordinal sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalSumEmbedding {
    pub sum: AlgebraId,
    pub lower: AlgebraId,
    pub upper: AlgebraId,
    /// Lower summand index to sum index.
    pub lower_map: Vec<usize>,
    /// Upper summand index to sum index; its bottom maps to the glued element.
    pub upper_map: Vec<usize>,
    /// Index of the identified element top(lower) = bottom(upper).
    pub glued: usize,
}

pub fn ordinal_sum(lower: &FiniteAlgebra, upper: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    ordinal_sum_with_embedding(lower, upper).map(|(s, _)| s)
}

/// `lower ∔ upper`: `upper` stacked on `lower` with top(lower) = bottom(upper).
///
/// The carrier lists the lower summand's elements first, then the upper
/// summand's non-bottom elements in their original order. Clashing labels
/// from the upper summand get a `'` suffix.
pub fn ordinal_sum_with_embedding(
    lower: &FiniteAlgebra,
    upper: &FiniteAlgebra,
) -> Result<(FiniteAlgebra, OrdinalSumEmbedding)> {
    for s in [lower, upper] {
        s.require_lattice()?;
        if s.kind() == Kind::Residuated
            || s.operations()
                .iter()
                .any(|o| !matches!(o.name(), JOIN | MEET | BOT | TOP))
        {
            return Err(Error::KindError(format!(
                "ordinal sums are defined for plain lattices; {} has extra operations",
                s.name()
            )));
        }
    }
    let nl = lower.size();
    let glued = lower.top();
    let ub = upper.bottom();
    let mut upper_map = vec![0; upper.size()];
    let mut labels: Vec<String> = lower.labels().to_vec();
    let mut used: HashSet<String> = labels.iter().cloned().collect();
    let mut next = nl;
    for (j, slot) in upper_map.iter_mut().enumerate() {
        if j == ub {
            *slot = glued;
            continue;
        }
        *slot = next;
        next += 1;
        let mut l = upper.label(j).to_string();
        while used.contains(&l) {
            l.push('\'');
        }
        used.insert(l.clone());
        labels.push(l);
    }
    let n = next;
    // Each sum element: Some(i) if it lies in the lower part (incl. the glue),
    // and Some(j) if it lies in the upper part (incl. the glue).
    let mut in_lower = vec![None; n];
    let mut in_upper = vec![None; n];
    for i in 0..nl {
        in_lower[i] = Some(i);
    }
    for (j, &s) in upper_map.iter().enumerate() {
        in_upper[s] = Some(j);
    }
    let lower_map: Vec<usize> = (0..nl).collect();
    let mut join = vec![0; n * n];
    let mut meet = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let (j, m) = match (in_lower[x], in_lower[y], in_upper[x], in_upper[y]) {
                (_, _, Some(a), Some(b)) => (upper_map[upper.join(a, b)], upper_map[upper.meet(a, b)]),
                (Some(a), Some(b), _, _) => (lower.join(a, b), lower.meet(a, b)),
                // x strictly below the glue, y strictly above
                (Some(_), None, _, _) => (y, x),
                (None, Some(_), _, _) => (x, y),
                (None, None, _, _) => unreachable!(),
            };
            join[x * n + y] = j;
            meet[x * n + y] = m;
        }
    }
    let bounded = lower.kind() >= Kind::BoundedLattice && upper.kind() >= Kind::BoundedLattice;
    let mut ops = vec![OpSymbol::new(JOIN, 2), OpSymbol::new(MEET, 2)];
    let mut tables = vec![join, meet];
    let kind = if bounded {
        ops.push(OpSymbol::new(BOT, 0));
        ops.push(OpSymbol::new(TOP, 0));
        tables.push(vec![lower.bottom()]);
        tables.push(vec![upper_map[upper.top()]]);
        Kind::BoundedLattice
    } else {
        Kind::Lattice
    };
    let sig = Signature::new(kind, ops)?;
    let sum = FiniteAlgebra::new_trusted(
        format!("{}+{}", lower.name(), upper.name()),
        labels,
        sig,
        tables,
    );
    let emb = OrdinalSumEmbedding {
        sum: sum.id(),
        lower: lower.id(),
        upper: upper.id(),
        lower_map,
        upper_map,
        glued,
    };
    Ok((sum, emb))
}

/// The sublattice induced on `subset`, which must be closed under join and
/// meet. Elements keep their labels and relative order; the result is a
/// bounded lattice with its own bounds.
pub fn sublattice(alg: &FiniteAlgebra, subset: &[usize]) -> Result<FiniteAlgebra> {
    alg.require_lattice()?;
    let mut elems: Vec<usize> = subset.to_vec();
    elems.sort_unstable();
    elems.dedup();
    if elems.is_empty() {
        return Err(Error::TableError("empty subset".into()));
    }
    if let Some(&e) = elems.iter().find(|&&e| e >= alg.size()) {
        return Err(Error::TableError(format!("element index {e} out of range")));
    }
    let mut pos = vec![usize::MAX; alg.size()];
    for (i, &e) in elems.iter().enumerate() {
        pos[e] = i;
    }
    let k = elems.len();
    let mut join = vec![0; k * k];
    let mut meet = vec![0; k * k];
    for (i, &a) in elems.iter().enumerate() {
        for (j, &b) in elems.iter().enumerate() {
            for (op, table, v) in [("join", &mut join, alg.join(a, b)), ("meet", &mut meet, alg.meet(a, b))] {
                if pos[v] == usize::MAX {
                    return Err(Error::NotClosed {
                        op,
                        left: alg.label(a).into(),
                        right: alg.label(b).into(),
                    });
                }
                table[i * k + j] = pos[v];
            }
        }
    }
    let bot = (0..k).find(|&i| (0..k).all(|j| meet[i * k + j] == i)).unwrap();
    let top = (0..k).find(|&i| (0..k).all(|j| join[i * k + j] == i)).unwrap();
    let sig = Signature::new(
        Kind::BoundedLattice,
        vec![
            OpSymbol::new(JOIN, 2),
            OpSymbol::new(MEET, 2),
            OpSymbol::new(BOT, 0),
            OpSymbol::new(TOP, 0),
        ],
    )?;
    Ok(FiniteAlgebra::new_trusted(
        format!("sub({})", alg.name()),
        elems.iter().map(|&e| alg.label(e).to_string()).collect(),
        sig,
        vec![join, meet, vec![bot], vec![top]],
    ))
}
