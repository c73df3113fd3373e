//! Finite algebras over an arbitrary finite signature.
//!
//! Elements are dense indices `0..n` with a separate label per element. Every
//! operation of arity `k` is stored as a total table of `n^k` entries indexed
//! in mixed radix with the first argument most significant.

mod build;
mod construct;
mod iso;

pub use build::{from_cover, from_order};
pub use construct::{
    direct_product, direct_product_with, dual, lattice_reduct, ordinal_sum,
    ordinal_sum_with_embedding, relabel, sublattice, OrdinalSumEmbedding, ProductEncoding,
};
pub use iso::{find_isomorphism, is_isomorphic};

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// Tag describing which structure an algebra is known to carry.
///
/// The order matters: `kind >= Kind::Lattice` means "has a lattice reduct".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "algebra", alias = "generic")]
    Generic,
    #[serde(rename = "lattice")]
    Lattice,
    #[serde(rename = "bounded-lattice")]
    BoundedLattice,
    #[serde(rename = "residuated")]
    Residuated,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Generic => "algebra",
            Kind::Lattice => "lattice",
            Kind::BoundedLattice => "bounded-lattice",
            Kind::Residuated => "residuated",
        }
    }

    pub fn is_lattice(self) -> bool {
        self >= Kind::Lattice
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub const JOIN: &str = "join";
pub const MEET: &str = "meet";
pub const BOT: &str = "bot";
pub const TOP: &str = "top";
pub const TIMES: &str = "times";
pub const IMPLIES: &str = "implies";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpSymbol {
    pub name: String,
    pub arity: usize,
}

impl OpSymbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        OpSymbol {
            name: name.into(),
            arity,
        }
    }
}

/// Operation symbols plus a kind tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<OpSymbol>,
    kind: Kind,
}

impl Signature {
    pub fn new(kind: Kind, ops: Vec<OpSymbol>) -> Result<Self> {
        let mut seen = HashSet::new();
        for op in &ops {
            if !seen.insert(op.name.as_str()) {
                return Err(Error::SignatureMismatch(format!(
                    "operation {:?} declared twice",
                    op.name
                )));
            }
        }
        let sig = Signature { ops, kind };
        let mut required: Vec<(&str, usize)> = Vec::new();
        if kind >= Kind::Lattice {
            required.extend([(JOIN, 2), (MEET, 2)]);
        }
        if kind >= Kind::BoundedLattice {
            required.extend([(BOT, 0), (TOP, 0)]);
        }
        if kind == Kind::Residuated {
            required.extend([(TIMES, 2), (IMPLIES, 2)]);
        }
        for (name, arity) in required {
            match sig.position(name) {
                Some(i) if sig.ops[i].arity == arity => {}
                Some(_) => {
                    return Err(Error::SignatureMismatch(format!(
                        "{name} must have arity {arity}"
                    )))
                }
                None => {
                    return Err(Error::SignatureMismatch(format!(
                        "kind {kind} requires operation {name:?}"
                    )))
                }
            }
        }
        Ok(sig)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn ops(&self) -> &[OpSymbol] {
        &self.ops
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    /// Same operation symbols, irrespective of declaration order and kind tag.
    pub fn same_symbols(&self, other: &Signature) -> bool {
        let mut a: Vec<_> = self.ops.iter().map(|o| (&o.name, o.arity)).collect();
        let mut b: Vec<_> = other.ops.iter().map(|o| (&o.name, o.arity)).collect();
        a.sort();
        b.sort();
        a == b
    }
}

/// Identity of an algebra: a digest of its carrier size, symbols and tables.
/// Labels and names do not participate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId(pub u64);

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operation {
    symbol: OpSymbol,
    table: Vec<u32>,
    commutative: bool,
}

impl Operation {
    pub fn name(&self) -> &str {
        &self.symbol.name
    }

    pub fn arity(&self) -> usize {
        self.symbol.arity
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Binary operation whose table is symmetric.
    pub fn is_commutative(&self) -> bool {
        self.commutative
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct LatticeOps {
    join: usize,
    meet: usize,
    bottom: usize,
    top: usize,
}

/// An immutable finite algebra.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    name: String,
    labels: Vec<String>,
    signature: Signature,
    ops: Vec<Operation>,
    id: AlgebraId,
    digest: [u8; 32],
    lattice: Option<LatticeOps>,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.signature == other.signature && self.ops == other.ops
    }
}

impl Eq for FiniteAlgebra {}

impl FiniteAlgebra {
    /// Validates totality, ranges and the axioms implied by the kind tag.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        signature: Signature,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let alg = Self::assemble(name.into(), labels, signature, tables)?;
        alg.validate_kind()?;
        Ok(alg)
    }

    /// Builds without re-checking the lattice/residuation axioms. Used by
    /// constructions that preserve them (products, duals, quotients).
    pub(crate) fn new_trusted(
        name: String,
        labels: Vec<String>,
        signature: Signature,
        tables: Vec<Vec<usize>>,
    ) -> Self {
        Self::assemble(name, labels, signature, tables)
            .expect("construction produced a malformed algebra")
    }

    fn assemble(
        name: String,
        labels: Vec<String>,
        signature: Signature,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::TableError("carrier must be non-empty".into()));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        if tables.len() != signature.ops.len() {
            return Err(Error::TableError(format!(
                "{} tables for {} operations",
                tables.len(),
                signature.ops.len()
            )));
        }
        let mut ops = Vec::with_capacity(tables.len());
        for (sym, table) in signature.ops.iter().zip(tables) {
            let expected = n
                .checked_pow(sym.arity as u32)
                .ok_or_else(|| Error::TableError(format!("{} table too large", sym.name)))?;
            if table.len() != expected {
                return Err(Error::TableError(format!(
                    "{} has {} entries, expected {expected}",
                    sym.name,
                    table.len()
                )));
            }
            if let Some(pos) = table.iter().position(|&v| v >= n) {
                return Err(Error::TableError(format!(
                    "{} entry #{pos} is {} but the carrier has {n} elements",
                    sym.name, table[pos]
                )));
            }
            let commutative = sym.arity == 2
                && (0..n).all(|a| (0..n).all(|b| table[a * n + b] == table[b * n + a]));
            ops.push(Operation {
                symbol: sym.clone(),
                table: table.into_iter().map(|v| v as u32).collect(),
                commutative,
            });
        }

        let mut hasher = Sha256::new();
        hasher.update((n as u64).to_le_bytes());
        for op in &ops {
            hasher.update(op.symbol.name.as_bytes());
            hasher.update([0u8]);
            hasher.update((op.symbol.arity as u64).to_le_bytes());
            for v in &op.table {
                hasher.update(v.to_le_bytes());
            }
        }
        let digest: [u8; 32] = hasher.finalize().into();
        let id = AlgebraId(u64::from_le_bytes(digest[..8].try_into().unwrap()));

        let mut alg = FiniteAlgebra {
            name,
            labels,
            signature,
            ops,
            id,
            digest,
            lattice: None,
        };
        if alg.kind().is_lattice() {
            let join = alg.signature.position(JOIN).unwrap();
            let meet = alg.signature.position(MEET).unwrap();
            let find = |absorbing: usize| {
                (0..n).find(|&x| (0..n).all(|y| alg.ops[absorbing].table[x * n + y] as usize == x))
            };
            // A meet-absorbing element is the bottom, a join-absorbing one the top.
            // Finite lattices always have both; a missing bound means the
            // tables are not a lattice, which validate_kind reports.
            alg.lattice = Some(LatticeOps {
                join,
                meet,
                bottom: find(meet).unwrap_or(0),
                top: find(join).unwrap_or(0),
            });
        }
        Ok(alg)
    }

    fn validate_kind(&self) -> Result<()> {
        let kind = self.kind();
        if kind.is_lattice() {
            self.check_lattice_axioms()?;
        }
        if kind >= Kind::BoundedLattice {
            let bot = self.constant(BOT).unwrap();
            let top = self.constant(TOP).unwrap();
            if bot != self.bottom() {
                return Err(Error::LatticeAxiom(format!(
                    "bot is {} but the least element is {}",
                    self.label(bot),
                    self.label(self.bottom())
                )));
            }
            if top != self.top() {
                return Err(Error::LatticeAxiom(format!(
                    "top is {} but the greatest element is {}",
                    self.label(top),
                    self.label(self.top())
                )));
            }
        }
        if kind == Kind::Residuated {
            self.check_monoid()?;
            check_residuation(self)?;
        }
        Ok(())
    }

    fn check_lattice_axioms(&self) -> Result<()> {
        let n = self.size();
        let l = |a: usize| self.label(a).to_string();
        for (name, f) in [(JOIN, self.lattice.unwrap().join), (MEET, self.lattice.unwrap().meet)] {
            let t = &self.ops[f].table;
            let ap = |a: usize, b: usize| t[a * n + b] as usize;
            for a in 0..n {
                if ap(a, a) != a {
                    return Err(Error::LatticeAxiom(format!("{name} not idempotent at {}", l(a))));
                }
                for b in 0..n {
                    if ap(a, b) != ap(b, a) {
                        return Err(Error::LatticeAxiom(format!(
                            "{name} not commutative at ({}, {})",
                            l(a),
                            l(b)
                        )));
                    }
                    for c in 0..n {
                        if ap(ap(a, b), c) != ap(a, ap(b, c)) {
                            return Err(Error::LatticeAxiom(format!(
                                "{name} not associative at ({}, {}, {})",
                                l(a),
                                l(b),
                                l(c)
                            )));
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.join(a, self.meet(a, b)) != a || self.meet(a, self.join(a, b)) != a {
                    return Err(Error::LatticeAxiom(format!(
                        "absorption fails at ({}, {})",
                        l(a),
                        l(b)
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_monoid(&self) -> Result<()> {
        let n = self.size();
        let one = self.top();
        for a in 0..n {
            if self.times(a, one) != a {
                return Err(Error::MonoidViolation(format!(
                    "{} * {} != {}",
                    self.label(a),
                    self.label(one),
                    self.label(a)
                )));
            }
            for b in 0..n {
                if self.times(a, b) != self.times(b, a) {
                    return Err(Error::MonoidViolation(format!(
                        "times not commutative at ({}, {})",
                        self.label(a),
                        self.label(b)
                    )));
                }
                for c in 0..n {
                    if self.times(self.times(a, b), c) != self.times(a, self.times(b, c)) {
                        return Err(Error::MonoidViolation(format!(
                            "times not associative at ({}, {}, {})",
                            self.label(a),
                            self.label(b),
                            self.label(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn index_of_checked(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn kind(&self) -> Kind {
        self.signature.kind
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    /// Hex SHA-256 over the carrier size, symbols and tables.
    pub fn content_hash(&self) -> String {
        self.digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn operations(&self) -> &[Operation] {
        &self.ops
    }

    pub fn operation(&self, name: &str) -> Option<&Operation> {
        self.ops.iter().find(|o| o.symbol.name == name)
    }

    /// Applies operation `op` (by position) to `args`.
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        let n = self.size();
        let idx = args.iter().fold(0usize, |acc, &a| acc * n + a);
        self.ops[op].table[idx] as usize
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.operation(name)
            .filter(|o| o.arity() == 0)
            .map(|o| o.table[0] as usize)
    }

    pub(crate) fn tables_usize(&self) -> Vec<Vec<usize>> {
        self.ops
            .iter()
            .map(|o| o.table.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn require_lattice(&self) -> Result<()> {
        if self.kind().is_lattice() {
            Ok(())
        } else {
            Err(Error::KindError(format!(
                "{} is a {} without a lattice reduct",
                self.name,
                self.kind()
            )))
        }
    }

    fn lat(&self) -> LatticeOps {
        self.lattice
            .unwrap_or_else(|| panic!("{} has no lattice reduct", self.name))
    }

    /// Lattice join. Panics if the algebra has no lattice reduct.
    pub fn join(&self, a: usize, b: usize) -> usize {
        let n = self.size();
        self.ops[self.lat().join].table[a * n + b] as usize
    }

    /// Lattice meet. Panics if the algebra has no lattice reduct.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        let n = self.size();
        self.ops[self.lat().meet].table[a * n + b] as usize
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    pub fn bottom(&self) -> usize {
        self.lat().bottom
    }

    pub fn top(&self) -> usize {
        self.lat().top
    }

    /// Residuated product. Panics outside the residuated kind.
    pub fn times(&self, a: usize, b: usize) -> usize {
        let i = self.signature.position(TIMES).expect("no times operation");
        self.apply(i, &[a, b])
    }

    /// Residuum `a -> b`. Panics outside the residuated kind.
    pub fn implies(&self, a: usize, b: usize) -> usize {
        let i = self.signature.position(IMPLIES).expect("no implies operation");
        self.apply(i, &[a, b])
    }

    /// Exhaustive lattice distributivity check on the element level.
    pub fn is_distributive_lattice(&self) -> bool {
        if !self.kind().is_lattice() {
            return false;
        }
        let n = self.size();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))
                })
            })
        })
    }

    /// The covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && self.leq(a, b)
                    && !(0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Block string for a set of elements, e.g. `"0,m"`.
    pub fn format_set(&self, elems: &[usize]) -> String {
        elems
            .iter()
            .map(|&e| self.label(e))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Checks the law of residuation on every triple and returns how many
/// triples were examined.
pub fn check_residuation(alg: &FiniteAlgebra) -> Result<usize> {
    if alg.kind() != Kind::Residuated {
        return Err(Error::KindError(format!("{} is not residuated", alg.name())));
    }
    let n = alg.size();
    let mut checked = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                checked += 1;
                let lhs = alg.leq(alg.times(a, b), c);
                let rhs = alg.leq(a, alg.implies(b, c));
                if lhs != rhs {
                    return Err(Error::ResiduationViolation {
                        a: alg.label(a).into(),
                        b: alg.label(b).into(),
                        c: alg.label(c).into(),
                    });
                }
            }
        }
    }
    Ok(checked)
}
