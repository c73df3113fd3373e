//! Quotients, the transport maps between Con(A) and Con(A/θ), and the
//! lifting and normality decisions.

use crate::algebra::FiniteAlgebra;
use crate::blp;
use crate::boolean::{boolean_center, factor_congruences_with, BooleanCenter, FactorAlgebra};
use crate::congruence::{composes_to_full, join, Congruence};
use crate::conlattice::{all_congruences_with, ConLattice};
use crate::partition::Partition;
use crate::{par, Config, Error, Result};

/// A/θ together with the canonical projection.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub quotient: FiniteAlgebra,
    /// `projection[a]` is the quotient element `a/θ`.
    pub projection: Vec<usize>,
    /// `representatives[q]` is the least element of block `q`.
    pub representatives: Vec<usize>,
    pub theta: Congruence,
}

/// A/θ. Blocks, ordered by least element, form the carrier; each is labelled
/// by its members' labels joined with `+`.
pub fn quotient(alg: &FiniteAlgebra, theta: &Congruence) -> Result<QuotientResult> {
    theta.check_parent(alg)?;
    let p = theta.partition();
    let blocks = p.blocks();
    let projection = p.block_indices();
    let representatives: Vec<usize> = blocks.iter().map(|b| b[0]).collect();
    let labels: Vec<String> = blocks
        .iter()
        .map(|b| b.iter().map(|&e| alg.label(e)).collect::<Vec<_>>().join("+"))
        .collect();
    let m = blocks.len();
    let mut tables = Vec::new();
    for (oi, op) in alg.operations().iter().enumerate() {
        let k = op.arity();
        let mut args = vec![0usize; k];
        let mut table = Vec::with_capacity(m.pow(k as u32));
        for flat in 0..m.pow(k as u32) {
            let mut rest = flat;
            for slot in args.iter_mut().rev() {
                *slot = representatives[rest % m];
                rest /= m;
            }
            table.push(projection[alg.apply(oi, &args)]);
        }
        tables.push(table);
    }
    let name = format!("{}/{}", alg.name(), theta.format(alg));
    let quotient = FiniteAlgebra::new_trusted(name, labels, alg.signature().clone(), tables);
    Ok(QuotientResult {
        quotient,
        projection,
        representatives,
        theta: theta.clone(),
    })
}

/// u_θ(α) = (α ∨ θ)/θ.
pub fn u_map(alg: &FiniteAlgebra, q: &QuotientResult, alpha: &Congruence) -> Result<Congruence> {
    let j = join(alg, alpha, &q.theta)?;
    Ok(push(q, &j))
}

/// β ↦ β/θ for β ⊇ θ.
fn push(q: &QuotientResult, beta: &Congruence) -> Congruence {
    let classes: Vec<usize> = q
        .representatives
        .iter()
        .map(|&r| beta.partition().rep(r))
        .collect();
    Congruence::trusted(q.quotient.id(), Partition::from_classes(&classes))
}

/// s_θ(β) = p_θ⁻¹(β).
pub fn s_inverse(q: &QuotientResult, beta: &Congruence) -> Result<Congruence> {
    beta.check_parent(&q.quotient)?;
    let classes: Vec<usize> = q
        .projection
        .iter()
        .map(|&x| beta.partition().rep(x))
        .collect();
    Ok(Congruence::trusted(
        q.theta.parent(),
        Partition::from_classes(&classes),
    ))
}

/// An algebra with its congruence lattice, Boolean center and FC computed.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub algebra: FiniteAlgebra,
    pub con: ConLattice,
    pub center: BooleanCenter,
    pub fc: FactorAlgebra,
    pub config: Config,
}

impl Analysis {
    pub fn new(alg: &FiniteAlgebra) -> Result<Self> {
        Self::with_config(alg, &Config::default())
    }

    pub fn with_config(alg: &FiniteAlgebra, cfg: &Config) -> Result<Self> {
        let con = all_congruences_with(alg, cfg)?;
        Self::from_con(alg, con, cfg)
    }

    /// Reuses an already computed (for instance cached) congruence lattice.
    pub fn from_con(alg: &FiniteAlgebra, con: ConLattice, cfg: &Config) -> Result<Self> {
        if con.algebra() != alg.id() {
            return Err(Error::ParentMismatch);
        }
        let center = boolean_center(&con)?;
        let fc = factor_congruences_with(&con, &center, cfg);
        Ok(Analysis {
            algebra: alg.clone(),
            con,
            center,
            fc,
            config: cfg.clone(),
        })
    }

    pub fn congruence(&self, i: usize) -> &Congruence {
        self.con.get(i)
    }

    /// Canonical block string of congruence `i`.
    pub fn format(&self, i: usize) -> String {
        self.con.get(i).format(&self.algebra)
    }

    pub fn quotient(&self, i: usize) -> QuotientResult {
        quotient(&self.algebra, self.con.get(i)).expect("lattice member belongs to the algebra")
    }

    /// Index of a congruence given in label syntax.
    pub fn parse(&self, text: &str) -> Result<usize> {
        let c = Congruence::parse(&self.algebra, text)?;
        self.con.index_of_checked(&c)
    }
}

/// Which Boolean algebra a lifting check is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// FC(A) → FC(A/θ).
    Factor,
    /// 𝓑(Con(A)) → 𝓑(Con(A/θ)).
    Center,
}

/// The outcome of a lifting check for one congruence θ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lifting {
    pub holds: bool,
    /// For each target β of the quotient, in canonical order: its block
    /// string in A/θ and the index of a lifting α in Con(A), if one exists.
    pub targets: Vec<(String, Option<usize>)>,
}

impl Lifting {
    /// Block string (in A/θ) of the first target with no preimage.
    pub fn first_failure(&self) -> Option<&str> {
        self.targets
            .iter()
            .find(|(_, w)| w.is_none())
            .map(|(s, _)| s.as_str())
    }
}

/// Searches `source` members of Con(A) for an α with u_θ(α) = β, for every
/// β among the `target` members of Con(A/θ).
pub fn lifting(an: &Analysis, theta: usize, target: Target) -> Result<Lifting> {
    if theta == an.con.nabla() {
        // A/∇ is trivial: its only congruence is lifted by ∇ itself.
        let q = an.quotient(theta);
        return Ok(Lifting {
            holds: true,
            targets: vec![(Congruence::delta(&q.quotient).format(&q.quotient), Some(theta))],
        });
    }
    let q = an.quotient(theta);
    let qcon = all_congruences_with(&q.quotient, &an.config)?;
    let qcenter = boolean_center(&qcon)?;
    let (targets, sources): (Vec<usize>, &[usize]) = match target {
        Target::Factor => (
            factor_congruences_with(&qcon, &qcenter, &an.config)
                .members()
                .to_vec(),
            an.fc.members(),
        ),
        Target::Center => (qcenter.members().to_vec(), an.center.members()),
    };
    let images: Vec<(usize, usize)> = sources
        .iter()
        .map(|&a| {
            let j = an.con.join(a, theta);
            let beta = push(&q, an.con.get(j));
            (a, qcon.index_of(&beta).expect("u_θ lands in Con(A/θ)"))
        })
        .collect();
    let rows: Vec<(String, Option<usize>)> = targets
        .iter()
        .map(|&b| {
            let witness = images.iter().find(|&&(_, img)| img == b).map(|&(a, _)| a);
            (qcon.get(b).format(&q.quotient), witness)
        })
        .collect();
    Ok(Lifting {
        holds: rows.iter().all(|(_, w)| w.is_some()),
        targets: rows,
    })
}

pub fn has_fclp(an: &Analysis, theta: usize) -> Result<Lifting> {
    lifting(an, theta, Target::Factor)
}

pub fn has_cblp(an: &Analysis, theta: usize) -> Result<Lifting> {
    lifting(an, theta, Target::Center)
}

/// Algebra-level verdict: the first congruence (canonical order) that fails,
/// with its evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraVerdict {
    pub holds: bool,
    pub failing: Option<(usize, Lifting)>,
}

fn algebra_lifting(an: &Analysis, target: Target) -> Result<AlgebraVerdict> {
    let found = par::find_first(&an.config, an.con.len(), |i| match lifting(an, i, target) {
        Ok(l) if l.holds => None,
        other => Some(other),
    });
    match found {
        None => Ok(AlgebraVerdict {
            holds: true,
            failing: None,
        }),
        Some((i, l)) => Ok(AlgebraVerdict {
            holds: false,
            failing: Some((i, l?)),
        }),
    }
}

pub fn algebra_fclp(an: &Analysis) -> Result<AlgebraVerdict> {
    algebra_lifting(an, Target::Factor)
}

pub fn algebra_cblp(an: &Analysis) -> Result<AlgebraVerdict> {
    algebra_lifting(an, Target::Center)
}

/// Witnesses for a normality condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normality {
    pub holds: bool,
    /// `((φ, ψ), α)` for every triggering pair, in canonical order.
    pub witnesses: Vec<((usize, usize), usize)>,
    /// The first triggering pair with no witness.
    pub failure: Option<(usize, usize)>,
}

fn normality(
    an: &Analysis,
    trigger: impl Fn(usize, usize) -> bool + Sync,
    candidates: &[usize],
) -> Normality {
    let m = an.con.len();
    let nabla = an.con.nabla();
    type Row = Option<((usize, usize), Option<usize>)>;
    let rows: Vec<Row> = par::map_range(&an.config, m * m, |k| {
        let (phi, psi) = (k / m, k % m);
        if !trigger(phi, psi) {
            return None;
        }
        let alpha = candidates.iter().copied().find(|&a| {
            let neg = an.center.complement(a).unwrap();
            an.con.join(phi, a) == nabla && an.con.join(psi, neg) == nabla
        });
        Some(((phi, psi), alpha))
    });
    let mut witnesses = Vec::new();
    let mut failure = None;
    for (pair, alpha) in rows.into_iter().flatten() {
        match alpha {
            Some(a) => witnesses.push((pair, a)),
            None => {
                failure.get_or_insert(pair);
            }
        }
    }
    Normality {
        holds: failure.is_none(),
        witnesses,
        failure,
    }
}

/// For every φ, ψ with φ ∘ ψ = ∇ some α ∈ FC(A) has φ ∨ α = ψ ∨ ¬α = ∇.
pub fn is_fc_normal(an: &Analysis) -> Normality {
    normality(
        an,
        |phi, psi| composes_to_full(an.con.get(phi), an.con.get(psi)).unwrap(),
        an.fc.members(),
    )
}

/// For every φ, ψ with φ ∨ ψ = ∇ some α ∈ 𝓑(Con(A)) has
/// φ ∨ α = ψ ∨ ¬α = ∇.
pub fn is_b_normal(an: &Analysis) -> Normality {
    normality(
        an,
        |phi, psi| an.con.join(phi, psi) == an.con.nabla(),
        an.center.members(),
    )
}

/// Theorem validator: maximal and prime congruences lift, and local
/// algebras have both properties. Violations mean an implementation bug.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialCongruenceReport {
    pub maximal: Vec<usize>,
    pub prime: Vec<usize>,
    pub local: bool,
    pub violations: Vec<String>,
}

impl SpecialCongruenceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_special_congruences(an: &Analysis) -> Result<SpecialCongruenceReport> {
    let maximal = match an.con.maximal() {
        Ok(m) => m,
        Err(Error::TrivialAlgebra) => Vec::new(),
        Err(e) => return Err(e),
    };
    let prime = an.con.prime();
    let local = an.con.is_local();
    let mut violations = Vec::new();
    let mut special: Vec<(usize, &str)> = maximal.iter().map(|&i| (i, "maximal")).collect();
    special.extend(prime.iter().map(|&i| (i, "prime")));
    for (i, what) in special {
        if !has_fclp(an, i)?.holds {
            violations.push(format!(
                "implementation bug: {what} congruence {} lacks FCLP",
                an.format(i)
            ));
        }
        if !has_cblp(an, i)?.holds {
            violations.push(format!(
                "implementation bug: {what} congruence {} lacks CBLP",
                an.format(i)
            ));
        }
    }
    if local && !(algebra_fclp(an)?.holds && algebra_cblp(an)?.holds) {
        violations.push("implementation bug: local algebra lacks FCLP or CBLP".into());
    }
    Ok(SpecialCongruenceReport {
        maximal,
        prime,
        local,
        violations,
    })
}

/// Per-congruence lifting verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceRecord {
    pub index: usize,
    pub congruence: String,
    pub boolean: bool,
    pub factor: bool,
    pub fclp: Lifting,
    pub cblp: Lifting,
    /// Element-level BLP, when the algebra is a bounded lattice whose
    /// complements are unambiguous.
    pub blp: Option<bool>,
}

/// Algebra-level flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flags {
    pub fclp: bool,
    pub cblp: bool,
    pub fc_normal: bool,
    pub b_normal: bool,
    pub distributive: bool,
    pub permutable: bool,
    pub arithmetical: bool,
    pub local: bool,
    pub semilocal: bool,
    pub blp: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingReport {
    pub algebra: String,
    pub records: Vec<CongruenceRecord>,
    pub flags: Flags,
}

pub fn lifting_report(an: &Analysis) -> Result<LiftingReport> {
    let element_level = an.algebra.kind().is_lattice()
        && blp::element_boolean_center(&an.algebra).is_ok();
    let records = par::map_range(&an.config, an.con.len(), |i| -> Result<CongruenceRecord> {
        let blp = if element_level {
            blp::has_blp(&an.algebra, an.con.get(i)).ok()
        } else {
            None
        };
        Ok(CongruenceRecord {
            index: i,
            congruence: an.format(i),
            boolean: an.center.contains(i),
            factor: an.fc.contains(i),
            fclp: has_fclp(an, i)?,
            cblp: has_cblp(an, i)?,
            blp,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let distributive = an.con.is_distributive();
    let permutable = an.con.is_permutable(&an.config);
    let blp = if records.iter().all(|r| r.blp.is_some()) && element_level {
        Some(records.iter().all(|r| r.blp == Some(true)))
    } else {
        None
    };
    let flags = Flags {
        fclp: records.iter().all(|r| r.fclp.holds),
        cblp: records.iter().all(|r| r.cblp.holds),
        fc_normal: is_fc_normal(an).holds,
        b_normal: is_b_normal(an).holds,
        distributive,
        permutable,
        arithmetical: distributive && permutable,
        local: an.con.is_local(),
        semilocal: an.con.is_semilocal(),
        blp,
    };
    Ok(LiftingReport {
        algebra: an.algebra.name().to_string(),
        records,
        flags,
    })
}
