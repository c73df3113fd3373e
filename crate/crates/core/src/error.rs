use thiserror::Error;

/// Everything that can go wrong while building or analysing an algebra.
///
/// Element references are carried as labels so messages can be shown to
/// users verbatim.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a lattice: {left} and {right} have no {missing}")]
    NotALattice {
        left: String,
        right: String,
        missing: &'static str,
    },
    #[error("table error: {0}")]
    TableError(String),
    #[error("residuation law fails for ({a}, {b}, {c}): a*b <= c and a <= b->c disagree")]
    ResiduationViolation { a: String, b: String, c: String },
    #[error("lattice axiom violated: {0}")]
    LatticeAxiom(String),
    #[error("monoid axiom violated: {0}")]
    MonoidViolation(String),
    #[error("cover relation has a cycle through {0}")]
    CyclicCover(String),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("invalid algebra spec: {0}")]
    Spec(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("wrong kind of algebra: {0}")]
    KindError(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("size cap exceeded: {what} would be {actual}, limit is {limit}")]
    SizeCap {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("subset not closed: {op}({left}, {right}) leaves the subset")]
    NotClosed {
        op: &'static str,
        left: String,
        right: String,
    },
    #[error("congruences belong to different algebras")]
    ParentMismatch,
    #[error("not a congruence: {0}")]
    NotACongruence(String),
    #[error("cannot parse congruence: {0}")]
    ParseCongruence(String),
    #[error("the trivial algebra has no maximal congruences")]
    TrivialAlgebra,
    #[error("congruence lattice is not distributive")]
    NotDistributive,
    #[error("lattice is not distributive")]
    LatticeNotDistributive,
    #[error("not a bounded sublattice of Con: {0}")]
    NotASublattice(String),
    #[error("product encoding mismatch: {0}")]
    EncodingMismatch(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("element {element} has two complements, {first} and {second}")]
    AmbiguousComplement {
        element: String,
        first: String,
        second: String,
    },
    #[error("not a filter: {0}")]
    NotAFilter(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
