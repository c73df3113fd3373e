//! Congruence lattices, Boolean centers, factor congruences and lifting
//! properties of finite algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: finite algebras, lattices built from cover relations,
//!   products, ordinal sums, duals and sublattices.
//! * [`congruence`] and [`conlattice`]: Mal'cev closure, composition and the
//!   full congruence lattice with its classifications.
//! * [`boolean`]: Boolean centers, factor congruences, CRT and transport
//!   across products and ordinal sums.
//! * [`lifting`]: quotients and the FCLP / CBLP / normality decisions.
//! * [`blp`]: element-level Boolean lifting, filters, ideals, reticulation.
//!
//! Enable the default `parallel` feature to fan enumeration out over rayon;
//! results are identical either way.

pub mod algebra;
pub mod blp;
pub mod boolean;
pub mod config;
pub mod congruence;
pub mod conlattice;
pub mod enumerate;
mod error;
pub mod fixtures;
pub mod lifting;
pub mod par;
pub mod partition;
pub mod report;
pub mod spec;

pub use algebra::{FiniteAlgebra, Kind};
pub use config::Config;
pub use congruence::{Congruence, Relation};
pub use conlattice::ConLattice;
pub use error::{Error, Result};
pub use fixtures::fixture;
pub use partition::Partition;
pub use spec::{build_from_spec, emit_spec, AlgebraSpec};
