//! The named example algebras shipped with the library.

use crate::algebra::{direct_product, FiniteAlgebra};
use crate::spec::{build_from_spec, AlgebraSpec};
use crate::{Error, Result};

macro_rules! shipped {
    ($($name:literal),* $(,)?) => {
        const SHIPPED: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../fixtures/", $name, ".json")))),*
        ];
    };
}

shipped!(
    "L1", "L2", "L3", "L2x2", "L2x3cube", "L2timesL3", "D", "P", "S", "R", "T", "E", "X", "H",
    "R0", "L2osumL2x2", "Z", "B2",
);

/// Fixtures built from other fixtures rather than shipped as files.
const DERIVED: &[&str] = &["TxE"];

/// Every fixture name, shipped ones first in registry order.
pub fn fixture_names() -> Vec<&'static str> {
    SHIPPED
        .iter()
        .map(|(n, _)| *n)
        .chain(DERIVED.iter().copied())
        .collect()
}

/// The raw JSON of a shipped fixture.
pub fn fixture_spec(name: &str) -> Result<AlgebraSpec> {
    let (_, text) = SHIPPED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    AlgebraSpec::from_json(text)
}

/// Fixtures that are ordinal sums of two other fixtures, as
/// `(sum, lower, upper)`. Only used to report transport across the sum.
pub const OSUM_PARTS: &[(&str, &str, &str)] = &[
    ("S", "D", "L2"),
    ("R", "D", "L3"),
    ("T", "L2", "S"),
    ("X", "L2x2", "D"),
    ("L2osumL2x2", "L2", "L2x2"),
    ("Z", "P", "L2x2"),
];

/// The ordinal-sum decomposition of a fixture, if it has a registered one.
pub fn osum_parts(name: &str) -> Option<(&'static str, &'static str)> {
    OSUM_PARTS
        .iter()
        .find(|(s, _, _)| *s == name)
        .map(|&(_, l, u)| (l, u))
}

pub fn fixture(name: &str) -> Result<FiniteAlgebra> {
    match name {
        "TxE" => {
            let t = fixture("T")?;
            let e = fixture("E")?;
            Ok(direct_product(&[&t, &e])?.with_name("TxE"))
        }
        _ => build_from_spec(&fixture_spec(name)?),
    }
}
