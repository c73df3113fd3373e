//! The on-disk JSON description of an algebra.
//!
//! Two shapes are accepted:
//!
//! ```json
//! {"name": "L3", "kind": "bounded-lattice", "elements": ["0", "m", "1"],
//!  "cover": [["0", "m"], ["m", "1"]]}
//! {"name": "Z3", "kind": "algebra", "elements": ["0", "1", "2"],
//!  "operations": {"neg": ["0", "2", "1"]}, "constants": {"zero": "0"}}
//! ```
//!
//! Operation tables are nested arrays of labels, one nesting level per
//! argument. Lattice kinds given by `cover` get `join`/`meet` (and `bot`/`top`)
//! synthesised; any further operations (for instance `times`/`implies` of a
//! residuated lattice) go in `operations`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{
    from_cover, FiniteAlgebra, Kind, OpSymbol, Signature, BOT, JOIN, MEET, TOP,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub name: String,
    pub kind: Kind,
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub operations: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub constants: BTreeMap<String, String>,
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec serialises");
        s.push('\n');
        s
    }
}

pub fn build_from_spec(spec: &AlgebraSpec) -> Result<FiniteAlgebra> {
    let n = spec.elements.len();
    if n == 0 {
        return Err(Error::Spec("elements must be non-empty".into()));
    }
    let index = |label: &str| {
        spec.elements
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    };
    let mut extra = Vec::new();
    for (name, value) in &spec.operations {
        let mut table = Vec::new();
        let arity = flatten(value, n, &index, name, &mut table)?;
        if arity == 0 {
            return Err(Error::Spec(format!(
                "operation {name:?} has no arguments; list it under constants"
            )));
        }
        extra.push((OpSymbol::new(name.clone(), arity), table));
    }
    for (name, label) in &spec.constants {
        extra.push((OpSymbol::new(name.clone(), 0), vec![index(label)?]));
    }

    match &spec.cover {
        Some(cover) => {
            if !spec.kind.is_lattice() {
                return Err(Error::Spec(format!(
                    "a cover relation describes a lattice, but kind is {}",
                    spec.kind
                )));
            }
            let pairs = cover
                .iter()
                .map(|(lo, hi)| Ok((index(lo)?, index(hi)?)))
                .collect::<Result<Vec<_>>>()?;
            from_cover(&spec.name, spec.kind, spec.elements.clone(), &pairs, extra)
        }
        None => {
            if spec.kind == Kind::Residuated {
                return Err(Error::Spec(
                    "residuated specs need a cover relation for the lattice part".into(),
                ));
            }
            let (ops, tables): (Vec<_>, Vec<_>) = extra.into_iter().unzip();
            let sig = Signature::new(spec.kind, ops)?;
            FiniteAlgebra::new(&spec.name, spec.elements.clone(), sig, tables)
        }
    }
}

/// Flattens a nested label table in mixed radix order and returns its depth.
fn flatten(
    value: &Value,
    n: usize,
    index: &dyn Fn(&str) -> Result<usize>,
    op: &str,
    out: &mut Vec<usize>,
) -> Result<usize> {
    match value {
        Value::String(s) => {
            out.push(index(s)?);
            Ok(0)
        }
        Value::Array(rows) => {
            if rows.len() != n {
                return Err(Error::TableError(format!(
                    "{op}: a row has {} entries, expected {n}",
                    rows.len()
                )));
            }
            let mut depth = None;
            for row in rows {
                let d = flatten(row, n, index, op, out)?;
                if *depth.get_or_insert(d) != d {
                    return Err(Error::TableError(format!("{op}: ragged table")));
                }
            }
            Ok(depth.unwrap_or(0) + 1)
        }
        other => Err(Error::Spec(format!(
            "{op}: table entries must be labels, found {other}"
        ))),
    }
}

fn nest(alg: &FiniteAlgebra, table: &[u32], arity: usize) -> Value {
    if arity == 0 {
        return Value::String(alg.label(table[0] as usize).to_string());
    }
    let stride = table.len() / alg.size();
    Value::Array(
        table
            .chunks(stride)
            .map(|chunk| nest(alg, chunk, arity - 1))
            .collect(),
    )
}

/// The spec that rebuilds `alg`. Lattice kinds are written as a cover
/// relation plus their non-lattice operations.
pub fn emit_spec(alg: &FiniteAlgebra) -> AlgebraSpec {
    let lattice = alg.kind().is_lattice();
    let mut operations = BTreeMap::new();
    let mut constants = BTreeMap::new();
    for op in alg.operations() {
        if lattice && matches!(op.name(), JOIN | MEET | BOT | TOP) {
            continue;
        }
        if op.arity() == 0 {
            constants.insert(op.name().to_string(), alg.label(op.table()[0] as usize).into());
        } else {
            operations.insert(op.name().to_string(), nest(alg, op.table(), op.arity()));
        }
    }
    let cover = lattice.then(|| {
        alg.covers()
            .into_iter()
            .map(|(a, b)| (alg.label(a).to_string(), alg.label(b).to_string()))
            .collect()
    });
    AlgebraSpec {
        name: alg.name().to_string(),
        kind: alg.kind(),
        elements: alg.labels().to_vec(),
        cover,
        operations,
        constants,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_from_json() {
        let spec = AlgebraSpec::from_json(
            r#"{"name":"P","kind":"bounded-lattice","elements":["0","x","y","z","1"],
               "cover":[["0","x"],["0","y"],["y","z"],["x","1"],["z","1"]]}"#,
        )
        .unwrap();
        let p = build_from_spec(&spec).unwrap();
        let ix = |l| p.index_of(l).unwrap();
        assert_eq!(p.join(ix("x"), ix("y")), ix("1"));
        assert_eq!(p.meet(ix("x"), ix("z")), ix("0"));
    }

    #[test]
    fn generic_tables() {
        let spec = AlgebraSpec::from_json(
            r#"{"name":"Z3","kind":"algebra","elements":["0","1","2"],
               "operations":{"plus":[["0","1","2"],["1","2","0"],["2","0","1"]],"neg":["0","2","1"]},
               "constants":{"zero":"0"}}"#,
        )
        .unwrap();
        let z = build_from_spec(&spec).unwrap();
        assert_eq!(z.operations().len(), 3);
        let plus = z.signature().position("plus").unwrap();
        assert_eq!(z.apply(plus, &[2, 2]), 1);
        assert_eq!(z.constant("zero"), Some(0));
        let again = build_from_spec(&emit_spec(&z)).unwrap();
        assert_eq!(again, z);
    }

    #[test]
    fn ragged_and_short_tables_rejected() {
        let short = AlgebraSpec::from_json(
            r#"{"name":"x","kind":"algebra","elements":["0","1"],"operations":{"f":["0"]}}"#,
        )
        .unwrap();
        assert!(matches!(build_from_spec(&short), Err(Error::TableError(_))));
        let ragged = AlgebraSpec::from_json(
            r#"{"name":"x","kind":"algebra","elements":["0","1"],"operations":{"f":[["0","1"],"1"]}}"#,
        )
        .unwrap();
        assert!(matches!(build_from_spec(&ragged), Err(Error::TableError(_))));
    }

    #[test]
    fn unknown_label_and_field() {
        let bad = AlgebraSpec::from_json(
            r#"{"name":"x","kind":"lattice","elements":["0","1"],"cover":[["0","2"]]}"#,
        )
        .unwrap();
        assert_eq!(build_from_spec(&bad), Err(Error::UnknownLabel("2".into())));
        assert!(AlgebraSpec::from_json(r#"{"name":"x","kind":"lattice","elements":[],"bogus":1}"#).is_err());
    }

    #[test]
    fn residuated_needs_cover() {
        let spec = AlgebraSpec::from_json(
            r#"{"name":"x","kind":"residuated","elements":["0"],
               "operations":{"times":[["0"]],"implies":[["0"]]}}"#,
        )
        .unwrap();
        assert!(matches!(build_from_spec(&spec), Err(Error::Spec(_))));
    }

    #[test]
    fn broken_residuation_reports_triple() {
        // 2-element chain with times = meet but a wrong implication 0 -> 0 = 0.
        let spec = AlgebraSpec::from_json(
            r#"{"name":"bad","kind":"residuated","elements":["0","1"],"cover":[["0","1"]],
               "operations":{"times":[["0","0"],["0","1"]],"implies":[["0","1"],["0","1"]]}}"#,
        )
        .unwrap();
        assert!(matches!(
            build_from_spec(&spec),
            Err(Error::ResiduationViolation { .. })
        ));
    }
}
