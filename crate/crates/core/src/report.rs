//! Stable per-algebra reports: JSON, plain text and Graphviz DOT.
//!
//! JSON output goes through [`serde_json::Value`], whose maps are ordered, so
//! keys come out sorted and identical inputs give identical bytes.

use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{is_isomorphic, FiniteAlgebra};
use crate::boolean::osum_con_iso_check;
use crate::lifting::{lifting_report, Analysis};
use crate::{Config, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraInfo {
    pub name: String,
    pub kind: String,
    pub size: usize,
    pub elements: Vec<String>,
    pub id: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub con: usize,
    pub center: usize,
    pub fc: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagsJson {
    pub fclp: bool,
    pub cblp: bool,
    pub blp: Option<bool>,
    pub fc_normal: bool,
    pub b_normal: bool,
    pub distributive: bool,
    pub permutable: bool,
    pub arithmetical: bool,
    pub local: bool,
    pub semilocal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceRow {
    pub index: usize,
    pub blocks: String,
    pub boolean: bool,
    pub factor: bool,
    pub maximal: bool,
    pub prime: bool,
    pub fclp: bool,
    pub cblp: bool,
    /// First FC(A/θ) member with no preimage, in quotient labels.
    pub fclp_unlifted: Option<String>,
    /// First 𝓑(Con(A/θ)) member with no preimage, in quotient labels.
    pub cblp_unlifted: Option<String>,
    pub blp: Option<bool>,
}

/// Transport of Con, 𝓑 and FC across a registered ordinal-sum decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OsumSection {
    pub lower: String,
    pub upper: String,
    pub con_iso: bool,
    pub center_iso: bool,
    /// {φ ∔ ψ : φ ∈ FC(lower), ψ ∈ FC(upper)}, as block strings of the sum.
    pub fc_transport: Vec<String>,
    /// FC of the sum itself.
    pub fc: Vec<String>,
    pub fc_transports: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub algebra: AlgebraInfo,
    pub counts: Counts,
    pub flags: FlagsJson,
    pub per_congruence: Vec<CongruenceRow>,
    pub summary: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub osum: Option<OsumSection>,
    /// Free-form computed observations attached to particular fixtures.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// `|Con|=.., |B|=.., |FC|=..`.
pub fn counts_line(c: &Counts) -> String {
    format!("|Con|={}, |B|={}, |FC|={}", c.con, c.center, c.fc)
}

/// `CBLP: yes, FCLP: no`.
pub fn lifting_line(f: &FlagsJson) -> String {
    format!("CBLP: {}, FCLP: {}", yes_no(f.cblp), yes_no(f.fclp))
}

/// Builds the report. `osum` names the parts of an ordinal-sum decomposition
/// of `an.algebra` (as lower and upper algebras) when one is known.
pub fn build_report(an: &Analysis, osum: Option<(&FiniteAlgebra, &FiniteAlgebra)>) -> Result<Report> {
    let alg = &an.algebra;
    let lr = lifting_report(an)?;
    let maximal = if alg.is_trivial() {
        Vec::new()
    } else {
        an.con.maximal()?
    };
    let prime = an.con.prime();
    let per_congruence = lr
        .records
        .iter()
        .map(|r| CongruenceRow {
            index: r.index,
            blocks: r.congruence.clone(),
            boolean: r.boolean,
            factor: r.factor,
            maximal: maximal.contains(&r.index),
            prime: prime.contains(&r.index),
            fclp: r.fclp.holds,
            cblp: r.cblp.holds,
            fclp_unlifted: r.fclp.first_failure().map(str::to_string),
            cblp_unlifted: r.cblp.first_failure().map(str::to_string),
            blp: r.blp,
        })
        .collect();
    let f = &lr.flags;
    let flags = FlagsJson {
        fclp: f.fclp,
        cblp: f.cblp,
        blp: f.blp,
        fc_normal: f.fc_normal,
        b_normal: f.b_normal,
        distributive: f.distributive,
        permutable: f.permutable,
        arithmetical: f.arithmetical,
        local: f.local,
        semilocal: f.semilocal,
    };
    let counts = Counts {
        con: an.con.len(),
        center: an.center.len(),
        fc: an.fc.len(),
    };
    let osum = match osum {
        Some((lower, upper)) => Some(osum_section(an, lower, upper)?),
        None => None,
    };
    Ok(Report {
        algebra: AlgebraInfo {
            name: alg.name().to_string(),
            kind: alg.kind().as_str().to_string(),
            size: alg.size(),
            elements: alg.labels().to_vec(),
            id: alg.content_hash(),
        },
        summary: vec![counts_line(&counts), lifting_line(&flags)],
        counts,
        flags,
        per_congruence,
        osum,
        notes: Vec::new(),
    })
}

/// Recomputes the sum from its parts and maps the transported congruences
/// back onto `an.algebra` through the isomorphism between the two.
fn osum_section(an: &Analysis, lower: &FiniteAlgebra, upper: &FiniteAlgebra) -> Result<OsumSection> {
    let (sum, rep) = osum_con_iso_check(lower, upper, &an.config)?;
    let iso = crate::algebra::find_isomorphism(&sum, &an.algebra).ok_or_else(|| {
        crate::Error::PreconditionFailed(format!(
            "{} is not the ordinal sum of {} and {}",
            an.algebra.name(),
            lower.name(),
            upper.name()
        ))
    })?;
    let sum_cl = crate::conlattice::all_congruences_with(&sum, &an.config)?;
    let carry = |i: usize| -> String {
        let p = sum_cl.get(i).partition();
        let classes: Vec<usize> = {
            let mut c = vec![0; sum.size()];
            for (x, &y) in iso.iter().enumerate() {
                c[y] = iso[p.rep(x)];
            }
            c
        };
        let part = crate::Partition::from_classes(&classes);
        crate::Congruence::trusted(an.algebra.id(), part).format(&an.algebra)
    };
    let mut fc_transport: Vec<String> = rep.fc_transport.iter().map(|&i| carry(i)).collect();
    let mut fc: Vec<String> = rep.fc_sum.iter().map(|&i| carry(i)).collect();
    fc_transport.sort();
    fc.sort();
    Ok(OsumSection {
        lower: lower.name().to_string(),
        upper: upper.name().to_string(),
        con_iso: rep.con_iso,
        center_iso: rep.center_iso,
        fc_transports: rep.fc_transports(),
        fc_transport,
        fc,
    })
}

impl Report {
    /// Pretty, key-sorted JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serialises");
        let mut s = serde_json::to_string_pretty(&value).expect("value serialises");
        s.push('\n');
        s
    }

    /// Human-readable summary and per-congruence table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let a = &self.algebra;
        let _ = writeln!(out, "algebra {} ({}, {} elements)", a.name, a.kind, a.size);
        for line in &self.summary {
            let _ = writeln!(out, "{line}");
        }
        let f = &self.flags;
        let _ = writeln!(
            out,
            "FC-normal: {}, B-normal: {}, BLP: {}",
            yes_no(f.fc_normal),
            yes_no(f.b_normal),
            f.blp.map_or("n/a", yes_no)
        );
        let _ = writeln!(
            out,
            "distributive: {}, permutable: {}, arithmetical: {}, local: {}",
            yes_no(f.distributive),
            yes_no(f.permutable),
            yes_no(f.arithmetical),
            yes_no(f.local)
        );
        let width = self
            .per_congruence
            .iter()
            .map(|r| r.blocks.chars().count())
            .max()
            .unwrap_or(0)
            .max("congruence".len());
        let _ = writeln!(
            out,
            "{:>3}  {:<width$}  B    FC   max  prime  FCLP  CBLP",
            "#", "congruence"
        );
        for r in &self.per_congruence {
            let pad = width - r.blocks.chars().count();
            let _ = writeln!(
                out,
                "{:>3}  {}{}  {:<3}  {:<3}  {:<3}  {:<5}  {:<4}  {}",
                r.index,
                r.blocks,
                " ".repeat(pad),
                yes_no(r.boolean),
                yes_no(r.factor),
                yes_no(r.maximal),
                yes_no(r.prime),
                yes_no(r.fclp),
                yes_no(r.cblp)
            );
        }
        if let Some(o) = &self.osum {
            let _ = writeln!(out, "ordinal sum {} + {}", o.lower, o.upper);
            let _ = writeln!(
                out,
                "  Con transports: {}, B transports: {}, FC transports: {}",
                yes_no(o.con_iso),
                yes_no(o.center_iso),
                yes_no(o.fc_transports)
            );
            let _ = writeln!(out, "  FC(lower) + FC(upper): {}", o.fc_transport.join("  "));
            let _ = writeln!(out, "  FC(sum):               {}", o.fc.join("  "));
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}

/// Hasse diagram of Con(A). Boolean congruences are double circles, factor
/// congruences are filled.
pub fn con_dot(an: &Analysis) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"Con({})\" {{", an.algebra.name());
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(
        out,
        "  label=\"Con({}): doublecircle = Boolean congruence, filled = factor congruence\";",
        an.algebra.name()
    );
    let _ = writeln!(out, "  node [shape=circle];");
    for i in 0..an.con.len() {
        let shape = if an.center.contains(i) {
            "doublecircle"
        } else {
            "circle"
        };
        let style = if an.fc.contains(i) {
            ", style=filled, fillcolor=lightgray"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  c{i} [label=\"{}\", shape={shape}{style}];",
            an.format(i).replace('"', "\\\"")
        );
    }
    for (lo, hi) in an.con.covers() {
        let _ = writeln!(out, "  c{lo} -> c{hi};");
    }
    out.push_str("}\n");
    out
}

/// Report for a named fixture, with the ordinal-sum section when the fixture
/// has a registered decomposition.
pub fn fixture_report(name: &str, cfg: &Config) -> Result<Report> {
    let alg = crate::fixtures::fixture(name)?;
    fixture_report_for(name, &Analysis::with_config(&alg, cfg)?)
}

/// [`fixture_report`] over an analysis the caller already has (for instance
/// one rebuilt from a cache).
pub fn fixture_report_for(name: &str, an: &Analysis) -> Result<Report> {
    let mut report = match crate::fixtures::osum_parts(name) {
        Some((l, u)) => {
            let (l, u) = (crate::fixtures::fixture(l)?, crate::fixtures::fixture(u)?);
            build_report(an, Some((&l, &u)))?
        }
        None => build_report(an, None)?,
    };
    if name == "P" {
        report.notes = quotient_notes(an)?;
    }
    Ok(report)
}

/// One line per proper nontrivial quotient: its size and which of L2, L2x2
/// it is isomorphic to. Recorded for P, where the quotient shapes are easy
/// to misread.
fn quotient_notes(an: &Analysis) -> Result<Vec<String>> {
    let l2 = crate::fixtures::fixture("L2")?;
    let l22 = crate::fixtures::fixture("L2x2")?;
    let mut notes = Vec::new();
    for t in 1..an.con.len().saturating_sub(1) {
        let q = an.quotient(t).quotient;
        let shape = if is_isomorphic(&q, &l2) {
            "L2"
        } else if is_isomorphic(&q, &l22) {
            "L2x2"
        } else {
            "neither L2 nor L2x2"
        };
        notes.push(format!(
            "{}/{}: {} elements, isomorphic to {shape}",
            an.algebra.name(),
            an.format(t),
            q.size()
        ));
    }
    Ok(notes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn txe_and_e_summaries() {
        let r = fixture_report("TxE", &Config::default()).unwrap();
        assert_eq!(r.summary[0], "|Con|=24, |B|=16, |FC|=4");
        let e = fixture_report("E", &Config::default()).unwrap();
        assert_eq!(e.summary[1], "CBLP: yes, FCLP: yes");
    }

    #[test]
    fn x_exhibits_fc_divergence() {
        let r = fixture_report("X", &Config::default()).unwrap();
        let o = r.osum.unwrap();
        assert!(o.con_iso && o.center_iso && !o.fc_transports);
        assert_eq!(o.fc_transport.len(), 8);
        assert_eq!(o.fc.len(), 2);
    }

    #[test]
    fn json_is_deterministic_and_sorted() {
        let a = fixture_report("P", &Config::default()).unwrap().to_json();
        let b = fixture_report("P", &Config::sequential()).unwrap().to_json();
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(a.find("\"algebra\"").unwrap() < a.find("\"counts\"").unwrap());
    }

    #[test]
    fn dot_marks_membership() {
        let an = Analysis::new(&crate::fixture("P").unwrap()).unwrap();
        let d = con_dot(&an);
        assert_eq!(d.matches("doublecircle,").count(), 2);
        assert_eq!(d.matches("style=filled").count(), 2);
        assert_eq!(d.matches("->").count(), an.con.covers().len());
    }
}
