//! Table, JSON and DOT rendering for the listing and construction verbs.

use std::fmt::Write as _;

use congrlab_core::algebra::{BOT, JOIN, MEET, TOP};
use congrlab_core::fixtures::fixture_names;
use congrlab_core::lifting::Analysis;
use congrlab_core::{emit_spec, fixture, FiniteAlgebra};
use serde_json::{json, Value};

use crate::{fail, CliError, Format};

/// Display name of congruence `i`: Δ, θ1, θ2, ..., ∇.
pub fn name(an: &Analysis, i: usize) -> String {
    if i == an.con.delta() {
        "Δ".into()
    } else if i == an.con.nabla() {
        "∇".into()
    } else {
        format!("θ{i}")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Pretty JSON (keys sorted by `serde_json`'s ordered map) plus newline.
pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serialises");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces; widths count chars.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let header: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    for row in std::iter::once(&header).chain(rows) {
        let mut line = String::new();
        for (k, (cell, w)) in row.iter().zip(&widths).enumerate() {
            if k > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            line.push_str(&" ".repeat(w - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn congruences(an: &Analysis, as_json: bool) -> String {
    let alg = &an.algebra;
    if as_json {
        let rows: Vec<Value> = (0..an.con.len())
            .map(|i| {
                json!({
                    "index": i,
                    "name": name(an, i),
                    "blocks": an.format(i),
                    "boolean": an.center.contains(i),
                    "factor": an.fc.contains(i),
                })
            })
            .collect();
        return json_text(&json!({"algebra": alg.name(), "congruences": rows}));
    }
    let rows: Vec<Vec<String>> = (0..an.con.len())
        .map(|i| {
            vec![
                name(an, i),
                an.format(i),
                yes_no(an.center.contains(i)).into(),
                yes_no(an.fc.contains(i)).into(),
            ]
        })
        .collect();
    format!(
        "Con({}): {} congruences\n{}",
        alg.name(),
        an.con.len(),
        table(&["name", "blocks", "B", "FC"], &rows)
    )
}

/// Members of 𝓑 or FC with their complements.
pub fn members(an: &Analysis, title: &str, members: &[usize], as_json: bool) -> String {
    let alg = &an.algebra;
    let complement = |i: usize| an.center.complement(i).expect("member is complemented");
    if as_json {
        let rows: Vec<Value> = members
            .iter()
            .map(|&i| {
                json!({
                    "index": i,
                    "name": name(an, i),
                    "blocks": an.format(i),
                    "complement": an.format(complement(i)),
                })
            })
            .collect();
        return json_text(&json!({"algebra": alg.name(), "set": title, "members": rows}));
    }
    let rows: Vec<Vec<String>> = members
        .iter()
        .map(|&i| vec![name(an, i), an.format(i), an.format(complement(i))])
        .collect();
    format!(
        "{title}({}): {} of {} congruences\n{}",
        alg.name(),
        members.len(),
        an.con.len(),
        table(&["name", "blocks", "complement"], &rows)
    )
}

/// A constructed algebra: summary table, JSON spec, or its Hasse diagram.
pub fn algebra(alg: &FiniteAlgebra, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(spec_json(alg)),
        Format::Dot => hasse_dot(alg),
        Format::Table => Ok(algebra_table(alg)),
    }
}

/// The rebuilding spec of `alg`, key-sorted.
pub fn spec_json(alg: &FiniteAlgebra) -> String {
    json_text(&serde_json::to_value(emit_spec(alg)).expect("spec serialises"))
}

fn algebra_table(alg: &FiniteAlgebra) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "algebra {} ({}, {} elements)",
        alg.name(),
        alg.kind().as_str(),
        alg.size()
    );
    let _ = writeln!(out, "elements: {}", alg.labels().join(" "));
    let lattice = alg.kind().is_lattice();
    if lattice {
        let covers: Vec<String> = alg
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", alg.label(a), alg.label(b)))
            .collect();
        let _ = writeln!(out, "covers: {}", covers.join(" "));
    }
    for op in alg.operations() {
        if lattice && matches!(op.name(), JOIN | MEET | BOT | TOP) {
            continue;
        }
        let t = op.table();
        match op.arity() {
            0 => {
                let _ = writeln!(out, "{} = {}", op.name(), alg.label(t[0] as usize));
            }
            1 => {
                let maps: Vec<String> = (0..alg.size())
                    .map(|a| format!("{}->{}", alg.label(a), alg.label(t[a] as usize)))
                    .collect();
                let _ = writeln!(out, "{}: {}", op.name(), maps.join(" "));
            }
            2 => {
                let _ = writeln!(out, "{}:", op.name());
                let mut header = vec![""];
                header.extend(alg.labels().iter().map(String::as_str));
                let rows: Vec<Vec<String>> = (0..alg.size())
                    .map(|a| {
                        std::iter::once(alg.label(a).to_string())
                            .chain((0..alg.size()).map(|b| {
                                alg.label(alg.apply(op_index(alg, op.name()), &[a, b]))
                                    .to_string()
                            }))
                            .collect()
                    })
                    .collect();
                for line in table(&header, &rows).lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
            k => {
                let _ = writeln!(out, "{}: {k}-ary (use --format json for the table)", op.name());
            }
        }
    }
    out
}

fn op_index(alg: &FiniteAlgebra, name: &str) -> usize {
    alg.signature()
        .position(name)
        .expect("operation belongs to its own signature")
}

fn hasse_dot(alg: &FiniteAlgebra) -> Result<String, CliError> {
    if !alg.kind().is_lattice() {
        return fail(format!(
            "{} is a {}; Hasse diagrams need a lattice",
            alg.name(),
            alg.kind().as_str()
        ));
    }
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", alg.name().replace('"', "\\\""));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=plaintext];");
    for (e, label) in alg.labels().iter().enumerate() {
        let _ = writeln!(out, "  e{e} [label=\"{}\"];", label.replace('"', "\\\""));
    }
    for (a, b) in alg.covers() {
        let _ = writeln!(out, "  e{a} -> e{b} [arrowhead=none];");
    }
    out.push_str("}\n");
    Ok(out)
}

pub fn fixture_list(as_json: bool) -> String {
    let rows: Vec<(String, String, usize)> = fixture_names()
        .into_iter()
        .map(|n| {
            let a = fixture(n).expect("registered fixtures build");
            (n.to_string(), a.kind().as_str().to_string(), a.size())
        })
        .collect();
    if as_json {
        let v: Vec<Value> = rows
            .iter()
            .map(|(n, k, s)| json!({"name": n, "kind": k, "size": s}))
            .collect();
        return json_text(&Value::Array(v));
    }
    let rows: Vec<Vec<String>> = rows
        .into_iter()
        .map(|(n, k, s)| vec![n, k, s.to_string()])
        .collect();
    table(&["name", "kind", "size"], &rows)
}
