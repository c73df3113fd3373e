//! The `check` verb: one decision per property, with evidence on failure.

use congrlab_core::blp::{
    algebra_blp, blp_failure, filter_congruence, filters, ideal_congruence, ideals,
};
use congrlab_core::boolean::{crt_characterization, crt_counterexample, CRT_MAX_K};
use congrlab_core::congruence::permutes;
use congrlab_core::lifting::{
    algebra_cblp, algebra_fclp, is_b_normal, is_fc_normal, quotient, Analysis, AlgebraVerdict,
    Normality,
};
use congrlab_core::{Congruence, FiniteAlgebra};
use serde_json::json;

use crate::render::{json_text, name};
use crate::{CliError, Property};

pub struct Verdict {
    pub holds: bool,
    /// First line of the table output, e.g. "FCLP: yes; CBLP: no".
    headline: String,
    evidence: Vec<String>,
}

impl Verdict {
    pub fn render(&self, an: &Analysis, property: Property, as_json: bool) -> String {
        if as_json {
            return json_text(&json!({
                "algebra": an.algebra.name(),
                "property": label(property),
                "holds": self.holds,
                "summary": self.headline,
                "evidence": self.evidence,
            }));
        }
        let mut out = format!("{}\n", self.headline);
        for line in &self.evidence {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

fn label(p: Property) -> &'static str {
    match p {
        Property::Fclp => "FCLP",
        Property::Cblp => "CBLP",
        Property::Blp => "BLP",
        Property::FiltBlp => "Filt-BLP",
        Property::IdBlp => "Id-BLP",
        Property::FcNormal => "FC-normal",
        Property::BNormal => "B-normal",
        Property::Arithmetical => "arithmetical",
        Property::Crt => "CRT",
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn simple(property: Property, holds: bool, evidence: Vec<String>) -> Verdict {
    Verdict {
        holds,
        headline: format!("{}: {}", label(property), yes_no(holds)),
        evidence,
    }
}

pub fn run(an: &Analysis, property: Property) -> Result<Verdict, CliError> {
    let alg = &an.algebra;
    Ok(match property {
        Property::Fclp | Property::Cblp => {
            let fclp = algebra_fclp(an)?;
            let cblp = algebra_cblp(an)?;
            let (main, other, main_set, other_label) = match property {
                Property::Fclp => (&fclp, &cblp, "FC", "CBLP"),
                _ => (&cblp, &fclp, "B", "FCLP"),
            };
            Verdict {
                holds: main.holds,
                headline: format!(
                    "{}: {}; {other_label}: {}",
                    label(property),
                    yes_no(main.holds),
                    yes_no(other.holds)
                ),
                evidence: lifting_evidence(an, main, main_set),
            }
        }
        Property::Blp => {
            let holds = algebra_blp(alg)?;
            let mut evidence = Vec::new();
            if !holds {
                for t in 0..an.con.len() {
                    if let Some(line) = blp_evidence(alg, an.congruence(t))? {
                        evidence.push(format!("fails at {} = {}: {line}", name(an, t), an.format(t)));
                        break;
                    }
                }
            }
            simple(property, holds, evidence)
        }
        Property::FiltBlp | Property::IdBlp => {
            let (family, kind) = match property {
                Property::FiltBlp => (filters(alg)?, "filter"),
                _ => (ideals(alg)?, "ideal"),
            };
            let mut evidence = Vec::new();
            for set in &family.sets {
                let theta = match property {
                    Property::FiltBlp => filter_congruence(alg, set)?,
                    _ => ideal_congruence(alg, set)?,
                };
                if let Some(line) = blp_evidence(alg, &theta)? {
                    evidence.push(format!(
                        "fails for the {kind} {} with congruence {}: {line}",
                        alg.format_set(set),
                        theta.format(alg)
                    ));
                    break;
                }
            }
            simple(property, evidence.is_empty(), evidence)
        }
        Property::FcNormal => {
            let n = is_fc_normal(an);
            let evidence = normality_evidence(an, &n, "∘", "FC(A)");
            simple(property, n.holds, evidence)
        }
        Property::BNormal => {
            let n = is_b_normal(an);
            let evidence = normality_evidence(an, &n, "∨", "B(Con A)");
            simple(property, n.holds, evidence)
        }
        Property::Arithmetical => {
            let mut evidence = Vec::new();
            if let Some(line) = distributivity_failure(an) {
                evidence.push(line);
            }
            if let Some(line) = permutability_failure(an)? {
                evidence.push(line);
            }
            simple(property, evidence.is_empty(), evidence)
        }
        Property::Crt => {
            let all: Vec<usize> = (0..an.con.len()).collect();
            let holds = crt_characterization(&an.con, &all)?;
            let mut evidence = Vec::new();
            if !holds {
                evidence.extend(distributivity_failure(an));
                evidence.extend(permutability_failure(an)?);
                if let Some(w) = crt_counterexample(&an.con, &all, CRT_MAX_K)? {
                    let system: Vec<String> = w
                        .thetas
                        .iter()
                        .zip(&w.elements)
                        .map(|(&t, &a)| format!("x ≡ {} mod {}", alg.label(a), an.format(t)))
                        .collect();
                    evidence.push(format!("unsolvable system: {}", system.join("; ")));
                }
            }
            simple(property, holds, evidence)
        }
    })
}

fn lifting_evidence(an: &Analysis, v: &AlgebraVerdict, set: &str) -> Vec<String> {
    let Some((t, lifting)) = &v.failing else {
        return Vec::new();
    };
    let target = lifting.first_failure().unwrap_or("?");
    vec![format!(
        "fails at {} = {}: {target} in {set}(A/θ) is not the image of any member of {set}(A)",
        name(an, *t),
        an.format(*t)
    )]
}

/// Why θ fails BLP, if it does.
fn blp_evidence(alg: &FiniteAlgebra, theta: &Congruence) -> Result<Option<String>, CliError> {
    let Some(x) = blp_failure(alg, theta)? else {
        return Ok(None);
    };
    let q = quotient(alg, theta)?;
    Ok(Some(format!(
        "the class {} is complemented in the quotient but holds no complemented element",
        q.quotient.label(x)
    )))
}

fn normality_evidence(an: &Analysis, n: &Normality, op: &str, set: &str) -> Vec<String> {
    let Some((phi, psi)) = n.failure else {
        return Vec::new();
    };
    vec![format!(
        "φ = {}, ψ = {} satisfy φ {op} ψ = ∇ but no α in {set} has φ ∨ α = ψ ∨ ¬α = ∇",
        an.format(phi),
        an.format(psi)
    )]
}

fn distributivity_failure(an: &Analysis) -> Option<String> {
    let cl = &an.con;
    let m = cl.len();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if cl.meet(a, cl.join(b, c)) != cl.join(cl.meet(a, b), cl.meet(a, c)) {
                    return Some(format!(
                        "Con(A) is not distributive: α ∧ (β ∨ γ) ≠ (α ∧ β) ∨ (α ∧ γ) for α = {}, β = {}, γ = {}",
                        an.format(a),
                        an.format(b),
                        an.format(c)
                    ));
                }
            }
        }
    }
    None
}

fn permutability_failure(an: &Analysis) -> Result<Option<String>, CliError> {
    let m = an.con.len();
    for a in 0..m {
        for b in a + 1..m {
            if !permutes(an.congruence(a), an.congruence(b))? {
                return Ok(Some(format!(
                    "{} and {} do not permute",
                    an.format(a),
                    an.format(b)
                )));
            }
        }
    }
    Ok(None)
}
