//! Element-level Boolean lifting: complemented elements, filters, ideals and
//! their congruences, and the reticulation of a residuated lattice.

use crate::algebra::{from_order, FiniteAlgebra, Kind};
use crate::congruence::{Congruence, Relation};
use crate::conlattice::all_congruences;
use crate::lifting::{algebra_cblp, algebra_fclp, quotient, Analysis};
use crate::{Error, Result};

/// Largest carrier for which filters and ideals are enumerated.
pub const MAX_FILTER_CARRIER: usize = 12;

/// The complemented elements of a bounded lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementBooleanCenter {
    members: Vec<usize>,
    complement: Vec<Option<usize>>,
}

impl ElementBooleanCenter {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.complement[e].is_some()
    }

    pub fn complement(&self, e: usize) -> Option<usize> {
        self.complement[e]
    }
}

/// Scans for complements. An element with two complements is reported as
/// [`Error::AmbiguousComplement`] rather than resolved.
pub fn element_boolean_center(alg: &FiniteAlgebra) -> Result<ElementBooleanCenter> {
    alg.require_lattice()?;
    let n = alg.size();
    let (zero, one) = (alg.bottom(), alg.top());
    let mut complement = vec![None; n];
    for a in 0..n {
        for b in 0..n {
            if alg.join(a, b) == one && alg.meet(a, b) == zero {
                if let Some(first) = complement[a] {
                    return Err(Error::AmbiguousComplement {
                        element: alg.label(a).into(),
                        first: alg.label(first).into(),
                        second: alg.label(b).into(),
                    });
                }
                complement[a] = Some(b);
            }
        }
    }
    let members = (0..n).filter(|&a| complement[a].is_some()).collect();
    Ok(ElementBooleanCenter {
        members,
        complement,
    })
}

/// The first complemented element of A/θ (by quotient index) that has no
/// complemented preimage, if any.
pub fn blp_failure(alg: &FiniteAlgebra, theta: &Congruence) -> Result<Option<usize>> {
    let q = quotient(alg, theta)?;
    let b_a = element_boolean_center(alg)?;
    let b_q = element_boolean_center(&q.quotient)?;
    Ok(b_q
        .members()
        .iter()
        .copied()
        .find(|&x| !b_a.members().iter().any(|&a| q.projection[a] == x)))
}

/// Every complemented class of A/θ contains a complemented element of A.
pub fn has_blp(alg: &FiniteAlgebra, theta: &Congruence) -> Result<bool> {
    Ok(blp_failure(alg, theta)?.is_none())
}

pub fn algebra_blp(alg: &FiniteAlgebra) -> Result<bool> {
    let cl = all_congruences(alg)?;
    for c in cl.elements() {
        if !has_blp(alg, c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Filters (or ideals) as sorted element lists, plus which are principal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    pub sets: Vec<Vec<usize>>,
    pub principal: Vec<bool>,
}

impl SetFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Maximal proper members under inclusion.
    pub fn maximal_proper(&self, n: usize) -> Vec<&[usize]> {
        let proper: Vec<&Vec<usize>> = self.sets.iter().filter(|s| s.len() < n).collect();
        proper
            .iter()
            .filter(|s| {
                !proper
                    .iter()
                    .any(|t| t.len() > s.len() && s.iter().all(|x| t.contains(x)))
            })
            .map(|s| s.as_slice())
            .collect()
    }
}

fn check_filter_carrier(alg: &FiniteAlgebra) -> Result<()> {
    alg.require_lattice()?;
    if alg.size() > MAX_FILTER_CARRIER {
        return Err(Error::SizeCap {
            what: "filter enumeration carrier",
            limit: MAX_FILTER_CARRIER,
            actual: alg.size(),
        });
    }
    Ok(())
}

/// Why `set` is not a filter, if it is not one. Residuated filters must be
/// closed under the monoid product; lattice filters under meet.
fn filter_defect(alg: &FiniteAlgebra, set: &[bool]) -> Option<String> {
    let n = alg.size();
    if !set.iter().any(|&b| b) {
        return Some("filters are non-empty".into());
    }
    let residuated = alg.kind() == Kind::Residuated;
    for x in (0..n).filter(|&x| set[x]) {
        for y in 0..n {
            if alg.leq(x, y) && !set[y] {
                return Some(format!(
                    "{} is in the set but {} above it is not",
                    alg.label(x),
                    alg.label(y)
                ));
            }
            if set[y] {
                let (p, name) = if residuated {
                    (alg.times(x, y), "times")
                } else {
                    (alg.meet(x, y), "meet")
                };
                if !set[p] {
                    return Some(format!(
                        "{name}({}, {}) = {} is missing",
                        alg.label(x),
                        alg.label(y),
                        alg.label(p)
                    ));
                }
            }
        }
    }
    None
}

fn ideal_defect(alg: &FiniteAlgebra, set: &[bool]) -> Option<String> {
    let n = alg.size();
    if !set.iter().any(|&b| b) {
        return Some("ideals are non-empty".into());
    }
    for x in (0..n).filter(|&x| set[x]) {
        for y in 0..n {
            if alg.leq(y, x) && !set[y] {
                return Some(format!(
                    "{} is in the set but {} below it is not",
                    alg.label(x),
                    alg.label(y)
                ));
            }
            if set[y] && !set[alg.join(x, y)] {
                return Some(format!(
                    "join({}, {}) = {} is missing",
                    alg.label(x),
                    alg.label(y),
                    alg.label(alg.join(x, y))
                ));
            }
        }
    }
    None
}

fn mask(n: usize, elems: &[usize]) -> Result<Vec<bool>> {
    let mut m = vec![false; n];
    for &e in elems {
        if e >= n {
            return Err(Error::TableError(format!("element index {e} out of range")));
        }
        m[e] = true;
    }
    Ok(m)
}

/// [x): `{y | x ≤ y}` for lattices, `{y | xⁿ ≤ y for some n}` for
/// residuated lattices.
pub fn principal_filter(alg: &FiniteAlgebra, x: usize) -> Vec<usize> {
    let n = alg.size();
    let mut lower = vec![x];
    if alg.kind() == Kind::Residuated {
        let mut p = x;
        loop {
            let next = alg.times(p, x);
            if next == p {
                break;
            }
            p = next;
            lower.push(p);
        }
    }
    (0..n)
        .filter(|&y| lower.iter().any(|&l| alg.leq(l, y)))
        .collect()
}

fn enumerate(
    alg: &FiniteAlgebra,
    defect: fn(&FiniteAlgebra, &[bool]) -> Option<String>,
    principal: impl Fn(usize) -> Vec<usize>,
) -> Result<SetFamily> {
    check_filter_carrier(alg)?;
    let n = alg.size();
    let principals: Vec<Vec<usize>> = (0..n).map(principal).collect();
    let mut sets = Vec::new();
    for bits in 1u32..(1 << n) {
        let set: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        if defect(alg, &set).is_none() {
            sets.push((0..n).filter(|&i| set[i]).collect::<Vec<_>>());
        }
    }
    sets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let principal = sets.iter().map(|s| principals.contains(s)).collect();
    Ok(SetFamily { sets, principal })
}

/// All filters, smallest first.
pub fn filters(alg: &FiniteAlgebra) -> Result<SetFamily> {
    enumerate(alg, filter_defect, |x| principal_filter(alg, x))
}

/// All lattice ideals, smallest first.
pub fn ideals(alg: &FiniteAlgebra) -> Result<SetFamily> {
    enumerate(alg, ideal_defect, |x| {
        (0..alg.size()).filter(|&y| alg.leq(y, x)).collect()
    })
}

fn require_distributive_or_residuated(alg: &FiniteAlgebra) -> Result<()> {
    alg.require_lattice()?;
    if alg.kind() != Kind::Residuated && !alg.is_distributive_lattice() {
        return Err(Error::LatticeNotDistributive);
    }
    Ok(())
}

fn relation_congruence(
    alg: &FiniteAlgebra,
    related: impl Fn(usize, usize) -> bool,
) -> Result<Congruence> {
    let n = alg.size();
    let mut rel = Relation::empty(n);
    for x in 0..n {
        for y in 0..n {
            if related(x, y) {
                rel.insert(x, y);
            }
        }
    }
    let p = rel
        .as_partition()
        .ok_or_else(|| Error::NotACongruence("relation is not an equivalence".into()))?;
    Congruence::new(alg, p)
}

/// Residuated: `x ~ y` iff `(x → y) ⊙ (y → x) ∈ F`. Lattices:
/// `x ~ y` iff `x ∧ a = y ∧ a` for some `a ∈ F`.
pub fn filter_congruence(alg: &FiniteAlgebra, filter: &[usize]) -> Result<Congruence> {
    require_distributive_or_residuated(alg)?;
    let set = mask(alg.size(), filter)?;
    if let Some(why) = filter_defect(alg, &set) {
        return Err(Error::NotAFilter(why));
    }
    if alg.kind() == Kind::Residuated {
        relation_congruence(alg, |x, y| {
            set[alg.times(alg.implies(x, y), alg.implies(y, x))]
        })
    } else {
        relation_congruence(alg, |x, y| {
            filter.iter().any(|&a| alg.meet(x, a) == alg.meet(y, a))
        })
    }
}

/// `x ~ y` iff `x ∨ a = y ∨ a` for some `a ∈ I`.
pub fn ideal_congruence(alg: &FiniteAlgebra, ideal: &[usize]) -> Result<Congruence> {
    require_distributive_or_residuated(alg)?;
    if alg.kind() == Kind::Residuated {
        return Err(Error::KindError(
            "ideal congruences are defined for lattices; use the lattice reduct".into(),
        ));
    }
    let set = mask(alg.size(), ideal)?;
    if let Some(why) = ideal_defect(alg, &set) {
        return Err(Error::NotAnIdeal(why));
    }
    relation_congruence(alg, |x, y| {
        ideal.iter().any(|&a| alg.join(x, a) == alg.join(y, a))
    })
}

/// Every filter congruence has BLP.
pub fn has_filt_blp(alg: &FiniteAlgebra) -> Result<bool> {
    for f in filters(alg)?.sets {
        if !has_blp(alg, &filter_congruence(alg, &f)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every ideal congruence has BLP.
pub fn has_id_blp(alg: &FiniteAlgebra) -> Result<bool> {
    for i in ideals(alg)?.sets {
        if !has_blp(alg, &ideal_congruence(alg, &i)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// 𝓛(R): the principal filters of a residuated lattice as a bounded
/// lattice with join = ∩, meet = the filter generated by the union,
/// bottom = [0) = R and top = [1) = {1}.
///
/// The order is reverse inclusion: F ≤ G iff F ⊇ G. Each filter is labelled
/// `[x)` after the least index generating it.
pub fn reticulation(alg: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    if alg.kind() != Kind::Residuated {
        return Err(Error::KindError(format!("{} is not residuated", alg.name())));
    }
    let mut filters: Vec<Vec<usize>> = Vec::new();
    let mut labels = Vec::new();
    for x in 0..alg.size() {
        let f = principal_filter(alg, x);
        if !filters.contains(&f) {
            filters.push(f);
            labels.push(format!("[{})", alg.label(x)));
        }
    }
    let leq: Vec<Vec<bool>> = filters
        .iter()
        .map(|f| filters.iter().map(|g| g.iter().all(|e| f.contains(e))).collect())
        .collect();
    from_order(
        format!("L({})", alg.name()),
        Kind::BoundedLattice,
        labels,
        &leq,
        Vec::new(),
    )
}

/// BLP, CBLP and FCLP verdicts, and whether they agree as required for the
/// algebra's kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlpEquivalence {
    pub blp: bool,
    pub cblp: bool,
    pub fclp: bool,
    /// Residuated: all three agree. Bounded distributive: BLP = FCLP and CBLP
    /// holds. A `false` here is an implementation bug.
    pub consistent: bool,
}

pub fn blp_equivalence_check(alg: &FiniteAlgebra) -> Result<BlpEquivalence> {
    let residuated = alg.kind() == Kind::Residuated;
    if !residuated && !(alg.kind().is_lattice() && alg.is_distributive_lattice()) {
        return Err(Error::KindError(
            "needs a residuated or bounded distributive lattice".into(),
        ));
    }
    let an = Analysis::new(alg)?;
    let blp = algebra_blp(alg)?;
    let cblp = algebra_cblp(&an)?.holds;
    let fclp = algebra_fclp(&an)?.holds;
    let consistent = if residuated {
        blp == cblp && cblp == fclp
    } else {
        blp == fclp && cblp
    };
    Ok(BlpEquivalence {
        blp,
        cblp,
        fclp,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{is_isomorphic, lattice_reduct};
    use crate::fixtures::fixture;

    fn labels(alg: &FiniteAlgebra, elems: &[usize]) -> Vec<String> {
        elems.iter().map(|&e| alg.label(e).to_string()).collect()
    }

    #[test]
    fn element_centers() {
        let a = fixture("L2timesL3").unwrap();
        let b = element_boolean_center(&a).unwrap();
        assert_eq!(labels(&a, b.members()), ["0", "s", "p", "1"]);
        assert_eq!(element_boolean_center(&fixture("L3").unwrap()).unwrap().len(), 2);
        assert_eq!(element_boolean_center(&fixture("R0").unwrap()).unwrap().len(), 2);
    }

    #[test]
    fn diamond_complements_are_ambiguous() {
        let err = element_boolean_center(&fixture("D").unwrap()).unwrap_err();
        assert!(matches!(err, Error::AmbiguousComplement { .. }));
    }

    #[test]
    fn r0_filters() {
        let r0 = fixture("R0").unwrap();
        let f = filters(&r0).unwrap();
        let max = f.maximal_proper(r0.size());
        assert_eq!(max.len(), 1);
        let mut l = labels(&r0, max[0]);
        l.sort();
        assert_eq!(l, ["1", "a", "b", "c"]);
        assert!(f.principal.iter().all(|&p| p));
    }

    #[test]
    fn filter_congruences_on_l3() {
        let l3 = fixture("L3").unwrap();
        let (m, one) = (l3.index_of("m").unwrap(), l3.index_of("1").unwrap());
        let psi = filter_congruence(&l3, &[m, one]).unwrap();
        assert_eq!(psi, Congruence::parse(&l3, "0|m,1").unwrap());
        assert!(filter_congruence(&l3, &[one]).unwrap().is_delta());
        assert!(matches!(filter_congruence(&l3, &[m]), Err(Error::NotAFilter(_))));
        assert!(matches!(ideal_congruence(&l3, &[one]), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn residuated_filters_biject_with_congruences() {
        let r0 = fixture("R0").unwrap();
        let cl = all_congruences(&r0).unwrap();
        let fs = filters(&r0).unwrap();
        let mut images: Vec<usize> = fs
            .sets
            .iter()
            .map(|f| cl.index_of(&filter_congruence(&r0, f).unwrap()).unwrap())
            .collect();
        images.sort_unstable();
        images.dedup();
        assert_eq!(images.len(), cl.len());
    }

    #[test]
    fn blp_verdicts() {
        assert!(algebra_blp(&fixture("R0").unwrap()).unwrap());
        let l = fixture("L2osumL2x2").unwrap();
        assert!(!algebra_blp(&l).unwrap());
        assert!(!has_id_blp(&l).unwrap());
        assert!(has_filt_blp(&fixture("L2x2").unwrap()).unwrap());
        assert!(has_filt_blp(&fixture("L1").unwrap()).unwrap());
        let p = fixture("P").unwrap();
        assert!(matches!(
            has_blp(&p, &Congruence::delta(&p)),
            Err(Error::AmbiguousComplement { .. })
        ));
    }

    #[test]
    fn reticulation_of_r0() {
        let r0 = fixture("R0").unwrap();
        let ret = reticulation(&r0).unwrap();
        assert_eq!(ret.size(), 5);
        assert!(is_isomorphic(&ret, &lattice_reduct(&r0).unwrap()));
        assert_eq!(ret.label(ret.bottom()), "[0)");
        assert_eq!(ret.label(ret.top()), "[1)");
    }

    #[test]
    fn equivalences() {
        let r = blp_equivalence_check(&fixture("R0").unwrap()).unwrap();
        assert!(r.blp && r.cblp && r.fclp && r.consistent);
        let l = blp_equivalence_check(&fixture("L2osumL2x2").unwrap()).unwrap();
        assert!(!l.blp && l.cblp && !l.fclp && l.consistent);
        let b = blp_equivalence_check(&fixture("L2x2").unwrap()).unwrap();
        assert!(b.blp && b.cblp && b.fclp);
    }
}
