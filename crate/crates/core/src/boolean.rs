//! Boolean centers, factor congruences, the Chinese Remainder Theorem, and
//! congruence transport across products and ordinal sums.

use std::collections::{HashMap, HashSet};

use crate::algebra::{
    direct_product_with, ordinal_sum_with_embedding, FiniteAlgebra, OrdinalSumEmbedding,
    ProductEncoding,
};
use crate::congruence::{compose, composes_to_full, meet, principal_congruence, Congruence, Relation};
use crate::conlattice::{all_congruences_with, ConLattice};
use crate::lifting::quotient;
use crate::partition::{Partition, UnionFind};
use crate::{par, Config, Error, Result};

/// 𝓑(Con(A)): the complemented congruences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanCenter {
    members: Vec<usize>,
    complement: Vec<Option<usize>>,
}

impl BooleanCenter {
    /// Member indices into the congruence lattice, in canonical order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.complement[i].is_some()
    }

    /// ¬θ for a member θ.
    pub fn complement(&self, i: usize) -> Option<usize> {
        self.complement[i]
    }
}

/// Scans Con(A) for complements. Complements are unique because Con(A) must
/// be distributive; otherwise this fails with [`Error::NotDistributive`].
pub fn boolean_center(cl: &ConLattice) -> Result<BooleanCenter> {
    if !cl.is_distributive() {
        return Err(Error::NotDistributive);
    }
    let m = cl.len();
    let complement: Vec<Option<usize>> = (0..m)
        .map(|i| {
            (0..m).find(|&j| cl.join(i, j) == cl.nabla() && cl.meet(i, j) == cl.delta())
        })
        .collect();
    let members = (0..m).filter(|&i| complement[i].is_some()).collect();
    Ok(BooleanCenter {
        members,
        complement,
    })
}

/// FC(A): Boolean congruences that permute with their complement.
#[derive(Debug, Clone)]
pub struct FactorAlgebra {
    members: Vec<usize>,
    member: Vec<bool>,
    /// θ ∘ ¬θ for every Boolean θ.
    composites: HashMap<usize, Relation>,
}

impl FactorAlgebra {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.member[i]
    }

    /// The cached relation θ ∘ ¬θ for a Boolean congruence θ.
    pub fn composite(&self, i: usize) -> Option<&Relation> {
        self.composites.get(&i)
    }
}

pub fn factor_congruences(cl: &ConLattice, center: &BooleanCenter) -> FactorAlgebra {
    factor_congruences_with(cl, center, &Config::default())
}

pub fn factor_congruences_with(
    cl: &ConLattice,
    center: &BooleanCenter,
    cfg: &Config,
) -> FactorAlgebra {
    let composites: Vec<Relation> = par::map(cfg, center.members(), |&i| {
        let neg = center.complement(i).unwrap();
        compose(cl.get(i), cl.get(neg)).unwrap()
    });
    let mut member = vec![false; cl.len()];
    let mut members = Vec::new();
    let mut cache = HashMap::new();
    for (&i, rel) in center.members().iter().zip(composites) {
        if rel.is_full() {
            member[i] = true;
            members.push(i);
        }
        cache.insert(i, rel);
    }
    FactorAlgebra {
        members,
        member,
        composites: cache,
    }
}

/// φ ∘ ψ = ∇ and φ ∩ ψ = Δ.
pub fn is_factor_pair(phi: &Congruence, psi: &Congruence) -> Result<bool> {
    Ok(composes_to_full(phi, psi)? && meet(phi, psi)?.is_delta())
}

/// Ω satisfies the CRT iff it is distributive and its members pairwise
/// permute. Ω must be a bounded sublattice of Con(A).
pub fn crt_characterization(cl: &ConLattice, omega: &[usize]) -> Result<bool> {
    cl.is_bounded_sublattice(omega)?;
    let distributive = omega.iter().all(|&a| {
        omega.iter().all(|&b| {
            omega
                .iter()
                .all(|&c| cl.meet(a, cl.join(b, c)) == cl.join(cl.meet(a, b), cl.meet(a, c)))
        })
    });
    if !distributive {
        return Ok(false);
    }
    for (x, &a) in omega.iter().enumerate() {
        for &b in &omega[x + 1..] {
            if compose(cl.get(a), cl.get(b))? != compose(cl.get(b), cl.get(a))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Longest tuple length the direct CRT scan accepts.
pub const CRT_MAX_K: usize = 3;

/// A system of congruences with no simultaneous solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtWitness {
    /// Lattice indices θ_1..θ_k.
    pub thetas: Vec<usize>,
    /// Elements a_1..a_k.
    pub elements: Vec<usize>,
}

pub fn crt_direct_check(cl: &ConLattice, omega: &[usize], k_max: usize) -> Result<bool> {
    Ok(crt_counterexample(cl, omega, k_max)?.is_none())
}

/// Exhaustive CRT scan: for k = 1..=k_max, every k-set of members of Ω in
/// canonical order, and every a_1..a_k (a_1 outermost) with
/// (a_i, a_j) ∈ θ_i ∨ θ_j, looks for a with (a, a_i) ∈ θ_i for all i.
///
/// Only sets of distinct congruences are scanned: a repeated θ adds a
/// constraint already implied by the compatibility hypothesis.
pub fn crt_counterexample(
    cl: &ConLattice,
    omega: &[usize],
    k_max: usize,
) -> Result<Option<CrtWitness>> {
    if k_max > CRT_MAX_K {
        return Err(Error::SizeCap {
            what: "CRT tuple length",
            limit: CRT_MAX_K,
            actual: k_max,
        });
    }
    let mut omega = omega.to_vec();
    omega.sort_unstable();
    omega.dedup();
    let n = cl.carrier();
    for k in 1..=k_max.min(omega.len()) {
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            let thetas: Vec<usize> = pick.iter().map(|&p| omega[p]).collect();
            if let Some(elements) = crt_tuple(cl, &thetas, n) {
                return Ok(Some(CrtWitness { thetas, elements }));
            }
            if !next_combination(&mut pick, omega.len()) {
                break;
            }
        }
    }
    Ok(None)
}

fn next_combination(pick: &mut [usize], m: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < m - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn crt_tuple(cl: &ConLattice, thetas: &[usize], n: usize) -> Option<Vec<usize>> {
    let k = thetas.len();
    let parts: Vec<&Partition> = thetas.iter().map(|&t| cl.get(t).partition()).collect();
    let joins: Vec<Vec<&Partition>> = thetas
        .iter()
        .map(|&a| thetas.iter().map(|&b| cl.get(cl.join(a, b)).partition()).collect())
        .collect();
    let mut a = vec![0usize; k];
    for flat in 0..n.pow(k as u32) {
        let mut rest = flat;
        for slot in a.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        let hypothesis =
            (0..k).all(|i| (i + 1..k).all(|j| joins[i][j].same(a[i], a[j])));
        if !hypothesis {
            continue;
        }
        let solvable = (0..n).any(|x| (0..k).all(|i| parts[i].same(x, a[i])));
        if !solvable {
            return Some(a);
        }
    }
    None
}

/// θ_1 × … × θ_k on the product carrier described by `enc`.
pub fn product_congruence(enc: &ProductEncoding, cls: &[Congruence]) -> Result<Congruence> {
    if cls.len() != enc.factors.len() {
        return Err(Error::EncodingMismatch(format!(
            "{} congruences for {} factors",
            cls.len(),
            enc.factors.len()
        )));
    }
    for (i, (c, &f)) in cls.iter().zip(&enc.factors).enumerate() {
        if c.parent() != f {
            return Err(Error::EncodingMismatch(format!(
                "congruence #{i} does not belong to factor #{i}"
            )));
        }
    }
    let classes: Vec<Vec<usize>> = (0..enc.size())
        .map(|x| {
            enc.decode(x)
                .iter()
                .zip(cls)
                .map(|(&e, c)| c.partition().rep(e))
                .collect()
        })
        .collect();
    Ok(Congruence::trusted(
        enc.product,
        Partition::from_classes(&classes),
    ))
}

/// Outcome of checking Con(Π A_i) ≅ Π Con(A_i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductIsoReport {
    pub con_size: usize,
    pub center_size: usize,
    pub fc_size: usize,
    pub factor_con_sizes: Vec<usize>,
    /// The tuple map is a bijection preserving ∨, ∩, Δ and ∇.
    pub lattice_iso: bool,
    /// It restricts to a bijection Π 𝓑(Con(A_i)) → 𝓑(Con(Π A_i)).
    pub center_iso: bool,
    /// It restricts to a bijection Π FC(A_i) → FC(Π A_i).
    pub fc_iso: bool,
}

impl ProductIsoReport {
    pub fn holds(&self) -> bool {
        self.lattice_iso && self.center_iso && self.fc_iso
    }
}

pub fn product_con_iso_check(factors: &[&FiniteAlgebra], cfg: &Config) -> Result<ProductIsoReport> {
    let (prod, enc) = direct_product_with(factors, cfg)?;
    let cl = all_congruences_with(&prod, cfg)?;
    let center = boolean_center(&cl)?;
    let fc = factor_congruences_with(&cl, &center, cfg);
    let mut fcls = Vec::new();
    let mut fcenters = Vec::new();
    let mut ffcs = Vec::new();
    for f in factors {
        let c = all_congruences_with(f, cfg)?;
        let b = boolean_center(&c)?;
        ffcs.push(factor_congruences_with(&c, &b, cfg));
        fcenters.push(b);
        fcls.push(c);
    }
    let radices: Vec<usize> = fcls.iter().map(|c| c.len()).collect();
    let tuples = radices.iter().product::<usize>();
    let decode = |mut t: usize| {
        let mut out = vec![0; radices.len()];
        for (slot, &r) in out.iter_mut().zip(&radices).rev() {
            *slot = t % r;
            t /= r;
        }
        out
    };
    let mut image = Vec::with_capacity(tuples);
    for t in 0..tuples {
        let idx = decode(t);
        let cls: Vec<Congruence> = idx.iter().zip(&fcls).map(|(&i, c)| c.get(i).clone()).collect();
        image.push(cl.index_of(&product_congruence(&enc, &cls)?));
    }
    let distinct: HashSet<Option<usize>> = image.iter().copied().collect();
    let bijective = image.iter().all(|i| i.is_some())
        && distinct.len() == tuples
        && tuples == cl.len();
    let mut lattice_iso = bijective;
    if lattice_iso {
        let img = |t: usize| image[t].unwrap();
        let encode = |v: &[usize]| v.iter().zip(&radices).fold(0, |acc, (&x, &r)| acc * r + x);
        lattice_iso = img(0) == cl.delta() && img(tuples - 1) == cl.nabla();
        'outer: for s in 0..tuples {
            let ds = decode(s);
            for t in 0..tuples {
                let dt = decode(t);
                let j: Vec<usize> = (0..ds.len()).map(|i| fcls[i].join(ds[i], dt[i])).collect();
                let m: Vec<usize> = (0..ds.len()).map(|i| fcls[i].meet(ds[i], dt[i])).collect();
                if img(encode(&j)) != cl.join(img(s), img(t))
                    || img(encode(&m)) != cl.meet(img(s), img(t))
                {
                    lattice_iso = false;
                    break 'outer;
                }
            }
        }
    }
    let restricts = |in_factor: &dyn Fn(usize, usize) -> bool, in_product: &dyn Fn(usize) -> bool| {
        let mut hit = 0;
        for (t, i) in image.iter().enumerate() {
            let inside = decode(t).iter().enumerate().all(|(f, &c)| in_factor(f, c));
            match i {
                Some(i) if inside != in_product(*i) => return false,
                Some(_) if inside => hit += 1,
                _ => {}
            }
        }
        hit == (0..cl.len()).filter(|&i| in_product(i)).count()
    };
    let center_iso = bijective
        && restricts(&|f, c| fcenters[f].contains(c), &|i| center.contains(i));
    let fc_iso = bijective && restricts(&|f, c| ffcs[f].contains(c), &|i| fc.contains(i));
    Ok(ProductIsoReport {
        con_size: cl.len(),
        center_size: center.len(),
        fc_size: fc.len(),
        factor_con_sizes: radices,
        lattice_iso,
        center_iso,
        fc_iso,
    })
}

/// φ ∔ ψ on L ∔ M: φ on the lower part, ψ on the upper part, with the blocks
/// meeting at the glued element merged.
pub fn osum_congruence(
    emb: &OrdinalSumEmbedding,
    phi: &Congruence,
    psi: &Congruence,
) -> Result<Congruence> {
    if phi.parent() != emb.lower || psi.parent() != emb.upper {
        return Err(Error::ParentMismatch);
    }
    let n = emb.lower_map.len() + emb.upper_map.len() - 1;
    let mut uf = UnionFind::new(n);
    for (a, &s) in emb.lower_map.iter().enumerate() {
        uf.union(s, emb.lower_map[phi.partition().rep(a)]);
    }
    for (b, &s) in emb.upper_map.iter().enumerate() {
        uf.union(s, emb.upper_map[psi.partition().rep(b)]);
    }
    Ok(Congruence::trusted(emb.sum, uf.to_partition()))
}

/// Outcome of comparing Con(L ∔ M) with Con(L) × Con(M).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OsumIsoReport {
    /// Con(L ∔ M) is exactly {φ ∔ ψ}, and the map preserves ∨ and ∩.
    pub con_iso: bool,
    /// 𝓑 is carried onto 𝓑.
    pub center_iso: bool,
    /// {φ ∔ ψ : φ ∈ FC(L), ψ ∈ FC(M)}, as lattice indices of Con(L ∔ M).
    pub fc_transport: Vec<usize>,
    /// FC(L ∔ M) as lattice indices.
    pub fc_sum: Vec<usize>,
}

impl OsumIsoReport {
    /// The part that is a theorem. FC transport is reported separately
    /// because it can fail.
    pub fn holds(&self) -> bool {
        self.con_iso && self.center_iso
    }

    pub fn fc_transports(&self) -> bool {
        self.fc_transport == self.fc_sum
    }
}

pub fn osum_con_iso_check(
    lower: &FiniteAlgebra,
    upper: &FiniteAlgebra,
    cfg: &Config,
) -> Result<(FiniteAlgebra, OsumIsoReport)> {
    let (sum, emb) = ordinal_sum_with_embedding(lower, upper)?;
    let cl = all_congruences_with(&sum, cfg)?;
    let center = boolean_center(&cl)?;
    let fc = factor_congruences_with(&cl, &center, cfg);
    let (cl_l, cl_m) = (all_congruences_with(lower, cfg)?, all_congruences_with(upper, cfg)?);
    let (b_l, b_m) = (boolean_center(&cl_l)?, boolean_center(&cl_m)?);
    let (fc_l, fc_m) = (
        factor_congruences_with(&cl_l, &b_l, cfg),
        factor_congruences_with(&cl_m, &b_m, cfg),
    );
    let (ml, mm) = (cl_l.len(), cl_m.len());
    let mut image = vec![None; ml * mm];
    for i in 0..ml {
        for j in 0..mm {
            let c = osum_congruence(&emb, cl_l.get(i), cl_m.get(j))?;
            image[i * mm + j] = cl.index_of(&c);
        }
    }
    let distinct: HashSet<Option<usize>> = image.iter().copied().collect();
    let mut con_iso =
        image.iter().all(|x| x.is_some()) && distinct.len() == ml * mm && cl.len() == ml * mm;
    if con_iso {
        let img = |i: usize, j: usize| image[i * mm + j].unwrap();
        con_iso = (0..ml * mm).all(|s| {
            (0..ml * mm).all(|t| {
                let (i, j, k, l) = (s / mm, s % mm, t / mm, t % mm);
                img(cl_l.join(i, k), cl_m.join(j, l)) == cl.join(img(i, j), img(k, l))
                    && img(cl_l.meet(i, k), cl_m.meet(j, l)) == cl.meet(img(i, j), img(k, l))
            })
        });
    }
    let center_iso = con_iso && {
        let mut carried: Vec<usize> = b_l
            .members()
            .iter()
            .flat_map(|&i| b_m.members().iter().map(move |&j| (i, j)))
            .map(|(i, j)| image[i * mm + j].unwrap())
            .collect();
        carried.sort_unstable();
        carried == center.members()
    };
    let mut fc_transport: Vec<usize> = fc_l
        .members()
        .iter()
        .flat_map(|&i| fc_m.members().iter().map(move |&j| (i, j)))
        .filter_map(|(i, j)| image[i * mm + j])
        .collect();
    fc_transport.sort_unstable();
    fc_transport.dedup();
    let report = OsumIsoReport {
        con_iso,
        center_iso,
        fc_transport,
        fc_sum: fc.members().to_vec(),
    };
    Ok((sum, report))
}

/// The map a ↦ Cg(a, 0) from complemented elements of a bounded
/// distributive lattice to its factor congruences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BdlFcIsomorphism {
    /// `(element, lattice index of Cg(element, 0))` for each complemented element.
    pub map: Vec<(usize, usize)>,
    /// Bijective onto FC(L) and preserves ∨, ∧, ¬, 0, 1.
    pub verified: bool,
}

pub fn bdl_fc_isomorphism(alg: &FiniteAlgebra, cfg: &Config) -> Result<BdlFcIsomorphism> {
    alg.require_lattice()?;
    if !alg.is_distributive_lattice() {
        return Err(Error::NotDistributive);
    }
    let cl = all_congruences_with(alg, cfg)?;
    let center = boolean_center(&cl)?;
    let fc = factor_congruences_with(&cl, &center, cfg);
    let n = alg.size();
    let (zero, one) = (alg.bottom(), alg.top());
    let complement = |a: usize| {
        (0..n).find(|&b| alg.join(a, b) == one && alg.meet(a, b) == zero)
    };
    let elems: Vec<usize> = (0..n).filter(|&a| complement(a).is_some()).collect();
    let f = |a: usize| {
        cl.index_of(&principal_congruence(alg, a, zero))
            .expect("principal congruences are in Con")
    };
    let map: Vec<(usize, usize)> = elems.iter().map(|&a| (a, f(a))).collect();
    let mut image: Vec<usize> = map.iter().map(|&(_, c)| c).collect();
    image.sort_unstable();
    image.dedup();
    let mut verified = image.len() == elems.len() && image == fc.members();
    verified &= f(zero) == cl.delta() && f(one) == cl.nabla();
    for &a in &elems {
        verified &= center.complement(f(a)) == Some(f(complement(a).unwrap()));
        for &b in &elems {
            verified &= f(alg.join(a, b)) == cl.join(f(a), f(b));
            verified &= f(alg.meet(a, b)) == cl.meet(f(a), f(b));
        }
    }
    Ok(BdlFcIsomorphism { map, verified })
}

/// A ≅ A/α_1 × … × A/α_n, verified.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub factors: Vec<FiniteAlgebra>,
    /// `map[a]` is the product index of (a/α_1, …, a/α_n).
    pub map: Vec<usize>,
    /// The map is a bijective morphism onto the product.
    pub verified: bool,
}

/// Splits `alg` along factor congruences. The preconditions are checked and
/// the first violated one is reported.
pub fn factorize(
    alg: &FiniteAlgebra,
    cl: &ConLattice,
    fc: &FactorAlgebra,
    alphas: &[Congruence],
    cfg: &Config,
) -> Result<Factorization> {
    if alphas.is_empty() {
        return Err(Error::PreconditionFailed("no congruences given".into()));
    }
    let mut idx = Vec::new();
    for a in alphas {
        a.check_parent(alg)?;
        let i = cl.index_of_checked(a)?;
        if !fc.contains(i) {
            return Err(Error::PreconditionFailed(format!(
                "{} is not a factor congruence",
                a.format(alg)
            )));
        }
        idx.push(i);
    }
    let bottom = idx.iter().fold(cl.nabla(), |acc, &i| cl.meet(acc, i));
    if bottom != cl.delta() {
        return Err(Error::PreconditionFailed(
            "the intersection of the congruences is not Δ".into(),
        ));
    }
    for (x, &i) in idx.iter().enumerate() {
        for (y, &j) in idx.iter().enumerate().skip(x + 1) {
            if cl.join(i, j) != cl.nabla() {
                return Err(Error::PreconditionFailed(format!(
                    "congruences #{} and #{} do not join to ∇",
                    x + 1,
                    y + 1
                )));
            }
        }
    }
    let quotients: Vec<_> = alphas.iter().map(|a| quotient(alg, a)).collect::<Result<_>>()?;
    let refs: Vec<&FiniteAlgebra> = quotients.iter().map(|q| &q.quotient).collect();
    let (prod, enc) = direct_product_with(&refs, cfg)?;
    let map: Vec<usize> = (0..alg.size())
        .map(|a| {
            let coords: Vec<usize> = quotients.iter().map(|q| q.projection[a]).collect();
            enc.encode(&coords)
        })
        .collect();
    let distinct: HashSet<usize> = map.iter().copied().collect();
    let mut verified = distinct.len() == alg.size() && prod.size() == alg.size();
    if verified {
        for (oi, op) in alg.operations().iter().enumerate() {
            let pi = prod.signature().position(op.name()).unwrap();
            let k = op.arity();
            let n = alg.size();
            let mut args = vec![0usize; k];
            for flat in 0..n.pow(k as u32) {
                let mut rest = flat;
                for slot in args.iter_mut().rev() {
                    *slot = rest % n;
                    rest /= n;
                }
                let mapped: Vec<usize> = args.iter().map(|&a| map[a]).collect();
                if map[alg.apply(oi, &args)] != prod.apply(pi, &mapped) {
                    verified = false;
                }
            }
        }
    }
    Ok(Factorization {
        factors: quotients.into_iter().map(|q| q.quotient).collect(),
        map,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conlattice::all_congruences;
    use crate::fixtures::fixture;

    fn setup(name: &str) -> (FiniteAlgebra, ConLattice, BooleanCenter, FactorAlgebra) {
        let a = fixture(name).unwrap();
        let cl = all_congruences(&a).unwrap();
        let b = boolean_center(&cl).unwrap();
        let fc = factor_congruences(&cl, &b);
        (a, cl, b, fc)
    }

    fn idx(a: &FiniteAlgebra, cl: &ConLattice, s: &str) -> usize {
        cl.index_of(&Congruence::parse(a, s).unwrap()).unwrap()
    }

    #[test]
    fn centers_and_fc() {
        let (_, cl, b, fc) = setup("P");
        assert_eq!((cl.len(), b.len(), fc.len()), (5, 2, 2));
        let (_, cl, b, fc) = setup("S");
        assert_eq!((cl.len(), b.len(), fc.len()), (4, 4, 2));
        let (_, cl, b, fc) = setup("E");
        assert_eq!((cl.len(), b.len(), fc.len()), (3, 2, 2));
        let (_, _, _, fc) = setup("L3");
        assert_eq!(fc.len(), 2);
    }

    #[test]
    fn fc_of_l2_times_l3() {
        let (a, cl, _, fc) = setup("L2timesL3");
        let lambda = idx(&a, &cl, "0,q,s|p,r,1");
        let mu = idx(&a, &cl, "0,p|q,r|s,1");
        let mut expected = [cl.delta(), lambda, mu, cl.nabla()];
        expected.sort_unstable();
        assert_eq!(fc.members(), &expected[..]);
        assert!(is_factor_pair(cl.get(lambda), cl.get(mu)).unwrap());
        assert!(fc.composite(lambda).unwrap().is_full());
    }

    #[test]
    fn factor_pairs_in_l3() {
        let (a, _, _, _) = setup("L3");
        let phi = Congruence::parse(&a, "0,m|1").unwrap();
        let psi = Congruence::parse(&a, "0|m,1").unwrap();
        assert!(!is_factor_pair(&phi, &psi).unwrap());
        assert!(is_factor_pair(&Congruence::delta(&a), &Congruence::nabla(&a)).unwrap());
    }

    #[test]
    fn crt_on_l3() {
        let (a, cl, _, fc) = setup("L3");
        let all: Vec<usize> = (0..cl.len()).collect();
        assert!(!crt_characterization(&cl, &all).unwrap());
        assert!(crt_characterization(&cl, fc.members()).unwrap());
        let w = crt_counterexample(&cl, &all, 2).unwrap().unwrap();
        let phi = idx(&a, &cl, "0,m|1");
        let psi = idx(&a, &cl, "0|m,1");
        assert_eq!(w.thetas, vec![phi, psi]);
        assert_eq!(w.elements, vec![a.index_of("1").unwrap(), 0]);
        assert!(crt_direct_check(&cl, &[cl.delta(), cl.nabla()], 3).unwrap());
        assert!(matches!(crt_direct_check(&cl, &all, 4), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn crt_needs_sublattice() {
        let (a, cl, _, _) = setup("L3");
        let phi = idx(&a, &cl, "0,m|1");
        assert!(matches!(
            crt_characterization(&cl, &[cl.delta(), phi]),
            Err(Error::NotASublattice(_))
        ));
    }

    #[test]
    fn product_congruence_lambda() {
        let l2 = fixture("L2").unwrap();
        let l3 = fixture("L3").unwrap();
        let (prod, enc) = direct_product_with(&[&l2, &l3], &Config::default()).unwrap();
        let lam = product_congruence(&enc, &[Congruence::delta(&l2), Congruence::nabla(&l3)]).unwrap();
        assert_eq!(lam.num_blocks(), 2);
        assert!(lam.same(0, enc.encode(&[0, 2])));
        let d = product_congruence(&enc, &[Congruence::delta(&l2), Congruence::delta(&l3)]).unwrap();
        assert_eq!(d, Congruence::delta(&prod));
        assert!(matches!(
            product_congruence(&enc, &[Congruence::delta(&l3), Congruence::delta(&l2)]),
            Err(Error::EncodingMismatch(_))
        ));
    }

    #[test]
    fn osum_sigmas() {
        let d = fixture("D").unwrap();
        let l2 = fixture("L2").unwrap();
        let (s, emb) = ordinal_sum_with_embedding(&d, &l2).unwrap();
        let sigma1 = osum_congruence(&emb, &Congruence::delta(&d), &Congruence::nabla(&l2)).unwrap();
        assert_eq!(sigma1.num_blocks(), 5);
        assert!(sigma1.same(emb.glued, emb.upper_map[1]));
        let sigma2 = osum_congruence(&emb, &Congruence::nabla(&d), &Congruence::delta(&l2)).unwrap();
        assert_eq!(sigma2.num_blocks(), 2);
        let dd = osum_congruence(&emb, &Congruence::delta(&d), &Congruence::delta(&l2)).unwrap();
        assert_eq!(dd, Congruence::delta(&s));
    }

    #[test]
    fn osum_x_fc_does_not_transport() {
        let l22 = fixture("L2x2").unwrap();
        let d = fixture("D").unwrap();
        let (_, rep) = osum_con_iso_check(&l22, &d, &Config::default()).unwrap();
        assert!(rep.holds());
        assert!(!rep.fc_transports());
        assert_eq!(rep.fc_sum.len(), 2);
        assert_eq!(rep.fc_transport.len(), 8);
    }

    #[test]
    fn bdl_map_on_l2_times_l3() {
        let a = fixture("L2timesL3").unwrap();
        let iso = bdl_fc_isomorphism(&a, &Config::default()).unwrap();
        assert!(iso.verified);
        let elems: Vec<usize> = iso.map.iter().map(|&(e, _)| e).collect();
        let labels: Vec<&str> = elems.iter().map(|&e| a.label(e)).collect();
        assert_eq!(labels, vec!["0", "s", "p", "1"]);
        assert!(matches!(
            bdl_fc_isomorphism(&fixture("P").unwrap(), &Config::default()),
            Err(Error::NotDistributive)
        ));
    }

    #[test]
    fn factorize_l2_times_l3() {
        let (a, cl, _, fc) = setup("L2timesL3");
        let lambda = Congruence::parse(&a, "0,q,s|p,r,1").unwrap();
        let mu = Congruence::parse(&a, "0,p|q,r|s,1").unwrap();
        let f = factorize(&a, &cl, &fc, &[lambda, mu], &Config::default()).unwrap();
        assert!(f.verified);
        let sizes: Vec<usize> = f.factors.iter().map(|q| q.size()).collect();
        assert_eq!(sizes, vec![2, 3]);
        let single = factorize(&a, &cl, &fc, &[Congruence::delta(&a)], &Config::default()).unwrap();
        assert!(single.verified);
    }

    #[test]
    fn factorize_rejects_non_factor() {
        let (a, cl, _, fc) = setup("X");
        let xi4 = Congruence::parse(&a, "0|p|q|r,s,t,u,1").unwrap();
        let err = factorize(&a, &cl, &fc, &[xi4, Congruence::nabla(&a)], &Config::default()).unwrap_err();
        assert!(matches!(err, Error::PreconditionFailed(_)));
    }
}
