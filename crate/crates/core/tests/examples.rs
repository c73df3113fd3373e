//! Worked examples on the shipped fixtures. Expected partitions are written
//! in label syntax; derived values are checked against naive recomputation.

mod common;

use congrlab_core::algebra::{
    direct_product, dual, is_isomorphic, lattice_reduct, ordinal_sum, ordinal_sum_with_embedding,
    sublattice,
};
use congrlab_core::blp::{
    algebra_blp, blp_equivalence_check, element_boolean_center, filter_congruence, filters,
    has_blp, has_filt_blp, has_id_blp, reticulation,
};
use congrlab_core::boolean::{
    bdl_fc_isomorphism, boolean_center, crt_characterization, crt_counterexample,
    crt_direct_check, factor_congruences, factorize, is_factor_pair, osum_congruence,
    product_congruence,
};
use congrlab_core::congruence::{cg_generated, compose, join, meet, permutes, principal_congruence};
use congrlab_core::conlattice::{
    all_congruences, brute_force_congruences, is_arithmetical, is_congruence_distributive,
    is_congruence_permutable, is_local, maximal_congruences, radical,
};
use congrlab_core::lifting::{
    algebra_cblp, algebra_fclp, check_special_congruences, has_cblp, has_fclp, is_b_normal,
    is_fc_normal, quotient, s_inverse, u_map, Analysis,
};
use congrlab_core::{build_from_spec, fixture, AlgebraSpec, Config, Congruence, Error, FiniteAlgebra};

fn cg(alg: &FiniteAlgebra, text: &str) -> Congruence {
    Congruence::parse(alg, text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn idx(alg: &FiniteAlgebra, l: &str) -> usize {
    alg.index_of(l).unwrap()
}

fn formats(an: &Analysis, members: &[usize]) -> Vec<String> {
    members.iter().map(|&i| an.format(i)).collect()
}

#[test]
fn pentagon_from_cover() {
    let p = fixture("P").unwrap();
    assert_eq!(p.size(), 5);
    assert_eq!(p.join(idx(&p, "x"), idx(&p, "y")), idx(&p, "1"));
    assert_eq!(p.meet(idx(&p, "x"), idx(&p, "z")), idx(&p, "0"));
}

#[test]
fn missing_top_is_not_a_lattice() {
    let spec = AlgebraSpec::from_json(
        r#"{"name":"V","kind":"lattice","elements":["0","a","b"],"cover":[["0","a"],["0","b"]]}"#,
    )
    .unwrap();
    match build_from_spec(&spec) {
        Err(Error::NotALattice { left, right, .. }) => assert_eq!((left.as_str(), right.as_str()), ("a", "b")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn constructions() {
    let (l2, l3, d) = (fixture("L2").unwrap(), fixture("L3").unwrap(), fixture("D").unwrap());
    assert!(is_isomorphic(&direct_product(&[&l2, &l3]).unwrap(), &fixture("L2timesL3").unwrap()));
    assert!(is_isomorphic(&direct_product(&[&l3]).unwrap(), &l3));
    let s = ordinal_sum(&d, &l2).unwrap();
    assert!(is_isomorphic(&s, &fixture("S").unwrap()));
    assert!(is_isomorphic(&ordinal_sum(&l2, &s).unwrap(), &fixture("T").unwrap()));
    assert!(is_isomorphic(&ordinal_sum(&fixture("L2x2").unwrap(), &d).unwrap(), &fixture("X").unwrap()));
    let dl3 = dual(&l3).unwrap();
    assert_eq!(dl3.label(dl3.bottom()), "1");
    assert!(is_isomorphic(&dl3, &l3));
    let p = fixture("P").unwrap();
    assert_eq!(dual(&dual(&p).unwrap()).unwrap(), p);
    let e = fixture("E").unwrap();
    let sub: Vec<usize> = ["0", "a", "b", "d", "1"].iter().map(|l| idx(&e, l)).collect();
    assert!(is_isomorphic(&sublattice(&e, &sub).unwrap(), &p));
    let ends = [idx(&l3, "0"), idx(&l3, "1")];
    assert!(is_isomorphic(&sublattice(&l3, &ends).unwrap(), &l2));
}

#[test]
fn t_over_tau6_is_dual_of_s() {
    let t = fixture("T").unwrap();
    let q = quotient(&t, &cg(&t, "0|z|a|b|c|x,1")).unwrap();
    assert!(is_isomorphic(&q.quotient, &dual(&fixture("S").unwrap()).unwrap()));
}

#[test]
fn principal_congruences() {
    let l3 = fixture("L3").unwrap();
    assert_eq!(principal_congruence(&l3, 0, idx(&l3, "m")), cg(&l3, "0,m|1"));
    assert!(principal_congruence(&l3, 1, 1).is_delta());
    let d = fixture("D").unwrap();
    assert!(principal_congruence(&d, idx(&d, "a"), idx(&d, "b")).is_nabla());
    let p = fixture("P").unwrap();
    assert!(cg_generated(&p, &[]).is_delta());
    assert_eq!(cg_generated(&p, &[(0, idx(&p, "x"))]), cg(&p, "0,x|y,z,1"));
    assert!(cg_generated(&l3, &[(0, 1), (1, 2)]).is_nabla());
}

#[test]
fn l3_compositions() {
    let l3 = fixture("L3").unwrap();
    let (phi, psi) = (cg(&l3, "0,m|1"), cg(&l3, "0|m,1"));
    assert!(join(&l3, &phi, &psi).unwrap().is_nabla());
    assert!(meet(&phi, &psi).unwrap().is_delta());
    let (zero, one) = (idx(&l3, "0"), idx(&l3, "1"));
    assert!(compose(&psi, &phi).unwrap().contains(zero, one));
    assert!(!compose(&phi, &psi).unwrap().contains(zero, one));
    assert!(!permutes(&phi, &psi).unwrap());
    let delta = Congruence::delta(&l3);
    assert_eq!(compose(&phi, &delta).unwrap().as_partition().unwrap(), *phi.partition());
    assert!(!is_factor_pair(&phi, &psi).unwrap());
    assert!(is_factor_pair(&delta, &Congruence::nabla(&l3)).unwrap());
}

#[test]
fn x_compositions() {
    let x = fixture("X").unwrap();
    let (xi1, xi6) = (cg(&x, "0,q|p,r,s,t,u,1"), cg(&x, "0,p|q,r|s|t|u|1"));
    let (one, zero) = (idx(&x, "1"), idx(&x, "0"));
    assert!(compose(&xi6, &xi1).unwrap().contains(one, zero));
    assert!(!compose(&xi1, &xi6).unwrap().contains(one, zero));
}

#[test]
fn brute_force_listings() {
    assert_eq!(brute_force_congruences(&fixture("L3").unwrap()).unwrap().len(), 4);
    assert_eq!(brute_force_congruences(&fixture("D").unwrap()).unwrap().len(), 2);
    let e = fixture("E").unwrap();
    let con = brute_force_congruences(&e).unwrap();
    assert_eq!(con.len(), 3);
    assert_eq!(con[1], cg(&e, "0|a|b,d|c|1"));
    assert_eq!(all_congruences(&fixture("L1").unwrap()).unwrap().len(), 1);
}

#[test]
fn classifications() {
    for name in ["L3", "P", "D", "X", "H", "L2timesL3"] {
        assert!(is_congruence_distributive(&fixture(name).unwrap()).unwrap(), "{name}");
    }
    let l3 = fixture("L3").unwrap();
    assert!(!is_congruence_permutable(&l3).unwrap());
    assert!(is_arithmetical(&fixture("B2").unwrap()).unwrap());
    let mut max = maximal_congruences(&l3).unwrap();
    max.sort();
    let mut want = vec![cg(&l3, "0,m|1"), cg(&l3, "0|m,1")];
    want.sort();
    assert_eq!(max, want);
    assert!(radical(&l3).unwrap().is_delta());
    assert!(is_local(&fixture("D").unwrap()).unwrap());
    assert_eq!(radical(&fixture("L1").unwrap()), Err(Error::TrivialAlgebra));
}

#[test]
fn centers_and_factor_congruences() {
    let center_of = |name: &str| {
        let an = Analysis::new(&fixture(name).unwrap()).unwrap();
        (an.con.len(), an.center.len(), an.fc.len())
    };
    assert_eq!(center_of("P"), (5, 2, 2));
    assert_eq!(center_of("S"), (4, 4, 2));
    assert_eq!(center_of("E"), (3, 2, 2));
    assert_eq!(center_of("L3"), (4, 4, 2));
    assert_eq!(center_of("X"), (8, 8, 2));
    let a = fixture("L2timesL3").unwrap();
    let cl = all_congruences(&a).unwrap();
    let b = boolean_center(&cl).unwrap();
    let fc = factor_congruences(&cl, &b);
    let an = Analysis::new(&a).unwrap();
    let mut got = formats(&an, fc.members());
    got.sort();
    let mut want = vec!["0,p|q,r|s,1", "0,q,s|p,r,1", "0|q|s|p|r|1", "0,q,s,p,r,1"];
    want.sort();
    assert_eq!(got, want);
    let (lambda, mu) = (cg(&a, "0,q,s|p,r,1"), cg(&a, "0,p|q,r|s,1"));
    assert!(is_factor_pair(&lambda, &mu).unwrap());
    let naive = common::compose(lambda.partition(), mu.partition());
    assert!(common::is_full(&naive));
}

#[test]
fn crt() {
    let l3 = fixture("L3").unwrap();
    let cl = all_congruences(&l3).unwrap();
    let all: Vec<usize> = (0..cl.len()).collect();
    assert!(!crt_characterization(&cl, &all).unwrap());
    let w = crt_counterexample(&cl, &all, 2).unwrap().unwrap();
    let an = Analysis::new(&l3).unwrap();
    assert_eq!(formats(&an, &w.thetas), ["0,m|1", "0|m,1"]);
    assert_eq!(w.elements, [idx(&l3, "1"), idx(&l3, "0")]);
    let bounds = [cl.delta(), cl.nabla()];
    assert!(crt_characterization(&cl, &bounds).unwrap());
    assert!(crt_direct_check(&cl, &bounds, 3).unwrap());
    for name in ["L2timesL3", "X", "H", "P", "TxE"] {
        let an = Analysis::new(&fixture(name).unwrap()).unwrap();
        assert!(crt_characterization(&an.con, an.fc.members()).unwrap(), "{name}");
        if an.algebra.size() <= 8 {
            assert!(crt_direct_check(&an.con, an.fc.members(), 3).unwrap(), "{name}");
        }
    }
    assert!(matches!(crt_direct_check(&cl, &all, 4), Err(Error::SizeCap { .. })));
}

#[test]
fn product_and_osum_congruences() {
    let (l2, l3) = (fixture("L2").unwrap(), fixture("L3").unwrap());
    let (prod, enc) = congrlab_core::algebra::direct_product_with(&[&l2, &l3], &Config::default()).unwrap();
    let lambda = product_congruence(&enc, &[Congruence::delta(&l2), Congruence::nabla(&l3)]).unwrap();
    let relabel = congrlab_core::algebra::find_isomorphism(&fixture("L2timesL3").unwrap(), &prod).unwrap();
    let a = fixture("L2timesL3").unwrap();
    let expect = cg(&a, "0,q,s|p,r,1");
    for x in 0..6 {
        for y in 0..6 {
            assert_eq!(expect.same(x, y), lambda.same(relabel[x], relabel[y]));
        }
    }
    assert!(product_congruence(&enc, &[Congruence::delta(&l2), Congruence::delta(&l3)]).unwrap().is_delta());

    let (d, s) = (fixture("D").unwrap(), fixture("S").unwrap());
    let (sum, emb) = ordinal_sum_with_embedding(&d, &l2).unwrap();
    let iso = congrlab_core::algebra::find_isomorphism(&sum, &s).unwrap();
    let carry = |c: &Congruence| {
        let classes: Vec<usize> = (0..s.size())
            .map(|y| iso[c.partition().rep(iso.iter().position(|&v| v == y).unwrap())])
            .collect();
        Congruence::new(&s, congrlab_core::Partition::from_classes(&classes)).unwrap()
    };
    let s1 = osum_congruence(&emb, &Congruence::delta(&d), &Congruence::nabla(&l2)).unwrap();
    assert_eq!(carry(&s1), cg(&s, "0|a|b|c|x,1"));
    let s2 = osum_congruence(&emb, &Congruence::nabla(&d), &Congruence::delta(&l2)).unwrap();
    assert_eq!(carry(&s2), cg(&s, "0,a,b,c,x|1"));
    assert!(osum_congruence(&emb, &Congruence::delta(&d), &Congruence::delta(&l2)).unwrap().is_delta());
}

#[test]
fn bdl_isomorphisms() {
    let a = fixture("L2timesL3").unwrap();
    let iso = bdl_fc_isomorphism(&a, &Config::default()).unwrap();
    assert!(iso.verified);
    let an = Analysis::new(&a).unwrap();
    let image = |l: &str| iso.map.iter().find(|&&(e, _)| e == idx(&a, l)).map(|&(_, c)| an.format(c)).unwrap();
    assert_eq!(image("p"), "0,p|q,r|s,1");
    assert_eq!(image("s"), "0,q,s|p,r,1");
    assert_eq!(image("0"), "0|q|s|p|r|1");
    assert_eq!(image("1"), "0,q,s,p,r,1");
    let b = bdl_fc_isomorphism(&fixture("L2x2").unwrap(), &Config::default()).unwrap();
    assert!(b.verified && b.map.len() == 4);
    assert!(matches!(bdl_fc_isomorphism(&fixture("P").unwrap(), &Config::default()), Err(Error::NotDistributive)));
}

#[test]
fn factorizations() {
    let a = fixture("L2timesL3").unwrap();
    let an = Analysis::new(&a).unwrap();
    let f = factorize(&a, &an.con, &an.fc, &[cg(&a, "0,q,s|p,r,1"), cg(&a, "0,p|q,r|s,1")], &Config::default()).unwrap();
    assert!(f.verified);
    let sizes: Vec<usize> = f.factors.iter().map(|x| x.size()).collect();
    assert_eq!(sizes, [2, 3]);
    assert!(is_isomorphic(&f.factors[0], &fixture("L2").unwrap()));
    assert!(is_isomorphic(&f.factors[1], &fixture("L3").unwrap()));
    let mut seen = f.map.clone();
    seen.sort_unstable();
    seen.dedup();
    assert_eq!(seen.len(), a.size());
    let one = factorize(&a, &an.con, &an.fc, &[Congruence::delta(&a)], &Config::default()).unwrap();
    assert!(one.verified && is_isomorphic(&one.factors[0], &a));
    let x = fixture("X").unwrap();
    let xan = Analysis::new(&x).unwrap();
    let r = factorize(&x, &xan.con, &xan.fc, &[cg(&x, "0|p|q|r,s,t,u,1"), cg(&x, "0,p,q,r|s|t|u|1")], &Config::default());
    assert!(matches!(r, Err(Error::PreconditionFailed(_))));
}

#[test]
fn quotients() {
    let s = fixture("S").unwrap();
    let q = quotient(&s, &cg(&s, "0|a|b|c|x,1")).unwrap();
    assert!(is_isomorphic(&q.quotient, &fixture("D").unwrap()));
    assert!(q.quotient.labels().contains(&"x+1".to_string()));
    let p = fixture("P").unwrap();
    let q = quotient(&p, &Congruence::delta(&p)).unwrap();
    assert_eq!(q.quotient.labels(), p.labels());
    let g = quotient(&p, &cg(&p, "0|x|y,z|1")).unwrap();
    assert_eq!(g.quotient.size(), 4);
    let gan = Analysis::new(&g.quotient).unwrap();
    assert!(is_isomorphic(&g.quotient, &fixture("L2x2").unwrap()));
    assert_eq!((gan.con.len(), gan.center.len(), gan.fc.len()), (4, 4, 4));
}

#[test]
fn u_and_s_maps() {
    let h = fixture("H").unwrap();
    let chi3 = cg(&h, "0|a|b|c|x|y,z|1");
    let q = quotient(&h, &chi3).unwrap();
    let nu = u_map(&h, &q, &cg(&h, "0,a,b,c,y,z|x,1")).unwrap();
    let hq = &q.quotient;
    assert_eq!(nu.format(hq), "0,a,b,c,y+z|x,1");
    assert!(u_map(&h, &q, &Congruence::delta(&h)).unwrap().is_delta());
    assert!(s_inverse(&q, &Congruence::nabla(hq)).unwrap().is_nabla());
}

#[test]
fn lifting_examples() {
    let p = Analysis::new(&fixture("P").unwrap()).unwrap();
    let gamma = p.parse("0|x|y,z|1").unwrap();
    let l = has_fclp(&p, gamma).unwrap();
    assert!(!l.holds);
    assert_eq!(l.targets.len(), 4);
    assert_eq!(p.fc.len(), 2);
    for an in [&p, &Analysis::new(&fixture("H").unwrap()).unwrap()] {
        for t in [an.con.delta(), an.con.nabla()] {
            assert!(has_fclp(an, t).unwrap().holds && has_cblp(an, t).unwrap().holds);
        }
    }
    let x = Analysis::new(&fixture("X").unwrap()).unwrap();
    assert!(!has_fclp(&x, x.parse("0|p|q|r,s,t,u,1").unwrap()).unwrap().holds);
    assert!((0..x.con.len()).all(|t| has_cblp(&x, t).unwrap().holds));
    let h = Analysis::new(&fixture("H").unwrap()).unwrap();
    let chi3 = h.parse("0|a|b|c|x|y,z|1").unwrap();
    assert!(has_fclp(&h, chi3).unwrap().holds);
    let c = has_cblp(&h, chi3).unwrap();
    assert!(!c.holds);
    assert_eq!((h.center.len(), c.targets.len()), (2, 4));
    assert!(algebra_fclp(&h).unwrap().holds && !algebra_cblp(&h).unwrap().holds);
    assert!(!algebra_fclp(&x).unwrap().holds && algebra_cblp(&x).unwrap().holds);
    assert!(algebra_fclp(&Analysis::new(&fixture("T").unwrap()).unwrap()).unwrap().holds);
}

#[test]
fn normality_examples() {
    let an = |n: &str| Analysis::new(&fixture(n).unwrap()).unwrap();
    assert!(is_fc_normal(&an("H")).holds);
    let x = is_fc_normal(&an("X"));
    assert!(!x.holds && x.failure.is_some());
    assert!(is_fc_normal(&an("L1")).holds && is_b_normal(&an("L1")).holds);
    assert!(!is_b_normal(&an("P")).holds);
    for n in ["L2", "L3", "L2x2", "L2timesL3", "L2x3cube", "L2osumL2x2"] {
        assert!(is_b_normal(&an(n)).holds, "{n}");
    }
}

#[test]
fn special_congruence_examples() {
    let p = Analysis::new(&fixture("P").unwrap()).unwrap();
    let r = check_special_congruences(&p).unwrap();
    assert!(r.passed());
    let mut max = formats(&p, &r.maximal);
    max.sort();
    assert_eq!(max, ["0,x|y,z,1", "0,y,z|x,1"]);
    let failing: Vec<String> = (0..p.con.len())
        .filter(|&t| !has_fclp(&p, t).unwrap().holds)
        .map(|t| p.format(t))
        .collect();
    assert_eq!(failing, ["0|x|y,z|1"]);
    let d = Analysis::new(&fixture("D").unwrap()).unwrap();
    let r = check_special_congruences(&d).unwrap();
    assert!(r.local && r.passed());
    assert!(check_special_congruences(&Analysis::new(&fixture("L1").unwrap()).unwrap()).unwrap().passed());
}

#[test]
fn element_level_examples() {
    let a = fixture("L2timesL3").unwrap();
    let b = element_boolean_center(&a).unwrap();
    let mut labels: Vec<&str> = b.members().iter().map(|&e| a.label(e)).collect();
    labels.sort_unstable();
    assert_eq!(labels, ["0", "1", "p", "s"]);
    let r0 = fixture("R0").unwrap();
    assert_eq!(element_boolean_center(&r0).unwrap().members(), [idx(&r0, "0"), idx(&r0, "1")]);
    assert!(algebra_blp(&r0).unwrap());
    let osum = fixture("L2osumL2x2").unwrap();
    assert!(!algebra_blp(&osum).unwrap());
    assert!(!has_id_blp(&osum).unwrap());
    assert!(has_blp(&a, &Congruence::delta(&a)).unwrap());
    let l3 = fixture("L3").unwrap();
    let f = filter_congruence(&l3, &[idx(&l3, "m"), idx(&l3, "1")]).unwrap();
    assert_eq!(f, cg(&l3, "0|m,1"));
    assert!(has_filt_blp(&fixture("L2x2").unwrap()).unwrap());
    assert!(has_filt_blp(&fixture("L1").unwrap()).unwrap());
    let fs = filters(&r0).unwrap();
    let c_up: Vec<usize> = ["a", "b", "c", "1"].iter().map(|l| idx(&r0, l)).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    assert!(fs.sets.contains(&c_up));
}

fn residuated_chain(n: usize) -> FiniteAlgebra {
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let cover: Vec<[String; 2]> = (1..n).map(|i| [labels[i - 1].clone(), labels[i].clone()]).collect();
    let times: Vec<Vec<String>> = (0..n).map(|a| (0..n).map(|b| labels[a.min(b)].clone()).collect()).collect();
    let implies: Vec<Vec<String>> = (0..n)
        .map(|a| (0..n).map(|b| labels[if a <= b { n - 1 } else { b }].clone()).collect())
        .collect();
    let spec = serde_json::json!({
        "name": format!("G{n}"),
        "kind": "residuated",
        "elements": labels,
        "cover": cover,
        "operations": {"times": times, "implies": implies},
    });
    build_from_spec(&AlgebraSpec::from_json(&spec.to_string()).unwrap()).unwrap()
}

#[test]
fn reticulation_examples() {
    let r0 = fixture("R0").unwrap();
    assert!(is_isomorphic(&reticulation(&r0).unwrap(), &lattice_reduct(&r0).unwrap()));
    let g = residuated_chain(4);
    assert!(is_isomorphic(&reticulation(&g).unwrap(), &lattice_reduct(&g).unwrap()));
    assert_eq!(reticulation(&residuated_chain(1)).unwrap().size(), 1);
}

#[test]
fn blp_equivalences() {
    let r0 = blp_equivalence_check(&fixture("R0").unwrap()).unwrap();
    assert!(r0.blp && r0.cblp && r0.fclp && r0.consistent);
    let o = blp_equivalence_check(&fixture("L2osumL2x2").unwrap()).unwrap();
    assert!(!o.blp && !o.fclp && o.cblp && o.consistent);
    let b = blp_equivalence_check(&fixture("L2x2").unwrap()).unwrap();
    assert!(b.blp && b.cblp && b.fclp && b.consistent);
}
