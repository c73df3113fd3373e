mod common;

use common::Naive;
use congrlab_core::algebra::{direct_product, dual};
use congrlab_core::enumerate::random_lattice;
use congrlab_core::lifting::{
    algebra_cblp, algebra_fclp, check_special_congruences, has_cblp, has_fclp, is_b_normal,
    is_fc_normal, s_inverse, u_map, Analysis,
};
use congrlab_core::FiniteAlgebra;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lattice(seed: u64, n: usize) -> FiniteAlgebra {
    random_lattice(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn lifting_matches_interval_oracle(seed in any::<u64>(), n in 4usize..=8) {
        let an = Analysis::new(&lattice(seed, n)).unwrap();
        let naive = Naive::new(&an);
        let (fc, center) = (naive.fc(), naive.center());
        prop_assert_eq!(an.fc.members(), fc.as_slice());
        prop_assert_eq!(an.center.members(), center.as_slice());
        for t in 0..an.con.len() {
            prop_assert_eq!(has_fclp(&an, t).unwrap().holds, naive.fclp(t, &fc));
            prop_assert_eq!(has_cblp(&an, t).unwrap().holds, naive.cblp(t, &center));
        }
    }

    #[test]
    fn lifting_iff_normal(seed in any::<u64>(), n in 3usize..=8) {
        let an = Analysis::new(&lattice(seed, n)).unwrap();
        prop_assert_eq!(algebra_fclp(&an).unwrap().holds, is_fc_normal(&an).holds);
        prop_assert_eq!(algebra_cblp(&an).unwrap().holds, is_b_normal(&an).holds);
    }

    #[test]
    fn special_congruences_lift(seed in any::<u64>(), n in 2usize..=8) {
        let an = Analysis::new(&lattice(seed, n)).unwrap();
        let r = check_special_congruences(&an).unwrap();
        prop_assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn lifting_is_self_dual(seed in any::<u64>(), n in 3usize..=8) {
        let alg = lattice(seed, n);
        let (a, d) = (Analysis::new(&alg).unwrap(), Analysis::new(&dual(&alg).unwrap()).unwrap());
        prop_assert_eq!(algebra_fclp(&a).unwrap().holds, algebra_fclp(&d).unwrap().holds);
        prop_assert_eq!(algebra_cblp(&a).unwrap().holds, algebra_cblp(&d).unwrap().holds);
    }

    #[test]
    fn u_and_s_are_inverse_on_the_upset(seed in any::<u64>(), n in 3usize..=7) {
        let alg = lattice(seed, n);
        let an = Analysis::new(&alg).unwrap();
        for t in 0..an.con.len() {
            let q = an.quotient(t);
            let qan = Analysis::new(&q.quotient).unwrap();
            let up = an.con.upset(t);
            prop_assert_eq!(up.len(), qan.con.len());
            for &phi in &up {
                let image = u_map(&alg, &q, an.con.get(phi)).unwrap();
                prop_assert_eq!(&s_inverse(&q, &image).unwrap(), an.con.get(phi));
            }
            for &a in an.fc.members() {
                let image = u_map(&alg, &q, an.con.get(a)).unwrap();
                prop_assert!(qan.fc.contains(qan.con.index_of(&image).unwrap()));
            }
        }
    }

    #[test]
    fn fclp_passes_to_quotients(seed in any::<u64>(), n in 3usize..=7) {
        let an = Analysis::new(&lattice(seed, n)).unwrap();
        if algebra_fclp(&an).unwrap().holds {
            for t in 0..an.con.len() {
                let q = Analysis::new(&an.quotient(t).quotient).unwrap();
                prop_assert!(algebra_fclp(&q).unwrap().holds);
            }
        }
    }

    #[test]
    fn fclp_of_products(s1 in any::<u64>(), s2 in any::<u64>(), n1 in 2usize..=5, n2 in 2usize..=5) {
        let (a, b) = (lattice(s1, n1), lattice(s2, n2));
        let fclp = |x: &FiniteAlgebra| algebra_fclp(&Analysis::new(x).unwrap()).unwrap().holds;
        let p = direct_product(&[&a, &b]).unwrap();
        prop_assert_eq!(fclp(&p), fclp(&a) && fclp(&b));
    }
}
