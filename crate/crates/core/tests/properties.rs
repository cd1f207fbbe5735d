use std::cmp::Ordering;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tcone_core::cm::{
    build_g, build_h, build_p, cm_criterion, cm_oracle, compute_d, expected_basis, Branch,
};
use tcone_core::cone::{cone_ideal, minimal_generators, mu_formula, project_x1, ConeElement};
use tcone_core::curve::{binomial_in_toric, classify, random_bresinsky, BresinskyData};
use tcone_core::engine::{is_member, mora_nf, Limits};
use tcone_core::report::parse_poly;
use tcone_core::{Binomial, Monomial, OrderKind, Poly, TermOrder};

fn mono() -> impl Strategy<Value = Monomial> {
    prop::array::uniform4(0u64..6).prop_map(|e| Monomial::new(&e).unwrap())
}

fn order() -> impl Strategy<Value = TermOrder> {
    prop_oneof![
        Just(TermOrder::neg_degrevlex()),
        Just(TermOrder::degrevlex(4)),
        Just(TermOrder::with_default_precedence(OrderKind::Lex, 4)),
        (1usize..4).prop_map(
            |k| TermOrder::new(OrderKind::EliminationBlock(k), vec![3, 2, 1, 0]).unwrap()
        ),
    ]
}

fn sample(bound: u64) -> impl Strategy<Value = BresinskyData> {
    any::<u64>().prop_map(move |seed| random_bresinsky(bound, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn order_is_total_and_antisymmetric(o in order(), a in mono(), b in mono()) {
        let ab = o.cmp(&a, &b).unwrap();
        prop_assert_eq!(ab, o.cmp(&b, &a).unwrap().reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
    }

    #[test]
    fn order_is_transitive(o in order(), a in mono(), b in mono(), c in mono()) {
        let mut v = [a, b, c];
        v.sort_by(|x, y| o.cmp(x, y).unwrap());
        prop_assert_ne!(o.cmp(&v[0], &v[2]).unwrap(), Ordering::Greater);
    }

    #[test]
    fn order_is_multiplicative(o in order(), a in mono(), b in mono(), c in mono()) {
        prop_assert_eq!(o.cmp(&a, &b).unwrap(), o.cmp(&a.mul(&c), &b.mul(&c)).unwrap());
    }

    #[test]
    fn one_is_extreme(o in order(), a in mono()) {
        prop_assume!(!a.is_one());
        let one = Monomial::one(4);
        let want = if o.is_local() { Ordering::Greater } else { Ordering::Less };
        prop_assert_eq!(o.cmp(&one, &a).unwrap(), want);
    }

    #[test]
    fn nil_property(m1 in mono(), m2 in mono(), k in 1u64..=5) {
        prop_assume!(m1 != m2);
        let ord = TermOrder::neg_degrevlex();
        let f = Poly::from(Binomial::new(m1.pow(k), m2.pow(k)).unwrap());
        let g = Poly::from(Binomial::new(m1, m2).unwrap());
        let (nf, _) = mora_nf(&f, &[g], &ord, &Limits::default()).unwrap();
        prop_assert!(nf.is_none());
    }

    #[test]
    fn spoly_conserves_weight(a in sample(8), i in 0usize..5, j in 0usize..5) {
        prop_assume!(i != j);
        let curve = a.curve().unwrap();
        let g = a.generators();
        for ord in [TermOrder::neg_degrevlex(), TermOrder::degrevlex(4)] {
            if let Some(Poly::Binomial(s)) = Poly::from(g[i]).spoly(&Poly::from(g[j]), &ord) {
                prop_assert!(binomial_in_toric(&s, &curve));
            }
        }
    }

    #[test]
    fn poly_text_round_trip(p in mono(), q in mono()) {
        prop_assume!(p != q);
        let f = Poly::from(Binomial::new(p, q).unwrap());
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn criterion_equals_oracle(bound in 2u64..=12, seed in any::<u64>()) {
        let a = random_bresinsky(bound, seed).unwrap();
        let c = cm_criterion(&a).unwrap();
        let o = cm_oracle(&a, &Limits::default()).unwrap();
        prop_assert_eq!(c.verdict, o.cohen_macaulay, "{}", a);
    }

    #[test]
    fn d_invariants(bound in 2u64..=12, seed in any::<u64>()) {
        let a = random_bresinsky(bound, seed).unwrap();
        let d = compute_d(&a);
        prop_assert!(d >= 2);
        prop_assert!(a.a4 > (d - 1) * a.a34);
        prop_assert!(a.a2 > (d - 1) * a.a32);
    }

    #[test]
    fn gate_monotone(bound in 2u64..=12, seed in any::<u64>()) {
        let a = random_bresinsky(bound, seed).unwrap();
        let c = cm_criterion(&a).unwrap();
        if c.branch == Branch::Large {
            let six = c.condition("CM2.6").unwrap();
            let four = c.condition("CM2.4").unwrap();
            prop_assert!(!(six.applicable && six.satisfied && !four.satisfied));
        }
    }

    #[test]
    fn family_members_in_toric(bound in 2u64..=12, seed in any::<u64>()) {
        let a = random_bresinsky(bound, seed).unwrap();
        let curve = a.curve().unwrap();
        if a.a3 > a.a32 + a.a34 {
            for i in 0..=compute_d(&a) - 2 {
                prop_assert!(binomial_in_toric(&build_g(&a, i).unwrap(), &curve));
                prop_assert!(binomial_in_toric(&build_h(&a, i).unwrap(), &curve));
            }
            prop_assert!(binomial_in_toric(&build_p(&a).unwrap(), &curve));
        }
    }

    #[test]
    fn mu_formula_and_projection(bound in 2u64..=12, seed in any::<u64>()) {
        let a = random_bresinsky(bound, seed).unwrap();
        let c = cm_criterion(&a).unwrap();
        prop_assume!(c.verdict);
        let basis: Vec<Poly> = expected_basis(&a).unwrap().into_iter().map(Poly::from).collect();
        let cone = cone_ideal(&basis);
        let lim = Limits::default();
        let mu = minimal_generators(&project_x1(&cone), &lim).unwrap().len() as u64;
        prop_assert_eq!(mu, mu_formula(&a, &c).unwrap());
        prop_assert_eq!(mu, minimal_generators(&cone, &lim).unwrap().len() as u64);
        prop_assert!(cone.iter().all(|g| g.poly().is_homogeneous()));
    }

    #[test]
    fn mu_stable_under_permutation(bound in 2u64..=12, seed in any::<u64>(), shuffle in any::<u64>()) {
        let a = random_bresinsky(bound, seed).unwrap();
        let o = cm_oracle(&a, &Limits::default()).unwrap();
        let mut cone: Vec<ConeElement> = project_x1(&cone_ideal(&o.basis));
        let lim = Limits::default();
        let mu = minimal_generators(&cone, &lim).unwrap().len();
        cone.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle));
        prop_assert_eq!(mu, minimal_generators(&cone, &lim).unwrap().len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn toric_round_trip_and_minimality(seed in any::<u64>()) {
        let a = random_bresinsky(6, seed).unwrap();
        let curve = a.curve().unwrap();
        let lim = Limits::default();
        let (class, toric) = classify(&curve, &lim).unwrap();
        prop_assert_eq!(class.data(), Some(&a));
        let gens: Vec<Poly> = toric.generators.iter().map(|&g| g.into()).collect();
        prop_assert!(toric.generators.iter().all(|g| binomial_in_toric(g, &curve)));
        let ord = TermOrder::degrevlex(4);
        for i in 0..gens.len() {
            let others: Vec<Poly> = gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| *g).collect();
            prop_assert!(!is_member(&gens[i], &others, &ord, &lim).unwrap());
        }
    }
}
