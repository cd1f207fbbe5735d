//! Values checked against independent computations written here from
//! scratch, and published values.

use tcone_core::cm::{
    build_g, build_h, build_p, cm_criterion, cm_oracle, compute_d, expected_basis,
};
use tcone_core::cone::{cone_ideal, least_summand, minimal_generators, project_x1};
use tcone_core::curve::{
    binomial_in_toric, bresinsky_n, classify, toric_ideal, BresinskyData, Classification,
    FreeExponents, MonomialCurve,
};
use tcone_core::engine::{is_member, mora_nf, Limits};
use tcone_core::report::{family_data, family_n};
use tcone_core::{Binomial, Monomial, Poly, TermOrder};

fn m(e: [u64; 4]) -> Monomial {
    Monomial::new(&e).unwrap()
}

fn b(p: [u64; 4], q: [u64; 4]) -> Binomial {
    Binomial::new(m(p), m(q)).unwrap()
}

fn free(v: [u64; 8]) -> FreeExponents {
    let [a13, a14, a21, a23, a32, a34, a41, a42] = v;
    FreeExponents {
        a13,
        a14,
        a21,
        a23,
        a32,
        a34,
        a41,
        a42,
    }
}

fn ex1() -> BresinskyData {
    BresinskyData::from_free(free([3, 3, 9, 1, 2, 3, 2, 5])).unwrap()
}
fn ex2() -> BresinskyData {
    BresinskyData::from_free(free([7, 11, 12, 4, 6, 4, 16, 7])).unwrap()
}
fn ex3() -> BresinskyData {
    BresinskyData::from_free(free([5, 11, 9, 6, 2, 5, 12, 5])).unwrap()
}

fn same_up_to_sign(a: &[Binomial], b: &[Binomial]) -> bool {
    a.len() == b.len()
        && a.iter()
            .all(|x| b.iter().any(|y| *y == *x || *y == x.negate()))
}

/// All exponent vectors of total degree at most `deg`.
fn monomials_up_to(deg: u64) -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    for a in 0..=deg {
        for b in 0..=deg - a {
            for c in 0..=deg - a - b {
                for d in 0..=deg - a - b - c {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

fn dot(e: &[u64; 4], n: &[u64; 4]) -> u64 {
    e.iter().zip(n).map(|(x, y)| x * y).sum()
}

#[test]
fn toric_of_1234_against_brute_force_kernel() {
    let n = [1, 2, 3, 4];
    let curve = MonomialCurve::new(&n).unwrap();
    let t = toric_ideal(&curve, &Limits::default()).unwrap();
    assert!(t.generators.iter().all(|g| binomial_in_toric(g, &curve)));
    let gens: Vec<Poly> = t.generators.iter().map(|&g| g.into()).collect();
    let ord = TermOrder::degrevlex(4);
    // every balanced pair of monomials up to degree 4 lies in the ideal
    let mons = monomials_up_to(4);
    for (i, p) in mons.iter().enumerate() {
        for q in &mons[i + 1..] {
            if dot(p, &n) == dot(q, &n) {
                let f = Poly::from(b(*p, *q));
                assert!(
                    is_member(&f, &gens, &ord, &Limits::default()).unwrap(),
                    "{f}"
                );
            }
        }
    }
    // and the ideal is proper: x1 - x2 is not in it
    assert!(!is_member(
        &b([1, 0, 0, 0], [0, 1, 0, 0]).into(),
        &gens,
        &ord,
        &Limits::default()
    )
    .unwrap());
}

#[test]
fn published_generators() {
    let cases: [([u64; 4], [Binomial; 5]); 3] = [
        (
            [141, 222, 285, 232],
            [
                b([0, 0, 3, 3], [11, 0, 0, 0]),
                b([0, 7, 0, 0], [9, 0, 1, 0]),
                b([0, 0, 4, 0], [0, 2, 0, 3]),
                b([0, 0, 0, 6], [2, 5, 0, 0]),
                b([0, 5, 3, 0], [9, 0, 0, 3]),
            ],
        ),
        (
            [1673, 2236, 2248, 2828],
            [
                b([0, 0, 7, 11], [28, 0, 0, 0]),
                b([0, 13, 0, 0], [12, 0, 4, 0]),
                b([0, 0, 11, 0], [0, 6, 0, 4]),
                b([0, 0, 0, 15], [16, 7, 0, 0]),
                b([0, 7, 7, 0], [12, 0, 0, 4]),
            ],
        ),
        (
            [890, 1944, 933, 1275],
            [
                b([0, 0, 5, 11], [21, 0, 0, 0]),
                b([0, 7, 0, 0], [9, 0, 6, 0]),
                b([0, 0, 11, 0], [0, 2, 0, 5]),
                b([0, 0, 0, 16], [12, 5, 0, 0]),
                b([0, 5, 5, 0], [9, 0, 0, 5]),
            ],
        ),
    ];
    for (n, gens) in cases {
        let curve = MonomialCurve::new(&n).unwrap();
        let (class, toric) = classify(&curve, &Limits::default()).unwrap();
        assert!(
            same_up_to_sign(&toric.generators, &gens),
            "{n:?}: {:?}",
            toric.generators
        );
        let Classification::BresinskyGorenstein { generators, .. } = class else {
            panic!("{n:?}")
        };
        assert_eq!(generators, gens.to_vec());
    }
}

#[test]
fn weight_formulas_by_hand() {
    // 7*6*3 + 5*3*1 = 141 and so on
    assert_eq!(bresinsky_n(&ex1().free()).unwrap(), [141, 222, 285, 232]);
    assert_eq!(
        bresinsky_n(&ex2().free()).unwrap(),
        [1673, 2236, 2248, 2828]
    );
    assert_eq!(bresinsky_n(&ex3().free()).unwrap(), [890, 1944, 933, 1275]);
    for c in [2u64, 3, 7, 10, 146, 148] {
        let (c2, n) = (c * c, family_n(c));
        assert_eq!(
            n,
            [
                3 * c2 - 4 * c + 2,
                6 * c2 + 9 * c + 2,
                4 * c2 + 5 * c - 3,
                6 * c2 + 6 * c - 11
            ]
        );
        assert_eq!(family_data(c).unwrap().n, n);
    }
    assert!(family_data(147).is_err());
}

#[test]
fn d_by_search() {
    for a in [ex1(), ex2(), ex3(), family_data(6).unwrap()] {
        let d = (1..)
            .find(|&i| a.a2 <= i * a.a32 || a.a4 <= i * a.a34)
            .unwrap();
        assert_eq!(compute_d(&a), d);
    }
    assert_eq!(compute_d(&ex2()), 3);
    assert_eq!(compute_d(&ex3()), 4);
    assert_eq!(compute_d(&family_data(9).unwrap()), 9);
}

#[test]
fn condition_values_by_hand() {
    let c = cm_criterion(&ex1()).unwrap();
    // 7 - (9 + 1), 6 - (2 + 5)
    assert_eq!(c.condition("CM1.1").unwrap().value, -3);
    assert_eq!(c.condition("CM1.2").unwrap().value, -1);
    let c = cm_criterion(&ex2()).unwrap();
    // d(a3 - a32 - a34) + a2 - a21 - a23 = 3*1 + 13 - 16
    assert_eq!(c.condition("CM2.6").unwrap().value, 0);
    // (d-1)*1 + a4 + a32 - a1 - a23 = 2 + 15 + 6 - 28 - 4
    assert_eq!(c.condition("CM2.5").unwrap().value, -9);
    let c = cm_criterion(&ex3()).unwrap();
    // (d-1)(11 - 2 - 5) + 7 - 9 - 6 = 12 - 8
    assert_eq!(c.condition("CM2.4").unwrap().value, 4);
    assert!(!c.verdict);
    for cc in [2u64, 5, 10] {
        let c = cm_criterion(&family_data(cc).unwrap()).unwrap();
        assert_eq!(c.condition("CM2.4").unwrap().value, -6);
        assert_eq!(c.condition("CM2.7").unwrap().value, -5);
    }
}

#[test]
fn family_members_balanced() {
    for a in [ex2(), ex3(), family_data(7).unwrap()] {
        let curve = a.curve().unwrap();
        let d = compute_d(&a);
        for i in 0..=d - 2 {
            assert!(binomial_in_toric(&build_g(&a, i).unwrap(), &curve));
            assert!(binomial_in_toric(&build_h(&a, i).unwrap(), &curve));
        }
        assert!(binomial_in_toric(&build_p(&a).unwrap(), &curve));
    }
}

#[test]
fn p_for_example_two() {
    assert_eq!(build_p(&ex2()).unwrap(), b([0, 0, 29, 0], [12, 5, 0, 12]));
    // a4 - d a34 = 0 for the family: the second form
    let a = family_data(4).unwrap();
    assert_eq!(build_p(&a).unwrap(), b([0, 0, 10, 0], [12, 3, 0, 0]));
}

#[test]
fn family_expected_basis_matches_displayed_set() {
    for c in [2u64, 3, 6] {
        let a = family_data(c).unwrap();
        let mut shown = vec![
            b([0, c, 0, 0], [2 * c + 3, 0, 2, 0]),
            b([0, 0, 3, 0], [0, 1, 0, 1]),
            b([0, 0, 0, c], [1, c - 1, 0, 0]),
        ];
        for i in 0..c - 1 {
            shown.push(b([0, c - (i + 1), 3 * i + 1, 0], [2 * c + 3, 0, 0, i + 1]));
            shown.push(b([0, 0, 3 * i + 1, c - (i + 1)], [2 * c + 4, i, 0, 0]));
        }
        shown.push(b([0, 0, 3 * c - 2, 0], [2 * c + 4, c - 1, 0, 0]));
        assert!(
            same_up_to_sign(&expected_basis(&a).unwrap(), &shown),
            "c = {c}"
        );
    }
}

#[test]
fn spoly_f1_f3_by_hand() {
    // lcm(x3^3 x4^3, x3^4) = x3^4 x4^3; x3 * x1^11 against x4^3 * x2^2 x4^3
    let ord = TermOrder::neg_degrevlex();
    let a = ex1();
    let g = a.generators();
    let s = Poly::from(g[0]).spoly(&Poly::from(g[2]), &ord).unwrap();
    assert!(s.same_up_to_sign(&b([11, 0, 1, 0], [0, 2, 0, 6]).into()));
    let set: Vec<Poly> = g.iter().map(|&x| x.into()).collect();
    let (nf, trace) = mora_nf(&s, &set, &ord, &Limits::default()).unwrap();
    assert!(nf.is_none());
    assert_eq!(trace.steps.len(), 2);
}

#[test]
fn example_two_cone() {
    let a = ex2();
    let basis: Vec<Poly> = expected_basis(&a)
        .unwrap()
        .into_iter()
        .map(Poly::from)
        .collect();
    let cone = cone_ideal(&basis);
    let shown: Vec<Poly> = vec![
        m([0, 0, 7, 11]).into(),
        m([0, 13, 0, 0]).into(),
        m([0, 6, 0, 4]).into(),
        m([0, 0, 0, 15]).into(),
        m([0, 7, 7, 0]).into(),
        m([0, 1, 18, 0]).into(),
        m([0, 0, 18, 7]).into(),
        b([0, 0, 29, 0], [12, 5, 0, 12]).into(),
    ];
    assert_eq!(cone.len(), shown.len());
    assert!(shown
        .iter()
        .all(|s| cone.iter().any(|c| c.poly().same_up_to_sign(s))));
    let projected = project_x1(&cone);
    assert_eq!(
        minimal_generators(&projected, &Limits::default())
            .unwrap()
            .len(),
        8
    );
    assert!(projected.contains(&m([0, 0, 29, 0]).into()));
}

#[test]
fn least_summand_examples() {
    assert_eq!(
        *least_summand(&b([0, 0, 3, 3], [11, 0, 0, 0])).poly(),
        m([0, 0, 3, 3]).into()
    );
    let f4 = b([0, 0, 0, 5], [1, 4, 0, 0]);
    assert_eq!(*least_summand(&f4).poly(), Poly::from(f4));
}

#[test]
fn oracle_on_published_examples() {
    let lim = Limits::default();
    assert!(cm_oracle(&ex1(), &lim).unwrap().cohen_macaulay);
    assert!(cm_oracle(&ex2(), &lim).unwrap().cohen_macaulay);
    let o = cm_oracle(&ex3(), &lim).unwrap();
    assert!(!o.cohen_macaulay);
    assert!(o.offending_lead.unwrap().exp(0) > 0);
    assert!(
        cm_oracle(&family_data(3).unwrap(), &lim)
            .unwrap()
            .cohen_macaulay
    );
}
