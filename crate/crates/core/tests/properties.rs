use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use taftyd::braiding::{
    braiding_operator, graded_nichols_dims, symmetrizer_permsum, symmetrizer_recursive, triangularity_check,
    yang_baxter_check,
};
use taftyd::coeffs::{
    build_comatrix, c_coeff, lambda_closed, lambda_rec, phi, qbinom, verify_comatrix, CoeffContext,
};
use taftyd::cyclo::{mat_rank, CycMatrix, CycNum, Rational};
use taftyd::hopf::{h_coproduct, h_counit, HopfElt, TaftParams};
use taftyd::yd::{
    build_finite_module, iso_test, socle_type_criterion, verify_yd_module, x_power_check, ModuleSpecifier,
    YdModule,
};

const BUDGET: u64 = 6561;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(a, b)| Rational::new(a, b))
}

fn wide_rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..=i64::MAX).prop_map(|(a, b)| Rational::new(a, b))
}

fn cycnum(n: u32) -> impl Strategy<Value = CycNum> {
    let d = taftyd::cyclo::euler_phi(n) as usize;
    proptest::collection::vec(small_rational(), d).prop_map(move |c| CycNum::from_coeffs(n, &c))
}

fn order_and_triple() -> impl Strategy<Value = (u32, CycNum, CycNum, CycNum)> {
    (1u32..=16).prop_flat_map(|n| (Just(n), cycnum(n), cycnum(n), cycnum(n)))
}

fn big(r: &Rational) -> BigRational {
    BigRational::new(r.numer(), r.denom())
}

/// Value at ζ = e^{2πi/n} as (re, im).
fn embed(c: &CycNum) -> (f64, f64) {
    let n = c.order() as f64;
    c.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (k, q)| {
        let v = q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap();
        let a = std::f64::consts::TAU * k as f64 / n;
        (re + v * a.cos(), im + v * a.sin())
    })
}

fn det(m: &[Vec<CycNum>], n: u32) -> CycNum {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = CycNum::zero(n);
    for c in 0..m.len() {
        let minor: Vec<Vec<CycNum>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][c] * &det(&minor, n);
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn subsets(from: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..from)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Largest r with a nonzero r×r minor.
fn rank_by_minors(m: &CycMatrix) -> usize {
    let n = m.order();
    for r in (1..=m.rows().min(m.cols())).rev() {
        for rows in subsets(m.rows(), r) {
            for cols in subsets(m.cols(), r) {
                let sub: Vec<Vec<CycNum>> =
                    rows.iter().map(|&a| cols.iter().map(|&b| m.get(a, b).clone()).collect()).collect();
                if !det(&sub, n).is_zero() {
                    return r;
                }
            }
        }
    }
    0
}

fn params() -> impl Strategy<Value = TaftParams> {
    (2u32..=8).prop_flat_map(|n| (Just(n), 0..n)).prop_map(|(n, t)| TaftParams::new(n, t).unwrap())
}

fn small_params() -> impl Strategy<Value = TaftParams> {
    (2u32..=6).prop_flat_map(|n| (Just(n), 0..n)).prop_map(|(n, t)| TaftParams::new(n, t).unwrap())
}

fn lambda_for(p: TaftParams, choice: u32) -> CycNum {
    match choice % 3 {
        0 => p.zero(),
        1 => p.one(),
        _ => p.xi(choice as i64),
    }
}

fn finite_module() -> impl Strategy<Value = YdModule> {
    small_params()
        .prop_flat_map(|p| (Just(p), 0..p.n() as i64, 0..p.n() as i64, 0u32..9))
        .prop_map(|(p, i1, j, l)| build_finite_module(p, i1, j, lambda_for(p, l)).unwrap())
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn rational_ops_match_bigrational(a in wide_rational(), b in wide_rational()) {
        prop_assert_eq!(big(&a.add_ref(&b)), big(&a) + big(&b));
        prop_assert_eq!(big(&a.mul_ref(&b)), big(&a) * big(&b));
        prop_assert_eq!(big(&a.neg_ref()), -big(&a));
    }

    #[test]
    fn field_axioms((n, a, b, c) in order_and_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
        prop_assert_eq!(a.order(), n);
    }

    #[test]
    fn product_matches_complex_embedding((_n, a, b, _c) in order_and_triple()) {
        let (ar, ai) = embed(&a);
        let (br, bi) = embed(&b);
        let (pr, pi) = embed(&(&a * &b));
        prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-6);
        prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-6);
    }

    #[test]
    fn serde_round_trip((_n, a, _b, _c) in order_and_triple()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: CycNum = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn root_power_order(n in 1u32..=24, e in -50i64..50) {
        let z = CycNum::root_power(n, e);
        let g = num_integer::gcd(e.rem_euclid(n as i64), n as i64) as u32;
        let ord = n / g;
        let mut acc = z.clone();
        for k in 1..ord {
            prop_assert!(!acc.is_one(), "ζ^{e} has order {k} < {ord} in Q(ζ_{n})");
            acc = &acc * &z;
        }
        prop_assert!(acc.is_one());
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn rank_matches_minors(
        n in 1u32..=8,
        rows in 1usize..=4,
        cols in 1usize..=4,
        seed in proptest::collection::vec((-2i64..=2, 0i64..8, 0u8..3), 16),
    ) {
        // sparse entries with repeated structure so that rank drops occur
        let entries: Vec<CycNum> = (0..rows * cols)
            .map(|k| {
                let (c, e, kind) = seed[k % seed.len()];
                match kind {
                    0 => CycNum::zero(n),
                    1 => CycNum::from_int(n, c),
                    _ => &CycNum::root_power(n, e) * &CycNum::from_int(n, c),
                }
            })
            .collect();
        let mut m = CycMatrix::from_entries(n, rows, cols, entries).unwrap();
        if rows > 1 {
            // copy a scaled row so the rank is often deficient
            for c in 0..cols {
                let v = m.get(0, c) * &CycNum::root_power(n, 1);
                m.set(rows - 1, c, v);
            }
        }
        prop_assert_eq!(mat_rank(&m).unwrap(), rank_by_minors(&m));
    }

    #[test]
    fn commutation_relation(p in params(), a in 0i64..8, b in 0u32..=6) {
        let lhs = HopfElt::x_pow(p, b).mul(&HopfElt::g_pow(p, a));
        let rhs = HopfElt::g_pow(p, a).mul(&HopfElt::x_pow(p, b)).scale(&p.xi(a * b as i64));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_is_multiplicative(p in params(), a in 0i64..8, b in 0u32..=5, c in 0i64..8, d in 0u32..=5) {
        let u = HopfElt::g_pow(p, a).mul(&HopfElt::x_pow(p, b));
        let v = HopfElt::g_pow(p, c).mul(&HopfElt::x_pow(p, d));
        prop_assert_eq!(h_coproduct(&u.mul(&v)), h_coproduct(&u).mul(&h_coproduct(&v)));
        prop_assert_eq!(h_counit(&u.mul(&v)), &h_counit(&u) * &h_counit(&v));
    }

    #[test]
    fn coproduct_of_x_power(p in params(), k in 0u32..=7) {
        let x = HopfElt::x_pow(p, 1);
        let mut direct = h_coproduct(&HopfElt::one(p));
        for _ in 0..k {
            direct = direct.mul(&h_coproduct(&x));
        }
        let closed = h_coproduct(&HopfElt::x_pow(p, k));
        prop_assert_eq!(&direct, &closed);
        let nonvanishing = (0..=k).filter(|&q| !qbinom(k as i64, q as i64, &p.w()).is_zero()).count();
        prop_assert_eq!(closed.num_terms(), nonvanishing);
    }

    #[test]
    fn lambda_forms_agree(p in params(), i in 0i64..8, j in 0i64..8, k in 0u32..=16, l in 0u32..=16) {
        let (k, l) = (k.min(2 * p.n()), l.min(k.min(2 * p.n())));
        let ctx = CoeffContext::new(p, i, j);
        prop_assert_eq!(lambda_rec(&ctx, k, l).unwrap(), lambda_closed(&ctx, k, l).unwrap());
    }

    #[test]
    fn lambda_vanishing_pattern(p in params(), i1 in 0i64..8, j in 0i64..8) {
        let big_n = p.big_n();
        let ctx = CoeffContext::t_multiple(p, i1, j);
        let m = big_n - phi(-i1 - j, big_n);
        for k in 0..=2 * big_n {
            for l in 0..=k.min(m) {
                let z = lambda_rec(&ctx, k, l).unwrap().is_zero();
                prop_assert_eq!(z, k > m, "λ({},{}) with m = {}", k, l, m);
            }
        }
        for l in 0..p.n() {
            prop_assert!(c_coeff(&ctx, p.n(), l).unwrap().is_zero());
        }
    }

    #[test]
    fn comatrix_law(p in params(), i in -8i64..8, j in -8i64..8, size in 0u32..10) {
        let ctx = CoeffContext::new(p, i, j);
        prop_assert!(verify_comatrix(&build_comatrix(&ctx, size)).passed);
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn modules_are_yetter_drinfeld(m in finite_module()) {
        let rep = verify_yd_module(&m);
        prop_assert!(rep.passed, "{}", rep.summary());
        let rep = x_power_check(&m);
        prop_assert!(rep.passed, "{}", rep.summary());
        let p = m.params();
        prop_assert!(m.dim <= p.n() as usize);
        if m.lambda().is_some_and(CycNum::is_zero) {
            prop_assert!(m.dim <= p.big_n() as usize);
        }
        prop_assert!(m.weights_distinct());
    }

    #[test]
    fn iso_test_is_an_equivalence(
        p in small_params(),
        a in (0i64..6, 0i64..6, 0u32..3),
        b in (0i64..6, 0i64..6, 0u32..3),
    ) {
        let sa = ModuleSpecifier::finite(p, a.0, a.1, lambda_for(p, a.2));
        let sb = ModuleSpecifier::finite(p, b.0, b.1, lambda_for(p, b.2));
        prop_assert!(iso_test(&sa, &sa).unwrap());
        let ab = iso_test(&sa, &sb).unwrap();
        prop_assert_eq!(ab, iso_test(&sb, &sa).unwrap());
        let same_lambda = sa.build().unwrap().lambda() == sb.build().unwrap().lambda();
        let by_socle = same_lambda && socle_type_criterion(&sa.build().unwrap(), &sb.build().unwrap());
        prop_assert_eq!(ab, by_socle);
    }

    #[test]
    fn braidings_satisfy_the_braid_relation(m in finite_module()) {
        let b = braiding_operator(&m);
        prop_assert!(b.is_invertible());
        let rep = yang_baxter_check(&b);
        prop_assert!(rep.passed, "{}", rep.summary());
        if m.lambda().is_some_and(CycNum::is_zero) {
            prop_assert!(triangularity_check(&b));
        }
    }

    #[test]
    fn symmetrizers_agree(m in finite_module().prop_filter("dim ≤ 3", |m| m.dim <= 3), deg in 2usize..=4) {
        let b = braiding_operator(&m);
        prop_assert_eq!(
            symmetrizer_permsum(&b, deg, BUDGET).unwrap(),
            symmetrizer_recursive(&m, deg, BUDGET).unwrap()
        );
    }

    #[test]
    fn flip_braiding_gives_symmetric_algebra(
        n in 2u32..=6,
        i1 in 0i64..6,
        j in 0i64..6,
        l in 0u32..3,
    ) {
        let p = TaftParams::new(n, 0).unwrap();
        let m = build_finite_module(p, i1, j, lambda_for(p, l)).unwrap();
        let top = if m.dim <= 2 { 6 } else { 4 };
        let dims = graded_nichols_dims(&m, top, BUDGET).unwrap();
        for (deg, d) in dims.iter().enumerate() {
            // C(dim+deg−1, deg)
            let expect = (0..deg).fold(BigInt::from(1), |acc, k| acc * (m.dim + k) / (k + 1));
            prop_assert_eq!(BigInt::from(*d), expect, "degree {}", deg);
        }
    }
}
