use cantor_core::exactnum::{compare, pow2_neg, q, AlgebraicField, Cmp, QAlpha, RealNumber, Rational};
use cantor_core::expansions::*;
use cantor_core::verify::cubic_alpha;
use cantor_core::words::*;
use proptest::prelude::*;
use std::cmp::Ordering;

fn signed_digits(max: usize) -> impl Strategy<Value = Vec<Digit>> {
    prop::collection::vec(-1..=1i32, 0..=max)
}

fn epseq() -> impl Strategy<Value = EPSeq> {
    (signed_digits(5), prop::collection::vec(-1..=1i32, 1..=6))
        .prop_map(|(pre, per)| EPSeq::new(pre, per, Alphabet::SIGNED).unwrap())
}

/// Naive ordering on a long common prefix.
fn naive_order(a: &EPSeq, b: &EPSeq) -> Ordering {
    a.prefix(200).cmp(&b.prefix(200))
}

fn order_of(o: LexOrder) -> Ordering {
    match o {
        LexOrder::Less(_) => Ordering::Less,
        LexOrder::Greater(_) => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

fn rational_alpha() -> impl Strategy<Value = (i64, i64)> {
    // p/q strictly inside (1/3, 1/2)
    (7i64..60).prop_flat_map(|d| ((d / 3 + 1)..=((d - 1) / 2)).prop_map(move |n| (n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn lex_order_matches_prefix_order(a in epseq(), b in epseq()) {
        prop_assert_eq!(order_of(a.cmp_exact(&b)), naive_order(&a, &b));
        prop_assert_eq!(a.cmp_exact(&b), b.cmp_exact(&a).reverse());
    }

    #[test]
    fn lex_order_is_transitive(a in epseq(), b in epseq(), c in epseq()) {
        if !a.cmp_exact(&b).is_greater() && !b.cmp_exact(&c).is_greater() {
            prop_assert!(!a.cmp_exact(&c).is_greater());
        }
    }

    #[test]
    fn reflection_reverses_order(a in epseq(), b in epseq()) {
        prop_assert_eq!(a.reflect().cmp_exact(&b.reflect()), a.cmp_exact(&b).reverse());
        prop_assert_eq!(a.reflect().reflect(), a);
    }

    #[test]
    fn density_is_reflection_invariant(a in epseq()) {
        let zeros = a.period().iter().filter(|&&d| d == 0).count();
        let d = a.zero_density();
        prop_assert_eq!(&d.lower, &q(zeros as i64, a.period().len() as i64));
        prop_assert_eq!(d.lower, a.reflect().zero_density().lower);
    }

    #[test]
    fn canonical_form_is_stable(pre in signed_digits(4), per in prop::collection::vec(-1..=1i32, 1..=5), r in 0usize..5) {
        let a = EPSeq::new(pre.clone(), per.clone(), Alphabet::SIGNED).unwrap();
        // unroll part of the period into the preperiod
        let r = r % per.len();
        let mut pre2 = pre.clone();
        pre2.extend(&per[..r]);
        let mut per2 = per.repeat(2);
        per2.rotate_left(r);
        let b = EPSeq::new(pre2, per2, Alphabet::SIGNED).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.shift(r).prefix(50), a.prefix(50 + r)[r..].to_vec());
    }

    #[test]
    fn text_round_trip(a in epseq()) {
        let s = a.to_string();
        prop_assert_eq!(parse_epseq(&s, Alphabet::SIGNED).unwrap(), a);
    }

    #[test]
    fn rational_comparison_is_exact(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
        let x = RealNumber::rational(a, b);
        let y = RealNumber::rational(c, d);
        let want: Cmp = q(a, b).cmp(&q(c, d)).into();
        prop_assert_eq!(compare(&x, &y, &pow2_neg(64)), want);
    }

    #[test]
    fn algebraic_refinement_is_nested(k in 1u32..40) {
        let a = cubic_alpha();
        let (lo1, hi1) = a.refine(&pow2_neg(k)).unwrap();
        let (lo2, hi2) = a.refine(&pow2_neg(k + 20)).unwrap();
        prop_assert!(lo1 <= lo2 && hi2 <= hi1);
        prop_assert!(&hi2 - &lo2 <= pow2_neg(k + 20));
    }

    #[test]
    fn field_arithmetic_round_trips(c in prop::collection::vec(-20i64..20, 3), e in prop::collection::vec(-20i64..20, 3)) {
        let f = AlgebraicField::new(&cubic_alpha()).unwrap();
        let a = QAlpha::from_poly(&f, cantor_core::exactnum::poly::Poly::from_ints(c));
        let b = QAlpha::from_poly(&f, cantor_core::exactnum::poly::Poly::from_ints(e));
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a.clone());
        }
        prop_assert_eq!(a.add(&b).sub(&b), a);
    }

    #[test]
    fn delta_decreases_with_alpha((n1, d1) in rational_alpha(), (n2, d2) in rational_alpha()) {
        let (a1, a2) = (q(n1, d1), q(n2, d2));
        prop_assume!(a1 < a2);
        let s1 = BaseSystem::signed(RealNumber::Rational(a1)).unwrap();
        let s2 = BaseSystem::signed(RealNumber::Rational(a2)).unwrap();
        let p1 = delta(&s1, 60).unwrap();
        let p2 = delta(&s2, 60).unwrap();
        prop_assert!(p1.digits() >= p2.digits());
    }

    #[test]
    fn delta_is_admissible((n, d) in rational_alpha()) {
        let sys = BaseSystem::signed(RealNumber::rational(n, d)).unwrap();
        if let Some(ep) = try_ep_form(&sys, 64).unwrap() {
            prop_assert!(matches!(admissible_delta(&Seq::Periodic(ep), 4096).unwrap(), Admissibility::Admissible));
        }
    }

    #[test]
    fn greedy_dominates_quasi_greedy((n, d) in rational_alpha(), num in 0i64..1000) {
        let sys = BaseSystem::signed(RealNumber::rational(n, d)).unwrap();
        let b = q(n, d - n);
        let x = (q(num, 500) - q(1, 1)) * &b;
        let x = RealNumber::Rational(x.clone());
        let g = greedy_expansion(&sys, &x, 40).unwrap();
        let h = quasi_greedy_expansion(&sys, &x, 40).unwrap();
        prop_assert!(g.digits() >= h.digits());
    }

    #[test]
    fn greedy_prefix_approximates((n, d) in rational_alpha(), num in 0i64..1000) {
        let sys = BaseSystem::signed(RealNumber::rational(n, d)).unwrap();
        let a = q(n, d);
        let b = q(n, d - n);
        let x = (q(num, 500) - q(1, 1)) * &b;
        let g = greedy_expansion(&sys, &RealNumber::Rational(x.clone()), 30).unwrap();
        let mut s = Rational::from_integer(0.into());
        let mut p = Rational::from_integer(1.into());
        for &dg in g.digits() {
            p = &p * &a;
            s += &p * Rational::from_integer(dg.into());
        }
        let err = if s > x { &s - &x } else { &x - &s };
        prop_assert!(err <= &p * &b);
    }

    #[test]
    fn uniqueness_is_reflection_symmetric((n, d) in rational_alpha(), s in epseq()) {
        let sys = BaseSystem::signed(RealNumber::rational(n, d)).unwrap();
        let u = is_unique_expansion(&sys, &Seq::Periodic(s.clone()), 2048).unwrap();
        let v = is_unique_expansion(&sys, &Seq::Periodic(s.reflect()), 2048).unwrap();
        prop_assert_eq!(u.passes(), v.passes());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn automaton_paths_are_expansions(word in signed_digits(6)) {
        let sys = BaseSystem::signed(cubic_alpha()).unwrap();
        let f = sys.field().unwrap().clone();
        let alpha = QAlpha::alpha(&f);
        let mut t = QAlpha::from_int(&f, 0);
        let mut p = QAlpha::from_int(&f, 1);
        for &d in &word {
            p = p.mul(&alpha);
            t = t.add(&p.scale(&q(d as i64, 1)));
        }
        let auto = build_expansion_automaton(&sys, &t, 2000).unwrap();
        prop_assume!(auto.complete);
        let bound = sys.unit_bound().unwrap();
        let len = 8;
        let n_words = auto.words(len);
        prop_assert_eq!(n_words.len() as u128, auto.count_paths(len));
        for w in n_words {
            let mut s = QAlpha::from_int(&f, 0);
            let mut p = QAlpha::from_int(&f, 1);
            for &d in &w {
                p = p.mul(&alpha);
                s = s.add(&p.scale(&q(d as i64, 1)));
            }
            // (t - s) / alpha^len must stay within the unit bound
            let r = t.sub(&s).div(&p).unwrap();
            prop_assert!(r.cmp_value(&bound) != Ordering::Greater);
            prop_assert!(r.neg().cmp_value(&bound) != Ordering::Greater);
        }
    }
}
