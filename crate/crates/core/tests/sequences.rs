use cantor_core::exactnum::{q, AlgebraicReal, RealNumber};
use cantor_core::expansions::*;
use cantor_core::thuemorse::*;
use cantor_core::words::*;

fn signed(a: RealNumber) -> BaseSystem {
    BaseSystem::signed(a).unwrap()
}

fn golden() -> RealNumber {
    RealNumber::Algebraic(AlgebraicReal::golden_threshold())
}

#[test]
fn lexicographic_examples() {
    let s = |x: &str| Seq::Periodic(parse_epseq(x, Alphabet::SIGNED).unwrap());
    assert!(lex_compare(&s("-(0)"), &s("+(0)"), 64).unwrap().is_less());
    assert_eq!(lex_compare(&s("+(0)"), &s("+(0)"), 64).unwrap(), LexOrder::Equal);
    // 1 0^3 ... against 1 0^2 (-1) ...
    assert_eq!(lex_compare(&s("+000(0)"), &s("+00-(0)"), 64).unwrap(), LexOrder::Greater(4));
}

#[test]
fn substitution_between_alphabets() {
    let w = Seq::Finite(FiniteWord::new(vec![2, 1, 0], Alphabet::zero_to(2)).unwrap());
    let Seq::Finite(out) = substitute_alphabet(&w, Alphabet::zero_to(2), Alphabet::SIGNED).unwrap() else {
        panic!("finite in, finite out")
    };
    assert_eq!(out.digits(), &[1, 0, -1]);
}

#[test]
fn strong_eventual_periodicity() {
    let b = |x: &str| parse_epseq(x, Alphabet::BINARY).unwrap();
    assert!(strongly_eventually_periodic(&b("(0,0,1)")).unwrap().is_some());
    assert!(strongly_eventually_periodic(&b("0,1,(1,0)")).unwrap().is_some());
    assert!(strongly_eventually_periodic(&b("1,0,(0,1)")).unwrap().is_none());
}

#[test]
fn greedy_trivial_values() {
    let half = BaseSystem::new(RealNumber::rational(1, 2), Alphabet::BINARY).unwrap();
    assert_eq!(greedy_expansion(&half, &RealNumber::rational(1, 1), 12).unwrap().digits(), &[1; 12]);
    let two_fifths = BaseSystem::new(RealNumber::rational(2, 5), Alphabet::BINARY).unwrap();
    let g = greedy_expansion(&two_fifths, &RealNumber::rational(2, 5), 10).unwrap();
    assert_eq!(g.digits(), &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
}

#[test]
fn delta_examples() {
    let g = BaseSystem::new(golden(), Alphabet::zero_to(2)).unwrap();
    let d = delta(&g, 20).unwrap();
    assert_eq!(d.digits()[0], 2);
    assert!(d.digits()[1..].iter().all(|&x| x == 1));
    assert_eq!(try_ep_form(&g, 64).unwrap().unwrap().to_string(), "2,(1)");

    let s = BaseSystem::new(RealNumber::rational(9, 20), Alphabet::zero_to(2)).unwrap();
    assert_eq!(&delta(&s, 3).unwrap().digits()[..3], &[2, 0, 1]);
    let s = signed(RealNumber::rational(9, 20));
    assert_eq!(&delta(&s, 3).unwrap().digits()[..3], &[1, -1, 0]);
}

#[test]
fn admissibility_examples() {
    let s = |x: &str| Seq::Periodic(parse_epseq(x, Alphabet::zero_to(2)).unwrap());
    assert_eq!(admissible_delta(&s("2,(1)"), 64).unwrap(), Admissibility::Admissible);
    assert!(matches!(admissible_delta(&s("(1,2)"), 64).unwrap(), Admissibility::NotAdmissible { .. }));
    let kl = Seq::Lazy(one_plus_lambda_seq());
    assert!(matches!(admissible_delta(&kl, 512).unwrap(), Admissibility::UndecidedAtDepth(_)));
}

#[test]
fn uniqueness_examples() {
    let s = |x: &str| Seq::Periodic(parse_epseq(x, Alphabet::SIGNED).unwrap());
    let cubic: RealNumber = "alg:-1,1,2,2@[2/5,1/2]".parse().unwrap();
    assert!(!is_unique_expansion(&signed(cubic), &s("(-+)"), 1024).unwrap().passes());
    let a = signed(RealNumber::rational(9, 25));
    assert!(is_unique_expansion(&a, &s("(+-+-0)"), 1024).unwrap().is_unique());
    let b = signed(RealNumber::rational(21, 50));
    // (w_1 reflect(w_1))^infinity is already too large at 21/50
    assert!(!is_unique_expansion(&b, &s("(+0-0)"), 1024).unwrap().passes());
}

#[test]
fn forbidden_zero_runs() {
    assert_eq!(forbidden_zero_run(&signed(RealNumber::rational(9, 20)), 4096).unwrap(), 0);
    let k = forbidden_zero_run(&signed(RealNumber::rational(77, 200)), 4096).unwrap();
    // oracle: delta(77/200) starts with 1 0^k followed by a negative digit
    let d = delta(&signed(RealNumber::rational(77, 200)), k + 2).unwrap();
    assert!(k >= 1);
    assert_eq!(d.digits()[0], 1);
    assert!(d.digits()[1..=k].iter().all(|&x| x == 0));
    assert_eq!(d.digits()[k + 1], -1);
    assert!(forbidden_zero_run(&signed(golden()), 4096).is_err());
}

#[test]
fn endpoint_automaton() {
    let sys = signed("alg:-1,1,2,2@[2/5,1/2]".parse().unwrap());
    let t = sys.unit_bound().unwrap();
    let auto = build_expansion_automaton(&sys, &t, 100).unwrap();
    assert_eq!(auto.num_states(), 1);
    assert_eq!(auto.edges, vec![Edge { from: 0, digit: 1, to: 0 }]);
}

#[test]
fn membership_examples() {
    let a = RealNumber::rational(2, 5);
    assert!(matches!(gamma_membership(&a, &RealNumber::rational(0, 1), 64).unwrap(), Membership::In { .. }));
    assert!(matches!(gamma_membership(&a, &RealNumber::rational(2, 3), 64).unwrap(), Membership::In { .. }));
    assert!(matches!(gamma_membership(&a, &RealNumber::rational(1, 1), 64).unwrap(), Membership::Out { .. }));
}

#[test]
fn thue_morse_displays() {
    assert_eq!(tau_prefix(4).unwrap().digits(), &[0, 1, 1, 0]);
    assert_eq!(lambda_prefix(2).unwrap().digits(), &[1, 0]);
    let w2 = w(2).unwrap();
    let w1 = w(1).unwrap();
    assert_eq!(w2.decrement_last().unwrap().digits(), w1.concat(&w1.reflect()).digits());
    assert_eq!(dw(1), q(1, 2));
    assert_eq!(dw_counted(2).unwrap(), q(1, 4));
    assert_eq!(dw_counted(3).unwrap(), q(3, 8));
    for n in [2, 3, 10] {
        assert!(zero_count_recursion_check(n).unwrap());
    }
}

#[test]
fn alpha_kl_enclosures_nest() {
    let (lo, hi) = alpha_kl(&q(1, 10_000)).unwrap();
    assert!(lo >= q(3942, 10_000) && hi <= q(3944, 10_000));
    let (lo2, hi2) = alpha_kl(&q(1, 10_000_000_000)).unwrap();
    assert!(lo <= lo2 && hi2 <= hi);
    let kl = RealNumber::alpha_kl();
    let p = cantor_core::exactnum::default_precision();
    assert_eq!(cantor_core::exactnum::compare(&RealNumber::rational(2, 5), &kl, &p), cantor_core::exactnum::Cmp::Greater);
}

#[test]
fn sft_search_examples() {
    for (n, d) in [(7, 20), (17, 50)] {
        let s = find_smallest_sft_n(&RealNumber::rational(n, d), 8, 4096).unwrap();
        assert!(s.n <= 8);
    }
    assert!(find_smallest_sft_n(&RealNumber::rational(2, 5), 8, 4096).is_err());
    let b = sft_blocks(1).unwrap();
    assert_eq!(b.zeta.digits(), &[0, 1]);
    assert_eq!(b.eta.digits(), &[-1, 1]);
    assert_eq!(b.d_omega1, q(1, 2));
    assert_eq!(b.d_omega2, q(1, 3));
}
