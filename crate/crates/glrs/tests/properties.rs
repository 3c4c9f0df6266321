//! Property suites: field axioms of the coefficient scalars, homomorphism
//! of the specializations, and strategy-independence of normal forms.

use glrs::fun::{fun_alphabet, presentation_fun};
use glrs::laurent::Rational;
use glrs::ncpoly::{NCPoly, Word};
use glrs::rewrite::Strategy as ReduceStrategy;
use glrs::scalar::ScalarRS;
use glrs::urs::{presentation_u, u_alphabet};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn laurent() -> impl Strategy<Value = ScalarRS> {
    prop::collection::vec(((-2i64..=2), (-2i64..=2), rational()), 0..3).prop_map(|terms| {
        terms
            .into_iter()
            .fold(ScalarRS::zero(), |acc, (a, b, c)| {
                acc.add(&ScalarRS::monomial(a, b, c))
            })
    })
}

fn scalar() -> impl Strategy<Value = ScalarRS> {
    (laurent(), laurent()).prop_map(|(num, den)| {
        if den.is_zero() {
            num
        } else {
            num.div(&den).expect("nonzero denominator")
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.add(&a.neg()).is_zero());
        prop_assert_eq!(a.add(&ScalarRS::zero()), a.clone());
        prop_assert_eq!(a.mul(&ScalarRS::one()), a.clone());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_is_stable(a in scalar(), b in scalar()) {
        // round trips through arithmetic land on the identical representation
        prop_assert_eq!(a.add(&b).sub(&b).to_string(), a.to_string());
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).div(&b).unwrap().to_string(), a.to_string());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar()) {
        let (r0, s0) = (Rational::new(2.into(), 1.into()), Rational::new(3.into(), 1.into()));
        let ea = a.eval(&r0, &s0);
        let eb = b.eval(&r0, &s0);
        if let (Ok(ea), Ok(eb)) = (ea, eb) {
            if let Ok(es) = a.add(&b).eval(&r0, &s0) {
                prop_assert_eq!(es, ea.clone() + eb.clone());
            }
            if let Ok(ep) = a.mul(&b).eval(&r0, &s0) {
                prop_assert_eq!(ep, ea * eb);
            }
        }
    }

    #[test]
    fn one_param_specialization_is_a_homomorphism(a in laurent(), b in laurent()) {
        let qa = a.specialize_one_param().unwrap();
        let qb = b.specialize_one_param().unwrap();
        let qs = a.add(&b).specialize_one_param().unwrap();
        let qp = a.mul(&b).specialize_one_param().unwrap();
        prop_assert_eq!(qs, qa.add(&qb));
        prop_assert_eq!(qp, qa.mul(&qb));
    }
}

fn word_over(alphabet_len: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..alphabet_len, 0..=max_len)
}

fn fun_word(n: usize, picks: &[usize]) -> NCPoly {
    let alphabet = fun_alphabet(n);
    NCPoly::from_word(Word(picks.iter().map(|&i| alphabet[i]).collect()))
}

fn u_word(n: usize, picks: &[usize]) -> NCPoly {
    let alphabet = u_alphabet(n);
    NCPoly::from_word(Word(picks.iter().map(|&i| alphabet[i]).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fun_normal_form_strategy_independent(picks in word_over(4, 5)) {
        let pres = presentation_fun(2).unwrap();
        let p = fun_word(2, &picks);
        let left = pres.system.normal_form_with(&p, ReduceStrategy::LeftmostInnermost);
        let right = pres.system.normal_form_with(&p, ReduceStrategy::RightmostInnermost);
        prop_assert_eq!(&left, &right);
        // idempotence
        prop_assert_eq!(pres.system.normal_form(&left), left.clone());
        for (w, _) in left.terms() {
            prop_assert!(pres.system.is_normal(w));
        }
    }

    #[test]
    fn u_normal_form_strategy_independent(picks in word_over(10, 5)) {
        let pres = presentation_u(2).unwrap();
        let p = u_word(2, &picks);
        let left = pres.system.normal_form_with(&p, ReduceStrategy::LeftmostInnermost);
        let right = pres.system.normal_form_with(&p, ReduceStrategy::RightmostInnermost);
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(pres.system.normal_form(&left), left);
    }

    #[test]
    fn normal_form_is_an_algebra_map(a in word_over(4, 3), b in word_over(4, 3)) {
        let pres = presentation_fun(2).unwrap();
        let pa = fun_word(2, &a);
        let pb = fun_word(2, &b);
        let direct = pres.system.normal_form(&pa.mul(&pb));
        let stepped = pres
            .system
            .normal_form(&pres.system.normal_form(&pa).mul(&pres.system.normal_form(&pb)));
        prop_assert_eq!(direct, stepped);
    }
}
