use proptest::prelude::*;
use tridiag_core::jacobi::{build_l, jacobi_poly_closed_form, JacobiFamily, JacobiParams};
use tridiag_core::tridiag::{band, build_m, build_m_expanded, duality_residual, NuParams, TridiagParams};
use tridiag_core::wilson::Dictionary;
use tridiag_core::{q, DiffOp, LaurentPoly, Rational};

fn rat() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=4, rat()), 0..5).prop_map(LaurentPoly::from_terms)
}

fn op() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec(poly(), 0..4).prop_map(DiffOp::new)
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rational_text_round_trip(r in rat()) {
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }

    #[test]
    fn laurent_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(a.invert_variable().invert_variable(), a);
    }

    #[test]
    fn composition_is_application(a in op(), b in op(), f in poly()) {
        prop_assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
    }

    #[test]
    fn composition_associates(a in op(), b in op(), c in op()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn reflection_is_involution(coeffs in prop::collection::vec(prop::collection::vec(rat(), 0..4), 0..4)) {
        let a = DiffOp::new(coeffs.into_iter().map(LaurentPoly::from_coeffs).collect());
        prop_assert_eq!(a.reflect_variable().unwrap().reflect_variable().unwrap(), a);
    }

    #[test]
    fn jacobi_recurrence_matches_closed_form(alpha in rat(), beta in rat()) {
        let p = JacobiParams::new(alpha, beta);
        let family = JacobiFamily::new(p.clone(), 6);
        prop_assume!(family.is_ok());
        let family = family.unwrap();
        let l = build_l(&p);
        for n in 0..=6 {
            let closed = jacobi_poly_closed_form(&p, n);
            prop_assume!(closed.is_ok());
            prop_assert_eq!(&closed.unwrap(), family.poly(n));
            prop_assert_eq!(l.apply(family.poly(n)), family.poly(n).scale(&family.lambda(n as i64)));
        }
    }

    #[test]
    fn m_forms_agree_and_act_tridiagonally(alpha in rat(), beta in rat(), tau0 in rat(), tau2 in rat(), tau3 in rat()) {
        let jp = JacobiParams::new(alpha, beta);
        let family = JacobiFamily::new(jp.clone(), 6);
        prop_assume!(family.is_ok());
        let family = family.unwrap();
        let tp = TridiagParams::new(tau0, tau2, tau3);
        let m = build_m(&jp, &tp);
        prop_assert_eq!(&m, &build_m_expanded(&jp, &tp));
        prop_assert!(duality_residual(&jp, &tp).is_zero());
        for n in 0..=5 {
            let bd = band(&family, &tp, &Rational::zero(), n);
            let mut rest = m.apply(family.poly(n)) - family.poly(n + 1).scale(&bd.up) - family.poly(n).scale(&bd.diag);
            if n > 0 {
                rest = rest - family.poly(n - 1).scale(&bd.down);
            }
            prop_assert!(rest.is_zero(), "n = {}: {}", n, rest);
        }
    }

    #[test]
    fn wilson_dictionary_round_trip(alpha in rat(), beta in rat(), nu1 in rat(), nu2 in rat(), tau0 in rat()) {
        let jp = JacobiParams::new(alpha, beta);
        let np = NuParams::new(nu1, nu2);
        let dict = Dictionary::forward(&jp, &np, &tau0);
        prop_assert_eq!(Dictionary::inverse(&dict.wilson), (jp, np));
    }
}

#[test]
fn derivative_commutator_is_identity() {
    assert_eq!(DiffOp::d().commutator(&DiffOp::x()), DiffOp::identity());
}
