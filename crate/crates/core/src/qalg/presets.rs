//! The Jacobi, Racah–Wilson and Hahn presentations and the constants of
//! their concrete realizations.

use super::{Coef, Presentation, Relation, Word};
use crate::exact::Rational;
use crate::jacobi::JacobiParams;
use crate::tridiag::TridiagParams;

pub const JACOBI_CONSTANTS: [&str; 4] = ["a2", "d", "c2", "e2"];
pub const RW_CONSTANTS: [&str; 7] = ["alpha1", "alpha2", "gamma1", "gamma2", "delta", "eps1", "eps2"];

fn g(i: usize) -> Word {
    Word::Gen(i)
}

fn definition() -> Relation {
    Relation { name: "K3 = [K1, K2]".into(), lhs: Word::commutator(g(0), g(1)), rhs: vec![(Coef::one(), g(2))] }
}

/// `[K2, K3] = a2 K2^2 + d K2`, `[K3, K1] = a2 {K1, K2} + d K1 + c2 K2 + e2`.
pub fn jacobi() -> Presentation {
    let [a2, d, c2, e2] = [0, 1, 2, 3];
    Presentation {
        name: "jacobi".into(),
        constants: JACOBI_CONSTANTS.iter().map(|s| s.to_string()).collect(),
        relations: vec![
            definition(),
            Relation {
                name: "[K2, K3]".into(),
                lhs: Word::commutator(g(1), g(2)),
                rhs: vec![(Coef::slot(a2), Word::product(&[1, 1])), (Coef::slot(d), g(1))],
            },
            Relation {
                name: "[K3, K1]".into(),
                lhs: Word::commutator(g(2), g(0)),
                rhs: vec![
                    (Coef::slot(a2), Word::anti(g(0), g(1))),
                    (Coef::slot(d), g(0)),
                    (Coef::slot(c2), g(1)),
                    (Coef::slot(e2), Word::Identity),
                ],
            },
        ],
    }
}

/// `[K2, K3] = alpha1 {K1, K2} + alpha2 K2^2 + gamma1 K1 + delta K2 + eps1`,
/// `[K3, K1] = alpha2 {K1, K2} + alpha1 K1^2 + gamma2 K2 + delta K1 + eps2`.
pub fn racah_wilson() -> Presentation {
    let [a1, a2, g1, g2, dl, e1, e2] = [0, 1, 2, 3, 4, 5, 6];
    Presentation {
        name: "racah-wilson".into(),
        constants: RW_CONSTANTS.iter().map(|s| s.to_string()).collect(),
        relations: vec![
            definition(),
            Relation {
                name: "[K2, K3]".into(),
                lhs: Word::commutator(g(1), g(2)),
                rhs: vec![
                    (Coef::slot(a1), Word::anti(g(0), g(1))),
                    (Coef::slot(a2), Word::product(&[1, 1])),
                    (Coef::slot(g1), g(0)),
                    (Coef::slot(dl), g(1)),
                    (Coef::slot(e1), Word::Identity),
                ],
            },
            Relation {
                name: "[K3, K1]".into(),
                lhs: Word::commutator(g(2), g(0)),
                rhs: vec![
                    (Coef::slot(a2), Word::anti(g(0), g(1))),
                    (Coef::slot(a1), Word::product(&[0, 0])),
                    (Coef::slot(g2), g(1)),
                    (Coef::slot(dl), g(0)),
                    (Coef::slot(e2), Word::Identity),
                ],
            },
        ],
    }
}

/// Racah–Wilson with `alpha1 = 0`.
pub fn hahn() -> Presentation {
    racah_wilson().specialize("alpha1", &Rational::zero(), "hahn").expect("alpha1 is a Racah-Wilson constant")
}

/// Looks up a preset by its CLI name.
pub fn by_name(name: &str) -> Option<Presentation> {
    match name {
        "jacobi" => Some(jacobi()),
        "racah-wilson" => Some(racah_wilson()),
        "hahn" => Some(hahn()),
        _ => None,
    }
}

/// `(a2, d, c2, e2)` for `K1 = L`, `K2 = X`.
pub fn jacobi_constants(jp: &JacobiParams) -> Vec<Rational> {
    let s = jp.sum();
    vec![
        Rational::from(2),
        Rational::from(-2),
        -(&s * (&s + Rational::from(2))),
        (&jp.alpha + Rational::one()) * &s,
    ]
}

/// The seven constants for `K1 = L`, `K2 = M`.
pub fn racah_wilson_constants(jp: &JacobiParams, tp: &TridiagParams) -> Vec<Rational> {
    let one = Rational::one();
    let two = Rational::from(2);
    let (a, b) = (&jp.alpha, &jp.beta);
    let s = jp.sum();
    let (t0, t2, t3) = (&tp.tau0, &tp.tau2, &tp.tau3);
    let a_sq = a * a;
    let delta = a * (&s + &one) + b - t0 * Rational::from(4) - t3 * &two;
    let gamma1 = &one - &a_sq + (t0 + t2 - t2 * t2) * Rational::from(4);
    let gamma2 = -(&s * (&s + &two));
    let eps1 = t0 * t0 * &two + (&one - &a_sq) * t3 + t0 * t3 * &two
        + (a + &one) * (b + &one) * (t2 * t2 - t2) * &two
        - (a + &one) * &s * t0;
    let eps2 = &s * ((&s + &two) * t0 + (a + &one) * t3);
    vec![Rational::from(-2), two, gamma1, gamma2, delta, eps1, eps2]
}

/// The six `alpha1 = 0` constants for `K1 = L`, `K2` the first-order `M` with
/// `tau3 = -2N - 2 - alpha - beta`.
pub fn hahn_constants(jp: &JacobiParams, tau0: &Rational, tau3: &Rational) -> Vec<Rational> {
    let two = Rational::from(2);
    let s = jp.sum();
    let a1 = &jp.alpha + Rational::one();
    let b1 = &jp.beta + Rational::one();
    vec![
        two.clone(),
        Rational::from(-4),
        -(&s * (&s + &two)),
        -((tau3 + tau0 * &two) * &two),
        tau0 * (tau0 + tau3) * &two + a1.clone() * b1 * &two,
        &s * (tau0 * (&s + &two) + tau3 * a1),
    ]
}

/// Named view of a constant vector, for reports.
pub fn display(names: &[String], values: &[Rational]) -> String {
    names.iter().zip(values).map(|(n, v)| format!("{n} = {v}")).collect::<Vec<_>>().join(", ")
}
