//! Casimir words and the check that they commute with the generators and act
//! as a scalar.

use super::{generators, Coef, Word};
use crate::diffop::DiffOp;
use crate::exact::{LaurentPoly, Rational};
use crate::jacobi::JacobiParams;
use crate::report::Check;
use crate::tridiag::TridiagParams;

/// A Casimir as `sum coef * word`, coefficients in the presentation's constant slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CasimirSpec {
    pub name: String,
    pub terms: Vec<(Coef, Word)>,
}

impl CasimirSpec {
    pub fn build(&self, k1: &DiffOp, k2: &DiffOp, values: &[Rational]) -> DiffOp {
        let gens = generators(k1, k2);
        self.terms.iter().fold(DiffOp::zero(), |acc, (c, w)| &acc + &w.eval(&gens).scale(&c.eval(values)))
    }
}

fn g(i: usize) -> Word {
    Word::Gen(i)
}

/// `Q = a2 {K2^2, K1} + K3^2 + (a2^2 + c2) K2^2 + d {K1, K2} + (d a2 + 2 e2) K2`.
pub fn jacobi_casimir() -> CasimirSpec {
    let [a2, d, c2, e2] = [0, 1, 2, 3];
    let two = Rational::from(2);
    CasimirSpec {
        name: "jacobi.casimir".into(),
        terms: vec![
            (Coef::slot(a2), Word::anti(Word::product(&[1, 1]), g(0))),
            (Coef::one(), Word::product(&[2, 2])),
            (Coef::monomial(Rational::one(), &[a2, a2]).plus(Coef::slot(c2)), Word::product(&[1, 1])),
            (Coef::slot(d), Word::anti(g(0), g(1))),
            (Coef::monomial(Rational::one(), &[d, a2]).plus(Coef::monomial(two, &[e2])), g(1)),
        ],
    }
}

/// `R = alpha1 {K1^2, K2} + alpha2 {K2^2, K1} + (alpha1^2 + gamma1) K1^2 + (alpha2^2 + gamma2) K2^2
///  + K3^2 + (delta + alpha1 alpha2) {K1, K2} + (delta alpha1 + 2 eps1) K1 + (delta alpha2 + 2 eps2) K2`.
pub fn racah_wilson_casimir() -> CasimirSpec {
    let [a1, a2, g1, g2, dl, e1, e2] = [0, 1, 2, 3, 4, 5, 6];
    let one = Rational::one;
    let two = Rational::from(2);
    CasimirSpec {
        name: "racah-wilson.casimir".into(),
        terms: vec![
            (Coef::slot(a1), Word::anti(Word::product(&[0, 0]), g(1))),
            (Coef::slot(a2), Word::anti(Word::product(&[1, 1]), g(0))),
            (Coef::monomial(one(), &[a1, a1]).plus(Coef::slot(g1)), Word::product(&[0, 0])),
            (Coef::monomial(one(), &[a2, a2]).plus(Coef::slot(g2)), Word::product(&[1, 1])),
            (Coef::one(), Word::product(&[2, 2])),
            (Coef::slot(dl).plus(Coef::monomial(one(), &[a1, a2])), Word::anti(g(0), g(1))),
            (Coef::monomial(one(), &[dl, a1]).plus(Coef::monomial(two.clone(), &[e1])), g(0)),
            (Coef::monomial(one(), &[dl, a2]).plus(Coef::monomial(two, &[e2])), g(1)),
        ],
    }
}

/// `alpha^2 - 1`, the value of `Q` for `K1 = L`, `K2 = X`.
pub fn jacobi_casimir_value(jp: &JacobiParams) -> Rational {
    &jp.alpha * &jp.alpha - Rational::one()
}

/// The scalar by which `R` acts for `K1 = L`, `K2 = M`.
pub fn racah_wilson_casimir_value(jp: &JacobiParams, tp: &TridiagParams) -> Rational {
    let one = Rational::one();
    let two = Rational::from(2);
    let (a, b) = (&jp.alpha, &jp.beta);
    let s = jp.sum();
    let (t0, t1, t3) = (&tp.tau0, tp.tau1(), &tp.tau3);
    (a + &one) * (b + &one) * &s * (&t1 * &t1 - &t1) * &two
        + ((&s + &one) * (&s + &one) - Rational::from(5)) * t0 * t0
        + (a + &one) * &s * (t0 * t3 + t0 + t3) * &two
        - t0 * t3 * Rational::from(4)
        + (a * a - &one) * t3 * t3
}

/// `[C, K1] = 0`, `[C, K2] = 0`, and `C x^k = value x^k` for `k = 0 ..= degree`.
/// `degree` defaults to the order of `C` plus three.
pub fn casimir_check(
    k1: &DiffOp,
    k2: &DiffOp,
    spec: &CasimirSpec,
    values: &[Rational],
    expected: &Rational,
    degree: Option<usize>,
) -> Vec<Check> {
    let c = spec.build(k1, k2, values);
    let anchor = format!("{} commutes with the generators and acts as a scalar", spec.name);
    let mut checks = Vec::with_capacity(3);
    for (i, k) in [k1, k2].into_iter().enumerate() {
        let r = c.commutator(k);
        checks.push(Check::new(
            format!("{}.commutes[K{}]", spec.name, i + 1),
            anchor.as_str(),
            r.is_zero(),
            format!("residual {r}"),
        ));
    }
    let top = degree.unwrap_or_else(|| c.order().unwrap_or(0) + 3);
    let bad: Vec<usize> = (0..=top)
        .filter(|&k| {
            let mono = LaurentPoly::x_pow(k as i64);
            c.apply(&mono) != mono.scale(expected)
        })
        .collect();
    checks.push(Check::new(
        format!("{}.scalar", spec.name),
        anchor,
        bad.is_empty(),
        format!("expected {expected} on x^0 .. x^{top}; mismatched powers {bad:?}"),
    ));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::jacobi::build_l;
    use crate::qalg::presets::{jacobi_constants, racah_wilson_constants};
    use crate::tridiag::build_m;

    #[test]
    fn jacobi_casimir_at_alpha_zero() {
        let jp = JacobiParams::new(Rational::zero(), q(3, 4));
        let value = jacobi_casimir_value(&jp);
        assert_eq!(value, Rational::from(-1));
        let checks = casimir_check(&build_l(&jp), &DiffOp::x(), &jacobi_casimir(), &jacobi_constants(&jp), &value, None);
        assert!(checks.iter().all(Check::passed), "{checks:#?}");
        // the operator itself is the scalar
        let c = jacobi_casimir().build(&build_l(&jp), &DiffOp::x(), &jacobi_constants(&jp));
        assert_eq!(c.as_scalar(), Some(value));
    }

    #[test]
    fn racah_wilson_casimir() {
        let jp = JacobiParams::new(Rational::zero(), Rational::zero());
        let tp = TridiagParams::new(Rational::zero(), q(1, 2), Rational::zero());
        assert!(racah_wilson_casimir_value(&jp, &tp).is_zero());
        let jp = JacobiParams::new(q(1, 3), q(-2, 5));
        let tp = TridiagParams::new(q(3, 7), q(2, 3), q(-5, 4));
        let value = racah_wilson_casimir_value(&jp, &tp);
        let checks = casimir_check(
            &build_l(&jp),
            &build_m(&jp, &tp),
            &super::racah_wilson_casimir(),
            &racah_wilson_constants(&jp, &tp),
            &value,
            None,
        );
        assert!(checks.iter().all(Check::passed), "{checks:#?}");
    }

    #[test]
    fn wrong_scalar_fails_only_the_scalar_check() {
        let jp = JacobiParams::new(q(1, 2), q(1, 2));
        let checks = casimir_check(
            &build_l(&jp),
            &DiffOp::x(),
            &jacobi_casimir(),
            &jacobi_constants(&jp),
            &Rational::from(7),
            Some(2),
        );
        assert!(checks[0].passed() && checks[1].passed() && !checks[2].passed());
    }
}
