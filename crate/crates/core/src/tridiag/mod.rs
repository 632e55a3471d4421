//! Tridiagonalization `M = tau1 X L + tau2 L X + tau3 X + tau0` of the
//! hypergeometric operator, and its `(X - 1)` variant `J`.

pub mod finite;
pub mod koornwinder;
pub mod transform;

use serde::Serialize;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Rational};
use crate::jacobi::{self, build_l, JacobiFamily, JacobiParams};
use crate::report::Check;

/// `tau0, tau2, tau3` with `tau1 = 1 - tau2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TridiagParams {
    pub tau0: Rational,
    pub tau2: Rational,
    pub tau3: Rational,
}

impl TridiagParams {
    pub fn new(tau0: Rational, tau2: Rational, tau3: Rational) -> Self {
        TridiagParams { tau0, tau2, tau3 }
    }

    pub fn tau1(&self) -> Rational {
        Rational::one() - &self.tau2
    }

    /// `tau1 lambda_i + tau2 lambda_j + tau3`, the factor shared by every banded action.
    pub fn mix(&self, jp: &JacobiParams, i: i64, j: i64) -> Rational {
        self.tau1() * jacobi::lambda(jp, i) + &self.tau2 * jacobi::lambda(jp, j) + &self.tau3
    }
}

/// The `(nu1, nu2)` parametrization of `(tau2, tau3)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NuParams {
    pub nu1: Rational,
    pub nu2: Rational,
}

impl NuParams {
    pub fn new(nu1: Rational, nu2: Rational) -> Self {
        NuParams { nu1, nu2 }
    }

    /// `tau2 = (1 + nu1 - nu2) / 2`.
    pub fn tau2(&self) -> Rational {
        (Rational::one() + &self.nu1 - &self.nu2) / Rational::from(2)
    }

    /// `tau3 = nu1 nu2 + (alpha + beta)(nu1 + nu2 - 1) / 2`.
    pub fn tau3(&self, jp: &JacobiParams) -> Rational {
        &self.nu1 * &self.nu2 + jp.sum() * (&self.nu1 + &self.nu2 - Rational::one()) / Rational::from(2)
    }

    pub fn to_tridiag(&self, jp: &JacobiParams, tau0: &Rational) -> TridiagParams {
        TridiagParams::new(tau0.clone(), self.tau2(), self.tau3(jp))
    }

    /// All rational `(nu1, nu2)` producing the given `tau2, tau3` (zero, one or two).
    ///
    /// With `d = 2 tau2 - 1` and `nu1 = nu2 + d`, `nu2` solves
    /// `nu2^2 + (d + s) nu2 + s(d - 1)/2 - tau3 = 0`, `s = alpha + beta`.
    pub fn from_tridiag(jp: &JacobiParams, tp: &TridiagParams) -> Vec<NuParams> {
        let two = Rational::from(2);
        let s = jp.sum();
        let d = &tp.tau2 * &two - Rational::one();
        let lin = &d + &s;
        let constant = &s * (&d - Rational::one()) / &two - &tp.tau3;
        let disc = &lin * &lin - Rational::from(4) * &constant;
        let Some(root) = disc.sqrt_exact() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for sign in [1, -1] {
            let nu2 = (-&lin + Rational::from(sign) * &root) / &two;
            let np = NuParams::new(&nu2 + &d, nu2);
            if !out.contains(&np) {
                out.push(np);
            }
        }
        out
    }
}

/// `t1 (X - c) L + t2 L (X - c) + t3 (X - c) + t0`, for any `L`.
pub fn tridiagonalize(
    l: &DiffOp,
    c: &Rational,
    t1: &Rational,
    t2: &Rational,
    t3: &Rational,
    t0: &Rational,
) -> DiffOp {
    let x = DiffOp::multiplication(LaurentPoly::from_coeffs([-c, Rational::one()]));
    let out = &x.compose(l).scale(t1) + &l.compose(&x).scale(t2);
    (&out + &x.scale(t3)).add_scalar(t0)
}

/// `M` by composition; this is the authoritative form.
pub fn build_m(jp: &JacobiParams, tp: &TridiagParams) -> DiffOp {
    tridiagonalize(&build_l(jp), &Rational::zero(), &tp.tau1(), &tp.tau2, &tp.tau3, &tp.tau0)
}

/// `M` from its expanded coefficients.
pub fn build_m_expanded(jp: &JacobiParams, tp: &TridiagParams) -> DiffOp {
    let one = Rational::one();
    let two_tau2 = &tp.tau2 * Rational::from(2);
    let s2 = jp.sum() + Rational::from(2);
    DiffOp::new(vec![
        LaurentPoly::from_coeffs([&(&jp.alpha + &one) * &tp.tau2 + &tp.tau0, -(&tp.tau2 * &s2 - &tp.tau3)]),
        LaurentPoly::from_coeffs([Rational::zero(), &jp.alpha + &one + &two_tau2, -(&s2 + &two_tau2)]),
        LaurentPoly::from_coeffs([Rational::zero(), Rational::zero(), one.clone(), -one]),
    ])
}

/// `M`, cross-checked against the expanded form.
pub fn build_m_checked(jp: &JacobiParams, tp: &TridiagParams) -> Result<DiffOp> {
    let m = build_m(jp, tp);
    let expanded = build_m_expanded(jp, tp);
    if m != expanded {
        return Err(Error::Consistency(format!("composed M = {m} but expanded M = {expanded}")));
    }
    Ok(m)
}

/// `J = rho1 (X - 1) L + rho2 L (X - 1) + rho3 (X - 1) + rho0`, with `rho1 = 1 - rho2`.
pub fn build_j(jp: &JacobiParams, rho: &TridiagParams) -> DiffOp {
    tridiagonalize(&build_l(jp), &Rational::one(), &rho.tau1(), &rho.tau2, &rho.tau3, &rho.tau0)
}

/// Coefficients of `M P_n = up P_{n+1} + diag P_n + down P_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Band {
    pub up: Rational,
    pub diag: Rational,
    pub down: Rational,
}

/// The banded action of the tridiagonalized operator with multiplier `X - shift`.
/// Only the diagonal sees the shift, through `b_n - shift`.
pub fn band(family: &JacobiFamily, tp: &TridiagParams, shift: &Rational, n: usize) -> Band {
    let jp = family.params();
    let ni = n as i64;
    let lam = family.lambda(ni);
    let b = family.b(n) - shift;
    Band {
        up: tp.mix(jp, ni, ni + 1),
        diag: &lam * &b + &tp.tau3 * &b + &tp.tau0,
        down: tp.mix(jp, ni, ni - 1) * family.u(n),
    }
}

/// `M x^n = up x^(n+1) + diag x^n`.
pub fn monomial_action(jp: &JacobiParams, tp: &TridiagParams, n: usize) -> (Rational, Rational) {
    let ni = n as i64;
    let up = tp.mix(jp, ni, ni + 1);
    let diag = tp.tau1() * jacobi::epsilon(jp, ni) + &tp.tau2 * jacobi::epsilon(jp, ni + 1) + &tp.tau0;
    (up, diag)
}

/// `tau1 X^-1 M + tau2 M X^-1 - (tau0 + 2 tau1 tau2) X^-1 + 2 tau1 tau2 - tau3 - L`.
pub fn duality_residual(jp: &JacobiParams, tp: &TridiagParams) -> DiffOp {
    let m = build_m(jp, tp);
    let xi = DiffOp::x_inv();
    let t1 = tp.tau1();
    let cross = &t1 * &tp.tau2 * Rational::from(2);
    let lhs = &xi.compose(&m).scale(&t1) + &m.compose(&xi).scale(&tp.tau2);
    let lhs = &lhs - &xi.scale(&(&tp.tau0 + &cross));
    &lhs.add_scalar(&(cross - &tp.tau3)) - &build_l(jp)
}

/// `tau1 lambda_N + tau2 lambda_(N+1) + tau3`; zero exactly when `M` keeps degree `<= N`.
pub fn truncation_value(jp: &JacobiParams, tp: &TridiagParams, n: usize) -> Rational {
    tp.mix(jp, n as i64, n as i64 + 1)
}

pub fn truncation_condition(jp: &JacobiParams, tp: &TridiagParams, n: usize) -> bool {
    truncation_value(jp, tp, n).is_zero()
}

/// The factors `(nu2 - N - 1, N + 1 + nu1 + alpha + beta)` whose product is the truncation value.
pub fn truncation_factors(jp: &JacobiParams, np: &NuParams, n: usize) -> (Rational, Rational) {
    let nn = Rational::from(n);
    (&np.nu2 - &nn - Rational::one(), nn + Rational::one() + &np.nu1 + jp.sum())
}

pub const ANCHOR_M_FORMS: &str = "tau1 X L + tau2 L X + tau3 X + tau0 = x^2(1-x) D^2 + ... (expanded M)";
pub const ANCHOR_M_BAND: &str = "M P_n = (tau1 l_n + tau2 l_(n+1) + tau3) P_(n+1) + (l_n b_n + tau3 b_n + tau0) P_n + ... P_(n-1)";
pub const ANCHOR_M_MONO: &str = "M x^n = (tau1 l_n + tau2 l_(n+1) + tau3) x^(n+1) + (tau1 e_n + tau2 e_(n+1) + tau0) x^n";
pub const ANCHOR_DUALITY: &str = "L = tau1 X^-1 M + tau2 M X^-1 - (tau0 + 2 tau1 tau2) X^-1 + 2 tau1 tau2 - tau3";
pub const ANCHOR_J_REFLECT: &str = "J has the properties of M under x -> 1 - x";
pub const ANCHOR_TRUNCATION: &str = "(nu2 - N - 1)(N + 1 + nu1 + alpha + beta) = 0 iff M keeps degree <= N";

pub fn verify_build_m(jp: &JacobiParams, tp: &TridiagParams) -> Check {
    match build_m_checked(jp, tp) {
        Ok(_) => Check::new("tridiag.m_composed_vs_expanded", ANCHOR_M_FORMS, true, "normal forms equal"),
        Err(e) => Check::error("tridiag.m_composed_vs_expanded", ANCHOR_M_FORMS, e),
    }
}

/// Residual of the three-term action on `P_0 .. P_nmax`; `family` must reach `nmax + 1`.
pub fn verify_tridiagonal_action(
    op: &DiffOp,
    family: &JacobiFamily,
    tp: &TridiagParams,
    shift: &Rational,
    nmax: usize,
) -> Vec<Check> {
    let name = if shift.is_zero() { "tridiag.m_three_diagonal" } else { "tridiag.j_three_diagonal" };
    (0..=nmax)
        .map(|n| {
            let bd = band(family, tp, shift, n);
            let mut expected = family.poly(n + 1).scale(&bd.up) + family.poly(n).scale(&bd.diag);
            if n > 0 {
                expected = expected + family.poly(n - 1).scale(&bd.down);
            }
            let residual = op.apply(family.poly(n)) - expected;
            Check::new(format!("{name}[n={n}]"), ANCHOR_M_BAND, residual.is_zero(), format!("residual {residual}"))
        })
        .collect()
}

/// Two-diagonal action on monomials plus the degree statement `deg(M x^n) <= n + 1`,
/// with equality iff the leading factor is nonzero.
pub fn verify_monomial_action(op: &DiffOp, jp: &JacobiParams, tp: &TridiagParams, nmax: usize) -> Vec<Check> {
    (0..=nmax)
        .map(|n| {
            let (up, diag) = monomial_action(jp, tp, n);
            let image = op.apply(&LaurentPoly::x_pow(n as i64));
            let expected = LaurentPoly::from_terms([(n as i64 + 1, up.clone()), (n as i64, diag)]);
            let degree_ok = match image.degree() {
                Ok(d) => (d == n as i64 + 1) == !up.is_zero() && d <= n as i64 + 1,
                Err(_) => up.is_zero(),
            };
            let ok = image == expected && degree_ok;
            Check::new(format!("tridiag.m_two_diagonal[n={n}]"), ANCHOR_M_MONO, ok, format!("M x^{n} = {image}"))
        })
        .collect()
}

pub fn verify_duality(jp: &JacobiParams, tp: &TridiagParams) -> Check {
    let r = duality_residual(jp, tp);
    Check::new("tridiag.duality", ANCHOR_DUALITY, r.is_zero(), format!("residual {r}"))
}

/// `J(alpha, beta; rho)` in `t = 1 - x` equals the `X`-tridiagonalization of
/// `L(beta, alpha)` with `(-rho1, -rho2, -rho3, rho0)`.
pub fn verify_j_reflection(jp: &JacobiParams, rho: &TridiagParams) -> Check {
    let swapped = JacobiParams::new(jp.beta.clone(), jp.alpha.clone());
    let expected =
        tridiagonalize(&build_l(&swapped), &Rational::zero(), &-rho.tau1(), &-&rho.tau2, &-&rho.tau3, &rho.tau0);
    match build_j(jp, rho).reflect_variable() {
        Ok(r) => {
            let diff = &r - &expected;
            Check::new("tridiag.j_reflection", ANCHOR_J_REFLECT, diff.is_zero(), format!("difference {diff}"))
        }
        Err(e) => Check::error("tridiag.j_reflection", ANCHOR_J_REFLECT, e),
    }
}

/// `M` keeps the degree-`<= N` space exactly when the truncation value vanishes.
pub fn verify_degree_preservation(jp: &JacobiParams, tp: &TridiagParams, n: usize) -> Check {
    let m = build_m(jp, tp);
    let preserves = (0..=n).all(|k| m.apply(&LaurentPoly::x_pow(k as i64)).degree().map_or(true, |d| d <= n as i64));
    let cond = truncation_condition(jp, tp, n);
    Check::new(
        format!("finite.degree_preservation[N={n}]"),
        ANCHOR_TRUNCATION,
        preserves == cond,
        format!("preserves degree <= {n}: {preserves}; truncation condition: {cond}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn sample() -> (JacobiParams, TridiagParams) {
        (JacobiParams::new(q(1, 2), q(3, 2)), TridiagParams::new(q(1, 5), q(2, 7), q(-3, 4)))
    }

    #[test]
    fn composed_equals_expanded() {
        let (jp, tp) = sample();
        assert!(build_m_checked(&jp, &tp).is_ok());
        let m = build_m(&jp, &tp);
        assert_eq!(m.coeff(2), "x^2 - x^3".parse().unwrap());
        let xl = DiffOp::x().compose(&build_l(&jp));
        let plain = TridiagParams::new(Rational::zero(), Rational::zero(), Rational::zero());
        assert_eq!(build_m(&jp, &plain), xl);
    }

    #[test]
    fn m_on_one() {
        let (jp, tp) = sample();
        let m = build_m(&jp, &tp);
        let l1 = jacobi::lambda(&jp, 1);
        let expected = LaurentPoly::from_coeffs([
            &tp.tau2 * (&jp.alpha + Rational::one()) + &tp.tau0,
            &tp.tau2 * l1 + &tp.tau3,
        ]);
        assert_eq!(m.apply(&LaurentPoly::one()), expected);
    }

    #[test]
    fn banded_actions() {
        let (jp, tp) = sample();
        let family = JacobiFamily::new(jp.clone(), 7).unwrap();
        let m = build_m(&jp, &tp);
        assert!(verify_tridiagonal_action(&m, &family, &tp, &Rational::zero(), 6).iter().all(Check::passed));
        assert!(verify_monomial_action(&m, &jp, &tp, 8).iter().all(Check::passed));
        let j = build_j(&jp, &tp);
        assert!(verify_tridiagonal_action(&j, &family, &tp, &Rational::one(), 6).iter().all(Check::passed));
        let bd = band(&family, &tp, &Rational::zero(), 0);
        assert_eq!(bd.up, &tp.tau2 * jacobi::lambda(&jp, 1) + &tp.tau3);
        assert!(bd.down.is_zero());
    }

    #[test]
    fn duality_and_specializations() {
        let (jp, tp) = sample();
        assert!(duality_residual(&jp, &tp).is_zero());
        // tau2 = 0: X^-1 M - tau0 X^-1 - tau3 = L
        let tp0 = TridiagParams::new(q(2, 3), Rational::zero(), q(5, 2));
        let m = build_m(&jp, &tp0);
        let xi = DiffOp::x_inv();
        let lhs = &(&xi.compose(&m) - &xi.scale(&tp0.tau0)) - &DiffOp::scalar(tp0.tau3.clone());
        assert_eq!(lhs, build_l(&jp));
    }

    #[test]
    fn j_is_the_reflected_m() {
        let (jp, tp) = sample();
        assert!(verify_j_reflection(&jp, &tp).passed());
    }

    #[test]
    fn nu_round_trip() {
        let jp = JacobiParams::new(q(1, 3), q(2, 5));
        let np = NuParams::new(q(3, 4), q(-1, 6));
        let tp = np.to_tridiag(&jp, &q(1, 2));
        let back = NuParams::from_tridiag(&jp, &tp);
        assert!(back.contains(&np));
        for other in back {
            assert_eq!(other.to_tridiag(&jp, &q(1, 2)), tp);
        }
    }

    #[test]
    fn truncation() {
        let jp = JacobiParams::new(q(1, 3), q(2, 5));
        let n = 3;
        let on_nu2 = NuParams::new(q(1, 7), Rational::from(n as i64 + 1));
        assert!(truncation_condition(&jp, &on_nu2.to_tridiag(&jp, &Rational::zero()), n));
        let on_nu1 = NuParams::new(-Rational::from(n as i64 + 1) - jp.sum(), q(5, 3));
        assert!(truncation_condition(&jp, &on_nu1.to_tridiag(&jp, &Rational::zero()), n));
        let generic = NuParams::new(q(1, 7), q(5, 3));
        let tp = generic.to_tridiag(&jp, &Rational::zero());
        assert!(!truncation_condition(&jp, &tp, n));
        let (f1, f2) = truncation_factors(&jp, &generic, n);
        assert_eq!(f1 * f2, truncation_value(&jp, &tp, n));
        assert_eq!(build_m(&jp, &tp).apply(&LaurentPoly::x_pow(n as i64)).degree().unwrap(), n as i64 + 1);
        assert!(verify_degree_preservation(&jp, &tp, n).passed());
        assert!(verify_degree_preservation(&jp, &on_nu2.to_tridiag(&jp, &Rational::zero()), n).passed());
    }
}
