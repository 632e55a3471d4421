//! Monic Jacobi polynomials on `[0, 1]` and the hypergeometric operator.

use serde::Serialize;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::exact::{factorial, pochhammer, LaurentPoly, Rational};
use crate::report::Check;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiParams {
    pub alpha: Rational,
    pub beta: Rational,
}

impl JacobiParams {
    pub fn new(alpha: Rational, beta: Rational) -> Self {
        JacobiParams { alpha, beta }
    }

    /// `alpha + beta`.
    pub fn sum(&self) -> Rational {
        &self.alpha + &self.beta
    }
}

fn pole(what: String) -> Error {
    Error::Pole(what)
}

/// `L = x(1-x) d^2 + (alpha + 1 - (alpha + beta + 2) x) d`.
pub fn build_l(p: &JacobiParams) -> DiffOp {
    DiffOp::new(vec![
        LaurentPoly::zero(),
        LaurentPoly::from_coeffs([&p.alpha + Rational::one(), -(p.sum() + Rational::from(2))]),
        LaurentPoly::from_coeffs([Rational::zero(), Rational::one(), -Rational::one()]),
    ])
}

/// `lambda_n = -n(n + alpha + beta + 1)`; also used at `n = -1`.
pub fn lambda(p: &JacobiParams, n: i64) -> Rational {
    let n = Rational::from(n);
    -(&n * (&n + p.sum() + Rational::one()))
}

/// `epsilon_n = n(n + alpha)`.
pub fn epsilon(p: &JacobiParams, n: i64) -> Rational {
    let n = Rational::from(n);
    &n * (&n + &p.alpha)
}

/// Diagonal recurrence coefficient `b_n`.
///
/// At `n = 0` the factor `alpha + beta` cancels, so the value stays finite
/// on `alpha + beta = 0`.
pub fn recurrence_b(p: &JacobiParams, n: usize) -> Result<Rational> {
    let s = p.sum();
    let half = Rational::new(1, 2);
    let diff = &p.alpha - &p.beta;
    if n == 0 {
        let den = &s + Rational::from(2);
        if den.is_zero() {
            return if diff.is_zero() { Ok(half) } else { Err(pole("alpha + beta + 2 at n = 0".into())) };
        }
        return Ok(half + diff / (den * Rational::from(2)));
    }
    let num = &diff * (&p.alpha + &p.beta);
    if num.is_zero() {
        return Ok(half);
    }
    let lo = Rational::from(2 * n) + &s;
    let hi = &lo + Rational::from(2);
    if lo.is_zero() || hi.is_zero() {
        return Err(pole(format!("2n + alpha + beta (+2) at n = {n}")));
    }
    Ok(half + num / (Rational::from(2) * lo * hi))
}

/// Off-diagonal recurrence coefficient `u_n`, with `u_0 = 0`.
pub fn recurrence_u(p: &JacobiParams, n: usize) -> Result<Rational> {
    if n == 0 {
        return Ok(Rational::zero());
    }
    let s = p.sum();
    let nn = Rational::from(n);
    let two_n_s = Rational::from(2 * n) + &s;
    let a = &nn + &p.alpha;
    let b = &nn + &p.beta;
    if n == 1 {
        // (1 + alpha + beta) cancels between numerator and denominator
        let den = two_n_s.pow(2)? * (&two_n_s + Rational::one());
        if den.is_zero() {
            return Err(pole("(2 + alpha + beta)^2 (3 + alpha + beta) at n = 1".into()));
        }
        return Ok(a * b / den);
    }
    let den = (&two_n_s - Rational::one()) * two_n_s.pow(2)? * (&two_n_s + Rational::one());
    if den.is_zero() {
        return Err(pole(format!("(2n + alpha + beta - 1)(2n + alpha + beta)^2(2n + alpha + beta + 1) at n = {n}")));
    }
    Ok(&nn * a * b * (&nn + &s) / den)
}

/// `(alpha + 1)_m / (alpha + beta + 2)_m`: the `m`-th moment of the unit-mass weight.
pub fn normalized_moment(p: &JacobiParams, m: usize) -> Result<Rational> {
    let den = pochhammer(&(p.sum() + Rational::from(2)), m);
    if den.is_zero() {
        return Err(pole(format!("(alpha + beta + 2)_{m}")));
    }
    Ok(pochhammer(&(&p.alpha + Rational::one()), m) / den)
}

/// `h_n / h_0 = u_1 u_2 ... u_n`.
pub fn norm_ratio(p: &JacobiParams, n: usize) -> Result<Rational> {
    (1..=n).map(|k| recurrence_u(p, k)).product()
}

/// Inner product of two polynomials against the unit-mass weight, from moments.
pub fn weighted_inner(p: &JacobiParams, f: &LaurentPoly, g: &LaurentPoly) -> Result<Rational> {
    let fg = f * g;
    if !fg.is_polynomial() {
        return Err(Error::InvalidArgument("moment pairing needs polynomials".into()));
    }
    let mut acc = Rational::zero();
    for (e, c) in fg.terms() {
        acc += c * normalized_moment(p, e as usize)?;
    }
    Ok(acc)
}

/// `P_n` from the terminating 2F1 sum with its monic prefactor.
pub fn jacobi_poly_closed_form(p: &JacobiParams, n: usize) -> Result<LaurentPoly> {
    let a1 = &p.alpha + Rational::one();
    let c = Rational::from(n) + p.sum() + Rational::one();
    let prefactor_den = pochhammer(&c, n);
    if prefactor_den.is_zero() {
        return Err(pole(format!("(alpha + beta + n + 1)_n at n = {n}")));
    }
    let sign = if n.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let prefactor = sign * pochhammer(&a1, n) / prefactor_den;
    let minus_n = -Rational::from(n);
    let mut out = LaurentPoly::zero();
    for k in 0..=n {
        let den = pochhammer(&a1, k) * factorial(k);
        if den.is_zero() {
            return Err(pole(format!("(alpha + 1)_{k}")));
        }
        let coef = &prefactor * pochhammer(&minus_n, k) * pochhammer(&c, k) / den;
        out.add_term(k as i64, coef);
    }
    Ok(out)
}

/// `P_0 .. P_nmax` with their recurrence data, built eagerly.
#[derive(Debug, Clone)]
pub struct JacobiFamily {
    params: JacobiParams,
    l: DiffOp,
    polys: Vec<LaurentPoly>,
    b: Vec<Rational>,
    u: Vec<Rational>,
}

impl JacobiFamily {
    pub fn new(params: JacobiParams, nmax: usize) -> Result<Self> {
        let b = (0..=nmax).map(|n| recurrence_b(&params, n)).collect::<Result<Vec<_>>>()?;
        let u = (0..=nmax).map(|n| recurrence_u(&params, n)).collect::<Result<Vec<_>>>()?;
        let mut polys = vec![LaurentPoly::one()];
        let mut prev = LaurentPoly::zero();
        for n in 0..nmax {
            let cur = &polys[n];
            let next = cur.shift(1) - cur.scale(&b[n]) - prev.scale(&u[n]);
            prev = cur.clone();
            polys.push(next);
        }
        Ok(JacobiFamily { l: build_l(&params), params, polys, b, u })
    }

    pub fn params(&self) -> &JacobiParams {
        &self.params
    }

    pub fn l(&self) -> &DiffOp {
        &self.l
    }

    pub fn nmax(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn poly(&self, n: usize) -> &LaurentPoly {
        &self.polys[n]
    }

    pub fn polys(&self) -> &[LaurentPoly] {
        &self.polys
    }

    pub fn b(&self, n: usize) -> &Rational {
        &self.b[n]
    }

    pub fn u(&self, n: usize) -> &Rational {
        &self.u[n]
    }

    pub fn lambda(&self, n: i64) -> Rational {
        lambda(&self.params, n)
    }

    pub fn epsilon(&self, n: i64) -> Rational {
        epsilon(&self.params, n)
    }

    /// `h_n / h_0`.
    pub fn norm_ratio(&self, n: usize) -> Rational {
        self.u[1..=n].iter().product()
    }
}

pub const ANCHOR_EIGEN: &str = "L P_n = lambda_n P_n, lambda_n = -n(n + alpha + beta + 1)";
pub const ANCHOR_MONO: &str = "L x^n = lambda_n x^n + epsilon_n x^(n-1), epsilon_n = n(n + alpha)";
pub const ANCHOR_ORTHO: &str = "<P_m, P_n> = delta_mn h_n / h_0 with h_n / h_0 = u_1 ... u_n";
pub const ANCHOR_CLOSED: &str = "P_n = (-1)^n (alpha+1)_n / (n+alpha+beta+1)_n 2F1(-n, n+alpha+beta+1; alpha+1; x)";

/// `L P_n = lambda_n P_n` for every polynomial of the family.
pub fn verify_eigen(family: &JacobiFamily) -> Vec<Check> {
    (0..=family.nmax())
        .map(|n| {
            let p = family.poly(n);
            let r = &family.l().apply(p) - &p.scale(&family.lambda(n as i64));
            let monic = p.degree().ok() == Some(n as i64) && p.is_monic();
            Check::new(format!("jacobi.eigen[n={n}]"), ANCHOR_EIGEN, r.is_zero() && monic, format!("residual {r}"))
        })
        .collect()
}

/// `L x^n = lambda_n x^n + epsilon_n x^(n-1)` for `n = 0 .. nmax`.
pub fn verify_monomial_action(p: &JacobiParams, nmax: usize) -> Vec<Check> {
    let l = build_l(p);
    (0..=nmax)
        .map(|n| {
            let ni = n as i64;
            let expected = LaurentPoly::from_terms([(ni, lambda(p, ni)), (ni - 1, epsilon(p, ni))]);
            let got = l.apply(&LaurentPoly::x_pow(ni));
            Check::new(format!("jacobi.monomial[n={n}]"), ANCHOR_MONO, got == expected, format!("L x^{n} = {got}"))
        })
        .collect()
}

/// Gram matrix from moments against `diag(h_n / h_0)`, `m, n <= nmax`.
pub fn verify_orthogonality(family: &JacobiFamily, nmax: usize) -> Check {
    let p = family.params();
    for m in 0..=nmax {
        for n in 0..=m {
            let want = if m == n { family.norm_ratio(n) } else { Rational::zero() };
            match weighted_inner(p, family.poly(m), family.poly(n)) {
                Ok(v) if v == want => {}
                Ok(v) => {
                    return Check::new("jacobi.orthogonality", ANCHOR_ORTHO, false, format!("<P_{m}, P_{n}> = {v}, expected {want}"))
                }
                Err(e) => return Check::error("jacobi.orthogonality", ANCHOR_ORTHO, e),
            }
        }
    }
    Check::new("jacobi.orthogonality", ANCHOR_ORTHO, true, format!("m, n <= {nmax}"))
}

/// Recurrence-built polynomials against the terminating 2F1 sum.
pub fn verify_closed_form(family: &JacobiFamily, nmax: usize) -> Check {
    let p = family.params();
    for n in 0..=nmax.min(family.nmax()) {
        match jacobi_poly_closed_form(p, n) {
            Ok(c) if &c == family.poly(n) => {}
            Ok(c) => return Check::new("jacobi.closed_form", ANCHOR_CLOSED, false, format!("n = {n}: closed form {c}")),
            Err(e) => return Check::error("jacobi.closed_form", ANCHOR_CLOSED, e),
        }
    }
    Check::new("jacobi.closed_form", ANCHOR_CLOSED, true, format!("n <= {nmax}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn jp(a: Rational, b: Rational) -> JacobiParams {
        JacobiParams::new(a, b)
    }

    #[test]
    fn operator_examples() {
        let zero = jp(Rational::zero(), Rational::zero());
        assert_eq!(build_l(&zero), "(-2*x + 1)*D + (-x^2 + x)*D^2".parse().unwrap());
        let p = jp(Rational::one(), Rational::from(2));
        let l = build_l(&p);
        assert!(l.apply(&LaurentPoly::one()).is_zero());
        assert_eq!(l.apply(&LaurentPoly::x_pow(2)), "-12*x^2 + 6*x".parse().unwrap());
    }

    #[test]
    fn scalar_data() {
        let p = jp(Rational::one(), Rational::from(2));
        assert_eq!(lambda(&p, 2), Rational::from(-12));
        assert_eq!(epsilon(&jp(Rational::one(), Rational::zero()), 3), Rational::from(12));
        assert_eq!(recurrence_b(&jp(Rational::from(3), Rational::from(3)), 5).unwrap(), q(1, 2));
        assert_eq!(recurrence_u(&jp(Rational::zero(), Rational::zero()), 1).unwrap(), q(1, 12));
        // alpha + beta = 0 is harmless at n = 0
        assert_eq!(recurrence_b(&jp(q(1, 2), q(-1, 2)), 0).unwrap(), q(3, 4));
        assert!(recurrence_u(&jp(q(-1, 2), q(-1, 2)), 1).is_ok());
        assert!(recurrence_b(&jp(q(-3, 4), q(-1, 4)), 1).is_ok());
        assert!(matches!(recurrence_b(&jp(q(-1, 2), q(-3, 2)), 1), Err(Error::Pole(_))));
    }

    #[test]
    fn first_polynomials() {
        let f = JacobiFamily::new(jp(Rational::one(), Rational::zero()), 2).unwrap();
        assert_eq!(f.poly(1), &"x - 2/3".parse().unwrap());
        let sym = JacobiFamily::new(jp(q(3, 5), q(3, 5)), 1).unwrap();
        assert_eq!(sym.poly(1), &"x - 1/2".parse().unwrap());
        // shifted Legendre: P_2 = x^2 - x + 1/6
        let leg = JacobiFamily::new(jp(Rational::zero(), Rational::zero()), 2).unwrap();
        assert_eq!(leg.poly(2), &"x^2 - x + 1/6".parse().unwrap());
    }

    #[test]
    fn moments_and_norms() {
        let leg = jp(Rational::zero(), Rational::zero());
        assert_eq!(normalized_moment(&leg, 0).unwrap(), Rational::one());
        assert_eq!(normalized_moment(&leg, 1).unwrap(), q(1, 2));
        assert_eq!(normalized_moment(&jp(Rational::one(), Rational::one()), 2).unwrap(), q(3, 10));
        assert_eq!(norm_ratio(&leg, 0).unwrap(), Rational::one());
        assert_eq!(norm_ratio(&leg, 1).unwrap(), q(1, 12));
        // u_2 = 2*2*2*2 / (3 * 16 * 5) = 1/15 for Legendre
        assert_eq!(norm_ratio(&leg, 2).unwrap(), q(1, 12) * q(1, 15));
    }

    #[test]
    fn verifiers_pass() {
        let p = jp(q(2, 3), q(-1, 4));
        let f = JacobiFamily::new(p.clone(), 8).unwrap();
        assert!(verify_eigen(&f).iter().all(Check::passed));
        assert!(verify_monomial_action(&p, 15).iter().all(Check::passed));
        assert!(verify_orthogonality(&f, 8).passed());
        assert!(verify_closed_form(&f, 8).passed());
    }

    #[test]
    fn closed_form_agrees_with_recurrence() {
        let p = jp(q(2, 3), q(-1, 4));
        let f = JacobiFamily::new(p.clone(), 6).unwrap();
        for n in 0..=6 {
            assert_eq!(&jacobi_poly_closed_form(&p, n).unwrap(), f.poly(n));
        }
    }
}
