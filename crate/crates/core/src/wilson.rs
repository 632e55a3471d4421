//! Wilson polynomials by recurrence, the `Q_n(Lambda)` produced by
//! tridiagonalization, and the identification between the two.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Rational};
use crate::jacobi::{self, JacobiParams};
use crate::report::Check;
use crate::tridiag::{NuParams, TridiagParams};

pub const ANCHOR_IDENTIFY: &str = "Q_n(Lambda) = W_n(gamma - Lambda; a1, a2, a3, a4)";
pub const ANCHOR_POSITIVITY: &str = "Q_n orthogonal: U_n > 0 when both tau factors share a sign";
pub const ANCHOR_SYMMETRY: &str = "W_n is symmetric in a1, a2, a3, a4";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WilsonParams {
    pub a: [Rational; 4],
}

impl WilsonParams {
    pub fn new(a1: Rational, a2: Rational, a3: Rational, a4: Rational) -> Self {
        WilsonParams { a: [a1, a2, a3, a4] }
    }

    /// `g = a1 + a2 + a3 + a4`.
    pub fn g(&self) -> Rational {
        self.a.iter().sum()
    }

    /// `A_n`; at `n = 0` the factor `g - 1` cancels.
    pub fn a_coeff(&self, n: usize) -> Result<Rational> {
        let [a1, a2, a3, a4] = &self.a;
        let g = self.g();
        let nn = Rational::from(n);
        let num = (&nn + a1 + a2) * (&nn + a1 + a3) * (&nn + a1 + a4);
        let two_n_g = Rational::from(2 * n) + &g;
        if n == 0 {
            if g.is_zero() {
                return Err(Error::Pole("g at n = 0".into()));
            }
            return Ok(num / g);
        }
        let den = (&two_n_g - Rational::one()) * &two_n_g;
        if den.is_zero() {
            return Err(Error::Pole(format!("(2n + g - 1)(2n + g) at n = {n}")));
        }
        Ok(num * (&nn + &g - Rational::one()) / den)
    }

    /// `C_n`, with `C_0 = 0`.
    pub fn c_coeff(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Ok(Rational::zero());
        }
        let [_, a2, a3, a4] = &self.a;
        let nn = Rational::from(n);
        let one = Rational::one();
        let two_n_g = Rational::from(2 * n) + self.g();
        let den = (&two_n_g - Rational::from(2)) * (&two_n_g - &one);
        if den.is_zero() {
            return Err(Error::Pole(format!("(2n + g - 2)(2n + g - 1) at n = {n}")));
        }
        Ok(&nn * (&nn + a2 + a3 - &one) * (&nn + a2 + a4 - &one) * (&nn + a3 + a4 - &one) / den)
    }

    /// Monic `W_0 .. W_nmax` from
    /// `W_(n+1) + (A_n + C_n - a1^2) W_n + A_(n-1) C_n W_(n-1) = x W_n`.
    pub fn polys(&self, nmax: usize) -> Result<Vec<LaurentPoly>> {
        let a1sq = &self.a[0] * &self.a[0];
        let mut out = vec![LaurentPoly::one()];
        let mut prev = LaurentPoly::zero();
        let mut a_prev = Rational::zero();
        for n in 0..nmax {
            let an = self.a_coeff(n)?;
            let cn = self.c_coeff(n)?;
            let diag = &an + &cn - &a1sq;
            let cur = &out[n];
            let next = cur.shift(1) - cur.scale(&diag) - prev.scale(&(&a_prev * &cn));
            prev = cur.clone();
            out.push(next);
            a_prev = an;
        }
        Ok(out)
    }
}

/// `Xi_0 = 1`, `Xi_(n+1) = Xi_n / (u_(n+1) (tau1 lambda_(n+1) + tau2 lambda_n + tau3))`.
pub fn xi_sequence(jp: &JacobiParams, tp: &TridiagParams, nmax: usize) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::one()];
    for n in 0..nmax {
        let f = jacobi::recurrence_u(jp, n + 1)? * tp.mix(jp, n as i64 + 1, n as i64);
        if f.is_zero() {
            return Err(Error::Pole(format!("u_{} (tau1 lambda_{} + tau2 lambda_{n} + tau3) = 0", n + 1, n + 1)));
        }
        let next = &out[n] / f;
        out.push(next);
    }
    Ok(out)
}

/// Recurrence data and the monic `Q_n` as polynomials in `Lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QFamily {
    pub b: Vec<Rational>,
    pub u: Vec<Rational>,
    #[serde(skip)]
    pub polys: Vec<LaurentPoly>,
}

impl QFamily {
    /// `B_n = lambda_n b_n + tau3 b_n + tau0`,
    /// `U_n = u_n (tau1 lambda_(n-1) + tau2 lambda_n + tau3)(tau1 lambda_n + tau2 lambda_(n-1) + tau3)`.
    pub fn new(jp: &JacobiParams, tp: &TridiagParams, nmax: usize) -> Result<Self> {
        let mut b = Vec::with_capacity(nmax + 1);
        let mut u = Vec::with_capacity(nmax + 1);
        for n in 0..=nmax {
            let ni = n as i64;
            let bn = jacobi::recurrence_b(jp, n)?;
            b.push(jacobi::lambda(jp, ni) * &bn + &tp.tau3 * &bn + &tp.tau0);
            u.push(jacobi::recurrence_u(jp, n)? * tp.mix(jp, ni - 1, ni) * tp.mix(jp, ni, ni - 1));
        }
        let mut polys = vec![LaurentPoly::one()];
        let mut prev = LaurentPoly::zero();
        for n in 0..nmax {
            let cur = &polys[n];
            let next = cur.shift(1) - cur.scale(&b[n]) - prev.scale(&u[n]);
            prev = cur.clone();
            polys.push(next);
        }
        Ok(QFamily { b, u, polys })
    }

    /// `Q_n(value)`.
    pub fn eval(&self, n: usize, value: &Rational) -> Rational {
        self.polys[n].eval(value).expect("Q_n is a polynomial")
    }
}

/// Wilson parameters and shift for given `(alpha, beta, nu1, nu2, tau0)`.
///
/// The four linear relations `alpha = a1 + a2 - 1`, `beta = a3 + a4 - 1`,
/// `nu1 = 1 - a1 - a3`, `nu2 = 1 - a2 - a3` have a unique solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dictionary {
    pub wilson: WilsonParams,
    pub gamma: Rational,
}

impl Dictionary {
    pub fn forward(jp: &JacobiParams, np: &NuParams, tau0: &Rational) -> Self {
        let one = Rational::one();
        let two = Rational::from(2);
        let a3 = (&one - &np.nu1 - &np.nu2 - &jp.alpha) / &two;
        let a1 = &one - &np.nu1 - &a3;
        let a2 = &one - &np.nu2 - &a3;
        let a4 = &jp.beta + &one - &a3;
        let gamma = (&a1 + &a2 - &a1 * &a1 - &a2 * &a2 + tau0 * &two) / &two;
        Dictionary { wilson: WilsonParams::new(a1, a2, a3, a4), gamma }
    }

    /// `(alpha, beta, nu1, nu2)` from the Wilson side, as displayed.
    pub fn inverse(w: &WilsonParams) -> (JacobiParams, NuParams) {
        let one = Rational::one();
        let [a1, a2, a3, a4] = &w.a;
        (
            JacobiParams::new(a1 + a2 - &one, a3 + a4 - &one),
            NuParams::new(&one - a1 - a3, &one - a2 - a3),
        )
    }
}

/// Compares `Q_n(Lambda)` with `(-1)^n W_n(gamma - Lambda)`.
///
/// `W_n(gamma - Lambda)` has leading coefficient `(-1)^n` in `Lambda` while
/// `Q_n` is monic, so the sign is the only possible normalization.
pub fn identify(jp: &JacobiParams, np: &NuParams, tau0: &Rational, nmax: usize) -> Vec<Check> {
    let tp = np.to_tridiag(jp, tau0);
    let dict = Dictionary::forward(jp, np, tau0);
    let data = QFamily::new(jp, &tp, nmax).and_then(|qf| Ok((qf, dict.wilson.polys(nmax)?)));
    let (qf, w) = match data {
        Ok(v) => v,
        Err(e) => return vec![Check::error("wilson.identify", ANCHOR_IDENTIFY, e)],
    };
    let mut checks = Vec::with_capacity(nmax + 2);
    let (back_j, back_n) = Dictionary::inverse(&dict.wilson);
    checks.push(Check::new(
        "wilson.dictionary_round_trip",
        ANCHOR_IDENTIFY,
        &back_j == jp && &back_n == np,
        format!("a = {:?}, gamma = {}", dict.wilson.a, dict.gamma),
    ));
    for (n, wn) in w.iter().enumerate().take(nmax + 1) {
        let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
        let substituted = wn.compose_affine(&-Rational::one(), &dict.gamma).expect("W_n is a polynomial").scale(&sign);
        let diff = &qf.polys[n] - &substituted;
        checks.push(Check::new(
            format!("wilson.identify[n={n}]"),
            ANCHOR_IDENTIFY,
            diff.is_zero(),
            format!("difference {diff}"),
        ));
    }
    checks
}

/// `identify` from `(tau2, tau3)` directly: every rational `(nu1, nu2)` branch is
/// checked and named in the report.
pub fn identify_tridiag(jp: &JacobiParams, tp: &TridiagParams, nmax: usize) -> Vec<Check> {
    let branches = NuParams::from_tridiag(jp, tp);
    if branches.is_empty() {
        return vec![Check::skip("wilson.branch", ANCHOR_IDENTIFY, "no rational (nu1, nu2) for these tau2, tau3")];
    }
    let listed: Vec<String> = branches.iter().map(|np| format!("(nu1, nu2) = ({}, {})", np.nu1, np.nu2)).collect();
    let mut checks = vec![Check::new("wilson.branch", ANCHOR_IDENTIFY, true, listed.join("; "))];
    for (b, np) in branches.iter().enumerate() {
        checks.extend(identify(jp, np, &tp.tau0, nmax).into_iter().map(|mut c| {
            c.name = c.name.replacen("wilson.", &format!("wilson.branch{b}."), 1);
            c
        }));
    }
    checks
}

/// `U_n > 0` wherever `u_n > 0` and the two tau factors share a sign.
pub fn verify_positivity(jp: &JacobiParams, tp: &TridiagParams, nmax: usize) -> Vec<Check> {
    (1..=nmax)
        .map(|n| {
            let name = format!("wilson.positivity[n={n}]");
            let ni = n as i64;
            let (f1, f2) = (tp.mix(jp, ni - 1, ni), tp.mix(jp, ni, ni - 1));
            let un = match jacobi::recurrence_u(jp, n) {
                Ok(v) => v,
                Err(e) => return Check::error(name, ANCHOR_POSITIVITY, e),
            };
            if !(un.is_positive() && f1.signum() * f2.signum() > 0) {
                return Check::skip(name, ANCHOR_POSITIVITY, "sign condition does not hold");
            }
            let big_u = un * f1 * f2;
            Check::new(name, ANCHOR_POSITIVITY, big_u.is_positive(), format!("U_{n} = {big_u}"))
        })
        .collect()
}

/// `W_n` recomputed under every permutation of the parameters.
pub fn verify_symmetry(w: &WilsonParams, nmax: usize) -> Check {
    let base = match w.polys(nmax) {
        Ok(p) => p,
        Err(e) => return Check::error("wilson.symmetry", ANCHOR_SYMMETRY, e),
    };
    let mut perms = Vec::with_capacity(24);
    for i in 0..4 {
        for j in (0..4).filter(|&j| j != i) {
            for k in (0..4).filter(|&k| k != i && k != j) {
                perms.push([i, j, k, 6 - i - j - k]);
            }
        }
    }
    for p in &perms {
        let permuted = WilsonParams { a: p.map(|i| w.a[i].clone()) };
        match permuted.polys(nmax) {
            Ok(polys) if polys == base => {}
            Ok(_) => return Check::new("wilson.symmetry", ANCHOR_SYMMETRY, false, format!("permutation {p:?} differs")),
            Err(e) => return Check::error("wilson.symmetry", ANCHOR_SYMMETRY, e),
        }
    }
    Check::new("wilson.symmetry", ANCHOR_SYMMETRY, true, format!("{} permutations, n <= {nmax}", perms.len()))
}
