//! Eigenfunctions of `M` of the form `x^q (1-x)^(-beta) 2F1(a1, b1; c1; x)` and
//! their expansion coefficients in the Jacobi basis.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{build_m, NuParams, TridiagParams};
use crate::error::{Error, Result};
use crate::exact::{GenSeries, LaurentPoly, Rational};
use crate::jacobi::{self, JacobiFamily, JacobiParams};
use crate::report::Check;
use crate::wilson::{xi_sequence, QFamily};

pub const ANCHOR_EIGEN: &str = "M psi = Lambda psi, psi = x^q (1-x)^(-beta) 2F1(a1, b1; c1; x)";
pub const ANCHOR_RATIO: &str = "psi = G_0 sum_k Xi_k Q_k(Lambda) P_k";
pub const ANCHOR_BOUNDARY: &str = "three-term relation for G_k with the boundary term beta F(1) P_n(1)";

/// Working precision for the non-terminating sums, in bits after the binary point.
pub const DYADIC_BITS: u32 = 256;
pub const DEFAULT_TERM_BUDGET: usize = 2_000_000;

/// Parameters of one eigenfunction: the exponent `q`, the eigenvalue and the 2F1 data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Koornwinder {
    pub jacobi: JacobiParams,
    pub nu: NuParams,
    pub tau0: Rational,
    pub q: Rational,
    pub lambda: Rational,
    pub a1: Rational,
    pub b1: Rational,
    pub c1: Rational,
}

impl Koornwinder {
    pub fn new(jp: &JacobiParams, np: &NuParams, tau0: &Rational, q: &Rational) -> Self {
        let one = Rational::one();
        let two = Rational::from(2);
        let (a, b) = (&jp.alpha, &jp.beta);
        let (n1, n2) = (&np.nu1, &np.nu2);
        let lambda = tau0 + (&one - a) / &two + (a + q) * (q + &one) + (n1 - n2) * (a + q * &two + &one) / &two;
        Koornwinder {
            jacobi: jp.clone(),
            nu: np.clone(),
            tau0: tau0.clone(),
            q: q.clone(),
            lambda,
            a1: a + &one + n1 + q,
            b1: &one - b - n2 + q,
            c1: &two + q * &two + a + n1 - n2,
        }
    }

    pub fn tridiag(&self) -> TridiagParams {
        self.nu.to_tridiag(&self.jacobi, &self.tau0)
    }

    /// `c1 - a1 - b1 = beta`, so `(1-x)^(-beta) F` has the `1 - x` exponents of `M`.
    pub fn exponent_relation(&self) -> bool {
        &self.c1 - &self.a1 - &self.b1 == self.jacobi.beta
    }

    /// `m` with `a1 = -m` or `b1 = -m`, when the Gauss series terminates.
    pub fn terminating_degree(&self) -> Option<usize> {
        [&self.a1, &self.b1].into_iter().filter_map(|p| (-p).to_usize()).min()
    }

    /// `psi` through `order` terms.
    pub fn eigenfunction(&self, order: usize) -> Result<GenSeries> {
        let f = GenSeries::hypergeometric_2f1(&self.a1, &self.b1, &self.c1, order)?;
        Ok(GenSeries::binomial(&self.jacobi.beta, order)?.mul(&f).shift(&self.q))
    }

    fn next_term(&self, f: &Rational, m: usize) -> Result<Rational> {
        let mm = Rational::from(m);
        let den = (&self.c1 + &mm) * Rational::from(m + 1);
        if den.is_zero() {
            return Err(Error::Pole(format!("c1 + {m} = 0")));
        }
        Ok(f * (&self.a1 + &mm) * (&self.b1 + &mm) / den)
    }

    /// `F(1)` when the series terminates.
    pub fn value_at_one(&self) -> Option<Result<Rational>> {
        let deg = self.terminating_degree()?;
        Some((|| {
            let mut f = Rational::one();
            let mut acc = Rational::zero();
            for m in 0..=deg {
                acc += &f;
                f = self.next_term(&f, m)?;
            }
            Ok(acc)
        })())
    }
}

/// `g_k = int psi P_k w / (h_k / h_0)` for `k = 0 .. kmax`, with `w = x^alpha (1-x)^beta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coefficients {
    pub g: Vec<Rational>,
    pub terms: usize,
    pub exact: bool,
    /// Estimated absolute tail of each sum; zero when exact.
    pub tail: Vec<Rational>,
}

/// `int_0^1 x^(alpha + q + m) P_k = sum_j p_kj / (alpha + q + m + j + 1)`.
fn monomial_integrals(family: &JacobiFamily, base: &Rational, m: usize, kmax: usize) -> Result<Vec<Rational>> {
    (0..=kmax)
        .map(|k| {
            let mut acc = Rational::zero();
            for (j, c) in family.poly(k).terms() {
                let den = base + Rational::from(m as i64 + j + 1);
                if den.is_zero() {
                    return Err(Error::Pole(format!("alpha + q + {} + 1 = 0", m as i64 + j)));
                }
                acc += c / den;
            }
            Ok(acc)
        })
        .collect()
}

/// Raabe-type estimate of `sum_(j > m) |t_j|` from two consecutive fixed-point terms.
/// `None` while the terms do not yet look like `C m^(-p)` with `p > 21/20`.
fn raabe_tail(prev: &BigInt, cur: &BigInt, m: usize) -> Option<BigInt> {
    if cur.is_zero() {
        return Some(BigInt::zero());
    }
    if prev.is_zero() || prev.sign() != cur.sign() {
        return None;
    }
    let (a, b) = (prev.abs(), cur.abs());
    let mm = BigInt::from(m);
    // p |t_(m-1)| with p = m (1 - t_m / t_(m-1))
    let pa = &mm * (&a - &b);
    if &pa * 20 <= &a * 21 {
        return None;
    }
    // factor 2 against the slow drift of the estimated exponent
    Some(b * 2 * mm * &a / (pa - a))
}

/// Integrals of `psi P_k w` divided by `h_k / h_0`, summed term by term over the Gauss series.
///
/// A terminating series is summed exactly. Otherwise the sum runs in fixed point
/// with `DYADIC_BITS` fractional bits and stops once for every `k` the running
/// term and its estimated tail are below `tol / 10` times
/// `max(|S_k|, |S_0 Xi_k h_k / h_0|)`. The second scale is what the ratio
/// `g_k / (g_0 Xi_k)` divides by, and keeps an exactly vanishing `g_k` reachable.
pub fn coefficients(k: &Koornwinder, kmax: usize, tol: &Rational, budget: usize) -> Result<Coefficients> {
    let family = JacobiFamily::new(k.jacobi.clone(), kmax)?;
    let sums = match k.terminating_degree() {
        Some(deg) => return exact_coefficients(k, &family, deg),
        None => fixed_point_sums(k, &family, tol, budget)?,
    };
    let (sums, terms, tail) = sums;
    let g = sums.iter().enumerate().map(|(i, s)| s / family.norm_ratio(i)).collect();
    Ok(Coefficients { g, terms, exact: false, tail })
}

fn exact_coefficients(k: &Koornwinder, family: &JacobiFamily, deg: usize) -> Result<Coefficients> {
    let kmax = family.nmax();
    let base = &k.jacobi.alpha + &k.q;
    let mut sums = vec![Rational::zero(); kmax + 1];
    let mut f = Rational::one();
    for m in 0..=deg {
        for (s, i) in sums.iter_mut().zip(monomial_integrals(family, &base, m, kmax)?) {
            *s += &f * i;
        }
        f = k.next_term(&f, m)?;
    }
    let g = sums.iter().enumerate().map(|(i, s)| s / family.norm_ratio(i)).collect();
    Ok(Coefficients { g, terms: deg + 1, exact: true, tail: vec![Rational::zero(); kmax + 1] })
}

fn to_fixed(r: &Rational) -> BigInt {
    (r.numer() << DYADIC_BITS) / r.denom()
}

fn from_fixed(x: &BigInt) -> Rational {
    Rational::from_bigints(x.clone(), BigInt::one() << DYADIC_BITS).expect("nonzero denominator")
}

/// Partial sums `S_k`, the number of terms used, and the tail estimates.
fn fixed_point_sums(
    k: &Koornwinder,
    family: &JacobiFamily,
    tol: &Rational,
    budget: usize,
) -> Result<(Vec<Rational>, usize, Vec<Rational>)> {
    let kmax = family.nmax();
    let natural: Vec<Rational> = match xi_sequence(&k.jacobi, &k.tridiag(), kmax) {
        Ok(xi) => xi.iter().enumerate().map(|(i, x)| (x * family.norm_ratio(i)).abs()).collect(),
        Err(_) => vec![Rational::zero(); kmax + 1],
    };
    let coeffs: Vec<Vec<(usize, BigInt)>> =
        family.polys().iter().map(|p| p.terms().map(|(j, c)| (j as usize, to_fixed(c))).collect()).collect();
    // x <= (tol / 10) y  <=>  10 den(tol) x <= num(tol) y
    let (tn, td) = (tol.numer().clone(), tol.denom() * 10);
    let within = |x: &BigInt, y: &BigInt| x * &td <= &tn * y;
    // alpha + q + m + j + 1 = (num + (m + j + 1) den) / den
    let base = &k.jacobi.alpha + &k.q;
    let (bn, bd) = (base.numer().clone(), base.denom().clone());
    let scaled_den: BigInt = &bd << DYADIC_BITS;
    let mut f = BigInt::one() << DYADIC_BITS;
    let mut sums = vec![BigInt::zero(); kmax + 1];
    let mut prev: Option<Vec<BigInt>> = None;
    for m in 0..budget {
        let mut recips = Vec::with_capacity(kmax + 1);
        for j in 0..=kmax {
            let den = &bn + BigInt::from(m + j + 1) * &bd;
            if den.is_zero() {
                return Err(Error::Pole(format!("alpha + q + {} + 1 = 0", m + j)));
            }
            recips.push(&scaled_den / den);
        }
        let terms: Vec<BigInt> = coeffs
            .iter()
            .map(|p| {
                let integral: BigInt = p.iter().map(|(j, c)| c * &recips[*j]).sum::<BigInt>() >> DYADIC_BITS;
                (&f * integral) >> DYADIC_BITS
            })
            .collect();
        for (s, t) in sums.iter_mut().zip(&terms) {
            *s += t;
        }
        if m >= 8 {
            let est = prev.as_ref().and_then(|p| {
                p.iter().zip(&terms).map(|(a, b)| raabe_tail(a, b, m)).collect::<Option<Vec<_>>>()
            });
            if let Some(est) = est {
                let s0 = sums[0].abs();
                let done = (0..=kmax).all(|i| {
                    let natural = &s0 * natural[i].numer() / natural[i].denom();
                    let scale = sums[i].abs().max(natural);
                    within(&est[i], &scale) && within(&terms[i].abs(), &scale)
                });
                if done {
                    return Ok((sums.iter().map(from_fixed).collect(), m + 1, est.iter().map(from_fixed).collect()));
                }
            }
        }
        prev = Some(terms);
        let ratio = k.next_term(&Rational::one(), m)?;
        f = (f * ratio.numer()) / ratio.denom();
    }
    Err(Error::Convergence { tolerance: tol.to_string(), budget })
}

/// `M psi - Lambda psi` through `order` terms, and `c1 - a1 - b1 = beta`.
pub fn verify_eigenfunction(k: &Koornwinder, order: usize) -> Vec<Check> {
    let m = build_m(&k.jacobi, &k.tridiag());
    let residual = k
        .eigenfunction(order)
        .and_then(|psi| m.apply_series(&psi).sub(&psi.scale(&k.lambda)));
    let eigen = match residual {
        Ok(r) => Check::new(
            "koornwinder.eigenfunction",
            ANCHOR_EIGEN,
            r.is_zero(),
            format!("q = {}, Lambda = {}, {} coefficients", k.q, k.lambda, r.order()),
        ),
        Err(e) => Check::error("koornwinder.eigenfunction", ANCHOR_EIGEN, e),
    };
    vec![
        eigen,
        Check::new(
            "koornwinder.exponent_relation",
            ANCHOR_EIGEN,
            k.exponent_relation(),
            format!("a1 = {}, b1 = {}, c1 = {}", k.a1, k.b1, k.c1),
        ),
    ]
}

/// `g_k / (g_0 Xi_k)` against `Q_k(Lambda)` for `k = 0 .. kmax`.
///
/// Exact equality when the series terminates, otherwise
/// `|ratio - Q_k| <= tol max(1, |Q_k|)`.
pub fn verify_coefficient_ratio(k: &Koornwinder, kmax: usize, tol: &Rational, budget: usize) -> Vec<Check> {
    let tp = k.tridiag();
    let data = (|| -> Result<_> {
        // Xi and Q first: where they hit a pole the claim is undefined and the series is not summed
        let (xi, qf) = (xi_sequence(&k.jacobi, &tp, kmax)?, QFamily::new(&k.jacobi, &tp, kmax)?);
        Ok((coefficients(k, kmax, tol, budget)?, xi, qf))
    })();
    let (c, xi, qf) = match data {
        Ok(v) => v,
        Err(e) => return vec![Check::error("koornwinder.coefficient_ratio", ANCHOR_RATIO, e)],
    };
    if c.g[0].is_zero() {
        return vec![Check::skip("koornwinder.coefficient_ratio", ANCHOR_RATIO, "G_0 vanishes")];
    }
    (0..=kmax)
        .map(|i| {
            let ratio = &c.g[i] / (&c.g[0] * &xi[i]);
            let want = qf.eval(i, &k.lambda);
            let diff = (&ratio - &want).abs();
            let ok = if c.exact { diff.is_zero() } else { diff <= tol * want.abs().max(Rational::one()) };
            let detail = format!(
                "ratio {} vs Q_{i}(Lambda) {} ({} terms{})",
                ratio.to_decimal_string(12),
                want.to_decimal_string(12),
                c.terms,
                if c.exact { ", exact" } else { "" }
            );
            Check::new(format!("koornwinder.coefficient_ratio[k={i}]"), ANCHOR_RATIO, ok, detail)
        })
        .collect()
}

/// For a terminating series, the exact relation
/// `(t1 l_(n-1) + t2 l_n + t3) g_(n-1) + B_n g_n + u_(n+1)(t1 l_(n+1) + t2 l_n + t3) g_(n+1) - Lambda g_n
///  = -beta F(1) P_n(1) / (h_n / h_0)`,
/// obtained by integrating `<M psi, P_n>` by parts; only the `x = 1` end contributes.
pub fn verify_boundary_relation(k: &Koornwinder, nmax: usize) -> Vec<Check> {
    let Some(f1) = k.value_at_one() else {
        return vec![Check::skip("koornwinder.boundary_relation", ANCHOR_BOUNDARY, "series does not terminate")];
    };
    let jp = &k.jacobi;
    let tp = k.tridiag();
    let data = (|| -> Result<_> {
        Ok((f1?, coefficients(k, nmax + 1, &Rational::zero(), 0)?, QFamily::new(jp, &tp, nmax)?, JacobiFamily::new(jp.clone(), nmax + 1)?))
    })();
    let (f1, c, qf, family) = match data {
        Ok(v) => v,
        Err(e) => return vec![Check::error("koornwinder.boundary_relation", ANCHOR_BOUNDARY, e)],
    };
    let g = &c.g;
    (0..=nmax)
        .map(|n| {
            let ni = n as i64;
            let mut lhs = &qf.b[n] * &g[n] - &k.lambda * &g[n]
                + family.u(n + 1) * tp.mix(jp, ni + 1, ni) * &g[n + 1];
            if n > 0 {
                lhs += tp.mix(jp, ni - 1, ni) * &g[n - 1];
            }
            let at_one = family.poly(n).eval(&Rational::one()).expect("polynomial");
            let rhs = -(&jp.beta * &f1 * at_one / family.norm_ratio(n));
            Check::new(
                format!("koornwinder.boundary_relation[n={n}]"),
                ANCHOR_BOUNDARY,
                lhs == rhs,
                format!("lhs {lhs}, rhs {rhs}"),
            )
        })
        .collect()
}

/// On `nu2 = 1 + q + m` the factor `F(1)` vanishes: `c1 - a1 = -m` and Euler's
/// transformation gives `F = (1-x)^beta E` with `E = 2F1(-m, c1 - b1; c1; x)`.
/// Returns `nu2` and `E`.
pub fn vanishing_locus(jp: &JacobiParams, nu1: &Rational, q: &Rational, m: usize) -> Result<(Rational, LaurentPoly)> {
    let nu2 = Rational::one() + q + Rational::from(m);
    let k = Koornwinder::new(jp, &NuParams::new(nu1.clone(), nu2.clone()), &Rational::zero(), q);
    let e = GenSeries::hypergeometric_2f1(&-Rational::from(m), &(&k.c1 - &k.b1), &k.c1, m + 1)?;
    Ok((nu2, LaurentPoly::from_coeffs(e.coeffs().to_vec())))
}

/// On the vanishing locus the expansion is exactly `G_0 sum_k Xi_k Q_k(Lambda) P_k`.
/// The coefficients are ratios of Jacobi moments with parameters `(alpha + q, beta)`.
pub fn verify_vanishing_locus(
    jp: &JacobiParams,
    nu1: &Rational,
    tau0: &Rational,
    q: &Rational,
    m: usize,
    kmax: usize,
) -> Vec<Check> {
    let name = format!("koornwinder.vanishing_locus[m={m}]");
    let data = (|| -> Result<_> {
        let (nu2, e) = vanishing_locus(jp, nu1, q, m)?;
        let k = Koornwinder::new(jp, &NuParams::new(nu1.clone(), nu2), tau0, q);
        let tp = k.tridiag();
        let shifted = JacobiParams::new(&jp.alpha + q, jp.beta.clone());
        let family = JacobiFamily::new(jp.clone(), kmax)?;
        let g = (0..=kmax)
            .map(|i| Ok(jacobi::weighted_inner(&shifted, &e, family.poly(i))? / family.norm_ratio(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok((k, g, xi_sequence(jp, &tp, kmax)?, QFamily::new(jp, &tp, kmax)?))
    })();
    let (k, g, xi, qf) = match data {
        Ok(v) => v,
        Err(e) => return vec![Check::error(name, ANCHOR_RATIO, e)],
    };
    if g[0].is_zero() {
        return vec![Check::skip(name, ANCHOR_RATIO, "G_0 vanishes")];
    }
    let bad: Vec<usize> = (0..=kmax).filter(|&i| &g[i] / (&g[0] * &xi[i]) != qf.eval(i, &k.lambda)).collect();
    vec![Check::new(name, ANCHOR_RATIO, bad.is_empty(), format!("nu2 = {}, mismatched k: {bad:?}", k.nu.nu2))]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn sample() -> Koornwinder {
        let jp = JacobiParams::new(q(1, 2), Rational::from(2));
        Koornwinder::new(&jp, &NuParams::new(q(1, 3), q(3, 4)), &q(1, 5), &q(3, 2))
    }

    #[test]
    fn eigenfunction_residual_vanishes() {
        let k = sample();
        assert!(verify_eigenfunction(&k, 48).iter().all(Check::passed));
        assert!(k.terminating_degree().is_none());
    }

    #[test]
    fn lambda_matches_leading_exponent() {
        // M x^q = (tau1 e_q + tau2 e_(q+1) + tau0) x^q + ..., read at the lowest order
        let k = sample();
        let tp = k.tridiag();
        let e = |n: Rational| &n * (&n + &k.jacobi.alpha);
        let lead = tp.tau1() * e(k.q.clone()) + &tp.tau2 * e(&k.q + Rational::one()) + &tp.tau0;
        assert_eq!(lead, k.lambda);
    }

    #[test]
    fn raabe_tail_on_a_known_series() {
        // t_m = 1/(m(m+1)): tail after m is exactly 1/(m+1)
        let t = |m: i64| to_fixed(&Rational::new(1, m * (m + 1)));
        let est = from_fixed(&raabe_tail(&t(199), &t(200), 200).unwrap());
        let exact = Rational::new(1, 201);
        assert!(est >= exact && est <= exact * Rational::from(3));
        assert!(raabe_tail(&BigInt::one(), &-BigInt::one(), 10).is_none());
    }

    #[test]
    fn numeric_coefficients_against_terminating_sum() {
        // nu2 chosen so b1 = -3: the exact path and the dyadic path see the same finite sum
        let jp = JacobiParams::new(q(1, 2), q(3, 2));
        let qq = q(1, 2);
        let nu2 = Rational::one() - &jp.beta + &qq + Rational::from(3);
        let k = Koornwinder::new(&jp, &NuParams::new(q(1, 3), nu2), &q(1, 5), &qq);
        assert_eq!(k.terminating_degree(), Some(3));
        let c = coefficients(&k, 3, &Rational::zero(), 0).unwrap();
        assert!(c.exact && c.terms == 4);
        // oracle: integrate x^(alpha+q) F(x) P_k(x) from the expanded polynomial
        let f = LaurentPoly::from_coeffs(GenSeries::hypergeometric_2f1(&k.a1, &k.b1, &k.c1, 4).unwrap().coeffs().to_vec());
        let family = JacobiFamily::new(jp.clone(), 3).unwrap();
        for i in 0..=3 {
            let prod = &f * family.poly(i);
            let integral: Rational =
                prod.terms().map(|(e, c)| c / (&jp.alpha + &qq + Rational::from(e + 1))).sum();
            assert_eq!(c.g[i], integral / family.norm_ratio(i));
        }
    }

    #[test]
    fn boundary_relation_is_exact() {
        let jp = JacobiParams::new(q(1, 2), q(3, 2));
        let qq = q(1, 2);
        let nu2 = Rational::one() - &jp.beta + &qq + Rational::from(2);
        let k = Koornwinder::new(&jp, &NuParams::new(q(1, 3), nu2), &q(1, 5), &qq);
        let checks = verify_boundary_relation(&k, 4);
        assert!(checks.iter().all(Check::passed), "{checks:#?}");
        assert!(!k.value_at_one().unwrap().unwrap().is_zero());
    }

    #[test]
    fn euler_transformation_on_the_locus() {
        let jp = JacobiParams::new(q(1, 2), q(3, 2));
        let (nu1, qq) = (q(1, 3), q(1, 4));
        for m in 0..3 {
            let (nu2, e) = vanishing_locus(&jp, &nu1, &qq, m).unwrap();
            let k = Koornwinder::new(&jp, &NuParams::new(nu1.clone(), nu2), &Rational::zero(), &qq);
            let order = 20;
            let lhs = GenSeries::hypergeometric_2f1(&k.a1, &k.b1, &k.c1, order).unwrap();
            let rhs = GenSeries::binomial(&-&jp.beta, order).unwrap().mul(&GenSeries::from_laurent(&e, order).unwrap());
            assert!(lhs.sub(&rhs).unwrap().is_zero());
            assert!(verify_vanishing_locus(&jp, &nu1, &q(1, 5), &qq, m, 4).iter().all(Check::passed));
        }
    }

    #[test]
    fn ratio_claim_fails_off_the_locus() {
        let k = sample();
        let checks = verify_coefficient_ratio(&k, 2, &q(1, 1_000_000), DEFAULT_TERM_BUDGET);
        assert!(checks[0].passed());
        assert!(checks.iter().any(|c| !c.passed()));
    }
}
