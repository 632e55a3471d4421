//! The change of variable `x = 1/y` with the similarity `y^(nu2-1) (.) y^(1-nu2)`,
//! under which `L` and `M` trade roles, and the dual eigenfunctions of `M`.

use serde::Serialize;

use super::{build_m, NuParams};
use crate::diffop::DiffOp;
use crate::error::Result;
use crate::exact::{GenSeries, LaurentPoly, Rational};
use crate::jacobi::{build_l, JacobiFamily, JacobiParams};
use crate::report::Check;

pub const ANCHOR_L_TILDE: &str = "L~ = y^2(y-1) D^2 + y(a1 y + b1) D + c1 y + d1";
pub const ANCHOR_M_TILDE: &str = "M~ = y(y-1) D^2 + (a2 y + b2) D + d2";
pub const ANCHOR_M_TILDE_HYPER: &str = "M~ is a hypergeometric operator up to an affine map";
pub const ANCHOR_DUAL: &str = "M psi_n = l~_n psi_n, psi_n = x^(nu2-1) P_n^(a~,b~)(1/x)";

/// The displayed coefficients of the transformed pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TildeCoefficients {
    pub a1: Rational,
    pub b1: Rational,
    pub c1: Rational,
    pub d1: Rational,
    pub a2: Rational,
    pub b2: Rational,
    pub d2: Rational,
}

impl TildeCoefficients {
    pub fn new(jp: &JacobiParams, np: &NuParams, tau0: &Rational) -> Self {
        let one = Rational::one();
        let two = Rational::from(2);
        let (a, s) = (&jp.alpha, jp.sum());
        let (n1, n2) = (&np.nu1, &np.nu2);
        let n2m1 = n2 - &one;
        TildeCoefficients {
            a1: Rational::from(3) - a - n2 * &two,
            b1: &s + n2 * &two - &two,
            c1: &n2m1 * (a + &n2m1),
            d1: -(&n2m1 * (&s + n2)),
            a2: &two - n1 - n2 - a,
            b2: &s + n1 + n2 - &one,
            d2: tau0 + n1 * n2 + (a - &one) * (n1 + n2 - &one) / &two,
        }
    }

    /// The two operators exactly as displayed.
    pub fn operators(&self) -> (DiffOp, DiffOp) {
        let zero = Rational::zero();
        let one = Rational::one();
        let l = DiffOp::new(vec![
            LaurentPoly::from_coeffs([self.d1.clone(), self.c1.clone()]),
            LaurentPoly::from_coeffs([zero.clone(), self.b1.clone(), self.a1.clone()]),
            LaurentPoly::from_coeffs([zero.clone(), zero.clone(), -&one, one.clone()]),
        ]);
        let m = DiffOp::new(vec![
            LaurentPoly::constant(self.d2.clone()),
            LaurentPoly::from_coeffs([self.b2.clone(), self.a2.clone()]),
            LaurentPoly::from_coeffs([zero, -&one, one]),
        ]);
        (l, m)
    }
}

/// `y^(nu2-1) op(x = 1/y) y^(1-nu2)`.
pub fn transform(op: &DiffOp, np: &NuParams) -> DiffOp {
    op.invert_variable().conjugate_by_power(&(&np.nu2 - Rational::one()))
}

/// `(L~, M~)` computed by the change of variable and the similarity.
pub fn transformed_pair(jp: &JacobiParams, np: &NuParams, tau0: &Rational) -> (DiffOp, DiffOp) {
    let tp = np.to_tridiag(jp, tau0);
    (transform(&build_l(jp), np), transform(&build_m(jp, &tp), np))
}

/// `(alpha~, beta~) = (-alpha - beta - nu1 - nu2, beta)`.
pub fn dual_params(jp: &JacobiParams, np: &NuParams) -> JacobiParams {
    JacobiParams::new(-jp.sum() - &np.nu1 - &np.nu2, jp.beta.clone())
}

/// `l~_n = n(n - 1) + a2 n + d2`.
pub fn dual_eigenvalue(jp: &JacobiParams, np: &NuParams, tau0: &Rational, n: usize) -> Rational {
    let c = TildeCoefficients::new(jp, np, tau0);
    let nn = Rational::from(n);
    &nn * (&nn - Rational::one()) + &c.a2 * &nn + &c.d2
}

/// `psi_n`: a Laurent polynomial when `nu2` is an integer, a finite series otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualEigenfunction {
    Laurent(LaurentPoly),
    Series(GenSeries),
}

impl DualEigenfunction {
    /// `M psi - lambda psi` is zero.
    pub fn is_eigenfunction(&self, op: &DiffOp, lambda: &Rational) -> Result<bool> {
        match self {
            DualEigenfunction::Laurent(p) => Ok((op.apply(p) - p.scale(lambda)).is_zero()),
            DualEigenfunction::Series(s) => Ok(op.apply_series(s).sub(&s.scale(lambda))?.is_zero()),
        }
    }
}

/// `(psi_n, l~_n)` for `n = 0 .. nmax`.
pub fn dual_eigenfunctions(
    jp: &JacobiParams,
    np: &NuParams,
    tau0: &Rational,
    nmax: usize,
) -> Result<Vec<(DualEigenfunction, Rational)>> {
    let family = JacobiFamily::new(dual_params(jp, np), nmax)?;
    let power = &np.nu2 - Rational::one();
    let out = (0..=nmax)
        .map(|n| {
            let p = family.poly(n);
            let psi = match power.to_i64() {
                Some(k) => DualEigenfunction::Laurent(p.invert_variable().shift(k)),
                None => {
                    // x^(power - n) (c_n + c_(n-1) x + ... + c_0 x^n)
                    let coeffs = (0..=n).map(|j| p.coeff((n - j) as i64)).collect();
                    let offset = &power - Rational::from(n);
                    DualEigenfunction::Series(GenSeries::from_finite(offset, coeffs, n + 4)?)
                }
            };
            Ok((psi, dual_eigenvalue(jp, np, tau0, n)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(out)
}

/// Each transformed coefficient against its display, both full operators,
/// and the hypergeometric shape of `M~`.
pub fn verify_transform(jp: &JacobiParams, np: &NuParams, tau0: &Rational) -> Vec<Check> {
    let shown = TildeCoefficients::new(jp, np, tau0);
    let (lt, mt) = transformed_pair(jp, np, tau0);
    let found = [
        ("a1", lt.entry(1, 2), &shown.a1, ANCHOR_L_TILDE),
        ("b1", lt.entry(1, 1), &shown.b1, ANCHOR_L_TILDE),
        ("c1", lt.entry(0, 1), &shown.c1, ANCHOR_L_TILDE),
        ("d1", lt.entry(0, 0), &shown.d1, ANCHOR_L_TILDE),
        ("a2", mt.entry(1, 1), &shown.a2, ANCHOR_M_TILDE),
        ("b2", mt.entry(1, 0), &shown.b2, ANCHOR_M_TILDE),
        ("d2", mt.entry(0, 0), &shown.d2, ANCHOR_M_TILDE),
    ];
    let mut checks: Vec<Check> = found
        .into_iter()
        .map(|(name, got, want, anchor)| {
            Check::new(format!("transform.{name}"), anchor, &got == want, format!("computed {got}, displayed {want}"))
        })
        .collect();
    let (l_disp, m_disp) = shown.operators();
    checks.push(Check::new("transform.l_tilde", ANCHOR_L_TILDE, lt == l_disp, format!("computed {lt}")));
    checks.push(Check::new("transform.m_tilde", ANCHOR_M_TILDE, mt == m_disp, format!("computed {mt}")));
    let hyper = build_l(&dual_params(jp, np));
    let expected = crate::diffop::AffineMatch { scale: -Rational::one(), shift: shown.d2.clone() };
    let got = DiffOp::match_affine(&hyper, &mt);
    checks.push(Check::new(
        "transform.m_tilde_hypergeometric",
        ANCHOR_M_TILDE_HYPER,
        got.as_ref() == Some(&expected),
        format!("M~ = a L(alpha~, beta~) + b with {got:?}"),
    ));
    checks
}

pub fn verify_dual_eigenfunctions(jp: &JacobiParams, np: &NuParams, tau0: &Rational, nmax: usize) -> Vec<Check> {
    let m = build_m(jp, &np.to_tridiag(jp, tau0));
    let pairs = match dual_eigenfunctions(jp, np, tau0, nmax) {
        Ok(p) => p,
        Err(e) => return vec![Check::error("transform.dual_eigenfunction", ANCHOR_DUAL, e)],
    };
    pairs
        .iter()
        .enumerate()
        .map(|(n, (psi, lam))| {
            let name = format!("transform.dual_eigenfunction[n={n}]");
            match psi.is_eigenfunction(&m, lam) {
                Ok(ok) => Check::new(name, ANCHOR_DUAL, ok, format!("eigenvalue {lam}")),
                Err(e) => Check::error(name, ANCHOR_DUAL, e),
            }
        })
        .collect()
}
