//! Differential operators `sum_k p_k(x) d^k` with Laurent-polynomial coefficients.
//!
//! Operators are kept in normal form (coefficients to the left of powers of
//! `d`), so two operators are equal exactly when their coefficient lists are.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, falling, GenSeries, LaurentPoly, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffOp {
    coeffs: Vec<LaurentPoly>,
}

/// `target = scale * source + shift * Id`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineMatch {
    pub scale: Rational,
    pub shift: Rational,
}

impl DiffOp {
    /// Strips trailing zero coefficients.
    pub fn new(coeffs: Vec<LaurentPoly>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(LaurentPoly::is_zero) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    pub fn zero() -> Self {
        DiffOp { coeffs: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Self::multiplication(LaurentPoly::constant(c))
    }

    /// Multiplication by `p(x)`.
    pub fn multiplication(p: LaurentPoly) -> Self {
        Self::new(vec![p])
    }

    /// Multiplication by `x` (the operator `X`).
    pub fn x() -> Self {
        Self::multiplication(LaurentPoly::x())
    }

    /// Multiplication by `1/x`.
    pub fn x_inv() -> Self {
        Self::multiplication(LaurentPoly::x_pow(-1))
    }

    /// The derivation `d/dx`.
    pub fn d() -> Self {
        Self::new(vec![LaurentPoly::zero(), LaurentPoly::one()])
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    /// Coefficient of `d^k`; zero beyond the order.
    pub fn coeff(&self, k: usize) -> LaurentPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Scalar coefficient of `x^e d^k`.
    pub fn entry(&self, k: usize, e: i64) -> Rational {
        self.coeffs.get(k).map_or_else(Rational::zero, |p| p.coeff(e))
    }

    /// All nonzero `(k, e, c)` with `c x^e d^k` a term of the normal form.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, &Rational)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(k, p)| p.terms().map(move |(e, c)| (k, e, c)))
    }

    /// Highest power of `d`; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when the operator is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<Rational> {
        match self.coeffs.as_slice() {
            [] => Some(Rational::zero()),
            [p] if p.terms().all(|(e, _)| e == 0) => Some(p.coeff(0)),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// `self + c * Id`.
    pub fn add_scalar(&self, c: &Rational) -> Self {
        self + &DiffOp::scalar(c.clone())
    }

    /// Operator product `self ∘ other`, renormalized with the Leibniz rule.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        if self.is_zero() || other.is_zero() {
            return DiffOp::zero();
        }
        let order = self.coeffs.len() + other.coeffs.len() - 2;
        let mut out = vec![LaurentPoly::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in other.coeffs.iter().enumerate() {
                // d^i ∘ b = sum_j C(i, j) b^(j) d^(i - j)
                let mut deriv = b.clone();
                for j in 0..=i {
                    if deriv.is_zero() {
                        break;
                    }
                    let term = (a * &deriv).scale(&binomial(i, j));
                    let slot = &mut out[i - j + k];
                    *slot = &*slot + &term;
                    deriv = deriv.derivative();
                }
            }
        }
        DiffOp::new(out)
    }

    /// `n`-fold composition; `pow(0)` is the identity.
    pub fn pow(&self, n: u32) -> DiffOp {
        (0..n).fold(DiffOp::identity(), |acc, _| acc.compose(self))
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, other: &DiffOp) -> DiffOp {
        &self.compose(other) - &other.compose(self)
    }

    /// `{a, b} = ab + ba`.
    pub fn anticommutator(&self, other: &DiffOp) -> DiffOp {
        &self.compose(other) + &other.compose(self)
    }

    pub fn apply(&self, f: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        let mut deriv = f.clone();
        for p in &self.coeffs {
            if deriv.is_zero() {
                break;
            }
            out = out + p * &deriv;
            deriv = deriv.derivative();
        }
        out
    }

    /// Action on `x^q sum_j a_j x^j`, using `d x^s = s x^(s-1)` for rational `s`.
    ///
    /// A term `c x^e d^k` moves exponents by `e - k`. The result starts at the
    /// lowest such shift, so output coefficient `i` only draws on input
    /// coefficients of index `<= i` and all `K` output coefficients are exact.
    pub fn apply_series(&self, s: &GenSeries) -> GenSeries {
        let order = s.order();
        let Some(min_shift) = self.entries().map(|(k, e, _)| e - k as i64).min() else {
            return GenSeries::new(s.offset().clone(), vec![Rational::zero(); order])
                .expect("order is positive");
        };
        let mut out = vec![Rational::zero(); order];
        for (k, e, c) in self.entries() {
            let lag = (e - k as i64 - min_shift) as usize;
            for j in 0..order.saturating_sub(lag) {
                let a = &s.coeffs()[j];
                if a.is_zero() {
                    continue;
                }
                let exponent = s.offset() + Rational::from(j);
                out[j + lag] += c * falling(&exponent, k) * a;
            }
        }
        GenSeries::new(s.offset() + Rational::from(min_shift), out).expect("order is positive")
    }

    /// The same operator written in `y = 1/x`: `x -> 1/y`, `d_x -> -y^2 d_y`.
    pub fn invert_variable(&self) -> DiffOp {
        let dx = DiffOp::new(vec![LaurentPoly::zero(), LaurentPoly::monomial(-Rational::one(), 2)]);
        let mut out = DiffOp::zero();
        let mut dpow = DiffOp::identity();
        for p in &self.coeffs {
            out = &out + &DiffOp::multiplication(p.invert_variable()).compose(&dpow);
            dpow = dpow.compose(&dx);
        }
        out
    }

    /// `x^s ∘ op ∘ x^(-s)`; each `d` becomes `d - s/x`.
    pub fn conjugate_by_power(&self, s: &Rational) -> DiffOp {
        let shifted = DiffOp::new(vec![LaurentPoly::monomial(-s, -1), LaurentPoly::one()]);
        let mut out = DiffOp::zero();
        let mut dpow = DiffOp::identity();
        for p in &self.coeffs {
            out = &out + &DiffOp::multiplication(p.clone()).compose(&dpow);
            dpow = dpow.compose(&shifted);
        }
        out
    }

    /// The operator in `t = 1 - x`; needs polynomial coefficients.
    pub fn reflect_variable(&self) -> Result<DiffOp> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let r = p.reflect()?;
                Ok(if k % 2 == 1 { -r } else { r })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DiffOp::new(coeffs))
    }

    /// Finds `(a, b)` with `target = a * source + b`, if any.
    ///
    /// The scale is read off the first non-constant term of `source` and the
    /// shift from the constant terms; the candidate is then checked on the
    /// whole operator.
    pub fn match_affine(source: &DiffOp, target: &DiffOp) -> Option<AffineMatch> {
        let (k, e, c) = source.entries().find(|&(k, e, _)| (k, e) != (0, 0))?;
        let scale = target.entry(k, e) / c;
        if scale.is_zero() {
            return None;
        }
        let shift = target.entry(0, 0) - &scale * source.entry(0, 0);
        (&source.scale(&scale).add_scalar(&shift) == target).then_some(AffineMatch { scale, shift })
    }
}

impl Add<&DiffOp> for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DiffOp::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Add for DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: DiffOp) -> DiffOp {
        &self + &rhs
    }
}

impl Sub<&DiffOp> for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DiffOp::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Sub for DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: DiffOp) -> DiffOp {
        &self - &rhs
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp { coeffs: self.coeffs.iter().map(|p| -p).collect() }
    }
}

impl Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        -&self
    }
}

/// Composition.
impl Mul<&DiffOp> for &DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        self.compose(rhs)
    }
}

impl Mul for DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: DiffOp) -> DiffOp {
        self.compose(&rhs)
    }
}

impl fmt::Display for DiffOp {
    /// `(p0) + (p1)*D + (p2)*D^2`, skipping zero coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({p})")?,
                1 => write!(f, "({p})*D")?,
                _ => write!(f, "({p})*D^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp[{self}]")
    }
}

impl FromStr for DiffOp {
    type Err = Error;

    /// Parses the `Display` form. A bare `D` or `D^k` term has coefficient 1.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("{what} in operator {s:?}"));
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(bad("empty input"));
        }
        if trimmed == "0" {
            return Ok(DiffOp::zero());
        }
        let mut pieces = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, ch) in trimmed.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' if depth == 0 => {
                    pieces.push(&trimmed[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
            if depth < 0 {
                return Err(bad("unbalanced parentheses"));
            }
        }
        if depth != 0 {
            return Err(bad("unbalanced parentheses"));
        }
        pieces.push(&trimmed[start..]);

        let mut coeffs: Vec<LaurentPoly> = Vec::new();
        for piece in pieces {
            let piece = piece.trim();
            let (poly, rest) = if let Some(inner) = piece.strip_prefix('(') {
                let close = inner.rfind(')').ok_or_else(|| bad("missing ')'"))?;
                (inner[..close].parse::<LaurentPoly>()?, inner[close + 1..].trim())
            } else {
                (LaurentPoly::one(), piece)
            };
            let rest = rest.strip_prefix('*').map(str::trim).unwrap_or(rest);
            let k = match rest {
                "" => 0,
                "D" => 1,
                _ => rest
                    .strip_prefix("D^")
                    .and_then(|n| n.trim().parse::<usize>().ok())
                    .ok_or_else(|| bad(&format!("bad derivative power {rest:?}")))?,
            };
            if coeffs.len() <= k {
                coeffs.resize(k + 1, LaurentPoly::zero());
            }
            coeffs[k] = &coeffs[k] + &poly;
        }
        Ok(DiffOp::new(coeffs))
    }
}
