//! Truncated generalized power series `x^q (a_0 + a_1 x + ... + a_{K-1} x^{K-1})`.
//!
//! Only the `K` stored coefficients are known; everything from index `K` on
//! is unknown, not zero. Arithmetic keeps that contract by truncating to the
//! shortest known range, so a result never claims a coefficient it could not
//! compute exactly.

use std::fmt;

use super::{pochhammer, LaurentPoly, Rational};
use crate::error::{Error, Result};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 48;

#[derive(Clone, PartialEq, Eq)]
pub struct GenSeries {
    offset: Rational,
    coeffs: Vec<Rational>,
}

impl GenSeries {
    pub fn new(offset: Rational, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("series order must be at least 1".into()));
        }
        Ok(GenSeries { offset, coeffs })
    }

    /// `x^offset` times a finite exact sum, known through `order` coefficients
    /// (zero padded). `order` must cover every stored coefficient.
    pub fn from_finite(offset: Rational, coeffs: Vec<Rational>, order: usize) -> Result<Self> {
        if coeffs.len() > order {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients do not fit in order {order}",
                coeffs.len()
            )));
        }
        let mut c = coeffs;
        c.resize(order, Rational::zero());
        GenSeries::new(offset, c)
    }

    /// A polynomial viewed as a series with offset equal to its valuation.
    pub fn from_laurent(p: &LaurentPoly, order: usize) -> Result<Self> {
        if p.is_zero() {
            return GenSeries::new(Rational::zero(), vec![Rational::zero(); order.max(1)]);
        }
        let val = p.valuation()?;
        let coeffs = (val..=p.degree()?).map(|e| p.coeff(e)).collect();
        GenSeries::from_finite(Rational::from(val), coeffs, order)
    }

    /// `(1 - x)^{-beta} = sum_k (beta)_k / k! x^k`.
    pub fn binomial(beta: &Rational, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("series order must be at least 1".into()));
        }
        let mut coeffs = Vec::with_capacity(order);
        let mut c = Rational::one();
        for k in 0..order {
            coeffs.push(c.clone());
            c = c * (beta + Rational::from(k)) / Rational::from(k + 1);
        }
        GenSeries::new(Rational::zero(), coeffs)
    }

    /// Gauss series `2F1(a, b; c; x)` through `order` terms.
    pub fn hypergeometric_2f1(a: &Rational, b: &Rational, c: &Rational, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("series order must be at least 1".into()));
        }
        let mut coeffs = Vec::with_capacity(order);
        let mut t = Rational::one();
        for k in 0..order {
            coeffs.push(t.clone());
            if k + 1 == order {
                break;
            }
            let kk = Rational::from(k);
            let den = (c + &kk) * Rational::from(k + 1);
            if den.is_zero() {
                // A terminated numerator makes the remaining terms zero anyway.
                if t.is_zero() {
                    t = Rational::zero();
                    continue;
                }
                return Err(Error::Pole(format!("lower parameter c + {k} with c = {c}")));
            }
            t = t * (a + &kk) * (b + &kk) / den;
        }
        GenSeries::new(Rational::zero(), coeffs)
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Number of known coefficients `K`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `x^{offset + k}`; `None` beyond the known range.
    pub fn coeff(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GenSeries { offset: self.offset.clone(), coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by `x^e` for rational `e`.
    pub fn shift(&self, e: &Rational) -> Self {
        GenSeries { offset: &self.offset + e, coeffs: self.coeffs.clone() }
    }

    /// Same series re-expressed from a lower offset (`offset - by`), padding leading zeros.
    fn lower_offset(&self, by: usize) -> GenSeries {
        let mut coeffs = vec![Rational::zero(); by];
        coeffs.extend(self.coeffs.iter().cloned());
        GenSeries { offset: &self.offset - Rational::from(by), coeffs }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let k = order.clamp(1, self.order());
        GenSeries { offset: self.offset.clone(), coeffs: self.coeffs[..k].to_vec() }
    }

    /// Align two series on a common offset; their offsets must differ by an integer.
    fn align(&self, other: &GenSeries) -> Result<(GenSeries, GenSeries)> {
        let diff = &self.offset - &other.offset;
        let d = diff.to_i64().ok_or_else(|| {
            Error::Representation(format!(
                "offsets {} and {} differ by a non-integer",
                self.offset, other.offset
            ))
        })?;
        let (a, b) = match d {
            d if d > 0 => (self.lower_offset(d as usize), other.clone()),
            d if d < 0 => (self.clone(), other.lower_offset((-d) as usize)),
            _ => (self.clone(), other.clone()),
        };
        let k = a.order().min(b.order());
        Ok((a.truncate(k), b.truncate(k)))
    }

    pub fn add(&self, other: &GenSeries) -> Result<GenSeries> {
        let (a, b) = self.align(other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(GenSeries { offset: a.offset, coeffs })
    }

    pub fn sub(&self, other: &GenSeries) -> Result<GenSeries> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Cauchy product; offsets add and the order is the smaller of the two.
    pub fn mul(&self, other: &GenSeries) -> GenSeries {
        let k = self.order().min(other.order());
        let coeffs = (0..k)
            .map(|n| (0..=n).map(|i| &self.coeffs[i] * &other.coeffs[n - i]).sum())
            .collect();
        GenSeries { offset: &self.offset + &other.offset, coeffs }
    }

    /// Exact sum of the known part; meaningful for finite (zero-padded) series.
    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        let base = self.offset.to_i64().ok_or_else(|| {
            Error::Representation(format!("offset {} is not an integer", self.offset))
        })?;
        Ok(LaurentPoly::from_terms(
            self.coeffs.iter().enumerate().map(|(k, c)| (base + k as i64, c.clone())),
        ))
    }
}

impl fmt::Debug for GenSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^({}) * [", self.offset)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] + O(x^{})", self.order())
    }
}

/// Coefficient `(beta)_k / k!` of the binomial series, for cross-checks.
pub fn binomial_series_coeff(beta: &Rational, k: usize) -> Rational {
    pochhammer(beta, k) / super::factorial(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&i| Rational::from(i)).collect()
    }

    #[test]
    fn binomial_series_examples() {
        assert_eq!(GenSeries::binomial(&Rational::zero(), 4).unwrap().coeffs(), &ints(&[1, 0, 0, 0])[..]);
        assert_eq!(GenSeries::binomial(&Rational::one(), 4).unwrap().coeffs(), &ints(&[1, 1, 1, 1])[..]);
        assert_eq!(
            GenSeries::binomial(&q(1, 2), 3).unwrap().coeffs(),
            &[Rational::one(), q(1, 2), q(3, 8)][..]
        );
        assert!(GenSeries::binomial(&Rational::one(), 0).is_err());
        for k in 0..6 {
            assert_eq!(GenSeries::binomial(&q(3, 7), 6).unwrap().coeffs()[k], binomial_series_coeff(&q(3, 7), k));
        }
    }

    #[test]
    fn offsets_add_under_multiplication() {
        let half = GenSeries::new(q(1, 2), ints(&[1])).unwrap();
        let prod = half.mul(&half);
        assert_eq!(prod.offset(), &Rational::one());
        assert_eq!(prod.coeffs(), &ints(&[1])[..]);
    }

    #[test]
    fn cauchy_products() {
        let a = GenSeries::new(Rational::zero(), ints(&[1, 1, 0])).unwrap();
        let b = GenSeries::new(Rational::zero(), ints(&[1, -1, 0])).unwrap();
        assert_eq!(a.mul(&b).coeffs(), &ints(&[1, 0, -1])[..]);
        let c = GenSeries::new(Rational::zero(), ints(&[1, 1, 1])).unwrap();
        assert_eq!(c.mul(&a).coeffs(), &ints(&[1, 2, 2])[..]);
        // truncation at the smaller order
        let short = GenSeries::new(Rational::zero(), ints(&[2, 3])).unwrap();
        assert_eq!(c.mul(&short).order(), 2);
    }

    #[test]
    fn aligned_subtraction_keeps_only_known_range() {
        let a = GenSeries::new(q(1, 3), ints(&[1, 2, 3, 4])).unwrap();
        let b = GenSeries::new(q(4, 3), ints(&[2, 3, 4])).unwrap();
        let d = a.sub(&b).unwrap();
        assert_eq!(d.offset(), &q(1, 3));
        assert_eq!(d.coeffs(), &ints(&[1, 0, 0, 0])[..]);
        let c = GenSeries::new(q(1, 2), ints(&[1])).unwrap();
        assert!(a.add(&c).is_err());
    }

    #[test]
    fn terminating_hypergeometric() {
        // 2F1(-2, b; c; x) = 1 - 2b/c x + b(b+1)/(c(c+1)) x^2
        let s = GenSeries::hypergeometric_2f1(&Rational::from(-2), &q(1, 2), &q(3, 2), 6).unwrap();
        assert_eq!(s.coeffs()[..3], [Rational::one(), q(-2, 3), q(1, 5)]);
        assert!(s.coeffs()[3..].iter().all(Rational::is_zero));
        assert!(GenSeries::hypergeometric_2f1(&Rational::one(), &Rational::one(), &Rational::from(-1), 4).is_err());
        // terminated before the pole is reached
        assert!(GenSeries::hypergeometric_2f1(&Rational::from(-1), &Rational::one(), &Rational::from(-3), 8).is_ok());
    }
}
