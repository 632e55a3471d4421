//! Sparse Laurent polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::{binomial, Rational};
use crate::error::{Error, Result};

/// A finite sum of `c_e x^e`, `e` any integer.
///
/// Zero coefficients are never stored, so the empty map is the zero
/// polynomial and the representation is canonical.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `x^e` with unit coefficient.
    pub fn x_pow(e: i64) -> Self {
        Self::monomial(Rational::one(), e)
    }

    /// Ordinary polynomial from ascending coefficients `c_0, c_1, ...`.
    pub fn from_coeffs<I: IntoIterator<Item = Rational>>(coeffs: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in coeffs.into_iter().enumerate() {
            p.add_term(e as i64, c);
        }
        p
    }

    /// Sum of `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Result<i64> {
        self.terms.keys().next_back().copied().ok_or(Error::ZeroPolynomial("degree"))
    }

    pub fn valuation(&self) -> Result<i64> {
        self.terms.keys().next().copied().ok_or(Error::ZeroPolynomial("valuation"))
    }

    pub fn leading_coeff(&self) -> Result<&Rational> {
        self.terms.values().next_back().ok_or(Error::ZeroPolynomial("leading coefficient"))
    }

    /// True when no negative exponent occurs (the zero polynomial included).
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().next().is_none_or(|&e| e >= 0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_ok_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Multiply by `x^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, v)| (e + shift, v.clone())).collect() }
    }

    pub fn derivative(&self) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (e - 1, c * Rational::from(*e))))
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * x.pow(i32::try_from(*e).map_err(|_| Error::InvalidArgument("exponent too large".into()))?)?;
        }
        Ok(acc)
    }

    /// `p(1/x)`: every exponent changes sign.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// `p(a x + b)`; defined for polynomials only.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Result<Self> {
        if !self.is_polynomial() {
            return Err(Error::Representation(
                "affine substitution of a Laurent polynomial with negative exponents".into(),
            ));
        }
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let n = *e as usize;
            // (a x + b)^n by the binomial theorem
            for k in 0..=n {
                let coef = c
                    * binomial(n, k)
                    * a.pow(k as i32).expect("nonnegative exponent")
                    * b.pow((n - k) as i32).expect("nonnegative exponent");
                out.add_term(k as i64, coef);
            }
        }
        Ok(out)
    }

    /// `p(1 - x)`.
    pub fn reflect(&self) -> Result<Self> {
        self.compose_affine(&-Rational::one(), &Rational::one())
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    /// Sparse form with exponents descending, e.g. `x^2 - 3/2*x + 1 - x^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{e}")?,
                (_, false) => write!(f, "{mag}*x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the `Display` form; whitespace is ignored and terms may repeat exponents.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        // Split into signed terms; a sign directly after '^' belongs to the exponent.
        let mut pieces: Vec<String> = Vec::new();
        let mut current = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !current.is_empty() && prev != Some('^') {
                pieces.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = Some(ch);
        }
        pieces.push(current);

        let mut out = LaurentPoly::zero();
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-Rational::one(), rest),
                None => (Rational::one(), piece.strip_prefix('+').unwrap_or(&piece)),
            };
            let bad = || Error::Parse(format!("malformed term {piece:?} in {s:?}"));
            let (coef, mono) = match body.find('x') {
                None => (body.parse::<Rational>().map_err(|_| bad())?, None),
                Some(pos) => {
                    let head = &body[..pos];
                    let coef = if head.is_empty() {
                        Rational::one()
                    } else {
                        head.strip_suffix('*').ok_or_else(bad)?.parse::<Rational>().map_err(|_| bad())?
                    };
                    (coef, Some(&body[pos + 1..]))
                }
            };
            let exp = match mono {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse::<i64>()
                    .map_err(|_| bad())?,
            };
            out.add_term(exp, sign * coef);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn unit_pair() {
        assert_eq!(&LaurentPoly::x() * &LaurentPoly::x_pow(-1), LaurentPoly::one());
    }

    #[test]
    fn square_of_binomial() {
        let xm1 = p("x - 1");
        assert_eq!(&xm1 * &xm1, p("x^2 - 2*x + 1"));
    }

    #[test]
    fn negative_power_times_polynomial() {
        assert_eq!(&LaurentPoly::x_pow(-1) * &p("x^2 + x"), p("x + 1"));
    }

    #[test]
    fn zero_has_no_degree() {
        let z = LaurentPoly::zero();
        assert!(z.degree().is_err());
        assert!(z.valuation().is_err());
        assert_eq!(z.to_string(), "0");
        assert_eq!(&p("x") - &p("x"), z);
    }

    #[test]
    fn degree_and_valuation() {
        let f = p("3*x^4 - x^-2");
        assert_eq!(f.degree().unwrap(), 4);
        assert_eq!(f.valuation().unwrap(), -2);
        assert!(!f.is_polynomial());
    }

    #[test]
    fn display_round_trip() {
        for s in ["x^2 - 3/2*x + 1", "-x^-1", "5", "-2/3*x^7 + x - 1/2*x^-3", "x"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("1 + x + x").to_string(), "2*x + 1");
        assert!("x^".parse::<LaurentPoly>().is_err());
        assert!("2x".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn calculus_and_substitution() {
        assert_eq!(p("x^3 + x^-1").derivative(), p("3*x^2 - x^-2"));
        assert_eq!(p("x^2").reflect().unwrap(), p("x^2 - 2*x + 1"));
        assert_eq!(p("x^2 + x^-1").invert_variable(), p("x^-2 + x"));
        assert!(p("x^-1").reflect().is_err());
        assert_eq!(p("x^2 - 1").eval(&q(1, 2)).unwrap(), q(-3, 4));
        assert!(p("x^-1").eval(&Rational::zero()).is_err());
    }
}
