use super::Rational;

/// Rising factorial `a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, n: usize) -> Rational {
    (0..n).map(|k| a + Rational::from(k)).product()
}

pub fn factorial(n: usize) -> Rational {
    pochhammer(&Rational::one(), n)
}

/// Binomial coefficient `C(n, k)` for `k <= n`, zero otherwise.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    pochhammer(&Rational::from(n - k + 1), k) / factorial(k)
}

/// Falling factorial `s (s-1) ... (s-k+1)`; the factor produced by `d^k x^s`.
pub fn falling(s: &Rational, k: usize) -> Rational {
    (0..k).map(|j| s - Rational::from(j)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn small_values() {
        assert_eq!(pochhammer(&Rational::one(), 3), Rational::from(6));
        assert_eq!(pochhammer(&q(-17, 3), 0), Rational::one());
        assert_eq!(pochhammer(&q(1, 2), 2), q(3, 4));
        assert_eq!(pochhammer(&Rational::from(-2), 4), Rational::zero());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Rational::from(10));
        assert_eq!(binomial(3, 4), Rational::zero());
        assert_eq!(binomial(0, 0), Rational::one());
    }

    #[test]
    fn falling_factorial() {
        assert_eq!(falling(&Rational::from(5), 2), Rational::from(20));
        assert_eq!(falling(&q(1, 2), 2), q(-1, 4));
        assert_eq!(falling(&Rational::from(1), 3), Rational::zero());
    }
}
