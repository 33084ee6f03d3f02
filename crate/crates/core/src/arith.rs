//! Exact big-integer helpers shared across the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// n! as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=u64::from(n) {
        acc *= i;
    }
    acc
}

/// Binomial coefficient C(n, k) as an exact integer; 0 when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    // Every prefix product n-k+1 .. n-k+i is divisible by i!, so the
    // running division stays exact.
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Exact quotient, or `None` when the division leaves a remainder.
pub fn exact_div(numerator: &BigInt, denominator: &BigInt) -> Option<BigInt> {
    let (q, r) = numerator.div_rem(denominator);
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        // 21! overflows u64; must still be exact.
        assert_eq!(
            factorial(21).to_string(),
            "51090942171709440000"
        );
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 3), BigInt::from(10));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(10, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(50, 25).to_string(), "126410606437752");
    }

    #[test]
    fn exact_div_detects_remainder() {
        assert_eq!(
            exact_div(&BigInt::from(12), &BigInt::from(4)),
            Some(BigInt::from(3))
        );
        assert_eq!(exact_div(&BigInt::from(13), &BigInt::from(4)), None);
    }
}
