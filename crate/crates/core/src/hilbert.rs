//! Hilbert series of the invariant ring in the renormalized grading: Krull
//! dimension, numerator extraction over the universal denominator
//! (1-t)^r, palindromy validation, and series expansion.
//!
//! The renormalized series counts dimensions of the degree-kn pieces by k.
//! Its numerator over (1-t)^r is an integer polynomial of degree
//! r - n*m (for n >= 2, m >= 3), so finitely many graded dimensions pin
//! the whole series down; everything here reduces to the dimension engine
//! plus exact polynomial arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::binomial;
use crate::character::CharEngine;
use crate::error::{Error, Result};
use crate::exec::map_slice;
use crate::graded::graded_dim;
use serde::{Deserialize, Serialize};

/// Krull dimension of the invariant ring.
///
/// m = 1 gives the one-variable determinant ring, m = 2 a polynomial ring
/// on n+1 generators, n = 1 a polynomial ring on m variables; the general
/// formula m*n^2 - 2(n^2 - 1) covers m >= 3.
pub fn krull_dim(n: u32, m: u32) -> u32 {
    assert!(n >= 1 && m >= 1, "krull_dim needs n, m >= 1");
    if m == 1 {
        1
    } else if m == 2 {
        n + 1
    } else if n == 1 {
        m
    } else {
        m * n * n - 2 * (n * n - 1)
    }
}

/// Degree of the numerator over the universal denominator: r - n*m for
/// n >= 2, m >= 3, and 0 otherwise (the series is a pure denominator).
pub fn numerator_degree(n: u32, m: u32) -> u32 {
    if n >= 2 && m >= 3 {
        krull_dim(n, m) - n * m
    } else {
        0
    }
}

/// Whether to compute only half the numerator and mirror the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PalindromeMode {
    /// Verify fully when the numerator degree is at most
    /// [`AUTO_PALINDROME_THRESHOLD`], assume above it.
    #[default]
    Auto,
    On,
    Off,
}

/// Numerator degree beyond which [`PalindromeMode::Auto`] switches from
/// full verification to the palindrome assumption.
pub const AUTO_PALINDROME_THRESHOLD: u32 = 14;

/// Extra coefficients computed past the predicted numerator degree when
/// palindromy is not assumed; they must all come out zero, which
/// end-to-end validates the Krull dimension, the degree formula, and
/// every dimension that entered.
const VANISH_SLACK: u32 = 2;

/// The computed numerator data for one (n, m).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub schema_version: u32,
    pub n: u32,
    pub m: u32,
    pub krull_dim: u32,
    pub numerator_degree: u32,
    /// Numerator coefficients, constant term first. Always
    /// `numerator_degree + 1` entries.
    #[serde(with = "crate::serde_util::bigint_vec_string")]
    pub numerator: Vec<BigInt>,
    /// The graded dimensions that entered the computation, k = 0 first.
    #[serde(with = "crate::serde_util::bigint_vec_string")]
    pub coefficients_used: Vec<BigInt>,
    pub palindromic: bool,
    pub assumed_palindrome: bool,
}

impl HilbertReport {
    fn closed_form(n: u32, m: u32, r: u32) -> Self {
        HilbertReport {
            schema_version: 1,
            n,
            m,
            krull_dim: r,
            numerator_degree: 0,
            numerator: vec![BigInt::one()],
            coefficients_used: vec![BigInt::one()],
            palindromic: true,
            assumed_palindrome: false,
        }
    }

    /// Expands numerator/(1-t)^r back into graded dimensions up to k_max.
    pub fn expand(&self, k_max: u32) -> Vec<BigInt> {
        expand_over_denominator(&self.numerator, self.krull_dim, k_max)
    }
}

/// Computes the numerator of the renormalized series over (1-t)^r.
///
/// Without the palindrome assumption the dimensions are computed out to
/// degree + slack and the trailing product coefficients are checked to
/// vanish; with it only the lower half is computed and the upper half is
/// mirrored. m <= 2 and n = 1 shortcut to their closed forms.
pub fn hilbert_numerator(
    engine: &CharEngine,
    n: u32,
    m: u32,
    mode: PalindromeMode,
) -> Result<HilbertReport> {
    if n == 0 || m == 0 {
        return Err(Error::Contract("hilbert_numerator needs n, m >= 1".into()));
    }
    let r = krull_dim(n, m);
    if m <= 2 || n == 1 {
        return Ok(HilbertReport::closed_form(n, m, r));
    }
    let degree = numerator_degree(n, m);
    let assume = match mode {
        PalindromeMode::On => true,
        PalindromeMode::Off => false,
        PalindromeMode::Auto => degree > AUTO_PALINDROME_THRESHOLD,
    };
    let top = if assume {
        degree.div_ceil(2)
    } else {
        degree + VANISH_SLACK
    };
    let ks: Vec<u32> = (0..=top).collect();
    let coefficients = map_slice(engine.parallel_flag(), &ks, |&k| {
        graded_dim(engine, n, m, k)
    });
    let coefficients: Vec<BigInt> =
        coefficients.into_iter().collect::<Result<_>>()?;
    let product = multiply_by_one_minus_t_power(&coefficients, r);

    let numerator: Vec<BigInt> = if assume {
        if degree % 2 == 1 {
            // The directly computed coefficient just past the midpoint must
            // equal its mirror image.
            let half = degree as usize / 2;
            if product[half + 1] != product[half] {
                return Err(Error::InternalConsistency(format!(
                    "palindrome assumption fails at (n={n}, m={m}): \
                     midpoint coefficients differ"
                )));
            }
        }
        (0..=degree as usize)
            .map(|i| {
                if i <= top as usize {
                    product[i].clone()
                } else {
                    product[degree as usize - i].clone()
                }
            })
            .collect()
    } else {
        for j in (degree + 1)..=top {
            if !product[j as usize].is_zero() {
                return Err(Error::InternalConsistency(format!(
                    "numerator coefficient at degree {j} is nonzero at \
                     (n={n}, m={m}); expected degree {degree}"
                )));
            }
        }
        product[..=degree as usize].to_vec()
    };

    if numerator[0] != BigInt::one() {
        return Err(Error::InternalConsistency(format!(
            "numerator constant term is not 1 at (n={n}, m={m})"
        )));
    }
    let palindromic = assume
        || numerator
            .iter()
            .zip(numerator.iter().rev())
            .all(|(a, b)| a == b);
    Ok(HilbertReport {
        schema_version: 1,
        n,
        m,
        krull_dim: r,
        numerator_degree: degree,
        numerator,
        coefficients_used: coefficients,
        palindromic,
        assumed_palindrome: assume,
    })
}

/// The renormalized coefficients dim of the degree-kn piece for
/// k = 0..=k_max, straight from the dimension engine.
pub fn series_expand(engine: &CharEngine, n: u32, m: u32, k_max: u32) -> Result<Vec<BigInt>> {
    if n == 0 || m == 0 {
        return Err(Error::Contract("series_expand needs n, m >= 1".into()));
    }
    let ks: Vec<u32> = (0..=k_max).collect();
    map_slice(engine.parallel_flag(), &ks, |&k| graded_dim(engine, n, m, k))
        .into_iter()
        .collect()
}

/// Coefficients of the plain (unrenormalized) series up to degree d_max:
/// zero off multiples of n, the graded dimension at multiples.
pub fn unnormalized_series(
    engine: &CharEngine,
    n: u32,
    m: u32,
    d_max: u32,
) -> Result<Vec<BigInt>> {
    if n == 0 || m == 0 {
        return Err(Error::Contract(
            "unnormalized_series needs n, m >= 1".into(),
        ));
    }
    let renormalized = series_expand(engine, n, m, d_max / n)?;
    Ok((0..=d_max)
        .map(|d| {
            if d % n == 0 {
                renormalized[(d / n) as usize].clone()
            } else {
                BigInt::zero()
            }
        })
        .collect())
}

/// Multiplies a truncated power series by (1-t)^power, keeping the input
/// truncation order.
fn multiply_by_one_minus_t_power(series: &[BigInt], power: u32) -> Vec<BigInt> {
    (0..series.len())
        .map(|j| {
            let lo = j.saturating_sub(power as usize);
            let mut acc = BigInt::zero();
            for (i, c) in series.iter().enumerate().take(j + 1).skip(lo) {
                let term = c * binomial(u64::from(power), (j - i) as u64);
                if (j - i) % 2 == 1 {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
            acc
        })
        .collect()
}

/// Expands numerator/(1-t)^r to order k_max.
pub fn expand_over_denominator(numerator: &[BigInt], r: u32, k_max: u32) -> Vec<BigInt> {
    (0..=k_max as usize)
        .map(|k| {
            let mut acc = BigInt::zero();
            for (j, c) in numerator.iter().enumerate().take(k + 1) {
                // coefficient of t^(k-j) in (1-t)^(-r)
                acc += c * binomial(u64::from(r) - 1 + (k - j) as u64, u64::from(r) - 1);
            }
            acc
        })
        .collect()
}

/// Renders numerator coefficients as a polynomial in t, with exponents
/// scaled by `scale` (used for the unrenormalized presentation t -> t^n).
pub fn format_numerator(coefficients: &[BigInt], scale: u32) -> String {
    let mut out = String::new();
    for (j, c) in coefficients.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c < &BigInt::zero();
        let magnitude = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let exponent = j as u32 * scale;
        if exponent == 0 {
            out.push_str(&magnitude.to_string());
        } else {
            if !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
            }
            if exponent == 1 {
                out.push('t');
            } else {
                out.push_str(&format!("t^{exponent}"));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Renders the universal denominator (1-t)^r, with the same exponent
/// scaling as [`format_numerator`].
pub fn format_denominator(r: u32, scale: u32) -> String {
    if scale == 1 {
        format!("(1-t)^{r}")
    } else {
        format!("(1-t^{scale})^{r}")
    }
}
