//! Dimensions of Schur functors and of the graded pieces of the invariant
//! ring.
//!
//! Two independent routes compute the same graded dimension. The oracle
//! route follows the decomposition literally: tensor-square multiplicities
//! of the k^n rectangle weighted by Schur dimensions, which needs a full
//! character table of S_{kn}. The fast route expands the same inner
//! product in the power-sum basis and evaluates at m unit variables,
//!
//!   dim = sum over cycle types rho of  chi(rho)^2 * m^(parts of rho) / z_rho,
//!
//! which needs a single character row. Their agreement is enforced by
//! tests, not assumed.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{exact_div, factorial};
use crate::character::CharEngine;
use crate::error::{Error, Result};
use crate::exec::map_slice;
use crate::kronecker::kronecker_row;
use crate::partition::{classes_with_sizes, Partition};

/// Dimension of the Schur functor of shape `lambda` on an m-dimensional
/// space, by the hook-content formula. Zero when the shape has more than
/// m rows.
pub fn schur_dim(lambda: &Partition, m: u32) -> BigInt {
    if lambda.len() as u32 > m {
        return BigInt::zero();
    }
    let mut numerator = BigInt::one();
    let mut denominator = BigInt::one();
    let hooks = lambda.hook_lengths();
    for (i, row) in hooks.iter().enumerate() {
        for (j, &hook) in row.iter().enumerate() {
            // content = column - row; m + content >= 1 whenever rows <= m
            numerator *= i64::from(m) + j as i64 - i as i64;
            denominator *= hook;
        }
    }
    exact_div(&numerator, &denominator).expect("hook-content quotient is integral")
}

/// Which dimension route to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimAlgorithm {
    Fast,
    Oracle,
}

/// Graded dimension via the tensor-square decomposition (the test oracle;
/// needs a full character table, practical up to kn around 14).
pub fn graded_dim_oracle(engine: &CharEngine, n: u32, m: u32, k: u32) -> Result<BigInt> {
    check_nm(n, m)?;
    let d = k * n;
    if d > 14 {
        log::warn!(
            "graded_dim_oracle at degree {d} needs {} character rows; \
             the fast path needs one",
            crate::partition::partitions_of(d).len()
        );
    }
    let rect = Partition::rectangle(k, n);
    let row = kronecker_row(engine, &rect, &rect)?;
    Ok(row
        .iter()
        .map(|(nu, a)| a * schur_dim(nu, m))
        .sum())
}

/// Graded dimension via the single-row power-sum evaluation (the
/// production path).
pub fn graded_dim_fast(engine: &CharEngine, n: u32, m: u32, k: u32) -> Result<BigInt> {
    check_nm(n, m)?;
    let d = k * n;
    let rect = Partition::rectangle(k, n);
    let row = engine.character_row(&rect)?;
    let classes = classes_with_sizes(d);
    let parallel = engine.parallel_flag()
        && classes.len() >= crate::character::PARALLEL_CLASS_CUTOFF;
    // Accumulate class_size * chi^2 * m^len over the common denominator d!.
    let terms = map_slice(parallel, &classes, |(rho, size)| {
        let chi = row.value(rho).unwrap();
        chi * chi * BigInt::from(m).pow(rho.len() as u32) * size
    });
    let total: BigInt = terms.into_iter().sum();
    let dim = exact_div(&total, &factorial(d)).ok_or_else(|| {
        Error::InternalConsistency(format!(
            "graded dimension sum at (n={n}, m={m}, k={k}) is not an integer"
        ))
    })?;
    if dim < BigInt::zero() {
        return Err(Error::InternalConsistency(format!(
            "graded dimension at (n={n}, m={m}, k={k}) is negative"
        )));
    }
    Ok(dim)
}

/// Graded dimension of the degree-kn piece; dispatches to the fast path.
pub fn graded_dim(engine: &CharEngine, n: u32, m: u32, k: u32) -> Result<BigInt> {
    graded_dim_fast(engine, n, m, k)
}

pub fn graded_dim_with(
    engine: &CharEngine,
    n: u32,
    m: u32,
    k: u32,
    algorithm: DimAlgorithm,
) -> Result<BigInt> {
    match algorithm {
        DimAlgorithm::Fast => graded_dim_fast(engine, n, m, k),
        DimAlgorithm::Oracle => graded_dim_oracle(engine, n, m, k),
    }
}

fn check_nm(n: u32, m: u32) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::Contract("graded dimensions need n, m >= 1".into()));
    }
    Ok(())
}
