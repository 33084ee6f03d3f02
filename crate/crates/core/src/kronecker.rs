//! Kronecker coefficients and tensor-square decompositions.
//!
//! A coefficient is the class-weighted triple inner product of character
//! rows. Sums accumulate over the common denominator d! (each term is
//! class size times a product of integer character values) and the single
//! division at the end must be exact; a remainder or a negative quotient
//! is reported as an internal consistency failure since it can only come
//! from a character bug.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{exact_div, factorial};
use crate::character::CharEngine;
use crate::error::{Error, Result};
use crate::exec::map_slice;
use crate::partition::{classes_with_sizes, partitions_of, Partition};

/// Below this many projection targets the row sweep stays sequential.
const PARALLEL_TARGET_CUTOFF: usize = 64;

/// The multiplicity of the irreducible indexed by `nu` inside the tensor
/// product of the irreducibles indexed by `lambda` and `mu`.
pub fn kronecker_coefficient(
    engine: &CharEngine,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Result<BigInt> {
    let d = lambda.size();
    if mu.size() != d || nu.size() != d {
        return Err(Error::Contract(format!(
            "kronecker_coefficient needs equal sizes, got {d}, {}, {}",
            mu.size(),
            nu.size()
        )));
    }
    let row_l = engine.character_row(lambda)?;
    let row_m = engine.character_row(mu)?;
    let row_n = engine.character_row(nu)?;
    let classes = classes_with_sizes(d);
    let total: BigInt = classes
        .iter()
        .map(|(rho, size)| {
            row_l.value(rho).unwrap() * row_m.value(rho).unwrap() * row_n.value(rho).unwrap() * size
        })
        .sum();
    reduce_projection(&total, d, || format!("a({lambda},{mu},{nu})"))
}

/// The full decomposition of the tensor product of two irreducibles:
/// multiplicity of every irreducible of the same degree, zero entries
/// omitted. One pointwise product vector is shared by all projections.
pub fn kronecker_row(
    engine: &CharEngine,
    lambda: &Partition,
    mu: &Partition,
) -> Result<BTreeMap<Partition, BigInt>> {
    let d = lambda.size();
    if mu.size() != d {
        return Err(Error::Contract(format!(
            "kronecker_row needs equal sizes, got {d} and {}",
            mu.size()
        )));
    }
    let row_l = engine.character_row(lambda)?;
    let row_m = engine.character_row(mu)?;
    let classes = classes_with_sizes(d);
    // Weighted product vector: class size times chi_lambda times chi_mu.
    let weighted: Vec<BigInt> = classes
        .iter()
        .zip(row_l.values_in_order().zip(row_m.values_in_order()))
        .map(|((_, size), (x, y))| x * y * size)
        .collect();
    let targets = partitions_of(d);
    let parallel =
        engine.parallel_flag() && targets.len() >= PARALLEL_TARGET_CUTOFF;
    let coefficients = map_slice(parallel, &targets, |nu| -> Result<BigInt> {
        let row_n = engine.character_row(nu)?;
        let total: BigInt = weighted
            .iter()
            .zip(row_n.values_in_order())
            .map(|(w, z)| w * z)
            .sum();
        reduce_projection(&total, d, || format!("a({lambda},{mu},{nu})"))
    });
    let mut decomposition = BTreeMap::new();
    for (nu, coefficient) in targets.iter().zip(coefficients) {
        let coefficient = coefficient?;
        if !coefficient.is_zero() {
            decomposition.insert(nu.clone(), coefficient);
        }
    }
    // Dimension bookkeeping: multiplicities weighted by dimensions must
    // reproduce the product of the two dimensions.
    let total: BigInt = decomposition
        .iter()
        .map(|(nu, a)| a * nu.irrep_dimension())
        .sum();
    if total != lambda.irrep_dimension() * mu.irrep_dimension() {
        return Err(Error::InternalConsistency(format!(
            "kronecker_row({lambda},{mu}) fails the dimension bookkeeping identity"
        )));
    }
    Ok(decomposition)
}

/// The multigraded content of the degree-kn piece of the invariant ring as
/// a GL_m representation: the tensor-square decomposition of the k^n
/// rectangle, restricted to shapes with at most m rows.
pub fn isotypic_decomposition(
    engine: &CharEngine,
    n: u32,
    m: u32,
    k: u32,
) -> Result<BTreeMap<Partition, BigInt>> {
    if n == 0 || m == 0 || k == 0 {
        return Err(Error::Contract(
            "isotypic_decomposition needs n, m, k >= 1".into(),
        ));
    }
    let rect = Partition::rectangle(k, n);
    let mut row = kronecker_row(engine, &rect, &rect)?;
    row.retain(|nu, _| nu.len() as u32 <= m);
    Ok(row)
}

fn reduce_projection(
    total: &BigInt,
    d: u32,
    label: impl Fn() -> String,
) -> Result<BigInt> {
    let coefficient = exact_div(total, &factorial(d)).ok_or_else(|| {
        Error::InternalConsistency(format!(
            "{} is not an integer: character inner product left a remainder",
            label()
        ))
    })?;
    if coefficient < BigInt::zero() {
        return Err(Error::InternalConsistency(format!(
            "{} is negative",
            label()
        )));
    }
    Ok(coefficient)
}
