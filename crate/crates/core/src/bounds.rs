//! Degree-bound calculators for n = 3: the gamma constant for the null
//! cone, upper bounds on the generating degree from the two null-cone
//! defining sets, and the combinatorial lower-bound witness.
//!
//! Two invariant sets define the null cone for n = 3:
//! set A has 9m-16 invariants of degree 3 plus C(m,3) of degree 6, set B
//! has 9m-16 invariants of degree 6 (a hsop). Feeding either into
//! max{d_i, sum d_i - l - 2n^2 + 2} bounds the generating degree; the
//! headline number is the smaller of the two. For m <= 3 the tight values
//! are known and reported instead, with the generic-formula value exposed
//! alongside for transparency.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::character::CharEngine;
use crate::error::{Error, Result};
use crate::kronecker::kronecker_coefficient;
use crate::partition::Partition;

/// Smallest degree whose invariants cut out the null cone, for n = 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaReport {
    pub n: u32,
    pub m: u32,
    pub value: u32,
    /// True for m <= 2, where the value 3 follows from the polynomial-ring
    /// structure rather than from a stated theorem.
    pub inferred: bool,
}

pub fn gamma_value(n: u32, m: u32) -> Result<GammaReport> {
    if n != 3 {
        return Err(Error::Unsupported(
            "gamma is computed for n = 3 only".into(),
        ));
    }
    if m == 0 {
        return Err(Error::Contract("gamma needs m >= 1".into()));
    }
    if m >= 3 {
        Ok(GammaReport {
            n,
            m,
            value: 6,
            inferred: false,
        })
    } else {
        // For one or two matrices the ring is polynomial on the degree-3
        // determinant coefficients, which already cut out the null cone.
        Ok(GammaReport {
            n,
            m,
            value: 3,
            inferred: true,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// Tight published value (m <= 3).
    Literature,
    /// Mixed degree 3 + degree 6 defining set.
    SetA,
    /// Degree-6 hsop defining set.
    SetB,
}

/// One row of the upper-bound table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub m: u32,
    pub bound: u64,
    pub source: BoundSource,
    pub set_a: Option<u64>,
    pub set_b: Option<u64>,
    /// For m = 3 the generic formula gives 11 while the tight published
    /// value is 9; the generic value is kept visible here.
    pub generic: Option<u64>,
}

fn set_a_bound(m: u64) -> u64 {
    // 9m-16 invariants of degree 3 and C(m,3) of degree 6:
    // max{6, 3(9m-16) + 6*C(m,3) - l - 16} with l = (9m-16) + C(m,3).
    let cubes = 9 * m - 16;
    let sextics = m * (m - 1) * (m - 2) / 6;
    6u64.max(2 * cubes + 5 * sextics - 16)
}

fn set_b_bound(m: u64) -> u64 {
    // 9m-16 invariants, all of degree 6: max{6, 5(9m-16) - 16}.
    let sextics = 9 * m - 16;
    6u64.max(5 * sextics - 16)
}

/// Upper bound on the generating degree of the invariant ring for n = 3
/// and 1 <= m <= 9; larger m is covered by [`universal_upper_bound`].
pub fn upper_bound(n: u32, m: u32) -> Result<BoundRow> {
    if n != 3 {
        return Err(Error::Unsupported(
            "upper bounds are computed for n = 3 only".into(),
        ));
    }
    match m {
        0 => Err(Error::Contract("upper_bound needs m >= 1".into())),
        1 | 2 => Ok(BoundRow {
            m,
            bound: 3,
            source: BoundSource::Literature,
            set_a: None,
            set_b: None,
            generic: None,
        }),
        3 => {
            let a = set_a_bound(3);
            let b = set_b_bound(3);
            Ok(BoundRow {
                m,
                bound: 9,
                source: BoundSource::Literature,
                set_a: Some(a),
                set_b: Some(b),
                generic: Some(a.min(b)),
            })
        }
        4..=9 => {
            let a = set_a_bound(u64::from(m));
            let b = set_b_bound(u64::from(m));
            Ok(BoundRow {
                m,
                bound: a.min(b),
                source: if a <= b { BoundSource::SetA } else { BoundSource::SetB },
                set_a: Some(a),
                set_b: Some(b),
                generic: None,
            })
        }
        _ => Err(Error::Unsupported(format!(
            "m = {m} exceeds 9; every m is covered by universal_upper_bound(3)"
        ))),
    }
}

/// The full table for m = 1..=9.
pub fn bounds_table(n: u32) -> Result<Vec<BoundRow>> {
    (1..=9).map(|m| upper_bound(n, m)).collect()
}

/// The universal bound: the m = 9 bound caps every m, since adding
/// matrices beyond n^2 cannot raise the generating degree.
pub fn universal_upper_bound(n: u32) -> Result<u64> {
    if n != 3 {
        return Err(Error::Unsupported(
            "the universal bound is computed for n = 3 only \
             (the classical value for n = 2 is 4)"
                .into(),
        ));
    }
    Ok(upper_bound(3, 9)?.bound)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub k: u32,
    #[serde(with = "crate::serde_util::bigint_string")]
    pub coefficient: BigInt,
}

/// The combinatorial certificate that generators of degree below n^2 do
/// not suffice once m >= n^2: the column multiplicity in the rectangle
/// tensor squares is 0 for k < n and 1 for k = n.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LowerBoundWitness {
    pub n: u32,
    /// The certified lower bound n^2.
    pub value: u32,
    pub entries: Vec<WitnessEntry>,
    pub verified: bool,
}

pub fn lower_bound_witness(engine: &CharEngine, n: u32) -> Result<LowerBoundWitness> {
    if n < 2 {
        return Err(Error::Contract("lower_bound_witness needs n >= 2".into()));
    }
    if n >= 4 {
        log::warn!(
            "lower_bound_witness at n = {n} needs characters of degree {}; \
             this can take a while",
            n * n
        );
    }
    let mut entries = Vec::new();
    for k in 1..=n {
        let rect = Partition::rectangle(k, n);
        let column = Partition::column(k * n);
        let coefficient = kronecker_coefficient(engine, &rect, &rect, &column)?;
        entries.push(WitnessEntry { k, coefficient });
    }
    let verified = entries
        .iter()
        .all(|e| {
            if e.k == n {
                e.coefficient.is_one()
            } else {
                e.coefficient.is_zero()
            }
        });
    Ok(LowerBoundWitness {
        n,
        value: n * n,
        entries,
        verified,
    })
}
