//! Integer partitions and their combinatorics: enumeration, conjugation,
//! centralizer orders, hook lengths, and irreducible dimensions.
//!
//! Partitions are value objects in canonical form (weakly decreasing, no
//! zero parts). Enumeration is reverse-lexicographic and deterministic, so
//! partition-keyed outputs and cache keys are reproducible across runs.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{exact_div, factorial};
use crate::error::{Error, Result};

/// A partition of a nonnegative integer: weakly decreasing positive parts.
///
/// The empty partition is the unique partition of 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from arbitrary parts: zeros are dropped and the
    /// rest sorted weakly decreasing.
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let mut parts = parts.into();
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The rectangle k^n (n parts equal to k); empty when k or n is 0.
    pub fn rectangle(k: u32, n: u32) -> Self {
        if k == 0 {
            return Partition::empty();
        }
        Partition {
            parts: vec![k; n as usize],
        }
    }

    /// The single row (d).
    pub fn row(d: u32) -> Self {
        if d == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![d] }
        }
    }

    /// The single column 1^d.
    pub fn column(d: u32) -> Self {
        Partition {
            parts: vec![1; d as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The size d = sum of parts.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The conjugate partition: column lengths of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let width = self.parts[0] as usize;
        let mut cols = vec![0u32; width];
        for &p in &self.parts {
            for c in cols.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Partition { parts: cols }
    }

    /// Centralizer order z of a permutation with this cycle type:
    /// the product over distinct part values i of i^{m_i} * m_i!.
    pub fn z_order(&self) -> BigInt {
        let mut z = BigInt::one();
        let mut idx = 0;
        while idx < self.parts.len() {
            let value = self.parts[idx];
            let mut mult = 0u32;
            while idx < self.parts.len() && self.parts[idx] == value {
                mult += 1;
                idx += 1;
            }
            for _ in 0..mult {
                z *= value;
            }
            z *= factorial(mult);
        }
        z
    }

    /// Number of permutations with this cycle type: d! / z.
    pub fn class_size(&self) -> BigInt {
        exact_div(&factorial(self.size()), &self.z_order())
            .expect("centralizer order divides d!")
    }

    /// Hook lengths cell by cell, row-major.
    pub fn hook_lengths(&self) -> Vec<Vec<u32>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row_len)| {
                (0..row_len as usize)
                    .map(|j| row_len - j as u32 + conj.parts[j] - i as u32 - 1)
                    .collect()
            })
            .collect()
    }

    /// Dimension of the symmetric-group irreducible indexed by this
    /// partition: d! divided by the product of all hook lengths.
    pub fn irrep_dimension(&self) -> BigInt {
        let d = self.size();
        let mut hooks = BigInt::one();
        for row in self.hook_lengths() {
            for h in row {
                hooks *= h;
            }
        }
        exact_div(&factorial(d), &hooks).expect("hook product divides d!")
    }
}

/// Enumeration order: by size, then reverse-lexicographic within a size,
/// e.g. (4) < (3,1) < (2,2) < (2,1,1) < (1,1,1,1).
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses comma-separated parts with optional exponent shorthand,
/// e.g. "4,2" or "2^3" or "4,2^2". Parts are normalized to weakly
/// decreasing order.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let mut parts = Vec::new();
    for raw in text.split(',') {
        let token = raw.trim();
        if token.is_empty() {
            return Err(Error::Parse(format!(
                "empty token in partition {text:?}"
            )));
        }
        let (base, repeat) = match token.split_once('^') {
            Some((b, e)) => {
                let repeat: u32 = e.trim().parse().map_err(|_| {
                    Error::Parse(format!("bad exponent in token {token:?}"))
                })?;
                if repeat == 0 {
                    return Err(Error::Parse(format!(
                        "zero exponent in token {token:?}"
                    )));
                }
                (b.trim(), repeat)
            }
            None => (token, 1),
        };
        let value: u32 = base.parse().map_err(|_| {
            Error::Parse(format!("non-numeric part in token {token:?}"))
        })?;
        if value == 0 {
            return Err(Error::Parse(format!("zero part in token {token:?}")));
        }
        parts.extend(std::iter::repeat_n(value, repeat as usize));
    }
    Ok(Partition::new(parts))
}

/// All partitions of d in reverse-lexicographic order, largest part first:
/// partitions_of(4) = [(4), (3,1), (2,2), (2,1,1), (1,1,1,1)].
pub fn partitions_of(d: u32) -> Vec<Partition> {
    if d == 0 {
        return vec![Partition::empty()];
    }
    let mut out = Vec::new();
    let mut current = vec![d];
    loop {
        out.push(Partition {
            parts: current.clone(),
        });
        // Decrement the rightmost part above 1, then redistribute the tail
        // greedily under the new bound. This steps reverse-lexicographically.
        let Some(j) = current.iter().rposition(|&p| p > 1) else {
            break;
        };
        let bound = current[j] - 1;
        let mut remainder: u32 =
            current[j + 1..].iter().sum::<u32>() + 1;
        current.truncate(j);
        current.push(bound);
        while remainder > 0 {
            let next = remainder.min(bound);
            current.push(next);
            remainder -= next;
        }
    }
    out
}

/// All cycle types of S_d paired with their class sizes d!/z, in
/// enumeration order. Computes d! once.
pub fn classes_with_sizes(d: u32) -> Vec<(Partition, BigInt)> {
    let order = factorial(d);
    partitions_of(d)
        .into_iter()
        .map(|p| {
            let size = exact_div(&order, &p.z_order())
                .expect("centralizer order divides d!");
            (p, size)
        })
        .collect()
}
