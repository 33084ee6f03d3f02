//! Exact irreducible characters of symmetric groups by border-strip
//! recursion, memoized and optionally backed by a persistent row cache.
//!
//! This is the computational bottleneck of the whole crate. Shapes are
//! encoded as beta-sets (first-column hook lengths) packed into a `u128`
//! bit set, so removing a border strip of length t is a single bead move
//! `b -> b - t` and candidate strips are enumerated in O(parts) per cycle
//! length instead of cell by cell. The memo is keyed on the pair of bit
//! encodings (remaining shape, remaining cycle-type suffix); suffixes are
//! shared across conjugacy classes, which is where the sub-problem reuse
//! at degree 30-39 comes from.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::cache::RowCache;
use crate::error::{Error, Result};
use crate::exec::map_slice;
use crate::partition::{partitions_of, Partition};

/// Largest supported degree. Two limits meet here: beta numbers must fit
/// the u128 bit set (d <= 127), and every character value must fit i128 in
/// the memo, which holds with a wide margin since |chi| <= sqrt(d!)
/// (about 1.1e31 at d = 48 versus i128::MAX at 1.7e38).
pub const MAX_DEGREE: u32 = 48;

/// Class-count threshold below which row loops stay sequential even on a
/// parallel engine; rayon dispatch costs more than these rows do.
pub(crate) const PARALLEL_CLASS_CUTOFF: usize = 1024;

/// One character row: exact values indexed by cycle type.
///
/// Keys are exactly `partitions_of(degree)`, so iteration order matches the
/// global enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVector {
    degree: u32,
    values: BTreeMap<Partition, BigInt>,
}

impl ClassVector {
    /// Builds a vector from an explicit map, validating that the keys are
    /// exactly the partitions of `degree`.
    pub fn from_map(degree: u32, values: BTreeMap<Partition, BigInt>) -> Result<Self> {
        let expected = partitions_of(degree);
        if values.len() != expected.len()
            || !expected.iter().all(|p| values.contains_key(p))
        {
            return Err(Error::Contract(format!(
                "class vector keys must be exactly the partitions of {degree}"
            )));
        }
        Ok(ClassVector { degree, values })
    }

    /// Zips values with `partitions_of(degree)` in enumeration order.
    pub(crate) fn from_enumeration(degree: u32, values: Vec<BigInt>) -> Self {
        let classes = partitions_of(degree);
        assert_eq!(classes.len(), values.len());
        ClassVector {
            degree,
            values: classes.into_iter().zip(values).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn value(&self, rho: &Partition) -> Option<&BigInt> {
        self.values.get(rho)
    }

    /// All (cycle type, value) pairs in enumeration order.
    pub fn entries(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.values.iter()
    }

    /// Values aligned with `partitions_of(degree)`.
    pub fn values_in_order(&self) -> impl Iterator<Item = &BigInt> {
        self.values.values()
    }
}

/// Beta-set encoding of a partition: bit `p + len - 1 - i` is set for the
/// i-th part (largest first). Canonical form has bit 0 clear; the empty
/// partition is 0.
fn beta_mask(parts: &[u32]) -> u128 {
    let len = parts.len() as u32;
    let mut mask = 0u128;
    for (i, &p) in parts.iter().enumerate() {
        mask |= 1u128 << (p + len - 1 - i as u32);
    }
    mask
}

/// Strips zero-part beads so equal shapes always get equal masks.
fn canonical(mut mask: u128) -> u128 {
    while mask & 1 == 1 {
        mask >>= 1;
    }
    mask
}

type MemoKey = (u128, u128);

/// Memo and row stores. With the `parallel` feature these are concurrent
/// maps with atomic read-or-insert semantics so one store can be shared
/// across worker threads; racing inserts recompute the same exact value,
/// so results do not depend on scheduling.
struct Memo {
    #[cfg(feature = "parallel")]
    map: dashmap::DashMap<MemoKey, i128>,
    #[cfg(not(feature = "parallel"))]
    map: std::cell::RefCell<std::collections::HashMap<MemoKey, i128>>,
}

impl Memo {
    fn new() -> Self {
        Memo {
            #[cfg(feature = "parallel")]
            map: dashmap::DashMap::new(),
            #[cfg(not(feature = "parallel"))]
            map: std::cell::RefCell::new(std::collections::HashMap::new()),
        }
    }

    #[cfg(feature = "parallel")]
    fn get(&self, key: &MemoKey) -> Option<i128> {
        self.map.get(key).map(|v| *v)
    }

    #[cfg(not(feature = "parallel"))]
    fn get(&self, key: &MemoKey) -> Option<i128> {
        self.map.borrow().get(key).copied()
    }

    #[cfg(feature = "parallel")]
    fn put(&self, key: MemoKey, value: i128) {
        self.map.insert(key, value);
    }

    #[cfg(not(feature = "parallel"))]
    fn put(&self, key: MemoKey, value: i128) {
        self.map.borrow_mut().insert(key, value);
    }

    fn len(&self) -> usize {
        #[cfg(feature = "parallel")]
        {
            self.map.len()
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.map.borrow().len()
        }
    }
}

struct RowStore {
    #[cfg(feature = "parallel")]
    map: dashmap::DashMap<Partition, Arc<ClassVector>>,
    #[cfg(not(feature = "parallel"))]
    map: std::cell::RefCell<std::collections::HashMap<Partition, Arc<ClassVector>>>,
}

impl RowStore {
    fn new() -> Self {
        RowStore {
            #[cfg(feature = "parallel")]
            map: dashmap::DashMap::new(),
            #[cfg(not(feature = "parallel"))]
            map: std::cell::RefCell::new(std::collections::HashMap::new()),
        }
    }

    #[cfg(feature = "parallel")]
    fn get(&self, key: &Partition) -> Option<Arc<ClassVector>> {
        self.map.get(key).map(|v| v.clone())
    }

    #[cfg(not(feature = "parallel"))]
    fn get(&self, key: &Partition) -> Option<Arc<ClassVector>> {
        self.map.borrow().get(key).cloned()
    }

    #[cfg(feature = "parallel")]
    fn put(&self, key: Partition, value: Arc<ClassVector>) {
        self.map.insert(key, value);
    }

    #[cfg(not(feature = "parallel"))]
    fn put(&self, key: Partition, value: Arc<ClassVector>) {
        self.map.borrow_mut().insert(key, value);
    }
}

/// Character computation context: the border-strip memo, an in-memory row
/// store, and an optional persistent row cache.
///
/// One engine can be shared freely across degrees; memo keys are
/// self-describing, so sub-problems of a degree-36 row are reused by any
/// smaller computation. All methods are deterministic: caching (in-memory
/// or persistent) and thread scheduling never change a result.
pub struct CharEngine {
    memo: Memo,
    rows: RowStore,
    cache: Option<RowCache>,
    parallel: bool,
}

impl Default for CharEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl CharEngine {
    pub fn new() -> Self {
        CharEngine {
            memo: Memo::new(),
            rows: RowStore::new(),
            cache: None,
            parallel: true,
        }
    }

    /// An engine that keeps every loop on the calling thread. Used by the
    /// benchmarks as the baseline; with the `parallel` feature disabled,
    /// every engine behaves this way.
    pub fn sequential() -> Self {
        CharEngine {
            parallel: false,
            ..Self::new()
        }
    }

    /// Attaches a persistent row cache (write-through).
    pub fn with_cache(mut self, cache: RowCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn parallel_enabled(&self) -> bool {
        cfg!(feature = "parallel") && self.parallel
    }

    pub(crate) fn parallel_flag(&self) -> bool {
        self.parallel
    }

    /// Number of memoized border-strip sub-problems (diagnostics).
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// The exact character value of the irreducible indexed by `lambda` at
    /// the conjugacy class of cycle type `rho`.
    pub fn character_value(&self, lambda: &Partition, rho: &Partition) -> Result<BigInt> {
        let d = lambda.size();
        if d != rho.size() {
            return Err(Error::Contract(format!(
                "character_value needs |lambda| = |rho|, got {d} and {}",
                rho.size()
            )));
        }
        check_degree(d)?;
        Ok(BigInt::from(self.char_i128(lambda, rho.parts())))
    }

    /// One full character row over all cycle types of the degree.
    ///
    /// Consults the in-memory store and the persistent cache first; a cache
    /// problem is only ever a warning, never a wrong result.
    pub fn character_row(&self, lambda: &Partition) -> Result<Arc<ClassVector>> {
        let d = lambda.size();
        check_degree(d)?;
        if let Some(row) = self.rows.get(lambda) {
            return Ok(row);
        }
        if let Some(cache) = &self.cache {
            if let Some(row) = cache.load(lambda) {
                let row = Arc::new(row);
                self.rows.put(lambda.clone(), row.clone());
                return Ok(row);
            }
        }
        let classes = partitions_of(d);
        let parallel = self.parallel && classes.len() >= PARALLEL_CLASS_CUTOFF;
        let values = map_slice(parallel, &classes, |rho| {
            BigInt::from(self.char_i128(lambda, rho.parts()))
        });
        let row = ClassVector::from_enumeration(d, values);
        // The value at the identity class must be the hook-length dimension.
        let identity = Partition::column(d);
        if row.value(&identity) != Some(&lambda.irrep_dimension()) {
            return Err(Error::InternalConsistency(format!(
                "character row {lambda} disagrees with the hook-length dimension"
            )));
        }
        if let Some(cache) = &self.cache {
            cache.store(lambda, &row);
        }
        let row = Arc::new(row);
        self.rows.put(lambda.clone(), row.clone());
        Ok(row)
    }

    fn char_i128(&self, lambda: &Partition, rho_parts: &[u32]) -> i128 {
        let shape = beta_mask(lambda.parts());
        // chain[i] encodes the cycle-type suffix rho_parts[i..] as a
        // partition mask; it is the class-independent half of the memo key.
        let chain: Vec<u128> = (0..=rho_parts.len())
            .map(|i| beta_mask(&rho_parts[i..]))
            .collect();
        self.strip_rec(shape, rho_parts, &chain, 0)
    }

    fn strip_rec(&self, shape: u128, parts: &[u32], chain: &[u128], idx: usize) -> i128 {
        if idx == parts.len() {
            debug_assert_eq!(shape, 0, "sizes must be consumed exactly");
            return 1;
        }
        let key = (shape, chain[idx]);
        if let Some(v) = self.memo.get(&key) {
            return v;
        }
        let strip = parts[idx];
        let mut acc: i128 = 0;
        let mut beads = shape;
        while beads != 0 {
            let b = beads.trailing_zeros();
            beads &= beads - 1;
            if b < strip {
                continue;
            }
            let target = b - strip;
            if shape & (1u128 << target) != 0 {
                continue;
            }
            // Height of the strip = beads strictly between target and b.
            let between =
                shape & ((1u128 << b) - 1) & !((1u128 << (target + 1)) - 1);
            let sub = canonical(shape ^ (1u128 << b) ^ (1u128 << target));
            let v = self.strip_rec(sub, parts, chain, idx + 1);
            acc = if between.count_ones() % 2 == 1 {
                acc.checked_sub(v)
            } else {
                acc.checked_add(v)
            }
            .expect("character accumulator overflow");
        }
        self.memo.put(key, acc);
        acc
    }
}

fn check_degree(d: u32) -> Result<()> {
    if d > MAX_DEGREE {
        return Err(Error::Unsupported(format!(
            "degree {d} exceeds the supported maximum {MAX_DEGREE}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::parse_partition;
    use num_traits::{One, Zero};

    fn chi(lambda: &str, rho: &str) -> BigInt {
        let engine = CharEngine::new();
        engine
            .character_value(
                &parse_partition(lambda).unwrap(),
                &parse_partition(rho).unwrap(),
            )
            .unwrap()
    }

    #[test]
    fn trivial_character_is_one_everywhere() {
        for d in 1..=8u32 {
            let engine = CharEngine::new();
            let row = engine.character_row(&Partition::row(d)).unwrap();
            assert!(row.values_in_order().all(|v| v.is_one()));
        }
    }

    #[test]
    fn sign_character_matches_parity() {
        for d in 1..=8u32 {
            let engine = CharEngine::new();
            let row = engine.character_row(&Partition::column(d)).unwrap();
            for (rho, value) in row.entries() {
                let expect = if (d as usize - rho.len()).is_multiple_of(2) {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                assert_eq!(*value, expect, "sign at {rho}");
            }
        }
    }

    #[test]
    fn small_rows_match_hand_values() {
        // S_2
        assert_eq!(chi("2", "2"), BigInt::one());
        assert_eq!(chi("2", "1,1"), BigInt::one());
        assert_eq!(chi("1,1", "2"), -BigInt::one());
        // S_3 standard representation: permutation character minus one,
        // i.e. fixed points - 1 (brute-force oracle from permutation
        // matrices).
        let fixed_minus_one = [("3", 0i64 - 1), ("2,1", 1 - 1), ("1,1,1", 3 - 1)];
        for (rho, expect) in fixed_minus_one {
            assert_eq!(chi("2,1", rho), BigInt::from(expect), "std at {rho}");
        }
        // sign twist example from the hook-length oracle
        assert_eq!(chi("2^3", "1^6"), BigInt::from(5));
    }

    #[test]
    fn dimension_column_equals_hook_length_formula() {
        for d in 1..=12u32 {
            let engine = CharEngine::new();
            let identity = Partition::column(d);
            for lambda in partitions_of(d) {
                assert_eq!(
                    engine.character_value(&lambda, &identity).unwrap(),
                    lambda.irrep_dimension(),
                    "dimension of {lambda}"
                );
            }
        }
    }

    #[test]
    fn conjugate_twists_by_sign() {
        let engine = CharEngine::new();
        for d in 1..=10u32 {
            for lambda in partitions_of(d) {
                let conj = lambda.conjugate();
                for rho in partitions_of(d) {
                    let twist = if (d as usize - rho.len()).is_multiple_of(2) {
                        BigInt::one()
                    } else {
                        -BigInt::one()
                    };
                    assert_eq!(
                        engine.character_value(&conj, &rho).unwrap(),
                        twist * engine.character_value(&lambda, &rho).unwrap(),
                        "twist at {lambda}, {rho}"
                    );
                }
            }
        }
    }

    #[test]
    fn row_orthogonality() {
        let engine = CharEngine::new();
        for d in 1..=8u32 {
            let lambdas = partitions_of(d);
            let rows: Vec<_> = lambdas
                .iter()
                .map(|l| engine.character_row(l).unwrap())
                .collect();
            let classes = partitions_of(d);
            let weights: Vec<BigInt> =
                classes.iter().map(|rho| rho.class_size()).collect();
            let order = crate::arith::factorial(d);
            for (a, ra) in rows.iter().enumerate() {
                for (b, rb) in rows.iter().enumerate() {
                    let dot: BigInt = ra
                        .values_in_order()
                        .zip(rb.values_in_order())
                        .zip(&weights)
                        .map(|((x, y), w)| x * y * w)
                        .sum();
                    let expect = if a == b { order.clone() } else { BigInt::zero() };
                    assert_eq!(dot, expect, "rows {a},{b} at d={d}");
                }
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        let engine = CharEngine::new();
        for d in 1..=8u32 {
            let lambdas = partitions_of(d);
            let rows: Vec<_> = lambdas
                .iter()
                .map(|l| engine.character_row(l).unwrap())
                .collect();
            let classes = partitions_of(d);
            for rho in &classes {
                for sigma in &classes {
                    let dot: BigInt = rows
                        .iter()
                        .map(|r| r.value(rho).unwrap() * r.value(sigma).unwrap())
                        .sum();
                    let expect = if rho == sigma {
                        rho.z_order()
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(dot, expect, "columns {rho},{sigma} at d={d}");
                }
            }
        }
    }

    #[test]
    fn size_mismatch_is_a_contract_error() {
        let engine = CharEngine::new();
        let err = engine
            .character_value(
                &parse_partition("2,1").unwrap(),
                &parse_partition("2").unwrap(),
            )
            .unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn empty_partition_row() {
        let engine = CharEngine::new();
        let row = engine.character_row(&Partition::empty()).unwrap();
        assert_eq!(row.value(&Partition::empty()), Some(&BigInt::one()));
    }

    #[test]
    fn sequential_and_parallel_rows_agree() {
        let par = CharEngine::new();
        let seq = CharEngine::sequential();
        let lambda = parse_partition("4,3,2,1").unwrap();
        assert_eq!(
            *par.character_row(&lambda).unwrap(),
            *seq.character_row(&lambda).unwrap()
        );
    }
}
