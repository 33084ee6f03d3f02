//! Exact evaluation of the explicit invariants of matrix tuples under the
//! left-right SL x SL action: the degree-n coefficients of the fundamental
//! determinant polynomial, the degree-6 block invariants g_{i,j,k}, the
//! stacked-column invariant f, exact invariance checking along random
//! special-linear orbits, and the degree <= 6 null-cone membership test
//! for n = 3.
//!
//! Everything is exact rational arithmetic: invariance and vanishing are
//! equality statements, so there is no tolerance anywhere.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{parse_rational, Rat, RatMatrix};

/// Number of transvection factors in each random special-linear sample.
pub const TRANSVECTION_LENGTH: u32 = 20;

/// An m-tuple of n x n matrices with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixTuple {
    n: usize,
    m: usize,
    matrices: Vec<RatMatrix>,
}

impl MatrixTuple {
    pub fn new(n: usize, m: usize, matrices: Vec<RatMatrix>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Contract("matrix tuples need n, m >= 1".into()));
        }
        if matrices.len() != m {
            return Err(Error::Contract(format!(
                "expected {m} matrices, got {}",
                matrices.len()
            )));
        }
        for (p, mat) in matrices.iter().enumerate() {
            if mat.n_rows() != n || mat.n_cols() != n {
                return Err(Error::Contract(format!(
                    "matrix {p} is {}x{}, expected {n}x{n}",
                    mat.n_rows(),
                    mat.n_cols()
                )));
            }
        }
        Ok(MatrixTuple { n, m, matrices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn matrix(&self, p: usize) -> &RatMatrix {
        &self.matrices[p]
    }

    pub fn matrices(&self) -> &[RatMatrix] {
        &self.matrices
    }

    /// Parses the JSON tuple format: `{"n": 3, "m": 2, "matrices": [...]}`
    /// with entries as decimal-integer or "p/q" strings (q > 0).
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            m: usize,
            matrices: Vec<Vec<Vec<EntryRepr>>>,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum EntryRepr {
            Text(String),
            Int(i64),
        }
        let repr: Repr = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("bad matrix tuple JSON: {e}")))?;
        let mut matrices = Vec::with_capacity(repr.matrices.len());
        for (p, rows) in repr.matrices.iter().enumerate() {
            let mut converted = Vec::with_capacity(rows.len());
            for (r, row) in rows.iter().enumerate() {
                let mut out = Vec::with_capacity(row.len());
                for (c, entry) in row.iter().enumerate() {
                    let value = match entry {
                        EntryRepr::Int(v) => Rat::from_integer(BigInt::from(*v)),
                        EntryRepr::Text(t) => parse_rational(t).map_err(|e| {
                            Error::Parse(format!(
                                "matrix {p}, row {r}, column {c}: {e}"
                            ))
                        })?,
                    };
                    out.push(value);
                }
                converted.push(out);
            }
            matrices.push(RatMatrix::from_rows(converted)?);
        }
        MatrixTuple::new(repr.n, repr.m, matrices)
    }

    /// Serializes to the same JSON format, all entries as strings.
    pub fn to_json(&self) -> String {
        let matrices: Vec<Vec<Vec<String>>> = self
            .matrices
            .iter()
            .map(|mat| {
                (0..mat.n_rows())
                    .map(|i| {
                        (0..mat.n_cols())
                            .map(|j| mat.get(i, j).to_string())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "m": self.m,
            "matrices": matrices,
        })
        .to_string()
    }
}

/// A homogeneous polynomial in the m block variables: exponent vectors of
/// length m summing to the degree, zero coefficients omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialInT {
    num_vars: usize,
    degree: u32,
    coefficients: BTreeMap<Vec<u32>, Rat>,
}

impl PolynomialInT {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// The coefficient at an exponent vector; zero when absent.
    pub fn coefficient(&self, exponent: &[u32]) -> Rat {
        self.coefficients
            .get(exponent)
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn coefficients(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.coefficients
    }
}

/// Sparse multivariate scratch polynomial used by the determinant
/// expansion; exponent vectors all have length m.
#[derive(Clone, Debug, Default)]
struct MPoly {
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    fn zero() -> Self {
        MPoly::default()
    }

    fn one(num_vars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; num_vars], Rat::one());
        MPoly { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exponent: Vec<u32>, coefficient: Rat) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coefficient;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coefficient);
            }
        }
    }

    fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exponent: Vec<u32> =
                    ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exponent, ca * cb);
            }
        }
        out
    }

    fn add_assign(&mut self, other: MPoly, negate: bool) {
        for (e, c) in other.terms {
            self.add_term(e, if negate { -c } else { c });
        }
    }
}

/// The fundamental determinant polynomial det(sum_p t_p X_p), expanded
/// symbolically; its coefficients are the degree-n invariants and span
/// the degree-n piece of the invariant ring.
pub fn fundamental_polynomial(tuple: &MatrixTuple) -> PolynomialInT {
    let n = tuple.n();
    let m = tuple.m();
    // Entry (i, j) is the degree-1 polynomial sum_p t_p * X_p[i][j].
    let entries: Vec<Vec<MPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut entry = MPoly::zero();
                    for p in 0..m {
                        let value = tuple.matrix(p).get(i, j);
                        if !value.is_zero() {
                            let mut exponent = vec![0u32; m];
                            exponent[p] = 1;
                            entry.add_term(exponent, value.clone());
                        }
                    }
                    entry
                })
                .collect()
        })
        .collect();
    let det = mpoly_det(&entries, m);
    debug_assert!(det
        .terms
        .keys()
        .all(|e| e.iter().sum::<u32>() == n as u32));
    PolynomialInT {
        num_vars: m,
        degree: n as u32,
        coefficients: det.terms,
    }
}

fn mpoly_det(entries: &[Vec<MPoly>], num_vars: usize) -> MPoly {
    fn expand(
        entries: &[Vec<MPoly>],
        num_vars: usize,
        row: usize,
        cols: &[usize],
    ) -> MPoly {
        if cols.is_empty() {
            return MPoly::one(num_vars);
        }
        let mut acc = MPoly::zero();
        for (idx, &col) in cols.iter().enumerate() {
            let entry = &entries[row][col];
            if entry.is_zero() {
                continue;
            }
            let remaining: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&c| c != col)
                .collect();
            let sub = expand(entries, num_vars, row + 1, &remaining);
            acc.add_assign(entry.mul(&sub), idx % 2 == 1);
        }
        acc
    }
    let n = entries.len();
    let cols: Vec<usize> = (0..n).collect();
    expand(entries, num_vars, 0, &cols)
}

/// Evaluates the determinant of the kn x kn block matrix whose (i, j)
/// block is sum_p t[i][j][p] * X_p, at explicit rational t-values.
pub fn chi_det(tuple: &MatrixTuple, k: usize, t: &[Vec<Vec<Rat>>]) -> Rat {
    assert!(k >= 1, "chi_det needs k >= 1");
    assert_eq!(t.len(), k, "t must be k x k x m");
    let n = tuple.n();
    let m = tuple.m();
    let mut big = RatMatrix::zeros(k * n, k * n);
    for (bi, row) in t.iter().enumerate() {
        assert_eq!(row.len(), k, "t must be k x k x m");
        for (bj, coeffs) in row.iter().enumerate() {
            assert_eq!(coeffs.len(), m, "t must be k x k x m");
            for (p, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mat = tuple.matrix(p);
                for i in 0..n {
                    for j in 0..n {
                        let cur =
                            big.get(bi * n + i, bj * n + j) + c * mat.get(i, j);
                        big.set(bi * n + i, bj * n + j, cur);
                    }
                }
            }
        }
    }
    big.determinant()
}

/// The degree-6 invariant det[[X_j, X_i], [X_i, X_k]] for n = 3, with
/// 1-based indices 1 <= i < j < k <= m.
pub fn g_invariant(tuple: &MatrixTuple, i: usize, j: usize, k: usize) -> Result<Rat> {
    if tuple.n() != 3 {
        return Err(Error::Unsupported(
            "g invariants are defined for n = 3 only".into(),
        ));
    }
    if !(1 <= i && i < j && j < k && k <= tuple.m()) {
        return Err(Error::Contract(format!(
            "g invariant needs 1 <= i < j < k <= m, got ({i},{j},{k}) with m = {}",
            tuple.m()
        )));
    }
    let mut big = RatMatrix::zeros(6, 6);
    place_block(&mut big, tuple.matrix(j - 1), 0, 0);
    place_block(&mut big, tuple.matrix(i - 1), 0, 3);
    place_block(&mut big, tuple.matrix(i - 1), 3, 0);
    place_block(&mut big, tuple.matrix(k - 1), 3, 3);
    Ok(big.determinant())
}

fn place_block(dst: &mut RatMatrix, src: &RatMatrix, row_off: usize, col_off: usize) {
    for i in 0..src.n_rows() {
        for j in 0..src.n_cols() {
            dst.set(row_off + i, col_off + j, src.get(i, j).clone());
        }
    }
}

/// The stacked-column invariant: determinant of the n^2 x n^2 matrix whose
/// p-th column is the column-major vectorization of X_p. Needs m = n^2.
pub fn f_stacked(tuple: &MatrixTuple) -> Result<Rat> {
    let n = tuple.n();
    if tuple.m() != n * n {
        return Err(Error::Contract(format!(
            "f_stacked needs m = n^2 = {}, got m = {}",
            n * n,
            tuple.m()
        )));
    }
    let mut big = RatMatrix::zeros(n * n, n * n);
    for p in 0..tuple.m() {
        let mat = tuple.matrix(p);
        for c in 0..n {
            for r in 0..n {
                big.set(c * n + r, p, mat.get(r, c).clone());
            }
        }
    }
    Ok(big.determinant())
}

/// A reproducible element of SL_n: the product of `length` random
/// transvections I + c*E_{ij} with i != j and c a nonzero integer in
/// [-3, 3]. Determinant exactly 1; length 0 gives the identity.
pub fn random_special_linear(n: usize, seed: u64, length: u32) -> RatMatrix {
    assert!(n >= 2, "SL_n sampling needs n >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = RatMatrix::identity(n);
    for _ in 0..length {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = loop {
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                break c;
            }
        };
        acc = acc.mul(&RatMatrix::transvection(n, i, j, c));
    }
    acc
}

/// The left-right action: X_p -> A * X_p * B^{-1}, with B inverted
/// exactly.
pub fn act(tuple: &MatrixTuple, a: &RatMatrix, b: &RatMatrix) -> Result<MatrixTuple> {
    let n = tuple.n();
    if a.n_rows() != n || a.n_cols() != n || b.n_rows() != n || b.n_cols() != n {
        return Err(Error::Contract(format!(
            "acting matrices must be {n}x{n}"
        )));
    }
    let b_inv = b
        .inverse()
        .ok_or_else(|| Error::Contract("singular B in the action".into()))?;
    let matrices = tuple
        .matrices()
        .iter()
        .map(|x| a.mul(x).mul(&b_inv))
        .collect();
    MatrixTuple::new(n, tuple.m(), matrices)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvarianceCheck {
    pub invariant: String,
    pub passed: bool,
    pub failed_trial: Option<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub n: usize,
    pub m: usize,
    pub trials: u32,
    pub seed: u64,
    pub all_passed: bool,
    pub checks: Vec<InvarianceCheck>,
}

/// Draws `trials` random pairs (A, B) from SL_n x SL_n and asserts exact
/// equality of every implemented invariant before and after the action.
/// A failure names the invariant and the trial; invariance is a theorem,
/// so any failure signals an implementation bug.
pub fn invariance_check(tuple: &MatrixTuple, trials: u32, seed: u64) -> Result<InvarianceReport> {
    if trials == 0 {
        return Err(Error::Contract("invariance_check needs trials >= 1".into()));
    }
    let n = tuple.n();
    let m = tuple.m();

    let base_fundamental = fundamental_polynomial(tuple);
    let g_triples: Vec<(usize, usize, usize)> = if n == 3 {
        triples(m)
    } else {
        Vec::new()
    };
    let base_g: Vec<Rat> = g_triples
        .iter()
        .map(|&(i, j, k)| g_invariant(tuple, i, j, k))
        .collect::<Result<_>>()?;
    let base_f = if m == n * n {
        Some(f_stacked(tuple)?)
    } else {
        None
    };

    // One slot per named invariant, recording the first failing trial.
    let mut fundamental_fail: Option<u32> = None;
    let mut coeff_fail: BTreeMap<Vec<u32>, Option<u32>> = base_fundamental
        .coefficients()
        .keys()
        .map(|e| (e.clone(), None))
        .collect();
    let mut g_fail: Vec<Option<u32>> = vec![None; g_triples.len()];
    let mut f_fail: Option<u32> = None;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 1..=trials {
        let a = random_special_linear(n, rng.gen(), TRANSVECTION_LENGTH);
        let b = random_special_linear(n, rng.gen(), TRANSVECTION_LENGTH);
        let moved = act(tuple, &a, &b)?;

        let moved_fundamental = fundamental_polynomial(&moved);
        if moved_fundamental != base_fundamental && fundamental_fail.is_none() {
            fundamental_fail = Some(trial);
        }
        for (exponent, slot) in coeff_fail.iter_mut() {
            if slot.is_none()
                && moved_fundamental.coefficient(exponent)
                    != base_fundamental.coefficient(exponent)
            {
                *slot = Some(trial);
            }
        }
        for (idx, &(i, j, k)) in g_triples.iter().enumerate() {
            if g_fail[idx].is_none()
                && g_invariant(&moved, i, j, k)? != base_g[idx]
            {
                g_fail[idx] = Some(trial);
            }
        }
        if let Some(base) = &base_f {
            if f_fail.is_none() && f_stacked(&moved)? != *base {
                f_fail = Some(trial);
            }
        }
    }

    let mut checks = Vec::new();
    checks.push(InvarianceCheck {
        invariant: "fundamental_polynomial".into(),
        passed: fundamental_fail.is_none(),
        failed_trial: fundamental_fail,
    });
    for (exponent, slot) in &coeff_fail {
        checks.push(InvarianceCheck {
            invariant: format!("det_coeff{exponent:?}"),
            passed: slot.is_none(),
            failed_trial: *slot,
        });
    }
    for (idx, &(i, j, k)) in g_triples.iter().enumerate() {
        checks.push(InvarianceCheck {
            invariant: format!("g[{i},{j},{k}]"),
            passed: g_fail[idx].is_none(),
            failed_trial: g_fail[idx],
        });
    }
    if base_f.is_some() {
        checks.push(InvarianceCheck {
            invariant: "f_stacked".into(),
            passed: f_fail.is_none(),
            failed_trial: f_fail,
        });
    }
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(InvarianceReport {
        n,
        m,
        trials,
        seed,
        all_passed,
        checks,
    })
}

fn triples(m: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in (i + 1)..=m {
            for k in (j + 1)..=m {
                out.push((i, j, k));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NullConeWitness {
    DetCoefficient {
        exponent: Vec<u32>,
        #[serde(with = "crate::serde_util::rational_string")]
        value: Rat,
    },
    GInvariant {
        i: usize,
        j: usize,
        k: usize,
        #[serde(with = "crate::serde_util::rational_string")]
        value: Rat,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NullConeVerdict {
    pub in_null_cone: bool,
    pub witness: Option<NullConeWitness>,
}

/// Null-cone membership for n = 3: the tuple is in the null cone exactly
/// when the fundamental polynomial vanishes identically and every
/// g_{i,j,k} vanishes. The full set of degree-3 coefficients is tested (a
/// superset of any minimal degree-3 defining set; it cuts the same
/// variety). A negative verdict carries a nonzero witness.
pub fn null_cone_test_3(tuple: &MatrixTuple) -> Result<NullConeVerdict> {
    if tuple.n() != 3 {
        return Err(Error::Unsupported(
            "the null-cone test is implemented for n = 3 only".into(),
        ));
    }
    let fundamental = fundamental_polynomial(tuple);
    if let Some((exponent, value)) = fundamental.coefficients().iter().next() {
        return Ok(NullConeVerdict {
            in_null_cone: false,
            witness: Some(NullConeWitness::DetCoefficient {
                exponent: exponent.clone(),
                value: value.clone(),
            }),
        });
    }
    for (i, j, k) in triples(tuple.m()) {
        let value = g_invariant(tuple, i, j, k)?;
        if !value.is_zero() {
            return Ok(NullConeVerdict {
                in_null_cone: false,
                witness: Some(NullConeWitness::GInvariant { i, j, k, value }),
            });
        }
    }
    Ok(NullConeVerdict {
        in_null_cone: true,
        witness: None,
    })
}
