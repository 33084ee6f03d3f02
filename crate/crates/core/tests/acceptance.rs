//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (run with `--nocapture` to see them) and asserting its wall-clock
//! budget. Budgets are generous; run with `--test-threads=1` for clean
//! timing on a loaded machine.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use matinv_core::arith::binomial;
use matinv_core::bounds::{bounds_table, lower_bound_witness, universal_upper_bound};
use matinv_core::graded::{graded_dim, graded_dim_fast, graded_dim_oracle};
use matinv_core::hilbert::{hilbert_numerator, series_expand, HilbertReport, PalindromeMode};
use matinv_core::invariant::{
    f_stacked, invariance_check, null_cone_test_3, MatrixTuple, NullConeWitness,
};
use matinv_core::kronecker::{kronecker_coefficient, kronecker_row};
use matinv_core::linalg::{Rat, RatMatrix};
use matinv_core::{parse_partition, partitions_of, CharEngine, Partition};

fn big(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

fn part(text: &str) -> Partition {
    parse_partition(text).unwrap()
}

fn finish(criterion: u32, what: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("criterion {criterion}: PASS — {what} ({elapsed:.2?}, budget {budget:.0?})");
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its {budget:?} budget: {elapsed:?}"
    );
}

fn assert_report(report: &HilbertReport, numerator: &[i64], r: u32) {
    assert_eq!(report.numerator, big(numerator), "numerator of R({},{})", report.n, report.m);
    assert_eq!(report.krull_dim, r, "denominator exponent of R({},{})", report.n, report.m);
}

#[test]
fn criterion_01_hilbert_numerator_3_3() {
    let started = Instant::now();
    let engine = CharEngine::new();
    let report = hilbert_numerator(&engine, 3, 3, PalindromeMode::Off).unwrap();
    // Off mode only returns Ok when the beyond-degree vanishing check passed.
    assert!(!report.assumed_palindrome);
    assert_report(&report, &[1, -1, 1], 11);
    finish(1, "R(3,3) numerator 1 - t + t^2 over (1-t)^11, fully verified", started, Duration::from_secs(1));
}

#[test]
fn criterion_02_hilbert_numerator_3_4() {
    let started = Instant::now();
    let engine = CharEngine::new();
    let report = hilbert_numerator(&engine, 3, 4, PalindromeMode::Off).unwrap();
    assert!(!report.assumed_palindrome);
    assert_report(&report, &[1, 0, 20, 20, 55, 20, 20, 0, 1], 20);
    finish(2, "R(3,4) numerator over (1-t)^20, fully verified", started, Duration::from_secs(30));
}

#[test]
fn criterion_03_hilbert_numerator_4_3() {
    let started = Instant::now();
    let engine = CharEngine::new();
    let report = hilbert_numerator(&engine, 4, 3, PalindromeMode::Off).unwrap();
    assert!(!report.assumed_palindrome);
    assert_eq!(report.krull_dim, 18);
    assert!(
        started.elapsed() < Duration::from_secs(120),
        "R(4,3) exceeded its 2 min budget"
    );
    let expected = big(&[1, -3, 9, 8, 9, -3, 1]);
    if report.numerator != expected {
        println!(
            "criterion 3: FAIL — computed R(4,3) numerator {:?}, reference list {:?}; \
             the reference midpoint +8 appears to be a sign error: three independent \
             routes (single-row class sum, full tensor-square decomposition, and a \
             character-free rank computation over the degree-12 determinantal spanning \
             set) all give dim R(4,3)_12 = 781, which forces -8; the +8 list would \
             require 797. The computed numerator also passes the beyond-degree \
             vanishing check and palindromy, which the reference list would fail.",
            report.numerator.iter().map(BigInt::to_string).collect::<Vec<_>>(),
            expected.iter().map(BigInt::to_string).collect::<Vec<_>>(),
        );
    } else {
        println!("criterion 3: PASS — R(4,3) numerator matches the reference list");
    }
    assert_eq!(report.numerator, expected, "R(4,3) numerator (see the printed analysis)");
}

#[test]
fn criterion_04_extended_targets_3_5_and_5_3() {
    let started = Instant::now();
    let engine = CharEngine::new();
    let report = hilbert_numerator(&engine, 3, 5, PalindromeMode::On).unwrap();
    assert_report(
        &report,
        &[1, 6, 141, 931, 4816, 13916, 27531, 33391, 27531, 13916, 4816, 931, 141, 6, 1],
        29,
    );
    let report = hilbert_numerator(&engine, 5, 3, PalindromeMode::On).unwrap();
    assert_report(
        &report,
        &[1, -6, 36, -70, 231, -189, 419, -189, 231, -70, 36, -6, 1],
        27,
    );
    finish(4, "R(3,5) and R(5,3) numerators (palindromy assumed)", started, Duration::from_secs(2 * 30 * 60));
}

/// Stretch targets, documented but not gating: run with
/// `cargo test -p matinv-core --test acceptance -- --ignored`.
#[test]
#[ignore = "stretch target beyond the gating set"]
fn stretch_hilbert_numerator_4_4() {
    let engine = CharEngine::new();
    let report = hilbert_numerator(&engine, 4, 4, PalindromeMode::On).unwrap();
    assert_report(
        &report,
        &[
            1, 1, 141, 981, 8534, 39193, 139348, 325823, 556368, 652716, 556368,
            325823, 139348, 39193, 8534, 981, 141, 1, 1,
        ],
        34,
    );
    println!("stretch: PASS — R(4,4) numerator over (1-t)^34");
}

#[test]
#[ignore = "stretch target beyond the gating set"]
fn stretch_hilbert_numerator_3_6() {
    let engine = CharEngine::new();
    let report = hilbert_numerator(&engine, 3, 6, PalindromeMode::On).unwrap();
    assert_report(
        &report,
        &[
            1, 18, 626, 10246, 114901, 830484, 4081260, 13763184, 32507115,
            54176230, 64224060, 54176230, 32507115, 13763184, 4081260, 830484,
            114901, 10246, 626, 18, 1,
        ],
        38,
    );
    println!("stretch: PASS — R(3,6) numerator over (1-t)^38");
}

#[test]
fn criterion_05_bounds_table() {
    let started = Instant::now();
    let rows = bounds_table(3).unwrap();
    let bounds: Vec<u64> = rows.iter().map(|r| r.bound).collect();
    assert_eq!(bounds, vec![3, 3, 9, 44, 92, 160, 219, 264, 309]);
    assert_eq!(universal_upper_bound(3).unwrap(), 309);
    finish(5, "upper-bound table m = 1..9 and universal bound 309", started, Duration::from_secs(1));
}

#[test]
fn criterion_06_first_graded_piece() {
    let started = Instant::now();
    let engine = CharEngine::new();
    for n in 2..=5u32 {
        for m in 1..=6u32 {
            assert_eq!(
                graded_dim(&engine, n, m, 1).unwrap(),
                binomial(u64::from(m + n - 1), u64::from(n)),
                "dim of the first graded piece at (n,m)=({n},{m})"
            );
        }
    }
    finish(6, "first graded piece is C(m+n-1, n) for n <= 5, m <= 6", started, Duration::from_secs(5));
}

#[test]
fn criterion_07_tensor_square_example() {
    let started = Instant::now();
    let engine = CharEngine::new();
    let rect = part("2^3");
    let row = kronecker_row(&engine, &rect, &rect).unwrap();
    let expected = [("6", 1i64), ("4,2", 1), ("2,2,2", 1), ("3,1,1,1", 1)];
    assert_eq!(row.len(), expected.len());
    for (nu, mult) in expected {
        assert_eq!(row.get(&part(nu)), Some(&BigInt::from(mult)), "multiplicity of {nu}");
    }
    finish(7, "tensor square of the 2x2x2 rectangle", started, Duration::from_secs(5));
}

#[test]
fn criterion_08_lower_bound_witness() {
    let started = Instant::now();
    let engine = CharEngine::new();
    let three = lower_bound_witness(&engine, 3).unwrap();
    let values: Vec<BigInt> = three.entries.iter().map(|e| e.coefficient.clone()).collect();
    assert_eq!(values, big(&[0, 0, 1]));
    assert!(three.verified);
    assert_eq!(three.value, 9);
    let two = lower_bound_witness(&engine, 2).unwrap();
    let values: Vec<BigInt> = two.entries.iter().map(|e| e.coefficient.clone()).collect();
    assert_eq!(values, big(&[0, 1]));
    assert!(two.verified);
    finish(8, "column multiplicities (0,0,1) at n=3 and (0,1) at n=2", started, Duration::from_secs(60));
}

#[test]
fn criterion_09_oracle_equivalence() {
    let started = Instant::now();
    let engine = CharEngine::new();
    let mut cases = 0;
    for n in 1..=3u32 {
        for m in 1..=4u32 {
            for k in 0..=(12 / n) {
                assert_eq!(
                    graded_dim_fast(&engine, n, m, k).unwrap(),
                    graded_dim_oracle(&engine, n, m, k).unwrap(),
                    "fast/oracle disagree at (n,m,k)=({n},{m},{k})"
                );
                cases += 1;
            }
        }
    }
    finish(
        9,
        &format!("fast and decomposition routes agree on {cases} cases (kn <= 12)"),
        started,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_10_small_m_closed_forms() {
    let started = Instant::now();
    let engine = CharEngine::new();
    for n in 1..=4u32 {
        let two = series_expand(&engine, n, 2, 5).unwrap();
        let expected: Vec<BigInt> = (0..=5u64)
            .map(|k| binomial(k + u64::from(n), u64::from(n)))
            .collect();
        assert_eq!(two, expected, "m=2 series at n={n}");
        let one = series_expand(&engine, n, 1, 5).unwrap();
        assert!(one.iter().all(|c| c.is_one()), "m=1 series at n={n}");
    }
    finish(10, "polynomial-ring series for m <= 2, n <= 4", started, Duration::from_secs(60));
}

fn random_rational_tuple(n: usize, m: usize, rng: &mut ChaCha8Rng) -> MatrixTuple {
    let matrices = (0..m)
        .map(|_| {
            let mut mat = RatMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let numer = rng.gen_range(-9i64..=9);
                    let denom = rng.gen_range(1i64..=4);
                    mat.set(i, j, Rat::new(numer.into(), denom.into()));
                }
            }
            mat
        })
        .collect();
    MatrixTuple::new(n, m, matrices).unwrap()
}

#[test]
fn criterion_11_invariance_exactness() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20240811);
    for round in 0..3u64 {
        let tuple = random_rational_tuple(3, 3, &mut rng);
        let report = invariance_check(&tuple, 5, 100 + round).unwrap();
        assert!(
            report.all_passed,
            "round {round} failing checks: {:?}",
            report.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
        );
    }
    // m = n^2 = 9 also exercises the stacked-column invariant.
    let tuple = random_rational_tuple(3, 9, &mut rng);
    let report = invariance_check(&tuple, 5, 999).unwrap();
    assert!(report.all_passed);
    assert!(report.checks.iter().any(|c| c.invariant == "f_stacked"));
    finish(
        11,
        "exact invariance of all coefficients, g's, and f over random orbits",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_12_null_cone_verdicts() {
    let started = Instant::now();
    let skew = MatrixTuple::new(
        3,
        3,
        vec![
            RatMatrix::from_i64_rows(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]),
            RatMatrix::from_i64_rows(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]),
            RatMatrix::from_i64_rows(&[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]),
        ],
    )
    .unwrap();
    let verdict = null_cone_test_3(&skew).unwrap();
    assert!(!verdict.in_null_cone);
    match verdict.witness {
        Some(NullConeWitness::GInvariant { i, j, k, ref value }) => {
            assert_eq!((i, j, k), (1, 2, 3));
            assert!(!value.is_zero());
        }
        ref other => panic!("expected a g witness for the skew triple, got {other:?}"),
    }

    let upper = MatrixTuple::new(
        3,
        3,
        vec![
            RatMatrix::from_i64_rows(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]),
            RatMatrix::from_i64_rows(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]),
            RatMatrix::from_i64_rows(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]),
        ],
    )
    .unwrap();
    assert!(null_cone_test_3(&upper).unwrap().in_null_cone);

    let spread = MatrixTuple::new(
        3,
        3,
        vec![
            RatMatrix::identity(3),
            RatMatrix::zeros(3, 3),
            RatMatrix::zeros(3, 3),
        ],
    )
    .unwrap();
    let verdict = null_cone_test_3(&spread).unwrap();
    assert!(!verdict.in_null_cone);
    match verdict.witness {
        Some(NullConeWitness::DetCoefficient { ref exponent, ref value }) => {
            assert_eq!(exponent, &vec![3, 0, 0]);
            assert_eq!(*value, Rat::one());
        }
        ref other => panic!("expected a coefficient witness, got {other:?}"),
    }

    // Standard basis in column-major order stacks to the identity.
    let mut matrices = Vec::new();
    for c in 0..3 {
        for r in 0..3 {
            let mut mat = RatMatrix::zeros(3, 3);
            mat.set(r, c, Rat::one());
            matrices.push(mat);
        }
    }
    let basis = MatrixTuple::new(3, 9, matrices).unwrap();
    let f = f_stacked(&basis).unwrap();
    assert_eq!(f.abs(), Rat::one());
    finish(12, "null-cone verdicts and the stacked-basis determinant", started, Duration::from_secs(5));
}

#[test]
fn criterion_13_property_suites() {
    let started = Instant::now();
    let engine = CharEngine::new();

    // Character orthogonality, d <= 8.
    for d in 1..=8u32 {
        let lambdas = partitions_of(d);
        let rows: Vec<_> = lambdas
            .iter()
            .map(|l| engine.character_row(l).unwrap())
            .collect();
        let classes = partitions_of(d);
        let order = matinv_core::arith::factorial(d);
        for (a, ra) in rows.iter().enumerate() {
            for (b, rb) in rows.iter().enumerate() {
                let dot: BigInt = classes
                    .iter()
                    .zip(ra.values_in_order().zip(rb.values_in_order()))
                    .map(|(rho, (x, y))| x * y * rho.class_size())
                    .sum();
                let expected = if a == b { order.clone() } else { BigInt::zero() };
                assert_eq!(dot, expected, "row orthogonality ({a},{b}) at d={d}");
            }
        }
        for rho in &classes {
            for sigma in &classes {
                let dot: BigInt = rows
                    .iter()
                    .map(|r| r.value(rho).unwrap() * r.value(sigma).unwrap())
                    .sum();
                let expected = if rho == sigma { rho.z_order() } else { BigInt::zero() };
                assert_eq!(dot, expected, "column orthogonality at d={d}");
            }
        }
    }

    // Kronecker permutation symmetry: exhaustive for d <= 6.
    for d in 1..=6u32 {
        let all = partitions_of(d);
        for a in &all {
            for b in &all {
                for c in &all {
                    let base = kronecker_coefficient(&engine, a, b, c).unwrap();
                    for (x, y, z) in
                        [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]
                    {
                        assert_eq!(
                            kronecker_coefficient(&engine, x, y, z).unwrap(),
                            base,
                            "permutation symmetry at ({a},{b},{c})"
                        );
                    }
                }
            }
        }
    }
    // And 50 random triples for d <= 9.
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let d = rng.gen_range(7u32..=9);
        let all = partitions_of(d);
        let pick = |rng: &mut ChaCha8Rng| all[rng.gen_range(0..all.len())].clone();
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let base = kronecker_coefficient(&engine, &a, &b, &c).unwrap();
        for (x, y, z) in [(&a, &c, &b), (&b, &a, &c), (&c, &b, &a)] {
            assert_eq!(
                kronecker_coefficient(&engine, x, y, z).unwrap(),
                base,
                "random symmetry at ({a},{b},{c})"
            );
        }
    }

    // Palindromy and the numerator-degree formula on every series the
    // suite computes.
    let cases = [
        (3u32, 3u32, PalindromeMode::Off),
        (3, 4, PalindromeMode::Off),
        (4, 3, PalindromeMode::Off),
        (3, 5, PalindromeMode::On),
        (5, 3, PalindromeMode::On),
    ];
    for (n, m, mode) in cases {
        let report = hilbert_numerator(&engine, n, m, mode).unwrap();
        assert!(report.palindromic, "palindromy at ({n},{m})");
        assert_eq!(
            report.numerator_degree,
            report.krull_dim - n * m,
            "degree formula at ({n},{m})"
        );
        assert_eq!(
            report.numerator.len() as u32,
            report.numerator_degree + 1
        );
        assert_eq!(report.numerator[0], BigInt::one());
        let at_one: BigInt = report.numerator.iter().sum();
        assert!(at_one > BigInt::zero(), "P(1) > 0 at ({n},{m})");
        // Round trip: expanding P/(1-t)^r reproduces every dimension that
        // entered the computation.
        let order = report.coefficients_used.len() as u32 - 1;
        assert_eq!(
            report.expand(order),
            report.coefficients_used,
            "expansion round trip at ({n},{m})"
        );
    }

    // Assumed and fully verified numerators agree where both run.
    for (n, m) in [(3u32, 4u32), (4, 3)] {
        let on = hilbert_numerator(&engine, n, m, PalindromeMode::On).unwrap();
        let off = hilbert_numerator(&engine, n, m, PalindromeMode::Off).unwrap();
        assert_eq!(on.numerator, off.numerator, "mode agreement at ({n},{m})");
    }
    finish(
        13,
        "orthogonality, Kronecker symmetry, palindromy and degree formula",
        started,
        Duration::from_secs(600),
    );
}
