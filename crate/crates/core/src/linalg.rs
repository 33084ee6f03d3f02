//! Dense matrices over exact rationals: multiplication, determinant, and
//! inverse by rational Gaussian elimination. No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Parses "p/q" or a plain decimal integer; the denominator must be
/// positive.
pub fn parse_rational(text: &str) -> Result<Rat> {
    let text = text.trim();
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = num_text
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {text:?}")))?;
    let denom: BigInt = den_text
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {text:?}")))?;
    if !denom.is_positive() {
        return Err(Error::Parse(format!(
            "rational denominator must be positive in {text:?}"
        )));
    }
    Ok(Rat::new(numer, denom))
}

/// A row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// A transvection I + c*E_{ij} with i != j; these have determinant 1.
    pub fn transvection(n: usize, i: usize, j: usize, c: i64) -> Self {
        assert!(i != j && i < n && j < n, "transvection needs i != j < n");
        let mut m = Self::identity(n);
        m.set(i, j, Rat::from_integer(BigInt::from(c)));
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Contract("ragged matrix rows".into()));
        }
        Ok(RatMatrix {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| Rat::from_integer(BigInt::from(v)))
                        .collect()
                })
                .collect(),
        )
        .expect("literal rows are rectangular")
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Exact determinant by Gaussian elimination with pivot search.
    pub fn determinant(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        let mut work = self.data.clone();
        let at = |w: &Vec<Rat>, i: usize, j: usize| w[i * n + j].clone();
        let mut sign_flip = false;
        let mut det = Rat::one();
        for col in 0..n {
            let Some(pivot_row) =
                (col..n).find(|&r| !work[r * n + col].is_zero())
            else {
                return Rat::zero();
            };
            if pivot_row != col {
                for j in 0..n {
                    work.swap(pivot_row * n + j, col * n + j);
                }
                sign_flip = !sign_flip;
            }
            let pivot = at(&work, col, col);
            det *= &pivot;
            for r in (col + 1)..n {
                let factor = at(&work, r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let delta = &factor * &work[col * n + j];
                    work[r * n + j] -= delta;
                }
            }
        }
        if sign_flip {
            -det
        } else {
            det
        }
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols, "inverse needs a square matrix");
        let n = self.rows;
        let mut work = self.clone();
        let mut out = RatMatrix::identity(n);
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !work.get(r, col).is_zero())?;
            if pivot_row != col {
                for j in 0..n {
                    let a = work.get(pivot_row, j).clone();
                    let b = work.get(col, j).clone();
                    work.set(pivot_row, j, b);
                    work.set(col, j, a);
                    let a = out.get(pivot_row, j).clone();
                    let b = out.get(col, j).clone();
                    out.set(pivot_row, j, b);
                    out.set(col, j, a);
                }
            }
            let pivot = work.get(col, col).clone();
            for j in 0..n {
                let w = work.get(col, j) / &pivot;
                work.set(col, j, w);
                let o = out.get(col, j) / &pivot;
                out.set(col, j, o);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = work.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let w = work.get(r, j) - &factor * work.get(col, j);
                    work.set(r, j, w);
                    let o = out.get(r, j) - &factor * out.get(col, j);
                    out.set(r, j, o);
                }
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("5").unwrap(), Rat::from_integer(5.into()));
        assert_eq!(
            parse_rational("-3/6").unwrap(),
            Rat::new(BigInt::from(-1), BigInt::from(2))
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn determinant_small_cases() {
        let m = RatMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.determinant(), Rat::from_integer(BigInt::from(-2)));
        let singular = RatMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(singular.determinant().is_zero());
        // Needs a row swap to find the pivot.
        let swapped = RatMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(swapped.determinant(), Rat::from_integer(BigInt::from(-1)));
        assert_eq!(RatMatrix::identity(5).determinant(), Rat::one());
    }

    #[test]
    fn determinant_matches_cofactor_on_random_integers() {
        fn cofactor_det(m: &RatMatrix) -> Rat {
            let n = m.n_rows();
            if n == 0 {
                return Rat::one();
            }
            let mut acc = Rat::zero();
            for j in 0..n {
                if m.get(0, j).is_zero() {
                    continue;
                }
                let mut sub = RatMatrix::zeros(n - 1, n - 1);
                for r in 1..n {
                    let mut cc = 0;
                    for c in 0..n {
                        if c == j {
                            continue;
                        }
                        sub.set(r - 1, cc, m.get(r, c).clone());
                        cc += 1;
                    }
                }
                let term = m.get(0, j) * cofactor_det(&sub);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=5usize {
            for _ in 0..4 {
                let mut m = RatMatrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        m.set(i, j, Rat::from_integer(rng.gen_range(-4i64..=4).into()));
                    }
                }
                assert_eq!(m.determinant(), cofactor_det(&m));
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_i64_rows(&[&[2, 1, 0], &[1, -1, 3], &[0, 2, 5]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(3));
        assert_eq!(inv.mul(&m), RatMatrix::identity(3));
        let singular = RatMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn transvections_are_unimodular() {
        for (i, j, c) in [(0usize, 1usize, 3i64), (2, 0, -2), (1, 2, 1)] {
            let t = RatMatrix::transvection(3, i, j, c);
            assert_eq!(t.determinant(), Rat::one());
        }
    }
}
