//! Exact rational linear algebra.
//!
//! Everything here works over arbitrary-precision rationals; there is no
//! floating point anywhere, so solving a nonsingular system is exact and a
//! zero determinant means singular, not "nearly singular".

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Exact rational from an integer.
pub fn rational(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {found}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        found: usize,
    },
    #[error("matrix has {rows} rows but the vector has {len} entries")]
    DimensionMismatch { rows: usize, len: usize },
    #[error("matrix is singular")]
    Singular,
}

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        RationalMatrix { rows, cols, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                rows: self.cols,
                len: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &x[j])
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect())
    }
}

/// Coefficient matrix tying a graph's cut-size spectrum to the counts of its
/// stretched copies: row `l` (1-based), column `k` (1-based) holds `l^k`.
///
/// The matrix is a Vandermonde matrix with distinct positive nodes scaled by
/// a nonzero diagonal, hence nonsingular for every `m >= 1`.
pub fn build_stretch_system(m: usize) -> RationalMatrix {
    RationalMatrix::from_fn(m, m, |i, j| {
        let l = BigInt::from(i + 1);
        Rational::from_integer(l.pow((j + 1) as u32))
    })
}

/// Solve `a * x = y` exactly by Gaussian elimination.
///
/// Pivots on the first nonzero entry in each column; with exact arithmetic
/// there is no stability concern. The solution is checked by substitution
/// before it is returned.
pub fn gauss_solve_exact(a: &RationalMatrix, y: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
    let n = a.rows;
    if a.rows != a.cols {
        return Err(LinalgError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if y.len() != n {
        return Err(LinalgError::DimensionMismatch { rows: n, len: y.len() });
    }
    let mut m = a.clone();
    let mut rhs = y.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m.get(r, col).is_zero())
            .ok_or(LinalgError::Singular)?;
        if pivot != col {
            for j in 0..n {
                let tmp = m.get(pivot, j).clone();
                m.set(pivot, j, m.get(col, j).clone());
                m.set(col, j, tmp);
            }
            rhs.swap(pivot, col);
        }
        let inv = m.get(col, col).clone().recip();
        for row in col + 1..n {
            let factor = m.get(row, col) * &inv;
            if factor.is_zero() {
                continue;
            }
            for j in col..n {
                let updated = m.get(row, j) - &factor * m.get(col, j);
                m.set(row, j, updated);
            }
            rhs[row] = &rhs[row] - &factor * &rhs[col];
        }
    }
    let mut x = vec![Rational::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for j in row + 1..n {
            acc = acc - m.get(row, j) * &x[j];
        }
        x[row] = acc / m.get(row, row);
    }
    debug_assert_eq!(a.mul_vec(&x).expect("shape checked"), y);
    Ok(x)
}

/// Exact determinant.
///
/// Clears each row's denominators, runs fraction-free elimination on the
/// integer matrix, and divides the scaling back out at the end; intermediate
/// values stay as small as the algorithm allows.
pub fn determinant(a: &RationalMatrix) -> Result<Rational, LinalgError> {
    let n = a.rows;
    if a.rows != a.cols {
        return Err(LinalgError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let lcm = (0..n)
            .map(|j| a.get(i, j).denom().clone())
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        m.push(
            (0..n)
                .map(|j| {
                    let e = a.get(i, j);
                    e.numer() * (&lcm / e.denom())
                })
                .collect(),
        );
        scale *= lcm;
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!((&num % &prev).is_zero(), "fraction-free step must divide");
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Ok(Rational::new(sign * m[n - 1][n - 1].clone(), scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: usize, cols: usize, vals: &[i64]) -> RationalMatrix {
        RationalMatrix::new(rows, cols, vals.iter().map(|&v| rational(v)).collect()).unwrap()
    }

    fn vec_r(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&v| rational(v)).collect()
    }

    #[test]
    fn solve_identity() {
        let a = RationalMatrix::identity(3);
        let y = vec_r(&[5, -7, 2]);
        assert_eq!(gauss_solve_exact(&a, &y).unwrap(), y);
    }

    #[test]
    fn solve_small_system() {
        // x + y = 3, 2x + 4y = 12  =>  x = 0, y = 3
        let a = mat(2, 2, &[1, 1, 2, 4]);
        let x = gauss_solve_exact(&a, &vec_r(&[3, 12])).unwrap();
        assert_eq!(x, vec_r(&[0, 3]));
    }

    #[test]
    fn solve_needs_row_swap() {
        let a = mat(2, 2, &[0, 1, 1, 0]);
        let x = gauss_solve_exact(&a, &vec_r(&[4, 9])).unwrap();
        assert_eq!(x, vec_r(&[9, 4]));
    }

    #[test]
    fn solve_rejects_singular_and_bad_shapes() {
        let zero = mat(2, 2, &[0, 0, 0, 0]);
        assert_eq!(
            gauss_solve_exact(&zero, &vec_r(&[0, 0])).unwrap_err(),
            LinalgError::Singular
        );
        let rect = mat(2, 3, &[1, 0, 0, 0, 1, 0]);
        assert!(matches!(
            gauss_solve_exact(&rect, &vec_r(&[1, 2])).unwrap_err(),
            LinalgError::NotSquare { .. }
        ));
        let a = RationalMatrix::identity(2);
        assert!(matches!(
            gauss_solve_exact(&a, &vec_r(&[1])).unwrap_err(),
            LinalgError::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&mat(2, 2, &[1, 2, 3, 4])).unwrap(), rational(-2));
        assert_eq!(determinant(&RationalMatrix::identity(4)).unwrap(), rational(1));
        assert_eq!(determinant(&mat(2, 2, &[1, 2, 2, 4])).unwrap(), rational(0));
        assert_eq!(determinant(&mat(1, 1, &[7])).unwrap(), rational(7));
        // needs a row swap before the first elimination step
        assert_eq!(determinant(&mat(2, 2, &[0, 1, 1, 0])).unwrap(), rational(-1));
    }

    #[test]
    fn determinant_handles_fractions() {
        let a = RationalMatrix::new(
            2,
            2,
            vec![
                Rational::new(BigInt::from(1), BigInt::from(2)),
                rational(1),
                rational(1),
                Rational::new(BigInt::from(2), BigInt::from(3)),
            ],
        )
        .unwrap();
        // 1/2 * 2/3 - 1 = -2/3
        assert_eq!(
            determinant(&a).unwrap(),
            Rational::new(BigInt::from(-2), BigInt::from(3))
        );
    }

    #[test]
    fn stretch_system_shape_and_entries() {
        let a = build_stretch_system(3);
        assert_eq!((a.rows(), a.cols()), (3, 3));
        // row l=2: 2^1, 2^2, 2^3
        assert_eq!(a.get(1, 0), &rational(2));
        assert_eq!(a.get(1, 1), &rational(4));
        assert_eq!(a.get(1, 2), &rational(8));
    }

    #[test]
    fn stretch_system_is_nonsingular() {
        for m in 1..=12 {
            let det = determinant(&build_stretch_system(m)).unwrap();
            assert!(!det.is_zero(), "m = {m}");
        }
        // closed form for small m: det = m! * superfactorial(m-1)
        assert_eq!(determinant(&build_stretch_system(2)).unwrap(), rational(2));
        assert_eq!(determinant(&build_stretch_system(3)).unwrap(), rational(12));
    }

    fn cofactor_det(a: &RationalMatrix) -> Rational {
        let n = a.rows();
        if n == 0 {
            return Rational::one();
        }
        if n == 1 {
            return a.get(0, 0).clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let minor = RationalMatrix::from_fn(n - 1, n - 1, |r, c| {
                a.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = a.get(0, j) * cofactor_det(&minor);
            if j % 2 == 0 {
                acc = acc + term;
            } else {
                acc = acc - term;
            }
        }
        acc
    }

    proptest! {
        #[test]
        fn determinant_matches_cofactor_expansion(vals in proptest::collection::vec(-6i64..=6, 16)) {
            let a = mat(4, 4, &vals);
            prop_assert_eq!(determinant(&a).unwrap(), cofactor_det(&a));
        }

        #[test]
        fn solve_recovers_planted_solution(
            vals in proptest::collection::vec(-5i64..=5, 9),
            sol in proptest::collection::vec(-9i64..=9, 3),
        ) {
            let a = mat(3, 3, &vals);
            let x = vec_r(&sol);
            prop_assume!(!determinant(&a).unwrap().is_zero());
            let y = a.mul_vec(&x).unwrap();
            prop_assert_eq!(gauss_solve_exact(&a, &y).unwrap(), x);
        }
    }
}
