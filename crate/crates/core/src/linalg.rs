//! Exact linear algebra over the rationals via fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row echelon form computed by Bareiss elimination on an integer matrix.
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

/// Clear denominators row by row; the row space is unchanged.
pub fn integer_rows(m: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination. Pivot columns are taken left to right
/// and the first row with a nonzero entry is used as pivot, so the result is
/// deterministic.
pub fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in bottom.iter_mut() {
            if row[c].is_zero() {
                for j in c + 1..cols {
                    row[j] = (&prow[c] * &row[j]) / &prev;
                }
            } else {
                for j in c + 1..cols {
                    row[j] = (&prow[c] * &row[j] - &row[c] * &prow[j]) / &prev;
                }
                row[c] = BigInt::zero();
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon {
        rows: a,
        pivots,
        cols,
    }
}

pub fn rank(m: &[Vec<BigRational>], cols: usize) -> usize {
    bareiss(integer_rows(m), cols).pivots.len()
}

/// A nonzero kernel vector, or `None` when the kernel is trivial.
///
/// The lexicographically first free column is set to 1, the other free
/// columns to 0, and the vector is scaled so its first nonzero entry is 1.
pub fn kernel_vector(m: &[Vec<BigRational>], cols: usize) -> Option<Vec<BigRational>> {
    let ech = bareiss(integer_rows(m), cols);
    let free = (0..cols).find(|c| !ech.pivots.contains(c))?;
    let mut x = vec![BigRational::zero(); cols];
    x[free] = BigRational::one();
    for (r, &pc) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[r];
        let mut s = BigRational::zero();
        for j in pc + 1..cols {
            if !row[j].is_zero() && !x[j].is_zero() {
                s += BigRational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[pc] = -s / BigRational::from_integer(row[pc].clone());
    }
    let lead = x.iter().find(|v| !v.is_zero()).cloned()?;
    Some(x.into_iter().map(|v| v / &lead).collect())
}

/// Determinant by cofactor expansion; only meant as an independent check on
/// small matrices.
pub fn det_laplace(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigRational::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigRational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * det_laplace(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Whether `v` is a nonzero vector with `m v = 0`.
pub fn is_kernel_vector(m: &[Vec<BigRational>], v: &[BigRational]) -> bool {
    v.iter().any(|x| !x.is_zero())
        && m.iter().all(|row| {
            row.iter()
                .zip(v)
                .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
                .is_zero()
        })
}

/// Largest absolute entry, used to report coefficient sizes.
pub fn max_abs(v: &[BigRational]) -> BigRational {
    v.iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn mat(rows: &[&[(i64, i64)]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&(p, d)| q(p, d)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = mat(&[
            &[(1, 1), (2, 1), (3, 1)],
            &[(2, 1), (4, 1), (6, 1)],
            &[(1, 2), (0, 1), (1, 1)],
        ]);
        assert_eq!(rank(&m, 3), 2);
        let v = kernel_vector(&m, 3).unwrap();
        assert!(is_kernel_vector(&m, &v));
        assert_eq!(v[0], q(1, 1));
        let id = mat(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]);
        assert!(kernel_vector(&id, 2).is_none());
    }

    #[test]
    fn column_skipping_keeps_divisions_exact() {
        let m = mat(&[
            &[(0, 1), (2, 1), (1, 1), (5, 1)],
            &[(0, 1), (4, 1), (3, 1), (1, 1)],
            &[(0, 1), (6, 1), (4, 1), (6, 1)],
        ]);
        assert_eq!(rank(&m, 4), 2);
        let v = kernel_vector(&m, 4).unwrap();
        assert!(is_kernel_vector(&m, &v));
        // first free column is 0
        assert_eq!(v, vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
    }

    #[test]
    fn determinant_matches_rank() {
        let m = mat(&[
            &[(1, 2), (1, 3), (1, 1)],
            &[(2, 1), (1, 1), (0, 1)],
            &[(1, 1), (1, 5), (3, 1)],
        ]);
        let d = det_laplace(&m);
        assert!(!d.is_zero());
        assert_eq!(rank(&m, 3), 3);
    }
}
