//! Gauss-Jordan inversion over the rationals.

use num_traits::{One, Zero};

use super::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

/// Exact inverse, or `None` if the matrix is singular or not square.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return None;
    }
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                a[r][j] -= x;
                inv[r][j] -= y;
            }
        }
    }
    Some(inv)
}

pub fn multiply(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..k)
                .map(|j| {
                    a[i].iter().zip(b.iter()).map(|(x, row)| x * &row[j]).sum::<Rational>()
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn anti_diagonal_is_self_inverse() {
        let g = m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(inverse(&g).unwrap(), g);
    }

    #[test]
    fn general_inverse() {
        let g = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&g).unwrap();
        assert_eq!(multiply(&g, &inv), identity(2));
    }

    #[test]
    fn singular_is_none() {
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        assert!(inverse(&m(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]])).is_none());
    }
}
