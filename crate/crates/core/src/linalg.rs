//! Exact integer linear algebra: determinant, rank, kernel lattices and
//! Hermite normal form. Inputs and outputs are `i64`; intermediate values are
//! arbitrary precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i64>>;

fn big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn small(m: Vec<Vec<BigInt>>) -> Result<IntMatrix> {
    m.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::Overflow(x.to_string())))
                .collect()
        })
        .collect()
}

fn width(m: &[Vec<i64>]) -> usize {
    m.first().map_or(0, |r| r.len())
}

pub fn transpose(m: &[Vec<i64>]) -> IntMatrix {
    let w = width(m);
    (0..w).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<i64>]) -> Result<i64> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: width(m) });
    }
    if n == 0 {
        return Ok(1);
    }
    let mut a = big(m);
    let mut prev = BigInt::from(1);
    let mut sign = 1i64;
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(0);
        };
        if r != k {
            a.swap(r, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = prev * BigInt::from(sign);
    d.to_i64().ok_or_else(|| Error::Overflow(d.to_string()))
}

/// Row-echelon form by unimodular integer row operations on the first
/// `cols` columns; the remaining columns ride along. Returns the rank.
/// With `reduce`, entries above each pivot are brought into `[0, pivot)`.
fn echelon(a: &mut [Vec<BigInt>], cols: usize, reduce: bool) -> usize {
    let rows = a.len();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        loop {
            let best = (pr..rows)
                .filter(|&r| !a[r][c].is_zero())
                .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()));
            let Some(b) = best else { break };
            a.swap(pr, b);
            let mut done = true;
            for r in pr + 1..rows {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].div_floor(&a[pr][c]);
                let (head, tail) = a.split_at_mut(r);
                for (x, y) in tail[0].iter_mut().zip(&head[pr]) {
                    *x -= &f * y;
                }
                if !tail[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[pr][c].is_zero() {
            continue;
        }
        if a[pr][c].is_negative() {
            for x in a[pr].iter_mut() {
                *x = -&*x;
            }
        }
        if reduce {
            for r in 0..pr {
                let f = a[r][c].div_floor(&a[pr][c]);
                if f.is_zero() {
                    continue;
                }
                let (head, tail) = a.split_at_mut(pr);
                for (x, y) in head[r].iter_mut().zip(&tail[0]) {
                    *x -= &f * y;
                }
            }
        }
        pr += 1;
    }
    pr
}

/// Rank over ℚ.
pub fn rank(m: &[Vec<i64>]) -> usize {
    let mut a = big(m);
    let w = width(m);
    echelon(&mut a, w, false)
}

/// A ℤ-basis of `{x ∈ ℤⁿ : m x = 0}`, in Hermite normal form.
pub fn kernel_basis(m: &[Vec<i64>]) -> Result<IntMatrix> {
    let n = width(m);
    let rows = m.len();
    // Rows of [mᵀ | I]; after echelon on the mᵀ part, rows with a zero
    // mᵀ part carry a unimodular basis of the kernel.
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut r: Vec<BigInt> = (0..rows).map(|i| BigInt::from(m[i][j])).collect();
            r.extend((0..n).map(|k| BigInt::from(i64::from(k == j))));
            r
        })
        .collect();
    let rk = echelon(&mut a, rows, false);
    let basis: Vec<Vec<BigInt>> = a[rk..].iter().map(|r| r[rows..].to_vec()).collect();
    hnf_big(basis)
}

/// A ℤ-basis of `{y : yᵀ m = 0}`, the integer relations among the rows of `m`.
pub fn left_kernel_basis(m: &[Vec<i64>]) -> Result<IntMatrix> {
    if m.is_empty() {
        return Ok(Vec::new());
    }
    kernel_basis(&transpose(m))
}

fn hnf_big(mut a: Vec<Vec<BigInt>>) -> Result<IntMatrix> {
    let w = a.first().map_or(0, |r| r.len());
    let rk = echelon(&mut a, w, true);
    a.truncate(rk);
    small(a)
}

/// Hermite normal form of the lattice spanned by the rows (zero rows dropped).
pub fn hnf(rows: &[Vec<i64>]) -> Result<IntMatrix> {
    hnf_big(big(rows))
}

/// Whether two row sets span the same ℤ-lattice.
pub fn same_lattice(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<bool> {
    Ok(hnf(a)? == hnf(b)?)
}

/// `m · v`.
pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// `vᵀ · m`.
pub fn vec_mat(v: &[i64], m: &[Vec<i64>]) -> Vec<i64> {
    let w = width(m);
    (0..w).map(|j| v.iter().zip(m).map(|(a, r)| a * r[j]).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn identity(k: usize) -> IntMatrix {
        (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect()
    }

    #[test]
    fn identity_facts() {
        for k in 1..5 {
            let id = identity(k);
            assert_eq!(det(&id).unwrap(), 1);
            assert_eq!(rank(&id), k);
            assert!(kernel_basis(&id).unwrap().is_empty());
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&[vec![2, -1], vec![-1, 2]]).unwrap(), 3);
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]).unwrap(), -1);
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]).unwrap(), 0);
        assert!(matches!(det(&[vec![1, 2]]), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn kernel_of_a_rank_one_matrix() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&m, v).iter().all(|x| *x == 0));
        }
        assert!(same_lattice(&k, &[vec![2, -1, 0], vec![3, 0, -1]]).unwrap());
        assert!(!same_lattice(&k, &[vec![2, -1, 0], vec![6, 0, -2]]).unwrap());
    }

    #[test]
    fn left_kernel() {
        let m = vec![vec![1, 1], vec![2, 2], vec![0, 1]];
        let k = left_kernel_basis(&m).unwrap();
        assert_eq!(k, vec![vec![2, -1, 0]]);
        assert_eq!(vec_mat(&k[0], &m), vec![0, 0]);
    }

    #[test]
    fn hnf_shape() {
        let h = hnf(&[vec![4, 6], vec![6, 9], vec![0, 0]]).unwrap();
        assert_eq!(h, vec![vec![2, 3]]);
        let h = hnf(&[vec![3, 1], vec![0, 2]]).unwrap();
        assert_eq!(h, vec![vec![3, 1], vec![0, 2]]);
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
    }

    proptest! {
        #[test]
        fn kernel_is_annihilated_and_has_full_rank(m in small_matrix()) {
            let k = kernel_basis(&m).unwrap();
            for v in &k {
                prop_assert!(mat_vec(&m, v).iter().all(|x| *x == 0));
            }
            prop_assert_eq!(k.len() + rank(&m), width(&m));
            prop_assert_eq!(rank(&k), k.len());
        }

        #[test]
        fn kernel_is_saturated(m in small_matrix(), c in prop::collection::vec(-3i64..=3, 6)) {
            // Any kernel vector divided by its content is still in the returned lattice.
            let k = kernel_basis(&m).unwrap();
            let x = vec_mat(&c[..k.len()], &k);
            let g = x.iter().fold(0i64, |g, v| g.gcd(v));
            if g > 1 {
                let y: Vec<i64> = x.iter().map(|v| v / g).collect();
                let mut with_y = k.clone();
                with_y.push(y);
                prop_assert!(same_lattice(&k, &with_y).unwrap());
            }
        }

        #[test]
        fn det_matches_rank(m in (1usize..5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-3i64..=3, n), n))) {
            let d = det(&m).unwrap();
            prop_assert_eq!(d == 0, rank(&m) < m.len());
            prop_assert_eq!(det(&transpose(&m)).unwrap(), d);
        }
    }
}
