//! Exact phase-one simplex, used only to certify pointed kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntMat;

/// Finds an integer vector `y` with `yᵀA ≥ 1` componentwise, i.e. a
/// strictly positive grading in the row span of `A`. Such a `y` exists
/// exactly when `ker(A) ∩ Nⁿ = {0}`.
pub fn positive_row_combination(a: &IntMat) -> Option<Vec<BigInt>> {
    let (m, n) = (a.rows(), a.cols());
    if n == 0 {
        return Some(vec![BigInt::zero(); m]);
    }
    // variables: p (m), q (m), slack s (n), artificial r (n)
    // constraints: Aᵀp − Aᵀq − s + r = 1
    let nv = 2 * m + 2 * n;
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut row = vec![BigRational::zero(); nv + 1];
        for i in 0..m {
            let v = BigRational::from_integer(a[(i, j)].clone());
            row[m + i] = -v.clone();
            row[i] = v;
        }
        row[2 * m + j] = -BigRational::one();
        row[2 * m + n + j] = BigRational::one();
        row[nv] = BigRational::one();
        tab.push(row);
    }
    let mut basis: Vec<usize> = (0..n).map(|j| 2 * m + n + j).collect();
    // objective row: minimize sum of artificials, stored as reduced costs
    let mut obj = vec![BigRational::zero(); nv + 1];
    for row in &tab {
        for (k, x) in row.iter().enumerate() {
            obj[k] -= x;
        }
    }
    for j in 0..n {
        obj[2 * m + n + j] = BigRational::zero();
    }
    loop {
        // Bland: smallest index with negative reduced cost
        let Some(enter) = (0..nv).find(|&k| obj[k].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (r, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[nv] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (lr, _) = leave?; // unbounded cannot happen in phase one
        let piv = tab[lr][enter].clone();
        for x in tab[lr].iter_mut() {
            *x /= &piv;
        }
        let pivot_row = tab[lr].clone();
        for (r, row) in tab.iter_mut().enumerate() {
            if r != lr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        basis[lr] = enter;
    }
    if !obj[nv].is_zero() {
        return None;
    }
    let mut y = vec![BigRational::zero(); m];
    for (r, &b) in basis.iter().enumerate() {
        if b < m {
            y[b] += &tab[r][nv];
        } else if b < 2 * m {
            y[b - m] -= &tab[r][nv];
        }
    }
    let lcm = y.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let y: Vec<BigInt> = y.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    debug_assert!((0..n).all(|j| (0..m).map(|i| &y[i] * &a[(i, j)]).sum::<BigInt>().is_positive()));
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grading(a: &IntMat, y: &[BigInt]) -> Vec<BigInt> {
        a.transpose().mul_vec(y).unwrap()
    }

    #[test]
    fn finds_positive_grading() {
        for a in [
            IntMat::from_rows(&[[4, 5, 6, 7]]),
            IntMat::from_rows(&[[1, 0, -1], [0, 1, 2]]),
            IntMat::from_rows(&[[1, 1], [0, 1]]),
        ] {
            let y = positive_row_combination(&a).expect("pointed");
            assert!(grading(&a, &y).iter().all(|w| w.is_positive()), "{a:?}");
        }
    }

    #[test]
    fn detects_nonpointed() {
        // (1, 1) lies in the kernel of (1 -1)
        assert!(positive_row_combination(&IntMat::from_rows(&[[1, -1]])).is_none());
        assert!(positive_row_combination(&IntMat::from_rows(&[[1, -1], [0, 0]])).is_none());
        assert!(positive_row_combination(&IntMat::from_rows(&[[2, -3]])).is_none());
        assert!(positive_row_combination(&IntMat::from_rows(&[[1, 0, 0], [0, 1, -1]])).is_none());
    }
}
