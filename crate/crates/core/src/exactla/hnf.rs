//! Fraction-free elimination, Hermite and Smith forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntMat;

/// Extended gcd with a nonnegative gcd: returns `(g, x, y)` with `x*a + y*b = g`.
///
/// When `a` divides `b` the Bezout pair is `(sign(a), 0)`, which keeps
/// the combinations produced by left folds as sparse as possible.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if a.is_zero() {
        return (b.abs(), BigInt::zero(), b.signum());
    }
    if (b % a).is_zero() {
        return (a.abs(), BigInt::from(a.signum()), BigInt::zero());
    }
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Gcd of a slice (0 for an all-zero slice).
pub fn gcd_slice(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

// row_i <- x*row_p + y*row_i style unimodular 2x2 update on rows p and i
fn combine_rows(m: &mut IntMat, p: usize, i: usize, coef: [&BigInt; 4]) {
    let [a, b, c, d] = coef;
    for j in 0..m.cols() {
        let rp = &m[(p, j)];
        let ri = &m[(i, j)];
        if rp.is_zero() && ri.is_zero() {
            continue;
        }
        let np = a * rp + b * ri;
        let ni = c * rp + d * ri;
        m[(p, j)] = np;
        m[(i, j)] = ni;
    }
}

fn sub_row_multiple(m: &mut IntMat, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        if !m[(src, j)].is_zero() {
            let delta = q * &m[(src, j)];
            m[(target, j)] -= delta;
        }
    }
}

/// Brings the first `width` columns of `m` into row Hermite normal form by
/// unimodular row operations applied to whole rows. Returns the pivot columns.
///
/// Pivots are positive and, when `reduce` is set, entries above each pivot
/// are reduced into `[0, pivot)`, which makes the result unique for the row
/// lattice.
pub fn row_hermite_in_place(m: &mut IntMat, width: usize, reduce: bool) -> Vec<usize> {
    let rows = m.rows();
    let mut pivots = Vec::new();
    let mut p = 0;
    for col in 0..width {
        if p == rows {
            break;
        }
        for i in p + 1..rows {
            if m[(i, col)].is_zero() {
                continue;
            }
            if m[(p, col)].is_zero() {
                m.swap_rows(p, i);
                continue;
            }
            let a = m[(p, col)].clone();
            let b = m[(i, col)].clone();
            let (g, x, y) = ext_gcd(&a, &b);
            let c = -(&b / &g);
            let d = &a / &g;
            combine_rows(m, p, i, [&x, &y, &c, &d]);
        }
        if m[(p, col)].is_zero() {
            continue;
        }
        if m[(p, col)].is_negative() {
            for j in 0..m.cols() {
                let v = -&m[(p, j)];
                m[(p, j)] = v;
            }
        }
        if reduce {
            let piv = m[(p, col)].clone();
            for i in 0..p {
                let q = m[(i, col)].div_floor(&piv);
                sub_row_multiple(m, i, p, &q);
            }
        }
        pivots.push(col);
        p += 1;
    }
    pivots
}

/// Row Hermite normal form of `m` with zero rows dropped.
pub fn hermite_rows(m: &IntMat) -> IntMat {
    let mut h = m.clone();
    let piv = row_hermite_in_place(&mut h, m.cols(), true);
    h.select_rows(&(0..piv.len()).collect::<Vec<_>>())
}

/// Rank over the rationals by Bareiss fraction-free elimination.
pub fn rank(m: &IntMat) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, piv);
        for i in r + 1..rows {
            for j in col + 1..cols {
                let v = (&a[(r, col)] * &a[(i, j)] - &a[(i, col)] * &a[(r, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, col)] = BigInt::zero();
        }
        prev = a[(r, col)].clone();
        r += 1;
    }
    r
}

/// Determinant of a square matrix by Bareiss elimination.
pub fn determinant(m: &IntMat) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
            return BigInt::zero();
        };
        if piv != k {
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Diagonal of the Smith normal form (nonzero elementary divisors, each
/// dividing the next).
pub fn elementary_divisors(m: &IntMat) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return out;
            };
            a.swap_rows(t, bi);
            for i in 0..rows {
                let idx_t = i * cols + t;
                let idx_j = i * cols + bj;
                if idx_t != idx_j {
                    let tmp = a[(i, t)].clone();
                    a[(i, t)] = a[(i, bj)].clone();
                    a[(i, bj)] = tmp;
                }
            }
            let piv = a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&piv);
                sub_row_multiple(&mut a, i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&piv);
                for i in 0..rows {
                    if !a[(i, t)].is_zero() {
                        let delta = &q * &a[(i, t)];
                        a[(i, j)] -= delta;
                    }
                }
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let mut bad_row = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[(i, j)] % &piv).is_zero() {
                        bad_row = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad_row {
                Some(i) => {
                    for j in 0..cols {
                        let v = a[(i, j)].clone();
                        a[(t, j)] += v;
                    }
                }
                None => {
                    out.push(piv.abs());
                    break;
                }
            }
        }
    }
    out
}

/// Some rational solution of `m x = b`, if one exists.
pub fn solve_rational(m: &IntMat, b: &[BigInt]) -> Option<Vec<BigRational>> {
    let (rows, cols) = (m.rows(), m.cols());
    assert_eq!(b.len(), rows);
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut r: Vec<BigRational> =
                m.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
            r.push(BigRational::from_integer(b[i].clone()));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..=cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows {
            break;
        }
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][cols].clone();
    }
    Some(x)
}

/// Integer coordinates of `v` with respect to the columns of `basis`, when
/// `v` lies in the lattice they generate. The columns must be independent.
pub fn lattice_coordinates(basis: &IntMat, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let x = solve_rational(basis, v)?;
    x.iter().map(|q| q.is_integer().then(|| q.to_integer())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn ext_gcd_identity() {
        for (a, b) in [(7, -4), (2023, 1), (1, -2024), (0, 5), (6, 0), (-9, 12), (4, 8)] {
            let (g, x, y) = ext_gcd(&bi(a), &bi(b));
            assert_eq!(g, bi(a).gcd(&bi(b)));
            assert_eq!(x * bi(a) + y * bi(b), g);
        }
        assert_eq!(ext_gcd(&bi(1), &bi(-2024)), (bi(1), bi(1), bi(0)));
    }

    #[test]
    fn rank_and_det() {
        assert_eq!(rank(&IntMat::identity(2)), 2);
        assert_eq!(rank(&IntMat::from_rows(&[[4, 5, 6, 7]])), 1);
        assert_eq!(rank(&IntMat::from_rows(&[[1, 2], [2, 4], [3, 6]])), 1);
        assert_eq!(determinant(&IntMat::from_rows(&[[2, 1], [7, 4]])), bi(1));
        assert_eq!(determinant(&IntMat::from_rows(&[[0, 1], [1, 0]])), bi(-1));
        assert_eq!(determinant(&IntMat::from_rows(&[[1, 2], [2, 4]])), bi(0));
    }

    #[test]
    fn hermite_is_canonical() {
        let a = IntMat::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, 4, 16]]);
        let b = IntMat::from_rows(&[[-6, 6, 12], [12, 8, 20], [2, 4, 4]]);
        // same row lattice: b's second row is a + c of the first matrix rows
        assert_eq!(hermite_rows(&a), hermite_rows(&b));
        let h = hermite_rows(&a);
        assert!(h[(0, 0)] > bi(0));
    }

    #[test]
    fn smith_divisors() {
        let m = IntMat::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, 4, 16]]);
        assert_eq!(elementary_divisors(&m), vec![bi(2), bi(2), bi(156)]);
        assert_eq!(elementary_divisors(&IntMat::from_rows(&[[3], [-2]])), vec![bi(1)]);
        assert!(elementary_divisors(&IntMat::zeros(2, 2)).is_empty());
    }

    #[test]
    fn rational_solve() {
        let m = IntMat::from_rows(&[[2, 0], [0, 3]]);
        let x = solve_rational(&m, &[bi(1), bi(3)]).unwrap();
        assert_eq!(x[0], BigRational::new(bi(1), bi(2)));
        assert!(lattice_coordinates(&m, &[bi(1), bi(3)]).is_none());
        assert_eq!(lattice_coordinates(&m, &[bi(4), bi(3)]), Some(vec![bi(2), bi(1)]));
        assert!(solve_rational(&IntMat::from_rows(&[[1, 1], [1, 1]]), &[bi(1), bi(2)]).is_none());
    }
}
