//! Exact integer linear algebra: ranks, saturated kernel lattices, Gale
//! transforms and row-span membership. Nothing here touches floating point.

mod hnf;
mod matrix;
mod simplex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use hnf::{
    determinant, elementary_divisors, ext_gcd, gcd_slice, hermite_rows, lattice_coordinates,
    rank, row_hermite_in_place, solve_rational,
};
pub use matrix::IntMat;
pub use simplex::positive_row_combination;

/// Basis of the saturated lattice `ker_Z(M)` as the columns of an
/// `n × (n − r)` matrix.
///
/// The basis is the row Hermite normal form of the kernel lattice written as
/// columns, so it depends only on the lattice and not on how it was found.
pub fn kernel_lattice_basis(m: &IntMat) -> IntMat {
    let (rows, n) = (m.rows(), m.cols());
    // [Mᵀ | I]: unimodular row operations that clear Mᵀ leave kernel rows in I
    let mut aug = IntMat::zeros(n, rows + n);
    for i in 0..n {
        for j in 0..rows {
            aug[(i, j)] = m[(j, i)].clone();
        }
        aug[(i, rows + i)] = BigInt::one();
    }
    let pivots = row_hermite_in_place(&mut aug, rows, false);
    let r = pivots.len();
    let kernel_rows: Vec<Vec<BigInt>> =
        (r..n).map(|i| aug.row(i)[rows..].to_vec()).collect();
    let k = IntMat::from_big_rows(kernel_rows, n).expect("kernel rows have width n");
    hermite_rows(&k).transpose()
}

/// Some integer `z` with `m z = b`, or `None` when `b` is not in the
/// lattice spanned by the columns of `m`.
pub fn integer_solution(m: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (rows, n) = (m.rows(), m.cols());
    if b.len() != rows {
        return None;
    }
    let mut aug = IntMat::zeros(n, rows + n);
    for i in 0..n {
        for j in 0..rows {
            aug[(i, j)] = m[(j, i)].clone();
        }
        aug[(i, rows + i)] = BigInt::one();
    }
    let pivots = row_hermite_in_place(&mut aug, rows, false);
    let mut residual = b.to_vec();
    let mut z = vec![BigInt::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        let h = &aug[(i, p)];
        if !(&residual[p] % h).is_zero() {
            return None;
        }
        let y = &residual[p] / h;
        if y.is_zero() {
            continue;
        }
        for j in 0..rows {
            residual[j] -= &y * &aug[(i, j)];
        }
        for (zk, u) in z.iter_mut().zip(&aug.row(i)[rows..]) {
            *zk += &y * u;
        }
    }
    residual.iter().all(Zero::is_zero).then_some(z)
}

/// Gale transform of a configuration: row `i` is `G(a_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaleRows {
    n: usize,
    rank: usize,
    rows: Vec<Vec<BigInt>>,
}

impl GaleRows {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Width `n − r` of each row.
    pub fn width(&self) -> usize {
        self.n - self.rank
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.rows[i].iter().all(Zero::is_zero)
    }

    /// Indices of zero rows (free columns).
    pub fn zero_rows(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_zero_row(i)).collect()
    }

    /// The assembled `n × (n − r)` matrix.
    pub fn to_matrix(&self) -> IntMat {
        IntMat::from_big_rows(self.rows.clone(), self.width()).expect("uniform width")
    }
}

pub fn gale_transform(a: &IntMat) -> GaleRows {
    let basis = kernel_lattice_basis(a);
    GaleRows { n: a.cols(), rank: a.cols() - basis.cols(), rows: basis.to_rows() }
}

/// True when `v` lies in the rational row span of `a`.
pub fn in_rowspan(a: &IntMat, v: &[BigInt]) -> bool {
    match a.with_row(v) {
        Ok(ext) => rank(&ext) == rank(a),
        Err(_) => false,
    }
}

/// True when `(1, …, 1)` lies in the rational row span of `a`. This forces
/// `ker_Z(a) ∩ Nⁿ = {0}`.
pub fn allones_in_rowspan(a: &IntMat) -> bool {
    in_rowspan(a, &vec![BigInt::one(); a.cols()])
}

/// An integer `y` with `yᵀa` strictly positive, if the kernel is pointed.
/// Tries the all-ones vector and single rows before falling back to an
/// exact simplex.
pub fn positive_grading(a: &IntMat) -> Option<Vec<BigInt>> {
    use num_traits::Signed;
    for i in 0..a.rows() {
        let row = a.row(i);
        for sign in [1i64, -1] {
            if row.iter().all(|x| (x * sign).is_positive()) {
                let mut y = vec![BigInt::zero(); a.rows()];
                y[i] = BigInt::from(sign);
                return Some(y);
            }
        }
    }
    positive_row_combination(a)
}

/// True when `ker_Z(a) ∩ Nⁿ = {0}`.
pub fn is_pointed(a: &IntMat) -> bool {
    a.cols() == 0 || positive_grading(a).is_some()
}
