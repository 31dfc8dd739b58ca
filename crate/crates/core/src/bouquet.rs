//! Bouquet decomposition of a configuration.
//!
//! Two columns are joined when their Gale rows are parallel; free columns
//! (zero Gale row) are collected into a single free bouquet. Each bouquet
//! carries an index-encoding vector `c_B` and a column `a_B = Σ (c_B)_j a_j`;
//! the `a_B` form the bouquet matrix `A_B`, whose kernel is identified with
//! `ker_Z(A)` through the lifting map [`BouquetDecomposition::lift`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Result, ToricError};
use crate::exactla::{gale_transform, GaleRows, IntMat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BouquetKind {
    Free,
    Mixed,
    NonMixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bouquet {
    pub members: Vec<usize>,
    pub kind: BouquetKind,
    /// Index-encoding vector, length `n`, supported on `members`.
    pub c: Vec<BigInt>,
    /// `Σ_j c_j a_j`, length `m`.
    pub a: Vec<BigInt>,
}

impl Bouquet {
    /// Sum of the entries of `c_B`.
    pub fn c_sum(&self) -> BigInt {
        self.c.iter().sum()
    }

    /// Nonzero block of `c_B`, in member order.
    pub fn c_block(&self) -> Vec<BigInt> {
        self.members.iter().map(|&i| self.c[i].clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BouquetDecomposition {
    n: usize,
    bouquets: Vec<Bouquet>,
    matrix: IntMat,
}

impl BouquetDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bouquets(&self) -> &[Bouquet] {
        &self.bouquets
    }

    /// The bouquet matrix `A_B` with columns `a_{B_1}, …, a_{B_s}`.
    pub fn bouquet_matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.bouquets.iter().map(|b| b.members.len()).collect()
    }

    /// Column order that lists the bouquets as consecutive blocks.
    pub fn block_permutation(&self) -> Vec<usize> {
        self.bouquets.iter().flat_map(|b| b.members.iter().copied()).collect()
    }

    /// Bouquet index of each column.
    pub fn bouquet_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.n];
        for (q, b) in self.bouquets.iter().enumerate() {
            for &i in &b.members {
                owner[i] = q;
            }
        }
        owner
    }

    pub fn free_bouquet(&self) -> Option<&Bouquet> {
        self.bouquets.iter().find(|b| b.kind == BouquetKind::Free)
    }

    /// `D(u) = Σ_q c_{B_q} u_q`, without checking that `u ∈ ker_Z(A_B)`.
    pub fn lift_unchecked(&self, u: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.n];
        for (b, uq) in self.bouquets.iter().zip(u) {
            if uq.is_zero() {
                continue;
            }
            for &i in &b.members {
                out[i] = &b.c[i] * uq;
            }
        }
        out
    }

    /// The lifting isomorphism `D : ker_Z(A_B) → ker_Z(A)`.
    pub fn lift(&self, u: &[BigInt]) -> Result<Vec<BigInt>> {
        if u.len() != self.bouquets.len() {
            return Err(ToricError::Shape(format!(
                "expected {} bouquet coordinates, got {}",
                self.bouquets.len(),
                u.len()
            )));
        }
        if !self.matrix.annihilates(u) {
            return Err(ToricError::NotInKernel);
        }
        Ok(self.lift_unchecked(u))
    }
}

/// Exact parallelism test for nonzero rows: every 2×2 minor vanishes.
fn parallel(p: &[BigInt], q: &[BigInt]) -> bool {
    let Some(t0) = p.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if q[t0].is_zero() {
        return false;
    }
    (0..p.len()).all(|t| &p[t0] * &q[t] == &p[t] * &q[t0])
}

/// Sign of `λ` in `p = λ q` for parallel nonzero rows.
pub fn parallel_sign(p: &[BigInt], q: &[BigInt]) -> i32 {
    let t = p.iter().position(|x| !x.is_zero()).expect("nonzero row");
    if p[t].is_positive() == q[t].is_positive() {
        1
    } else {
        -1
    }
}

/// Partition of column indices into Gale parallelism classes (free columns
/// merged into one class), ordered by smallest member.
pub fn parallel_classes(gale: &GaleRows) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut free_class: Option<usize> = None;
    for i in 0..gale.n() {
        if gale.is_zero_row(i) {
            match free_class {
                Some(c) => classes[c].push(i),
                None => {
                    free_class = Some(classes.len());
                    classes.push(vec![i]);
                }
            }
            continue;
        }
        let found = classes.iter_mut().find(|c| {
            let rep = c[0];
            !gale.is_zero_row(rep) && parallel(gale.row(rep), gale.row(i))
        });
        match found {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

fn encoding_vector(gale: &GaleRows, members: &[usize], n: usize) -> (Vec<BigInt>, BouquetKind) {
    let mut c = vec![BigInt::zero(); n];
    if gale.is_zero_row(members[0]) {
        for &i in members {
            c[i] = BigInt::one();
        }
        return (c, BouquetKind::Free);
    }
    // smallest coordinate that is nonzero on every Gale row of the bouquet
    let j = (0..gale.width())
        .find(|&j| members.iter().all(|&i| !gale.row(i)[j].is_zero()))
        .expect("parallel nonzero rows share a nonzero coordinate");
    let g = members.iter().fold(BigInt::zero(), |g, &i| g.gcd(&gale.row(i)[j]));
    let lead = members[0];
    let eps = if gale.row(lead)[j].is_negative() { -BigInt::one() } else { BigInt::one() };
    for &i in members {
        c[i] = &eps * &gale.row(i)[j] / &g;
    }
    let mixed = members.iter().any(|&i| c[i].is_negative());
    (c, if mixed { BouquetKind::Mixed } else { BouquetKind::NonMixed })
}

pub fn bouquet_decompose(a: &IntMat) -> BouquetDecomposition {
    let gale = gale_transform(a);
    decompose_with_gale(a, &gale)
}

pub fn decompose_with_gale(a: &IntMat, gale: &GaleRows) -> BouquetDecomposition {
    let n = a.cols();
    let m = a.rows();
    let bouquets: Vec<Bouquet> = parallel_classes(gale)
        .into_iter()
        .map(|members| {
            let (c, kind) = encoding_vector(gale, &members, n);
            let mut col = vec![BigInt::zero(); m];
            for &i in &members {
                for (r, x) in col.iter_mut().enumerate() {
                    *x += &c[i] * &a[(r, i)];
                }
            }
            Bouquet { members, kind, c, a: col }
        })
        .collect();
    let cols: Vec<Vec<BigInt>> = bouquets.iter().map(|b| b.a.clone()).collect();
    let matrix = IntMat::from_columns(&cols, m).expect("bouquet columns have length m");
    BouquetDecomposition { n, bouquets, matrix }
}

/// Free columns (zero Gale row); their count is the pyramidality degree.
pub fn free_columns(a: &IntMat) -> Vec<usize> {
    gale_transform(a).zero_rows()
}
