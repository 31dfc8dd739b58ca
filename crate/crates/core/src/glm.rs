//! Generalized Lawrence matrices.
//!
//! `GLM(a′_1, …, a′_s | c′_1, …, c′_s)` has a top band whose block `i` is
//! `[λ_{i1} a′_i, …, λ_{im_i} a′_i]` and a block-diagonal band whose block
//! `C_i` has first column `(−c′_{i2}, …, −c′_{im_i})` and `c′_{i1}` on the rest
//! of its diagonal. Its kernel is `{(u_1 c′_1, …, u_s c′_s) : Σ u_i a′_i = 0}`,
//! whatever `λ` is used.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bouquet::{bouquet_decompose, free_columns};
use crate::error::{Result, ToricError};
use crate::exactla::{ext_gcd, gcd_slice, IntMat};
use crate::graver::MultisetConfig;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlmSpec {
    pub d: usize,
    pub a_prime: Vec<Vec<BigInt>>,
    pub c_prime: Vec<Vec<BigInt>>,
    pub lambdas: Vec<Vec<BigInt>>,
}

impl GlmSpec {
    /// A spec with `λ` chosen by [`gcd_combination`].
    pub fn new(a_prime: Vec<Vec<BigInt>>, c_prime: Vec<Vec<BigInt>>) -> Result<Self> {
        let lambdas = c_prime.iter().map(|c| gcd_combination(c)).collect::<Result<_>>()?;
        Self::with_lambdas(a_prime, c_prime, lambdas)
    }

    pub fn with_lambdas(
        a_prime: Vec<Vec<BigInt>>,
        c_prime: Vec<Vec<BigInt>>,
        lambdas: Vec<Vec<BigInt>>,
    ) -> Result<Self> {
        let d = a_prime.first().map_or(0, Vec::len);
        let spec = GlmSpec { d, a_prime, c_prime, lambdas };
        spec.validate()?;
        Ok(spec)
    }

    pub fn s(&self) -> usize {
        self.a_prime.len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.c_prime.iter().map(Vec::len).collect()
    }

    /// Number of columns `m_1 + ⋯ + m_s`.
    pub fn n(&self) -> usize {
        self.c_prime.iter().map(Vec::len).sum()
    }

    /// Number of rows `d + (m_1 − 1) + ⋯ + (m_s − 1)`.
    pub fn p(&self) -> usize {
        self.d + self.n() - self.s()
    }

    /// The configuration `a′_1, …, a′_s` as a `d × s` matrix.
    pub fn a_prime_matrix(&self) -> IntMat {
        IntMat::from_columns(&self.a_prime, self.d).expect("validated")
    }

    pub fn validate(&self) -> Result<()> {
        let s = self.a_prime.len();
        if s == 0 {
            return Err(ToricError::InvalidSpec("a GLM needs at least one block".into()));
        }
        if self.c_prime.len() != s || self.lambdas.len() != s {
            return Err(ToricError::InvalidSpec(format!(
                "{} vectors a′ but {} vectors c′ and {} vectors λ",
                s,
                self.c_prime.len(),
                self.lambdas.len()
            )));
        }
        for (i, a) in self.a_prime.iter().enumerate() {
            if a.len() != self.d {
                return Err(ToricError::InvalidSpec(format!(
                    "a′_{} has length {}, expected {}",
                    i + 1,
                    a.len(),
                    self.d
                )));
            }
        }
        for (i, c) in self.c_prime.iter().enumerate() {
            check_c_prime(c).map_err(|msg| {
                ToricError::InvalidSpec(format!("c′_{}: {}", i + 1, msg))
            })?;
            let l = &self.lambdas[i];
            if l.len() != c.len() {
                return Err(ToricError::InvalidSpec(format!(
                    "λ_{} has length {}, c′_{} has length {}",
                    i + 1,
                    l.len(),
                    i + 1,
                    c.len()
                )));
            }
            let dot: BigInt = l.iter().zip(c).map(|(x, y)| x * y).sum();
            if !dot.is_one() {
                return Err(ToricError::InvalidSpec(format!(
                    "λ_{} · c′_{} = {}, expected 1",
                    i + 1,
                    i + 1,
                    dot
                )));
            }
        }
        Ok(())
    }
}

fn check_c_prime(c: &[BigInt]) -> std::result::Result<(), String> {
    if c.is_empty() {
        return Err("empty vector".into());
    }
    if c.iter().any(Zero::is_zero) {
        return Err("needs full support".into());
    }
    if !c[0].is_positive() {
        return Err("first entry must be positive".into());
    }
    if !gcd_slice(c).is_one() {
        return Err("entries must have gcd 1".into());
    }
    Ok(())
}

/// Integers `λ` with `Σ λ_j c_j = 1`, by a left fold of extended gcds.
pub fn gcd_combination(c: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut lambda: Vec<BigInt> = Vec::with_capacity(c.len());
    let mut g = BigInt::zero();
    for x in c {
        let (ng, s, t) = ext_gcd(&g, x);
        for l in lambda.iter_mut() {
            *l *= &s;
        }
        lambda.push(t);
        g = ng;
    }
    if !g.is_one() {
        return Err(ToricError::InvalidSpec(format!("entries have gcd {g}, expected 1")));
    }
    Ok(lambda)
}

/// Assembles the block matrix. The spec is trusted.
fn assemble(
    d: usize,
    a_prime: &[Vec<BigInt>],
    c_prime: &[Vec<BigInt>],
    lambdas: &[Vec<BigInt>],
) -> IntMat {
    let n: usize = c_prime.iter().map(Vec::len).sum();
    let p = d + n - c_prime.len();
    let mut m = IntMat::zeros(p, n);
    let (mut col, mut row) = (0, d);
    for ((a, c), l) in a_prime.iter().zip(c_prime).zip(lambdas) {
        for (j, lj) in l.iter().enumerate() {
            for (r, ar) in a.iter().enumerate() {
                m[(r, col + j)] = lj * ar;
            }
        }
        for t in 1..c.len() {
            m[(row + t - 1, col)] = -&c[t];
            m[(row + t - 1, col + t)] = c[0].clone();
        }
        col += c.len();
        row += c.len() - 1;
    }
    m
}

pub fn build_glm(spec: &GlmSpec) -> Result<IntMat> {
    spec.validate()?;
    Ok(assemble(spec.d, &spec.a_prime, &spec.c_prime, &spec.lambdas))
}

/// A GLM description of `a` up to a column permutation: column `t` of
/// `build_glm(spec)` plays the role of column `perm[t]` of `a`.
pub fn decompose_to_glm(a: &IntMat) -> Result<(GlmSpec, Vec<usize>)> {
    let dec = bouquet_decompose(a);
    let ab = dec.bouquet_matrix();
    // drop trailing zero rows of A_B; the kernel is unchanged
    let mut d = ab.rows();
    while d > 1 && ab.row(d - 1).iter().all(Zero::is_zero) {
        d -= 1;
    }
    let d = d.max(1);
    let a_prime = dec
        .bouquets()
        .iter()
        .map(|b| {
            let mut v = b.a[..d.min(b.a.len())].to_vec();
            v.resize(d, BigInt::zero());
            v
        })
        .collect();
    let c_prime = dec.bouquets().iter().map(|b| b.c_block()).collect();
    Ok((GlmSpec::new(a_prime, c_prime)?, dec.block_permutation()))
}

/// Evidence that a GLM built from zero-sum data is self-dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualCertificate {
    /// `Σ_j c′_{ij}` per block; all zero.
    pub block_sums: Vec<BigInt>,
    /// Free columns of the `a′` configuration; empty.
    pub a_prime_free: Vec<usize>,
    pub allones_in_rowspan: bool,
}

fn zero_sum_check(c_prime: &[Vec<BigInt>], offset: usize) -> Result<Vec<BigInt>> {
    let sums: Vec<BigInt> = c_prime.iter().map(|c| c.iter().sum()).collect();
    if let Some(i) = sums.iter().position(|x| !x.is_zero()) {
        return Err(ToricError::HypothesisFailed(format!(
            "entries of c′_{} sum to {}, not 0",
            i + offset,
            sums[i]
        )));
    }
    Ok(sums)
}

fn non_pyramidal_check(a_prime: &IntMat) -> Result<()> {
    let free = free_columns(a_prime);
    if let Some(&i) = free.first() {
        return Err(ToricError::HypothesisFailed(format!(
            "configuration a′ is pyramidal: a′_{} is a free vector",
            i + 1
        )));
    }
    Ok(())
}

/// Builds `GLM(a′ | c′)` for non-pyramidal `a′` and zero-sum `c′`; such a
/// matrix defines a self-dual projective toric variety.
pub fn build_selfdual_nonpyramidal(
    a_prime: Vec<Vec<BigInt>>,
    c_prime: Vec<Vec<BigInt>>,
) -> Result<(IntMat, SelfDualCertificate)> {
    let spec = GlmSpec::new(a_prime, c_prime)?;
    let block_sums = zero_sum_check(&spec.c_prime, 1)?;
    non_pyramidal_check(&spec.a_prime_matrix())?;
    let m = build_glm(&spec)?;
    let cert = SelfDualCertificate {
        block_sums,
        a_prime_free: Vec::new(),
        allones_in_rowspan: crate::exactla::allones_in_rowspan(&m),
    };
    Ok((m, cert))
}

/// Data for the pyramidal self-dual family
/// `GLM(ε_1, a′_1, …, a′_s | c′_0, c′_1, …, c′_s)` with repeated columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PyramidalFamilySpec {
    pub k: usize,
    pub c_prime_0: Vec<BigInt>,
    pub base: GlmSpec,
    /// Extra copies of each column of the assembled matrix; sums to `k`.
    pub multiplicities: Vec<usize>,
}

impl PyramidalFamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(ToricError::InvalidSpec(msg));
        if self.k == 0 {
            return bad("k must be at least 1".into());
        }
        if self.c_prime_0.len() != self.k {
            return bad(format!("c′_0 has length {}, expected k = {}", self.c_prime_0.len(), self.k));
        }
        if !self.c_prime_0[0].is_one() {
            return bad("c′_0 must start with 1".into());
        }
        self.base.validate()?;
        if self.base.d == 0 {
            return bad("a′ vectors need a leading zero coordinate".into());
        }
        if let Some(i) = self.base.a_prime.iter().position(|a| !a[0].is_zero()) {
            return bad(format!("a′_{} must have first coordinate 0", i + 1));
        }
        let n = self.k + self.base.n();
        if self.multiplicities.len() != n {
            return bad(format!(
                "{} multiplicities for {} columns",
                self.multiplicities.len(),
                n
            ));
        }
        let total: usize = self.multiplicities.iter().sum();
        if total != self.k {
            return bad(format!("multiplicities sum to {}, expected k = {}", total, self.k));
        }
        Ok(())
    }

    /// The ground matrix `C`.
    pub fn ground_matrix(&self) -> IntMat {
        let d = self.base.d;
        let mut eps = vec![BigInt::zero(); d];
        eps[0] = BigInt::one();
        let mut lambda0 = vec![BigInt::zero(); self.k];
        lambda0[0] = BigInt::one();
        let a: Vec<Vec<BigInt>> =
            std::iter::once(eps).chain(self.base.a_prime.iter().cloned()).collect();
        let c: Vec<Vec<BigInt>> = std::iter::once(self.c_prime_0.clone())
            .chain(self.base.c_prime.iter().cloned())
            .collect();
        let l: Vec<Vec<BigInt>> =
            std::iter::once(lambda0).chain(self.base.lambdas.iter().cloned()).collect();
        assemble(d, &a, &c, &l)
    }
}

/// Assembles the ground matrix of a pyramidal family and attaches the
/// repetitions; the result is a self-dual projective multiset configuration.
pub fn build_selfdual_family(spec: &PyramidalFamilySpec) -> Result<MultisetConfig> {
    spec.validate()?;
    zero_sum_check(&spec.base.c_prime, 1)?;
    non_pyramidal_check(&spec.base.a_prime_matrix())?;
    MultisetConfig::new(spec.ground_matrix(), spec.multiplicities.clone())
}
