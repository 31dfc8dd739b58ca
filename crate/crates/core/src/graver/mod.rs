//! Graver bases, circuits, conformality predicates and the lifting of
//! Graver bases to multiset configurations.

mod completion;
mod multiset;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::bouquet::{bouquet_decompose, BouquetDecomposition};
use crate::error::{Result, ToricError};
use crate::exactla::{kernel_lattice_basis, rank, IntMat};

pub use multiset::MultisetConfig;
pub(crate) use completion::graver_of_lattice;

/// A nonzero lattice vector in canonical sign: first nonzero entry positive.
/// Orders lexicographically on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KernelVector(Vec<BigInt>);

impl KernelVector {
    /// Canonical representative of `±v`.
    pub fn new(mut v: Vec<BigInt>) -> Self {
        if v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
        KernelVector(v)
    }

    pub fn from_i64(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pos_part(&self) -> Vec<BigInt> {
        pos_part(&self.0)
    }

    pub fn neg_part(&self) -> Vec<BigInt> {
        neg_part(&self.0)
    }

    /// True when all nonzero entries share one sign.
    pub fn is_sign_uniform(&self) -> bool {
        !self.0.iter().any(Signed::is_negative) || !self.0.iter().any(Signed::is_positive)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    pub fn one_norm(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).sum()
    }
}

impl fmt::Display for KernelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for KernelVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|x| x.to_string()))
    }
}

pub fn pos_part(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| if x.is_positive() { x.clone() } else { BigInt::zero() }).collect()
}

pub fn neg_part(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| if x.is_negative() { -x } else { BigInt::zero() }).collect()
}

/// `v ⊑ u`: `v⁺ ≤ u⁺` and `v⁻ ≤ u⁻` componentwise.
pub fn conformally_below(v: &[BigInt], u: &[BigInt]) -> bool {
    v.len() == u.len()
        && v.iter().zip(u).all(|(a, b)| {
            a.is_zero() || (a.signum() == b.signum() && a.abs() <= b.abs())
        })
}

fn is_sum(u: &[BigInt], v: &[BigInt], w: &[BigInt]) -> bool {
    u.len() == v.len() && u.len() == w.len() && u.iter().zip(v).zip(w).all(|((a, b), c)| *a == b + c)
}

/// `u = v +_c w`: `u⁺ = v⁺ + w⁺` and `u⁻ = v⁻ + w⁻`.
pub fn is_conformal_sum(u: &[BigInt], v: &[BigInt], w: &[BigInt]) -> bool {
    is_sum(u, v, w)
        && v.iter().zip(w).all(|(a, b)| !(a.is_positive() && b.is_negative()) && !(a.is_negative() && b.is_positive()))
}

/// `u = v +_sc w`: `v_i > 0 ⇒ w_i ≥ 0` and `w_i < 0 ⇒ v_i ≤ 0`.
pub fn is_semiconformal_sum(u: &[BigInt], v: &[BigInt], w: &[BigInt]) -> bool {
    is_sum(u, v, w)
        && v.iter().zip(w).all(|(a, b)| {
            (!a.is_positive() || !b.is_negative()) && (!b.is_negative() || !a.is_positive())
        })
}

/// `u = v + w` with `u⁺ > v⁺` and `u⁻ > w⁻`, where `>` means componentwise
/// `≥` and not equal.
pub fn is_strongly_semiconformal_sum(u: &[BigInt], v: &[BigInt], w: &[BigInt]) -> bool {
    if !is_sum(u, v, w) {
        return false;
    }
    let strictly_above = |x: &[BigInt], y: &[BigInt]| {
        x.iter().zip(y).all(|(a, b)| a >= b) && x != y
    };
    strictly_above(&pos_part(u), &pos_part(v)) && strictly_above(&neg_part(u), &neg_part(w))
}

fn finish(vectors: impl IntoIterator<Item = Vec<BigInt>>) -> Vec<KernelVector> {
    let set: BTreeSet<KernelVector> = vectors.into_iter().map(KernelVector::new).collect();
    set.into_iter().collect()
}

fn reject_nonpointed(basis: &[KernelVector]) -> Result<()> {
    match basis.iter().find(|u| u.is_sign_uniform()) {
        Some(u) => Err(ToricError::NotPointed { witness: u.coords().to_vec() }),
        None => Ok(()),
    }
}

/// Graver basis of the lattice `ker_Z(a)` without the pointedness check.
pub(crate) fn lattice_graver(a: &IntMat) -> Vec<KernelVector> {
    let k = kernel_lattice_basis(a);
    finish(graver_of_lattice(&k.columns(), a.cols()))
}

/// Graver basis of `a` by critical-pair completion, sorted, one vector per
/// ± pair.
pub fn graver_completion(a: &IntMat) -> Result<Vec<KernelVector>> {
    let g = lattice_graver(a);
    reject_nonpointed(&g)?;
    Ok(g)
}

/// Graver basis of `a` as the image under `D` of the Graver basis of the
/// bouquet matrix.
pub fn graver_via_bouquet(a: &IntMat) -> Result<Vec<KernelVector>> {
    graver_via_decomposition(&bouquet_decompose(a))
}

pub fn graver_via_decomposition(dec: &BouquetDecomposition) -> Result<Vec<KernelVector>> {
    // the bouquet matrix may have a non-pointed kernel (zero columns), so
    // pointedness is checked on the lifted set
    let small = lattice_graver(dec.bouquet_matrix());
    let g = finish(small.iter().map(|u| dec.lift_unchecked(u.coords())));
    reject_nonpointed(&g)?;
    Ok(g)
}

/// Graver basis by whichever route is cheaper: the bouquet lift when some
/// bouquet has more than one column, direct completion otherwise.
pub fn graver_basis(a: &IntMat) -> Result<Vec<KernelVector>> {
    let dec = bouquet_decompose(a);
    if dec.bouquets().len() < a.cols() {
        graver_via_decomposition(&dec)
    } else {
        graver_completion(a)
    }
}

/// Subsets of size `rank + 1` scanned before `circuits` gives up.
pub const CIRCUIT_SUBSET_LIMIT: u64 = 2_000_000;

/// Circuits: primitive kernel vectors of minimal support.
pub fn circuits(a: &IntMat) -> Result<Vec<KernelVector>> {
    let n = a.cols();
    let r = rank(a);
    if r == n {
        return Ok(Vec::new());
    }
    let subsets = binomial_u64(n as u64, (r + 1) as u64);
    if subsets > CIRCUIT_SUBSET_LIMIT {
        return Err(ToricError::Infeasible(format!(
            "{subsets} column subsets to scan for circuits"
        )));
    }
    let mut out = BTreeSet::new();
    let mut idx: Vec<usize> = (0..=r).collect();
    loop {
        let sub = a.select_columns(&idx);
        if rank(&sub) == r {
            let k = kernel_lattice_basis(&sub);
            let mut v = vec![BigInt::zero(); n];
            for (t, &j) in idx.iter().enumerate() {
                v[j] = k[(t, 0)].clone();
            }
            out.insert(KernelVector::new(v));
        }
        if !next_combination(&mut idx, n) {
            break;
        }
    }
    Ok(out.into_iter().collect())
}

/// Circuits of `a` as lifts of the circuits of its bouquet matrix.
pub fn circuits_via_bouquet(a: &IntMat) -> Result<Vec<KernelVector>> {
    let dec = bouquet_decompose(a);
    let small = circuits(dec.bouquet_matrix())?;
    Ok(finish(
        small
            .iter()
            .map(|u| dec.lift_unchecked(u.coords()))
            .filter(|v| v.iter().any(|x| !x.is_zero())),
    ))
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Exact binomial coefficient.
pub fn binomial(n: &BigInt, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// `|π^{-1}(u)_+| = Π_i C(|u_i| + k_i, k_i)`.
pub fn lift_count(u: &[BigInt], mult: &[usize]) -> BigInt {
    u.iter()
        .zip(mult)
        .filter(|(_, &k)| k > 0)
        .map(|(x, &k)| binomial(&(x.abs() + BigInt::from(k)), k as u64))
        .product()
}

/// `|Gr(A)| = Σ_i C(k_i + 1, 2) + Σ_{u ∈ Gr(C)} Π_i C(|u_i| + k_i, k_i)`.
pub fn multiset_graver_count(ground_graver: &[KernelVector], mult: &[usize]) -> BigInt {
    let q: BigInt = mult.iter().map(|&k| BigInt::from(k * (k + 1) / 2)).sum();
    q + ground_graver.iter().map(|u| lift_count(u.coords(), mult)).sum::<BigInt>()
}

/// Degree-one differences `c_{is,it}` (+1 at copy `s`, −1 at copy `t`).
pub fn degree_one_moves(m: &MultisetConfig) -> Vec<KernelVector> {
    let mut out = Vec::new();
    for r in m.blocks() {
        for s in r.clone() {
            for t in s + 1..r.end {
                let mut v = vec![BigInt::zero(); m.total()];
                v[s] = BigInt::one();
                v[t] = -BigInt::one();
                out.push(KernelVector(v));
            }
        }
    }
    out
}

/// Weak compositions of `total` into `parts` parts.
fn compositions(total: &BigInt, parts: usize) -> Vec<Vec<BigInt>> {
    if parts == 1 {
        return vec![vec![total.clone()]];
    }
    let mut out = Vec::new();
    let mut first = BigInt::zero();
    while &first <= total {
        for mut rest in compositions(&(total - &first), parts - 1) {
            rest.insert(0, first.clone());
            out.push(rest);
        }
        first += 1;
    }
    out
}

/// All same-sign lifts of `u ∈ ker_Z(C)`: `π^{-1}(u)_+`.
pub fn same_sign_lifts(m: &MultisetConfig, u: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut acc: Vec<Vec<BigInt>> = vec![Vec::with_capacity(m.total())];
    for (x, &k) in u.iter().zip(m.mult()) {
        let parts = compositions(&x.abs(), k + 1);
        let neg = x.is_negative();
        let mut next = Vec::with_capacity(acc.len() * parts.len());
        for prefix in &acc {
            for p in &parts {
                let mut v = prefix.clone();
                v.extend(p.iter().map(|y| if neg { -y } else { y.clone() }));
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// Default cap on the number of vectors an enumeration may produce.
pub const ENUMERATION_LIMIT: u64 = 2_000_000;

/// Graver basis of a multiset configuration from the Graver basis of its
/// ground set: `Q_A ∪ ⋃_{u ∈ Gr(C)} π^{-1}(u)_+`.
pub fn multiset_graver_from(
    m: &MultisetConfig,
    ground_graver: &[KernelVector],
    limit: u64,
) -> Result<Vec<KernelVector>> {
    let count = multiset_graver_count(ground_graver, m.mult());
    if count > BigInt::from(limit) {
        return Err(ToricError::Infeasible(format!(
            "the Graver basis has {count} elements (limit {limit})"
        )));
    }
    let mut out: Vec<KernelVector> = degree_one_moves(m);
    for u in ground_graver {
        out.extend(same_sign_lifts(m, u.coords()).into_iter().map(KernelVector::new));
    }
    out.sort();
    Ok(out)
}

pub fn multiset_graver(m: &MultisetConfig, limit: u64) -> Result<Vec<KernelVector>> {
    let ground = graver_basis(m.ground())?;
    multiset_graver_from(m, &ground, limit)
}
