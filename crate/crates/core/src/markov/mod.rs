//! Markov bases from fiber connectivity.
//!
//! Every minimal Markov element is a Graver element, so the degrees that
//! can need a generator are the degrees `A u⁺` of Graver elements. For each
//! such degree the fiber is enumerated and split into components of the
//! common-support graph; points in one component are already joined by
//! moves of strictly smaller degree, so a minimal Markov basis needs exactly
//! one move per edge of a spanning tree on the components.

mod fiber;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bouquet::{bouquet_decompose, BouquetKind};
use crate::error::{Result, ToricError};
use crate::exactla::{determinant, IntMat};
use crate::graver::{
    graver_basis, is_semiconformal_sum, is_strongly_semiconformal_sum, lift_count,
    pos_part, KernelVector, MultisetConfig,
};

pub use fiber::{enumerate_fiber, Fiber, FiberEnumerator};

/// Default cap on the number of points in one fiber.
pub const FIBER_LIMIT: usize = 1_000_000;

/// The fibers at the degrees of the Graver basis, with everything the
/// Markov-type bases are read off from.
#[derive(Clone, Debug)]
pub struct MarkovAnalysis {
    graver: Vec<KernelVector>,
    /// One fiber per distinct degree, in increasing total degree.
    fibers: Vec<Fiber>,
    /// For each Graver element, the index of its fiber.
    fiber_of: Vec<usize>,
}

fn degree_key(b: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    (b.iter().map(|x| x.abs()).sum(), b.to_vec())
}

impl MarkovAnalysis {
    pub fn new(a: &IntMat, limit: usize) -> Result<Self> {
        let graver = graver_basis(a)?;
        Self::with_graver(a, graver, limit)
    }

    pub fn with_graver(a: &IntMat, graver: Vec<KernelVector>, limit: usize) -> Result<Self> {
        let en = FiberEnumerator::new(a)?;
        let mut degrees: Vec<(BigInt, Vec<BigInt>)> =
            graver.iter().map(|u| degree_key(&en.degree_of(&u.pos_part()))).collect();
        degrees.sort();
        degrees.dedup();
        let mut fibers = Vec::with_capacity(degrees.len());
        for (_, b) in &degrees {
            // any Graver element of this degree gives a starting point
            let u = graver
                .iter()
                .find(|u| en.degree_of(&u.pos_part()) == *b)
                .expect("degree comes from the Graver basis");
            fibers.push(en.fiber_through(&u.pos_part(), limit)?);
        }
        let fiber_of = graver
            .iter()
            .map(|u| {
                let b = en.degree_of(&u.pos_part());
                fibers.iter().position(|f| f.degree == b).expect("fiber exists")
            })
            .collect();
        Ok(MarkovAnalysis { graver, fibers, fiber_of })
    }

    pub fn graver(&self) -> &[KernelVector] {
        &self.graver
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    /// Fibers with more than one component.
    pub fn betti_fibers(&self) -> impl Iterator<Item = &Fiber> {
        self.fibers.iter().filter(|f| f.components.len() > 1)
    }

    /// One minimal Markov basis: for each Betti fiber, Kruskal's algorithm
    /// over the component pairs, each pair represented by its
    /// lexicographically smallest move.
    pub fn minimal_markov(&self) -> Vec<KernelVector> {
        let mut out = BTreeSet::new();
        for f in self.betti_fibers() {
            let label = f.component_labels();
            let t = f.components.len();
            let mut best: Vec<Option<KernelVector>> = vec![None; t * t];
            for (i, z) in f.points.iter().enumerate() {
                for (j, w) in f.points.iter().enumerate().skip(i + 1) {
                    let (ci, cj) = (label[i].min(label[j]), label[i].max(label[j]));
                    if ci == cj {
                        continue;
                    }
                    let mv = KernelVector::new(z.iter().zip(w).map(|(x, y)| x - y).collect());
                    let slot = &mut best[ci * t + cj];
                    if slot.as_ref().map_or(true, |b| mv < *b) {
                        *slot = Some(mv);
                    }
                }
            }
            let mut edges: Vec<(KernelVector, usize, usize)> = Vec::new();
            for ci in 0..t {
                for cj in ci + 1..t {
                    if let Some(mv) = best[ci * t + cj].take() {
                        edges.push((mv, ci, cj));
                    }
                }
            }
            edges.sort();
            let mut parent: Vec<usize> = (0..t).collect();
            for (mv, ci, cj) in edges {
                if fiber::union(&mut parent, ci, cj) {
                    out.insert(mv);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Graver elements whose fiber is exactly `{u⁺, u⁻}`.
    pub fn indispensables(&self) -> Vec<KernelVector> {
        self.graver
            .iter()
            .zip(&self.fiber_of)
            .filter(|(_, &fi)| self.fibers[fi].len() == 2)
            .map(|(u, _)| u.clone())
            .collect()
    }

    /// Graver elements whose positive and negative parts lie in different
    /// components of their fiber.
    pub fn universal_markov(&self) -> Vec<KernelVector> {
        self.graver
            .iter()
            .zip(&self.fiber_of)
            .filter(|(u, &fi)| {
                let f = &self.fibers[fi];
                let label = f.component_labels();
                let p = f.index_of(&u.pos_part()).expect("u⁺ lies in its fiber");
                let q = f.index_of(&u.neg_part()).expect("u⁻ lies in its fiber");
                label[p] != label[q]
            })
            .map(|(u, _)| u.clone())
            .collect()
    }

    /// Number of distinct minimal Markov bases.
    pub fn count_minimal_markov(&self) -> BigInt {
        self.betti_fibers()
            .map(|f| weighted_spanning_tree_count(&f.component_sizes()))
            .product()
    }
}

pub fn minimal_markov(a: &IntMat) -> Result<Vec<KernelVector>> {
    Ok(MarkovAnalysis::new(a, FIBER_LIMIT)?.minimal_markov())
}

pub fn indispensables(a: &IntMat) -> Result<Vec<KernelVector>> {
    Ok(MarkovAnalysis::new(a, FIBER_LIMIT)?.indispensables())
}

pub fn universal_markov(a: &IntMat) -> Result<Vec<KernelVector>> {
    Ok(MarkovAnalysis::new(a, FIBER_LIMIT)?.universal_markov())
}

pub fn count_minimal_markov(a: &IntMat) -> Result<BigInt> {
    Ok(MarkovAnalysis::new(a, FIBER_LIMIT)?.count_minimal_markov())
}

/// Spanning trees of the complete graph on components of the given sizes,
/// edge `{i, j}` counted with multiplicity `n_i n_j`: the determinant of the
/// reduced weighted Laplacian.
pub fn weighted_spanning_tree_count(sizes: &[usize]) -> BigInt {
    let t = sizes.len();
    if t <= 1 {
        return BigInt::one();
    }
    let n: Vec<BigInt> = sizes.iter().map(|&s| BigInt::from(s)).collect();
    let total: BigInt = n.iter().sum();
    let rows: Vec<Vec<BigInt>> = (0..t - 1)
        .map(|i| {
            (0..t - 1)
                .map(|j| if i == j { &n[i] * (&total - &n[i]) } else { -(&n[i] * &n[j]) })
                .collect()
        })
        .collect();
    let lap = IntMat::from_big_rows(rows, t - 1).expect("square");
    determinant(&lap)
}

/// Closed form of the same count: `Π n_i · N^{t−2}` with `N = Σ n_i`.
pub fn weighted_spanning_tree_closed_form(sizes: &[usize]) -> BigInt {
    let t = sizes.len();
    if t <= 1 {
        return BigInt::one();
    }
    let total: usize = sizes.iter().sum();
    let prod: BigInt = sizes.iter().map(|&s| BigInt::from(s)).product();
    prod * num_traits::pow(BigInt::from(total), t - 2)
}

/// A proper split `u = v + w` with both parts nonzero kernel vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub v: Vec<BigInt>,
    pub w: Vec<BigInt>,
}

/// Nonzero vectors in the box `[0, top]`, in lexicographic order.
fn box_points(top: &[BigInt], limit: usize) -> Result<Vec<Vec<BigInt>>> {
    let mut size = BigInt::one();
    for x in top {
        size *= x + 1;
    }
    if size > BigInt::from(limit) {
        return Err(ToricError::Infeasible(format!("split box has {size} points")));
    }
    let mut acc: Vec<Vec<BigInt>> = vec![Vec::new()];
    for x in top {
        let mut next = Vec::new();
        for p in &acc {
            let mut y = BigInt::zero();
            while &y <= x {
                let mut q = p.clone();
                q.push(y.clone());
                next.push(q);
                y += 1;
            }
        }
        acc = next;
    }
    acc.retain(|p| p.iter().any(|x| !x.is_zero()));
    Ok(acc)
}

/// Splits `u = v + w` with `v⁺` in the box `[0, u⁺]` and `v⁻` ranging over
/// the fiber of `A v⁺`, filtered by `accept`.
fn find_split(
    en: &FiberEnumerator,
    u: &[BigInt],
    top: &[BigInt],
    limit: usize,
    accept: impl Fn(&[BigInt], &[BigInt]) -> bool,
) -> Result<Option<Split>> {
    for vp in box_points(top, limit)? {
        let fiber = en.fiber_through(&vp, limit)?;
        for vm in &fiber.points {
            if vm.iter().zip(&vp).any(|(a, b)| a.is_positive() && b.is_positive()) {
                continue;
            }
            let v: Vec<BigInt> = vp.iter().zip(vm).map(|(a, b)| a - b).collect();
            let w: Vec<BigInt> = u.iter().zip(&v).map(|(a, b)| a - b).collect();
            if v.iter().all(Zero::is_zero) || w.iter().all(Zero::is_zero) {
                continue;
            }
            if accept(&v, &w) {
                return Ok(Some(Split { v, w }));
            }
        }
    }
    Ok(None)
}

/// A proper semiconformal decomposition `u = v +_sc w`, if one exists.
/// Such a `v` has `v⁺ ≤ u⁺`, which bounds the search.
pub fn semiconformal_split(a: &IntMat, u: &[BigInt], limit: usize) -> Result<Option<Split>> {
    let en = FiberEnumerator::new(a)?;
    find_split(&en, u, &pos_part(u), limit, |v, w| is_semiconformal_sum(u, v, w))
}

/// A proper strongly semiconformal decomposition `u = v + w` (`u⁺ > v⁺`,
/// `u⁻ > w⁻`), if one exists.
pub fn strongly_semiconformal_split(
    a: &IntMat,
    u: &[BigInt],
    limit: usize,
) -> Result<Option<Split>> {
    let en = FiberEnumerator::new(a)?;
    find_split(&en, u, &pos_part(u), limit, |v, w| is_strongly_semiconformal_sum(u, v, w))
}

/// Indispensable elements by exhausting semiconformal splits of each Graver
/// element. Slower than the fiber test, used to cross-check it.
pub fn indispensables_by_splits(a: &IntMat, limit: usize) -> Result<Vec<KernelVector>> {
    let en = FiberEnumerator::new(a)?;
    let mut out = Vec::new();
    for u in graver_basis(a)? {
        let c = u.coords();
        if find_split(&en, c, &pos_part(c), limit, |v, w| is_semiconformal_sum(c, v, w))?.is_none() {
            out.push(u);
        }
    }
    Ok(out)
}

/// Universal Markov basis by exhausting strongly semiconformal splits.
pub fn universal_markov_by_splits(a: &IntMat, limit: usize) -> Result<Vec<KernelVector>> {
    let en = FiberEnumerator::new(a)?;
    let mut out = Vec::new();
    for u in graver_basis(a)? {
        let c = u.coords();
        let found =
            find_split(&en, c, &pos_part(c), limit, |v, w| is_strongly_semiconformal_sum(c, v, w))?;
        if found.is_none() {
            out.push(u);
        }
    }
    Ok(out)
}

/// Whether every non-free bouquet of `a` is mixed. Such configurations are
/// strongly robust, with every Graver element indispensable.
pub fn all_bouquets_mixed(a: &IntMat) -> bool {
    bouquet_decompose(a).bouquets().iter().all(|b| b.kind != BouquetKind::NonMixed)
}

/// Strong robustness of `a`: certified from the bouquet types when every
/// non-free bouquet is mixed, otherwise decided by comparing the Graver
/// basis with the indispensable elements.
pub fn is_strongly_robust(a: &IntMat, limit: usize) -> Result<bool> {
    if all_bouquets_mixed(a) {
        return Ok(true);
    }
    let an = MarkovAnalysis::new(a, limit)?;
    Ok(an.indispensables().len() == an.graver().len())
}

fn is_unit_at(v: &[BigInt], i: usize) -> bool {
    v.iter().enumerate().all(|(j, x)| if j == i { x.is_one() } else { x.is_zero() })
}

/// Checks the shape under which the multiset Markov counts have closed
/// forms: the ground configuration is strongly robust, and no ground Graver
/// element has `u⁺` or `u⁻` equal to a unit vector at a repeated column.
pub(crate) fn check_formula_hypotheses(m: &MultisetConfig, ground: &[KernelVector], limit: usize) -> Result<()> {
    if !is_strongly_robust(m.ground(), limit)? {
        return Err(ToricError::HypothesisFailed(
            "the ground configuration is not strongly robust".into(),
        ));
    }
    for (i, &k) in m.mult().iter().enumerate() {
        if k == 0 {
            continue;
        }
        if let Some(u) = ground.iter().find(|u| is_unit_at(&u.pos_part(), i) || is_unit_at(&u.neg_part(), i)) {
            return Err(ToricError::HypothesisFailed(format!(
                "ground Graver element ({u}) has a unit part at repeated column {}",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Number of minimal Markov bases of a multiset configuration, from the
/// ground Graver basis alone: `Π_i (k_i+1)^{k_i−1}` for the degree-one
/// fibers times `Π_u L(u⁺)·L(u⁻)`, where `L(v)` counts the lifts of `v`.
pub fn count_minimal_markov_multiset_formula(m: &MultisetConfig) -> Result<BigInt> {
    let ground = graver_basis(m.ground())?;
    count_minimal_markov_multiset_formula_from(m, &ground)
}

pub fn count_minimal_markov_multiset_formula_from(
    m: &MultisetConfig,
    ground: &[KernelVector],
) -> Result<BigInt> {
    check_formula_hypotheses(m, ground, FIBER_LIMIT)?;
    let mut omega = BigInt::one();
    for &k in m.mult() {
        if k >= 1 {
            omega *= num_traits::pow(BigInt::from(k + 1), k - 1);
        }
    }
    for u in ground {
        omega *= lift_count(&u.pos_part(), m.mult()) * lift_count(&u.neg_part(), m.mult());
    }
    Ok(omega)
}

/// One minimal Markov basis of a multiset configuration under the same
/// hypotheses: the moves `c_{i1,it}` joining the first copy of each repeated
/// column to the others, and each ground Graver element placed on first
/// copies. Its size is `Σ k_i + |Gr(C)|`.
pub fn multiset_minimal_markov(m: &MultisetConfig) -> Result<Vec<KernelVector>> {
    let ground = graver_basis(m.ground())?;
    check_formula_hypotheses(m, &ground, FIBER_LIMIT)?;
    let mut out = BTreeSet::new();
    for r in m.blocks() {
        for t in r.start + 1..r.end {
            let mut v = vec![BigInt::zero(); m.total()];
            v[r.start] = BigInt::one();
            v[t] = -BigInt::one();
            out.insert(KernelVector::new(v));
        }
    }
    for u in &ground {
        out.insert(KernelVector::new(m.embed_first(u.coords())));
    }
    Ok(out.into_iter().collect())
}
