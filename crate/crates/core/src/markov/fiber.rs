//! Enumeration of fibers `{z ∈ Nⁿ : Az = b}`.
//!
//! Points are written `z = z0 + D(w)` with `w` in the kernel of the bouquet
//! matrix. Each bouquet coordinate `w_q` is confined to an interval by
//! `z ≥ 0` and by a positive grading, and the depth-first search walks the
//! Hermite basis of that kernel so that every coordinate is checked as soon
//! as it is determined. Mixed bouquets give two-sided intervals from
//! nonnegativity alone, which keeps fibers of Lawrence-type matrices cheap
//! even when their entries are large.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::bouquet::{bouquet_decompose, BouquetDecomposition};
use crate::error::{Result, ToricError};
use crate::exactla::{integer_solution, kernel_lattice_basis, positive_grading, IntMat};
use crate::graver::lattice_graver;

/// A fiber with its lower-degree connected components: two points share a
/// component when they are linked by a chain of points with pairwise
/// common support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub degree: Vec<BigInt>,
    /// Sorted lexicographically.
    pub points: Vec<Vec<BigInt>>,
    /// Indices into `points`; each component sorted, components ordered by
    /// their first point.
    pub components: Vec<Vec<usize>>,
}

impl Fiber {
    pub fn new(degree: Vec<BigInt>, mut points: Vec<Vec<BigInt>>) -> Self {
        points.sort();
        points.dedup();
        let components = common_support_components(&points);
        Fiber { degree, points, components }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, z: &[BigInt]) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_slice().cmp(z)).ok()
    }

    /// Component index of every point.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![0; self.points.len()];
        for (c, comp) in self.components.iter().enumerate() {
            for &i in comp {
                label[i] = c;
            }
        }
        label
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub(crate) fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra == rb {
        return false;
    }
    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
    parent[hi] = lo;
    true
}

fn common_support_components(points: &[Vec<BigInt>]) -> Vec<Vec<usize>> {
    let n = points.first().map_or(0, Vec::len);
    let mut parent: Vec<usize> = (0..points.len()).collect();
    for j in 0..n {
        let mut first: Option<usize> = None;
        for (i, p) in points.iter().enumerate() {
            if p[j].is_positive() {
                match first {
                    Some(f) => {
                        union(&mut parent, f, i);
                    }
                    None => first = Some(i),
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..points.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Reusable fiber enumerator for one matrix.
pub struct FiberEnumerator {
    a: IntMat,
    dec: BouquetDecomposition,
    /// Hermite basis of `ker_Z(A_B)`, as rows.
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    /// Positive grading `yᵀA`.
    grading: Vec<BigInt>,
}

/// Outcome of a bounded enumeration.
enum Stop {
    Cap,
    Budget,
}

impl FiberEnumerator {
    pub fn new(a: &IntMat) -> Result<Self> {
        let Some(y) = positive_grading(a) else {
            let witness = lattice_graver(a)
                .into_iter()
                .find(|u| u.is_sign_uniform())
                .map(|u| u.into_coords())
                .unwrap_or_default();
            return Err(ToricError::NotPointed { witness });
        };
        let grading = a.transpose().mul_vec(&y).expect("shapes agree");
        let dec = bouquet_decompose(a);
        let basis = kernel_lattice_basis(dec.bouquet_matrix()).transpose().to_rows();
        let pivots = basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero"))
            .collect();
        Ok(FiberEnumerator { a: a.clone(), dec, basis, pivots, grading })
    }

    pub fn matrix(&self) -> &IntMat {
        &self.a
    }

    /// `A z` for a point `z`.
    pub fn degree_of(&self, z: &[BigInt]) -> Vec<BigInt> {
        self.a.mul_vec(z).expect("length n")
    }

    /// The fiber of degree `b`. Fails with `Infeasible` past `limit` points.
    pub fn fiber(&self, b: &[BigInt], limit: usize) -> Result<Fiber> {
        if b.len() != self.a.rows() {
            return Err(ToricError::Shape(format!(
                "degree has {} entries, matrix has {} rows",
                b.len(),
                self.a.rows()
            )));
        }
        let points = match integer_solution(&self.a, b) {
            Some(z0) => self.points_through(&z0, limit)?,
            None => Vec::new(),
        };
        Ok(Fiber::new(b.to_vec(), points))
    }

    /// The fiber containing the point `z0` (which need only satisfy `Az0 = b`).
    pub fn fiber_through(&self, z0: &[BigInt], limit: usize) -> Result<Fiber> {
        let points = self.points_through(z0, limit)?;
        Ok(Fiber::new(self.degree_of(z0), points))
    }

    fn points_through(&self, z0: &[BigInt], limit: usize) -> Result<Vec<Vec<BigInt>>> {
        let mut out = Vec::new();
        match self.search(z0, limit, &mut out) {
            None => Ok(out),
            Some(Stop::Cap) => Err(ToricError::Infeasible(format!(
                "fiber of degree {:?} has more than {} points",
                self.degree_of(z0).iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                limit
            ))),
            Some(Stop::Budget) => Err(ToricError::Infeasible(
                "fiber search exceeded its node budget".into(),
            )),
        }
    }

    /// Counts fiber points, stopping once `cap` are found.
    pub fn count_up_to(&self, z0: &[BigInt], cap: usize) -> Result<usize> {
        let mut out = Vec::new();
        match self.search(z0, cap, &mut out) {
            Some(Stop::Budget) => {
                Err(ToricError::Infeasible("fiber search exceeded its node budget".into()))
            }
            _ => Ok(out.len()),
        }
    }

    fn intervals(&self, z0: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
        let total: BigInt = self.grading.iter().zip(z0).map(|(g, z)| g * z).sum();
        if total.is_negative() {
            return None;
        }
        let s = self.dec.bouquets().len();
        let mut lo: Vec<Option<BigInt>> = vec![None; s];
        let mut hi: Vec<Option<BigInt>> = vec![None; s];
        let tighten_lo = |slot: &mut Option<BigInt>, v: BigInt| {
            if slot.as_ref().map_or(true, |x| v > *x) {
                *slot = Some(v);
            }
        };
        let tighten_hi = |slot: &mut Option<BigInt>, v: BigInt| {
            if slot.as_ref().map_or(true, |x| v < *x) {
                *slot = Some(v);
            }
        };
        for (q, b) in self.dec.bouquets().iter().enumerate() {
            for &j in &b.members {
                let c = &b.c[j];
                // 0 ≤ z0_j + c w ≤ cap_j
                let cap = total.div_floor(&self.grading[j]);
                let (from, to) = (-&z0[j], &cap - &z0[j]);
                if c.is_positive() {
                    tighten_lo(&mut lo[q], div_ceil(&from, c));
                    tighten_hi(&mut hi[q], to.div_floor(c));
                } else {
                    let nc = -c;
                    tighten_lo(&mut lo[q], div_ceil(&-&to, &nc));
                    tighten_hi(&mut hi[q], (-&from).div_floor(&nc));
                }
            }
        }
        let lo: Vec<BigInt> = lo.into_iter().map(|x| x.expect("every bouquet is nonempty")).collect();
        let hi: Vec<BigInt> = hi.into_iter().map(|x| x.expect("every bouquet is nonempty")).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return None;
        }
        Some((lo, hi))
    }

    fn search(&self, z0: &[BigInt], cap: usize, out: &mut Vec<Vec<BigInt>>) -> Option<Stop> {
        let Some((lo, hi)) = self.intervals(z0) else {
            return None;
        };
        let s = lo.len();
        let first_pivot = self.pivots.first().copied().unwrap_or(s);
        let zero = BigInt::zero();
        if (0..first_pivot).any(|q| lo[q] > zero || hi[q] < zero) {
            return None;
        }
        let mut w = vec![BigInt::zero(); s];
        let mut budget: u64 = 50_000_000;
        self.dfs(0, &mut w, &lo, &hi, z0, cap, &mut budget, out)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        i: usize,
        w: &mut Vec<BigInt>,
        lo: &[BigInt],
        hi: &[BigInt],
        z0: &[BigInt],
        cap: usize,
        budget: &mut u64,
        out: &mut Vec<Vec<BigInt>>,
    ) -> Option<Stop> {
        if *budget == 0 {
            return Some(Stop::Budget);
        }
        *budget -= 1;
        if i == self.basis.len() {
            let mut z = self.dec.lift_unchecked(w);
            for (x, b) in z.iter_mut().zip(z0) {
                *x += b;
            }
            if out.len() >= cap {
                return Some(Stop::Cap);
            }
            out.push(z);
            return None;
        }
        let row = &self.basis[i];
        let p = self.pivots[i];
        let next = self.pivots.get(i + 1).copied().unwrap_or(w.len());
        let h = &row[p];
        let x_lo = div_ceil(&(&lo[p] - &w[p]), h);
        let x_hi = (&hi[p] - &w[p]).div_floor(h);
        if x_lo > x_hi {
            return None;
        }
        let saved: Vec<BigInt> = w[p..].to_vec();
        for t in p..w.len() {
            w[t] += &x_lo * &row[t];
        }
        let mut x = x_lo;
        while x <= x_hi {
            let ok = (p + 1..next).all(|q| lo[q] <= w[q] && w[q] <= hi[q]);
            if ok {
                if let Some(stop) = self.dfs(i + 1, w, lo, hi, z0, cap, budget, out) {
                    w[p..].clone_from_slice(&saved);
                    return Some(stop);
                }
            }
            for t in p..w.len() {
                w[t] += &row[t];
            }
            x += 1;
        }
        w[p..].clone_from_slice(&saved);
        None
    }
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// The fiber of degree `b` for `a`.
pub fn enumerate_fiber(a: &IntMat, b: &[BigInt], limit: usize) -> Result<Fiber> {
    FiberEnumerator::new(a)?.fiber(b, limit)
}
