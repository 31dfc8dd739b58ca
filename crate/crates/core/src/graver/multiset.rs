use std::collections::HashMap;
use std::ops::Range;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Result, ToricError};
use crate::exactla::IntMat;

/// A multiset configuration: distinct ground columns `a_1, …, a_n` where
/// column `i` appears `k_i + 1` times. Copies of a ground column sit next to
/// each other in the assembled matrix, so block `i` occupies a contiguous
/// range of columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetConfig {
    ground: IntMat,
    mult: Vec<usize>,
}

impl MultisetConfig {
    pub fn new(ground: IntMat, mult: Vec<usize>) -> Result<Self> {
        if mult.len() != ground.cols() {
            return Err(ToricError::Shape(format!(
                "multiplicity vector has {} entries for {} ground columns",
                mult.len(),
                ground.cols()
            )));
        }
        if let Some((i, j)) = first_repeat(&ground) {
            return Err(ToricError::InvalidSpec(format!(
                "ground columns {} and {} coincide; ground columns must be distinct",
                i + 1,
                j + 1
            )));
        }
        Ok(MultisetConfig { ground, mult })
    }

    /// The configuration itself, without repetitions.
    pub fn plain(ground: IntMat) -> Result<Self> {
        let n = ground.cols();
        Self::new(ground, vec![0; n])
    }

    /// Folds repeated columns of `a` into a ground set plus multiplicities.
    /// Also returns, for each column of the assembled matrix, the index of the
    /// column of `a` it came from.
    pub fn fold(a: &IntMat) -> (MultisetConfig, Vec<usize>) {
        let mut firsts: Vec<usize> = Vec::new();
        let mut copies: Vec<Vec<usize>> = Vec::new();
        let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
        for j in 0..a.cols() {
            let col = a.column(j);
            match seen.get(&col) {
                Some(&g) => copies[g].push(j),
                None => {
                    seen.insert(col, firsts.len());
                    firsts.push(j);
                    copies.push(vec![j]);
                }
            }
        }
        let ground = a.select_columns(&firsts);
        let mult = copies.iter().map(|c| c.len() - 1).collect();
        let origin = copies.into_iter().flatten().collect();
        (MultisetConfig { ground, mult }, origin)
    }

    pub fn ground(&self) -> &IntMat {
        &self.ground
    }

    pub fn mult(&self) -> &[usize] {
        &self.mult
    }

    pub fn n_ground(&self) -> usize {
        self.ground.cols()
    }

    /// Total repetitions `k = Σ k_i`.
    pub fn k(&self) -> usize {
        self.mult.iter().sum()
    }

    /// Column count `N = n + k` of the assembled matrix.
    pub fn total(&self) -> usize {
        self.n_ground() + self.k()
    }

    pub fn has_repeats(&self) -> bool {
        self.mult.iter().any(|&k| k > 0)
    }

    /// Column range of block `i` in the assembled matrix.
    pub fn block(&self, i: usize) -> Range<usize> {
        let start: usize = self.mult[..i].iter().map(|k| k + 1).sum();
        start..start + self.mult[i] + 1
    }

    pub fn blocks(&self) -> Vec<Range<usize>> {
        let mut out = Vec::with_capacity(self.n_ground());
        let mut start = 0;
        for &k in &self.mult {
            out.push(start..start + k + 1);
            start += k + 1;
        }
        out
    }

    /// Ground index of every assembled column.
    pub fn ground_index(&self) -> Vec<usize> {
        self.mult
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat(i).take(k + 1))
            .collect()
    }

    pub fn assembled(&self) -> IntMat {
        self.ground.select_columns(&self.ground_index())
    }

    /// `π(u′)_i = Σ_t u′_{it}`.
    pub fn project(&self, u: &[BigInt]) -> Vec<BigInt> {
        self.blocks().into_iter().map(|r| u[r].iter().sum()).collect()
    }

    /// The section putting all of `u_i` on the first copy of block `i`.
    pub fn embed_first(&self, u: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.total()];
        for (r, x) in self.blocks().into_iter().zip(u) {
            out[r.start] = x.clone();
        }
        out
    }
}

fn first_repeat(m: &IntMat) -> Option<(usize, usize)> {
    let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
    for j in 0..m.cols() {
        if let Some(&i) = seen.get(&m.column(j)) {
            return Some((i, j));
        }
        seen.insert(m.column(j), j);
    }
    None
}
