//! Self-duality of multiset configurations and robustness of their toric
//! ideals.
//!
//! A non-pyramidal configuration is self-dual exactly when every bouquet has
//! `Σ (c_B)_i = 0`. With repetitions, `X_A` is self-dual exactly when the
//! ground set `C` has as many free columns as `A` has repetitions and the
//! non-free columns of `C` pass the bouquet-sum test. For self-dual inputs
//! the robustness verdict needs no basis computation: the ideal is always
//! weakly robust, and strongly robust exactly when `A` is non-pyramidal.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bouquet::{bouquet_decompose, free_columns, BouquetKind};
use crate::error::{Result, ToricError};
use crate::exactla::{allones_in_rowspan, IntMat};
use crate::graver::{
    binomial, graver_basis, is_semiconformal_sum, multiset_graver_from, MultisetConfig,
};
use crate::markov::{
    check_formula_hypotheses, semiconformal_split, strongly_semiconformal_split, MarkovAnalysis,
    FIBER_LIMIT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelfDualPath {
    NonPyramidal,
    PyramidalSplit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfDualVerdict {
    pub is_selfdual: bool,
    pub path: SelfDualPath,
    /// `Σ (c_B)_i` for each non-free bouquet of the ground set.
    #[serde(serialize_with = "crate::io::ser_big_vec")]
    pub bouquet_sums: Vec<BigInt>,
    /// Free columns of the ground set (0-based).
    pub free_columns: Vec<usize>,
    /// Total repetitions.
    pub k: usize,
    /// Whether the non-free ground columns pass the bouquet-sum test.
    pub nonfree_selfdual: bool,
    /// Why the verdict is negative, if it is.
    pub reason: Option<String>,
}

/// Decides self-duality of `X_A` for the multiset configuration `m`.
pub fn is_selfdual(m: &MultisetConfig) -> Result<SelfDualVerdict> {
    if !allones_in_rowspan(&m.assembled()) {
        return Err(ToricError::NotProjective);
    }
    let c = m.ground();
    let dec = bouquet_decompose(c);
    let free = free_columns(c);
    let bouquet_sums: Vec<BigInt> = dec
        .bouquets()
        .iter()
        .filter(|b| b.kind != BouquetKind::Free)
        .map(|b| b.c_sum())
        .collect();
    let nonfree_selfdual = bouquet_sums.iter().all(Zero::is_zero);
    let k = m.k();
    let path = if k == 0 && free.is_empty() {
        SelfDualPath::NonPyramidal
    } else {
        SelfDualPath::PyramidalSplit
    };
    let reason = if free.len() != k {
        Some(format!(
            "ground set has {} free columns but the configuration has {} repetitions",
            free.len(),
            k
        ))
    } else if let Some(q) = bouquet_sums.iter().position(|s| !s.is_zero()) {
        Some(format!("bouquet {} has Σ c_B = {}, not 0", q + 1, bouquet_sums[q]))
    } else {
        None
    };
    Ok(SelfDualVerdict {
        is_selfdual: reason.is_none(),
        path,
        bouquet_sums,
        free_columns: free,
        k,
        nonfree_selfdual,
        reason,
    })
}

/// The bouquet-sum test applied to a matrix directly. Only meaningful for
/// non-pyramidal `a`, which is checked.
pub fn selfdual_by_bouquet_sums(a: &IntMat) -> Result<bool> {
    let dec = bouquet_decompose(a);
    if let Some(f) = dec.free_bouquet() {
        return Err(ToricError::HypothesisFailed(format!(
            "configuration is pyramidal: column {} is free",
            f.members[0] + 1
        )));
    }
    Ok(dec.bouquets().iter().all(|b| b.c_sum().is_zero()))
}

/// Pyramidality `s` of the assembled configuration with its free columns
/// (assembled indices): a column of `A` is free exactly when its ground
/// column is free and not repeated.
pub fn pyramidality_of_multiset(m: &MultisetConfig) -> (usize, Vec<usize>) {
    let free: Vec<usize> = free_columns(m.ground())
        .into_iter()
        .filter(|&i| m.mult()[i] == 0)
        .map(|i| m.block(i).start)
        .collect();
    (free.len(), free)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Robustness {
    StronglyRobust,
    WeaklyRobustOnly,
    NotWeaklyRobust,
    Unknown,
}

impl Robustness {
    pub fn as_str(self) -> &'static str {
        match self {
            Robustness::StronglyRobust => "strongly_robust",
            Robustness::WeaklyRobustOnly => "weakly_robust_only",
            Robustness::NotWeaklyRobust => "not_weakly_robust",
            Robustness::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitKind {
    Semiconformal,
    StronglySemiconformal,
}

/// A Graver element `u` with a proper split `u = v + w` of the given kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: SplitKind,
    #[serde(serialize_with = "crate::io::ser_big_vec")]
    pub u: Vec<BigInt>,
    #[serde(serialize_with = "crate::io::ser_big_vec")]
    pub v: Vec<BigInt>,
    #[serde(serialize_with = "crate::io::ser_big_vec")]
    pub w: Vec<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictSource {
    /// Read off self-duality and pyramidality.
    Theorem,
    /// Compared the computed bases.
    Computed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RobustnessVerdict {
    pub tag: Robustness,
    pub source: VerdictSource,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

fn unit(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// The split showing that a pyramidal self-dual configuration is not
/// strongly robust: inside a block with three copies,
/// `c_{i1,i3} = c_{i1,i2} +_sc c_{i2,i3}`; otherwise a non-free ground column
/// `i` with one repetition and `u ∈ Gr(C)` with `u_i > 0` give
/// `u′ = c_{i1,i2} +_sc v′`, where `u′` keeps `u_i` on the first copy and `v′`
/// moves one unit to the second.
fn pyramidal_witness(m: &MultisetConfig) -> Result<Option<Witness>> {
    let n = m.total();
    let c = |s: usize, t: usize| -> Vec<BigInt> {
        let mut v = unit(n, s);
        v[t] = -BigInt::one();
        v
    };
    if let Some(i) = m.mult().iter().position(|&k| k >= 2) {
        let r = m.block(i);
        let (a, b, d) = (r.start, r.start + 1, r.start + 2);
        return Ok(Some(Witness { kind: SplitKind::Semiconformal, u: c(a, d), v: c(a, b), w: c(b, d) }));
    }
    let free = free_columns(m.ground());
    let ground = graver_basis(m.ground())?;
    for (i, &k) in m.mult().iter().enumerate() {
        if k != 1 || free.contains(&i) {
            continue;
        }
        let Some(u) = ground.iter().find(|u| !u.coords()[i].is_zero()) else {
            continue;
        };
        let mut u: Vec<BigInt> = u.coords().to_vec();
        if u[i] < BigInt::zero() {
            u.iter_mut().for_each(|x| *x = -&*x);
        }
        let r = m.block(i);
        let up = m.embed_first(&u);
        let mut vp = up.clone();
        vp[r.start] -= 1;
        vp[r.start + 1] += 1;
        let cc = c(r.start, r.start + 1);
        debug_assert!(is_semiconformal_sum(&up, &cc, &vp));
        return Ok(Some(Witness { kind: SplitKind::Semiconformal, u: up, v: cc, w: vp }));
    }
    Ok(None)
}

/// Robustness decided from the bases themselves: strongly robust when every
/// Graver element is indispensable, weakly robust when the universal Markov
/// basis is the whole Graver basis.
pub fn robustness_computed(m: &MultisetConfig, limit: usize) -> Result<RobustnessVerdict> {
    let a = m.assembled();
    let ground = graver_basis(m.ground())?;
    let graver = multiset_graver_from(m, &ground, limit as u64)?;
    let an = MarkovAnalysis::with_graver(&a, graver, limit)?;
    let ind = an.indispensables();
    let univ = an.universal_markov();
    let graver = an.graver();
    if ind.len() == graver.len() {
        return Ok(RobustnessVerdict {
            tag: Robustness::StronglyRobust,
            source: VerdictSource::Computed,
            witness: None,
            note: None,
        });
    }
    let (tag, kind, u) = if univ.len() == graver.len() {
        let u = graver.iter().find(|u| !ind.contains(u)).expect("some element is dispensable");
        (Robustness::WeaklyRobustOnly, SplitKind::Semiconformal, u)
    } else {
        let u = graver.iter().find(|u| !univ.contains(u)).expect("some element is outside");
        (Robustness::NotWeaklyRobust, SplitKind::StronglySemiconformal, u)
    };
    let split = match kind {
        SplitKind::Semiconformal => semiconformal_split(&a, u.coords(), limit),
        SplitKind::StronglySemiconformal => strongly_semiconformal_split(&a, u.coords(), limit),
    };
    let (witness, note) = match split {
        Ok(Some(s)) => (Some(Witness { kind, u: u.coords().to_vec(), v: s.v, w: s.w }), None),
        Ok(None) => {
            return Err(ToricError::Inconsistent(format!(
                "fiber analysis and split search disagree on ({u})"
            )))
        }
        Err(e) => (None, Some(format!("witness for ({u}) not searched: {e}"))),
    };
    Ok(RobustnessVerdict { tag, source: VerdictSource::Computed, witness, note })
}

/// Robustness of `I_A`. Self-dual inputs are answered by the theorems; other
/// inputs are computed when their fibers can be enumerated and reported as
/// unknown otherwise. With `verify`, self-dual inputs are also computed and
/// any disagreement is an error.
pub fn classify_robustness(m: &MultisetConfig, verify: bool) -> Result<RobustnessVerdict> {
    let selfdual = match is_selfdual(m) {
        Ok(v) => v.is_selfdual,
        Err(ToricError::NotProjective) => false,
        Err(e) => return Err(e),
    };
    if !selfdual {
        return match robustness_computed(m, FIBER_LIMIT) {
            Ok(v) => Ok(v),
            Err(e) if e.is_hypothesis_rejection() => Ok(RobustnessVerdict {
                tag: Robustness::Unknown,
                source: VerdictSource::Computed,
                witness: None,
                note: Some(e.to_string()),
            }),
            Err(e) => Err(e),
        };
    }
    let (s, _) = pyramidality_of_multiset(m);
    let verdict = if s == 0 {
        RobustnessVerdict {
            tag: Robustness::StronglyRobust,
            source: VerdictSource::Theorem,
            witness: None,
            note: None,
        }
    } else {
        let witness = pyramidal_witness(m)?;
        if witness.is_none() {
            return Err(ToricError::Inconsistent(
                "pyramidal self-dual configuration without a repeated block or repeated non-free column"
                    .into(),
            ));
        }
        RobustnessVerdict {
            tag: Robustness::WeaklyRobustOnly,
            source: VerdictSource::Theorem,
            witness,
            note: None,
        }
    };
    if verify {
        let computed = robustness_computed(m, FIBER_LIMIT)?;
        if computed.tag != verdict.tag {
            return Err(ToricError::Inconsistent(format!(
                "self-dual configuration: theorem gives {}, computation gives {}",
                verdict.tag.as_str(),
                computed.tag.as_str()
            )));
        }
    }
    Ok(verdict)
}

/// Size of the universal Gröbner basis when a single ground column `i` is
/// repeated: `C(k_i+1, 2) + #{u ∈ Gr(C) : u_i = 0} + (k_i+1)·#{u : u_i ≠ 0}`.
pub fn ugb_count_single_repeat(m: &MultisetConfig) -> Result<BigInt> {
    let repeated: Vec<usize> = (0..m.n_ground()).filter(|&i| m.mult()[i] > 0).collect();
    if repeated.len() > 1 {
        return Err(ToricError::HypothesisFailed(format!(
            "{} ground columns are repeated; the count covers a single repeated column",
            repeated.len()
        )));
    }
    let ground = graver_basis(m.ground())?;
    // strongly robust: UGB is squeezed between a minimal Markov basis and Gr
    check_formula_hypotheses(m, &ground, FIBER_LIMIT)?;
    let Some(&i) = repeated.first() else {
        return Ok(BigInt::from(ground.len()));
    };
    let k = m.mult()[i];
    let hit = ground.iter().filter(|u| !u.coords()[i].is_zero()).count();
    let miss = ground.len() - hit;
    Ok(binomial(&BigInt::from(k + 1), 2) + BigInt::from(miss) + BigInt::from((k + 1) * hit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_one_is_selfdual() {
        let (m, _) = MultisetConfig::fold(&IntMat::from_rows(&[[1, 1]]));
        assert!(is_selfdual(&m).unwrap().is_selfdual);
        assert!(selfdual_by_bouquet_sums(&IntMat::from_rows(&[[1, 1]])).unwrap());
    }

    #[test]
    fn two_two_three_is_not_projective() {
        // (1,1,1) is not a multiple of (2,2,3), so self-duality is not posed
        let m = MultisetConfig::new(IntMat::from_rows(&[[2, 3]]), vec![1, 0]).unwrap();
        assert_eq!(is_selfdual(&m), Err(ToricError::NotProjective));
        let m = MultisetConfig::new(IntMat::from_rows(&[[1, 1], [2, 3]]), vec![1, 0]).unwrap();
        let v = is_selfdual(&m).unwrap();
        assert!(!v.is_selfdual);
        assert_eq!(v.path, SelfDualPath::PyramidalSplit);
    }

    #[test]
    fn identity_is_pyramidal() {
        let m = MultisetConfig::plain(IntMat::identity(2)).unwrap();
        assert_eq!(pyramidality_of_multiset(&m), (2, vec![0, 1]));
        assert!(!is_selfdual(&m).unwrap().is_selfdual);
    }

    #[test]
    fn non_projective_is_rejected() {
        let m = MultisetConfig::plain(IntMat::from_rows(&[[1, 2]])).unwrap();
        assert_eq!(is_selfdual(&m), Err(ToricError::NotProjective));
    }

    #[test]
    fn two_two_three_robustness() {
        let m = MultisetConfig::new(IntMat::from_rows(&[[2, 3]]), vec![1, 0]).unwrap();
        let v = classify_robustness(&m, false).unwrap();
        assert_eq!(v.tag, Robustness::WeaklyRobustOnly);
        let w = v.witness.unwrap();
        assert!(is_semiconformal_sum(&w.u, &w.v, &w.w));
        assert_eq!(ugb_count_single_repeat(&m).unwrap(), BigInt::from(3));
    }

    #[test]
    fn ugb_rejects_two_repeated_columns() {
        let m = MultisetConfig::new(IntMat::from_rows(&[[2, 3]]), vec![1, 1]).unwrap();
        assert!(matches!(ugb_count_single_repeat(&m), Err(ToricError::HypothesisFailed(_))));
    }
}
