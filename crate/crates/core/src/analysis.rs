//! The full pipeline for one configuration: bouquets, self-duality,
//! robustness, bases where they can be enumerated, and exact counts.

use num_bigint::BigInt;
use serde::Serialize;

use crate::bouquet::{bouquet_decompose, BouquetKind};
use crate::error::{Result, ToricError};
use crate::graver::{
    circuits_via_bouquet, graver_basis, multiset_graver_count, multiset_graver_from, KernelVector,
    MultisetConfig,
};
use crate::markov::{
    all_bouquets_mixed, count_minimal_markov_multiset_formula_from, MarkovAnalysis, FIBER_LIMIT,
};
use crate::selfdual::{
    classify_robustness, is_selfdual, pyramidality_of_multiset, ugb_count_single_repeat,
    RobustnessVerdict, SelfDualVerdict,
};

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Largest Graver basis that is listed explicitly.
    pub basis_limit: u64,
    pub fiber_limit: usize,
    /// Also compute the robustness verdict of self-dual inputs and compare.
    pub verify: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { basis_limit: 100_000, fiber_limit: FIBER_LIMIT, verify: false }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Counts {
    #[serde(serialize_with = "ser_opt_big")]
    pub graver: Option<BigInt>,
    #[serde(serialize_with = "ser_opt_big")]
    pub circuits: Option<BigInt>,
    #[serde(serialize_with = "ser_opt_big")]
    pub minimal_markov: Option<BigInt>,
    #[serde(serialize_with = "ser_opt_big")]
    pub markov_bases: Option<BigInt>,
    #[serde(serialize_with = "ser_opt_big")]
    pub ugb: Option<BigInt>,
}

fn ser_opt_big<S: serde::Serializer>(x: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Bases {
    pub graver: Option<Vec<KernelVector>>,
    pub circuits: Option<Vec<KernelVector>>,
    pub minimal_markov: Option<Vec<KernelVector>>,
    pub universal_markov: Option<Vec<KernelVector>>,
    pub indispensables: Option<Vec<KernelVector>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BouquetSummary {
    pub members: Vec<usize>,
    pub kind: BouquetKind,
    #[serde(serialize_with = "crate::io::ser_big_vec")]
    pub c: Vec<BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub rows: usize,
    pub cols: usize,
    pub mult: Vec<usize>,
    pub bouquets: Vec<BouquetSummary>,
    pub selfdual: Option<bool>,
    pub selfdual_detail: Option<SelfDualVerdict>,
    pub pyramidality: usize,
    pub free_columns: Vec<usize>,
    pub robustness: RobustnessVerdict,
    pub counts: Counts,
    pub bases: Bases,
    /// Parts of the analysis that were skipped, and why.
    pub notes: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub fn analyze(m: &MultisetConfig, opts: &AnalyzeOptions) -> Result<Report> {
    let a = m.assembled();
    let mut notes = Vec::new();
    let dec = bouquet_decompose(&a);
    let bouquets = dec
        .bouquets()
        .iter()
        .map(|b| BouquetSummary { members: b.members.clone(), kind: b.kind, c: b.c_block() })
        .collect();
    let (selfdual, selfdual_detail) = match is_selfdual(m) {
        Ok(v) => (Some(v.is_selfdual), Some(v)),
        Err(ToricError::NotProjective) => {
            notes.push("self-duality not decided: the configuration is not projective".into());
            (None, None)
        }
        Err(e) => return Err(e),
    };
    let (pyramidality, free_columns) = pyramidality_of_multiset(m);
    let robustness = classify_robustness(m, opts.verify)?;

    let mut counts = Counts::default();
    let mut bases = Bases::default();
    let ground = graver_basis(m.ground())?;
    let graver_count = multiset_graver_count(&ground, m.mult());
    counts.graver = Some(graver_count.clone());

    match ugb_count_single_repeat(m) {
        Ok(x) => counts.ugb = Some(x),
        Err(e) if e.is_hypothesis_rejection() => notes.push(format!("ugb formula not applicable: {e}")),
        Err(e) => return Err(e),
    }

    match circuits_via_bouquet(&a) {
        Ok(c) => {
            counts.circuits = Some(BigInt::from(c.len()));
            bases.circuits = Some(c);
        }
        Err(e) => notes.push(format!("circuits: {e}")),
    }

    let mut markov_done = false;
    if graver_count <= BigInt::from(opts.basis_limit) {
        let graver = multiset_graver_from(m, &ground, opts.basis_limit)?;
        match MarkovAnalysis::with_graver(&a, graver.clone(), opts.fiber_limit) {
            Ok(an) => {
                let mm = an.minimal_markov();
                counts.minimal_markov = Some(BigInt::from(mm.len()));
                counts.markov_bases = Some(an.count_minimal_markov());
                bases.minimal_markov = Some(mm);
                bases.universal_markov = Some(an.universal_markov());
                bases.indispensables = Some(an.indispensables());
                markov_done = true;
            }
            Err(ToricError::Infeasible(msg)) => {
                notes.push(format!("fiber enumeration infeasible: {msg}"));
                if all_bouquets_mixed(&a) {
                    // strongly robust with every Graver element indispensable
                    counts.minimal_markov = Some(BigInt::from(graver.len()));
                    counts.markov_bases = Some(BigInt::from(1));
                    bases.minimal_markov = Some(graver.clone());
                    bases.universal_markov = Some(graver.clone());
                    bases.indispensables = Some(graver.clone());
                    markov_done = true;
                }
            }
            Err(e) => return Err(e),
        }
        bases.graver = Some(graver);
    } else {
        notes.push(format!(
            "enumeration infeasible: the Graver basis has {graver_count} elements (limit {})",
            opts.basis_limit
        ));
    }
    if !markov_done {
        match count_minimal_markov_multiset_formula_from(m, &ground) {
            Ok(omega) => {
                counts.markov_bases = Some(omega);
                counts.minimal_markov = Some(BigInt::from(m.k() + ground.len()));
            }
            Err(e) if e.is_hypothesis_rejection() => {
                notes.push(format!("Markov counts not available: {e}"))
            }
            Err(e) => return Err(e),
        }
    }

    Ok(Report {
        rows: a.rows(),
        cols: a.cols(),
        mult: m.mult().to_vec(),
        bouquets,
        selfdual,
        selfdual_detail,
        pyramidality,
        free_columns,
        robustness,
        counts,
        bases,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::IntMat;
    use crate::selfdual::Robustness;

    #[test]
    fn two_two_three() {
        let m = MultisetConfig::new(IntMat::from_rows(&[[2, 3]]), vec![1, 0]).unwrap();
        let r = analyze(&m, &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.selfdual, None);
        assert_eq!(r.counts.graver, Some(BigInt::from(5)));
        assert_eq!(r.counts.markov_bases, Some(BigInt::from(4)));
        assert_eq!(r.counts.ugb, Some(BigInt::from(3)));
        assert_eq!(r.robustness.tag, Robustness::WeaklyRobustOnly);
        assert!(r.notes.iter().any(|n| n.contains("not projective")));
    }

    #[test]
    fn basis_limit_skips_listing() {
        let m = MultisetConfig::plain(IntMat::from_rows(&[[4, 5, 6, 7]])).unwrap();
        let opts = AnalyzeOptions { basis_limit: 10, ..Default::default() };
        let r = analyze(&m, &opts).unwrap();
        assert_eq!(r.counts.graver, Some(BigInt::from(29)));
        assert!(r.bases.graver.is_none());
        assert!(r.counts.markov_bases.is_none());
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["counts"]["graver"], "29");
    }
}
