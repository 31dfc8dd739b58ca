mod common;

use std::time::Instant;

use common::*;
use num_bigint::BigInt;
use toric_core::graver::{
    graver_basis, is_semiconformal_sum, is_strongly_semiconformal_sum, multiset_graver,
};
use toric_core::selfdual::Robustness;
use toric_core::markov::*;

#[test]
fn e1_minimal_markov_is_graver() {
    let t = Instant::now();
    let m = e1();
    let a = m.assembled();
    let gr = multiset_graver(&m, 1_000_000).unwrap();
    assert_eq!(gr.len(), 33);
    let an = MarkovAnalysis::with_graver(&a, gr.clone(), FIBER_LIMIT).unwrap();
    assert_eq!(an.minimal_markov(), gr);
    assert_eq!(an.indispensables(), gr);
    assert_eq!(an.count_minimal_markov(), BigInt::from(1));
    assert!(t.elapsed().as_secs() < 5);
}

#[test]
fn ex35_all_indispensable() {
    let t = Instant::now();
    let a = ex35_matrix();
    let an = MarkovAnalysis::new(&a, FIBER_LIMIT).unwrap();
    assert_eq!(an.indispensables().len(), 29);
    assert!(t.elapsed().as_secs() < 10);
}

#[test]
fn four_five_six_seven_universal() {
    let a = a4567();
    let an = MarkovAnalysis::new(&a, FIBER_LIMIT).unwrap();
    let u = kv(&[1, 3, -2, -1]);
    let um = an.universal_markov();
    assert_eq!(an.minimal_markov().len(), 6);
    assert_eq!(um.len(), 8);
    assert_eq!(an.indispensables().len(), 3);
    assert!(!um.contains(&u));
    let s = strongly_semiconformal_split(&a, u.coords(), 10_000).unwrap().expect("split");
    assert!(is_strongly_semiconformal_sum(u.coords(), &s.v, &s.w));
    assert_eq!(um, universal_markov_by_splits(&a, 100_000).unwrap());
    assert!(is_semiconformal_sum(u.coords(), &bv(&[1, 2, 0, -2]), &bv(&[0, 1, -2, 1])));
    assert!(um.iter().all(|x| graver_basis(&a).unwrap().contains(x)));
}

#[test]
fn e2_report() {
    let t = Instant::now();
    let r = toric_core::analysis::analyze(&e2(), &Default::default()).unwrap();
    assert_eq!(r.counts.graver, Some("3190871732551685".parse().unwrap()));
    assert_eq!(r.counts.ugb, Some(BigInt::from(123)));
    assert_eq!(r.counts.minimal_markov, Some(BigInt::from(33)));
    assert!(r.counts.markov_bases.is_some());
    assert_eq!(r.robustness.tag, Robustness::WeaklyRobustOnly);
    assert!(r.bases.graver.is_none());
    assert!(t.elapsed().as_secs() < 10);
}
