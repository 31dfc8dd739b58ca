//! Acceptance run: one PASS/FAIL line per criterion, with timings.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_core::bouquet::{bouquet_decompose, free_columns};
use toric_core::glm::{build_glm, build_selfdual_family};
use toric_core::graver::{
    binomial, graver_basis, graver_completion, graver_via_bouquet, is_semiconformal_sum,
    multiset_graver, multiset_graver_count,
};
use toric_core::markov::{
    count_minimal_markov_multiset_formula, indispensables, multiset_minimal_markov,
    weighted_spanning_tree_count, MarkovAnalysis, FIBER_LIMIT,
};
use toric_core::oracle::universal_groebner_sample;
use toric_core::selfdual::{
    classify_robustness, is_selfdual, pyramidality_of_multiset, robustness_computed, Robustness,
    ugb_count_single_repeat,
};
use toric_core::{MultisetConfig, ToricError};

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn f(m: u64) -> BigInt {
    binomial(&BigInt::from(m + 4), 4)
}

fn criterion1() -> Check {
    let g = graver_completion(&a4567()).map_err(|e| e.to_string())?;
    ensure(g == graver_4567_sorted(), format!("got {} vectors, not the listed 29", g.len()))
}

fn criterion2() -> Check {
    let c = build_glm(&spec35()).map_err(|e| e.to_string())?;
    ensure(c == ex35_matrix(), "9×12 matrix differs")?;
    let m = build_selfdual_family(&family36(e1().mult().to_vec())).map_err(|e| e.to_string())?;
    ensure(m.ground() == &c1_matrix(), "13×16 matrix differs")
}

fn criterion3() -> Check {
    let g = graver_via_bouquet(&ex35_matrix()).map_err(|e| e.to_string())?;
    ensure(g.len() == 29, format!("{} elements", g.len()))?;
    let d = kv(&[1, -1, 21, -12, -9, -4046, -2, 4048, -1, -3, 2, 2]);
    ensure(g.contains(&d), "D(1,3,−2,−1) missing")?;
    let lifted = bouquet_decompose(&ex35_matrix()).lift(&bv(&[1, 3, -2, -1])).map_err(|e| e.to_string())?;
    ensure(lifted == d.coords(), "lift differs")
}

fn criterion4() -> Check {
    let g = graver_basis(&c1_matrix()).map_err(|e| e.to_string())?;
    let mut hist = std::collections::BTreeMap::new();
    for u in &g {
        *hist.entry(u.coords()[11].magnitude().to_u64().unwrap()).or_insert(0) += 1;
    }
    let want: std::collections::BTreeMap<u64, i32> =
        [(0, 8), (2024, 8), (4048, 4), (6072, 4), (8096, 2), (10120, 2), (14168, 1)].into();
    ensure(hist == want, format!("histogram {hist:?}"))
}

fn criterion5() -> Check {
    let m = e2();
    let ground = graver_basis(m.ground()).map_err(|e| e.to_string())?;
    let omega_small = multiset_graver_count(&ground, m.mult());
    let displayed = BigInt::from(10) + 8 * f(0) + 8 * f(2024) + 4 * f(4048) + 4 * f(6072)
        + 2 * f(8096)
        + 2 * f(10120)
        + f(14168);
    ensure(omega_small == displayed, format!("ω = {omega_small}, display gives {displayed}"))?;
    let top = f(14168).to_f64().unwrap();
    ensure((top / 1.68e15 - 1.0).abs() < 0.01, format!("f(14168) = {}", f(14168)))?;
    let pow = |x: BigInt, e: usize| num_traits::pow(x, e);
    let big_omega = pow(BigInt::from(5), 3)
        * pow(f(0), 8)
        * pow(f(2024), 8)
        * pow(f(4048), 4)
        * pow(f(6072), 4)
        * pow(f(8096), 2)
        * pow(f(10120), 2)
        * f(14168);
    let got = count_minimal_markov_multiset_formula(&m).map_err(|e| e.to_string())?;
    ensure(got == big_omega, "Ω differs from the display")?;
    let ugb = ugb_count_single_repeat(&m).map_err(|e| e.to_string())?;
    ensure(ugb == BigInt::from(123), format!("ugb = {ugb}"))?;
    let mm = multiset_minimal_markov(&m).map_err(|e| e.to_string())?;
    ensure(mm.len() == 33, format!("minimal Markov size {}", mm.len()))?;
    // Gr(E_2) is never enumerated
    match multiset_graver(&m, 2_000_000) {
        Err(ToricError::Infeasible(_)) => Ok(()),
        _ => Err("Graver enumeration of E_2 was not refused".into()),
    }
}

fn criterion6() -> Check {
    let m = e1();
    let g = multiset_graver(&m, 1_000_000).map_err(|e| e.to_string())?;
    ensure(g.len() == 33, format!("{} Graver elements", g.len()))?;
    let an = MarkovAnalysis::with_graver(&m.assembled(), g.clone(), FIBER_LIMIT).map_err(|e| e.to_string())?;
    ensure(an.minimal_markov() == g, "minimal Markov basis differs from Graver")?;
    let v = classify_robustness(&m, false).map_err(|e| e.to_string())?;
    ensure(v.tag == Robustness::StronglyRobust, format!("verdict {}", v.tag.as_str()))?;
    ensure(pyramidality_of_multiset(&m).0 == 0, "pyramidal")
}

fn criterion7() -> Check {
    let u = bv(&[1, 3, -2, -1]);
    ensure(is_semiconformal_sum(&u, &bv(&[1, 2, 0, -2]), &bv(&[0, 1, -2, 1])), "not semiconformal")?;
    let ind = indispensables(&a4567()).map_err(|e| e.to_string())?;
    ensure(!ind.contains(&kv(&[1, 3, -2, -1])), "(1,3,−2,−1) reported indispensable")
}

fn criterion8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut glms = 0;
    let mut multisets = 0;
    let mut selfdual_checked = 0;
    while glms < 60 {
        let spec = random::glm(&mut rng, glms % 3 == 0);
        let a = build_glm(&spec).map_err(|e| e.to_string())?;
        glms += 1;
        let direct = graver_completion(&a);
        let lifted = graver_via_bouquet(&a);
        match (&direct, &lifted) {
            (Ok(x), Ok(y)) => ensure(x == y, format!("completion and lift differ on\n{a}"))?,
            (Err(ToricError::NotPointed { .. }), Err(ToricError::NotPointed { .. })) => {}
            _ => return Err(format!("routes disagree on pointedness for\n{a}")),
        }
        let dec = bouquet_decompose(&a);
        ensure(
            free_columns(&a).is_empty() == free_columns(dec.bouquet_matrix()).is_empty(),
            format!("pyramidality not preserved for\n{a}"),
        )?;
        let Ok(g) = direct else { continue };
        if let Ok(ground) = MultisetConfig::plain(a.clone()) {
            let total = rand::Rng::gen_range(&mut rng, 1..=3);
            let mut mult = vec![0; a.cols()];
            for _ in 0..total {
                mult[rand::Rng::gen_range(&mut rng, 0..a.cols())] += 1;
            }
            let m = MultisetConfig::new(ground.ground().clone(), mult).unwrap();
            // completion on the assembled matrix is the slow side; keep it desk-sized
            if multiset_graver_count(&g, m.mult()) > BigInt::from(1000) {
                continue;
            }
            let lifted = multiset_graver(&m, 200_000).map_err(|e| e.to_string())?;
            let direct = graver_completion(&m.assembled()).map_err(|e| e.to_string())?;
            ensure(lifted == direct, format!("multiset lift differs for\n{a}mult {:?}", m.mult()))?;
            multisets += 1;
        }
        // self-dual instances: theorem verdict against the computed one
        let m = MultisetConfig::plain(a.clone()).map_err(|e| e.to_string())?;
        if let Ok(v) = is_selfdual(&m) {
            if v.is_selfdual && g.len() <= 200 {
                let computed = robustness_computed(&m, FIBER_LIMIT).map_err(|e| e.to_string())?;
                let s = pyramidality_of_multiset(&m).0;
                ensure(
                    (computed.tag == Robustness::StronglyRobust) == (s == 0),
                    format!("self-dual GLM: {} with pyramidality {s}\n{a}", computed.tag.as_str()),
                )?;
                selfdual_checked += 1;
            }
        }
    }
    let mut families = 0;
    while families < 20 {
        let Some(m) = random::family(&mut rng) else { continue };
        families += 1;
        ensure(is_selfdual(&m).map_err(|e| e.to_string())?.is_selfdual, "family not self-dual")?;
        let computed = robustness_computed(&m, FIBER_LIMIT).map_err(|e| e.to_string())?;
        let s = pyramidality_of_multiset(&m).0;
        ensure(
            (computed.tag == Robustness::StronglyRobust) == (s == 0),
            format!("family {:?}: {} with pyramidality {s}\n{}", m.mult(), computed.tag.as_str(), m.ground()),
        )?;
        ensure(computed.tag != Robustness::NotWeaklyRobust, "self-dual but not weakly robust")?;
        selfdual_checked += 1;
    }
    println!("    {glms} GLMs, {multisets} multisets, {selfdual_checked} self-dual robustness checks");
    ensure(glms >= 50 && multisets >= 20 && selfdual_checked >= 20, "too few instances")
}

fn criterion9() -> Check {
    let m = two_two_three();
    let a = m.assembled();
    let an = MarkovAnalysis::new(&a, FIBER_LIMIT).map_err(|e| e.to_string())?;
    ensure(an.minimal_markov().len() == 2, "minimal Markov size")?;
    ensure(an.count_minimal_markov() == BigInt::from(4), "count")?;
    ensure(an.indispensables() == vec![kv(&[1, -1, 0])], "indispensables")?;
    ensure(an.universal_markov() == an.graver() && an.graver().len() == 5, "universal Markov")?;
    let ugb = ugb_count_single_repeat(&m).map_err(|e| e.to_string())?;
    let sampled = universal_groebner_sample(an.graver(), 3, 6);
    ensure(ugb == BigInt::from(3) && sampled.len() == 3, format!("ugb {ugb}, sampled {}", sampled.len()))?;
    ensure(weighted_spanning_tree_count(&[1; 5]) == BigInt::from(125), "5 singletons")
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Check); 9] = [
        ("Graver basis of (4 5 6 7) is the listed 29 vectors", Duration::from_secs(5), criterion1),
        ("GLM goldens: 9×12 matrix and 13×16 matrix C_1", Duration::from_secs(1), criterion2),
        ("bouquet lift of the 9×12 GLM: 29 elements containing D(1,3,−2,−1)", Duration::from_secs(2), criterion3),
        ("12th-coordinate histogram of Gr(C_1)", Duration::from_secs(2), criterion4),
        ("E_2 counts: ω, f(14168), Ω, ugb = 123, minimal Markov size 33", Duration::from_secs(5), criterion5),
        ("E_1: 33 Graver = minimal Markov, strongly robust, non-pyramidal", Duration::from_secs(5), criterion6),
        ("semiconformal witness for (1,3,−2,−1) and its dispensability", Duration::from_secs(10), criterion7),
        ("oracle equivalence suite on random GLMs and families", Duration::from_secs(60), criterion8),
        ("Markov machinery on {2,2,3} and the 5-vertex tree count", Duration::from_secs(5), criterion9),
    ];
    let mut failed = 0;
    for (i, (desc, limit, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = t.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(took <= *limit, format!("took {took:.2?}, limit {limit:?}"))
        });
        match &outcome {
            Ok(()) => println!("criterion {}: PASS  {desc} ({took:.2?}, limit {limit:?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {desc} ({took:.2?}, limit {limit:?}): {e}", i + 1)
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
