//! Brute-force reference implementations for desk-scale instances.
//!
//! Nothing here uses bouquets, completion or the fiber enumerator: kernel
//! vectors come from scanning a box, fibers from scanning below a grading,
//! Markov bases from trying subsets, and Gröbner bases from Buchberger's
//! algorithm on binomials. They are slow by design and exist to check the
//! fast code paths.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Result, ToricError};
use crate::exactla::{positive_grading, IntMat};
use crate::graver::KernelVector;

fn small_matrix(a: &IntMat) -> Result<Vec<Vec<i64>>> {
    a.to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().ok_or_else(|| ToricError::Infeasible("entries too large for the oracle".into())))
                .collect()
        })
        .collect()
}

fn mul(a: &[Vec<i64>], z: &[i64]) -> Vec<i64> {
    a.iter().map(|r| r.iter().zip(z).map(|(x, y)| x * y).sum()).collect()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Calls `f` on every vector of `[lo, hi]^n` in lexicographic order.
fn for_each_in_box(n: usize, lo: i64, hi: i64, mut f: impl FnMut(&[i64])) {
    let mut v = vec![lo; n];
    loop {
        f(&v);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if v[i] < hi {
                v[i] += 1;
                break;
            }
            v[i] = lo;
        }
    }
}

fn below(v: &[i64], u: &[i64]) -> bool {
    v.iter().zip(u).all(|(&a, &b)| a == 0 || (a.signum() == b.signum() && a.abs() <= b.abs()))
}

/// The Graver elements with every coordinate in `[−bound, bound]`: the
/// ⊑-minimal nonzero kernel vectors of the box. Since anything ⊑ a box
/// vector is in the box, this is exactly `Gr(A) ∩ box`.
pub fn box_graver(a: &IntMat, bound: i64) -> Result<Vec<KernelVector>> {
    let m = small_matrix(a)?;
    let n = a.cols();
    let size = (2 * bound + 1).checked_pow(n as u32).unwrap_or(i64::MAX);
    if size > 20_000_000 {
        return Err(ToricError::Infeasible(format!("box has {size} points")));
    }
    let mut kernel: Vec<Vec<i64>> = Vec::new();
    for_each_in_box(n, -bound, bound, |v| {
        if v.iter().any(|&x| x != 0) && mul(&m, v).iter().all(|&x| x == 0) {
            kernel.push(v.to_vec());
        }
    });
    let minimal: BTreeSet<KernelVector> = kernel
        .iter()
        .filter(|u| !kernel.iter().any(|v| v != *u && below(v, u)))
        .map(|u| KernelVector::new(big(u)))
        .collect();
    Ok(minimal.into_iter().collect())
}

/// All `z ≥ 0` with `Az = b`, by scanning coordinates below the bounds given
/// by a positive grading.
pub fn scan_fiber(a: &IntMat, b: &[BigInt]) -> Result<Vec<Vec<i64>>> {
    let m = small_matrix(a)?;
    let y = positive_grading(a).ok_or(ToricError::NotPointed { witness: Vec::new() })?;
    let g: Vec<i64> = a
        .transpose()
        .mul_vec(&y)?
        .iter()
        .map(|x| x.to_i64().expect("small"))
        .collect();
    let b: Vec<i64> = b.iter().map(|x| x.to_i64().expect("small")).collect();
    let total: i64 = y.iter().zip(&b).map(|(p, q)| p.to_i64().expect("small") * q).sum();
    let mut out = Vec::new();
    if total < 0 {
        return Ok(out);
    }
    fn rec(i: usize, left: i64, z: &mut Vec<i64>, g: &[i64], m: &[Vec<i64>], b: &[i64], out: &mut Vec<Vec<i64>>) {
        if i == g.len() {
            if mul(m, z) == b {
                out.push(z.clone());
            }
            return;
        }
        for x in 0..=left / g[i] {
            z.push(x);
            rec(i + 1, left - x * g[i], z, g, m, b, out);
            z.pop();
        }
    }
    rec(0, total, &mut Vec::new(), &g, &m, &b, &mut out);
    Ok(out)
}

/// Whether the moves `±moves` connect all points of the fiber.
pub fn connects(moves: &[Vec<i64>], points: &[Vec<i64>]) -> bool {
    if points.len() <= 1 {
        return true;
    }
    let index: HashMap<&[i64], usize> =
        points.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut seen = vec![false; points.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for mv in moves {
            for s in [1, -1] {
                let q: Vec<i64> = points[i].iter().zip(mv).map(|(x, y)| x + s * y).collect();
                if let Some(&j) = index.get(q.as_slice()) {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
    }
    seen.into_iter().all(|x| x)
}

/// Every inclusion-minimal subset of `candidates` that connects the fibers
/// of all degrees `Az` with `z ∈ [0, bound]^n`. With the Graver basis as
/// candidates and a box reaching every Betti degree, these are exactly the
/// minimal Markov bases.
pub fn minimal_markov_bases(
    a: &IntMat,
    candidates: &[KernelVector],
    bound: i64,
) -> Result<Vec<Vec<KernelVector>>> {
    if candidates.len() > 16 {
        return Err(ToricError::Infeasible(format!("{} candidates", candidates.len())));
    }
    let m = small_matrix(a)?;
    let mut degrees: BTreeSet<Vec<i64>> = BTreeSet::new();
    for_each_in_box(a.cols(), 0, bound, |z| {
        degrees.insert(mul(&m, z));
    });
    let mut fibers = Vec::new();
    for b in &degrees {
        let f = scan_fiber(a, &big(b))?;
        if f.len() > 1 {
            fibers.push(f);
        }
    }
    let moves: Vec<Vec<i64>> = candidates
        .iter()
        .map(|u| u.coords().iter().map(|x| x.to_i64().expect("small")).collect())
        .collect();
    let k = moves.len();
    let is_markov = |mask: u32| {
        let chosen: Vec<Vec<i64>> =
            (0..k).filter(|i| mask >> i & 1 == 1).map(|i| moves[i].clone()).collect();
        fibers.iter().all(|f| connects(&chosen, f))
    };
    let mut out = Vec::new();
    for mask in 0u32..(1 << k) {
        if is_markov(mask) && (0..k).filter(|i| mask >> i & 1 == 1).all(|i| !is_markov(mask & !(1 << i))) {
            out.push((0..k).filter(|i| mask >> i & 1 == 1).map(|i| candidates[i].clone()).collect());
        }
    }
    Ok(out)
}

/// A term order: compare `w·x`, then break ties lexicographically.
fn greater(w: &[i64], x: &[i64], y: &[i64]) -> bool {
    let (a, b): (i64, i64) = (
        w.iter().zip(x).map(|(p, q)| p * q).sum(),
        w.iter().zip(y).map(|(p, q)| p * q).sum(),
    );
    if a != b {
        return a > b;
    }
    x > y
}

/// A binomial `x^lead − x^trail`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Binomial {
    lead: Vec<i64>,
    trail: Vec<i64>,
}

fn oriented(w: &[i64], p: Vec<i64>, q: Vec<i64>) -> Option<Binomial> {
    if p == q {
        None
    } else if greater(w, &p, &q) {
        Some(Binomial { lead: p, trail: q })
    } else {
        Some(Binomial { lead: q, trail: p })
    }
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn normal_form(basis: &[Binomial], mut p: Vec<i64>) -> Vec<i64> {
    'outer: loop {
        for g in basis {
            if divides(&g.lead, &p) {
                for ((x, l), t) in p.iter_mut().zip(&g.lead).zip(&g.trail) {
                    *x += t - l;
                }
                continue 'outer;
            }
        }
        return p;
    }
}

/// The reduced Gröbner basis of the ideal generated by the binomials of
/// `gens` under the order given by `w`, as kernel vectors `lead − trail`.
pub fn reduced_groebner_basis(gens: &[KernelVector], w: &[i64]) -> Vec<KernelVector> {
    let split = |u: &KernelVector| -> (Vec<i64>, Vec<i64>) {
        let c: Vec<i64> = u.coords().iter().map(|x| x.to_i64().expect("small")).collect();
        (c.iter().map(|&x| x.max(0)).collect(), c.iter().map(|&x| (-x).max(0)).collect())
    };
    let mut basis: Vec<Binomial> =
        gens.iter().filter_map(|u| { let (p, q) = split(u); oriented(w, p, q) }).collect();
    let mut pairs: Vec<(usize, usize)> =
        (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (f, g) = (&basis[i], &basis[j]);
        let lcm: Vec<i64> = f.lead.iter().zip(&g.lead).map(|(x, y)| *x.max(y)).collect();
        let s1: Vec<i64> = lcm.iter().zip(&f.lead).zip(&f.trail).map(|((m, l), t)| m - l + t).collect();
        let s2: Vec<i64> = lcm.iter().zip(&g.lead).zip(&g.trail).map(|((m, l), t)| m - l + t).collect();
        let (r1, r2) = (normal_form(&basis, s1), normal_form(&basis, s2));
        if let Some(b) = oriented(w, r1, r2) {
            basis.push(b);
            let j = basis.len() - 1;
            pairs.extend((0..j).map(|i| (i, j)));
        }
    }
    // minimize, then reduce trailing terms
    let mut minimal: Vec<Binomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && divides(&h.lead, &g.lead) && (h.lead != g.lead || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let reduced: BTreeSet<KernelVector> = minimal
        .iter()
        .map(|g| {
            let t = normal_form(&minimal, g.trail.clone());
            KernelVector::new(big(&g.lead.iter().zip(&t).map(|(x, y)| x - y).collect::<Vec<_>>()))
        })
        .collect();
    reduced.into_iter().collect()
}

/// Union of the reduced Gröbner bases over the orders given by all weight
/// vectors in `[1, max_weight]^n` (each refined lexicographically).
pub fn universal_groebner_sample(gens: &[KernelVector], n: usize, max_weight: i64) -> Vec<KernelVector> {
    let mut out = BTreeSet::new();
    for_each_in_box(n, 1, max_weight, |w| {
        out.extend(reduced_groebner_basis(gens, w));
    });
    out.into_iter().collect()
}
