//! Critical-pair completion for Graver bases.
//!
//! Starting from a lattice basis, the set `G` is closed under the rule: for
//! every `f, g ∈ ±G`, the normal form of `f + g` under conformal reduction
//! by `±G` must vanish; otherwise it joins `G`. At the fixed point `G`
//! contains the Graver basis, which is then extracted as the ⊑-minimal
//! elements. The loop runs on machine words and restarts on big integers
//! if an intermediate sum overflows.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

pub(crate) trait Coord: Clone + Eq + Ord + Debug {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn sign(&self) -> i8;
    fn magnitude(&self) -> u128;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    /// `|self| ≤ |other|`.
    fn abs_le(&self, other: &Self) -> bool;
}

impl Coord for i64 {
    fn from_big(x: &BigInt) -> Option<Self> {
        // keep headroom so negation never overflows
        x.to_i64().filter(|v| *v != i64::MIN)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn sign(&self) -> i8 {
        self.signum() as i8
    }
    fn magnitude(&self) -> u128 {
        self.unsigned_abs() as u128
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i64::checked_add(*self, *other).filter(|v| *v != i64::MIN)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i64::checked_sub(*self, *other).filter(|v| *v != i64::MIN)
    }
    fn abs_le(&self, other: &Self) -> bool {
        self.unsigned_abs() <= other.unsigned_abs()
    }
}

impl Coord for BigInt {
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn sign(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn magnitude(&self) -> u128 {
        self.abs().to_u128().unwrap_or(u128::MAX)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn abs_le(&self, other: &Self) -> bool {
        self.magnitude_cmp(other) != std::cmp::Ordering::Greater
    }
}

trait MagnitudeCmp {
    fn magnitude_cmp(&self, other: &Self) -> std::cmp::Ordering;
}

impl MagnitudeCmp for BigInt {
    fn magnitude_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.magnitude().cmp(other.magnitude())
    }
}

/// A vector with its sign pattern cached as bitmasks (when `n ≤ 128`).
#[derive(Clone, Debug)]
struct Elem<T> {
    v: Vec<T>,
    pos: u128,
    neg: u128,
    norm: u128,
}

impl<T: Coord> Elem<T> {
    fn new(v: Vec<T>) -> Self {
        let (mut pos, mut neg, mut norm) = (0u128, 0u128, 0u128);
        for (i, x) in v.iter().enumerate().take(128) {
            match x.sign() {
                1 => pos |= 1 << i,
                -1 => neg |= 1 << i,
                _ => {}
            }
        }
        for x in &v {
            norm = norm.saturating_add(x.magnitude());
        }
        Elem { v, pos, neg, norm }
    }

    fn is_zero(&self) -> bool {
        self.v.iter().all(|x| x.sign() == 0)
    }
}

struct Completion<T> {
    elems: Vec<Elem<T>>,
    masks: bool,
}

impl<T: Coord> Completion<T> {
    /// `s·g ⊑ x` for the sign `s` (±1).
    fn below(&self, g: &Elem<T>, s: i8, x: &Elem<T>) -> bool {
        if self.masks {
            let (gp, gn) = if s > 0 { (g.pos, g.neg) } else { (g.neg, g.pos) };
            if gp & !x.pos != 0 || gn & !x.neg != 0 {
                return false;
            }
        }
        g.v.iter().zip(&x.v).all(|(a, b)| {
            let sa = a.sign() * s;
            sa == 0 || (sa == b.sign() && a.abs_le(b))
        })
    }

    fn normal_form(&self, mut x: Elem<T>) -> Elem<T> {
        'outer: loop {
            if x.is_zero() {
                return x;
            }
            for g in &self.elems {
                if g.norm > x.norm {
                    continue;
                }
                for s in [1i8, -1] {
                    if self.below(g, s, &x) {
                        let v = x
                            .v
                            .iter()
                            .zip(&g.v)
                            .map(|(a, b)| {
                                if s > 0 {
                                    a.checked_sub(b).expect("conformal difference shrinks")
                                } else {
                                    a.checked_add(b).expect("conformal difference shrinks")
                                }
                            })
                            .collect();
                        x = Elem::new(v);
                        continue 'outer;
                    }
                }
            }
            return x;
        }
    }

    /// Whether `f + s·g` has any cancellation; without cancellation the sum
    /// is conformal and reduces to zero.
    fn cancels(&self, f: &Elem<T>, g: &Elem<T>, s: i8) -> bool {
        if self.masks {
            if s > 0 {
                (f.pos & g.neg) | (f.neg & g.pos) != 0
            } else {
                (f.pos & g.pos) | (f.neg & g.neg) != 0
            }
        } else {
            f.v.iter().zip(&g.v).any(|(a, b)| a.sign() != 0 && a.sign() == -s * b.sign())
        }
    }
}

type PairQueue = BinaryHeap<Reverse<(u128, usize, usize, bool)>>;

fn push_pairs<T: Coord>(c: &Completion<T>, queue: &mut PairQueue, j: usize) {
    let g = &c.elems[j];
    for (i, f) in c.elems[..j].iter().enumerate() {
        let key = f.norm.saturating_add(g.norm);
        if c.cancels(f, g, 1) {
            queue.push(Reverse((key, i, j, true)));
        }
        if c.cancels(f, g, -1) {
            queue.push(Reverse((key, i, j, false)));
        }
    }
}

/// Runs the completion on `gens` (a lattice generating set). Returns `None`
/// if an intermediate value does not fit in `T`.
fn complete<T: Coord>(gens: &[Vec<BigInt>], n: usize) -> Option<Vec<Vec<T>>> {
    let mut c = Completion { elems: Vec::new(), masks: n <= 128 };
    let mut queue = PairQueue::new();
    for g in gens {
        let v: Vec<T> = g.iter().map(T::from_big).collect::<Option<_>>()?;
        let r = c.normal_form(Elem::new(v));
        if !r.is_zero() {
            c.elems.push(r);
            push_pairs(&c, &mut queue, c.elems.len() - 1);
        }
    }
    while let Some(Reverse((_, i, j, plus))) = queue.pop() {
        let (f, g) = (&c.elems[i], &c.elems[j]);
        let v: Vec<T> = f
            .v
            .iter()
            .zip(&g.v)
            .map(|(a, b)| if plus { a.checked_add(b) } else { a.checked_sub(b) })
            .collect::<Option<_>>()?;
        let r = c.normal_form(Elem::new(v));
        if !r.is_zero() {
            c.elems.push(r);
            push_pairs(&c, &mut queue, c.elems.len() - 1);
        }
    }
    // keep the ⊑-minimal elements
    let elems = &c.elems;
    let keep: Vec<Vec<T>> = elems
        .iter()
        .enumerate()
        .filter(|(i, x)| {
            !elems.iter().enumerate().any(|(j, g)| {
                j != *i && g.norm <= x.norm && (c.below(g, 1, x) || c.below(g, -1, x)) && {
                    // equal up to sign: keep the earlier copy only
                    g.norm < x.norm || j < *i
                }
            })
        })
        .map(|(_, x)| x.v.clone())
        .collect();
    Some(keep)
}

/// Graver basis of the lattice generated by `gens` (vectors of length `n`),
/// one vector per ± pair, in no particular sign or order.
pub(crate) fn graver_of_lattice(gens: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    if let Some(out) = complete::<i64>(gens, n) {
        return out.into_iter().map(|v| v.iter().map(Coord::to_big).collect()).collect();
    }
    complete::<BigInt>(gens, n).expect("big integers do not overflow")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn bv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_one_lattice() {
        let g = graver_of_lattice(&[bv(&[3, -2])], 2);
        assert_eq!(g.len(), 1);
    }

    fn canonical(vs: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = vs
            .into_iter()
            .map(|v| {
                let flip = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
                if flip { v.iter().map(|x| -x).collect() } else { v }
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn both_paths_agree() {
        let gens = [bv(&[1, 1, -2, 0]), bv(&[0, 3, -1, -1])];
        let small = complete::<i64>(&gens, 4).unwrap();
        let small = small.into_iter().map(|v| v.iter().map(Coord::to_big).collect()).collect();
        let big = complete::<BigInt>(&gens, 4).unwrap();
        assert_eq!(canonical(small), canonical(big));
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        // (h,1,0) + (h,-1,1) = (2h,0,1) is a Graver element beyond i64
        let h = BigInt::from(i64::MAX / 2 + 7);
        let gens = [
            vec![h.clone(), BigInt::from(1), BigInt::zero()],
            vec![h.clone(), BigInt::from(-1), BigInt::from(1)],
        ];
        assert!(complete::<i64>(&gens, 3).is_none());
        let g = graver_of_lattice(&gens, 3);
        let two_h = vec![&h * 2, BigInt::zero(), BigInt::from(1)];
        let neg = |v: &Vec<BigInt>| v.iter().map(|x| -x).collect::<Vec<_>>();
        assert!(g.iter().any(|v| *v == two_h || neg(v) == two_h));
        assert!(g.iter().any(|v| *v == bv(&[0, 2, -1]) || neg(v) == bv(&[0, 2, -1])));
    }
}
