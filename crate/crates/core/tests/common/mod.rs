#![allow(dead_code)]

use num_bigint::BigInt;
use toric_core::glm::{GlmSpec, PyramidalFamilySpec};
use toric_core::{IntMat, KernelVector, MultisetConfig};

pub fn bv(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn vv(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
    v.iter().map(|x| bv(x)).collect()
}

pub fn kv(v: &[i64]) -> KernelVector {
    KernelVector::from_i64(v)
}

pub fn a4567() -> IntMat {
    IntMat::from_rows(&[[4, 5, 6, 7]])
}

/// The 29 Graver elements of (4 5 6 7) as printed.
pub const GRAVER_4567: [[i64; 4]; 29] = [
    [5, -4, 0, 0], [1, -2, 1, 0], [2, -3, 0, 1], [4, -2, -1, 0], [3, -1, 0, -1],
    [1, -1, -1, 1], [2, 1, -1, -1], [1, 2, 0, -2], [3, 0, -2, 0], [2, 0, 1, -2],
    [5, 0, -1, -2], [4, 1, 0, -3], [7, 0, 0, -4], [0, 1, -2, 1], [2, 2, -3, 0],
    [1, 0, -3, 2], [1, 3, -2, -1], [1, 1, 2, -3], [0, 4, -1, -2], [0, 3, 1, -3],
    [1, 4, -4, 0], [1, 0, 4, -4], [1, -5, 0, 3], [0, 5, -3, -1], [0, 2, 3, -4],
    [0, 6, -5, 0], [0, 1, 5, -5], [0, 7, 0, -5], [0, 0, 7, -6],
];

pub fn graver_4567_sorted() -> Vec<KernelVector> {
    let mut g: Vec<KernelVector> = GRAVER_4567.iter().map(|v| kv(v)).collect();
    g.sort();
    g
}

/// c′ vectors shared by both worked GLM examples.
pub fn c_prime_examples() -> Vec<Vec<BigInt>> {
    vv(&[&[1, -1], &[7, -4, -3], &[2023, 1, -2024], &[1, 3, -2, -2]])
}

/// λ choices printed alongside the examples.
pub fn lambda_examples() -> Vec<Vec<BigInt>> {
    vv(&[&[1, 0], &[1, 0, 2], &[0, 1, 0], &[0, 1, 1, 0]])
}

pub fn spec35() -> GlmSpec {
    GlmSpec::with_lambdas(vv(&[&[4], &[5], &[6], &[7]]), c_prime_examples(), lambda_examples())
        .unwrap()
}

pub fn ex35_matrix() -> IntMat {
    IntMat::from_rows(&[
        [4, 0, 5, 0, 10, 0, 6, 0, 0, 7, 7, 0],
        [1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 4, 7, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 3, 0, 7, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, -1, 2023, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 2024, 0, 2023, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, -3, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 1],
    ])
}

pub fn c1_matrix() -> IntMat {
    IntMat::from_rows(&[
        [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 4, 0, 5, 0, 10, 0, 6, 0, 0, 7, 7, 0],
        [-3, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [-5, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [-7, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 4, 7, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 3, 0, 7, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 2023, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 2024, 0, 2023, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -3, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 1],
    ])
}

/// Pyramidal family over a′ = (0,4),(0,5),(0,6),(0,7) with c′_0 = (1,3,5,7).
pub fn family36(multiplicities: Vec<usize>) -> PyramidalFamilySpec {
    let base = GlmSpec::with_lambdas(
        vv(&[&[0, 4], &[0, 5], &[0, 6], &[0, 7]]),
        c_prime_examples(),
        lambda_examples(),
    )
    .unwrap();
    PyramidalFamilySpec { k: 4, c_prime_0: bv(&[1, 3, 5, 7]), base, multiplicities }
}

/// C_1 with its first four columns repeated once each.
pub fn e1() -> MultisetConfig {
    let mut mult = vec![0; 16];
    mult[..4].fill(1);
    MultisetConfig::new(c1_matrix(), mult).unwrap()
}

/// C_1 with column 12 repeated four times.
pub fn e2() -> MultisetConfig {
    let mut mult = vec![0; 16];
    mult[11] = 4;
    MultisetConfig::new(c1_matrix(), mult).unwrap()
}

/// The multiset {2, 2, 3}.
pub fn two_two_three() -> MultisetConfig {
    MultisetConfig::new(IntMat::from_rows(&[[2, 3]]), vec![1, 0]).unwrap()
}

/// GLM((2 3) | (1,−1), (2,−1,−1)) with λ = (1,0), (1,1,0).
pub fn small_glm() -> IntMat {
    IntMat::from_rows(&[[2, 0, 3, 3, 0], [1, 1, 0, 0, 0], [0, 0, 1, 2, 0], [0, 0, 1, 0, 2]])
}

pub mod random {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use rand::Rng;
    use toric_core::glm::{build_selfdual_family, GlmSpec, PyramidalFamilySpec};
    use toric_core::MultisetConfig;

    fn nonzero<R: Rng>(rng: &mut R, r: i64) -> i64 {
        loop {
            let x = rng.gen_range(-r..=r);
            if x != 0 {
                return x;
            }
        }
    }

    fn primitive(v: &[i64]) -> bool {
        v.iter().fold(0i64, |g, x| g.gcd(x)) == 1
    }

    /// A valid `c′` of length `m`: full support, first entry positive, gcd 1.
    /// With `zero_sum` the entries also add up to 0 (needs `m ≥ 2`).
    pub fn c_prime<R: Rng>(rng: &mut R, m: usize, zero_sum: bool) -> Vec<i64> {
        loop {
            let mut v: Vec<i64> = (0..m).map(|_| nonzero(rng, 5)).collect();
            v[0] = v[0].abs();
            if zero_sum {
                let s: i64 = v[..m - 1].iter().sum();
                v[m - 1] = -s;
                if v[m - 1] == 0 || v[m - 1].abs() > 5 {
                    continue;
                }
            }
            if primitive(&v) {
                return v;
            }
        }
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// A GLM with `d ≤ 2`, `s ≤ 3`, `m_i ≤ 3` and entries in `[−5, 5]`.
    pub fn glm<R: Rng>(rng: &mut R, zero_sum: bool) -> GlmSpec {
        let d = rng.gen_range(1..=2);
        let s = rng.gen_range(1..=3);
        let a: Vec<Vec<BigInt>> =
            (0..s).map(|_| big(&(0..d).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>())).collect();
        let lo = if zero_sum { 2 } else { 1 };
        let c: Vec<Vec<BigInt>> =
            (0..s)
            .map(|_| {
                let m = rng.gen_range(lo..=3);
                big(&c_prime(rng, m, zero_sum))
            })
            .collect();
        GlmSpec::new(a, c).expect("valid by construction")
    }

    /// A member of the pyramidal self-dual family: `k ≤ 2`, base a′ = (0, x_i)
    /// with `x_i ≠ 0` and at least two blocks, zero-sum `c′`, random
    /// multiplicities summing to `k`. `None` if two ground columns coincide.
    pub fn family<R: Rng>(rng: &mut R) -> Option<MultisetConfig> {
        let k = rng.gen_range(1..=2);
        let s = rng.gen_range(2..=3);
        let a: Vec<Vec<BigInt>> = (0..s).map(|_| big(&[0, nonzero(rng, 5)])).collect();
        let c: Vec<Vec<BigInt>> = (0..s)
            .map(|_| {
                let m = rng.gen_range(2..=3);
                big(&c_prime(rng, m, true))
            })
            .collect();
        let base = GlmSpec::new(a, c).ok()?;
        let mut c0 = vec![BigInt::from(1)];
        c0.extend((1..k).map(|_| BigInt::from(rng.gen_range(-5..=5))));
        let n = k + base.n();
        let mut mult = vec![0; n];
        for _ in 0..k {
            mult[rng.gen_range(0..n)] += 1;
        }
        let spec = PyramidalFamilySpec { k, c_prime_0: c0, base, multiplicities: mult };
        build_selfdual_family(&spec).ok()
    }
}
