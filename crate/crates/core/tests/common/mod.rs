#![allow(dead_code)] // each test binary uses its own subset

//! Shared test oracles, deliberately independent of the library's
//! enumeration machinery: plain binary vertex order, from-scratch images,
//! one sequential accumulator.

use badsci::matrix::SignedPermutation;
use badsci::rng;
use badsci::TestMatrix;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Brute-force reference for beta.
pub fn beta_brute(m: &TestMatrix) -> f64 {
    let n = m.n();
    let mut total = 0.0;
    for v in 0..(1u64 << n) {
        total += linf_brute(m, v);
    }
    total / (1u64 << n) as f64
}

/// Brute-force max_i |<a_i, x>| for the vertex encoded by the bits of `v`.
pub fn linf_brute(m: &TestMatrix, v: u64) -> f64 {
    let n = m.n();
    let mut best = 0.0f64;
    for i in 0..n {
        let mut dot = 0.0;
        for j in 0..n {
            if (v >> j) & 1 == 1 {
                dot -= m.get(i, j);
            } else {
                dot += m.get(i, j);
            }
        }
        best = best.max(dot.abs());
    }
    best
}

/// Brute-force E|<row_i, x>| over the cube.
pub fn row_mean_abs_brute(m: &TestMatrix, i: usize) -> f64 {
    let n = m.n();
    let mut total = 0.0;
    for v in 0..(1u64 << n) {
        let mut dot = 0.0;
        for j in 0..n {
            if (v >> j) & 1 == 1 {
                dot -= m.get(i, j);
            } else {
                dot += m.get(i, j);
            }
        }
        total += dot.abs();
    }
    total / (1u64 << n) as f64
}

/// Row-normalized matrix with iid Gaussian entries.
pub fn random_unit_rows(n: usize, seed: u64) -> TestMatrix {
    let mut rng = rng::seeded(seed);
    let entries: Vec<f64> = (0..n * n)
        .map(|_| StandardNormal.sample(&mut rng))
        .collect();
    badsci::normalize_rows(&TestMatrix::from_flat(n, entries).unwrap()).unwrap()
}

/// Uniform random signed permutation.
pub fn random_signed_permutation(n: usize, seed: u64) -> SignedPermutation {
    let mut rng = rng::seeded(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let signs: Vec<i8> = (0..n)
        .map(|_| if rng.random::<bool>() { 1 } else { -1 })
        .collect();
    SignedPermutation::new(perm, signs).unwrap()
}
