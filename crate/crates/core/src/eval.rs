//! Exact evaluation of the objective
//! `beta(A) = 2^-n * sum over x in {-1,1}^n of max_i |<a_i, x>|`
//! by exhaustive enumeration of the sign-vector cube.
//!
//! # Enumeration order
//!
//! Vertices are indexed by an ordinal `v` in `[0, 2^n)`. Ordinals in the
//! first half `[0, 2^(n-1))` walk a binary-reflected Gray code over the low
//! `n-1` coordinates with coordinate `n-1` pinned to +1; the step from
//! ordinal `u-1` to `u` flips coordinate `trailing_zeros(u)`, and the walk
//! starts at the all-plus vertex. Ordinal `H + v` maps to the antipodal image
//! of ordinal `v`. Because `|<a, -x>| == |<a, x>|` holds bit for bit (IEEE
//! rounding is odd-symmetric and the dot product accumulates in a fixed
//! order), the second half of the enumeration reproduces the first half's
//! values exactly, so restricting to `x_{n-1} = +1` ("antipodal halving")
//! returns the same mean to the last bit.
//!
//! # Reduction
//!
//! Values accumulate per block of 2^16 ordinals through a binary-counter
//! pairwise accumulator, and block partials combine by a fixed-shape pairwise
//! tree, so the rounding error stays O(log 2^n) ulps and the result is
//! independent of how many worker threads computed the partials. The Gray
//! walk also restarts from a fresh matrix-vector product at every block
//! boundary, which bounds incremental drift to 2^16 updates.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{dot_signs, linf_image_signs, TestMatrix};

/// Refuse exhaustive enumeration above this dimension unless overridden.
pub const DEFAULT_MAX_EXHAUSTIVE_N: usize = 24;

/// Hard ceiling for the override path; ordinals are u64.
pub const ABSOLUTE_MAX_EXHAUSTIVE_N: usize = 62;

const BLOCK_BITS: u32 = 16;

/// How an exact enumeration computes each image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Recompute `Ax` from scratch at every vertex: O(2^n * n^2).
    Naive,
    /// Maintain `y = Ax` across single-coordinate flips: O(2^n * n).
    GrayCode,
}

/// Provenance of a beta value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactNaive,
    ExactGray,
    MonteCarlo,
}

/// A beta value with provenance.
///
/// Exact methods report `n_samples = 2^n` and `std_error = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaEstimate {
    pub value: f64,
    pub method: Method,
    pub n_samples: u64,
    pub std_error: f64,
}

/// Exact beta with the default dimension guard of
/// [`DEFAULT_MAX_EXHAUSTIVE_N`].
pub fn beta_exact(
    m: &TestMatrix,
    strategy: Strategy,
    use_antipodal_halving: bool,
) -> Result<BetaEstimate> {
    beta_exact_with_limit(m, strategy, use_antipodal_halving, DEFAULT_MAX_EXHAUSTIVE_N)
}

/// Exact beta with a caller-chosen dimension guard.
pub fn beta_exact_with_limit(
    m: &TestMatrix,
    strategy: Strategy,
    use_antipodal_halving: bool,
    max_n: usize,
) -> Result<BetaEstimate> {
    let n = m.n();
    if n == 0 {
        return Err(Error::DomainError("cannot evaluate an empty matrix".into()));
    }
    let limit = max_n.min(ABSOLUTE_MAX_EXHAUSTIVE_N);
    if n > limit {
        return Err(Error::DimensionTooLarge { n, max: limit });
    }

    let half_count: u64 = 1u64 << (n - 1);
    let block_size = half_count.min(1u64 << BLOCK_BITS);
    let blocks_per_half = half_count / block_size;
    let total_blocks = if use_antipodal_halving {
        blocks_per_half
    } else {
        2 * blocks_per_half
    };

    let cols: Vec<Vec<f64>> = (0..n).map(|j| m.column(j)).collect();
    let block_partial = |k: u64| -> f64 {
        let negate = k >= blocks_per_half;
        let local_start = (k % blocks_per_half) * block_size;
        match strategy {
            Strategy::GrayCode => gray_block(m, &cols, local_start, block_size, negate),
            Strategy::Naive => naive_block(m, local_start, block_size, negate),
        }
    };

    let partials: Vec<f64> = if total_blocks <= 2 {
        (0..total_blocks).map(block_partial).collect()
    } else {
        (0..total_blocks)
            .into_par_iter()
            .map(block_partial)
            .collect()
    };

    let vertices_enumerated = if use_antipodal_halving {
        half_count
    } else {
        2 * half_count
    };
    let value = pairwise_sum(&partials) / vertices_enumerated as f64;

    Ok(BetaEstimate {
        value,
        method: match strategy {
            Strategy::Naive => Method::ExactNaive,
            Strategy::GrayCode => Method::ExactGray,
        },
        n_samples: 2 * half_count,
        std_error: 0.0,
    })
}

/// Sign vector for a first-half ordinal: Gray code of `u` on the low
/// coordinates, coordinate `n-1` fixed at +1; `negate` yields the antipodal
/// second-half vertex.
fn fill_vertex(u: u64, negate: bool, xf: &mut [f64]) {
    let n = xf.len();
    debug_assert!(u < (1u64 << (n - 1)) || n == 1 && u == 0);
    let g = u ^ (u >> 1);
    let plus = if negate { -1.0 } else { 1.0 };
    xf.fill(plus);
    for (j, slot) in xf.iter_mut().enumerate().take(n - 1) {
        if (g >> j) & 1 == 1 {
            *slot = -plus;
        }
    }
}

fn max_abs(y: &[f64]) -> f64 {
    y.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()))
}

fn gray_block(m: &TestMatrix, cols: &[Vec<f64>], local_start: u64, len: u64, negate: bool) -> f64 {
    let mut xf = vec![0.0; m.n()];
    fill_vertex(local_start, negate, &mut xf);
    let mut y: Vec<f64> = m.rows().map(|row| dot_signs(row, &xf)).collect();
    let mut acc = PairwiseAccumulator::new();
    acc.push(max_abs(&y));
    for t in 1..len {
        let c = (local_start + t).trailing_zeros() as usize;
        xf[c] = -xf[c];
        let step = 2.0 * xf[c];
        for (yi, &cv) in y.iter_mut().zip(&cols[c]) {
            *yi += step * cv;
        }
        acc.push(max_abs(&y));
    }
    acc.finish()
}

fn naive_block(m: &TestMatrix, local_start: u64, len: u64, negate: bool) -> f64 {
    let mut acc = PairwiseAccumulator::new();
    let mut xf = vec![0.0; m.n()];
    for t in 0..len {
        fill_vertex(local_start + t, negate, &mut xf);
        acc.push(linf_image_signs(m, &xf));
    }
    acc.finish()
}

/// Streaming pairwise summation: level `i` holds the sum of a completed run
/// of 2^i consecutive inputs. Pushing 2^k values and finishing is exactly a
/// balanced binary reduction tree.
pub(crate) struct PairwiseAccumulator {
    levels: [f64; 64],
    filled: u64,
}

impl PairwiseAccumulator {
    pub(crate) fn new() -> Self {
        Self {
            levels: [0.0; 64],
            filled: 0,
        }
    }

    pub(crate) fn push(&mut self, value: f64) {
        let mut v = value;
        let mut i = 0;
        while self.filled & (1 << i) != 0 {
            v += self.levels[i];
            self.filled &= !(1 << i);
            i += 1;
        }
        self.levels[i] = v;
        self.filled |= 1 << i;
    }

    pub(crate) fn finish(&self) -> f64 {
        let mut total = 0.0;
        for i in 0..64 {
            if self.filled & (1 << i) != 0 {
                total += self.levels[i];
            }
        }
        total
    }
}

/// Fixed-shape pairwise tree: split at the midpoint and recurse. The shape
/// depends only on the length, so equal inputs give bit-equal sums.
pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        len => {
            let (lo, hi) = xs.split_at(len / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}
