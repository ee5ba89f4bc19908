//! Deterministic matrix generators: the recursive Haar-wavelet family, the
//! catalog of named candidate maximizers for n <= 8, and the random ensembles
//! used for experiments and search seeding.

use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::matrix::TestMatrix;
use crate::rng;

/// Largest supported `k` for the Haar recursion (2^14 = 16384 rows).
pub const MAX_HAAR_K: usize = 14;

/// The unnormalized Haar-wavelet-transpose family, entries in {-1, 0, +1}.
///
/// Generated by the recursion `A_{k+1} = [[A_k, I], [A_k, -I]]` with rows
/// interleaved so that rows `2i` and `2i+1` extend row `i` by `+e_i` and
/// `-e_i`; this ordering matches the 4x4 and 8x8 catalog instances (n4_C, n8_haar).
/// Every row has exactly `k+1` nonzero entries, and every sign vector maps to
/// an image whose largest absolute coordinate is exactly `k+1`.
pub fn haar_unnormalized(k: usize) -> Result<Vec<Vec<i32>>> {
    if k > MAX_HAAR_K {
        return Err(Error::SizeGuard {
            what: "haar recursion depth k",
            value: k,
            max: MAX_HAAR_K,
        });
    }
    let mut m = vec![vec![1]];
    for step in 0..k {
        let size = 1usize << step;
        let mut next = Vec::with_capacity(2 * size);
        for (i, row) in m.iter().enumerate() {
            for sign in [1, -1] {
                let mut r = Vec::with_capacity(2 * size);
                r.extend_from_slice(row);
                r.extend((0..size).map(|c| if c == i { sign } else { 0 }));
                next.push(r);
            }
        }
        m = next;
    }
    Ok(m)
}

/// The row-normalized Haar family: `haar_unnormalized(k) / sqrt(k+1)`.
///
/// Every sign vector maps to an image with largest absolute coordinate
/// exactly `sqrt(k+1)`, so beta equals `sqrt(log2(n) + 1)` for `n = 2^k`.
pub fn haar_matrix(k: usize) -> Result<TestMatrix> {
    let raw = haar_unnormalized(k)?;
    let scale = 1.0 / ((k as f64) + 1.0).sqrt();
    let rows = raw
        .into_iter()
        .map(|row| row.into_iter().map(|v| f64::from(v) * scale).collect())
        .collect();
    TestMatrix::from_rows(rows)
}

/// The n-by-n identity.
pub fn identity_matrix(n: usize) -> TestMatrix {
    let mut e = vec![0.0; n * n];
    for i in 0..n {
        e[i * n + i] = 1.0;
    }
    TestMatrix::from_flat(n, e).expect("identity entries are finite")
}

/// The all-entries `1/sqrt(n)` matrix; every test just averages the tosses.
pub fn mean_matrix(n: usize) -> TestMatrix {
    assert!(n >= 1, "mean_matrix requires n >= 1");
    let v = 1.0 / (n as f64).sqrt();
    TestMatrix::from_flat(n, vec![v; n * n]).expect("entries are finite")
}

/// Random matrix with iid entries `+-1/sqrt(n)`, rows exactly unit norm.
///
/// Entry `(i, j)` takes its sign from bit `(i*n + j) % 64` of word
/// `(i*n + j) / 64` of the seeded stream, row-major, bit 0 mapping to `+`.
pub fn random_sign_matrix(n: usize, seed: u64) -> TestMatrix {
    assert!(n >= 1, "random_sign_matrix requires n >= 1");
    let mut rng = rng::seeded(seed);
    let mut signs = vec![0i8; n * n];
    rng::fill_sign_vector(&mut rng, &mut signs);
    let v = 1.0 / (n as f64).sqrt();
    let entries = signs.iter().map(|&s| f64::from(s) * v).collect();
    TestMatrix::from_flat(n, entries).expect("entries are finite")
}

const ORTHOGONAL_RETRIES: usize = 8;

/// Random orthogonal matrix: orthonormalize a seeded iid Gaussian matrix.
///
/// Gaussian entries are drawn row-major, one standard normal per entry. The
/// rows are orthonormalized by modified Gram-Schmidt (run twice, which keeps
/// `Q Q^T - I` at machine-precision scale); dividing by the positive residual
/// norm fixes the sign convention of a positive triangular diagonal. A pivot
/// below 1e-12 discards the sample and draws a fresh Gaussian matrix from the
/// same stream, at most 8 times, before failing with
/// [`Error::DegenerateSample`].
pub fn random_orthogonal(n: usize, seed: u64) -> Result<TestMatrix> {
    assert!(n >= 1, "random_orthogonal requires n >= 1");
    let mut rng = rng::seeded(seed);
    for _ in 0..ORTHOGONAL_RETRIES {
        let mut rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| StandardNormal.sample(&mut rng)).collect())
            .collect();
        if orthonormalize(&mut rows) {
            return TestMatrix::from_rows(rows);
        }
    }
    Err(Error::DegenerateSample)
}

fn orthonormalize(rows: &mut [Vec<f64>]) -> bool {
    let n = rows.len();
    for _pass in 0..2 {
        for i in 0..n {
            for j in 0..i {
                let proj: f64 = rows[i]
                    .iter()
                    .zip(rows[j].iter())
                    .map(|(&a, &b)| a * b)
                    .sum();
                let qj = rows[j].clone();
                for (a, &b) in rows[i].iter_mut().zip(&qj) {
                    *a -= proj * b;
                }
            }
            let norm: f64 = rows[i].iter().map(|&v| v * v).sum::<f64>().sqrt();
            if norm < 1e-12 {
                return false;
            }
            for a in rows[i].iter_mut() {
                *a /= norm;
            }
        }
    }
    true
}

/// A named matrix from the candidate-maximizer catalog.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub matrix: TestMatrix,
    /// Exact closed form of beta, e.g. `"(sqrt(2)+sqrt(3))/2"`.
    pub beta_closed_form: &'static str,
    /// Binary64 evaluation of the closed form.
    pub beta_value: f64,
    /// Source label for the entry.
    pub citation: &'static str,
}

/// Names of all catalog entries, in presentation order.
pub fn catalog_names() -> &'static [&'static str] {
    &[
        "n2",
        "n3_best",
        "n3_orthogonal",
        "n4_A",
        "n4_B",
        "n4_C",
        "n5_A",
        "n5_B",
        "n5_C",
        "n6_A",
        "n6_B",
        "n7_A",
        "n8_haar",
        "n8_hadamard",
    ]
}

/// The best catalog entry per dimension, used by the summary table.
pub fn best_entry_for_dimension(n: usize) -> Option<&'static str> {
    match n {
        2 => Some("n2"),
        3 => Some("n3_best"),
        4 => Some("n4_A"),
        5 => Some("n5_A"),
        6 => Some("n6_A"),
        7 => Some("n7_A"),
        8 => Some("n8_haar"),
        _ => None,
    }
}

/// Look up a catalog entry by name.
///
/// Entries are constructed from exact surd constants (`1.0/sqrt(3.0)` and
/// friends), never from decimal literals, so the stored matrices carry no
/// transcription rounding beyond one IEEE division each.
pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let s2 = std::f64::consts::SQRT_2;
    let s3 = 3.0f64.sqrt();
    let s7 = 7.0f64.sqrt();
    let s29 = 29.0f64.sqrt();

    let (rows, beta_closed_form, beta_value, citation): (Vec<Vec<f64>>, &str, f64, &str) =
        match name {
            // The pi/4 rotation; sends every vertex to max-coordinate sqrt(2).
            "n2" => (
                vec![vec![1.0 / s2, 1.0 / s2], vec![1.0 / s2, -1.0 / s2]],
                "sqrt(2)",
                s2,
                "§2.2",
            ),
            // Non-orthogonal; half the vertices reach sqrt(3), half sqrt(2).
            "n3_best" => (
                vec![
                    vec![1.0 / s3, 1.0 / s3, 1.0 / s3],
                    vec![1.0 / s3, 1.0 / s3, -1.0 / s3],
                    vec![1.0 / s2, -1.0 / s2, 0.0],
                ],
                "(sqrt(2)+sqrt(3))/2",
                (s2 + s3) / 2.0,
                "§2.3",
            ),
            "n3_orthogonal" => (
                vec![
                    vec![0.5, 0.5, 1.0 / s2],
                    vec![-0.5, -0.5, 1.0 / s2],
                    vec![1.0 / s2, -1.0 / s2, 0.0],
                ],
                "(2+3*sqrt(2))/4",
                (2.0 + 3.0 * s2) / 4.0,
                "§2.3",
            ),
            // Orthogonal; every vertex reaches exactly sqrt(3).
            "n4_A" => (
                scaled(
                    1.0 / s3,
                    &[
                        &[0.0, 1.0, -1.0, 1.0],
                        &[1.0, -1.0, 0.0, 1.0],
                        &[-1.0, -1.0, -1.0, 0.0],
                        &[-1.0, 0.0, 1.0, 1.0],
                    ],
                ),
                "sqrt(3)",
                s3,
                "§2.4",
            ),
            // Ignores the fourth coordinate entirely.
            "n4_B" => (
                scaled(
                    1.0 / s3,
                    &[
                        &[1.0, 1.0, 1.0, 0.0],
                        &[1.0, -1.0, -1.0, 0.0],
                        &[1.0, -1.0, 1.0, 0.0],
                        &[1.0, 1.0, -1.0, 0.0],
                    ],
                ),
                "sqrt(3)",
                s3,
                "§2.4",
            ),
            // The k=2 instance of the Haar recursion.
            "n4_C" => (
                scaled(
                    1.0 / s3,
                    &[
                        &[1.0, 1.0, 1.0, 0.0],
                        &[1.0, 1.0, -1.0, 0.0],
                        &[1.0, -1.0, 0.0, 1.0],
                        &[1.0, -1.0, 0.0, -1.0],
                    ],
                ),
                "sqrt(3)",
                s3,
                "§2.4",
            ),
            // 8 vertices at max-coordinate 2, 24 at sqrt(3).
            "n5_A" => (
                scaled(
                    1.0 / (2.0 * s3),
                    &[
                        &[2.0, 2.0, 0.0, 0.0, 2.0],
                        &[-2.0, 2.0, 0.0, 2.0, 0.0],
                        &[-2.0, 0.0, 0.0, -2.0, 2.0],
                        &[0.0, -s3, s3, s3, s3],
                        &[0.0, s3, s3, -s3, -s3],
                    ],
                ),
                "(2+3*sqrt(3))/4",
                (2.0 + 3.0 * s3) / 4.0,
                "§2.5",
            ),
            // Same value while ignoring the third coordinate.
            "n5_B" => (
                scaled(
                    1.0 / (2.0 * s3),
                    &[
                        &[-s3, -s3, 0.0, s3, -s3],
                        &[2.0, -2.0, 0.0, 0.0, 2.0],
                        &[s3, s3, 0.0, -s3, -s3],
                        &[-2.0, 0.0, 0.0, -2.0, 2.0],
                        &[0.0, 2.0, 0.0, 2.0, 2.0],
                    ],
                ),
                "(2+3*sqrt(3))/4",
                (2.0 + 3.0 * s3) / 4.0,
                "§2.5",
            ),
            // Suboptimal attractor that keeps reappearing in searches.
            "n5_C" => (
                vec![
                    vec![1.0 / s3, 0.0, -1.0 / s3, 1.0 / s3, 0.0],
                    vec![-1.0 / s29, -3.0 / s29, -3.0 / s29, -3.0 / s29, -1.0 / s29],
                    vec![-1.0 / s3, 0.0, 0.0, 1.0 / s3, -1.0 / s3],
                    vec![1.0 / s29, 3.0 / s29, -1.0 / s29, -3.0 / s29, -3.0 / s29],
                    vec![0.5, -0.5, 0.5, 0.0, -0.5],
                ],
                N5_C_CLOSED_FORM,
                n5_c_beta_value(),
                "§2.5",
            ),
            "n6_A" => (
                scaled(
                    1.0 / (2.0 * s3),
                    &[
                        &[-s3, 0.0, s3, -s3, 0.0, -s3],
                        &[s3, 0.0, -s3, s3, 0.0, -s3],
                        &[s3, 0.0, s3, s3, 0.0, s3],
                        &[2.0, -2.0, 0.0, -2.0, 0.0, 0.0],
                        &[-s3, 0.0, -s3, -s3, 0.0, s3],
                        &[2.0, 2.0, 0.0, -2.0, 0.0, 0.0],
                    ],
                ),
                "(sqrt(3)+2)/2",
                (s3 + 2.0) / 2.0,
                "§2.6",
            ),
            // Near-best attractor featuring sqrt(29) entries again.
            "n6_B" => (
                vec![
                    vec![1.0 / s29, -3.0 / s29, 0.0, 3.0 / s29, 1.0 / s29, -3.0 / s29],
                    vec![0.5, 0.0, 0.5, 0.0, 0.5, 0.5],
                    vec![3.0 / s29, 3.0 / s29, 0.0, 1.0 / s29, -1.0 / s29, -3.0 / s29],
                    vec![0.0, 0.0, 0.0, -1.0 / s3, 1.0 / s3, -1.0 / s3],
                    vec![0.5, -0.5, 0.0, -0.5, -0.5, 0.0],
                    vec![-0.5, 0.0, 0.5, 0.0, -0.5, -0.5],
                ],
                "(6+2*sqrt(3)+sqrt(29))/8",
                (6.0 + 2.0 * s3 + s29) / 8.0,
                "§2.6",
            ),
            // The first coordinate is completely ignored.
            "n7_A" => (
                scaled(
                    0.5,
                    &[
                        &[0.0, -1.0, 1.0, 0.0, -1.0, 0.0, -1.0],
                        &[0.0, -1.0, -1.0, 0.0, 1.0, 0.0, 1.0],
                        &[0.0, 0.0, 1.0, 0.0, 1.0, 1.0, -1.0],
                        &[0.0, 0.0, -1.0, -1.0, -1.0, 1.0, 0.0],
                        &[0.0, 0.0, 1.0, -1.0, 1.0, -1.0, 0.0],
                        &[0.0, 0.0, 2.0 / s3, 0.0, 0.0, 2.0 / s3, 2.0 / s3],
                        &[0.0, 0.0, 1.0, 0.0, -1.0, -1.0, 1.0],
                    ],
                ),
                "(sqrt(3)+6)/4",
                (s3 + 6.0) / 4.0,
                "§2.7",
            ),
            // haar_matrix(3): every vertex reaches exactly 2.
            "n8_haar" => (haar_matrix(3)?.to_rows(), "2", 2.0, "§2.8"),
            // Near-miss built from the order-8 Hadamard matrix.
            "n8_hadamard" => (
                scaled(
                    1.0 / s7,
                    &[
                        &[1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0],
                        &[1.0, 1.0, 1.0, 0.0, -1.0, -1.0, -1.0, -1.0],
                        &[1.0, 1.0, -1.0, 0.0, -1.0, -1.0, 1.0, 1.0],
                        &[1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0, 0.0],
                        &[1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0, 0.0],
                        &[1.0, -1.0, -1.0, 0.0, -1.0, 1.0, 1.0, -1.0],
                        &[1.0, -1.0, 1.0, 0.0, -1.0, 1.0, -1.0, 1.0],
                        &[1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, 0.0],
                    ],
                ),
                "3*sqrt(7)/4",
                3.0 * s7 / 4.0,
                "Fig. 4",
            ),
            _ => return Err(Error::UnknownEntry(name.to_string())),
        };

    Ok(CatalogEntry {
        name: catalog_names()
            .iter()
            .find(|&&k| k == name)
            .expect("matched arm implies known name"),
        matrix: TestMatrix::from_rows(rows)?,
        beta_closed_form,
        beta_value,
        citation,
    })
}

/// All catalog entries in presentation order.
pub fn catalog_entries() -> Vec<CatalogEntry> {
    catalog_names()
        .iter()
        .map(|name| catalog(name).expect("known name"))
        .collect()
}

/// Exact beta of the n5_C attractor, derived from its image census: of the
/// 32 vertices, 4 peak at 11/sqrt(29), 8 at 9/sqrt(29), 16 at sqrt(3) and 4
/// at 2, and (44 + 72)/sqrt(29) = 4*sqrt(29), giving (2+4*sqrt(3)+sqrt(29))/8.
const N5_C_CLOSED_FORM: &str = "(2+4*sqrt(3)+sqrt(29))/8";

fn n5_c_beta_value() -> f64 {
    (2.0 + 4.0 * 3.0f64.sqrt() + 29.0f64.sqrt()) / 8.0
}

fn scaled(scale: f64, rows: &[&[f64]]) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| v * scale).collect())
        .collect()
}
