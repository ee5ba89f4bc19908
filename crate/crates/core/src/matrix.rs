//! Square matrix container and the elementary operations the rest of the
//! crate is built on: row normalization, sign-vector images, and the signed
//! permutation symmetries that leave the objective invariant.

use crate::error::{Error, Result};

/// An n-by-n real matrix stored row-major, with cached row l2 norms.
///
/// Entries must be finite. Any finite matrix can be evaluated; constructors
/// and the search enforce unit rows where the problem calls for it.
#[derive(Debug, Clone, PartialEq)]
pub struct TestMatrix {
    n: usize,
    entries: Vec<f64>,
    row_norms: Vec<f64>,
}

impl TestMatrix {
    /// Build from a row-major slice of length n*n.
    pub fn from_flat(n: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        for (idx, &v) in entries.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    row: idx / n,
                    col: idx % n,
                });
            }
        }
        let row_norms = (0..n)
            .map(|i| l2_norm(&entries[i * n..(i + 1) * n]))
            .collect();
        Ok(Self {
            n,
            entries,
            row_norms,
        })
    }

    /// Build from nested rows, rejecting ragged input.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedRow {
                    row: i,
                    expected: n,
                    got: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::from_flat(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Cached l2 norms of the rows.
    pub fn row_norms(&self) -> &[f64] {
        &self.row_norms
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks_exact(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    /// Column `j` as an owned vector.
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    /// Per-row sums, i.e. the image of the all-plus vertex.
    pub fn row_sums(&self) -> Vec<f64> {
        self.rows().map(|r| r.iter().sum()).collect()
    }

    /// Largest deviation of any row norm from 1.
    pub fn max_row_norm_deviation(&self) -> f64 {
        self.row_norms
            .iter()
            .fold(0.0, |acc, &r| acc.max((r - 1.0).abs()))
    }

    /// Whether every row has unit l2 norm within `tol`.
    pub fn is_row_normalized(&self, tol: f64) -> bool {
        self.max_row_norm_deviation() <= tol
    }
}

fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|&x| x * x).sum::<f64>().sqrt()
}

/// Rescale every row to unit l2 norm.
///
/// Fails with [`Error::ZeroRow`] when a row norm is below 1e-300, which
/// signals a degenerate perturbation rather than a usable matrix.
pub fn normalize_rows(m: &TestMatrix) -> Result<TestMatrix> {
    let n = m.n();
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in m.rows().enumerate() {
        let norm = l2_norm(row);
        if norm < 1e-300 {
            return Err(Error::ZeroRow { row: i });
        }
        entries.extend(row.iter().map(|&v| v / norm));
    }
    TestMatrix::from_flat(n, entries)
}

/// Rescale every column to unit l2 norm.
pub fn normalize_columns(m: &TestMatrix) -> Result<TestMatrix> {
    let n = m.n();
    let mut col_norms = vec![0.0f64; n];
    for row in m.rows() {
        for (j, &v) in row.iter().enumerate() {
            col_norms[j] += v * v;
        }
    }
    for (j, c) in col_norms.iter_mut().enumerate() {
        *c = c.sqrt();
        if *c < 1e-300 {
            return Err(Error::ZeroRow { row: j });
        }
    }
    let entries = m
        .entries()
        .iter()
        .enumerate()
        .map(|(idx, &v)| v / col_norms[idx % n])
        .collect();
    TestMatrix::from_flat(n, entries)
}

/// max_i |<row_i, x>| for a sign vector x with entries in {-1, +1}.
pub fn linf_image(m: &TestMatrix, x: &[i8]) -> Result<f64> {
    if x.len() != m.n() {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            got: x.len(),
        });
    }
    debug_assert!(x.iter().all(|&s| s == 1 || s == -1));
    Ok(linf_image_unchecked(m, x))
}

/// Same as [`linf_image`] without the dimension check; used by the
/// enumeration kernels.
pub(crate) fn linf_image_unchecked(m: &TestMatrix, x: &[i8]) -> f64 {
    let xf: Vec<f64> = x.iter().map(|&s| f64::from(s)).collect();
    linf_image_signs(m, &xf)
}

/// Hot-path variant taking the sign vector as +-1.0 floats.
pub(crate) fn linf_image_signs(m: &TestMatrix, xf: &[f64]) -> f64 {
    let mut best = 0.0f64;
    for row in m.rows() {
        best = best.max(dot_signs(row, xf).abs());
    }
    best
}

/// Dot product against a +-1 vector, four accumulator lanes.
///
/// Multiplying by +-1.0 and the fixed lane/combine order make the result
/// negate exactly when `xf` negates, so `linf(m, x) == linf(m, -x)` holds
/// bit for bit.
pub(crate) fn dot_signs(row: &[f64], xf: &[f64]) -> f64 {
    let mut acc = [0.0f64; 4];
    let chunks = row.chunks_exact(4);
    let tail_r = chunks.remainder();
    let mut xchunks = xf.chunks_exact(4);
    for r in chunks {
        let xs = xchunks.next().expect("equal lengths");
        acc[0] += r[0] * xs[0];
        acc[1] += r[1] * xs[1];
        acc[2] += r[2] * xs[2];
        acc[3] += r[3] * xs[3];
    }
    let mut tail = 0.0;
    for (&a, &s) in tail_r.iter().zip(xchunks.remainder()) {
        tail += a * s;
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// A permutation of {0..n-1} together with a sign per index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    /// Validate that `perm` is a bijection and signs are exactly +-1.
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        if perm.len() != signs.len() {
            return Err(Error::DimensionMismatch {
                expected: perm.len(),
                got: signs.len(),
            });
        }
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::DomainError(format!(
                    "perm is not a bijection of 0..{n}"
                )));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::DomainError("signs must be exactly +-1".into()));
        }
        Ok(Self { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }
}

/// Apply the signed-permutation symmetry group:
/// `out[i][j] = left.sign[i] * m[left.perm[i]][right.perm[j]] * right.sign[j]`.
///
/// Entries are moved and negated only, never rounded. The left action
/// permutes and flips the coordinates being maximized; the right action maps
/// the sign-vector cube onto itself, so the objective is invariant.
pub fn apply_symmetry(
    m: &TestMatrix,
    left: &SignedPermutation,
    right: &SignedPermutation,
) -> Result<TestMatrix> {
    let n = m.n();
    if left.size() != n || right.size() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: if left.size() != n {
                left.size()
            } else {
                right.size()
            },
        });
    }
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        let src = left.perm[i];
        let ls = left.signs[i] as f64;
        for j in 0..n {
            let v = m.get(src, right.perm[j]) * right.signs[j] as f64;
            entries.push(ls * v);
        }
    }
    TestMatrix::from_flat(n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(n: usize) -> TestMatrix {
        let mut e = vec![0.0; n * n];
        for i in 0..n {
            e[i * n + i] = 1.0;
        }
        TestMatrix::from_flat(n, e).unwrap()
    }

    #[test]
    fn from_rows_rejects_ragged() {
        let err = TestMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0]]).unwrap_err();
        assert!(matches!(err, Error::RaggedRow { row: 1, .. }));
    }

    #[test]
    fn from_flat_rejects_non_finite() {
        let err = TestMatrix::from_flat(2, vec![1.0, f64::NAN, 0.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { row: 0, col: 1 }));
    }

    #[test]
    fn normalize_rows_identity_is_fixed() {
        let m = identity(3);
        let out = normalize_rows(&m).unwrap();
        assert_eq!(out.entries(), m.entries());
    }

    #[test]
    fn normalize_rows_all_ones() {
        let m = TestMatrix::from_flat(2, vec![1.0; 4]).unwrap();
        let out = normalize_rows(&m).unwrap();
        let e = std::f64::consts::FRAC_1_SQRT_2;
        for &v in out.entries() {
            assert!((v - e).abs() < 1e-15, "expected 1/sqrt(2), got {v}");
        }
    }

    #[test]
    fn normalize_rows_three_four_five() {
        let m = TestMatrix::from_rows(vec![vec![3.0, 4.0], vec![0.0, 1.0]]).unwrap();
        let out = normalize_rows(&m).unwrap();
        assert_eq!(out.row(0), &[0.6, 0.8]);
    }

    #[test]
    fn normalize_rows_zero_row_fails() {
        let m = TestMatrix::from_rows(vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(normalize_rows(&m), Err(Error::ZeroRow { row: 0 })));
    }

    #[test]
    fn linf_image_identity() {
        let m = identity(3);
        assert_eq!(linf_image(&m, &[1, -1, 1]).unwrap(), 1.0);
    }

    #[test]
    fn linf_image_rotation_by_pi_over_four() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let m = TestMatrix::from_rows(vec![vec![s, s], vec![s, -s]]).unwrap();
        let v = linf_image(&m, &[1, 1]).unwrap();
        assert!((v - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn linf_image_dimension_mismatch() {
        let m = identity(3);
        assert!(matches!(
            linf_image(&m, &[1, 1]),
            Err(Error::DimensionMismatch {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn linf_image_antipodal_bit_exact() {
        let mut rng = crate::rng::seeded(42);
        for _ in 0..50 {
            let n = 5;
            let m = crate::constructions::random_orthogonal(n, rand::RngCore::next_u64(&mut rng))
                .unwrap();
            let mut x = vec![0i8; n];
            crate::rng::fill_sign_vector(&mut rng, &mut x);
            let neg: Vec<i8> = x.iter().map(|&s| -s).collect();
            let a = linf_image(&m, &x).unwrap();
            let b = linf_image(&m, &neg).unwrap();
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn apply_symmetry_identity_is_noop() {
        let m = TestMatrix::from_rows(vec![vec![0.3, -0.7], vec![0.5, 0.1]]).unwrap();
        let id = SignedPermutation::identity(2);
        let out = apply_symmetry(&m, &id, &id).unwrap();
        assert_eq!(out.entries(), m.entries());
    }

    #[test]
    fn apply_symmetry_left_row_swap() {
        let m = TestMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let swap = SignedPermutation::new(vec![1, 0], vec![1, 1]).unwrap();
        let id = SignedPermutation::identity(2);
        let out = apply_symmetry(&m, &swap, &id).unwrap();
        assert_eq!(out.entries(), &[3.0, 4.0, 1.0, 2.0]);
    }

    #[test]
    fn apply_symmetry_right_column_sign_flip() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let m = TestMatrix::from_rows(vec![vec![s, s], vec![s, -s]]).unwrap();
        let id = SignedPermutation::identity(2);
        let flip = SignedPermutation::new(vec![0, 1], vec![-1, 1]).unwrap();
        let out = apply_symmetry(&m, &id, &flip).unwrap();
        assert_eq!(out.entries(), &[-s, s, -s, -s]);
    }

    #[test]
    fn signed_permutation_rejects_non_bijection() {
        assert!(SignedPermutation::new(vec![0, 0], vec![1, 1]).is_err());
        assert!(SignedPermutation::new(vec![0, 1], vec![1, 2]).is_err());
    }
}
