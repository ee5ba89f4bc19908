//! Repo-wide deterministic random number generation.
//!
//! Every stochastic operation in this crate takes an explicit 64-bit seed and
//! draws from a ChaCha8 stream created by [`seeded`]. Word consumption order
//! is documented per operation so that runs are bit-reproducible across
//! platforms and versions.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The single generator type used everywhere in this crate.
pub type SeededRng = ChaCha8Rng;

/// Create the repo-wide deterministic generator for a seed.
pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Fill `out` with signs in {-1, +1}.
///
/// Consumes one u64 word per 64 coordinates; coordinate `j` takes bit
/// `j % 64` of word `j / 64` (bit 0 = least significant), with bit 0 mapping
/// to +1 and bit 1 to -1.
pub fn fill_sign_vector(rng: &mut SeededRng, out: &mut [i8]) {
    let mut word = 0u64;
    for (j, slot) in out.iter_mut().enumerate() {
        if j % 64 == 0 {
            word = rng.next_u64();
        }
        *slot = if word & 1 == 0 { 1 } else { -1 };
        word >>= 1;
    }
}

/// Mix a base seed with a stream index into a fresh, decorrelated seed.
///
/// SplitMix64 finalizer over `seed XOR (index * golden ratio)`; used by the
/// search loop to derive one seed per proposal so that nearby base seeds do
/// not produce shifted copies of the same proposal stream.
pub fn derive_stream_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_are_reproducible() {
        let mut a = seeded(7);
        let mut b = seeded(7);
        for _ in 0..16 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn sign_vectors_contain_only_signs() {
        let mut rng = seeded(1);
        let mut v = vec![0i8; 129];
        fill_sign_vector(&mut rng, &mut v);
        assert!(v.iter().all(|&s| s == 1 || s == -1));
        assert!(v.contains(&1) && v.contains(&-1));
    }

    #[test]
    fn derived_seeds_differ_for_nearby_inputs() {
        let a = derive_stream_seed(0, 1);
        let b = derive_stream_seed(1, 1);
        let c = derive_stream_seed(0, 2);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_ne!(b, c);
    }
}
