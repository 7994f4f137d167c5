//! Seeded random elements for property suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::local_field::{ExtensionKind, LocalField, PadicScalar};
use crate::matrix::PadicMatrix;

/// SplitMix64 finalizer; decorrelates per-trial seeds.
pub fn mix(seed: u64, idx: u64) -> u64 {
    let mut z = seed ^ idx.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x632B_E59B_D9B4_E019);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64, idx: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed, idx))
}

/// Uniform element of `ϖ_E^min_val · O_E` at full precision.
pub fn random_scalar<R: Rng + ?Sized>(field: &LocalField, rng: &mut R, min_val: i64) -> PadicScalar {
    let (ma, mb) = field.moduli(field.precision() as i64);
    let a = rng.gen_range(0..ma);
    let b = if field.kind() == ExtensionKind::Trivial { 0 } else { rng.gen_range(0..ma.max(mb)) };
    field.from_parts(min_val, a, b)
}

/// Uniform unit of `O_E`.
pub fn random_unit<R: Rng + ?Sized>(field: &LocalField, rng: &mut R) -> PadicScalar {
    loop {
        let x = random_scalar(field, rng, 0);
        if x.val_digits() == Some(0) {
            return x;
        }
    }
}

/// Unit congruent to 1 modulo `ϖ_E^depth`.
pub fn random_principal_unit<R: Rng + ?Sized>(field: &LocalField, rng: &mut R, depth: i64) -> PadicScalar {
    field.one() + random_scalar(field, rng, depth)
}

/// Entry `(i, j)` uniform in `ϖ_E^t(i,j) · O_E`.
pub fn random_matrix_with<R: Rng + ?Sized>(
    field: &LocalField,
    n: usize,
    rng: &mut R,
    threshold: impl Fn(usize, usize) -> i64,
) -> PadicMatrix {
    PadicMatrix::from_fn(*field, n, |i, j| random_scalar(field, rng, threshold(i, j)))
}

/// Uniform element of `ϖ_E^min_val · M_n(O_E)`.
pub fn random_matrix<R: Rng + ?Sized>(field: &LocalField, n: usize, rng: &mut R, min_val: i64) -> PadicMatrix {
    random_matrix_with(field, n, rng, |_, _| min_val)
}

/// Uniform element of `GL_n(O_E)`.
pub fn random_gl_integral<R: Rng + ?Sized>(field: &LocalField, n: usize, rng: &mut R) -> PadicMatrix {
    loop {
        let a = random_matrix(field, n, rng, 0);
        if a.det().val_digits() == Some(0) {
            return a;
        }
    }
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        v.swap(i, j);
    }
    v
}
