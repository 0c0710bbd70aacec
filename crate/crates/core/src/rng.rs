//! Seeded random streams.
//!
//! Every random quantity in the crate is drawn from ChaCha8 keyed by a
//! 64-bit seed: the 32-byte key is the seed in little-endian order in bytes
//! 0..8, a one-byte stream tag in byte 8, and zeros elsewhere. Uniform reals
//! are `(next_u64 >> 11) * 2^-53`. Independent purposes use distinct stream
//! tags so that, for example, point positions and coin flips drawn from the
//! same seed never share keystream.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream tags used across the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Stream {
    Points = 0,
    Symbols = 1,
    Subgraphs = 2,
    Motions = 3,
    Auxiliary = 4,
}

pub fn seeded(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8] = stream as u8;
    ChaCha8Rng::from_seed(key)
}

/// Uniform in `[0, 1)` with 53 random bits.
#[inline]
pub fn unit_f64<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform integer in `0..n` (Lemire's multiply-shift with rejection).
pub fn below<R: RngCore + ?Sized>(rng: &mut R, n: u64) -> u64 {
    assert!(n > 0);
    let threshold = n.wrapping_neg() % n;
    loop {
        let m = (rng.next_u64() as u128) * (n as u128);
        if (m as u64) >= threshold {
            return (m >> 64) as u64;
        }
    }
}
