//! Deterministic seed derivation for experiment tasks.
//!
//! Every random draw in a sweep comes from a generator seeded by a pure
//! function of the master seed and the task coordinates, so results do not
//! depend on scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent random streams used within one task.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Topology = 1,
    Truth = 2,
    Walks = 3,
    Consistency = 4,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for `(master, stream, m, k, run)`.
pub fn derive(master: u64, stream: Stream, m: u64, k: u64, run: u64) -> u64 {
    [stream as u64, m, k, run]
        .into_iter()
        .fold(splitmix64(master), |acc, part| {
            splitmix64(acc ^ splitmix64(part))
        })
}

pub fn rng_for(master: u64, stream: Stream, m: u64, k: u64, run: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive(master, stream, m, k, run))
}
