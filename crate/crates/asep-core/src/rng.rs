use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Counter-based random stream: one master seed plus a stream index yields an
/// independent generator.  Replicas keyed by `(seed, index)` can run in any
/// order, or in parallel, and still reproduce byte-for-byte.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
