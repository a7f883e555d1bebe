//! Deterministic pseudo-randomness.
//!
//! Everything random in this crate — weight initialization, glyph
//! perturbations, gradient-check probes — flows through [`SplitMix64`], the
//! reference splitmix64 generator. It is tiny, has a published test vector,
//! and is trivial to reimplement bit-for-bit in any language, which is what
//! makes the model files and corpora reproducible across toolchains.

/// The splitmix64 generator (public-domain reference algorithm by Sebastiano
/// Vigna). State advances by a fixed odd constant; outputs are a finalizing
/// scramble of the state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

impl SplitMix64 {
    /// Creates a generator whose stream is fully determined by `seed`.
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Next 64 uniformly distributed bits.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform real in `[0, 1)` built from the top 53 bits, so the value is
    /// exactly representable and identical on every IEEE-754 platform.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform real in `[-magnitude, magnitude)`, computed as
    /// `(2u - 1) * magnitude` from one unit draw. One canonical formula is
    /// used everywhere so generated corpora do not depend on call sites
    /// agreeing about floating-point evaluation order.
    pub fn next_signed(&mut self, magnitude: f64) -> f64 {
        (2.0 * self.next_unit() - 1.0) * magnitude
    }
}

/// Derives an independent stream seed from a master seed and a stream index.
///
/// Defined as the first output of a splitmix64 generator seeded with
/// `seed ^ (stream · golden gamma)`. Used for per-letter corpus streams,
/// per-run training seeds, and per-letter network seeds, so that changing
/// one stream's consumption never perturbs another.
pub fn mix(seed: u64, stream: u64) -> u64 {
    SplitMix64::new(seed ^ stream.wrapping_mul(GOLDEN_GAMMA)).next_u64()
}
