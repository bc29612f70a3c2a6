//! Counter-based seed derivation.
//!
//! Every random quantity in the engine is derived as a pure function of
//! `(base seed, stream tag, index)`, so trial `t` of an experiment can be
//! reproduced without replaying trials `0..t`.

/// Independent stream tags. Values are arbitrary but frozen: changing them
/// changes every derived random state.
pub mod stream {
    pub const TRIAL: u64 = 0x01;
    pub const FREE_SYMBOL: u64 = 0x02;
    pub const SHOTS: u64 = 0x03;
    pub const NOISE: u64 = 0x04;
    pub const POSITION: u64 = 0x05;
    pub const BATCH: u64 = 0x06;
    pub const SWEEP_STATE: u64 = 0x07;
    pub const SWEEP_BETA: u64 = 0x08;
    pub const BENCH: u64 = 0x09;
    pub const DISC_INPUT: u64 = 0x0A;
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer; full-period bijection on u64.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent seed for `(base, stream, index)`.
pub fn derive(base: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(base ^ stream.wrapping_mul(GOLDEN)) ^ index)
}

/// Uniform value in [0, 1) with 53 significant bits.
pub fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform angle in [0, 2π).
pub fn uniform_angle(bits: u64) -> f64 {
    std::f64::consts::TAU * unit_f64(bits)
}
