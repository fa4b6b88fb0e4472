use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bit width {0} outside supported range 1..={max}", max = crate::bits::MAX_BITS)]
    InvalidBitWidth(u32),

    #[error("array length {actual} does not match 2^{bits} = {expected}")]
    LengthMismatch {
        bits: u32,
        expected: usize,
        actual: usize,
    },

    #[error("array length {0} is not a power of two >= 2")]
    NotPowerOfTwo(usize),

    #[error("scratch buffer holds {available} elements, {required} required")]
    InsufficientScratch { required: usize, available: usize },

    #[error("cobra block bits q={q} invalid for b={bits} (need 2q <= b)")]
    CobraBlockBits { q: u32, bits: u32 },

    #[error("swap schedule for b={bits} exceeds cap of {cap} bits")]
    ScheduleTooLarge { bits: u32, cap: u32 },

    #[error("base_bits must be at least 1 (got {0})")]
    InvalidBaseBits(u32),

    #[error("depth_limit must be at least 1 when set")]
    InvalidDepthLimit,

    #[error("malformed schedule stream: {0}")]
    ScheduleFormat(String),

    #[error("unknown method `{0}`")]
    UnknownMethod(String),

    #[error("failed to build worker pool: {0}")]
    ThreadPool(String),
}
