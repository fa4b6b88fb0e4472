use std::fmt::Debug;

/// Plain-data array cell that the permutation routines can copy, buffer,
/// and hand to worker threads.
pub trait Element: Copy + Default + PartialEq + Debug + Send + Sync + 'static {
    /// Deterministic value derived from a 64-bit key. Distinct keys give
    /// distinct values as long as they fit the type.
    fn from_key(key: u64) -> Self;
}

impl Element for u8 {
    #[inline]
    fn from_key(key: u64) -> Self {
        key as u8
    }
}

impl Element for u32 {
    #[inline]
    fn from_key(key: u64) -> Self {
        key as u32
    }
}

impl Element for u64 {
    #[inline]
    fn from_key(key: u64) -> Self {
        key
    }
}

/// Two `f64` components, laid out like a complex double (16 bytes).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[repr(C)]
pub struct ComplexPair {
    pub re: f64,
    pub im: f64,
}

impl ComplexPair {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }
}

impl Element for ComplexPair {
    #[inline]
    fn from_key(key: u64) -> Self {
        // The imaginary part keeps the raw bits so distinct keys stay distinct
        // even where the real part rounds.
        Self {
            re: key as f64,
            im: f64::from_bits(key & !(0x7ff << 52)),
        }
    }
}

const _: () = assert!(std::mem::size_of::<ComplexPair>() == 16);
