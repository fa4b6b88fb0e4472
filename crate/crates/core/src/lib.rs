//! Bit-reversed permutation of power-of-two arrays.
//!
//! Eight single-threaded methods and one parallel one, all producing
//! `data[i] = old[rev(i)]` where `rev` reverses the low `b` bits of an index:
//!
//! | method | module | work |
//! |---|---|---|
//! | Stockham auto-sort | [`permutations`] | `n log n` |
//! | naive bitwise | [`permutations`] | `n log n` |
//! | byte table | [`permutations`] | `n log n` |
//! | pair bitwise | [`permutations`] | `n log n` |
//! | COBRA (in/out of place) | [`permutations`] | `n + (n/t) log(n/t)` |
//! | inductive XOR | [`permutations`] | `n` with hardware clz |
//! | unrolled swap schedule | [`schedule`] | `n` |
//! | recursive / semi-recursive | [`recursive`] | `n log n` / `n` |
//! | parallel semi-recursive | [`parallel`] | `n` |
//!
//! [`verify`] holds the brute-force oracle that every method is tested
//! against, and [`method`] wraps them behind one prepared interface.

pub mod bits;
pub mod element;
mod error;
pub mod method;
pub mod parallel;
pub mod permutations;
pub mod recursive;
pub mod schedule;
mod scratch;
pub mod verify;

pub use bits::{BitWidth, ByteReverseTable, RevPair};
pub use element::{ComplexPair, Element};
pub use error::{Error, Result};
pub use method::{MethodId, MethodOptions, Permuter};
pub use parallel::ParallelConfig;
pub use permutations::CobraConfig;
pub use recursive::RecursionPolicy;
pub use schedule::SwapSchedule;
pub use scratch::Scratch;
