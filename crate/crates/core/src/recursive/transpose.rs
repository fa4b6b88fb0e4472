//! In-place square transposition by recursive quadrant subdivision.

use crate::error::{Error, Result};

/// Side length of the tiles handled by direct loops.
pub const LEAF_SIDE: usize = 8;

/// Row-major `2^h x 2^h` matrix over a mutable slice. Row index is the high
/// `h` bits of the element index, column the low `h` bits.
#[derive(Debug)]
pub struct SquareView<'a, T> {
    data: &'a mut [T],
    h: u32,
}

impl<'a, T> SquareView<'a, T> {
    pub fn new(data: &'a mut [T], h: u32) -> Result<Self> {
        let expected = 1usize
            .checked_shl(2 * h)
            .ok_or(Error::InvalidBitWidth(2 * h))?;
        if data.len() != expected {
            return Err(Error::LengthMismatch {
                bits: 2 * h,
                expected,
                actual: data.len(),
            });
        }
        Ok(Self { data, h })
    }

    pub fn half_bits(&self) -> u32 {
        self.h
    }

    pub fn side(&self) -> usize {
        1 << self.h
    }

    /// Moves the element at `(r, c)` to `(c, r)` for every `r, c`.
    pub fn transpose(&mut self) {
        let side = self.side();
        // SAFETY: the view owns the whole side x side region exclusively.
        unsafe { transpose_diagonal(self.data.as_mut_ptr(), side, 0, side) }
    }
}

/// Transposes the matrix in `view`.
pub fn transpose_square_inplace<T>(mut view: SquareView<'_, T>) {
    view.transpose();
}

/// Transposes the diagonal block with corner `(start, start)` and side `size`.
///
/// # Safety
///
/// `ptr` must address a row-major matrix with row stride `stride` whose rows
/// and columns `start .. start + size` are valid and not accessed concurrently.
/// `size` must be a power of two.
pub(crate) unsafe fn transpose_diagonal<T>(ptr: *mut T, stride: usize, start: usize, size: usize) {
    if size <= LEAF_SIDE {
        for r in start..start + size {
            for c in r + 1..start + size {
                std::ptr::swap(ptr.add(r * stride + c), ptr.add(c * stride + r));
            }
        }
        return;
    }
    let half = size / 2;
    transpose_diagonal(ptr, stride, start, half);
    transpose_diagonal(ptr, stride, start + half, half);
    swap_transposed(ptr, stride, start, start + half, half);
}

/// Swaps the block at `(row, col)` with the transpose of the block at
/// `(col, row)`, both of side `size`.
///
/// # Safety
///
/// Both blocks must be valid, disjoint, and not accessed concurrently; `size`
/// must be a power of two.
pub(crate) unsafe fn swap_transposed<T>(
    ptr: *mut T,
    stride: usize,
    row: usize,
    col: usize,
    size: usize,
) {
    if size <= LEAF_SIDE {
        for r in row..row + size {
            for c in col..col + size {
                std::ptr::swap(ptr.add(r * stride + c), ptr.add(c * stride + r));
            }
        }
        return;
    }
    let half = size / 2;
    swap_transposed(ptr, stride, row, col, half);
    swap_transposed(ptr, stride, row, col + half, half);
    swap_transposed(ptr, stride, row + half, col, half);
    swap_transposed(ptr, stride, row + half, col + half, half);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(src: &[u32], side: usize) -> Vec<u32> {
        let mut out = vec![0; src.len()];
        for r in 0..side {
            for c in 0..side {
                out[c * side + r] = src[r * side + c];
            }
        }
        out
    }

    #[test]
    fn trivial_sizes() {
        let mut one = [42u32];
        transpose_square_inplace(SquareView::new(&mut one, 0).unwrap());
        assert_eq!(one, [42]);

        let mut four = [0u32, 1, 2, 3];
        transpose_square_inplace(SquareView::new(&mut four, 1).unwrap());
        assert_eq!(four, [0, 2, 1, 3]);
    }

    #[test]
    fn matches_oracle_and_is_involution() {
        for h in 0..=7 {
            let side = 1usize << h;
            let orig: Vec<u32> = (0..(side * side) as u32)
                .map(|x| x.wrapping_mul(2654435761))
                .collect();
            let mut m = orig.clone();
            SquareView::new(&mut m, h).unwrap().transpose();
            assert_eq!(m, oracle(&orig, side), "h={h}");
            SquareView::new(&mut m, h).unwrap().transpose();
            assert_eq!(m, orig);
        }
    }

    #[test]
    fn view_checks_length() {
        let mut v = [0u8; 8];
        assert!(SquareView::new(&mut v, 1).is_err());
        assert!(SquareView::new(&mut v, 40).is_err());
    }
}
