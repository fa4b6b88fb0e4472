use crate::element::Element;
use crate::error::{Error, Result};

/// Reusable element buffer for the methods that stage data out of place.
#[derive(Clone, Debug, Default)]
pub struct Scratch<T> {
    storage: Vec<T>,
}

impl<T: Element> Scratch<T> {
    pub fn new(capacity: usize) -> Self {
        Self {
            storage: vec![T::default(); capacity],
        }
    }

    /// Like [`Scratch::new`] but reports allocation failure instead of aborting.
    pub fn try_new(capacity: usize) -> Result<Self, std::collections::TryReserveError> {
        let mut storage = Vec::new();
        storage.try_reserve_exact(capacity)?;
        storage.resize(capacity, T::default());
        Ok(Self { storage })
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.storage.len()
    }

    /// The first `required` cells, or an error if the buffer is too small.
    pub fn take(&mut self, required: usize) -> Result<&mut [T]> {
        let available = self.storage.len();
        self.storage
            .get_mut(..required)
            .ok_or(Error::InsufficientScratch {
                required,
                available,
            })
    }
}
