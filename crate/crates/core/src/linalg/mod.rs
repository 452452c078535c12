//! Dense linear algebra and the matrix abstraction the Newton driver runs on.

mod dense;

pub use dense::{DenseLu, DenseMatrix, MAX_CONDITION};

use crate::error::Result;
use crate::scalar::Scalar;

/// A factorized operator that can be applied to many right-hand sides.
pub trait LinearSolver<T> {
    fn dim(&self) -> usize;

    /// Returns `x` with `A x = rhs`.
    fn solve(&self, rhs: &[T]) -> Vec<T>;
}

/// An assembled square system matrix.
pub trait SystemMatrix<T: Scalar>: Clone + std::fmt::Debug {
    type Factors: LinearSolver<T>;

    fn dim(&self) -> usize;

    fn factorize(&self) -> Result<Self::Factors>;

    fn matvec(&self, x: &[T]) -> Vec<T>;

    /// Multiplies every entry by `s`.
    fn scale(&mut self, s: T);

    /// Adds `value` at `(row, col)`; errors if the entry lies outside the
    /// storage pattern.
    fn add_entry(&mut self, row: usize, col: usize, value: T) -> Result<()>;

    fn to_dense(&self) -> DenseMatrix<T>;
}
