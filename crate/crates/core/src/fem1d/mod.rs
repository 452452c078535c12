//! Uniform 1-D grids, P1/P0 fields, trapezoidal quadrature, element-loop
//! assembly, and direct solvers for the resulting block-tridiagonal and
//! banded systems.

mod assembly;
mod banded;
mod block;
mod grid;
mod quadrature;

pub use assembly::{
    assemble, assemble_matrix, assemble_residual, IntervalKernel, LocalMatrix, LocalVector,
};
pub use banded::{solve_banded, BandedLu, BandedMatrix};
pub use block::{solve_block_tridiagonal, BlockTriDiag, BlockTriDiagLu};
pub use grid::{slerp, Grid, NodalCurve};
pub use quadrature::{fd_slope, trapezoid_accumulate};
