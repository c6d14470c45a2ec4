//! Leja sequences for the unit disk, their projections on `[-1, 1]`, and the
//! interpolation machinery needed to measure how good those projections are
//! as interpolation nodes.
//!
//! The crate is `no_std` (it needs `alloc`). Everything that touches files,
//! the terminal or the clock lives in the companion `leja` crate.
//!
//! Layout:
//!
//! - [`dyadic`]: exact angles `p / 2^q` of a full turn.
//! - [`disk`]: Leja sequences on the unit circle and their structure checks.
//! - [`rleja`]: real projections (ℜ-Leja sequences), Chebyshev-Lobatto and
//!   modified Chebyshev node families, block decomposition.
//! - [`interp1d`]: barycentric interpolation, nodal polynomials and Lebesgue
//!   constants on `[-1, 1]`.
//! - [`intertwine`]: multivariate interpolation on intertwined grids.
//! - [`checks`]: numeric verdicts for the quantitative bounds.
//!
//! Enable the `parallel` feature to spread sample scans over a rayon pool.
//! Results are identical with and without it.

#![cfg_attr(not(test), no_std)]

extern crate alloc;
#[cfg(feature = "parallel")]
extern crate std;

pub mod checks;
pub mod disk;
pub mod dyadic;
mod error;
mod exec;
pub mod interp1d;
pub mod intertwine;
pub mod math;
pub mod rleja;

pub use disk::{DiskLejaSequence, RhoChoice};
pub use dyadic::DyadicAngle;
pub use error::{Error, Result};
pub use interp1d::{LebesgueEstimate, NodeSet1D};
pub use intertwine::{IntertwinedGrid, MultiIndex};
pub use rleja::{BlockDecomposition, RLejaSequence};
