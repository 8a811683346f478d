//! Exact computation of Donaldson–Thomas invariants and moduli volumes of
//! `L`-twisted Higgs bundles on a curve of genus `g`.
//!
//! The crate is `no_std` (it needs `alloc`). The `parallel` feature, on by
//! default, pulls in `std` and evaluates independent partition terms and
//! brute-force enumeration chunks on the rayon pool.
//!
//! Layout:
//!
//! - [`partitions`]: partitions, Young diagrams, arm/leg/hook statistics.
//! - [`algebra`]: Laurent polynomials over `Q`, fractions with cyclotomic
//!   denominators, truncated series in `T`, Adams operations and the
//!   plethystic exponential/logarithm.
//! - [`dt`]: the hook-product series, the integral invariants, `Ω_r`, the
//!   moduli volume, the canonical-bundle mode and the zeta-function
//!   formulation.
//! - [`positive`]: the symmetrized rational function `f`, the positive series
//!   and the stabilization comparison.
//! - [`zeta`]: curve zeta data, counting sequences and numeric specialization.
//! - [`oracle`]: brute-force stack volumes on the projective line.
#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod algebra;
pub mod dt;
mod error;
pub mod oracle;
pub mod partitions;
pub mod positive;
mod util;
pub mod zeta;

pub use error::{Error, Result};
