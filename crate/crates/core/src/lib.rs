//! Exact computations for degree-2n L-functions of even orthogonal groups:
//! type-D Weyl group and Kostant combinatorics, critical sets, archimedean
//! L-factor ratios, the rank-one intertwining scalar at `s = -n`, unramified
//! local factors, and the dimension bookkeeping of the associated locally
//! symmetric spaces.
//!
//! All arithmetic is exact: rationals are arbitrary precision and powers of
//! pi are tracked symbolically in [`exactnum::PiValue`].

pub mod cli;
pub mod critical;
pub mod error;
pub mod exactnum;
pub mod intertwine;
pub mod numerology;
pub mod satake;
pub mod weyl;

pub use error::{Error, Result};
