//! Exact rational cone computations for divisors on Grassmann bundles.
//!
//! Everything in this crate runs on arbitrary-precision rationals; there is
//! no floating point anywhere. The crate is `no_std` (with `alloc`): all IO,
//! parsing, and the command-line front end live in the companion `grasscone`
//! crate.
//!
//! The pieces:
//!
//! * [`cone`] — a polyhedral cone engine over the rationals: generator and
//!   half-space representations, double-description conversion, duality,
//!   membership, equality, canonical forms.
//! * [`curve`] — Harder-Narasimhan data for bundles on a smooth curve and the
//!   nef/pseudoeffective cones of the associated Grassmann bundles.
//! * [`surface`] — Néron-Severi lattices with an intersection form, bundle
//!   invariants (`c1`, `c2`, discriminant), and semistability predicates for
//!   decomposable bundles.
//! * [`grassmann`] — the cone constructions on Grassmann bundles over a base
//!   with known cone data: pseudoeffective cones from base effective
//!   generators, nef cones from curve generators, equality reports, towers of
//!   fiber products.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cone;
pub mod curve;
pub mod error;
pub mod grassmann;
mod linalg;
pub mod rational;
pub mod surface;
pub mod vector;

pub use cone::Cone;
pub use error::Error;
pub use rational::Rational;
pub use vector::RatVec;

pub type Result<T> = core::result::Result<T, Error>;
