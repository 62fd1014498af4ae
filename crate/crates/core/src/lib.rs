//! Exact machinery for ellipsoid-embedding capacity functions of the
//! one-point blowups `H_b` of the projective plane.
//!
//! The crate builds the fractal family of perfect classes from generating
//! triples, their x/y mutations and the symmetries `S` and `R`, decides which
//! parameters `b` are blocked, and computes staircase accumulation points as
//! exact quadratic surds. Nothing here uses floating point except decimal
//! rendering for output.
//!
//! Module map:
//!
//! * [`exact`]: rationals and real quadratic surds with an exact total order.
//! * [`cf`]: continued fractions, weight expansions, periodic expansions.
//! * [`classes`]: class tuples, exceptional vectors, Cremona reduction,
//!   obstruction functions and the accumulation-point function.
//! * [`family`]: adjacency, generating triples, mutations, labels and
//!   pre-staircases.
//! * [`symmetry`]: the shift/reflection group and the special rational `b`.
//! * [`block`]: blocking predicates, blocked intervals, density and scans.
//! * [`suites`]: verification suites shared by the CLI and the acceptance
//!   tests.

pub mod block;
pub mod cf;
pub mod classes;
pub mod error;
pub mod exact;
pub mod family;
pub mod suites;
pub mod symmetry;

pub use error::{Error, Result};
pub use exact::{QuadSurd, Rational};
