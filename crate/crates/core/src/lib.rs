//! Exact-arithmetic toolkit for finite quasi-pseudometric spaces.
//!
//! A quasi-pseudometric drops the symmetry axiom of a metric: the distance
//! from `x` to `y` may differ from the distance from `y` to `x`, and distinct
//! points may sit at distance zero in one direction. That small relaxation
//! splits every familiar metric notion in two (forward and backward balls,
//! left and right Cauchy sequences, startpoints and endpoints of set-valued
//! maps), and the interactions between the two halves are subtle enough that
//! hand-waving with floating point is a reliable way to get them wrong.
//!
//! This crate therefore works over **finite** spaces with **exact rational**
//! arithmetic throughout. Every comparison is decidable, every reported
//! distance is exact, and every verdict that cannot be decided from a finite
//! amount of data says so instead of guessing.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI live
//! in the companion `qpmet-tools` crate.
//!
//! Module map:
//!
//! - [`rational`]: exact rational scalars and the extended value used by
//!   hyperspace distances.
//! - [`space`]: finite quasi-pseudometric spaces, axiom diagnostics,
//!   conjugation, symmetrization, balls, closures, diameters.
//! - [`hyperspace`]: asymmetric Hausdorff distances between point sets, with
//!   witnesses, and axiom checks for the induced distance on set families.
//! - [`sequences`]: eventually-periodic trace model, convergence and Cauchy
//!   classification, the implication lattice between Cauchy notions, and
//!   semicontinuity probes for the distance functionals.
//! - [`multimaps`]: set-valued and single-valued maps, fixed points,
//!   startpoints, endpoints, their approximate variants, and level sets.
//! - [`funcspec`]: serializable comparison-function specifications with
//!   certification of the side conditions the contraction theorems need.
//! - [`solvers`]: hypothesis checks and the constructive iterations
//!   (Picard-style orbits and startpoint/endpoint/fixed-point descent),
//!   each step checked against the bound the underlying argument promises.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod funcspec;
pub mod hyperspace;
pub mod multimaps;
pub mod rational;
pub mod sequences;
pub mod solvers;
pub mod space;

#[cfg(test)]
pub(crate) mod testutil;

pub use rational::{parse_rational, rational_to_string, ExtendedRational, Rational};
pub use space::{FiniteQuasiSpace, Point, PointSet, Side, SpaceDiagnostics};
