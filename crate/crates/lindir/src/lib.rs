//! Numerical toolkit for entire functions of bounded L-index in a direction.
//!
//! The library works with entire functions `F: C^n -> C` restricted to
//! complex lines `t -> F(z0 + t*b)`. Everything downstream of that slice view
//! is built from a single contour-quadrature derivative engine:
//!
//! * [`deriv`] computes directional and joint partial derivatives by Cauchy
//!   integrals over circles and polydisc skeletons;
//! * [`weight`] handles positive weight functions `L`, their local lambda
//!   bounds on shrinking disks, and empirical membership checks for the
//!   associated weight class;
//! * [`index`] estimates the least order whose normalized derivative
//!   dominates the rest of the table, per point and over sampled grids;
//! * [`zeros`] locates slice zeros by the argument principle, builds the
//!   excluded union of disks around them, and counts zeros in disks;
//! * [`criteria`] runs empirical verifiers for the inequalities that
//!   characterize bounded index (derivative ratios on circles, maximum
//!   modulus ratios, logarithmic derivative bounds, value distribution,
//!   growth profile);
//! * [`pde`] checks that a candidate solution satisfies a directional
//!   differential equation and cross-checks it against a one-variable ODE
//!   integration along a slice.
//!
//! Sampling throughout uses seeded low-discrepancy grids ([`grid`]), so every
//! result is reproducible from its configuration.

pub mod criteria;
pub mod deriv;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod function;
pub mod grid;
pub mod index;
pub mod pde;
pub mod point;
pub mod report;
pub mod weight;
pub mod zeros;

pub use error::{Error, Result};
pub use function::{eval_slice, EntireFunction, Slice};
pub use point::{inner, ComplexPoint, Direction, C64};
