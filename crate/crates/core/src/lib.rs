//! Exact experimental-mathematics toolkit.
//!
//! Everything here runs over exact arbitrary-precision rationals. The crate
//! provides:
//!
//! - [`num`], [`unipoly`], [`multipoly`], [`ratfunc`], [`series`], [`linalg`],
//!   [`partialfrac`]: the exact-arithmetic substrate (rationals, polynomials,
//!   rational functions, truncated series, fraction-free linear solving,
//!   partial fractions).
//! - [`recurrence`]: P-recursive operators — guessing them from integer
//!   sequence data, unrolling them, and verifying them.
//! - [`celine`]: a generalized Sister Celine summation engine for sums
//!   `x_n = sum_k a_k^d H(n,k)` with `H` proper hypergeometric and `a_k`
//!   given by a rational-coefficient recurrence; includes nested sums.
//! - [`gosper`]: a telescoping-based indefinite summation pipeline — guess a
//!   limit over a constant basis, identify the remainder tail as a
//!   hypergeometric/multibasic closed form, and prove it by exact rewriting.
//! - [`lattice`]: rational-slope lattice path enumeration in 2D and 3D,
//!   time-above-the-line histograms, and asymptotic fitting.
//! - [`gwtrees`]: total-height moment statistics for degree-restricted
//!   ordered rooted trees, with extrapolation of the scaled moments.
//! - [`bunkbed`]: exact percolation difference polynomials on G x K2,
//!   nonnegativity certification by Sturm sequences, and small-graph scans.

pub mod linalg;
pub mod partialfrac;
pub mod multipoly;
pub mod num;
pub mod ratfunc;
pub mod recurrence;
pub mod series;
pub mod unipoly;

pub use num::{Rat, Symbol};
