//! Exact truncated q-series arithmetic and the convolution recurrence for
//! coefficients of q-product generating functions.
//!
//! The crate is layered bottom-up:
//!
//! - [`arith`]: exact rationals and polynomials in formal parameters
//! - [`series`]: truncated power series in `q` and in `t`
//! - [`qtoolkit`]: q-Pochhammer products, Gaussian and Rogers-Szegő
//!   polynomials, divisor sums, partition counts
//! - [`engine`]: the `h(m)` / `A(n)` recurrence with a direct-expansion check
//! - [`identities`]: convolution identities verified as exact truncated series

pub mod arith;
pub mod engine;
pub mod identities;
pub mod qtoolkit;
pub mod series;
