//! Exact-arithmetic kernels for one-parameter degenerations and their
//! resolutions.
//!
//! Everything here is computed over exact coefficient domains (arbitrary
//! precision integers, rationals, prime fields, rational function fields
//! with a discrete place); no floating point appears anywhere in the
//! computational paths.

pub mod arith;
pub mod curves0;
pub mod elliptic;
pub mod intersection;
pub mod lattice;
pub mod nodal;
pub mod polyring;
pub mod toric;
pub mod valued;
