//! Exact and certified arithmetic for the congruence-element experiment:
//! root systems with strongly orthogonal subsets, a number-field engine
//! (orders, units, regulators), the explicit SL3(Z) congruence family,
//! metric formulas, and the prime-sweep pipeline.

pub mod dyadic;
pub mod gamma;
pub mod geometry;
pub mod intpoly;
pub mod linalg;
pub mod numfield;
pub mod pipeline;
pub mod primes;
pub mod rootsys;
