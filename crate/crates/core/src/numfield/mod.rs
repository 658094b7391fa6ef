//! Number-field engine: real-root isolation, orders and integral bases,
//! unit groups and regulators.
pub mod fpoly;
pub mod order;
pub mod sturm;

pub use order::{equation_order, maximal_order, NumberFieldOrder, OrderError};
pub use sturm::{sturm_real_roots, RealRootIsolation, SturmError};
