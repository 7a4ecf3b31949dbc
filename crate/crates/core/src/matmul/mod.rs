//! Exact matrix-product kernels and the cost model the parameter policies
//! consult in place of the rectangular multiplication exponent.

mod boolean;
mod cost;
mod int;
mod wide;

pub use boolean::{bool_mm, BoolMatrix};
pub use cost::{ExponentTable, MMCostModel};
pub use int::{int_mm, IntMatrix};
pub use wide::{wideint_mm, WideIntMatrix};
