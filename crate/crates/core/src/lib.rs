//! Plus-space Kloosterman sums, quadratic Weyl sums, genus characters, and the
//! cycle and surface integrals of the modular functions j_m.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exec;
pub mod geodesics;
pub mod ntheory;
pub mod kloosterman;
pub mod modforms;
pub mod precision;
pub mod quadforms;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
pub use exec::Execution;
pub use ntheory::Weight;
