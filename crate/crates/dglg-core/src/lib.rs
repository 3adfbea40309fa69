//! Exact symbolic kernel for differential graded Lie algebras and their
//! integration to differential graded Lie groups.
//!
//! Everything is computed over exact rationals. Infinite objects (enveloping
//! algebras, function algebras) are cut off at a truncation weight `W`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod dgla;
pub mod gca;
pub mod grading;
pub mod hcp;
pub mod hopf;
pub mod linalg;
pub mod nilgroup;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod uea;

pub use grading::{koszul_sign, parity, Degree, GradedBasis, GradedLinearMap, Parity};
pub use scalar::Q;
