//! Exact-arithmetic workbench for the negative half of quantized enveloping
//! algebras of finite and affine type: PBW and canonical bases, convex
//! orders, diagram-automorphism folding, and machine verification of the
//! structural theorems relating them.

pub mod coeff;
pub mod datum;
pub mod error;
pub mod braid;
pub mod linalg;
pub mod orders;
pub mod pbw;
pub mod uq;

pub use error::{Error, Result};
