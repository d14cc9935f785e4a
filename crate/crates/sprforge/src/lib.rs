//! Exact stability and strict-positive-real synthesis for sixth-order
//! polynomial segments.
//!
//! Given two monic degree-6 polynomials `a(s)` and `b(s)`, this crate
//! decides — with exact rational arithmetic — whether every convex
//! combination `λ·b + (1−λ)·a`, `λ ∈ [0, 1]`, is Hurwitz stable, and when it
//! is, constructs a common numerator `c̃(s)` such that both `c̃/a` and `c̃/b`
//! are strictly positive real. Every emitted certificate is re-verified from
//! scratch before it leaves the library.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod poly;
pub mod rat;
pub mod spr;
pub mod stability;
pub mod synthesis;

pub use error::{Error, Result};
