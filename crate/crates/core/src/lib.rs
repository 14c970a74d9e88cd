//! Holomorphic vector fields in Poincaré–Dulac normal form.
//!
//! The crate is `no_std` (it needs `alloc`). Exact work happens over Gaussian
//! rationals: normal-form validation, resonance and the set
//! `A(λ) = {m ∈ ℕⁿ \ 0 : Σ m_j λ_j = 0}`, the kernel of the conjugate field
//! `X̄` on truncated mixed series, and symbolic flows. Plane-region analysis
//! and the counterexample gallery run in `f64`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod field;
pub mod flow;
pub mod formal;
pub mod gallery;
pub mod region;

mod float;
