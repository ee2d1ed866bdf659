//! Exact spectra of the Cayley graphs S(k, q) on 𝔽_q^k.
//!
//! Two vectors a, b ∈ 𝔽_q^k are adjacent in S(k, q; f₃, g₃, …, f_k, g_k) when
//! a₁ ≠ b₁ and bᵢ − aᵢ = gᵢ(b₁ − a₁)·fᵢ((b₂ − a₂)/(b₁ − a₁)) for 3 ≤ i ≤ k. The
//! graph is a Cayley graph of the additive group, so its eigenvalues are the
//! character sums λ_w, one per w ∈ 𝔽_q^k. This crate evaluates those sums in
//! exact cyclotomic arithmetic, cross-checks them against a dense eigensolver
//! and runs the eigenvalue bounds and second-eigenvalue formulas that go with
//! them.

pub mod charsum;
pub mod cli;
pub mod config;
pub mod error;
pub mod gf;
pub mod graphs;
pub mod poly;
pub mod spectral;

pub use charsum::{CycInt, ExpSumResult};
pub use error::{Error, Result};
pub use gf::{make_field, FieldElement, FiniteField};
pub use graphs::{Graph, SGraphSpec};
pub use poly::Poly;
pub use spectral::Spectrum;
