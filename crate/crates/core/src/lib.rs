//! Exact high-frequency (Floquet) expansion of periodically driven systems.
//!
//! The crate computes the effective time-independent Hamiltonian `K` and the
//! micromotion generator `S` order by order in `1/ω` for classical and
//! quantum algebras, and ships independent checks: a path-sum oracle, a
//! closed-form free-Lie expansion and numeric Floquet diagonalization.

pub mod algebra;
pub mod cli;
pub mod config;
pub mod diagram;
pub mod engine;
pub mod floquet;
pub mod fourier;
pub mod freelie;
pub mod models;
pub mod render;
pub mod scalar;
pub mod serial;
