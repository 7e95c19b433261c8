//! Evaluation toolkit for q-deformed characters of the classical groups and
//! their infinite-rank limits.
//!
//! The crate provides four layers, each usable on its own:
//!
//! * [`arith`] — scalars: exact rationals and arbitrary-precision complex
//!   floats, integer and half-integer powers of the deformation parameter
//!   `q`, and finite/infinite q-Pochhammer symbols.
//! * [`chars`] — characters: Schur polynomials and the Weyl-determinant
//!   characters of the odd orthogonal (B), symplectic (C) and even
//!   orthogonal (D) families, with principal specializations, dualities,
//!   hook/Giambelli/Jacobi–Trudi expansions, and skew branching weights.
//! * [`contour`] — contour integrals: exact residue evaluation and
//!   high-precision strip/circle quadrature of the double-contour-integral
//!   representations of normalized characters, and of their rank-to-infinity
//!   limit functions Φ.
//! * [`graph`] / [`experiments`] — branching-graph probability: stochastic
//!   one-step and multi-step kernels, chain sampling, boundary measures,
//!   torus projection functionals, and reproducible numerical experiments
//!   (convergence tables, laws of large numbers, concentration bounds).

pub mod arith;
pub mod chars;
pub mod contour;
pub mod error;
pub mod graph;

pub use arith::{CFloat, EvalConfig, HalfInt, Mode, Scalar};
pub use error::{QError, Result};
