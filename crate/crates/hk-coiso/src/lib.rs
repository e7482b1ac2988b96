//! Exact-arithmetic computational algebra for quadratic spaces and their
//! symmetric powers.
//!
//! The crate provides:
//!
//! - [`quadratic_space`]: rational quadratic spaces, orthogonal NS/tr
//!   splittings, the dual class of the form, isotropic-vector sampling;
//! - [`sym_algebra`]: exact symmetric powers S^k V, the contraction
//!   Laplacian, harmonic subspaces and the c-power decomposition;
//! - [`fujiki`]: the polarized top-degree integration functional with
//!   ∫ λ^{2n} = μ·q(λ)^n, its per-power constants, and the Gorenstein
//!   duality pairing of the algebra generated in degree two;
//! - [`coisotropic`]: spaces of classes z of degree 2i killed by all
//!   (n−i+1)-st powers of transcendental quadric classes, computed two
//!   independent ways;
//! - [`chow_model`]: a finite symbolic model of zero-cycles on symmetric
//!   products of a pointed surface, its canonical splitting and a pair of
//!   opposite filtrations;
//! - [`presets`]: shipped lattice presets.
//!
//! All arithmetic is exact rational; no floating point is used anywhere.

pub mod chow_model;
pub mod coisotropic;
pub mod error;
pub mod fujiki;
pub mod matrix;
pub mod monomial;
pub mod presets;
pub mod quadratic_space;
pub mod rat;
pub mod sym_algebra;

pub use error::{Error, Result};
pub use quadratic_space::{
    dual_class, find_isotropic, sample_isotropic, split_ns, ClassVector, QuadraticSpace, Space,
    SpaceInput, SplitSpace,
};
pub use rat::Rat;
pub use sym_algebra::{
    c_power_decompose, harmonic_dim, harmonic_subspace, isotropic_power_span, monomial_basis,
    SymElement, Subspace,
};
