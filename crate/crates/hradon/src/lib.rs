//! Hurwitz-Radon matrix families and the structures they generate.
//!
//! The crate constructs pseudo H-type Lie algebras as quotients of free
//! two-step nilpotent metric Lie algebras by ideals chosen through families
//! of anticommuting signed-permutation matrices, and verifies every defining
//! axiom with exact integer and rational arithmetic. Around that core it
//! provides the Hurwitz-Radon function and its Wolfe/Ciatti signature
//! generalizations, 1-factorizations of complete graphs with cycle-type
//! classification, a conjugacy solver for families of complex structures,
//! and symbolic verification of orthogonal and amicable designs.
//!
//! Modules:
//!
//! - [`hr_arith`]: the Hurwitz-Radon function rho, the signature functions
//!   rho_t and sigma_s, admissibility of Clifford module signatures, and the
//!   maximal-signature algorithms.
//! - [`graph_factor`]: 1-factors and 1-factorizations of K_{2k}, round-robin
//!   and XOR constructions, cycle types of factor unions.
//! - [`hr_family`]: construction and verification of HR(s,t) families of
//!   signed-permutation matrices.
//! - [`algebra_core`]: the free two-step nilpotent metric Lie algebra, its
//!   J-operators, orthogonal complements, quotients, and axiom verification.
//! - [`iso_solver`]: signed-permutation conjugacy between families via the
//!   Kronecker nullspace system, with certificates and algebra lifts.
//! - [`design_core`]: symbolic orthogonal designs, amicable pairs, and
//!   eta-orthogonality reports.
//! - [`fixtures`]: embedded reference objects (the K4 omega families, the
//!   Kirkman and Steiner factorizations of K8, the octonion family).
//!
//! All public operations are pure functions on immutable data and are safe
//! to call from multiple threads.

pub mod algebra_core;
pub mod design_core;
mod error;
pub mod exact_linalg;
pub mod fixtures;
pub mod graph_factor;
pub mod hr_arith;
pub mod hr_family;
pub mod iso_solver;
pub mod matrix;

pub use error::{Error, Result};
pub use matrix::{IntMatrix, SignedMatrix};
