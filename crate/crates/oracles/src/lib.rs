//! Reference implementations for cross-checking. Everything here is written
//! for transparency rather than speed: enumeration instead of factorisation,
//! fixed dense quadrature instead of adaptive rules, textbook special-function
//! algorithms. Nothing is shared with the main crate.

pub mod arith;
pub mod expsum;
pub mod quad;
pub mod root;
pub mod special;
pub mod voronoi;
pub mod weights;

pub use num_complex::Complex64 as C64;
