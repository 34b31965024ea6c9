//! Exact scalars: rationals, cyclotomic numbers, Galois automorphisms and linear algebra over both.

pub mod cyclotomic;
pub mod galois;
pub mod matrix;
pub mod rational;

pub use cyclotomic::Cyclotomic;
pub use galois::GaloisAutomorphism;
pub use matrix::{ExactMatrix, Scalar};
pub use rational::Rational;
