//! Exact construction and verification of R-matrices and L-operators for the
//! quantum loop algebras of type A1(1) and A2(1), built from the factorized
//! universal R-matrix.

pub mod ktfactory;
pub mod linalg;
pub mod oscillator;
pub mod qgroup;
pub mod reference;
pub mod rootsys;
pub mod scalars;
pub mod text;
pub mod verify;
