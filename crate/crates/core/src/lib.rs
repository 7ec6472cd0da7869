//! Exact symbolic computation in the enveloping algebra of the one-sided
//! Witt algebra W_{≥-1}, the orbit homomorphisms Ψ_n into the tensor rings
//! T_n = A_1 ⊗ U(𝔤_n), and the differentiator elements Ω^m_{k,s} — together
//! with a verification harness that machine-checks the exact identities
//! relating them over finite parameter ranges.
//!
//! Everything is computed over ℚ with arbitrary-precision rationals; there
//! is no floating point anywhere, and all checked identities are exact.

pub mod commutative;
pub mod density;
pub mod differentiator;
pub mod error;
pub mod expr;
pub mod grading;
pub mod linalg;
pub mod morphism;
mod pbw;
mod print;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod target;
pub mod verify;
pub mod witt;

pub use commutative::{CommAlphabet, CommAtom, CommMonomial, CommutativeElement};
pub use differentiator::DifferentiatorKey;
pub use error::{Error, Result};
pub use grading::Degree;
pub use scalar::{binomial, binomial_rat, factorial, Rational};
pub use target::{TargetContext, TargetElement, TargetMonomial};
pub use witt::{WittElement, WittMonomial};
