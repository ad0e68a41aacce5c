//! Exact graded q-differential calculus on semi-commutative Galois extensions.
//!
//! A base algebra `A` over ℚ(ζ_N) with a twist automorphism φ is extended by an
//! element τ with τ^N = ±1 and `u·τ = τ·φ(u)`. The inner derivation
//! `d = [τ, ·]_q` satisfies `d^N = 0`, and a coordinate `x ∈ A` with `x − φ(x)`
//! invertible yields derivatives and a calculus of k-forms in the basis `(dx)^k`.

pub mod basealg;
pub mod calculus;
pub mod error;
pub mod exactnum;
pub mod expr;
pub mod extension;
pub mod instance;
pub mod linalg;
pub mod random;
pub mod repr;
pub mod verify;

pub use error::{AlgebraError, Result};
