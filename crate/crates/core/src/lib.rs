//! Exact computations for unions of fat linear subspaces of projective space.
//!
//! For `s` disjoint `r`-planes in `P^n` each carrying multiplicity `m`, the
//! crate computes condition counts and Hilbert polynomials, the normalized
//! leading-coefficient polynomials `Λ_{n,r,s}` and their largest real roots
//! `g_{n,r,s}`, certified expected Waldschmidt constants `e_{n,r,s}`, Cremona
//! reductions of point linear systems, blow-up intersection numbers, and the
//! finite enumerations that back the known values of the Waldschmidt
//! constant `γ`.
//!
//! All arithmetic is exact. Real algebraic numbers are carried as a defining
//! polynomial plus an isolating rational interval.

pub mod blowup;
pub mod cli;
pub mod cremona;
pub mod error;
pub mod exact;
pub mod flats;
pub mod lambda;
pub mod verifier;
pub mod waldschmidt;

pub use error::{Error, Result};
