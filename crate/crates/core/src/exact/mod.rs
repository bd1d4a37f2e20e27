//! Exact arithmetic: rationals, binomials, univariate and bivariate
//! polynomials, and certified real-root isolation.

pub mod binom;
pub mod bipoly;
pub mod poly;
pub mod rational;
pub mod roots;

pub use binom::{binom, factorial};
pub use bipoly::{expand_scaled, BiExpansion, BiPoly};
pub use poly::UniPoly;
pub use rational::{int, parse_rational, rat, rat_int, Integer, Rational};
pub use roots::{count_roots_in, isolate_largest_root, isolate_smallest_root_above, AlgebraicNumber, SturmChain};

/// Formal derivative.
pub fn poly_derivative(p: &UniPoly) -> UniPoly {
    p.derivative()
}
