//! The polynomials `Λ_{n,r,s}(τ)`, their differential tower, and the largest
//! real roots `g_{n,r,s}`.
//!
//! `Λ_{n,r,s}` is the coefficient of `m^n` in `P_{n,r,s,m}(mτ)`. In closed
//! form `Λ_{n,r,s}(τ) = (τ^n − s·Σ_{j≤r} C(n,j)(τ−1)^j)/n!`, stored with the
//! `1/n!` factor.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::{rat, rat_int};
use crate::exact::roots::{isolate_largest_root, SturmChain};
use crate::exact::{binom, expand_scaled, factorial, AlgebraicNumber, Rational, UniPoly};
use crate::flats::{hilbert_bipoly_uniform, FlatConfig};

/// `Λ_{n,r,s}` from the closed form.
pub fn lambda_poly(n: u32, r: u32, s: u64) -> Result<UniPoly> {
    FlatConfig::new(n, r, s)?;
    let shifted = UniPoly::from_ints(&[-1, 1]);
    let mut sum = UniPoly::zero();
    for j in 0..=r {
        sum = &sum + &shifted.pow(j).scale(&rat_int(binom(n as i64, j as i64)?));
    }
    let top = UniPoly::monomial(Rational::one(), n as usize);
    let inv = Rational::one() / rat_int(factorial(n));
    Ok((&top - &sum.scale(&rat_int(s))).scale(&inv))
}

/// `Λ_{n,r,s}` as the `m^n` coefficient of `P_{n,r,s,m}(mτ)`, expanded with
/// `m` symbolic.
pub fn lambda_poly_via_leading(n: u32, r: u32, s: u64) -> Result<UniPoly> {
    let p = hilbert_bipoly_uniform(n, r, s)?;
    Ok(expand_scaled(&p).coefficient(n as usize))
}

/// `Λ_{n,r,s}(1) = (1−s)/n!`.
pub fn lambda_at_one_expected(n: u32, s: u64) -> Rational {
    (Rational::one() - rat_int(s)) / rat_int(factorial(n))
}

/// Checks `dΛ_{n,r,s}/dτ = Λ_{n−1,r−1,s}` and `Λ_{n,r,s}(1) = (1−s)/n!`.
pub fn tower_check(n: u32, r: u32, s: u64) -> Result<bool> {
    if r < 1 || n < 2 * r + 1 {
        return crate::error::domain(format!("tower check needs r >= 1 and n >= 2r+1 (n={n}, r={r})"));
    }
    let l = lambda_poly(n, r, s)?;
    let below = lambda_poly(n - 1, r - 1, s)?;
    Ok(l.derivative() == below && l.eval(&Rational::one()) == lambda_at_one_expected(n, s))
}

/// `g_{n,r,s}`: the largest real root of `Λ_{n,r,s}`, which is the unique
/// root in `[1, ∞)`. The uniqueness is checked on every call.
pub fn g_value(n: u32, r: u32, s: u64, precision: &Rational) -> Result<AlgebraicNumber> {
    let l = lambda_poly(n, r, s)?;
    let one = Rational::one();
    let chain = SturmChain::new(&l);
    let at_one = usize::from(l.eval(&one).is_zero());
    let count = at_one + chain.count_above(&one);
    if count != 1 {
        return Err(Error::Invariant(format!(
            "Λ_({n},{r},{s}) has {count} roots in [1, inf), expected exactly one"
        )));
    }
    if s == 1 {
        return Ok(AlgebraicNumber::from_rational(one));
    }
    isolate_largest_root(&l, &one, precision)?
        .ok_or_else(|| Error::Invariant(format!("Λ_({n},{r},{s}) lost its root above 1")))
}

/// Checks that `Λ_{n,r,s}` is negative at `samples` points of `[1, g)` and
/// positive at `samples` points of `(g, g+2]`.
pub fn sign_profile_check(n: u32, r: u32, s: u64, samples: u32) -> Result<bool> {
    if s < 2 {
        return crate::error::domain("sign profile needs s >= 2");
    }
    if samples < 1 {
        return crate::error::domain("need at least one sample");
    }
    let l = lambda_poly(n, r, s)?;
    let g = g_value(n, r, s, &crate::exact::roots::default_precision())?;
    let k = rat_int(samples);
    let one = Rational::one();
    let below_step = (g.lo() - &one) / &k;
    let above_step = (g.lo() + rat(2, 1) - g.hi()) / &k;
    let below = (0..samples).all(|i| l.eval(&(&one + &below_step * rat_int(i))).is_negative());
    let above = (1..=samples).all(|i| l.eval(&(g.hi() + &above_step * rat_int(i))).is_positive());
    Ok(below && above)
}

/// One row of the check that `n−1` is the largest root of
/// `Λ_{n,1,(n−1)^{n−2}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GSpecialRow {
    pub n: u32,
    pub s: u64,
    pub root: u32,
    pub vanishes: bool,
    pub largest: bool,
}

pub fn g_specials() -> Result<Vec<GSpecialRow>> {
    (3..=8u32)
        .map(|n| {
            let s = ((n - 1) as u64).pow(n - 2);
            let l = lambda_poly(n, 1, s)?;
            let root = rat_int(n - 1);
            let vanishes = l.eval(&root).is_zero();
            let g = g_value(n, 1, s, &crate::exact::roots::default_precision())?;
            Ok(GSpecialRow {
                n,
                s,
                root: n - 1,
                vanishes,
                largest: g.exact() == Some(&root),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::roots::default_precision;
    use std::cmp::Ordering;

    fn sixth(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c).scale(&rat(1, 6))
    }

    #[test]
    fn closed_forms() {
        assert_eq!(lambda_poly(3, 1, 6).unwrap(), sixth(&[12, -18, 0, 1]));
        assert_eq!(lambda_poly(3, 0, 4).unwrap(), sixth(&[-4, 0, 0, 1]));
        for n in 3..7u32 {
            let s = 5u64;
            let lines = UniPoly::from_ints(&[(n as i64 - 1) * 5, -(n as i64) * 5])
                + UniPoly::monomial(Rational::one(), n as usize);
            let lines = lines.scale(&(Rational::one() / rat_int(factorial(n))));
            assert_eq!(lambda_poly(n, 1, s).unwrap(), lines);
        }
    }

    #[test]
    fn leading_coefficient_route() {
        assert_eq!(lambda_poly_via_leading(3, 0, 4).unwrap(), sixth(&[-4, 0, 0, 1]));
        assert_eq!(lambda_poly_via_leading(3, 1, 6).unwrap(), sixth(&[12, -18, 0, 1]));
        assert_eq!(lambda_poly_via_leading(5, 2, 3).unwrap(), lambda_poly(5, 2, 3).unwrap());
    }

    #[test]
    fn tower() {
        assert!(tower_check(3, 1, 6).unwrap());
        assert!(tower_check(5, 2, 2).unwrap());
        assert_eq!(lambda_poly(5, 2, 2).unwrap().eval(&Rational::one()), rat(-1, 120));
        assert_eq!(lambda_poly(5, 2, 1).unwrap().eval(&Rational::one()), Rational::zero());
        assert_eq!(
            lambda_poly(3, 1, 6).unwrap().derivative(),
            UniPoly::from_ints(&[-6, 0, 1]).scale(&rat(1, 2))
        );
        assert!(tower_check(3, 0, 6).is_err());
    }

    #[test]
    fn g_examples() {
        let p = default_precision();
        let g = g_value(3, 1, 5, &p).unwrap();
        assert!((g.to_f64() - 3.482).abs() < 1e-3);
        assert_eq!(g_value(2, 0, 9, &p).unwrap().exact(), Some(&rat(3, 1)));
        assert_eq!(g_value(11, 2, 729, &p).unwrap().exact(), Some(&rat(3, 1)));
        for r in 1..=10 {
            assert_eq!(g_value(2 * r + 1, r, 2, &p).unwrap().exact(), Some(&rat(2, 1)), "r={r}");
        }
        assert_eq!(g_value(4, 1, 1, &p).unwrap().exact(), Some(&Rational::one()));
        let g6 = g_value(3, 1, 6, &p).unwrap();
        assert_eq!(g6.cmp_rational(&rat(27, 7)), Ordering::Greater);
        assert!((g6.to_f64() - 3.8587).abs() < 1e-4);
    }

    #[test]
    fn sign_profile() {
        assert!(sign_profile_check(3, 1, 6, 8).unwrap());
        assert!(sign_profile_check(4, 0, 7, 8).unwrap());
        assert!(sign_profile_check(5, 2, 2, 8).unwrap());
        let l = lambda_poly(3, 1, 6).unwrap();
        assert_eq!(l.eval(&rat(1, 1)), rat(-5, 6));
        assert_eq!(l.eval(&rat(4, 1)), rat(4, 6));
    }

    #[test]
    fn specials() {
        let rows = g_specials().unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.vanishes && r.largest));
        assert_eq!(rows[1].s, 9);
        assert_eq!(rows[2].s, 64);
    }
}
