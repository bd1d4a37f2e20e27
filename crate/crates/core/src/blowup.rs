//! Intersection numbers on the blow-up of `P^n` along disjoint `r`-planes.
//!
//! With `H` the pullback of a hyperplane and `E` an exceptional divisor,
//! `H^n = 1`, `H^j E^{n−j} = (−1)^{n+1−r} C(n−j−1, r−j)` for `j <= r` and `0`
//! for `r < j < n`. Distinct exceptional divisors do not meet.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exact::binom::binom_nn;
use crate::exact::rational::rat_int;
use crate::exact::{binom, factorial, Integer, UniPoly};
use crate::flats::FlatConfig;
use crate::lambda::lambda_poly;

/// Value of an alternating binomial sum, and whether the arguments fall where
/// the identity is claimed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AltSum {
    #[serde(serialize_with = "crate::exact::rational::serialize_integer")]
    pub value: Integer,
    pub in_domain: bool,
}

fn sign(i: i64) -> BigInt {
    if i % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `Σ_{0≤i≤j} (−1)^i C(t+j, j−i) C(t+i, i)`, which vanishes for `j >= 1`.
/// At `j = 0` the sum is `1` and the result is flagged out of domain.
pub fn alt_sum_zero(t: i64, j: i64) -> Result<AltSum> {
    if t < 0 || j < 0 {
        return domain("alt_sum_zero needs t >= 0 and j >= 0");
    }
    let value = (0..=j).map(|i| sign(i) * binom_nn(t + j, j - i) * binom_nn(t + i, i)).sum();
    Ok(AltSum { value, in_domain: j >= 1 })
}

/// `Σ_{0≤i≤j} (−1)^i C(t+j, j−i) C(t+i−1, i)`, which equals `1` for `t >= 1`.
pub fn alt_sum_one(t: i64, j: i64) -> Result<AltSum> {
    if t < 1 || j < 0 {
        return domain("alt_sum_one needs t >= 1 and j >= 0");
    }
    let value = (0..=j).map(|i| sign(i) * binom_nn(t + j, j - i) * binom_nn(t + i - 1, i)).sum();
    Ok(AltSum { value, in_domain: true })
}

/// `H^j E^{n−j}` on the blow-up of `P^n` along one `r`-plane.
pub fn intersection_number(n: u32, r: u32, j: u32) -> Result<Integer> {
    if r >= n || j > n {
        return domain(format!("intersection number needs r < n and j <= n (n={n}, r={r}, j={j})"));
    }
    let (n, r, j) = (n as i64, r as i64, j as i64);
    Ok(if j == n {
        BigInt::one()
    } else if j <= r {
        sign(n + 1 - r) * binom(n - j - 1, r - j)?
    } else {
        BigInt::zero()
    })
}

/// `(τH − E)^n` with `E = E_1 + … + E_s`, expanded by the binomial theorem.
pub fn expand_self_intersection(n: u32, r: u32, s: u64) -> Result<UniPoly> {
    FlatConfig::new(n, r, s)?;
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for k in 0..n {
        let c = binom(n as i64, k as i64)? * sign((n - k) as i64) * BigInt::from(s) * intersection_number(n, r, k)?;
        coeffs.push(rat_int(c));
    }
    coeffs.push(rat_int(intersection_number(n, r, n)?));
    Ok(UniPoly::new(coeffs))
}

/// `(τH − E)^n ≡ n!·Λ_{n,r,s}(τ)`.
pub fn identity_check(n: u32, r: u32, s: u64) -> Result<bool> {
    let lhs = expand_self_intersection(n, r, s)?;
    let rhs = lambda_poly(n, r, s)?.scale(&rat_int(factorial(n)));
    Ok(lhs == rhs)
}

/// `Σ_{j≤r} (−1)^{r−j} C(n,j) C(n−j−1, r−j)`, which equals `1` for `r < n`.
pub fn unit_sum(n: u32, r: u32) -> Result<Integer> {
    if r >= n {
        return domain("unit_sum needs r < n");
    }
    let (n, r) = (n as i64, r as i64);
    Ok((0..=r).map(|j| sign(r - j) * binom_nn(n, j) * binom_nn(n - j - 1, r - j)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn alternating_sums() {
        assert_eq!(alt_sum_zero(2, 3).unwrap().value, int(0));
        assert_eq!(alt_sum_one(1, 2).unwrap().value, int(1));
        let z = alt_sum_zero(4, 0).unwrap();
        assert_eq!(z.value, int(1));
        assert!(!z.in_domain);
        assert!(alt_sum_one(0, 2).is_err());
    }

    #[test]
    fn intersection_numbers() {
        assert_eq!(intersection_number(3, 1, 1).unwrap(), int(-1));
        assert_eq!(intersection_number(3, 1, 2).unwrap(), int(0));
        assert_eq!(intersection_number(5, 2, 5).unwrap(), int(1));
        assert!(intersection_number(3, 3, 1).is_err());
    }

    #[test]
    fn expansions() {
        assert_eq!(expand_self_intersection(3, 1, 6).unwrap(), UniPoly::from_ints(&[12, -18, 0, 1]));
        assert_eq!(expand_self_intersection(4, 0, 7).unwrap(), UniPoly::from_ints(&[-7, 0, 0, 0, 1]));
        assert_eq!(
            expand_self_intersection(5, 2, 2).unwrap(),
            UniPoly::from_ints(&[-12, 30, -20, 0, 0, 1])
        );
    }

    #[test]
    fn matches_lambda() {
        assert!(identity_check(3, 1, 6).unwrap());
        assert!(identity_check(7, 3, 5).unwrap());
        assert!(identity_check(6, 0, 11).unwrap());
    }

    #[test]
    fn unit_sums() {
        for n in 1..=12 {
            for r in 0..n {
                assert_eq!(unit_sum(n, r).unwrap(), int(1), "n={n} r={r}");
            }
        }
    }
}
