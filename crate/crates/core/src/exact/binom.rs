use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Integer;
use crate::error::{domain, Result};

/// Binomial coefficient C(a, b) with C(a, b) = 0 for b < 0 or b > a.
/// A negative upper argument is rejected.
pub fn binom(a: i64, b: i64) -> Result<Integer> {
    if a < 0 {
        return domain(format!("binom: negative upper argument {a}"));
    }
    Ok(binom_nn(a, b))
}

/// Same as [`binom`] but with C(a, b) = 0 for any a < 0. Used internally
/// where a negative upper argument can only arise from an empty range.
pub(crate) fn binom_nn(a: i64, b: i64) -> Integer {
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u32) -> Integer {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}
