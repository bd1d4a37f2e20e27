//! Finite checks and replays: the two-line overlap bound, the enumeration
//! behind the seven-or-more-lines theorem, worked appendix examples, and the
//! reproduction matrix.

pub mod appendix;
pub mod matrix;
pub mod nosymetry;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exact::binom::binom_nn;
use crate::exact::Integer;
use crate::exact::rational::serialize_integer;
use crate::flats::conditions_count;

pub use appendix::{replay_appendix, ReplayReport, APPENDIX_IDS};
pub use matrix::{reproduction_matrix, MatrixRow};
pub use nosymetry::{nosymetry_bounds, nosymetry_enumerate, nosymetry_tail_checks, NosymetryReport};

/// `C(d+3,3) − c_{3,1,m1,d} − c_{3,1,m2,d}` at `d = m1+m2−t−1`, together
/// with the factored expression `−3t(2m1m2−(m1+m2)t) − 3m2t − 3m1t − t(t−1)(t−2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapValue {
    pub m1: i64,
    pub m2: i64,
    pub t: i64,
    pub d: i64,
    #[serde(serialize_with = "serialize_integer")]
    pub direct: Integer,
    #[serde(serialize_with = "serialize_integer")]
    pub factored: Integer,
    /// The factored expression equals six times the direct value.
    pub factored_is_six_times_direct: bool,
}

impl OverlapValue {
    pub fn nonpositive(&self) -> bool {
        !self.direct.is_positive()
    }
}

pub fn two_line_overlap_value(m1: i64, m2: i64, t: i64) -> Result<OverlapValue> {
    if m1 < 1 || m2 < m1 || t < 0 || t > m1 - 1 {
        return domain(format!("need 1 <= m1 <= m2 and 0 <= t <= m1-1 (m1={m1}, m2={m2}, t={t})"));
    }
    let d = m1 + m2 - t - 1;
    let c = |m: i64| conditions_count(3, 1, m as u32, d as u32);
    let direct = binom_nn(d + 3, 3) - c(m1)? - c(m2)?;
    let (a, b, t) = (BigInt::from(m1), BigInt::from(m2), BigInt::from(t));
    let factored = -BigInt::from(3) * &t * (BigInt::from(2) * &a * &b - (&a + &b) * &t)
        - BigInt::from(3) * &b * &t
        - BigInt::from(3) * &a * &t
        - &t * (&t - 1) * (&t - 2);
    Ok(OverlapValue {
        m1,
        m2,
        t: m1 + m2 - d - 1,
        d,
        factored_is_six_times_direct: factored == &direct * 6,
        direct,
        factored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn overlap_examples() {
        let v = two_line_overlap_value(2, 2, 1).unwrap();
        assert_eq!((v.d, v.direct.clone(), v.factored.clone()), (2, int(-4), int(-24)));
        assert!(v.factored_is_six_times_direct);
        let v = two_line_overlap_value(1, 1, 0).unwrap();
        assert_eq!((v.d, v.direct), (1, int(0)));
        for m in 1..=6 {
            assert_eq!(two_line_overlap_value(m, m, 0).unwrap().direct, int(0));
        }
        assert!(two_line_overlap_value(2, 1, 0).is_err());
        assert!(two_line_overlap_value(2, 3, 2).is_err());
    }
}
