//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::rational::{rat_int, to_exact_string, Integer, Rational};

/// `coeffs[i]` is the coefficient of `x^i`. The leading coefficient is never
/// zero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    /// `x + a`
    pub fn linear(a: Rational) -> Self {
        Self::new(vec![a, Rational::one()])
    }

    /// C(x + shift, k) = (x+shift)(x+shift-1)...(x+shift-k+1)/k! as a
    /// polynomial in x. Agrees with the binomial coefficient at every integer
    /// x with x + shift >= 0.
    pub fn binomial(shift: i64, k: u32) -> Self {
        let mut p = Self::one();
        for j in 0..k as i64 {
            p = &p * &Self::linear(rat_int(shift - j));
        }
        let kf = super::binom::factorial(k);
        p.scale(&Rational::new(BigInt::one(), kf))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&rat_int(x))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / rat_int(i as i64 + 1)),
        );
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] / &lc;
            if f.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &f * dc;
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`, made monic: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// The unique integer polynomial with coprime coefficients and positive
    /// leading coefficient that is a rational multiple of `self`.
    pub fn primitive_integer(&self) -> Vec<Integer> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<Integer> = self.coeffs.iter().map(|c| (c * rat_int(l.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// `self(a*x + b)`
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Self {
        let inner = Self::new(vec![b.clone(), a.clone()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&to_exact_string(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else if a.is_integer() {
                out.push_str(&format!("{a}*{mono}"));
            } else {
                out.push_str(&format!("({a})*{mono}"));
            }
        }
        out
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self.display_in("x"))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

/// Coefficient array, lowest degree first, each entry an exact string.
impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&to_exact_string(c))?;
        }
        seq.end()
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn derivative_power_rule() {
        let p = UniPoly::from_ints(&[12, -18, 0, 1]);
        assert_eq!(p.derivative(), UniPoly::from_ints(&[-18, 0, 3]));
        assert!(UniPoly::from_ints(&[5]).derivative().is_zero());
    }

    #[test]
    fn derivative_of_normalized_points_polynomial() {
        // (x^n - s)/n! differentiates to x^(n-1)/(n-1)!
        let p = UniPoly::new(vec![rat(-7, 24), rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 24)]);
        assert_eq!(p.derivative(), UniPoly::monomial(rat(1, 6), 3));
    }

    #[test]
    fn normalizes_trailing_zeros() {
        let p = UniPoly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(UniPoly::from_ints(&[0, 0]).degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        // (x-2)(x^2+2x-2) = x^3 - 6x + 4
        let p = UniPoly::from_ints(&[4, -6, 0, 1]);
        let (q, r) = p.div_rem(&UniPoly::from_ints(&[-2, 1]));
        assert_eq!(q, UniPoly::from_ints(&[-2, 2, 1]));
        assert!(r.is_zero());
        let sq = &UniPoly::from_ints(&[-2, 1]) * &UniPoly::from_ints(&[-2, 1]);
        let g = (&sq * &UniPoly::from_ints(&[1, 1])).gcd(&sq.derivative());
        assert_eq!(g, UniPoly::from_ints(&[-2, 1]));
    }

    #[test]
    fn squarefree_part_removes_repeats() {
        let a = UniPoly::from_ints(&[-1, 1]);
        let b = UniPoly::from_ints(&[3, 1]);
        let p = &(&(&a * &a) * &a) * &b;
        assert_eq!(p.squarefree_part(), (&a * &b).monic());
    }

    #[test]
    fn primitive_integer_form() {
        let p = UniPoly::from_ints(&[12, -18, 0, 1]).scale(&rat(1, 6));
        let ints: Vec<i64> = p.primitive_integer().iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(ints, vec![12, -18, 0, 1]);
        let neg = UniPoly::new(vec![rat(1, 2), rat(-3, 4)]);
        let ints: Vec<i64> = neg.primitive_integer().iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(ints, vec![-2, 3]);
    }

    #[test]
    fn binomial_polynomial_matches_integers() {
        let p = UniPoly::binomial(3, 3);
        for t in 0..10i64 {
            assert_eq!(p.eval_int(t), rat_int(crate::exact::binom::binom(t + 3, 3).unwrap()));
        }
        // vanishes on the integers below the support
        let q = UniPoly::binomial(0, 2);
        assert!(q.eval_int(0).is_zero() && q.eval_int(1).is_zero());
    }

    #[test]
    fn compose_linear_shift() {
        // (x - 1)^2 via composing x^2
        let p = UniPoly::monomial(rat(1, 1), 2).compose_linear(&rat(1, 1), &rat(-1, 1));
        assert_eq!(p, UniPoly::from_ints(&[1, -2, 1]));
    }

    #[test]
    fn display_and_serialize() {
        let p = UniPoly::from_ints(&[12, -18, 0, 1]);
        assert_eq!(p.display_in("t"), "t^3 - 18*t + 12");
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["12","-18","0","1"]"#);
    }
}
