//! Polynomials in two variables `t` and `m`, and the expansion obtained by
//! substituting `t = m*x` and collecting powers of `m`.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use super::binom::binom_nn;
use super::poly::UniPoly;
use super::rational::{rat_int, Rational};

/// `P(t, m) = sum_j a_j(m) t^j`; `by_t[j]` holds `a_j` as a polynomial in m.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    by_t: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut by_t: Vec<UniPoly>) -> Self {
        while by_t.last().is_some_and(UniPoly::is_zero) {
            by_t.pop();
        }
        Self { by_t }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// A polynomial in `t` alone.
    pub fn from_t(p: &UniPoly) -> Self {
        Self::new(p.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect())
    }

    /// A polynomial in `m` alone.
    pub fn from_m(p: &UniPoly) -> Self {
        Self::new(vec![p.clone()])
    }

    pub fn coeff_of_t(&self, j: usize) -> UniPoly {
        self.by_t.get(j).cloned().unwrap_or_default()
    }

    pub fn degree_t(&self) -> Option<usize> {
        self.by_t.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Rational, m: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.by_t.iter().rev() {
            acc = acc * t + a.eval(m);
        }
        acc
    }

    /// Fix `m`, leaving a polynomial in `t`.
    pub fn at_m(&self, m: &Rational) -> UniPoly {
        UniPoly::new(self.by_t.iter().map(|a| a.eval(m)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.by_t.iter().map(|a| a.scale(c)).collect())
    }

    /// Treating the second variable as a summation index `i`, returns
    /// `sum_{0 <= i < m} P(t, i)` as a polynomial in `(t, m)`.
    pub fn sum_second_below(&self) -> Self {
        let max_k = self.by_t.iter().filter_map(UniPoly::degree).max().unwrap_or(0);
        let sums: Vec<UniPoly> = (0..=max_k as u32).map(power_sum).collect();
        Self::new(
            self.by_t
                .iter()
                .map(|a| {
                    a.coeffs()
                        .iter()
                        .enumerate()
                        .fold(UniPoly::zero(), |acc, (k, c)| &acc + &sums[k].scale(c))
                })
                .collect(),
        )
    }
}

/// `S_k(m) = sum_{0 <= i < m} i^k` as a polynomial in m (with 0^0 = 1),
/// from `m^{k+1} = sum_{j <= k} C(k+1, j) S_j(m)`.
pub fn power_sum(k: u32) -> UniPoly {
    let mut sums: Vec<UniPoly> = Vec::with_capacity(k as usize + 1);
    for q in 0..=k {
        let mut p = UniPoly::monomial(Rational::one(), q as usize + 1);
        for (j, sj) in sums.iter().enumerate() {
            p = &p - &sj.scale(&rat_int(binom_nn(q as i64 + 1, j as i64)));
        }
        sums.push(p.scale(&(Rational::one() / rat_int(q as i64 + 1))));
    }
    sums.pop().unwrap_or_default()
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.by_t.len().max(rhs.by_t.len());
        BiPoly::new((0..n).map(|j| &self.coeff_of_t(j) + &rhs.coeff_of_t(j)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.by_t.len().max(rhs.by_t.len());
        BiPoly::new((0..n).map(|j| &self.coeff_of_t(j) - &rhs.coeff_of_t(j)).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.by_t.is_empty() || rhs.by_t.is_empty() {
            return BiPoly::zero();
        }
        let mut out = vec![UniPoly::zero(); self.by_t.len() + rhs.by_t.len() - 1];
        for (i, a) in self.by_t.iter().enumerate() {
            for (j, b) in rhs.by_t.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.by_t.iter().map(|a| -a).collect())
    }
}

/// `P(m*x, m) = sum_i c_i(x) m^i`; `coeffs_in_m[i]` is `c_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiExpansion {
    pub coeffs_in_m: Vec<UniPoly>,
}

impl BiExpansion {
    pub fn coefficient(&self, i: usize) -> UniPoly {
        self.coeffs_in_m.get(i).cloned().unwrap_or_default()
    }

    pub fn degree_m(&self) -> Option<usize> {
        self.coeffs_in_m.len().checked_sub(1)
    }

    pub fn eval(&self, m: &Rational, x: &Rational) -> Rational {
        self.at_x(x).eval(m)
    }

    /// Fix `x`, leaving a polynomial in `m`.
    pub fn at_x(&self, x: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs_in_m.iter().map(|c| c.eval(x)).collect())
    }
}

/// Substitutes `t = m*x` and collects by powers of `m`: the monomial
/// `t^j m^k` contributes `x^j` to the coefficient of `m^{j+k}`.
pub fn expand_scaled(p: &BiPoly) -> BiExpansion {
    let top = p
        .by_t
        .iter()
        .enumerate()
        .filter_map(|(j, a)| a.degree().map(|d| j + d))
        .max();
    let Some(top) = top else {
        return BiExpansion { coeffs_in_m: Vec::new() };
    };
    let mut coeffs: Vec<Vec<Rational>> = vec![Vec::new(); top + 1];
    for (j, a) in p.by_t.iter().enumerate() {
        for (k, c) in a.coeffs().iter().enumerate() {
            let slot = &mut coeffs[j + k];
            if slot.len() <= j {
                slot.resize(j + 1, Rational::zero());
            }
            slot[j] += c;
        }
    }
    let mut coeffs_in_m: Vec<UniPoly> = coeffs.into_iter().map(UniPoly::new).collect();
    while coeffs_in_m.last().is_some_and(UniPoly::is_zero) {
        coeffs_in_m.pop();
    }
    BiExpansion { coeffs_in_m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn power_sums() {
        for k in 0..6u32 {
            let s = power_sum(k);
            for m in 0..12i64 {
                let direct: i64 = (0..m).map(|i| i.pow(k)).sum();
                assert_eq!(s.eval_int(m), rat_int(direct), "k={k} m={m}");
            }
        }
    }

    #[test]
    fn expand_plain_t() {
        let e = expand_scaled(&BiPoly::from_t(&UniPoly::x()));
        assert_eq!(e.coefficient(1), UniPoly::x());
        assert!(e.coefficient(0).is_zero());
    }

    #[test]
    fn expand_points_example() {
        // (t+3)(t+2)(t+1) - 4(m+2)(m+1)m
        let tpart = BiPoly::from_t(&UniPoly::binomial(3, 3).scale(&rat(6, 1)));
        let mpart = BiPoly::from_m(&UniPoly::binomial(2, 3).scale(&rat(24, 1)));
        let e = expand_scaled(&(&tpart - &mpart));
        assert_eq!(e.coefficient(3), UniPoly::from_ints(&[-4, 0, 0, 1]));
        assert_eq!(e.coefficient(2), UniPoly::from_ints(&[-12, 0, 6]));
        assert_eq!(e.coefficient(1), UniPoly::from_ints(&[-8, 11]));
        assert_eq!(e.coefficient(0), UniPoly::from_ints(&[6]));
    }

    #[test]
    fn sum_second_variable() {
        // sum_{i<m} (t + i) = m t + m(m-1)/2
        let f = BiPoly::new(vec![UniPoly::x(), UniPoly::one()]);
        let s = f.sum_second_below();
        for t in 0..5i64 {
            for m in 0..6i64 {
                let direct: i64 = (0..m).map(|i| t + i).sum();
                assert_eq!(s.eval(&rat_int(t), &rat_int(m)), rat_int(direct));
            }
        }
    }
}
