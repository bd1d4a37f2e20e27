//! Condition counts, Hilbert functions and Hilbert polynomials of disjoint
//! fat flats.
//!
//! An `r`-plane `L ⊂ P^n` with multiplicity `m` imposes
//! `c_{n,r,m,t} = Σ_{0≤i<m} C(t−i+r, r)·C(i+n−r−1, n−r−1)` independent
//! conditions on forms of degree `t ≥ m`. For `s` such planes the Hilbert
//! polynomial of the ideal is `P_{n,r,s,m}(t) = C(t+n, n) − s·c_{n,r,m,t}`;
//! with mixed multiplicities the `s·c` term becomes a sum over the entries.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exact::binom::binom_nn;
use crate::exact::{binom, BiPoly, Integer, Rational, UniPoly};
use crate::exact::rational::rat_int;

/// Largest monomial count the enumeration oracle will walk.
pub const ORACLE_GUARD: u64 = 10_000_000;

/// `s` disjoint `r`-planes in `P^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FlatConfig {
    pub n: u32,
    pub r: u32,
    pub s: u64,
}

impl FlatConfig {
    pub fn new(n: u32, r: u32, s: u64) -> Result<Self> {
        if n < 1 {
            return domain("ambient dimension n must be at least 1");
        }
        if r >= n {
            return domain(format!("flat dimension r={r} must be below n={n}"));
        }
        if s < 1 {
            return domain("need at least one flat");
        }
        if s >= 2 && n < 2 * r + 1 {
            return domain(format!("{s} disjoint {r}-planes need n >= {}, got n={n}", 2 * r + 1));
        }
        Ok(Self { n, r, s })
    }
}

/// Multiplicities `(m_1, …, m_s)`, one per flat. Zero entries are allowed and
/// impose nothing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MultVector {
    pub entries: Vec<u32>,
}

impl MultVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self { entries }
    }

    pub fn uniform(s: usize, m: u32) -> Self {
        Self { entries: vec![m; s] }
    }

    pub fn max(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn sum(&self) -> u64 {
        self.entries.iter().map(|&m| m as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl std::str::FromStr for MultVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad multiplicity {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { entries })
    }
}

fn check_flat(n: u32, r: u32) -> Result<()> {
    if r >= n {
        return domain(format!("flat dimension r={r} must be below n={n}"));
    }
    Ok(())
}

/// `c_{n,r,m,t}`, the number of conditions imposed on degree-`t` forms by
/// vanishing to order `m` along an `r`-plane. Requires `t >= m >= 1`.
pub fn conditions_count(n: u32, r: u32, m: u32, t: u32) -> Result<Integer> {
    check_flat(n, r)?;
    if m < 1 {
        return domain("multiplicity must be at least 1");
    }
    if t < m {
        return domain(format!("condition count needs t >= m (t={t}, m={m})"));
    }
    let (n, r, m, t) = (n as i64, r as i64, m as i64, t as i64);
    let mut acc = BigInt::zero();
    for i in 0..m {
        acc += binom(t - i + r, r)? * binom(i + n - r - 1, n - r - 1)?;
    }
    Ok(acc)
}

/// Counts degree-`t` monomials in `x_0..x_n` whose exponents on
/// `x_{r+1}..x_n` sum to less than `m`, by walking every monomial.
pub fn conditions_count_oracle(n: u32, r: u32, m: u32, t: u32) -> Result<Integer> {
    check_flat(n, r)?;
    if m < 1 {
        return domain("multiplicity must be at least 1");
    }
    if t < m {
        return domain(format!("condition count needs t >= m (t={t}, m={m})"));
    }
    let total = binom(t as i64 + n as i64, n as i64)?;
    if total > BigInt::from(ORACLE_GUARD) {
        return Err(Error::EnumerationGuard {
            size: total.to_string(),
            limit: ORACLE_GUARD,
        });
    }
    // exponents[k] for k in 0..=n, filled left to right
    let vars = n as usize + 1;
    let mut exps = vec![0u32; vars];
    let mut count: u64 = 0;
    walk_monomials(&mut exps, 0, t, &mut |e| {
        let tail: u32 = e[r as usize + 1..].iter().sum();
        if tail < m {
            count += 1;
        }
    });
    Ok(BigInt::from(count))
}

fn walk_monomials(exps: &mut [u32], k: usize, left: u32, visit: &mut impl FnMut(&[u32])) {
    if k + 1 == exps.len() {
        exps[k] = left;
        visit(exps);
        return;
    }
    for e in 0..=left {
        exps[k] = e;
        walk_monomials(exps, k + 1, left - e, visit);
    }
}

/// Closed form for lines: `(t+1)·C(m+n−2, n−1) − (n−1)·C(m+n−2, n)`.
pub fn conditions_count_lines(n: u32, m: u32, t: u32) -> Result<Integer> {
    if n < 2 {
        return domain("lines need n >= 2");
    }
    if m < 1 {
        return domain("multiplicity must be at least 1");
    }
    if t < m {
        return domain(format!("condition count needs t >= m (t={t}, m={m})"));
    }
    let (n, m, t) = (n as i64, m as i64, t as i64);
    Ok(BigInt::from(t + 1) * binom(m + n - 2, n - 1)? - BigInt::from(n - 1) * binom(m + n - 2, n)?)
}

/// First `len` values of the Hilbert function of one `r`-plane of
/// multiplicity `m` in `P^n`, by `r` rounds of partial sums over the point
/// case `min{C(t+n−r, n−r), C(m+n−r−1, n−r)}`.
pub fn hilbert_function_flat(n: u32, r: u32, m: u32, len: usize) -> Result<Vec<Integer>> {
    check_flat(n, r)?;
    if m < 1 {
        return domain("multiplicity must be at least 1");
    }
    let k = (n - r) as i64;
    let cap = binom_nn(m as i64 + k - 1, k);
    let mut seq: Vec<Integer> = (0..len as i64).map(|t| binom_nn(t + k, k).min(cap.clone())).collect();
    for _ in 0..r {
        let mut acc = BigInt::zero();
        for v in seq.iter_mut() {
            acc += &*v;
            *v = acc.clone();
        }
    }
    Ok(seq)
}

/// `c_{n,r,m,t}` as a polynomial in `t`, valid for `t >= m − r − 1`.
pub fn conditions_poly(n: u32, r: u32, m: u32) -> Result<UniPoly> {
    check_flat(n, r)?;
    let (n, r) = (n as i64, r as i64);
    let mut acc = UniPoly::zero();
    for i in 0..m as i64 {
        let w = binom_nn(i + n - r - 1, n - r - 1);
        acc = &acc + &UniPoly::binomial(r - i, r as u32).scale(&rat_int(w));
    }
    Ok(acc)
}

/// `c_{n,r,m,t}` as a polynomial in both `t` and `m`, obtained by summing the
/// `i`-indexed terms symbolically over `0 <= i < m`.
pub fn conditions_bipoly(n: u32, r: u32) -> Result<BiPoly> {
    check_flat(n, r)?;
    // C(t − i + r, r) as a polynomial in (t, i)
    let mut head = BiPoly::from_t(&UniPoly::one());
    for j in 0..r as i64 {
        let factor = BiPoly::new(vec![
            UniPoly::from_ints(&[r as i64 - j, -1]),
            UniPoly::one(),
        ]);
        head = &head * &factor;
    }
    head = head.scale(&(Rational::one() / rat_int(crate::exact::factorial(r))));
    let k = (n - r - 1) as i64;
    let tail = BiPoly::from_m(&UniPoly::binomial(k, k as u32));
    Ok((&head * &tail).sum_second_below())
}

/// `P_{n,r,s,m}(t) = C(t+n, n) − s·c_{n,r,m,t}`.
pub fn hilbert_poly_uniform(n: u32, r: u32, s: u64, m: u32) -> Result<UniPoly> {
    FlatConfig::new(n, r, s)?;
    if m < 1 {
        return domain("multiplicity must be at least 1");
    }
    let c = conditions_poly(n, r, m)?;
    Ok(&UniPoly::binomial(n as i64, n) - &c.scale(&rat_int(s)))
}

/// `P_{n,r,s,m}(t)` with `m` left symbolic, as a polynomial in `(t, m)`.
pub fn hilbert_bipoly_uniform(n: u32, r: u32, s: u64) -> Result<BiPoly> {
    FlatConfig::new(n, r, s)?;
    let c = conditions_bipoly(n, r)?;
    Ok(&BiPoly::from_t(&UniPoly::binomial(n as i64, n)) - &c.scale(&rat_int(s)))
}

/// `P_{n,r,v}(t) = C(t+n, n) − Σ_i c_{n,r,m_i,t}`.
pub fn hilbert_poly_mixed(n: u32, r: u32, v: &MultVector) -> Result<UniPoly> {
    if v.is_empty() {
        return domain("empty multiplicity vector");
    }
    FlatConfig::new(n, r, v.len() as u64)?;
    let mut p = UniPoly::binomial(n as i64, n);
    let mut distinct: Vec<u32> = v.entries.iter().copied().filter(|&m| m > 0).collect();
    distinct.sort_unstable();
    distinct.dedup();
    for m in distinct {
        let k = v.entries.iter().filter(|&&x| x == m).count() as i64;
        p = &p - &conditions_poly(n, r, m)?.scale(&rat_int(k));
    }
    Ok(p)
}

/// `P_{n,r,s,m}(t)` at an integer, through the polynomial.
pub fn hilbert_value_uniform(n: u32, r: u32, s: u64, m: u32, t: u32) -> Result<Integer> {
    if (t as i64) < m as i64 - r as i64 - 1 {
        return domain(format!("P_(n,r,s,m)(t) is only meaningful for t >= m - r - 1 (t={t}, m={m})"));
    }
    Ok(hilbert_poly_uniform(n, r, s, m)?.eval_int(t as i64).to_integer())
}

/// Smallest `t >= max m_i` with `P_{n,r,v}(t) > 0`; an upper bound for the
/// initial degree of the ideal.
pub fn expected_alpha_upper(n: u32, r: u32, v: &MultVector) -> Result<u32> {
    let m = v.max();
    if m == 0 {
        return domain("multiplicity vector needs a positive entry");
    }
    let p = hilbert_poly_mixed(n, r, v)?;
    first_positive(&p, m)
}

fn first_positive(p: &UniPoly, from: u32) -> Result<u32> {
    let mut t = from;
    loop {
        if p.eval_int(t as i64).is_positive() {
            return Ok(t);
        }
        t = t
            .checked_add(1)
            .ok_or_else(|| Error::Invariant("no positive value found".into()))?;
    }
}

fn first_t(mut pred: impl FnMut(i64) -> bool) -> u32 {
    (0..).find(|&t| pred(t as i64)).unwrap()
}

/// Initial degree of `s` general lines in `P^n`:
/// `min{t : C(n+t, n) − s(t+1) > 0}`.
pub fn alpha_lines_general(n: u32, s: u64) -> Result<u32> {
    if n < 3 || s < 1 {
        return domain("need n >= 3 and s >= 1");
    }
    let (n, s) = (n as i64, BigInt::from(s));
    Ok(first_t(|t| binom_nn(n + t, n) - &s * (t + 1) > BigInt::zero()))
}

/// Initial degree of `s` general points: `min{t : C(t+n, n) − s > 0}`.
pub fn alpha_points_general(n: u32, s: u64) -> Result<u32> {
    if n < 1 || s < 1 {
        return domain("need n >= 1 and s >= 1");
    }
    let (n, s) = (n as i64, BigInt::from(s));
    Ok(first_t(|t| binom_nn(t + n, n) - &s > BigInt::zero()))
}

/// Expected initial degree of the double points:
/// `min{t : C(t+n, n) − s(n+1) > 0}`. Known exceptions are not applied.
pub fn alpha2_points_expected(n: u32, s: u64) -> Result<u32> {
    if n < 1 || s < 1 {
        return domain("need n >= 1 and s >= 1");
    }
    let (n, s) = (n as i64, BigInt::from(s));
    Ok(first_t(|t| binom_nn(t + n, n) - &s * (n + 1) > BigInt::zero()))
}

/// `(Σ_{0≤i<m} C(i+a, a), C(m+a, a+1))`.
pub fn identity_sum_binom(a: u32, m: u32) -> Result<(Integer, Integer)> {
    if m < 1 {
        return domain("m must be at least 1");
    }
    let (a, m) = (a as i64, m as i64);
    let lhs = (0..m).map(|i| binom_nn(i + a, a)).sum();
    Ok((lhs, binom_nn(m + a, a + 1)))
}

/// `(Σ_{0≤i<m} i·C(i+a, a), (a+1)·C(m+a, a+2))`.
pub fn identity_sum_i_binom(a: u32, m: u32) -> Result<(Integer, Integer)> {
    if m < 1 {
        return domain("m must be at least 1");
    }
    let (a, m) = (a as i64, m as i64);
    let lhs = (0..m).map(|i| binom_nn(i + a, a) * i).sum();
    Ok((lhs, binom_nn(m + a, a + 2) * (a + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn condition_counts() {
        assert_eq!(conditions_count(3, 1, 4, 5).unwrap(), int(40));
        assert_eq!(conditions_count(4, 2, 4, 4).unwrap(), int(65));
        assert_eq!(conditions_count(5, 2, 1, 3).unwrap(), int(10));
        assert_eq!(conditions_count(3, 1, 4, 4).unwrap(), int(30));
        assert!(conditions_count(3, 1, 4, 3).is_err());
        assert!(conditions_count(3, 3, 1, 3).is_err());
    }

    #[test]
    fn oracle_counts() {
        assert_eq!(conditions_count_oracle(3, 1, 4, 5).unwrap(), int(40));
        assert_eq!(conditions_count_oracle(2, 0, 2, 2).unwrap(), int(3));
        assert_eq!(conditions_count_oracle(4, 2, 4, 4).unwrap(), int(65));
        assert!(matches!(
            conditions_count_oracle(10, 0, 1, 200),
            Err(Error::EnumerationGuard { .. })
        ));
    }

    #[test]
    fn line_closed_form() {
        assert_eq!(conditions_count_lines(3, 4, 5).unwrap(), int(40));
        assert_eq!(conditions_count_lines(3, 7, 27).unwrap(), int(672));
        assert_eq!(conditions_count_lines(4, 1, 3).unwrap(), int(4));
    }

    #[test]
    fn hilbert_sequences() {
        let h = |n, r| -> Vec<i64> {
            hilbert_function_flat(n, r, 4, 6)
                .unwrap()
                .iter()
                .map(|x| x.try_into().unwrap())
                .collect()
        };
        assert_eq!(h(2, 0), vec![1, 3, 6, 10, 10, 10]);
        assert_eq!(h(3, 1), vec![1, 4, 10, 20, 30, 40]);
        assert_eq!(h(4, 2), vec![1, 5, 15, 35, 65, 105]);
    }

    #[test]
    fn uniform_polynomial_values() {
        assert_eq!(hilbert_poly_uniform(3, 1, 6, 7).unwrap().eval_int(27), rat_int(28));
        assert_eq!(hilbert_poly_uniform(3, 0, 4, 2).unwrap().eval_int(3), rat_int(4));
        assert_eq!(hilbert_poly_uniform(3, 1, 1, 4).unwrap().eval_int(4), rat_int(5));
        // the remarked closed forms of c as polynomials in t
        assert_eq!(conditions_poly(3, 1, 4).unwrap(), UniPoly::from_ints(&[-10, 10]));
        assert_eq!(conditions_poly(4, 2, 4).unwrap(), UniPoly::from_ints(&[5, -5, 5]));
        assert_eq!(conditions_poly(2, 0, 4).unwrap(), UniPoly::from_ints(&[10]));
    }

    #[test]
    fn mixed_polynomial_values() {
        let v: MultVector = "4,3,3,3,3,3".parse().unwrap();
        assert_eq!(hilbert_poly_mixed(3, 1, &v).unwrap().eval_int(12), rat_int(-5));
        // one quadric through three skew lines
        let v = MultVector::new(vec![1, 1, 1, 0, 0]);
        assert_eq!(hilbert_poly_mixed(3, 1, &v).unwrap().eval_int(2), rat_int(1));
        let v = MultVector::new(vec![0, 0]);
        assert_eq!(hilbert_poly_mixed(3, 1, &v).unwrap(), UniPoly::binomial(3, 3));
    }

    #[test]
    fn symbolic_m_agrees_with_each_fixed_m() {
        for (n, r) in [(3, 1), (5, 2), (4, 0), (7, 3)] {
            let b = conditions_bipoly(n, r).unwrap();
            for m in 1..6u32 {
                assert_eq!(b.at_m(&rat_int(m)), conditions_poly(n, r, m).unwrap(), "n={n} r={r} m={m}");
            }
        }
    }

    #[test]
    fn alpha_bounds() {
        assert_eq!(expected_alpha_upper(3, 1, &MultVector::uniform(3, 1)).unwrap(), 2);
        assert_eq!(expected_alpha_upper(3, 1, &MultVector::uniform(6, 7)).unwrap(), 27);
        assert!(!hilbert_poly_uniform(3, 1, 6, 7).unwrap().eval_int(26).is_positive());
        assert_eq!(expected_alpha_upper(5, 0, &MultVector::uniform(1, 1)).unwrap(), 1);
        assert!(expected_alpha_upper(3, 1, &MultVector::uniform(2, 0)).is_err());
    }

    #[test]
    fn general_initial_degrees() {
        assert_eq!(alpha_lines_general(3, 3).unwrap(), 2);
        assert_eq!(alpha_lines_general(3, 6).unwrap(), 4);
        assert_eq!(alpha_lines_general(3, 1).unwrap(), 1);
        assert_eq!(alpha_points_general(2, 5).unwrap(), 2);
        assert_eq!(alpha_points_general(7, 1).unwrap(), 1);
        assert_eq!(alpha2_points_expected(2, 2).unwrap(), 3);
    }

    #[test]
    fn summation_identities() {
        assert_eq!(identity_sum_binom(2, 4).unwrap(), (int(20), int(20)));
        assert_eq!(identity_sum_binom(0, 5).unwrap(), (int(5), int(5)));
        assert_eq!(identity_sum_i_binom(1, 3).unwrap(), (int(8), int(8)));
    }

    #[test]
    fn config_domain() {
        assert!(FlatConfig::new(3, 1, 6).is_ok());
        assert!(FlatConfig::new(2, 1, 2).is_err());
        assert!(FlatConfig::new(2, 1, 1).is_ok());
        assert!(FlatConfig::new(3, 3, 1).is_err());
    }
}
