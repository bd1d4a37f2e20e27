//! Certified real-root isolation by Sturm sequences and exact bisection.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::poly::UniPoly;
use super::rational::{ceil, rat, rat_int, to_decimal, to_exact_string, Rational};
use crate::error::{domain, Result};

/// Interval width used when no precision is requested.
pub fn default_precision() -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 12))
}

/// Significant digits in decimal renderings.
pub const DECIMAL_DIGITS: usize = 10;

fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm chain of the squarefree part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Self {
        let p0 = p.squarefree_part();
        let mut chain = vec![p0.clone()];
        let p1 = p0.derivative();
        if !p1.is_zero() {
            chain.push(p1);
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(-&r);
            }
        }
        Self { chain }
    }

    pub fn squarefree(&self) -> &UniPoly {
        &self.chain[0]
    }

    fn variations_of(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations_of(self.chain.iter().map(|p| sign(&p.eval(x))))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations_of(self.chain.iter().map(|p| sign(&p.leading())))
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Distinct real roots in `(lo, +inf)`.
    pub fn count_above(&self, lo: &Rational) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at_pos_inf())
    }
}

/// Every real root has absolute value below this bound.
pub fn cauchy_bound(p: &UniPoly) -> Rational {
    let lc = p.leading();
    let m = p
        .coeffs()
        .iter()
        .take(p.coeffs().len().saturating_sub(1))
        .map(|c| (c / &lc).abs())
        .max()
        .unwrap_or_else(Rational::zero);
    m + Rational::one()
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn count_roots_in(p: &UniPoly, lo: &Rational, hi: &Rational) -> Result<usize> {
    if p.is_zero() {
        return domain("count_roots_in: zero polynomial");
    }
    if lo >= hi {
        return domain(format!("count_roots_in: empty interval ({lo}, {hi}]"));
    }
    Ok(SturmChain::new(p).count(lo, hi))
}

/// Isolating intervals `(lo, hi]` (or exact points) for every real root, in
/// increasing order.
pub fn isolate_all_roots(p: &UniPoly) -> Result<Vec<(Rational, Rational)>> {
    if p.is_zero() {
        return domain("isolate_all_roots: zero polynomial");
    }
    let chain = SturmChain::new(p);
    let b = cauchy_bound(chain.squarefree());
    let mut out = Vec::new();
    split_isolate(&chain, -b.clone(), b, &mut out);
    Ok(out)
}

fn split_isolate(chain: &SturmChain, lo: Rational, hi: Rational, out: &mut Vec<(Rational, Rational)>) {
    match chain.count(&lo, &hi) {
        0 => {}
        1 => out.push((lo, hi)),
        _ => {
            let mid = (&lo + &hi) / rat(2, 1);
            split_isolate(chain, lo, mid.clone(), out);
            split_isolate(chain, mid, hi, out);
        }
    }
}

/// A real algebraic number: the unique root of `defining` in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    defining: UniPoly,
    lo: Rational,
    hi: Rational,
    exact: Option<Rational>,
}

impl AlgebraicNumber {
    pub fn from_rational(r: Rational) -> Self {
        Self {
            defining: UniPoly::new(vec![-r.clone(), Rational::one()]).primitive_form(),
            lo: r.clone(),
            hi: r.clone(),
            exact: Some(r),
        }
    }

    /// Squarefree defining polynomial with coprime integer coefficients.
    pub fn defining(&self) -> &UniPoly {
        &self.defining
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    /// `Some` exactly when the number is rational.
    pub fn exact(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat(2, 1)
    }

    pub fn decimal(&self) -> String {
        to_decimal(&self.midpoint(), DECIMAL_DIGITS)
    }

    pub fn to_f64(&self) -> f64 {
        super::rational::to_f64(&self.midpoint())
    }

    /// Narrows the interval to width at most `precision`.
    pub fn refined(&self, precision: &Rational) -> Self {
        if self.exact.is_some() || &self.width() <= precision {
            return self.clone();
        }
        let mut out = self.clone();
        out.bisect_until(precision);
        out
    }

    fn bisect_until(&mut self, precision: &Rational) {
        let s_hi = sign(&self.defining.eval(&self.hi));
        while self.exact.is_none() && &self.width() > precision {
            self.bisect_once(s_hi);
        }
    }

    fn bisect_once(&mut self, s_hi: i8) {
        let mid = self.midpoint();
        let s = sign(&self.defining.eval(&mid));
        if s == 0 {
            self.lo = mid.clone();
            self.hi = mid.clone();
            self.exact = Some(mid);
        } else if s == s_hi {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        if let Some(e) = &self.exact {
            return e.cmp(q);
        }
        if q < &self.lo {
            return Ordering::Greater;
        }
        if q > &self.hi {
            return Ordering::Less;
        }
        let v = self.defining.eval(q);
        if v.is_zero() {
            return Ordering::Equal;
        }
        // exactly one simple root in (lo, hi): the sign at hi is the sign
        // on the root's right
        let s_hi = sign(&self.defining.eval(&self.hi));
        if sign(&v) == s_hi {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Exact comparison of two algebraic numbers.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        if let Some(e) = &other.exact {
            return self.cmp_rational(e);
        }
        if let Some(e) = &self.exact {
            return other.cmp_rational(e).reverse();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        for round in 0.. {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            if round % 8 == 7 {
                // overlapping intervals: equal iff a common root lies in the overlap
                let g = a.defining.gcd(&b.defining);
                if g.degree().unwrap_or(0) > 0 {
                    let lo = if a.lo > b.lo { &a.lo } else { &b.lo };
                    let hi = if a.hi < b.hi { &a.hi } else { &b.hi };
                    let chain = SturmChain::new(&g);
                    if g.eval(lo).is_zero() || chain.count(lo, hi) > 0 {
                        return Ordering::Equal;
                    }
                }
            }
            let wa = a.width() / rat(2, 1);
            let wb = b.width() / rat(2, 1);
            a = a.refined(&wa);
            b = b.refined(&wb);
            if let Some(e) = a.exact.clone() {
                return b.cmp_rational(&e).reverse();
            }
            if let Some(e) = b.exact.clone() {
                return a.cmp_rational(&e);
            }
        }
        unreachable!()
    }
}

impl UniPoly {
    /// Coprime integer coefficients, positive leading coefficient.
    pub fn primitive_form(&self) -> UniPoly {
        UniPoly::new(self.primitive_integer().into_iter().map(rat_int).collect())
    }
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AlgebraicNumber", 5)?;
        st.serialize_field("defining", &self.defining)?;
        st.serialize_field("interval", &[to_exact_string(&self.lo), to_exact_string(&self.hi)])?;
        st.serialize_field("decimal", &self.decimal())?;
        st.serialize_field("exact", &self.exact.as_ref().map(to_exact_string))?;
        st.serialize_field("error_bound", &to_exact_string(&self.width()))?;
        st.end()
    }
}

/// The largest real root of `p` that is `>= lower`, isolated to width at most
/// `precision`. Rational roots are returned exactly. `None` when no root
/// lies in `[lower, inf)`.
pub fn isolate_largest_root(p: &UniPoly, lower: &Rational, precision: &Rational) -> Result<Option<AlgebraicNumber>> {
    if p.is_zero() {
        return domain("isolate_largest_root: zero polynomial");
    }
    if !precision.is_positive() {
        return domain("isolate_largest_root: precision must be positive");
    }
    let chain = SturmChain::new(p);
    let q = chain.squarefree().primitive_form();
    if q.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    let mut hi = cauchy_bound(&q);
    if &hi <= lower {
        hi = lower + Rational::one();
    }
    let mut lo = lower.clone();
    if chain.count(&lo, &hi) == 0 {
        return Ok(q.eval(lower).is_zero().then(|| AlgebraicNumber::from_rational(lower.clone())));
    }
    while chain.count(&lo, &hi) > 1 {
        let mid = (&lo + &hi) / rat(2, 1);
        if chain.count(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(finish_isolated(q, lo, hi, precision)))
}


/// The smallest real root of `p` strictly above `lower`, isolated to width at
/// most `precision`; the interval never reaches down to `lower`.
pub fn isolate_smallest_root_above(
    p: &UniPoly,
    lower: &Rational,
    precision: &Rational,
) -> Result<Option<AlgebraicNumber>> {
    if p.is_zero() {
        return domain("isolate_smallest_root_above: zero polynomial");
    }
    if !precision.is_positive() {
        return domain("isolate_smallest_root_above: precision must be positive");
    }
    let chain = SturmChain::new(p);
    let q = chain.squarefree().primitive_form();
    if q.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    let mut hi = cauchy_bound(&q);
    if &hi <= lower {
        return Ok(None);
    }
    let mut lo = lower.clone();
    if chain.count(&lo, &hi) == 0 {
        return Ok(None);
    }
    while chain.count(&lo, &hi) > 1 {
        let mid = (&lo + &hi) / rat(2, 1);
        if chain.count(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(finish_isolated(q, lo, hi, precision)))
}

/// Bisects a root known to be the only one in `(lo, hi]` and detects a
/// rational value exactly.
fn finish_isolated(q: UniPoly, lo: Rational, hi: Rational, precision: &Rational) -> AlgebraicNumber {
    if q.eval(&hi).is_zero() {
        return AlgebraicNumber::from_rational(hi);
    }
    let mut a = AlgebraicNumber {
        defining: q.clone(),
        lo,
        hi,
        exact: None,
    };
    // Any rational root k/l has l dividing the leading coefficient, so an
    // interval narrower than 1/lc holds at most one candidate.
    let lc = q.leading();
    let target = {
        let sep = Rational::one() / (&lc * rat(2, 1));
        if &sep < precision {
            sep
        } else {
            precision.clone()
        }
    };
    a.bisect_until(&target);
    if a.exact.is_none() {
        let k = ceil(&(&a.lo * &lc));
        let cand = rat_int(k) / &lc;
        if cand > a.lo && cand <= a.hi && q.eval(&cand).is_zero() {
            return AlgebraicNumber::from_rational(cand);
        }
    }
    a
}
