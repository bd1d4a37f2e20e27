//! Exhaustive check of `P_{3,1,v}(d) <= 0` on the region
//! `d < d_bound`, `m_j <= d`, `ds/g < Σm_j <= sum_bound` for `7 <= s <= 12`
//! lines of multiplicities `v`, where `g = g_{3,1,s}` and
//!
//! `d_bound = −g(11g−5s)/(6g²−3sg−3s)`, `sum_bound = −s(11g−5s)/(6g²−3sg−3s)`.
//!
//! Multiplicity vectors are enumerated as partitions (sorted sequences).
//! The pairwise condition `m_i + m_j <= d` is counted separately; violations
//! are searched for without it.

use std::cmp::Ordering;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::exact::binom::binom_nn;
use crate::exact::rational::{ceil, floor, rat, rat_int, to_decimal};
use crate::exact::{AlgebraicNumber, Rational};
use crate::flats::conditions_count;
use crate::lambda::{g_value, lambda_poly};

const MAX_REFINEMENTS: u32 = 200;

/// A closed rational interval known to contain a real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat(2, 1)
    }

    pub fn decimal(&self) -> String {
        to_decimal(&self.midpoint(), 8)
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    fn contains_integer(&self) -> bool {
        ceil(&self.lo) <= floor(&self.hi)
    }

    fn add(&self, o: &Self) -> Self {
        Self { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn neg(&self) -> Self {
        Self { lo: -&self.hi, hi: -&self.lo }
    }

    fn mul(&self, o: &Self) -> Self {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().cloned().unwrap_or_default();
        let hi = p.iter().max().cloned().unwrap_or_default();
        Self { lo, hi }
    }

    fn div(&self, o: &Self) -> Option<Self> {
        if o.lo.is_positive() || o.hi.is_negative() {
            let inv = Self { lo: Rational::one() / &o.hi, hi: Rational::one() / &o.lo };
            Some(self.mul(&inv))
        } else {
            None
        }
    }
}

impl Serialize for Enclosure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Enclosure", 2)?;
        st.serialize_field("interval", &[self.lo.to_string(), self.hi.to_string()])?;
        st.serialize_field("decimal", &self.decimal())?;
        st.end()
    }
}

/// `g_{3,1,s}`, the two bounds, and the integer ranges they cut out.
#[derive(Clone, Debug, Serialize)]
pub struct NosymetryBounds {
    pub s: u64,
    pub g: AlgebraicNumber,
    pub d_bound: Enclosure,
    pub sum_bound: Enclosure,
    /// Largest `d` with `d < d_bound`; zero when no `d >= 1` survives.
    pub d_max: u64,
    /// `floor(sum_bound)`.
    pub sum_max: u64,
}

fn check_range(s: u64) -> Result<()> {
    if !(7..=12).contains(&s) {
        return domain(format!("the finite check covers 7 <= s <= 12 (s={s})"));
    }
    Ok(())
}

fn bounds_at(g: &Enclosure, s: u64) -> Option<(Enclosure, Enclosure)> {
    let sv = Enclosure::point(rat_int(s));
    let c = |k: i64| Enclosure::point(rat_int(k));
    let num = c(11).mul(g).add(&c(-5).mul(&sv));
    let g2 = g.mul(g);
    let den = c(6).mul(&g2).add(&c(-3).mul(&sv).mul(g)).add(&c(-3).mul(&sv));
    let d_bound = g.mul(&num).neg().div(&den)?;
    let sum_bound = sv.mul(&num).neg().div(&den)?;
    Some((d_bound, sum_bound))
}

pub fn nosymetry_bounds(s: u64) -> Result<NosymetryBounds> {
    check_range(s)?;
    let target = rat(1, 1_000_000);
    let mut precision = rat(1, 1_000_000_000_000);
    let mut g = g_value(3, 1, s, &precision)?;
    for _ in 0..MAX_REFINEMENTS {
        let enc = Enclosure { lo: g.lo().clone(), hi: g.hi().clone() };
        if let Some((d_bound, sum_bound)) = bounds_at(&enc, s) {
            let tight = d_bound.width() <= target && sum_bound.width() <= target;
            if tight && !d_bound.contains_integer() && !sum_bound.contains_integer() {
                let d_max = floor(&d_bound.lo).max(Zero::zero());
                let sum_max = floor(&sum_bound.lo).max(Zero::zero());
                return Ok(NosymetryBounds {
                    s,
                    g,
                    d_max: d_max.to_u64().unwrap_or(0),
                    sum_max: sum_max.to_u64().unwrap_or(0),
                    d_bound,
                    sum_bound,
                });
            }
        }
        precision /= rat_int(1u32 << 8);
        g = g.refined(&precision);
    }
    Err(Error::Invariant(format!("bounds for s={s} did not separate from the integers")))
}

/// Counts for one degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub d: u64,
    /// Sorted multiplicity vectors in the region, without the pairwise condition.
    pub cases: u64,
    /// Those that also satisfy `m_i + m_j <= d`.
    pub pairwise: u64,
    /// Largest `P_{3,1,v}(d)` seen, if any case exists.
    pub max_value: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub d: u64,
    /// Nonzero multiplicities in nondecreasing order.
    pub mults: Vec<u64>,
    pub value: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct NosymetryReport {
    #[serde(flatten)]
    pub bounds: NosymetryBounds,
    /// Nonzero nondecreasing sequences of length `s` with `Σm_j <= sum_max`.
    pub sequences: u64,
    /// Total `(d, v)` pairs checked.
    pub cases_checked: u64,
    pub rows: Vec<DegreeRow>,
    pub violations: Vec<Violation>,
}

impl NosymetryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn row(&self, d: u64) -> Option<&DegreeRow> {
        self.rows.iter().find(|r| r.d == d)
    }
}

/// Number of partitions of each `k <= total` into at most `parts` parts.
fn partitions_at_most(total: usize, parts: usize) -> Vec<u64> {
    // p(k, <= j parts) = p(k, parts of size <= j)
    let mut p = vec![0u64; total + 1];
    p[0] = 1;
    for size in 1..=parts {
        for k in size..=total {
            p[k] += p[k - size];
        }
    }
    p
}

struct Block {
    d: u64,
    cases: u64,
    pairwise: u64,
    max_value: Option<i64>,
    violations: Vec<Violation>,
}

fn scan_block(d: u64, sum: u64, s: u64, costs: &[i64], base: i64) -> Block {
    let mut block = Block { d, cases: 0, pairwise: 0, max_value: None, violations: Vec::new() };
    let mut parts = Vec::with_capacity(s as usize);
    walk(sum, d, s, &mut parts, &mut |parts| {
        let value = base - parts.iter().map(|&m| costs[m as usize]).sum::<i64>();
        block.cases += 1;
        if parts.len() < 2 || parts[0] + parts[1] <= d {
            block.pairwise += 1;
        }
        block.max_value = Some(block.max_value.map_or(value, |v| v.max(value)));
        if value > 0 {
            let mut mults = parts.to_vec();
            mults.reverse();
            block.violations.push(Violation { d, mults, value });
        }
    });
    block
}

/// Partitions of `rest` into at most `slots` parts, each at most `cap`,
/// generated in nonincreasing order.
fn walk(rest: u64, cap: u64, slots: u64, parts: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if rest == 0 {
        f(parts);
        return;
    }
    if slots == 0 || cap * slots < rest {
        return;
    }
    for m in (1..=cap.min(rest)).rev() {
        parts.push(m);
        walk(rest - m, m, slots - 1, parts, f);
        parts.pop();
    }
}

pub fn nosymetry_enumerate(s: u64) -> Result<NosymetryReport> {
    let bounds = nosymetry_bounds(s)?;
    let sequences = partitions_at_most(bounds.sum_max as usize, s as usize)[1..].iter().sum();
    let mut blocks = Vec::new();
    for d in 1..=bounds.d_max {
        for sum in 1..=bounds.sum_max {
            let threshold = rat_int(d * s) / rat_int(sum);
            if bounds.g.cmp_rational(&threshold) == Ordering::Greater {
                blocks.push((d, sum));
            }
        }
    }
    let mut tables = Vec::new();
    for d in 1..=bounds.d_max {
        let mut costs = vec![0i64];
        for m in 1..=d {
            let c = conditions_count(3, 1, m as u32, d as u32)?;
            costs.push(c.to_i64().ok_or_else(|| Error::Invariant("condition count overflow".into()))?);
        }
        let base = binom_nn(d as i64 + 3, 3).to_i64().unwrap_or(i64::MAX);
        tables.push((costs, base));
    }
    let scanned: Vec<Block> = blocks
        .into_par_iter()
        .map(|(d, sum)| {
            let (costs, base) = &tables[d as usize - 1];
            scan_block(d, sum, s, costs, *base)
        })
        .collect();
    let mut rows: Vec<DegreeRow> = (1..=bounds.d_max)
        .map(|d| DegreeRow { d, cases: 0, pairwise: 0, max_value: None })
        .collect();
    let mut violations = Vec::new();
    for b in scanned {
        let row = &mut rows[b.d as usize - 1];
        row.cases += b.cases;
        row.pairwise += b.pairwise;
        row.max_value = match (row.max_value, b.max_value) {
            (Some(a), Some(c)) => Some(a.max(c)),
            (a, c) => a.or(c),
        };
        violations.extend(b.violations);
    }
    Ok(NosymetryReport {
        cases_checked: rows.iter().map(|r| r.cases).sum(),
        bounds,
        sequences,
        rows,
        violations,
    })
}

/// `Λ_{3,1,s}(s/2) > 0` and `Λ_{3,1,s}(5s/11) > 0`, i.e. `g < s/2` and
/// `g < 5s/11`, for `s` up to `s_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TailCheck {
    pub s: u64,
    pub half: bool,
    pub five_elevenths: Option<bool>,
}

pub fn nosymetry_tail_checks(s_max: u64) -> Result<Vec<TailCheck>> {
    (11..=s_max)
        .map(|s| {
            let l = lambda_poly(3, 1, s)?;
            let half = l.eval(&rat(s as i64, 2)).is_positive();
            let five_elevenths = (s >= 13).then(|| l.eval(&rat(5 * s as i64, 11)).is_positive());
            Ok(TailCheck { s, half, five_elevenths })
        })
        .collect()
}
