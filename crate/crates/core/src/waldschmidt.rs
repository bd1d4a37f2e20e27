//! Expected Waldschmidt constants `e_{n,r,s}`, known values of `γ`, and the
//! chain `γ <= e <= g`.
//!
//! `e_{n,r,s} = inf{t/m : t >= m >= 1, P_{n,r,s,m}(t) > 0}`. A candidate is
//! certified from the expansion `n!·P(mx) = Σ_i c_i(x) m^i` with `c_0 = n!`.
//! Since `P` is an integer, `P > 0` iff `R(m,x) = Σ_{i≥1} c_i(x) m^{i−1} >= 0`,
//! so it suffices to show `R < 0` on the band below the candidate:
//! analytically for all `m >= m_threshold`, by direct evaluation below it.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exact::rational::{ceil, floor, rat_int, serialize_integer, serialize_rational, to_exact_string};
use crate::exact::roots::{isolate_largest_root, isolate_smallest_root_above, SturmChain};
use crate::exact::{expand_scaled, factorial, AlgebraicNumber, BiPoly, Integer, Rational, UniPoly};
use crate::flats::{hilbert_bipoly_uniform, FlatConfig};
use crate::lambda::g_value;

/// Search depth used when none is given.
pub const DEFAULT_M_MAX: u32 = 60;

/// A pair `(t, m)` with `P_{n,r,s,m}(t) > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioWitness {
    pub t: u32,
    pub m: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub ratio: Rational,
    #[serde(serialize_with = "serialize_integer")]
    pub value: Integer,
}

fn p_value(p: &BiPoly, t: u32, m: u32) -> Integer {
    p.eval(&rat_int(t), &rat_int(m)).to_integer()
}

/// Smallest `t` in `[m, cap]` with `P_{n,r,s,m}(t) > 0`.
fn first_positive_t(p: &BiPoly, m: u32, cap: u32) -> Option<RatioWitness> {
    let pm = p.at_m(&rat_int(m));
    (m..=cap).find_map(|t| {
        let v = pm.eval_int(t as i64).to_integer();
        v.is_positive().then(|| RatioWitness {
            t,
            m,
            ratio: Rational::new(BigInt::from(t), BigInt::from(m)),
            value: v,
        })
    })
}

/// Smallest ratio `t/m` with `P_{n,r,s,m}(t) > 0` over `1 <= m <= m_max`;
/// ties go to the smallest `m`.
pub fn e_empirical(n: u32, r: u32, s: u64, m_max: u32) -> Result<RatioWitness> {
    FlatConfig::new(n, r, s)?;
    if m_max < 1 {
        return domain("m_max must be at least 1");
    }
    let p = hilbert_bipoly_uniform(n, r, s)?;
    let first = first_positive_t(&p, 1, u32::MAX).ok_or_else(|| Error::Invariant("no positive value at m = 1".into()))?;
    let bound = first.ratio.clone();
    let found: Vec<Option<RatioWitness>> = (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let cap = ceil(&(&bound * rat_int(m)));
            first_positive_t(&p, m, u32::try_from(cap).unwrap_or(u32::MAX))
        })
        .collect();
    let best = found
        .into_iter()
        .flatten()
        .fold(None::<RatioWitness>, |best, w| match best {
            Some(b) if b.ratio <= w.ratio => Some(b),
            _ => Some(w),
        });
    Ok(best.unwrap_or(first))
}

/// How a coefficient `c_i` was bounded on `[x_lo, candidate]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Nondecreasing; since `t/m <= candidate − 1/(qm)` for `candidate = p/q`,
    /// bounded by `c_i(candidate − 1/(qm))`.
    Increasing,
    /// Nonincreasing; bounded by its value at `x_lo`.
    Decreasing,
    /// Convex; bounded by the larger endpoint value.
    Convex,
    /// Nonpositive throughout; bounded by zero.
    Nonpositive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientCheck {
    pub index: usize,
    pub interval: [String; 2],
    pub verdict: Verdict,
    pub bound: String,
}

/// Certificate that no ratio below `ratio` has a positive Hilbert polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ECertificate {
    #[serde(serialize_with = "serialize_rational")]
    pub ratio: Rational,
    pub witness: RatioWitness,
    pub trivial: bool,
    /// Every `c_i`, `i >= 1`, is negative on `[1, x_lo)`.
    #[serde(serialize_with = "serialize_rational")]
    pub x_lo: Rational,
    pub coefficient_monotonicity: Vec<CoefficientCheck>,
    /// Upper bound for `m·R(m, x)` over the band `[x_lo, candidate)`,
    /// negative for every integer `m >= m_threshold`.
    pub majorant: UniPoly,
    pub m_threshold: u32,
    pub finite_scan_range: String,
    pub pairs_checked: u64,
}

fn fail<T>(step: &str, detail: impl Into<String>) -> Result<T> {
    Err(Error::Certification {
        step: step.into(),
        detail: detail.into(),
    })
}

/// Looks for `k <= 1000` with `P_{n,r,s,kq}(kp) > 0` where `candidate = p/q`.
fn realize(p: &BiPoly, candidate: &Rational) -> Option<RatioWitness> {
    let (num, den) = (candidate.numer(), candidate.denom());
    (1..=1000u32).find_map(|k| {
        let t = u32::try_from(num * k).ok()?;
        let m = u32::try_from(den * k).ok()?;
        let v = p_value(p, t, m);
        v.is_positive().then(|| RatioWitness {
            t,
            m,
            ratio: candidate.clone(),
            value: v,
        })
    })
}

/// Sign of `q` on the open interval `(lo, hi)`, if constant there.
fn sign_on_open(q: &UniPoly, lo: &Rational, hi: &Rational) -> Option<Ordering> {
    if q.is_zero() {
        return Some(Ordering::Equal);
    }
    let inside = SturmChain::new(q).count(lo, hi) - usize::from(q.eval(hi).is_zero());
    (inside == 0).then(|| q.eval(&((lo + hi) / rat_int(2))).cmp(&Rational::zero()))
}

enum Bound {
    NearCandidate,
    Constant(Rational),
}

fn coefficient_verdict(c: &UniPoly, lo: &Rational, hi: &Rational) -> Option<(Verdict, Bound)> {
    let d = c.derivative();
    match sign_on_open(&d, lo, hi) {
        Some(Ordering::Greater | Ordering::Equal) => return Some((Verdict::Increasing, Bound::NearCandidate)),
        Some(Ordering::Less) => return Some((Verdict::Decreasing, Bound::Constant(c.eval(lo)))),
        None => {}
    }
    if matches!(sign_on_open(&d.derivative(), lo, hi), Some(Ordering::Greater | Ordering::Equal)) {
        return Some((Verdict::Convex, Bound::Constant(c.eval(lo).max(c.eval(hi)))));
    }
    if matches!(sign_on_open(c, lo, hi), Some(Ordering::Less | Ordering::Equal)) {
        return Some((Verdict::Nonpositive, Bound::Constant(Rational::zero())));
    }
    None
}

/// `c(candidate − 1/(qm))·m^i` as a polynomial in `m`, where `c` has degree
/// at most `i`.
fn near_candidate_term(c: &UniPoly, i: usize, candidate: &Rational) -> UniPoly {
    let q = rat_int(candidate.denom().clone());
    let shifted = UniPoly::new(vec![-(Rational::one() / q), candidate.clone()]);
    let mut acc = UniPoly::zero();
    let mut power = UniPoly::one();
    for (j, a) in c.coeffs().iter().enumerate() {
        acc = &acc + &(&power * &UniPoly::monomial(a.clone(), i - j));
        power = &power * &shifted;
    }
    acc
}

/// Bounds every coefficient on `[x_lo, candidate]` and returns the resulting
/// majorant of `m·R(m, x)` with the least `M` such that it is negative at
/// every integer `m >= M`. Increasing coefficients are bounded at the
/// candidate itself, or with `sharp` at `candidate − 1/(qm)`.
#[allow(clippy::type_complexity)]
fn band_majorant(
    coeffs: &[UniPoly],
    x_lo: &Rational,
    candidate: &Rational,
    sharp: bool,
) -> Result<(Vec<CoefficientCheck>, UniPoly, Option<u32>)> {
    let mut checks = Vec::new();
    let mut majorant = UniPoly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        let i = k + 1;
        let Some((verdict, bound)) = coefficient_verdict(c, x_lo, candidate) else {
            return fail(
                "coefficient monotonicity",
                format!("c_{i}(x) = {} has no usable bound on [{x_lo}, {candidate}]", c.display_in("x")),
            );
        };
        let (term, text) = match bound {
            Bound::NearCandidate if sharp => (
                near_candidate_term(c, i, candidate),
                format!("c_{i}({candidate} - 1/({}m))", candidate.denom()),
            ),
            Bound::NearCandidate => {
                let b = c.eval(candidate);
                (UniPoly::monomial(b.clone(), i), to_exact_string(&b))
            }
            Bound::Constant(b) => (UniPoly::monomial(b.clone(), i), to_exact_string(&b)),
        };
        majorant = &majorant + &term;
        checks.push(CoefficientCheck {
            index: i,
            interval: [to_exact_string(x_lo), to_exact_string(candidate)],
            verdict,
            bound: text,
        });
    }
    if majorant.is_zero() || !majorant.leading().is_negative() {
        return Ok((checks, majorant, None));
    }
    let precision = Rational::new(BigInt::one(), BigInt::from(1_000_000));
    let mut m = match isolate_largest_root(&majorant, &Rational::one(), &precision)? {
        Some(root) => {
            let top = root.exact().cloned().unwrap_or_else(|| root.hi().clone());
            u32::try_from(floor(&top) + 1).map_err(|_| Error::Invariant("threshold overflow".into()))?
        }
        None => 1,
    };
    while m > 1 && majorant.eval_int(m as i64 - 1).is_negative() {
        m -= 1;
    }
    Ok((checks, majorant, Some(m)))
}

/// Certifies `e_{n,r,s} = candidate`, or reports the step that failed.
pub fn e_certify(n: u32, r: u32, s: u64, candidate: &Rational) -> Result<ECertificate> {
    FlatConfig::new(n, r, s)?;
    let p = hilbert_bipoly_uniform(n, r, s)?;
    let one = Rational::one();
    if candidate < &one {
        return Err(Error::Precondition(format!("candidate {candidate} is below 1")));
    }
    let witness = realize(&p, candidate)
        .ok_or_else(|| Error::Precondition(format!("candidate {candidate} is not realized by any (t, m)")))?;
    if candidate == &one {
        return Ok(ECertificate {
            ratio: one.clone(),
            witness,
            trivial: true,
            x_lo: one,
            coefficient_monotonicity: Vec::new(),
            majorant: UniPoly::zero(),
            m_threshold: 1,
            finite_scan_range: "none: t >= m forces t/m >= 1".into(),
            pairs_checked: 0,
        });
    }

    let nf = rat_int(factorial(n));
    let q = expand_scaled(&p.scale(&nf));
    if q.coefficient(0) != UniPoly::constant(nf.clone()) {
        return Err(Error::Invariant("constant term of n!·P(mx) is not n!".into()));
    }
    let top = q.degree_m().unwrap_or(0);
    let coeffs: Vec<UniPoly> = (1..=top).map(|i| q.coefficient(i)).collect();

    // region where every coefficient is already negative
    let precision = Rational::new(BigInt::one(), BigInt::from(1_000_000));
    let mut x_lo = candidate.clone();
    if coeffs.iter().any(|c| !c.eval(&one).is_negative()) {
        x_lo = one.clone();
    } else {
        for c in &coeffs {
            if let Some(root) = isolate_smallest_root_above(c, &one, &precision)? {
                let lower = root.exact().cloned().unwrap_or_else(|| root.lo().clone());
                if lower < x_lo {
                    x_lo = lower;
                }
            }
        }
    }

    let (checks, majorant, m_threshold) = if x_lo >= *candidate {
        (Vec::new(), UniPoly::zero(), 1)
    } else {
        match band_majorant(&coeffs, &x_lo, candidate, false)? {
            (checks, majorant, Some(m)) => (checks, majorant, m),
            _ => match band_majorant(&coeffs, &x_lo, candidate, true)? {
                (checks, majorant, Some(m)) => (checks, majorant, m),
                (_, majorant, None) => {
                    return fail(
                        "threshold",
                        format!("majorant {} is not eventually negative", majorant.display_in("m")),
                    )
                }
            },
        }
    };

    let rows: Vec<(u64, Option<RatioWitness>)> = (1..m_threshold)
        .into_par_iter()
        .map(|m| {
            let pm = p.at_m(&rat_int(m));
            let mr = rat_int(m);
            let from = ceil(&(&x_lo * &mr)).max(BigInt::from(m));
            let to = ceil(&(candidate * &mr)) - 1;
            let mut checked = 0u64;
            let mut t = from;
            while t <= to {
                checked += 1;
                let v = pm.eval(&rat_int(t.clone())).to_integer();
                if v.is_positive() {
                    let tt = u32::try_from(&t).unwrap_or(u32::MAX);
                    return (
                        checked,
                        Some(RatioWitness {
                            t: tt,
                            m,
                            ratio: Rational::new(t.clone(), BigInt::from(m)),
                            value: v,
                        }),
                    );
                }
                t += 1;
            }
            (checked, None)
        })
        .collect();
    let mut pairs_checked = 0;
    for (checked, better) in rows {
        pairs_checked += checked;
        if let Some(w) = better {
            return fail(
                "finite scan",
                format!("P({}) > 0 at m = {} gives ratio {} below {}", w.t, w.m, w.ratio, candidate),
            );
        }
    }

    Ok(ECertificate {
        ratio: candidate.clone(),
        witness,
        trivial: false,
        x_lo: x_lo.clone(),
        coefficient_monotonicity: checks,
        majorant,
        m_threshold,
        finite_scan_range: format!(
            "1 <= m < {m_threshold}, max(m, ceil({x_lo}·m)) <= t < {candidate}·m",
        ),
        pairs_checked,
    })
}

/// `γ` of `s` general points of `P^n`, `s <= n+3`.
pub fn gamma_points_closed(n: u32, s: u64) -> Result<Rational> {
    if n < 1 || s < 1 || s > n as u64 + 3 {
        return domain(format!("closed form needs n >= 1 and 1 <= s <= n+3 (n={n}, s={s})"));
    }
    let nn = rat_int(n);
    let one = Rational::one();
    let two = rat_int(2);
    let n64 = n as u64;
    Ok(if s <= n64 {
        one
    } else if s == n64 + 1 {
        &one + &one / nn
    } else if s == n64 + 2 || n.is_multiple_of(2) {
        one + two / nn
    } else {
        let n = n as i64;
        one + two.clone() / &nn + two / rat_int(n * n * n + 2 * n * n - n)
    })
}

/// Where a value of `γ` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaSource {
    ClosedForm,
    Table,
    BoundOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnownGamma {
    #[serde(serialize_with = "serialize_rational")]
    pub value: Rational,
    pub source: GammaSource,
}

impl KnownGamma {
    pub fn is_exact(&self) -> bool {
        self.source != GammaSource::BoundOnly
    }
}

/// Known `γ_{n,r,s}` (or an upper bound, tagged as such).
pub fn gamma_known_lookup(n: u32, r: u32, s: u64) -> Option<KnownGamma> {
    let exact = |value, source| Some(KnownGamma { value, source });
    if s == 1 && r < n {
        return exact(Rational::one(), GammaSource::ClosedForm);
    }
    if r == 0 {
        return gamma_points_closed(n, s).ok().map(|value| KnownGamma {
            value,
            source: GammaSource::ClosedForm,
        });
    }
    if r == 1 && n == 3 {
        let v = match s {
            2 | 3 => Some(rat_int(2)),
            4 => Some(Rational::new(8.into(), 3.into())),
            5 => Some(Rational::new(10.into(), 3.into())),
            _ => None,
        };
        if let Some(v) = v {
            return exact(v, GammaSource::Table);
        }
        if s == 6 {
            return Some(KnownGamma {
                value: Rational::new(42.into(), 11.into()),
                source: GammaSource::BoundOnly,
            });
        }
    }
    if r == 1 && n >= 3 && (n - 1).checked_pow(n - 2).map(u64::from) == Some(s) {
        return exact(rat_int(n - 1), GammaSource::Table);
    }
    None
}

/// One link of the chain `γ <= e <= g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub relation: String,
    pub holds: bool,
    /// Whether a failure here would contradict the theorem, as opposed to
    /// merely reflecting an unproven input.
    pub binding: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: u32,
    pub r: u32,
    pub s: u64,
    pub gamma: Option<KnownGamma>,
    #[serde(serialize_with = "serialize_rational")]
    pub e: Rational,
    pub e_certified: bool,
    pub e_witness: RatioWitness,
    pub certification_error: Option<String>,
    pub g: AlgebraicNumber,
    pub chain: Vec<ChainLink>,
}

impl BoundsReport {
    pub fn chain_holds(&self) -> bool {
        self.chain.iter().all(|l| l.holds)
    }
}

/// Assembles `γ` (when known), `e` and `g` and checks their ordering.
pub fn bounds_report(n: u32, r: u32, s: u64, m_max: u32, precision: &Rational) -> Result<BoundsReport> {
    FlatConfig::new(n, r, s)?;
    let witness = e_empirical(n, r, s, m_max)?;
    let e = witness.ratio.clone();
    let (e_certified, certification_error) = match e_certify(n, r, s, &e) {
        Ok(_) => (true, None),
        Err(err @ Error::Certification { .. }) => (false, Some(err.to_string())),
        Err(err) => return Err(err),
    };
    let g = g_value(n, r, s, precision)?;
    let gamma = gamma_known_lookup(n, r, s);

    let mut chain = Vec::new();
    if let Some(k) = &gamma {
        let holds = k.value <= e;
        chain.push(ChainLink {
            relation: format!("gamma {} <= e {}", k.value, e),
            holds,
            binding: k.is_exact() && e_certified,
        });
        if k.is_exact() {
            chain.push(ChainLink {
                relation: format!("gamma {} <= g", k.value),
                holds: g.cmp_rational(&k.value) != Ordering::Less,
                binding: true,
            });
        }
    }
    chain.push(ChainLink {
        relation: format!("e {} <= g", e),
        holds: g.cmp_rational(&e) != Ordering::Less,
        binding: e_certified,
    });
    if let Some(bad) = chain.iter().find(|l| l.binding && !l.holds) {
        return Err(Error::Invariant(format!(
            "bound chain violated for ({n},{r},{s}): {}",
            bad.relation
        )));
    }
    Ok(BoundsReport {
        n,
        r,
        s,
        gamma,
        e,
        e_certified,
        e_witness: witness,
        certification_error,
        g,
        chain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::exact::roots::default_precision;

    #[test]
    fn empirical_examples() {
        let w = e_empirical(3, 0, 4, 10).unwrap();
        assert_eq!((w.t, w.m, w.ratio.clone()), (3, 2, rat(3, 2)));
        let w = e_empirical(3, 1, 6, 50).unwrap();
        assert_eq!((w.t, w.m, w.ratio.clone()), (27, 7, rat(27, 7)));
        assert_eq!(w.value, BigInt::from(28));
        let w = e_empirical(5, 2, 1, 7).unwrap();
        assert_eq!((w.t, w.m), (1, 1));
    }

    #[test]
    fn certify_points() {
        let c = e_certify(3, 0, 4, &rat(3, 2)).unwrap();
        assert!(!c.trivial);
        assert!(c.m_threshold <= 8, "threshold {}", c.m_threshold);
        assert!(c.coefficient_monotonicity.iter().all(|k| k.verdict == Verdict::Increasing));
        // e = g here, so the bound must use t <= (pm - 1)/q
        assert!(e_certify(2, 0, 4, &rat(2, 1)).is_ok());
    }

    #[test]
    fn certify_lines() {
        let c = e_certify(3, 1, 6, &rat(27, 7)).unwrap();
        assert_eq!(c.x_lo, rat(30, 11));
        assert!(c.m_threshold <= 60, "threshold {}", c.m_threshold);
        assert!(c.pairs_checked > 0);
    }

    #[test]
    fn certify_rejects_wrong_candidates() {
        assert!(matches!(e_certify(3, 1, 6, &rat(4, 1)), Err(Error::Certification { .. })));
        assert!(matches!(e_certify(3, 1, 6, &rat(3, 1)), Err(Error::Precondition(_))));
        assert!(e_certify(4, 1, 1, &rat(1, 1)).unwrap().trivial);
    }

    #[test]
    fn points_closed_form() {
        assert_eq!(gamma_points_closed(3, 4).unwrap(), rat(4, 3));
        assert_eq!(gamma_points_closed(4, 7).unwrap(), rat(3, 2));
        assert_eq!(gamma_points_closed(3, 6).unwrap(), rat(12, 7));
        assert_eq!(gamma_points_closed(5, 3).unwrap(), rat(1, 1));
        assert!(gamma_points_closed(3, 7).is_err());
    }

    #[test]
    fn lookup() {
        assert_eq!(gamma_known_lookup(3, 1, 5).unwrap().value, rat(10, 3));
        let b = gamma_known_lookup(3, 1, 6).unwrap();
        assert_eq!((b.value, b.source), (rat(42, 11), GammaSource::BoundOnly));
        assert_eq!(gamma_known_lookup(4, 1, 9).unwrap().value, rat(3, 1));
        assert!(gamma_known_lookup(3, 1, 7).is_none());
    }

    #[test]
    fn reports() {
        let p = default_precision();
        let b = bounds_report(3, 0, 4, DEFAULT_M_MAX, &p).unwrap();
        assert_eq!(b.gamma.as_ref().unwrap().value, rat(4, 3));
        assert_eq!(b.e, rat(3, 2));
        assert!(b.e_certified && b.chain_holds());
        assert!((b.g.to_f64() - 1.587).abs() < 1e-3);
        let b = bounds_report(3, 1, 6, DEFAULT_M_MAX, &p).unwrap();
        assert_eq!(b.e, rat(27, 7));
        assert!(b.e_certified && b.chain_holds());
        let b = bounds_report(6, 2, 1, DEFAULT_M_MAX, &p).unwrap();
        assert_eq!((b.e.clone(), b.g.exact().cloned()), (rat(1, 1), Some(rat(1, 1))));
    }
}
