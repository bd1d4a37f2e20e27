//! Linear systems `𝓛_n(d; m_1, …, m_s)` of degree-`d` forms vanishing to
//! order `m_i` at general points, and their Cremona reductions.
//!
//! The standard Cremona map centred at `n+1` of the points sends
//! `𝓛_n(d; m)` to `𝓛_n(d+c; m')` with `c = (n−1)d − Σ_{j∈idx} m_j` and
//! `m'_j = m_j + c` for the chosen points. Degrees and multiplicities may go
//! negative along the way; a negative multiplicity imposes nothing.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exact::binom::binom_nn;
use crate::exact::{Integer, Rational};
use crate::waldschmidt::gamma_points_closed;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinearSystem {
    pub n: u32,
    pub d: i64,
    pub mults: Vec<i64>,
}

impl LinearSystem {
    pub fn new(n: u32, d: i64, mults: Vec<i64>) -> Result<Self> {
        if n < 2 {
            return domain("linear systems need n >= 2");
        }
        Ok(Self { n, d, mults })
    }

    /// `n` copies of the same multiplicity.
    pub fn uniform(n: u32, d: i64, m: i64, count: usize) -> Result<Self> {
        Self::new(n, d, vec![m; count])
    }

    /// Parses `"d;m1,m2,…"`.
    pub fn parse(n: u32, text: &str) -> Result<Self> {
        let (d, ms) = text
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected \"d;m1,m2,...\", got {text:?}")))?;
        let int = |x: &str| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {x:?}")))
        };
        let mults = if ms.trim().is_empty() {
            Vec::new()
        } else {
            ms.split(',').map(int).collect::<Result<Vec<_>>>()?
        };
        Self::new(n, int(d)?, mults)
    }

    fn clamped(&self) -> impl Iterator<Item = i64> + '_ {
        self.mults.iter().map(|&m| m.max(0))
    }

    fn max_clamped(&self) -> i64 {
        self.clamped().max().unwrap_or(0)
    }

    /// `C(d+n, n) − Σ_i C(max(m_i,0)+n−1, n)`.
    pub fn virtual_dimension(&self) -> Integer {
        let n = self.n as i64;
        let mut v = if self.d < 0 { BigInt::zero() } else { binom_nn(self.d + n, n) };
        for m in self.clamped() {
            v -= binom_nn(m + n - 1, n);
        }
        v
    }

    /// Multiplicities sorted in decreasing order.
    pub fn sorted_mults(&self) -> Vec<i64> {
        let mut v = self.mults.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms: Vec<String> = self.mults.iter().map(i64::to_string).collect();
        write!(f, "L_{}({}; {})", self.n, self.d, ms.join(","))
    }
}

/// Applies the Cremona transformation centred at the points `idx`.
pub fn cremona_transform(sys: &LinearSystem, idx: &[usize]) -> Result<(LinearSystem, i64)> {
    let k = sys.n as usize + 1;
    if idx.len() != k {
        return domain(format!("need exactly {k} indices, got {}", idx.len()));
    }
    let mut mults = sys.mults.clone();
    if mults.len() < k {
        mults.resize(k, 0);
    }
    let mut seen = HashSet::new();
    for &i in idx {
        if i >= mults.len() {
            return domain(format!("index {i} out of range for {} points", mults.len()));
        }
        if !seen.insert(i) {
            return domain(format!("index {i} repeated"));
        }
    }
    let c = (sys.n as i64 - 1) * sys.d - idx.iter().map(|&i| mults[i]).sum::<i64>();
    for &i in idx {
        mults[i] += c;
    }
    Ok((
        LinearSystem {
            n: sys.n,
            d: sys.d + c,
            mults,
        },
        c,
    ))
}

/// True when the system is certainly empty: negative degree, or a point whose
/// multiplicity exceeds the degree.
pub fn empty_certificate(sys: &LinearSystem) -> bool {
    sys.d < 0 || sys.mults.iter().any(|&m| m > sys.d)
}

/// True when the virtual dimension is positive. Requires `d >= max m_i`.
pub fn nonempty_certificate(sys: &LinearSystem) -> Result<bool> {
    if sys.d < sys.max_clamped() || sys.d < 0 {
        return domain(format!("dimension count needs d >= max m_i: {sys}"));
    }
    Ok(sys.virtual_dimension().is_positive())
}

/// A product of hyperplanes: each hyperplane passes through the listed
/// points (at most `n` of them) and is raised to `weight`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub factors: Vec<(Vec<usize>, u32)>,
}

impl Witness {
    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|(_, w)| *w as u64).sum()
    }

    /// Order of vanishing of the product at point `i`.
    pub fn order_at(&self, i: usize) -> u64 {
        self.factors
            .iter()
            .filter(|(s, _)| s.contains(&i))
            .map(|(_, w)| *w as u64)
            .sum()
    }

    /// Checks degree, subset sizes and vanishing orders against `sys`.
    pub fn proves(&self, sys: &LinearSystem) -> bool {
        sys.d >= 0
            && self.degree() == sys.d as u64
            && self.factors.iter().all(|(s, _)| s.len() <= sys.n as usize)
            && sys
                .mults
                .iter()
                .enumerate()
                .all(|(i, &m)| self.order_at(i) as i64 >= m)
    }
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

struct WitnessSearch {
    n: usize,
    failed: HashSet<(Vec<i64>, i64)>,
}

impl WitnessSearch {
    fn feasible(&self, deficits: &[i64], left: i64) -> bool {
        let max = deficits.iter().copied().max().unwrap_or(0);
        let sum: i64 = deficits.iter().sum();
        max <= left && sum <= self.n as i64 * left
    }

    fn search(&mut self, deficits: &mut Vec<i64>, left: i64, chosen: &mut Vec<Vec<usize>>) -> bool {
        if deficits.iter().all(|&x| x <= 0) {
            return true;
        }
        if left == 0 || !self.feasible(deficits, left) {
            return false;
        }
        let mut key = deficits.clone();
        key.sort_unstable();
        if self.failed.contains(&(key.clone(), left)) {
            return false;
        }
        let open: Vec<usize> = (0..deficits.len()).filter(|&i| deficits[i] > 0).collect();
        let k = open.len().min(self.n);
        let mut greedy = open.clone();
        greedy.sort_by(|&a, &b| deficits[b].cmp(&deficits[a]).then(a.cmp(&b)));
        greedy.truncate(k);
        greedy.sort_unstable();
        let mut candidates = vec![greedy.clone()];
        candidates.extend(subsets(&open, k).into_iter().filter(|s| s != &greedy));
        for s in candidates {
            for &i in &s {
                deficits[i] -= 1;
            }
            chosen.push(s.clone());
            if self.search(deficits, left - 1, chosen) {
                return true;
            }
            chosen.pop();
            for &i in &s {
                deficits[i] += 1;
            }
        }
        self.failed.insert((key, left));
        false
    }
}

/// Searches for a product of `d` hyperplanes, each through at most `n` of the
/// points, vanishing to order `m_i` at every point. Negative multiplicities
/// count as zero. `None` does not prove emptiness.
pub fn hyperplane_product_witness(sys: &LinearSystem) -> Option<Witness> {
    if sys.d < 0 {
        return None;
    }
    let mut deficits: Vec<i64> = sys.clamped().collect();
    let mut search = WitnessSearch {
        n: sys.n as usize,
        failed: HashSet::new(),
    };
    let mut chosen = Vec::new();
    if !search.search(&mut deficits, sys.d, &mut chosen) {
        return None;
    }
    let mut merged: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
    for s in chosen {
        *merged.entry(s).or_default() += 1;
    }
    let used: u64 = merged.values().map(|&w| w as u64).sum();
    let pad = sys.d as u64 - used;
    if pad > 0 {
        *merged.entry(Vec::new()).or_default() += pad as u32;
    }
    Some(Witness {
        factors: merged.into_iter().collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Transform at the `n+1` largest multiplicities, ties to the lowest index.
    #[default]
    Greedy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Empty,
    Nonempty,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub indices: Vec<usize>,
    pub c: i64,
    pub result: LinearSystem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub start: LinearSystem,
    pub steps: Vec<ReductionStep>,
    pub verdict: Verdict,
    pub certificate: String,
}

impl ReductionTrace {
    pub fn last(&self) -> &LinearSystem {
        self.steps.last().map(|s| &s.result).unwrap_or(&self.start)
    }
}

fn greedy_indices(sys: &LinearSystem) -> Vec<usize> {
    let k = sys.n as usize + 1;
    let mut mults = sys.mults.clone();
    if mults.len() < k {
        mults.resize(k, 0);
    }
    let mut order: Vec<usize> = (0..mults.len()).collect();
    order.sort_by(|&a, &b| mults[b].cmp(&mults[a]).then(a.cmp(&b)));
    order.truncate(k);
    order.sort_unstable();
    order
}

/// Reduces by Cremona transformations until a certificate decides the
/// system, the next `c` would be nonnegative, or `max_steps` is reached.
pub fn reduce(sys: &LinearSystem, strategy: Strategy, max_steps: usize) -> Result<ReductionTrace> {
    if max_steps < 1 {
        return domain("max_steps must be at least 1");
    }
    let Strategy::Greedy = strategy;
    let mut cur = sys.clone();
    let mut steps = Vec::new();
    let (verdict, certificate) = loop {
        if empty_certificate(&cur) {
            let why = if cur.d < 0 {
                format!("degree {} < 0", cur.d)
            } else {
                format!("a multiplicity exceeds the degree {}", cur.d)
            };
            break (Verdict::Empty, why);
        }
        if cur.d >= cur.max_clamped() && nonempty_certificate(&cur)? {
            break (Verdict::Nonempty, format!("virtual dimension {} > 0", cur.virtual_dimension()));
        }
        if steps.len() == max_steps {
            break (Verdict::Undecided, format!("step limit {max_steps} reached"));
        }
        let idx = greedy_indices(&cur);
        let (next, c) = cremona_transform(&cur, &idx)?;
        if c >= 0 {
            break (Verdict::Undecided, format!("next transform has c = {c} >= 0"));
        }
        steps.push(ReductionStep {
            indices: idx,
            c,
            result: next.clone(),
        });
        cur = next;
    };
    Ok(ReductionTrace {
        start: sys.clone(),
        steps,
        verdict,
        certificate,
    })
}

/// One verified statement about a system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseCheck {
    pub h: u32,
    pub claim: String,
    pub system: String,
    pub passed: bool,
    pub detail: String,
}

/// `α(I^{(m)}) = alpha` for `s` general points, from a matched pair of checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaRatio {
    pub h: u32,
    pub m: i64,
    pub alpha: i64,
    #[serde(serialize_with = "crate::exact::rational::serialize_rational")]
    pub ratio: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaCaseReport {
    pub n: u32,
    pub s: u64,
    #[serde(serialize_with = "crate::exact::rational::serialize_rational")]
    pub gamma_closed: Rational,
    pub checks: Vec<CaseCheck>,
    pub ratios: Vec<AlphaRatio>,
    pub passed: bool,
}

fn check_empty(h: u32, claim: &str, sys: &LinearSystem) -> Result<CaseCheck> {
    let trace = reduce(sys, Strategy::Greedy, 64)?;
    let cs: Vec<String> = trace.steps.iter().map(|s| s.c.to_string()).collect();
    Ok(CaseCheck {
        h,
        claim: claim.into(),
        system: sys.to_string(),
        passed: trace.verdict == Verdict::Empty,
        detail: format!("{:?} after c = [{}]: {}", trace.verdict, cs.join(","), trace.certificate),
    })
}

fn check_witness(h: u32, claim: &str, sys: &LinearSystem) -> CaseCheck {
    let w = hyperplane_product_witness(sys);
    let passed = w.as_ref().is_some_and(|w| w.proves(sys)) && !empty_certificate(sys);
    CaseCheck {
        h,
        claim: claim.into(),
        system: sys.to_string(),
        passed,
        detail: match w {
            Some(w) => format!("{} hyperplane factors", w.degree()),
            None => "no hyperplane product found".into(),
        },
    }
}

/// Replays the initial-degree bookkeeping behind `γ` for `s` general points
/// with `n+1 <= s <= n+3`, for multiples `h = 1..=h_max`.
pub fn verify_gamma_points_case(n: u32, s: u64, h_max: u32) -> Result<GammaCaseReport> {
    if n < 2 || s < n as u64 + 1 || s > n as u64 + 3 {
        return domain(format!("need n >= 2 and n+1 <= s <= n+3 (n={n}, s={s})"));
    }
    if h_max < 1 {
        return domain("h_max must be at least 1");
    }
    let gamma = gamma_points_closed(n, s)?;
    let ni = n as i64;
    let su = s as usize;
    let mut checks = Vec::new();
    let mut ratios = Vec::new();
    let ratio = |h: u32, m: i64, alpha: i64| AlphaRatio {
        h,
        m,
        alpha,
        ratio: Rational::new(alpha.into(), m.into()),
    };

    if s <= n as u64 + 2 || n.is_multiple_of(2) {
        // α(I^{(hn)}) = h(n+1) or h(n+2)
        let k = if s == n as u64 + 1 { ni + 1 } else { ni + 2 };
        let lower_points = su.min(n as usize + 2);
        for h in 1..=h_max {
            let hh = h as i64;
            let m = hh * ni;
            let alpha = hh * k;
            if s <= n as u64 + 2 {
                let upper = LinearSystem::uniform(n, alpha, m, su)?;
                checks.push(check_witness(h, "nonempty at the claimed degree", &upper));
            }
            let lower = LinearSystem::uniform(n, alpha - 1, m, lower_points)?;
            let claim = if lower_points < su {
                "empty one degree lower on n+2 of the points"
            } else {
                "empty one degree lower"
            };
            checks.push(check_empty(h, claim, &lower)?);
            ratios.push(ratio(h, m, alpha));
        }
        if s == n as u64 + 3 {
            // n = 2k: 𝓛(k+1; k^{n+3}) is nonempty through a chain with c = −1
            let half = ni / 2;
            let base = LinearSystem::uniform(n, half + 1, half, su)?;
            let trace = reduce(&base, Strategy::Greedy, 64)?;
            let cs: Vec<i64> = trace.steps.iter().map(|st| st.c).collect();
            let passed = trace.verdict == Verdict::Nonempty && cs.iter().all(|&c| c == -1);
            checks.push(CaseCheck {
                h: 1,
                claim: "nonempty through a chain with c = -1".into(),
                system: base.to_string(),
                passed,
                detail: format!("{:?} after c = {:?}: {}", trace.verdict, cs, trace.certificate),
            });
        }
    } else {
        // n = 2k+1
        let half = (ni - 1) / 2;
        let top = (half + 1) * (ni + 3);
        let mult = half * (ni + 3) + 1;
        let base = LinearSystem::uniform(n, top, mult, su)?;
        let trace = reduce(&base, Strategy::Greedy, (half + 1) as usize)?;
        let cs: Vec<i64> = trace.steps.iter().map(|st| st.c).collect();
        let end = trace.last().clone();
        let mut expected = vec![ni; n as usize + 1];
        expected.extend([-1, -1]);
        let chain_ok = cs.len() == (half + 1) as usize
            && cs.iter().all(|&c| c == -(ni + 1))
            && end.d == ni + 1
            && end.sorted_mults() == expected;
        let clamped = LinearSystem::new(n, end.d, end.mults.iter().map(|&m| m.max(0)).collect())?;
        let witness = check_witness(1, "", &clamped);
        checks.push(CaseCheck {
            h: 1,
            claim: "nonempty: chain ends at L(n+1; n^(n+1), (-1)^2) which has a hyperplane product".into(),
            system: base.to_string(),
            passed: chain_ok && witness.passed,
            detail: format!("c = {:?}, endpoint {}, {}", cs, end, witness.detail),
        });
        for h in 1..=h_max {
            let hh = h as i64;
            let m = 2 * hh * mult;
            let alpha = 2 * hh * top;
            let lower = LinearSystem::uniform(n, alpha - 1, m, su)?;
            checks.push(check_empty(h, "empty one degree below twice the chain degree", &lower)?);
            ratios.push(ratio(h, m, alpha));
        }
    }
    let passed = checks.iter().all(|c| c.passed) && ratios.iter().all(|r| r.ratio == gamma);
    Ok(GammaCaseReport {
        n,
        s,
        gamma_closed: gamma,
        checks,
        ratios,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: u32, d: i64, m: &[i64]) -> LinearSystem {
        LinearSystem::new(n, d, m.to_vec()).unwrap()
    }

    #[test]
    fn transforms() {
        let (t, c) = cremona_transform(&sys(2, 1, &[0, 0, 0]), &[0, 1, 2]).unwrap();
        assert_eq!((t, c), (sys(2, 2, &[1, 1, 1]), 1));
        let (t, c) = cremona_transform(&sys(3, 3, &[3, 3, 3, 3]), &[0, 1, 2, 3]).unwrap();
        assert_eq!((t, c), (sys(3, -3, &[-3, -3, -3, -3]), -6));
        let (t, c) = cremona_transform(&sys(4, 3, &[2; 7]), &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!((t, c), (sys(4, 2, &[1, 1, 1, 1, 1, 2, 2]), -1));
        assert!(cremona_transform(&sys(2, 1, &[0, 0, 0]), &[0, 1, 5]).is_err());
        let (t, _) = cremona_transform(&sys(3, 2, &[1]), &[0, 1, 2, 3]).unwrap();
        assert_eq!(t.mults.len(), 4);
    }

    #[test]
    fn certificates() {
        assert!(empty_certificate(&sys(3, -3, &[-3; 4])));
        assert!(empty_certificate(&sys(3, 0, &[-1, -1, -1, -1, 3])));
        assert!(!empty_certificate(&sys(2, 1, &[1, 1, 0])));
        assert!(nonempty_certificate(&sys(2, 2, &[1; 5])).unwrap());
        assert!(!nonempty_certificate(&sys(2, 2, &[1; 6])).unwrap());
        assert!(nonempty_certificate(&sys(3, 2, &[1; 3])).unwrap());
        assert!(nonempty_certificate(&sys(3, 2, &[3])).is_err());
    }

    #[test]
    fn witnesses() {
        let s = sys(3, 4, &[3; 4]);
        let w = hyperplane_product_witness(&s).unwrap();
        assert!(w.proves(&s));
        assert_eq!(w.factors.len(), 4);
        assert!(w.factors.iter().all(|(f, k)| f.len() == 3 && *k == 1));
        let s = sys(3, 5, &[3; 5]);
        let w = hyperplane_product_witness(&s).unwrap();
        assert!(w.proves(&s));
        assert!(w.factors.iter().all(|(f, _)| f.len() == 3));
        let s = sys(4, 1, &[1, 0, 0, 0]);
        assert_eq!(hyperplane_product_witness(&s).unwrap().factors, vec![(vec![0], 1)]);
        assert!(hyperplane_product_witness(&sys(2, 2, &[2, 2, 1])).is_none());
        let s = sys(3, 4, &[3, 3, 3, 3, -1, -1]);
        assert!(hyperplane_product_witness(&s).unwrap().proves(&s));
    }

    #[test]
    fn reductions() {
        let t = reduce(&sys(3, 7, &[6; 4]), Strategy::Greedy, 10).unwrap();
        assert_eq!(t.verdict, Verdict::Empty);
        assert_eq!(t.steps.len(), 1);
        assert_eq!((t.steps[0].c, t.last().clone()), (-10, sys(3, -3, &[-4; 4])));

        let t = reduce(&sys(3, 4, &[3; 5]), Strategy::Greedy, 10).unwrap();
        assert_eq!(t.verdict, Verdict::Empty);
        assert_eq!(t.last(), &sys(3, 0, &[-1, -1, -1, -1, 3]));

        let t = reduce(&sys(3, 12, &[7; 6]), Strategy::Greedy, 2).unwrap();
        assert_eq!(t.verdict, Verdict::Undecided);
        assert_eq!(t.last().d, 4);
        assert_eq!(t.last().sorted_mults(), vec![3, 3, 3, 3, -1, -1]);
        let t = reduce(&sys(3, 12, &[7; 6]), Strategy::Greedy, 10).unwrap();
        assert_eq!(t.verdict, Verdict::Nonempty);

        let t = reduce(&sys(2, 2, &[1, 1]), Strategy::Greedy, 3).unwrap();
        assert_eq!(t.verdict, Verdict::Nonempty);
    }

    #[test]
    fn gamma_cases() {
        for (n, s) in [(3, 4), (3, 5), (3, 6), (4, 7), (2, 5), (5, 8)] {
            let r = verify_gamma_points_case(n, s, 3).unwrap();
            assert!(r.passed, "{n} {s}: {r:#?}");
        }
        let r = verify_gamma_points_case(3, 4, 3).unwrap();
        assert_eq!(r.ratios.iter().map(|x| x.alpha).collect::<Vec<_>>(), vec![4, 8, 12]);
        assert!(verify_gamma_points_case(3, 3, 1).is_err());
    }

    #[test]
    fn parsing() {
        let s = LinearSystem::parse(3, "12;7,7,7").unwrap();
        assert_eq!(s, sys(3, 12, &[7, 7, 7]));
        assert_eq!(s.to_string(), "L_3(12; 7,7,7)");
        assert!(LinearSystem::parse(3, "12,7").is_err());
    }
}
