//! The reproduction matrix: one row per acceptance criterion, with a
//! deterministic detail string.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::blowup::{alt_sum_one, alt_sum_zero, identity_check, unit_sum};
use crate::cremona::{reduce, verify_gamma_points_case, LinearSystem, Strategy, Verdict};
use crate::error::Result;
use crate::exact::rational::rat;
use crate::exact::roots::default_precision;
use crate::exact::{int, UniPoly};
use crate::flats::{conditions_count, conditions_count_oracle, hilbert_function_flat, hilbert_value_uniform};
use crate::lambda::{g_specials, g_value, lambda_at_one_expected, lambda_poly, lambda_poly_via_leading, tower_check};
use crate::waldschmidt::{bounds_report, e_certify, e_empirical, DEFAULT_M_MAX};

use super::appendix::{replay_appendix, APPENDIX_IDS};
use super::nosymetry::nosymetry_enumerate;

pub const CRITERIA: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixRow {
    pub criterion: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl MatrixRow {
    pub fn csv_header() -> &'static str {
        "criterion,title,passed,detail"
    }

    pub fn to_csv(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
        format!("{},{},{},{}", self.criterion, quote(self.title), self.passed, quote(&self.detail))
    }
}

fn row(criterion: u32, title: &'static str, failures: Vec<String>, checked: usize) -> MatrixRow {
    let detail = if failures.is_empty() {
        format!("{checked} checks")
    } else {
        format!("{} of {checked} failed: {}", failures.len(), failures.join("; "))
    };
    MatrixRow { criterion, title, passed: failures.is_empty(), detail }
}

struct Tally {
    failures: Vec<String>,
    checked: usize,
}

impl Tally {
    fn new() -> Self {
        Self { failures: Vec::new(), checked: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, criterion: u32, title: &'static str) -> MatrixRow {
        row(criterion, title, self.failures, self.checked)
    }
}

pub fn oracle_equivalence() -> Result<MatrixRow> {
    let mut t = Tally::new();
    for n in 1..=5 {
        for r in 0..n {
            for m in 1..=5 {
                for d in m..=m + 6 {
                    let ok = conditions_count(n, r, m, d)? == conditions_count_oracle(n, r, m, d)?;
                    t.check(ok, || format!("c_({n},{r},{m},{d})"));
                }
            }
        }
    }
    Ok(t.finish(1, "condition-count oracle equivalence"))
}

pub fn hilbert_sequences() -> Result<MatrixRow> {
    let mut t = Tally::new();
    let cases: [(u32, u32, [i64; 6]); 3] = [
        (2, 0, [1, 3, 6, 10, 10, 10]),
        (3, 1, [1, 4, 10, 20, 30, 40]),
        (4, 2, [1, 5, 15, 35, 65, 105]),
    ];
    for (n, r, expected) in cases {
        let got = hilbert_function_flat(n, r, 4, 6)?;
        let want: Vec<_> = expected.iter().map(|&x| int(x)).collect();
        t.check(got == want, || format!("H_({n},{r},4) = {got:?}"));
    }
    Ok(t.finish(2, "Hilbert function sequences"))
}

pub fn six_lines_values() -> Result<MatrixRow> {
    let mut t = Tally::new();
    let p = hilbert_value_uniform(3, 1, 6, 7, 27)?;
    t.check(p == int(28), || format!("P_(3,1,6,7)(27) = {p}"));
    let report = replay_appendix("six-lines")?;
    for a in report.assertions.iter().filter(|a| a.name.contains("(4,3,3,3,3,3)")) {
        t.check(a.passed, || format!("{}: {}", a.name, a.actual));
    }
    Ok(t.finish(3, "six-lines Hilbert polynomial values"))
}

pub fn lambda_identities() -> Result<MatrixRow> {
    let mut t = Tally::new();
    for r in 0..=3u32 {
        for n in 2 * r + 1..=8 {
            for s in [1u64, 2, 5, 10, 100] {
                let l = lambda_poly(n, r, s)?;
                t.check(l == lambda_poly_via_leading(n, r, s)?, || format!("leading ({n},{r},{s})"));
                t.check(l.eval(&One::one()) == lambda_at_one_expected(n, s), || format!("Λ(1) ({n},{r},{s})"));
                if r >= 1 {
                    t.check(tower_check(n, r, s)?, || format!("tower ({n},{r},{s})"));
                }
            }
        }
    }
    Ok(t.finish(4, "Λ identity suite"))
}

pub fn g_values() -> Result<MatrixRow> {
    let mut t = Tally::new();
    let p = default_precision();
    for (s, want) in [(2u64, 2.0), (3, 2.584), (4, 3.064), (5, 3.482), (6, 3.8587)] {
        let g = g_value(3, 1, s, &p)?;
        t.check((g.to_f64() - want).abs() < 1e-3, || format!("g_(3,1,{s}) = {}", g.decimal()));
    }
    for n in 1..=6u32 {
        for s in 1..=12u64 {
            let g = g_value(n, 0, s, &p)?;
            let mut x_n = vec![0i64; n as usize + 1];
            x_n[0] = -(s as i64);
            x_n[n as usize] = 1;
            let divides = UniPoly::from_ints(&x_n).rem(g.defining()).is_zero();
            t.check(divides, || format!("g_({n},0,{s})^{n} != {s}"));
        }
    }
    for r in 1..=10u32 {
        let g = g_value(2 * r + 1, r, 2, &p)?;
        t.check(g.exact() == Some(&rat(2, 1)), || format!("g_({},{r},2) = {}", 2 * r + 1, g.decimal()));
    }
    for row in g_specials()? {
        t.check(row.vanishes && row.largest, || format!("Λ_({},1,{})({}) ", row.n, row.s, row.root));
    }
    let g = g_value(11, 2, 729, &p)?;
    t.check(g.exact() == Some(&rat(3, 1)), || format!("g_(11,2,729) = {}", g.decimal()));
    Ok(t.finish(5, "g values"))
}

pub fn e_certificates() -> Result<MatrixRow> {
    let mut t = Tally::new();
    for (n, r, s, e) in [(3u32, 0u32, 4u64, rat(3, 2)), (3, 1, 6, rat(27, 7))] {
        let w = e_empirical(n, r, s, DEFAULT_M_MAX)?;
        t.check(w.ratio == e, || format!("e_({n},{r},{s}) = {}", w.ratio));
        match e_certify(n, r, s, &e) {
            Ok(c) => t.check(!c.trivial && c.m_threshold >= 1, || format!("certificate ({n},{r},{s})")),
            Err(err) => t.check(false, || format!("({n},{r},{s}): {err}")),
        }
    }
    Ok(t.finish(6, "certified expected Waldschmidt constants"))
}

pub fn cremona_checks() -> Result<MatrixRow> {
    let mut t = Tally::new();
    let empty = |n: u32, d: i64, m: i64, count: usize| -> Result<bool> {
        let sys = LinearSystem::uniform(n, d, m, count)?;
        Ok(reduce(&sys, Strategy::Greedy, 1000)?.verdict == Verdict::Empty)
    };
    for n in 2..=5u32 {
        for h in 1..=4i64 {
            let ni = n as i64;
            t.check(empty(n, h * (ni + 1) - 1, h * ni, n as usize + 1)?, || format!("n={n} h={h} s=n+1"));
        }
    }
    for n in 2..=4u32 {
        for h in 1..=3i64 {
            let ni = n as i64;
            t.check(empty(n, h * (ni + 2) - 1, h * ni, n as usize + 2)?, || format!("n={n} h={h} s=n+2"));
        }
    }
    for n in 2..=5u32 {
        for s in n as u64 + 1..=n as u64 + 3 {
            let rep = verify_gamma_points_case(n, s, 3)?;
            t.check(rep.passed, || format!("points case n={n} s={s}"));
        }
    }
    let prec = default_precision();
    let mut grid: Vec<(u32, u32, u64)> = Vec::new();
    for n in 2..=5u32 {
        grid.extend((1..=n as u64 + 3).map(|s| (n, 0, s)));
    }
    grid.extend((1..=5).map(|s| (3, 1, s)));
    for (n, r, s) in grid {
        let rep = bounds_report(n, r, s, DEFAULT_M_MAX, &prec)?;
        t.check(rep.chain_holds(), || format!("chain ({n},{r},{s})"));
    }
    let rep = bounds_report(3, 0, 4, DEFAULT_M_MAX, &prec)?;
    let gamma = rep.gamma.as_ref().map(|k| k.value.clone());
    let strict = gamma == Some(rat(4, 3))
        && rep.e == rat(3, 2)
        && rep.g.cmp_rational(&rep.e) == Ordering::Greater
        && UniPoly::from_ints(&[-4, 0, 0, 1]).rem(rep.g.defining()).is_zero();
    t.check(strict, || "strict gap at (3,0,4)".into());
    Ok(t.finish(7, "Cremona reductions, witnesses and bound chains"))
}

pub fn intersection_identities() -> Result<MatrixRow> {
    let mut t = Tally::new();
    for r in 0..=4u32 {
        for n in 2 * r + 1..=10 {
            for s in [1u64, 2, 3, 10, 100] {
                t.check(identity_check(n, r, s)?, || format!("({n},{r},{s})"));
            }
            t.check(unit_sum(n, r)? == int(1), || format!("unit sum ({n},{r})"));
        }
    }
    for a in 0..=12i64 {
        for j in 0..=12i64 {
            if j >= 1 {
                let z = alt_sum_zero(a, j)?;
                t.check(z.value.is_zero(), || format!("zero sum t={a} j={j}"));
            }
            if a >= 1 {
                let o = alt_sum_one(a, j)?;
                t.check(o.value == int(1), || format!("one sum t={a} j={j}"));
            }
        }
    }
    Ok(t.finish(8, "intersection identity"))
}

pub fn nosymetry_checks() -> Result<MatrixRow> {
    let mut t = Tally::new();
    let table = [
        (7u64, 4.2035, 14.5043, 24.1538),
        (8, 4.5236, 4.51017, 7.97625),
        (9, 4.82374, 2.20558, 4.11512),
        (10, 5.10725, 1.18148, 2.31334),
        (11, 5.37664, 0.602377, 1.23239),
        (12, 5.63383, 0.229665, 0.489184),
    ];
    let mut counts = Vec::new();
    for (s, g, d, sum) in table {
        let rep = nosymetry_enumerate(s)?;
        t.check(rep.passed(), || format!("s={s}: {} violations", rep.violations.len()));
        let b = &rep.bounds;
        let near = (b.g.to_f64() - g).abs() < 1e-3
            && (b.d_bound.to_f64() - d).abs() < 1e-3
            && (b.sum_bound.to_f64() - sum).abs() < 1e-3;
        t.check(near, || format!("bound row s={s}"));
        let cases = |d: u64| rep.row(d).map_or(0, |r| r.cases);
        match s {
            7 => t.check(rep.sequences == 4149, || format!("s=7 sequences = {}", rep.sequences)),
            8 => t.check(cases(2) == 14 && cases(3) == 15, || format!("s=8 cases {} {}", cases(2), cases(3))),
            9 => t.check(cases(2) == 3, || format!("s=9 cases {}", cases(2))),
            _ => {}
        }
        counts.push(format!("s={s}:{}", rep.cases_checked));
    }
    let mut r = t.finish(9, "finite enumeration for seven or more lines");
    r.detail = format!("{} [{}]", r.detail, counts.join(" "));
    Ok(r)
}

/// Rows 1 through 9.
pub fn reproduction_rows() -> Result<Vec<MatrixRow>> {
    Ok(vec![
        oracle_equivalence()?,
        hilbert_sequences()?,
        six_lines_values()?,
        lambda_identities()?,
        g_values()?,
        e_certificates()?,
        cremona_checks()?,
        intersection_identities()?,
        nosymetry_checks()?,
    ])
}

/// A byte string covering everything the matrix computes, for comparing runs.
pub fn fingerprint() -> Result<String> {
    let mut out = serde_json::to_string(&reproduction_rows()?).unwrap_or_default();
    for s in 7..=12 {
        out.push_str(&serde_json::to_string(&nosymetry_enumerate(s)?).unwrap_or_default());
    }
    for id in APPENDIX_IDS {
        out.push_str(&serde_json::to_string(&replay_appendix(id)?).unwrap_or_default());
    }
    Ok(out)
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| crate::Error::Invariant(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Row 10: the fingerprint agrees across thread counts and repeated runs.
pub fn determinism() -> Result<MatrixRow> {
    let one = in_pool(1, fingerprint)??;
    let four = in_pool(4, fingerprint)??;
    let again = in_pool(4, fingerprint)??;
    let mut t = Tally::new();
    t.check(one == four, || "1 thread vs 4 threads".into());
    t.check(four == again, || "repeated run".into());
    let mut r = t.finish(CRITERIA, "determinism across thread counts and runs");
    r.detail = format!("{} over {} bytes", r.detail, one.len());
    Ok(r)
}

pub fn reproduction_matrix() -> Result<Vec<MatrixRow>> {
    let mut rows = reproduction_rows()?;
    rows.push(determinism()?);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting() {
        let r = MatrixRow { criterion: 2, title: "a,b", passed: true, detail: "say \"hi\"".into() };
        assert_eq!(r.to_csv(), "2,\"a,b\",true,\"say \"\"hi\"\"\"");
    }

    #[test]
    fn cheap_rows() {
        assert!(hilbert_sequences().unwrap().passed);
        assert!(six_lines_values().unwrap().passed);
    }
}
