use std::cmp::Ordering;

use fatflats::cremona::{cremona_transform, empty_certificate, hyperplane_product_witness, LinearSystem};
use fatflats::exact::roots::{default_precision, isolate_all_roots};
use fatflats::exact::{binom, expand_scaled, rat, rat_int, UniPoly};
use fatflats::flats::{
    conditions_count, conditions_count_lines, conditions_count_oracle, hilbert_bipoly_uniform,
    hilbert_function_flat, hilbert_poly_uniform,
};
use fatflats::lambda::g_value;
use fatflats::verifier::{nosymetry_enumerate, two_line_overlap_value};
use fatflats::waldschmidt::{e_empirical, gamma_points_closed};
use num_traits::Signed;
use proptest::prelude::*;

#[test]
fn pascal() {
    for a in 1..=40 {
        for b in 1..a {
            assert_eq!(binom(a, b).unwrap(), binom(a - 1, b - 1).unwrap() + binom(a - 1, b).unwrap());
        }
    }
}

#[test]
fn oracle_agrees() {
    for n in 1..=5 {
        for r in 0..n {
            for m in 1..=5 {
                for t in m..=m + 6 {
                    assert_eq!(conditions_count(n, r, m, t).unwrap(), conditions_count_oracle(n, r, m, t).unwrap());
                }
            }
        }
    }
}

#[test]
fn lines_formula() {
    for n in 3..=8 {
        for m in 1..=8 {
            for t in m..=16 {
                assert_eq!(conditions_count_lines(n, m, t).unwrap(), conditions_count(n, 1, m, t).unwrap());
            }
        }
    }
}

#[test]
fn difference_property() {
    for r in 1..=3u32 {
        for n in 2 * r + 1..=8 {
            for s in 1..=10u64 {
                for m in 1..=6 {
                    let p = hilbert_poly_uniform(n, r, s, m).unwrap();
                    let below = p.compose_linear(&rat(1, 1), &rat(-1, 1));
                    assert_eq!(&p - &below, hilbert_poly_uniform(n - 1, r - 1, s, m).unwrap(), "({n},{r},{s},{m})");
                }
            }
        }
    }
}

#[test]
fn flat_hilbert_differences() {
    for n in 2..=5u32 {
        for r in 0..n {
            for m in 1..=4u32 {
                let mut seq = hilbert_function_flat(n, r, m, 12).unwrap();
                for _ in 0..r {
                    let prev = seq.clone();
                    seq = (0..prev.len()).map(|i| if i == 0 { prev[0].clone() } else { &prev[i] - &prev[i - 1] }).collect();
                }
                let k = (n - r) as i64;
                for (t, v) in seq.iter().enumerate() {
                    let base = binom(t as i64 + k, k).unwrap().min(binom(m as i64 + k - 1, k).unwrap());
                    assert_eq!(v, &base, "n={n} r={r} m={m} t={t}");
                }
            }
        }
    }
}

#[test]
fn value_at_m() {
    for n in 2..=7u32 {
        for r in 0..n.min(3) {
            if 2 * r + 1 > n {
                continue;
            }
            for s in 1..=5u64 {
                for m in 1..=5u32 {
                    let (ni, ri, mi) = (n as i64, r as i64, m as i64);
                    let total = binom(mi + ni, ni).unwrap();
                    let inner = binom(mi + ni - ri - 1, ni - ri - 1).unwrap();
                    let want = &total - (&total - inner) * s;
                    let got = hilbert_poly_uniform(n, r, s, m).unwrap().eval_int(mi);
                    assert_eq!(got, rat_int(want), "({n},{r},{s},{m})");
                }
            }
        }
    }
}

#[test]
fn g_increases_along_tower() {
    let p = default_precision();
    for r in 1..=3u32 {
        for n in 2 * r + 1..=8 {
            for s in [2u64, 3, 5, 10] {
                let hi = g_value(n, r, s, &p).unwrap();
                let lo = g_value(n - 1, r - 1, s, &p).unwrap();
                assert_eq!(hi.cmp_exact(&lo), Ordering::Greater, "({n},{r},{s})");
            }
        }
    }
}

#[test]
fn e_bounds() {
    for n in 2..=4u32 {
        for s in 1..=n as u64 + 3 {
            let e = e_empirical(n, 0, s, 20).unwrap().ratio;
            assert!(gamma_points_closed(n, s).unwrap() <= e, "({n},{s})");
        }
    }
    for n in 2..=8u32 {
        for r in 0..=(n - 1) / 2 {
            assert_eq!(e_empirical(n, r, 1, 20).unwrap().ratio, rat(1, 1));
            assert_eq!(g_value(n, r, 1, &default_precision()).unwrap().exact(), Some(&rat(1, 1)));
        }
    }
    let coarse = e_empirical(3, 1, 6, 10).unwrap().ratio;
    let fine = e_empirical(3, 1, 6, 40).unwrap().ratio;
    assert!(fine <= coarse);
}

#[test]
fn overlap_nonpositive() {
    for m2 in 1..=10 {
        for m1 in 1..=m2 {
            for t in 0..m1 {
                let v = two_line_overlap_value(m1, m2, t).unwrap();
                assert!(v.nonpositive(), "({m1},{m2},{t}) = {}", v.direct);
            }
        }
    }
}

#[test]
fn enumeration_independent_of_threads() {
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| serde_json::to_string(&nosymetry_enumerate(7).unwrap()).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
}

fn scan_sign_changes(p: &UniPoly) -> usize {
    let mut count = 0;
    let mut prev = p.eval(&rat(-80005, 10000)).signum();
    for i in 1..=16000 {
        let v = p.eval(&rat(-80005 + 10 * i, 10000)).signum();
        if v != prev {
            count += 1;
        }
        prev = v;
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn root_counts_match_scan(
        roots in proptest::collection::btree_set(-7i64..7, 0..6),
        extra in 0i64..3,
    ) {
        let mut p = UniPoly::from_ints(&[1]);
        for &k in &roots {
            p = &p * &UniPoly::from_ints(&[-(2 * k + 1), 2]);
        }
        if extra > 0 {
            p = &p * &UniPoly::from_ints(&[extra, 0, 1]);
        }
        let isolated = isolate_all_roots(&p).unwrap();
        prop_assert_eq!(isolated.len(), roots.len());
        prop_assert_eq!(scan_sign_changes(&p), roots.len());
    }

    #[test]
    fn expansion_round_trip(n in 2u32..6, r in 0u32..2, s in 1u64..8, t in 1i64..40, m in 1i64..12) {
        prop_assume!(n > 2 * r);
        let p = hilbert_bipoly_uniform(n, r, s).unwrap();
        let e = expand_scaled(&p);
        prop_assert_eq!(e.eval(&rat_int(m), &rat(t, m)), p.eval(&rat_int(t), &rat_int(m)));
    }

    #[test]
    fn cremona_involution(n in 2u32..5, d in -3i64..25, mults in proptest::collection::vec(-2i64..20, 0..8)) {
        let sys = LinearSystem::new(n, d, mults).unwrap();
        let idx: Vec<usize> = (0..=n as usize).collect();
        let (once, c) = cremona_transform(&sys, &idx).unwrap();
        let (twice, c2) = cremona_transform(&once, &idx).unwrap();
        prop_assert_eq!(c2, -c);
        let mut padded = sys.mults.clone();
        if padded.len() < idx.len() {
            padded.resize(idx.len(), 0);
        }
        prop_assert_eq!(twice.mults, padded);
        prop_assert_eq!(twice.d, sys.d);
    }

    #[test]
    fn cremona_preserves_virtual_dimension(n in 2u32..5, d in 0i64..20, raw in proptest::collection::vec(0i64..20, 1..7)) {
        let mults: Vec<i64> = raw.iter().map(|&m| m.min(d)).collect();
        let sys = LinearSystem::new(n, d, mults).unwrap();
        let idx: Vec<usize> = (0..=n as usize).collect();
        let (out, _) = cremona_transform(&sys, &idx).unwrap();
        let ok = |s: &LinearSystem| {
            let ms = s.sorted_mults();
            s.mults.iter().all(|&m| m >= 0)
                && s.d >= ms.first().copied().unwrap_or(0)
                && (s.n == 2 || ms.len() < 2 || ms[0] + ms[1] <= s.d + 1)
        };
        prop_assume!(ok(&sys) && ok(&out));
        prop_assert_eq!(out.virtual_dimension(), sys.virtual_dimension());
    }

    #[test]
    fn witness_never_meets_empty_certificate(n in 2u32..4, d in 0i64..8, raw in proptest::collection::vec(0i64..6, 1..6)) {
        let sys = LinearSystem::new(n, d, raw).unwrap();
        if let Some(w) = hyperplane_product_witness(&sys) {
            prop_assert!(w.proves(&sys));
            prop_assert!(!empty_certificate(&sys));
        }
    }

    #[test]
    fn oracle_spot(n in 1u32..6, r in 0u32..5, m in 1u32..6, extra in 0u32..7) {
        prop_assume!(r < n);
        prop_assert_eq!(conditions_count(n, r, m, m + extra).unwrap(), conditions_count_oracle(n, r, m, m + extra).unwrap());
        prop_assert!(!conditions_count(n, r, m, m + extra).unwrap().is_negative());
    }
}
