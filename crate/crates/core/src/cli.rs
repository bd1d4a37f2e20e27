//! Command-line front end.
//!
//! Every command builds a JSON value (exact rationals as strings) and a short
//! text rendering. `--json` prints the value compactly, `--csv` flattens it,
//! and the default prints the text.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::blowup::{alt_sum_one, alt_sum_zero, expand_self_intersection, identity_check, unit_sum};
use crate::cremona::{cremona_transform, hyperplane_product_witness, reduce, verify_gamma_points_case, LinearSystem, Strategy};
use crate::error::{Error, Result};
use crate::exact::rational::{parse_rational, to_exact_string};
use crate::flats::{
    alpha2_points_expected, alpha_points_general, conditions_count, hilbert_poly_mixed, hilbert_poly_uniform,
    MultVector,
};
use crate::lambda::{g_value, lambda_poly, lambda_poly_via_leading, tower_check};
use crate::verifier::{
    nosymetry_enumerate, nosymetry_tail_checks, replay_appendix, reproduction_matrix,
};
use crate::waldschmidt::{bounds_report, e_certify, e_empirical, gamma_points_closed, DEFAULT_M_MAX};

pub const THREADS_ENV: &str = "FATFLATS_THREADS";

#[derive(Parser, Debug)]
#[command(name = "fatflats", version, about = "Exact computations for fat linear subspaces of projective space")]
struct Cli {
    /// Print compact JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Print CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, env = THREADS_ENV)]
    threads: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conditions imposed on degree-t forms by multiplicity m along an r-plane.
    Conditions { n: u32, r: u32, m: u32, t: u32 },
    /// Hilbert polynomial of s r-planes of multiplicity m, or of a mixed vector.
    Hilbert(HilbertArgs),
    /// The polynomial Λ_{n,r,s} and its largest real root g.
    Lambda(LambdaArgs),
    /// Expected Waldschmidt constant.
    E {
        n: u32,
        r: u32,
        s: u64,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        mmax: u32,
        /// Certify the value exactly.
        #[arg(long)]
        certify: bool,
    },
    /// Known γ, e and g together with their ordering.
    Bounds {
        n: u32,
        r: u32,
        s: u64,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        mmax: u32,
    },
    /// Waldschmidt constant and initial degrees of s general points.
    GammaPoints { n: u32, s: u64 },
    /// Cremona transformations of 𝓛_n(d; m_1, …, m_s).
    Cremona(CremonaArgs),
    /// Self-intersection (τH − E)^n on the blow-up.
    Intersections {
        n: u32,
        r: u32,
        s: u64,
        /// Compare with n!·Λ_{n,r,s}.
        #[arg(long)]
        check: bool,
    },
    /// Finite verifications.
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Args, Debug)]
struct HilbertArgs {
    n: u32,
    r: u32,
    s: Option<u64>,
    m: Option<u32>,
    /// Comma-separated multiplicities, one per flat.
    #[arg(long, conflicts_with_all = ["s", "m"])]
    mults: Option<MultVector>,
    /// Evaluate at this degree.
    #[arg(long, conflicts_with = "poly")]
    at: Option<i64>,
    /// Print the polynomial (default).
    #[arg(long)]
    poly: bool,
}

#[derive(Args, Debug)]
struct LambdaArgs {
    n: u32,
    r: u32,
    s: u64,
    /// Print the polynomial (default).
    #[arg(long, conflicts_with = "g")]
    poly: bool,
    /// Isolate g_{n,r,s}.
    #[arg(long)]
    g: bool,
    /// Width of the isolating interval.
    #[arg(long, default_value = "1e-10")]
    prec: String,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("action").required(true).args(["transform", "reduce", "witness"])))]
struct CremonaArgs {
    /// Ambient dimension.
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// The system as "d;m1,m2,...".
    #[arg(long, allow_hyphen_values = true)]
    system: String,
    /// Apply one transformation at these n+1 zero-based point indices.
    #[arg(long, value_delimiter = ',')]
    transform: Option<Vec<usize>>,
    /// Reduce greedily until decided.
    #[arg(long)]
    reduce: bool,
    /// Search for a product of hyperplanes in the system.
    #[arg(long)]
    witness: bool,
    #[arg(long, default_value_t = 1000)]
    max_steps: usize,
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Enumeration for s lines in P^3, 7 <= s <= 12.
    Nosymetry { s: u64 },
    /// Replay a worked example.
    Appendix { id: String },
    /// Initial degrees of s general points, n+1 <= s <= n+3.
    GammaCase {
        n: u32,
        s: u64,
        #[arg(long, default_value_t = 3)]
        hmax: u32,
    },
    /// Identity grid plus randomized spot checks drawn from --seed.
    Identities {
        #[arg(long, default_value_t = 200)]
        samples: u32,
    },
    /// Tail inequalities Λ_{3,1,s}(s/2) > 0 and Λ_{3,1,s}(5s/11) > 0.
    Tail {
        #[arg(long, default_value_t = 40)]
        smax: u64,
    },
    /// All acceptance criteria, one row each.
    Matrix,
}

struct Output {
    value: Value,
    text: String,
    ok: bool,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

fn output(value: Value, text: String) -> Output {
    Output { value, text, ok: true }
}

fn join(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn hilbert(a: &HilbertArgs) -> Result<Output> {
    let (p, label) = match (&a.mults, a.s, a.m) {
        (Some(v), _, _) => (hilbert_poly_mixed(a.n, a.r, v)?, format!("P_({},{},({}))", a.n, a.r, join(&v.entries))),
        (None, Some(s), Some(m)) => (hilbert_poly_uniform(a.n, a.r, s, m)?, format!("P_({},{},{s},{m})", a.n, a.r)),
        _ => return Err(Error::Parse("hilbert needs either S M or --mults LIST".into())),
    };
    Ok(match a.at {
        Some(t) => {
            let v = p.eval_int(t);
            output(json!({ "t": t, "value": to_exact_string(&v) }), format!("{label}({t}) = {v}"))
        }
        None => output(json!({ "poly": to_value(&p) }), format!("{label}(t) = {}", p.display_in("t"))),
    })
}

fn lambda(a: &LambdaArgs) -> Result<Output> {
    if a.g {
        let prec = parse_rational(&a.prec)?;
        if prec <= num_traits::Zero::zero() {
            return Err(Error::Parse("--prec must be positive".into()));
        }
        let g = g_value(a.n, a.r, a.s, &prec)?;
        let text = format!("g_({},{},{}) = {} in [{}, {}]", a.n, a.r, a.s, g.decimal(), g.lo(), g.hi());
        return Ok(output(to_value(&g), text));
    }
    let l = lambda_poly(a.n, a.r, a.s)?;
    let agrees = l == lambda_poly_via_leading(a.n, a.r, a.s)?;
    let text = format!("Λ_({},{},{})(τ) = {}", a.n, a.r, a.s, l.display_in("τ"));
    Ok(output(json!({ "poly": to_value(&l), "leading_coefficient_agrees": agrees }), text))
}

fn e_command(n: u32, r: u32, s: u64, mmax: u32, certify: bool) -> Result<Output> {
    let w = e_empirical(n, r, s, mmax)?;
    let mut text = format!("e_({n},{r},{s}) = {} (t={}, m={})", w.ratio, w.t, w.m);
    let mut value = json!({ "e": to_exact_string(&w.ratio), "witness": to_value(&w) });
    let mut ok = true;
    if certify {
        match e_certify(n, r, s, &w.ratio) {
            Ok(cert) => {
                text.push_str(&format!(
                    "\ncertified: majorant negative for m >= {}, scan {} ({} pairs)",
                    cert.m_threshold, cert.finite_scan_range, cert.pairs_checked
                ));
                value["certified"] = json!(true);
                value["certificate"] = to_value(&cert);
            }
            Err(err @ Error::Certification { .. }) => {
                text.push_str(&format!("\nnot certified: {err}"));
                value["certified"] = json!(false);
                value["error"] = json!(err.to_string());
                ok = false;
            }
            Err(err) => return Err(err),
        }
    }
    Ok(Output { value, text, ok })
}

fn bounds(n: u32, r: u32, s: u64, mmax: u32) -> Result<Output> {
    let rep = bounds_report(n, r, s, mmax, &crate::exact::roots::default_precision())?;
    let mut text = String::new();
    match &rep.gamma {
        Some(k) if k.is_exact() => text.push_str(&format!("gamma = {}\n", k.value)),
        Some(k) => text.push_str(&format!("gamma <= {}\n", k.value)),
        None => text.push_str("gamma unknown\n"),
    }
    let cert = if rep.e_certified { "certified" } else { "empirical" };
    text.push_str(&format!("e = {} ({cert})\ng = {}", rep.e, rep.g.decimal()));
    for link in &rep.chain {
        text.push_str(&format!("\n{}: {}", link.relation, if link.holds { "holds" } else { "fails" }));
    }
    Ok(Output { ok: rep.chain_holds(), value: to_value(&rep), text })
}

fn gamma_points(n: u32, s: u64) -> Result<Output> {
    let gamma = gamma_points_closed(n, s)?;
    let alpha = alpha_points_general(n, s)?;
    let alpha2 = alpha2_points_expected(n, s)?;
    let value = json!({
        "gamma": to_exact_string(&gamma),
        "alpha": alpha,
        "alpha2": { "value": alpha2, "status": "expected, exceptions exist" },
    });
    let text = format!("gamma = {gamma}\nalpha = {alpha}\nalpha2 = {alpha2} (expected, exceptions exist)");
    Ok(output(value, text))
}

fn cremona(a: &CremonaArgs) -> Result<Output> {
    let sys = LinearSystem::parse(a.n, &a.system)?;
    if let Some(idx) = &a.transform {
        let (out, c) = cremona_transform(&sys, idx)?;
        let value = json!({ "system": to_value(&out), "c": c, "virtual_dimension": out.virtual_dimension().to_string() });
        return Ok(output(value, format!("{sys} -> {out} (c = {c})")));
    }
    if a.reduce {
        let trace = reduce(&sys, Strategy::Greedy, a.max_steps)?;
        let mut text = sys.to_string();
        for step in &trace.steps {
            text.push_str(&format!("\n  c = {}: {}", step.c, step.result));
        }
        text.push_str(&format!("\n{:?}: {}", trace.verdict, trace.certificate));
        return Ok(output(to_value(&trace), text));
    }
    let w = hyperplane_product_witness(&sys);
    let proves = w.as_ref().is_some_and(|w| w.proves(&sys));
    let text = match &w {
        Some(w) => format!("{sys} contains a product of {} hyperplanes: {:?}", w.degree(), w.factors),
        None => format!("no hyperplane product found in {sys}"),
    };
    Ok(Output { value: json!({ "witness": to_value(&w), "proves": proves }), text, ok: proves })
}

fn intersections(n: u32, r: u32, s: u64, check: bool) -> Result<Output> {
    let p = expand_self_intersection(n, r, s)?;
    let mut text = format!("(τH − E)^{n} = {}", p.display_in("τ"));
    let mut value = json!({ "poly": to_value(&p) });
    let mut ok = true;
    if check {
        ok = identity_check(n, r, s)?;
        text.push_str(&format!("\nequals {n}!·Λ_({n},{r},{s}): {ok}"));
        value["matches_lambda"] = json!(ok);
    }
    Ok(Output { value, text, ok })
}

fn identities(seed: u64, samples: u32) -> Result<Output> {
    let mut failures = Vec::new();
    let mut checked = 0u64;
    let mut check = |ok: bool, what: String| {
        checked += 1;
        if !ok {
            failures.push(what);
        }
    };
    for r in 0..=3u32 {
        for n in (2 * r + 1).max(2)..=8 {
            for s in [1u64, 2, 5, 10, 100] {
                check(identity_check(n, r, s)?, format!("intersection ({n},{r},{s})"));
                check(lambda_poly(n, r, s)? == lambda_poly_via_leading(n, r, s)?, format!("leading ({n},{r},{s})"));
                if r >= 1 {
                    check(tower_check(n, r, s)?, format!("tower ({n},{r},{s})"));
                }
            }
            check(unit_sum(n, r)? == 1.into(), format!("unit sum ({n},{r})"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let r = rng.gen_range(0..=4u32);
        let n = rng.gen_range(2 * r + 1..=10).max(2);
        let s = rng.gen_range(1..=1000u64);
        check(identity_check(n, r, s)?, format!("intersection ({n},{r},{s})"));
        let (t, j) = (rng.gen_range(1..=40i64), rng.gen_range(1..=40i64));
        check(alt_sum_zero(t, j)?.value == 0.into(), format!("alternating sum zero ({t},{j})"));
        check(alt_sum_one(t, j)?.value == 1.into(), format!("alternating sum one ({t},{j})"));
    }
    let text = if failures.is_empty() {
        format!("checks={checked} failures=0")
    } else {
        format!("checks={checked} failures={}: {}", failures.len(), failures.join("; "))
    };
    let ok = failures.is_empty();
    Ok(Output { value: json!({ "seed": seed, "checks": checked, "failures": failures }), text, ok })
}

fn verify(v: &Verify, seed: u64) -> Result<Output> {
    match v {
        Verify::Nosymetry { s } => {
            let rep = nosymetry_enumerate(*s)?;
            let text = format!(
                "s={} g={} d<{} sum<={} cases={} pairs={} violations={}",
                s,
                rep.bounds.g.decimal(),
                rep.bounds.d_bound.decimal(),
                rep.bounds.sum_bound.decimal(),
                rep.sequences,
                rep.cases_checked,
                rep.violations.len()
            );
            Ok(Output { ok: rep.passed(), value: to_value(&rep), text })
        }
        Verify::Appendix { id } => {
            let rep = replay_appendix(id)?;
            let lines: Vec<String> = rep
                .assertions
                .iter()
                .map(|a| {
                    let status = if a.passed { "PASS" } else { "FAIL" };
                    format!("{status} {}: {} (expected {}; {})", a.name, a.actual, a.expected, a.origin)
                })
                .collect();
            Ok(Output { ok: rep.passed(), value: to_value(&rep), text: lines.join("\n") })
        }
        Verify::GammaCase { n, s, hmax } => {
            let rep = verify_gamma_points_case(*n, *s, *hmax)?;
            let mut lines: Vec<String> = rep
                .checks
                .iter()
                .map(|c| format!("{} h={} {}: {} ({})", if c.passed { "PASS" } else { "FAIL" }, c.h, c.claim, c.system, c.detail))
                .collect();
            for a in &rep.ratios {
                lines.push(format!("alpha(I^({})) = {} ratio {}", a.m, a.alpha, a.ratio));
            }
            lines.push(format!("gamma = {}", rep.gamma_closed));
            Ok(Output { ok: rep.passed, value: to_value(&rep), text: lines.join("\n") })
        }
        Verify::Identities { samples } => identities(seed, *samples),
        Verify::Tail { smax } => {
            let rows = nosymetry_tail_checks(*smax)?;
            let ok = rows.iter().all(|r| r.half && r.five_elevenths != Some(false));
            let text = format!("s=11..{smax}: {}", if ok { "all positive" } else { "failure" });
            Ok(Output { ok, value: to_value(&rows), text })
        }
        Verify::Matrix => {
            let rows = reproduction_matrix()?;
            let ok = rows.iter().all(|r| r.passed);
            let text: Vec<String> = rows
                .iter()
                .map(|r| format!("{} {:>2} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.criterion, r.title, r.detail))
                .collect();
            Ok(Output { ok, value: to_value(&rows), text: text.join("\n") })
        }
    }
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Conditions { n, r, m, t } => {
            let c = conditions_count(*n, *r, *m, *t)?;
            Ok(output(json!({ "conditions": c.to_string() }), format!("c_({n},{r},{m},{t}) = {c}")))
        }
        Command::Hilbert(a) => hilbert(a),
        Command::Lambda(a) => lambda(a),
        Command::E { n, r, s, mmax, certify } => e_command(*n, *r, *s, *mmax, *certify),
        Command::Bounds { n, r, s, mmax } => bounds(*n, *r, *s, *mmax),
        Command::GammaPoints { n, s } => gamma_points(*n, *s),
        Command::Cremona(a) => cremona(a),
        Command::Intersections { n, r, s, check } => intersections(*n, *r, *s, *check),
        Command::Verify(v) => verify(v, cli.seed),
    }
}

fn csv_cell(v: &Value) -> String {
    let raw = match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

/// Arrays of objects become a table with a header row; objects become
/// `field,value` rows; anything else a single cell.
pub fn to_csv(v: &Value) -> String {
    match v {
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            let keys: Vec<&String> = items[0].as_object().map(|o| o.keys().collect()).unwrap_or_default();
            let mut out = keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(",");
            for item in items {
                let row: Vec<String> = keys.iter().map(|k| csv_cell(&item[k.as_str()])).collect();
                out.push('\n');
                out.push_str(&row.join(","));
            }
            out
        }
        Value::Object(o) => {
            let mut out = String::from("field,value");
            for (k, x) in o {
                out.push_str(&format!("\n{k},{}", csv_cell(x)));
            }
            out
        }
        other => csv_cell(other),
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Certification { .. } | Error::Invariant(_) => 1,
        _ => 2,
    }
}

/// Runs the command line `argv` (including the program name), writing to
/// the given streams. Returns the process exit code.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        builder = builder.num_threads(t);
    }
    let result = match builder.build() {
        Ok(pool) => pool.install(|| execute(&cli)),
        Err(e) => Err(Error::Invariant(format!("thread pool: {e}"))),
    };
    match result {
        Ok(o) => {
            let body = if cli.json {
                o.value.to_string()
            } else if cli.csv {
                to_csv(&o.value)
            } else {
                o.text
            };
            let _ = writeln!(out, "{body}");
            i32::from(!o.ok)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if exit_code(&e) == 2 {
                let _ = writeln!(err, "usage: fatflats <COMMAND> [ARGS] (see fatflats --help)");
            }
            exit_code(&e)
        }
    }
}

pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
