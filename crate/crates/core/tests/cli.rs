use std::process::Command;

use fatflats::cli::run_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("fatflats").chain(args.iter().copied()).map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn lambda_root_json() {
    let (code, out, _) = run(&["lambda", "3", "1", "6", "--g", "--prec", "1e-6", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["defining"], serde_json::json!(["12", "-18", "0", "1"]));
    assert!(v["decimal"].as_str().unwrap().starts_with("3.85878"));
    let lo: f64 = {
        let s = v["interval"][0].as_str().unwrap();
        let (a, b) = s.split_once('/').unwrap();
        a.parse::<f64>().unwrap() / b.parse::<f64>().unwrap()
    };
    assert!((lo - 3.858784).abs() < 1e-6);
}

#[test]
fn certified_e() {
    let (code, out, _) = run(&["e", "3", "1", "6", "--certify", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["e"], "27/7");
    assert_eq!(v["certified"], true);
}

#[test]
fn failed_certification_exits_one() {
    let (code, out, _) = run(&["e", "3", "1", "2", "--certify"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("not certified"));
}

#[test]
fn nosymetry_report() {
    let (code, out, _) = run(&["verify", "nosymetry", "7"]);
    assert_eq!(code, 0);
    assert!(out.contains("cases=4149") && out.contains("violations=0"), "{out}");
}

#[test]
fn json_round_trips() {
    for args in [
        &["bounds", "3", "0", "4", "--json"][..],
        &["verify", "nosymetry", "8", "--json"],
        &["cremona", "--n", "3", "--system", "12;7,7,7,7,7,7", "--reduce", "--json"],
        &["verify", "appendix", "e-3-0-4", "--json"],
    ] {
        let (code, out, _) = run(args);
        assert_eq!(code, 0, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v.to_string(), out.trim());
    }
}

#[test]
fn threads_do_not_change_output() {
    for args in [&["verify", "nosymetry", "7", "--json"][..], &["e", "3", "1", "6", "--certify", "--json"]] {
        let one = run(&[args, &["--threads", "1"]].concat());
        let four = run(&[args, &["--threads", "4"]].concat());
        assert_eq!(one, four);
    }
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["conditions", "3", "1", "9"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["verify", "appendix", "no-such-example"]).0, 2);
    assert_eq!(run(&["conditions", "3", "1", "9", "2"]).0, 2);
    let (code, _, err) = run(&["cremona", "--system", "5;2,2"]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"));
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn assorted_commands() {
    assert_eq!(run(&["conditions", "3", "1", "2", "4"]).1.trim(), "c_(3,1,2,4) = 13");
    let (_, out, _) = run(&["hilbert", "3", "1", "6", "7", "--at", "27"]);
    assert!(out.ends_with("= 28\n"));
    let (_, out, _) = run(&["hilbert", "3", "1", "--mults", "4,3,3,3,3,3", "--at", "12"]);
    assert!(out.ends_with("= -5\n"));
    let (code, out, _) = run(&["intersections", "3", "1", "6", "--check"]);
    assert_eq!(code, 0);
    assert!(out.contains("true"));
    let (_, out, _) = run(&["gamma-points", "2", "5"]);
    assert!(out.contains("expected, exceptions exist"));
    let (code, out, _) = run(&["cremona", "--system", "5;3,3,3", "--transform", "0,1,2"]);
    assert_eq!(code, 0);
    assert!(out.contains("L_2(1; -1,-1,-1)"), "{out}");
    assert_eq!(run(&["verify", "gamma-case", "3", "6", "--hmax", "2"]).0, 0);
    assert_eq!(run(&["verify", "identities", "--seed", "7", "--samples", "20"]).0, 0);
    assert_eq!(run(&["verify", "tail"]).0, 0);
}

#[test]
fn binary_entry_point() {
    let out = Command::new(env!("CARGO_BIN_EXE_fatflats"))
        .args(["verify", "appendix", "g-table-3-1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS g_(3,1,5)"));
    let out = Command::new(env!("CARGO_BIN_EXE_fatflats")).arg("bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
