use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use certiroot::{solve, ApproxVector, Certificate, Complex64, Disk, MethodKind, PExponent, Polynomial, SolveConfig};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_certiroot")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn here(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(rel)
}

fn input(name: &str) -> String {
    here(&format!("inputs/{name}")).display().to_string()
}

#[test]
fn quadratic_solves_with_certificate() {
    let out = run(&["solve", "--method", "ehrlich", "--p", "inf", "--coeffs", "1,0,-1", "--guess", "2,-2", "--json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["converged"], true);
    assert_eq!(v["certificate"]["issued"], true);
    let roots: ApproxVector = serde_json::from_value(v["roots"].clone()).unwrap();
    assert!((roots[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    assert!((roots[1] - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    for key in ["certificate", "converged", "roots", "disks", "iterations", "order_estimate"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn threshold_table_constants() {
    let out = run(&["thresholds", "--n", "2", "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let find = |method: &str, p: Value| {
        v["rows"].as_array().unwrap().iter().find(|r| r["method"] == method && r["p"] == p).unwrap()["threshold"].clone()
    };
    assert_eq!(find("ehrlich", "inf".into()).as_f64(), Some(0.25));
    assert!((find("dochev-byrnev", "inf".into()).as_f64().unwrap() - 2.0 / 9.0).abs() < 1e-15);
    assert!((find("dochev-byrnev", 1.0.into()).as_f64().unwrap() - 0.2636).abs() < 5e-4);
    assert!(find("dochev-byrnev", 2.0.into()).is_null());
}

#[test]
fn certify_at_exact_roots() {
    let out = run(&["certify", "--method", "dochev-byrnev", "--p", "1", "--coeffs", "1,0,-1", "--guess", "1.0,-1.0", "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["issued"], true);
    assert_eq!(v["E0"].as_f64(), Some(0.0));
    assert_eq!(v["lambda"].as_f64(), Some(0.0));
}

#[test]
fn exit_status_contract() {
    // unissued certificate while one is required
    assert_eq!(code(&run(&["solve", "--coeffs", "1,0,-1", "--guess", "0.1,-0.2"])), 2);
    assert_eq!(code(&run(&["certify", "--coeffs", "1,0,-1", "--guess", "0.1,-0.2"])), 2);
    assert_eq!(code(&run(&["disks", "--coeffs", "1,0,-1", "--guess", "0.1,-0.2"])), 2);
    // the same start is fine once the certificate is optional
    assert_eq!(code(&run(&["solve", "--coeffs", "1,0,-1", "--guess", "0.1,-0.2", "--no-certificate"])), 0);
    // Weierstrass has no certificate of its own
    let out = run(&["solve", "--method", "weierstrass", "--coeffs", "1,0,-1"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("--no-certificate"));
    assert_eq!(code(&run(&["solve", "--method", "weierstrass", "--coeffs", "1,0,-1", "--no-certificate"])), 0);
    // input errors
    assert_eq!(code(&run(&["solve", "--coeffs", "0,1,2"])), 1);
    assert_eq!(code(&run(&["solve", "--coeffs", "1,0,-1", "--p", "0.5"])), 1);
    assert_eq!(code(&run(&["solve", "--coeffs", "1,0,-1", "--max-iter", "0"])), 1);
    assert_eq!(code(&run(&["thresholds", "--n", "1"])), 1);
}

#[test]
fn errors_carry_context() {
    let out = run(&["solve", "--coeffs", "1,x,-1"]);
    assert!(stderr(&out).contains("item 2 ('x')"), "{}", stderr(&out));
    let out = run(&["solve", "--input", &input("bad_guess.json")]);
    assert_eq!(code(&out), 1);
    let err = stderr(&out);
    assert!(err.contains("field 'guess'") && err.contains("components 0 and 1"), "{err}");
    let out = run(&["solve", "--input", &input("malformed.json")]);
    assert_eq!(code(&out), 1);
    let err = stderr(&out);
    assert!(err.contains("malformed input") && err.contains("line 2"), "{err}");
    let out = run(&["solve", "--input", &input("missing.json")]);
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn json_reproduces_in_process_solve_bitwise() {
    let text = std::fs::read_to_string(input("cubic.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let f = Polynomial::new(serde_json::from_value::<ApproxVector>(v["coeffs"].clone()).unwrap().0).unwrap();
    let x0: ApproxVector = serde_json::from_value(v["guess"].clone()).unwrap();
    for (m, name) in [(MethodKind::Ehrlich, "ehrlich"), (MethodKind::DochevByrnev, "dochev-byrnev")] {
        for (p, pname) in [(PExponent::Infinity, "inf"), (PExponent::Finite(2.0), "2"), (PExponent::Finite(1.5), "1.5")] {
            let expected = solve(&f, &x0, &SolveConfig::new(m, p)).unwrap();
            let out = run(&["solve", "--input", &input("cubic.json"), "--method", name, "--p", pname, "--json"]);
            assert_eq!(code(&out), 0, "{}", stderr(&out));
            let v = json(&out);
            let roots: ApproxVector = serde_json::from_value(v["roots"].clone()).unwrap();
            let cert: Certificate = serde_json::from_value(v["certificate"].clone()).unwrap();
            let disks: Vec<Disk> = serde_json::from_value(v["disks"].clone()).unwrap();
            for (a, b) in roots.iter().zip(expected.final_iterate.iter()) {
                assert_eq!(a.re.to_bits(), b.re.to_bits());
                assert_eq!(a.im.to_bits(), b.im.to_bits());
            }
            assert_eq!(&cert, expected.certificate.as_ref().unwrap());
            assert_eq!(disks, expected.disks);
            assert_eq!(v["iterations"].as_u64(), Some(expected.iterations() as u64));
        }
    }
}

#[test]
fn seeded_start_is_reproducible() {
    let args = ["solve", "--input", &input("complex_quartic.json"), "--seed", "11", "--no-certificate", "--json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["solve", "--input", &input("complex_quartic.json"), "--seed", "12", "--no-certificate", "--json"]);
    assert_ne!(json(&a)["certificate"]["E0"], json(&c)["certificate"]["E0"]);
}

#[test]
fn batch_mode() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["cubic.json", "complex_quartic.json"] {
        std::fs::copy(here(&format!("inputs/{name}")), dir.path().join(name)).unwrap();
    }
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let d = dir.path().display().to_string();

    // one unissued certificate, no errors
    let out = run(&["solve", "--batch", &d, "--json"]);
    assert_eq!(code(&out), 2, "{}", stderr(&out));
    let v = json(&out);
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[0]["file"], "complex_quartic.json");
    assert_eq!(entries[0]["status"], "unissued");
    assert_eq!(entries[1]["file"], "cubic.json");
    assert_eq!(entries[1]["status"], "ok");
    assert_eq!(entries[1]["report"]["converged"], true);

    assert_eq!(code(&run(&["solve", "--batch", &d, "--no-certificate"])), 0);

    // an unreadable file makes the whole batch fail, the others are still reported
    std::fs::copy(here("inputs/malformed.json"), dir.path().join("malformed.json")).unwrap();
    let out = run(&["certify", "--batch", &d, "--json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    let statuses: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["status"].as_str().unwrap()).collect();
    assert_eq!(statuses, ["unissued", "ok", "error"]);
    assert!(v[2]["error"].as_str().unwrap().contains("malformed input"));
}

/// Stdout and exit status of fixed invocations, compared with files under
/// tests/golden. `UPDATE_GOLDEN=1` rewrites them.
#[test]
fn golden_outputs() {
    let cubic = input("cubic.json");
    let cases: Vec<(&str, Vec<&str>, i32)> = vec![
        ("solve_quadratic.json", vec!["solve", "--coeffs", "1,0,-1", "--guess", "2,-2", "--json"], 0),
        ("solve_cubic.txt", vec!["solve", "--input", &cubic], 0),
        ("solve_cubic_db_p2.json", vec!["solve", "--input", &cubic, "--method", "dochev-byrnev", "--p", "2", "--json"], 0),
        ("thresholds_n2.txt", vec!["thresholds", "--n", "2"], 0),
        ("thresholds_n10.json", vec!["thresholds", "--n", "10", "--json"], 0),
        ("certify_roots_db_p1.txt", vec!["certify", "--method", "dochev-byrnev", "--p", "1", "--coeffs", "1,0,-1", "--guess", "1.0,-1.0"], 0),
        ("certify_unissued.json", vec!["certify", "--coeffs", "1,0,-1", "--guess", "0.1,-0.2", "--json"], 2),
        ("disks_near_roots.txt", vec!["disks", "--coeffs", "1,0,-1", "--guess", "1.01,-0.99"], 0),
        ("disks_unissued.json", vec!["disks", "--coeffs", "1,0,-1", "--guess", "0.1,-0.2", "--json"], 2),
    ];
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for (name, args, expected_code) in cases {
        let out = run(&args);
        // paths differ between checkouts
        let got = stdout(&out).replace(&cubic, "cubic.json");
        let path = here(&format!("golden/{name}"));
        if update {
            std::fs::write(&path, &got).unwrap();
        }
        let want = std::fs::read_to_string(&path).unwrap_or_default();
        if code(&out) != expected_code {
            failures.push(format!("{name}: exit {} instead of {expected_code}", code(&out)));
        }
        if got != want {
            failures.push(format!("{name}: output differs\n--- got\n{got}--- want\n{want}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
