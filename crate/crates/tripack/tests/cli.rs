use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tripack::formats::{document_to_json, parse_document, ExtremalCertificate, ReportFile, SystemCertificate};

fn tripack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tripack")).args(args).output().expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

#[test]
fn extremal_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.json");
    let out = tripack(&["extremal", "--n", "20", "--nu", "3", "--delta2", "1", "-o", path_str(&file)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());

    let cert: ExtremalCertificate =
        serde_json::from_str(&fs::read_to_string(dir.path().join("h.json.cert.json")).unwrap()).unwrap();
    assert!(cert.passed);
    assert_eq!((cert.e, cert.f, cert.nu, cert.delta2), (25, 25, 3, 1));

    let out = tripack(&["verify", "--file", path_str(&file), "--nu", "3", "--delta2", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let cert: ExtremalCertificate = serde_json::from_slice(&out.stdout).unwrap();
    assert!(cert.passed);
    assert_eq!(cert.matching, 3);
}

#[test]
fn verify_rejects_a_damaged_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.json");
    tripack(&["extremal", "--n", "20", "--nu", "2", "--delta2", "1", "-o", path_str(&file)]);
    let text = fs::read_to_string(&file).unwrap();
    let cut = text.find("],[").unwrap();
    let end = text[cut + 3..].find(']').unwrap() + cut + 3;
    fs::write(&file, format!("{}{}", &text[..cut + 1], &text[end + 1..])).unwrap();

    let out = tripack(&["verify", "--file", path_str(&file), "--nu", "2", "--delta2", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let cert: ExtremalCertificate = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!cert.passed);
    assert_eq!(cert.e + 1, cert.f);
}

#[test]
fn constructions_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&[&str], &[&str]); 4] = [
        (&["sts", "--nu", "13"], &["--complete"]),
        (&["ts", "--nu", "8", "--lambda", "6"], &["--complete", "--lambda", "6"]),
        (&["pbd", "--nu", "11"], &["--nu", "11"]),
        (&["mpts", "--nu", "10", "--lambda", "2", "--s", "4"], &["--s", "4"]),
    ];
    for (k, (build, check)) in cases.iter().enumerate() {
        let file = dir.path().join(format!("{k}.json"));
        let mut args = build.to_vec();
        args.extend(["-o", path_str(&file)]);
        let out = tripack(&args);
        assert_eq!(out.status.code(), Some(0), "{build:?}: {}", String::from_utf8_lossy(&out.stderr));

        let text = fs::read_to_string(&file).unwrap();
        assert_eq!(document_to_json(&parse_document(&text).unwrap()) + "\n", text, "{build:?} is not canonical");

        let mut args = vec!["verify", "--file", path_str(&file)];
        args.extend(check.iter());
        let out = tripack(&args);
        assert_eq!(out.status.code(), Some(0), "{build:?}: {}", String::from_utf8_lossy(&out.stdout));
        let cert: SystemCertificate = serde_json::from_slice(&out.stdout).unwrap();
        assert!(cert.passed);
    }
}

#[test]
fn outputs_are_byte_stable() {
    for args in [
        &["ts", "--nu", "11", "--lambda", "3", "--seed", "5"][..],
        &["mpts", "--nu", "11", "--lambda", "1", "--s", "5"],
        &["extremal", "--n", "19", "--nu", "2", "--delta2", "2", "--seed", "1"],
    ] {
        let a = tripack(args);
        let b = tripack(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stderr, b.stderr);
    }
}

#[test]
fn cert_flag_and_stderr_channel() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let out = tripack(&["mpts", "--nu", "9", "--lambda", "1", "--s", "4", "--cert", path_str(&cert)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stderr.is_empty());
    let text = fs::read_to_string(cert).unwrap();
    assert!(text.starts_with(r#"{"case_tag":"#));

    let out = tripack(&["extremal", "--n", "20", "--nu", "2", "--delta2", "1"]);
    let cert: ExtremalCertificate = serde_json::from_slice(&out.stderr).unwrap();
    assert!(cert.passed);
}

#[test]
fn threshold_and_force() {
    let out = tripack(&["extremal", "--n", "24", "--nu", "4", "--delta2", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("E:2:") && err.contains("n0 = 32"), "{err}");

    let out = tripack(&["extremal", "--n", "24", "--nu", "4", "--delta2", "3", "--force"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let cert: ExtremalCertificate = serde_json::from_slice(&out.stderr).unwrap();
    assert!(cert.passed);
    let g = String::from_utf8(tripack(&["g", "--nu", "4", "--lambda", "3", "--s", "0"]).stdout).unwrap();
    assert_eq!(cert.e, 120 + g.trim().parse::<usize>().unwrap());
}

#[test]
fn oracle_threads_do_not_change_the_report() {
    let run = |threads: &str| {
        let out = tripack(&["oracle", "extremal", "--n", "7", "--nu", "1", "--delta2", "1", "--threads", threads]);
        assert_eq!(out.status.code(), Some(0));
        let mut r: ReportFile = serde_json::from_slice(&out.stdout).unwrap();
        r.elapsed_ms = 0;
        r
    };
    let one = run("1");
    assert_eq!(one.optimum, 7);
    assert_eq!(one, run("4"));
}

#[test]
fn parameter_errors() {
    for args in [
        &["sts", "--nu", "5"][..],
        &["ts", "--nu", "8", "--lambda", "4"],
        &["pbd", "--nu", "9"],
        &["mpts", "--nu", "8", "--lambda", "1", "--s", "5"],
        &["g", "--nu", "8", "--lambda", "1"],
        &["bound", "--n", "20", "--nu", "2", "--delta2", "1", "--seed", "1"],
        &["verify", "--file", "/nonexistent/h.json", "--nu", "1", "--delta2", "1"],
        &["oracle", "mpts", "--nu", "4", "--lambda", "1", "--s", "1", "--threads", "0"],
    ] {
        let out = tripack(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.starts_with("E:2:"), "{args:?}: {err}");
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
    let err = String::from_utf8(tripack(&["sts", "--nu", "5"]).stderr).unwrap();
    assert!(err.contains("ν≡1,3 (mod 6)"));
}
