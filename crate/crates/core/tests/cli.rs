use std::io::Write;
use std::process::{Command, Output};

fn fingroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fingroup"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn passing_commands_exit_0() {
    for args in [
        &["law", "check", "S(4)", "[[x,y]^3,y^3,y^2] = 1"][..],
        &["law", "check", "S4", "--set", "s4"],
        &["solve", "S(3)", "x^2 = <(1 2 3)>"],
        &["retract", "direct(S4,C3)", "S4", "--method", "both"],
        &["analyze", "A(5)"],
        &["variety", "Q8", "S4"],
        &["closedness", "direct(S4,V4)", "S4"],
    ] {
        let o = fingroup(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn failing_checks_exit_1() {
    for args in [
        &["law", "check", "S4", "x^2 = 1"][..],
        &["solve", "S4", "x^2 = <(1 2)>"],
        &["retract", "S3", "(1 2 3)"],
        &["closedness", "S3", "(1 2 3)"],
        &["variety", "C5", "S4"],
    ] {
        let o = fingroup(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["analyze", "Foo(3)"][..],
        &["law", "check", "S3", "x^ = 1"],
        &["solve", "S3", "x = <(1 4)>"],
        &["frobnicate"],
        &["verify-paper", "--star-k-max", "7"],
        &["--catalog", "/nonexistent/catalog.txt", "analyze", "S3"],
    ] {
        let o = fingroup(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    assert_eq!(fingroup(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_output_parses() {
    let o = fingroup(&["--format", "json", "law", "check", "S4", "x^2 = 1"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn user_catalog() {
    let path = std::env::temp_dir().join(format!("fingroup-cli-{}.txt", std::process::id()));
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "T = gens(4): (1 2 3 4), (1 3)").unwrap();
    drop(f);
    let o = fingroup(&["--catalog", path.to_str().unwrap(), "analyze", "T"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order 8"), "{}", stdout(&o));
}

#[test]
fn verify_paper_is_thread_independent() {
    let a = fingroup(&["--format", "json", "--threads", "1", "verify-paper"]);
    let b = fingroup(&["--format", "json", "--threads", "4", "verify-paper"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
