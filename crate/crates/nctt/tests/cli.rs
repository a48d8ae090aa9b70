use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn nctt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nctt"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("RUST_LOG")
        .output()
        .expect("run nctt")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str, src: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, src).unwrap();
    path
}

#[test]
fn checks_the_prelude_modules() {
    let o = nctt(&["check", "prelude/univalence.nctt", "prelude/paths.nctt"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("ok prelude/univalence.nctt"));
}

#[test]
fn type_errors_exit_with_one() {
    let o = nctt(&["check", "tests/bad/endpoint.nctt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("tests/bad/endpoint.nctt:4:3: error[EndpointMismatch]"), "{}", stderr(&o));
}

#[test]
fn exit_code_is_the_worst_over_files() {
    let o = nctt(&["check", "tests/bad/endpoint.nctt", "tests/corpus/canonicity.nctt", "missing.nctt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("ok tests/corpus/canonicity.nctt"));
}

#[test]
fn missing_files_exit_with_two() {
    let o = nctt(&["check", "does-not-exist.nctt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn normalize_prints_the_normal_form() {
    let o = nctt(&["normalize", "prelude/univalence.nctt", "--def", "transport-ua-not-true"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "false");

    let o = nctt(&["normalize", "tests/corpus/canonicity.nctt", "--def", "c-ua-pi"]);
    assert_eq!(stdout(&o).trim(), "true");
}

#[test]
fn normalize_unknown_definition() {
    let o = nctt(&["normalize", "prelude/base.nctt", "--def", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nope"));
}

#[test]
fn no_prelude_starts_empty() {
    let file = scratch("uses-not.nctt", "def t : Bool = not true\n");
    let o = nctt(&["check", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = nctt(&["--no-prelude", "check", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("UnboundName"));

    let file = scratch("standalone.nctt", "def t : Bool = boolelim (_. Bool) false true true\n");
    let o = nctt(&["--no-prelude", "normalize", file.to_str().unwrap(), "--def", "t"]);
    assert_eq!(stdout(&o).trim(), "false");
}

#[test]
fn trace_fill_logs_cases() {
    let o = nctt(&["--trace-fill", "normalize", "prelude/univalence.nctt", "--def", "transport-ua-not-true"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).lines().any(|l| l.starts_with("fill: ")), "{}", stderr(&o));

    let quiet = nctt(&["normalize", "prelude/univalence.nctt", "--def", "transport-ua-not-true"]);
    assert!(stderr(&quiet).is_empty());
}

#[test]
fn step_limit_is_a_diagnostic() {
    let o = nctt(&["--no-prelude", "--max-steps", "5", "check", "prelude/base.nctt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("error[StepLimit]"), "{}", stderr(&o));
    assert!(!stderr(&o).contains("panicked"));
}

#[test]
fn output_is_deterministic() {
    let run = || nctt(&["check", "tests/corpus/canonicity.nctt", "tests/bad/boundary.nctt"]);
    let (a, b) = (run(), run());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}

#[test]
fn import_cycles_are_reported() {
    scratch("cycle-a.nctt", "import \"cycle-b.nctt\"\n");
    let b = scratch("cycle-b.nctt", "import \"cycle-a.nctt\"\n");
    let o = nctt(&["check", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("ImportCycle"), "{}", stderr(&o));
}
