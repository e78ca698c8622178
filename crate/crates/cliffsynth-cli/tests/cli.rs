//! End-to-end tests driving the compiled binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn workdir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliffsynth"))
        .args(args)
        .output()
        .expect("binary must run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

const IDENTITY_1Q: &str = "2 2\n10\n01\n";
// CNOT(0,1): columns are the images of X0 X1 Z0 Z1
const CNOT_SYMP: &str = "4 4\n1000\n1100\n0011\n0001\n";

#[test]
fn compile_identity_gives_empty_circuits() {
    let dir = workdir("id");
    fs::write(dir.join("in.symp"), IDENTITY_1Q).unwrap();
    let out = run(&[
        "compile",
        dir.join("in.symp").to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(fs::read_to_string(dir.join("one_cnot_form.circ")).unwrap(), "n 1\n");
    assert_eq!(fs::read_to_string(dir.join("nine_form.circ")).unwrap(), "n 1\n");
    let json = fs::read_to_string(dir.join("report.json")).unwrap();
    assert!(json.contains("\"one_cnot_total\": 0"), "{json}");
    assert!(json.contains("\"nine_total\": 0"), "{json}");
    assert!(json.contains("\"phases_given\": false"), "{json}");
}

#[test]
fn compile_cnot_reports_one_cnot() {
    let dir = workdir("cnot");
    fs::write(dir.join("in.symp"), CNOT_SYMP).unwrap();
    let out = run(&[
        "compile",
        dir.join("in.symp").to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
        "--qasm",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let circ = fs::read_to_string(dir.join("one_cnot_form.circ")).unwrap();
    assert_eq!(circ.lines().filter(|l| l.starts_with("CNOT")).count(), 1);
    let json = fs::read_to_string(dir.join("report.json")).unwrap();
    assert!(json.contains("\"one_cnot_cnot\": 1"), "{json}");
    let qasm = fs::read_to_string(dir.join("one_cnot_form.qasm")).unwrap();
    assert!(qasm.starts_with("OPENQASM 2.0;"));
    assert!(qasm.contains("cx q[0],q[1];"));

    // the written circuit verifies against the input
    let verify = run(&[
        "verify",
        dir.join("in.symp").to_str().unwrap(),
        dir.join("one_cnot_form.circ").to_str().unwrap(),
    ]);
    assert_eq!(code(&verify), 0, "{}", stderr(&verify));
    assert!(stdout(&verify).contains("PASS"));
}

#[test]
fn compile_with_phases_line() {
    let dir = workdir("phases");
    fs::write(
        dir.join("in.symp"),
        format!("{CNOT_SYMP}phases 0 0 0 0\n"),
    )
    .unwrap();
    let out = run(&[
        "compile",
        dir.join("in.symp").to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let json = fs::read_to_string(dir.join("report.json")).unwrap();
    assert!(json.contains("\"phases_given\": true"), "{json}");
}

#[test]
fn form_flag_selects_outputs() {
    let dir = workdir("form");
    fs::write(dir.join("in.symp"), CNOT_SYMP).unwrap();
    let out = run(&[
        "compile",
        dir.join("in.symp").to_str().unwrap(),
        "--form",
        "one-cnot",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(dir.join("one_cnot_form.circ").exists());
    assert!(dir.join("pauli_layer.circ").exists());
    assert!(!dir.join("nine_form.circ").exists());
}

#[test]
fn error_exit_codes() {
    let dir = workdir("errors");
    fs::write(dir.join("garbage.txt"), "what is this\n").unwrap();
    fs::write(dir.join("singular.symp"), "2 2\n11\n11\n").unwrap();
    fs::write(dir.join("noncommuting.spec"), "n 2\n+XI\n+ZI\n").unwrap();

    let parse = run(&[
        "compile",
        dir.join("garbage.txt").to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&parse), 2, "{}", stderr(&parse));

    let invalid = run(&[
        "compile",
        dir.join("singular.symp").to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&invalid), 3, "{}", stderr(&invalid));
    assert!(stderr(&invalid).contains("symplectic"));

    let spec = run(&[
        "prep",
        dir.join("noncommuting.spec").to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&spec), 3, "{}", stderr(&spec));
}

#[test]
fn verify_reports_first_mismatch() {
    let dir = workdir("mutation");
    fs::write(dir.join("in.symp"), CNOT_SYMP).unwrap();
    let out = run(&[
        "compile",
        dir.join("in.symp").to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let circ = fs::read_to_string(dir.join("one_cnot_form.circ")).unwrap();
    let mutated: String = circ
        .lines()
        .filter(|l| !l.starts_with("CNOT"))
        .map(|l| format!("{l}\n"))
        .collect();
    fs::write(dir.join("mutated.circ"), mutated).unwrap();
    let verify = run(&[
        "verify",
        dir.join("in.symp").to_str().unwrap(),
        dir.join("mutated.circ").to_str().unwrap(),
    ]);
    assert_eq!(code(&verify), 4, "{}", stderr(&verify));
    let msg = stderr(&verify);
    assert!(msg.contains("X_0") && msg.contains("differs"), "{msg}");
}

#[test]
fn verify_empty_circuit_against_identity() {
    let dir = workdir("empty");
    fs::write(dir.join("id.symp"), IDENTITY_1Q).unwrap();
    fs::write(dir.join("empty.circ"), "n 1\n").unwrap();
    let out = run(&[
        "verify",
        dir.join("id.symp").to_str().unwrap(),
        dir.join("empty.circ").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn prep_ghz_and_verify() {
    let dir = workdir("ghz");
    fs::write(dir.join("ghz.spec"), "n 2\n+XX\n+ZZ\n").unwrap();
    let out = run(&[
        "prep",
        dir.join("ghz.spec").to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    for variant in ["prep_cz.circ", "prep_cx.circ"] {
        let verify = run(&[
            "verify",
            dir.join("ghz.spec").to_str().unwrap(),
            dir.join(variant).to_str().unwrap(),
        ]);
        assert_eq!(code(&verify), 0, "{variant}: {}", stderr(&verify));
    }
    let json = fs::read_to_string(dir.join("report.json")).unwrap();
    assert!(json.contains("\"prep_cz_two_qubit\": 1"), "{json}");
}

#[test]
fn bench_is_deterministic() {
    let a = run(&["bench", "--n", "4,6", "--samples", "2", "--seed", "3"]);
    let b = run(&["bench", "--n", "4,6", "--samples", "2", "--seed", "3"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,form,cx_count,cz_count,total_2q,depth,ratio_to_n2_over_log"
    );
    assert_eq!(lines.count(), 4); // two sizes x two forms
}

#[test]
fn random_zero_gates_is_identity() {
    let dir = workdir("rnd0");
    let out = run(&[
        "random",
        "3",
        "--gates",
        "0",
        "--seed",
        "5",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let symp = fs::read_to_string(dir.join("random.symp")).unwrap();
    assert!(symp.starts_with("6 6\n100000\n"));
    assert!(symp.contains("phases 0 0 0 0 0 0"));
    assert_eq!(fs::read_to_string(dir.join("random.circ")).unwrap(), "n 3\n");
}

#[test]
fn random_circuit_compiles_and_verifies() {
    let dir = workdir("roundtrip");
    let out = run(&[
        "random",
        "5",
        "--gates",
        "120",
        "--seed",
        "11",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    // reproducible under the same seed
    let dir2 = workdir("roundtrip2");
    let again = run(&[
        "random",
        "5",
        "--gates",
        "120",
        "--seed",
        "11",
        "--out",
        dir2.to_str().unwrap(),
    ]);
    assert_eq!(code(&again), 0);
    assert_eq!(
        fs::read_to_string(dir.join("random.circ")).unwrap(),
        fs::read_to_string(dir2.join("random.circ")).unwrap()
    );

    // compile the circuit file directly, then verify both written forms
    let compiled = run(&[
        "compile",
        dir.join("random.circ").to_str().unwrap(),
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(code(&compiled), 0, "{}", stderr(&compiled));

    // the bare form matches the symplectic part (target without phases)
    let symp = fs::read_to_string(dir.join("random.symp")).unwrap();
    let matrix_only: String = symp
        .lines()
        .filter(|l| !l.starts_with("phases"))
        .map(|l| format!("{l}\n"))
        .collect();
    fs::write(dir.join("matrix_only.symp"), matrix_only).unwrap();
    let s_only = run(&[
        "verify",
        dir.join("matrix_only.symp").to_str().unwrap(),
        dir.join("out/one_cnot_form.circ").to_str().unwrap(),
    ]);
    assert_eq!(code(&s_only), 0, "{}", stderr(&s_only));

    // phase-exact check: form + pauli layer joined by hand
    let form = fs::read_to_string(dir.join("out/one_cnot_form.circ")).unwrap();
    let pauli = fs::read_to_string(dir.join("out/pauli_layer.circ")).unwrap();
    let mut joined = form.trim_end().to_string();
    for line in pauli.lines().skip(1) {
        joined.push('\n');
        joined.push_str(line);
    }
    joined.push('\n');
    fs::write(dir.join("joined.circ"), &joined).unwrap();
    let verify = run(&[
        "verify",
        dir.join("random.symp").to_str().unwrap(),
        dir.join("joined.circ").to_str().unwrap(),
    ]);
    assert_eq!(code(&verify), 0, "{}", stderr(&verify));
    assert!(stdout(&verify).contains("PASS"));
}
