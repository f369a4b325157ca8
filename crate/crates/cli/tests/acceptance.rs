//! Acceptance criterion 10: the documented commands reproduce their
//! outputs byte-exactly and every error class maps to its exit code.

use std::process::{Command, Output};

fn adic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_line(args: &[&str]) -> String {
    let out = adic(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    adic(args).status.code().expect("no signal")
}

#[test]
fn criterion_10_cli_goldens() {
    assert_eq!(
        stdout_line(&["val", "--p", "7", "392/5"]),
        "of_add(-2)  (additive: 2)\n"
    );
    assert_eq!(
        stdout_line(&["padic", "--p", "5", "--prec", "6", "1/3 + 2/3"]),
        "1 + O(5^6)\n"
    );
    assert_eq!(
        stdout_line(&["ext", "--p", "5", "--poly", "x^2-5", "info", "--json"]),
        "{\"certificate\":\"eisenstein\",\"n\":2,\"e\":2,\"f\":1,\"residue_order\":5,\"uniformizer\":\"a\"}\n"
    );
    assert_eq!(
        stdout_line(&["laurent", "--field", "F2", "--prec", "8", "1/(1+X)"]),
        "1 + X + X^2 + X^3 + X^4 + X^5 + X^6 + X^7 + O(X^8)\n"
    );
    println!("criterion 10a: PASS - documented outputs are byte-exact");
}

#[test]
fn criterion_10_more_goldens() {
    assert_eq!(stdout_line(&["val", "--p", "5", "0"]), "0  (additive: infinity)\n");
    assert_eq!(
        stdout_line(&["val", "--field", "F3", "X^2/(X+1)"]),
        "of_add(-2)  (additive: 2)\n"
    );
    assert_eq!(stdout_line(&["factor", "--p", "5", "50"]), "5^2 * 2\n");
    assert_eq!(stdout_line(&["factor", "--p", "5", "3"]), "5^0 * 3\n");
    assert_eq!(
        stdout_line(&["factor", "--field", "F2", "X^3+X^4"]),
        "X^3 * (1 + X)\n"
    );
    assert_eq!(
        stdout_line(&["ext", "--p", "5", "--poly", "x^2-2", "info", "--json"]),
        "{\"certificate\":\"unramified\",\"n\":2,\"e\":1,\"f\":2,\"residue_order\":25,\"uniformizer\":\"5\"}\n"
    );
    assert_eq!(
        stdout_line(&["ext", "--p", "5", "--poly", "x^2-5", "val", "a"]),
        "w = 1/2  (normalized: 1)\n"
    );
    assert_eq!(
        stdout_line(&["ext", "--p", "5", "--poly", "x^2-5", "val", "5", "--json"]),
        "{\"w\":\"1\",\"normalized\":\"2\"}\n"
    );
    assert_eq!(
        stdout_line(&["ext", "--p", "5", "--poly", "x^2-2", "residue", "a"]),
        "t\n"
    );
    assert_eq!(
        stdout_line(&["ext", "--p", "5", "--poly", "x^2-5", "integral", "a/5"]),
        "false\n"
    );
    assert_eq!(
        stdout_line(&["ext", "--field", "F3", "--poly", "x^2-X", "info", "--json"]),
        "{\"certificate\":\"eisenstein\",\"n\":2,\"e\":2,\"f\":1,\"residue_order\":3,\"uniformizer\":\"a\"}\n"
    );
    assert_eq!(
        stdout_line(&["padic", "--p", "5", "--prec", "4", "1/3"]),
        "2 + 3*5 + 5^2 + 3*5^3 + O(5^4)\n"
    );
    assert_eq!(
        stdout_line(&["laurent", "--field", "Q", "--prec", "4", "(X+1)/X"]),
        "X^-1 + 1 + O(X^4)\n"
    );
    println!("criterion 10b: PASS - extended goldens stable");
}

#[test]
fn criterion_10_json_schema_stability() {
    // the same command always emits the same key set
    let keys = |s: &str| -> Vec<String> {
        let v: serde_json::Value = serde_json::from_str(s).unwrap();
        v.as_object().unwrap().keys().cloned().collect()
    };
    let a = stdout_line(&["val", "--p", "7", "392/5", "--json"]);
    let b = stdout_line(&["val", "--p", "5", "0", "--json"]);
    assert_eq!(keys(&a), keys(&b));
    let a = stdout_line(&["padic", "--p", "5", "7", "--json"]);
    let b = stdout_line(&["padic", "--p", "5", "1-1", "--json"]);
    let c = stdout_line(&["padic", "--p", "5", "0", "--json"]);
    assert_eq!(keys(&a), keys(&b));
    assert_eq!(keys(&b), keys(&c));
    let a = stdout_line(&["ext", "--p", "5", "--poly", "x^2-5", "info", "--json"]);
    let b = stdout_line(&["ext", "--p", "7", "--poly", "x-3", "info", "--json"]);
    assert_eq!(keys(&a), keys(&b));
    println!("criterion 10c: PASS - JSON key sets stable");
}

#[test]
fn criterion_10_exit_code_matrix() {
    // success
    assert_eq!(exit_code(&["val", "--p", "5", "1/3"]), 0);
    // parse errors and flag errors: 2
    assert_eq!(exit_code(&["val", "--p", "5", "2^^3"]), 2);
    assert_eq!(exit_code(&["val", "--p", "5", "1 +"]), 2);
    assert_eq!(exit_code(&["val", "--p", "5", "(1"]), 2);
    assert_eq!(exit_code(&["val", "--p", "5", "?"]), 2);
    assert_eq!(exit_code(&["val", "--p", "6", "1"]), 2); // not prime
    assert_eq!(exit_code(&["val", "1"]), 2); // no descriptor
    assert_eq!(exit_code(&["val", "--p", "5", "--field", "F2", "1"]), 2); // both
    assert_eq!(exit_code(&["laurent", "--field", "F6", "--prec", "4", "1"]), 2);
    assert_eq!(exit_code(&["laurent", "--field", "Z", "--prec", "4", "1"]), 2);
    assert_eq!(exit_code(&["padic", "--p", "5", "--prec", "0", "1"]), 2);
    assert_eq!(exit_code(&["ext", "--field", "Q", "--poly", "x^2-5", "info"]), 2);
    assert_eq!(exit_code(&["val", "--unknown-flag", "1"]), 2);
    assert_eq!(exit_code(&["no-such-command"]), 2);
    // mathematical errors: 1
    assert_eq!(exit_code(&["val", "--p", "5", "1/0"]), 1);
    assert_eq!(exit_code(&["padic", "--p", "5", "1/(1-1)"]), 1); // zero-indistinguishable
    assert_eq!(exit_code(&["padic", "--p", "5", "1/0"]), 1);
    assert_eq!(exit_code(&["ext", "--p", "5", "--poly", "x^2-1", "info"]), 1); // no certificate
    assert_eq!(exit_code(&["ext", "--p", "5", "--poly", "x^2-5", "residue", "a/5"]), 1); // not integral
    assert_eq!(exit_code(&["ext", "--p", "5", "--poly", "2*x^2-5", "info"]), 1); // not monic
    assert_eq!(exit_code(&["factor", "--p", "5", "0"]), 1); // zero argument
    assert_eq!(exit_code(&["factor", "--p", "5", "1/5"]), 1); // not in unit ball
    assert_eq!(exit_code(&["val", "--p", "5", "x"]), 1); // unbound variable
    assert_eq!(exit_code(&["ext", "--p", "5", "--poly", "x^2-5", "norm", "1/(a-a)"]), 1);
    println!("criterion 10d: PASS - exit codes match the error classes");
}
